#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hs/error.hpp"
#include "hs/features.hpp"
#include "test_support.hpp"

using namespace hs;
using hs::testing::make_doc;

TEST_CASE("orders_from_training takes the longest unit") {
    const std::vector<DocumentContour> docs = {
        make_doc({0, 0, 0}),
        make_doc(std::vector<long>(11, 0)),
        make_doc({0, 0, 0, 0, 0, 0, 0, 1})};
    const std::array structures = {Structure::Edu, Structure::Document};
    const auto orders = orders_from_training(docs, structures);
    CHECK(orders.get(Structure::Edu) == 11u);
    CHECK(orders.get(Structure::Document) == 11u);
    CHECK_FALSE(orders.get(Structure::Sentence).has_value());

    const std::vector<DocumentContour> long_doc = {make_doc(std::vector<long>(333, 0))};
    CHECK(orders_from_training(long_doc, structures).get(Structure::Document) == 333u);

    const std::vector<DocumentContour> singletons = {make_doc({0, 1, 2, 3})};
    CHECK(orders_from_training(singletons, structures).get(Structure::Edu) == 1u);

    CHECK_THROWS_AS(orders_from_training({}, structures), Error);
}

TEST_CASE("harmonic_features examples") {
    // one EDU of length 7, one of length 4
    const auto doc = make_doc({0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1});
    SUBCASE("phase zero at unit start") {
        for (std::size_t k = 1; k < 9; ++k) {
            const auto h = harmonic_features(doc, Structure::Edu, k);
            CHECK(h.sin[0] == 0.0);
            CHECK(h.cos[0] == 1.0);
            CHECK(h.sin[7] == 0.0);
            CHECK(h.cos[7] == 1.0);
        }
    }
    SUBCASE("quarter period") {
        const auto h = harmonic_features(doc, Structure::Edu, 1);
        CHECK(h.sin[8] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(h.cos[8]) < 1e-15);
    }
    SUBCASE("t=2, L=7, k=3") {
        const auto h = harmonic_features(doc, Structure::Edu, 3);
        // sin/cos(12 pi / 7), 30-digit reference
        CHECK(h.sin[2] == doctest::Approx(-0.781831482468029808708).epsilon(1e-14));
        CHECK(h.cos[2] == doctest::Approx(0.623489801858733530525).epsilon(1e-14));
    }
    SUBCASE("document scaling uses the global index over n") {
        const auto h = harmonic_features(doc, Structure::Document, 2);
        for (std::size_t i = 0; i < doc.size(); ++i) {
            const double angle = 2.0 * std::numbers::pi * 2.0 * static_cast<double>(i) / 11.0;
            CHECK(h.sin[i] == doctest::Approx(std::sin(angle)).epsilon(1e-12));
            CHECK(h.cos[i] == doctest::Approx(std::cos(angle)).epsilon(1e-12));
        }
    }
}

TEST_CASE("harmonic invariants") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> len(1, 25);
    std::vector<long> edu;
    for (long e = 0; e < 30; ++e)
        for (long t = len(rng); t > 0; --t) edu.push_back(e);
    const auto doc = make_doc(edu);

    for (std::size_t k = 1; k <= 30; ++k) {
        const auto h = harmonic_features(doc, Structure::Edu, k);
        for (std::size_t i = 0; i < doc.size(); ++i) {
            CHECK(std::abs(h.sin[i] * h.sin[i] + h.cos[i] * h.cos[i] - 1.0) <= 1e-12);
            CHECK(std::abs(h.sin[i]) <= 1.0);
            CHECK(std::abs(h.cos[i]) <= 1.0);
        }
    }
    // k = L aliases with the intercept exactly
    for (const auto& span : doc.spans(Structure::Edu)) {
        const auto h = harmonic_features(doc, Structure::Edu, span.length);
        for (std::size_t i = span.start; i < span.end(); ++i) {
            CHECK(h.sin[i] == 0.0);
            CHECK(h.cos[i] == 1.0);
        }
    }
    // periodicity: order k and k + L agree on a unit of length L
    for (const auto& span : doc.spans(Structure::Edu)) {
        for (std::size_t k = 1; k <= 5; ++k) {
            const auto a = harmonic_features(doc, Structure::Edu, k);
            const auto b = harmonic_features(doc, Structure::Edu, k + span.length);
            for (std::size_t i = span.start; i < span.end(); ++i) {
                CHECK(std::abs(a.sin[i] - b.sin[i]) <= 1e-12);
                CHECK(std::abs(a.cos[i] - b.cos[i]) <= 1e-12);
            }
        }
    }
    // document scaling, k = 1: one full period, sin(2 pi t / n) -> 0 at both ends
    const auto h = harmonic_features(doc, Structure::Document, 1);
    const double n = static_cast<double>(doc.size());
    CHECK(h.sin[0] == 0.0);
    CHECK(std::abs(std::sin(2.0 * std::numbers::pi * n / n)) < 1e-12);
    CHECK(h.sin[doc.size() - 1] == doctest::Approx(std::sin(2.0 * std::numbers::pi * (n - 1) / n)));
}

TEST_CASE("baseline features") {
    const auto doc = make_doc({0, 0, 0, 1, 1, 1}, {}, {}, {5, 1, 0, 9, 2, 1});
    const auto rows = baseline_features(doc);
    const std::vector<double> w1 = {0, 0, 1, 1, 0, 0};
    const std::vector<double> w2 = {0, 1, 1, 1, 1, 0};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(rows[i].bnd_w1 == w1[i]);
        CHECK(rows[i].bnd_w2 == w2[i]);
        CHECK(rows[i].bnd_w4 == 1.0);
        CHECK(rows[i].tok_len == static_cast<double>(doc.tokens()[i].n_chars));
    }
    CHECK(rows[0].prev_surprisal == 0.0);
    CHECK(rows[4].prev_surprisal == 9.0);
    CHECK(rows[3].rel_pos == 0.5);
    CHECK(rows[0].rel_pos == 0.0);
}

TEST_CASE("boundary flags use the union of structures and are monotone in window") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> len(1, 9);
    std::vector<long> edu, sent, par;
    long s = 0, p = 0;
    for (long e = 0; e < 40; ++e) {
        if (e > 0 && e % 3 == 0) ++s;
        else if (e > 0 && e % 7 == 0) ++s, ++p;
        for (long t = len(rng); t > 0; --t) {
            edu.push_back(e);
            sent.push_back(s);
            par.push_back(p);
        }
    }
    const auto doc = make_doc(edu, sent, par);
    const auto rows = baseline_features(doc);
    const auto bnd = boundary_positions(doc, Structure::Edu);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].bnd_w1 <= rows[i].bnd_w2);
        CHECK(rows[i].bnd_w2 <= rows[i].bnd_w4);
        for (int w : {1, 2, 4}) {
            bool expected = false;
            for (std::size_t b : bnd) {
                const long li = static_cast<long>(i), lb = static_cast<long>(b);
                expected = expected || (lb - w <= li && li <= lb + w - 1);
            }
            const double got = w == 1 ? rows[i].bnd_w1 : w == 2 ? rows[i].bnd_w2 : rows[i].bnd_w4;
            CHECK(got == (expected ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("assemble_matrix shape and names") {
    const std::vector<DocumentContour> docs = {make_doc({0, 0, 1, 1, 1}, {}, {}, {}, "a"),
                                               make_doc({0, 1, 1}, {}, {}, {}, "b")};
    OrderSpec orders;
    orders.set(Structure::Edu, 11);

    const auto base = assemble_matrix(docs, BlockSet::baseline_only(), orders);
    CHECK(base.cols() == 7);
    CHECK(base.rows() == 8);
    CHECK(base.names.front() == "intercept");

    const auto edu = assemble_matrix(docs, BlockSet{}.with(Structure::Edu), orders);
    CHECK(edu.cols() == 7 + 22);
    CHECK(edu.names[7] == "edu_sin_1");
    CHECK(edu.names[8] == "edu_cos_1");
    CHECK(edu.names.back() == "edu_cos_11");

    // rows follow document order, then token order
    const Eigen::VectorXd y = surprisal_vector(docs);
    CHECK(y.size() == 8);
    const auto prev = *base.index_of("rel_pos");
    CHECK(base.values(5, prev) == 0.0);  // first token of document b
    CHECK(base.values(6, prev) == doctest::Approx(1.0 / 3.0));

    CHECK_THROWS_AS(assemble_matrix(docs, BlockSet{}.with(Structure::Sentence), orders), Error);
    try {
        assemble_matrix(docs, BlockSet{}.with(Structure::Paragraph), orders);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingOrder);
    }
}

TEST_CASE("maximal matrix column count") {
    const std::vector<DocumentContour> docs = {make_doc({0, 0, 1, 1, 1}, {0, 0, 1, 1, 1})};
    const auto orders = orders_from_training(docs, kAllStructures);
    const auto all = assemble_matrix(docs, BlockSet::all_structures(), orders);
    std::size_t expected = 7;
    for (Structure s : kAllStructures) expected += 2 * *orders.get(s);
    CHECK(static_cast<std::size_t>(all.cols()) == expected);
    for (Eigen::Index j = 7; j < all.cols(); ++j)
        CHECK(all.values.col(j).cwiseAbs().maxCoeff() <= 1.0);
}

TEST_CASE("column name grammar") {
    for (const char* name : {"intercept", "tok_len", "prev_surprisal", "rel_pos", "bnd_w1", "bnd_w2",
                             "bnd_w4", "doc_sin_1", "edu_cos_12", "sent_sin_3", "par_cos_40"})
        CHECK(parse_column_name(name).name() == name);
    const auto id = parse_column_name("sent_cos_7");
    CHECK(id.is_harmonic());
    CHECK(id.structure == Structure::Sentence);
    CHECK_FALSE(id.is_sin);
    CHECK(id.order == 7);
    for (const char* bad : {"", "bnd_w3", "edu_sin_0", "edu_sin_", "edu_tan_1", "sentence_sin_1",
                            "edu_sin_01", "edu_sin_1x"})
        CHECK_THROWS_AS(parse_column_name(bad), Error);
}
