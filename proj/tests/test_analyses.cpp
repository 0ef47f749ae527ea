#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hs/analyses.hpp"
#include "hs/error.hpp"
#include "hs/features.hpp"
#include "hs/linear_fit.hpp"
#include "test_support.hpp"

using namespace hs;
using hs::testing::make_doc;

namespace {

// O(n^2) DFT of the mean-centered signal.
std::vector<double> naive_power(const std::vector<double>& x) {
    const std::size_t n = x.size();
    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> out(n / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
        std::complex<double> acc = 0;
        for (std::size_t t = 0; t < n; ++t)
            acc += (x[t] - mean) * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * t) /
                                                       static_cast<double>(n));
        out[k] = std::norm(acc);
    }
    return out;
}

}  // namespace

TEST_CASE("boundary_stats worked example") {
    const std::vector<DocumentContour> docs = {make_doc({0, 0, 0, 1, 1, 1}, {}, {}, {5, 1, 0, 9, 2, 1})};
    const auto s = boundary_stats(docs, Structure::Edu, 1);
    CHECK(s.before.mean == 0.0);
    CHECK(s.after.mean == 9.0);
    CHECK(s.non_boundary.mean == 2.25);
    CHECK(s.before.count == 1);
    CHECK(s.non_boundary.count == 4);

    const auto w2 = boundary_stats(docs, Structure::Edu, 2);
    CHECK(w2.before.mean == 0.5);
    CHECK(w2.after.mean == 5.5);
    CHECK(w2.non_boundary.mean == 2.25);

    CHECK_THROWS_AS(boundary_stats(docs, Structure::Edu, 3), Error);
}

TEST_CASE("boundary_stats on a constant contour") {
    const std::vector<DocumentContour> docs = {
        make_doc({0, 0, 1, 1, 1, 2, 2, 2, 2, 3, 3}, {}, {}, std::vector<double>(11, 4.0))};
    for (std::size_t w : {1u, 2u}) {
        const auto s = boundary_stats(docs, Structure::Edu, w);
        CHECK(s.before.mean == 4.0);
        CHECK(s.after.mean == 4.0);
        CHECK(s.non_boundary.mean == 4.0);
    }
}

TEST_CASE("window-1 cells partition the tokens") {
    const auto docs = generate_synthetic(hs::testing::recovery_spec(3));
    for (Structure s : {Structure::Edu, Structure::Sentence, Structure::Paragraph}) {
        const auto stats = boundary_stats(docs, s, 1);
        std::size_t near = 0, total = 0, overlap = 0;
        for (const auto& doc : docs) {
            std::vector<int> mark(doc.size(), 0);
            for (auto b : boundary_positions(doc, s)) {
                ++mark[b - 1];
                ++mark[b];
            }
            for (int m : mark) {
                near += m > 0;
                overlap += m > 1;
            }
            total += doc.size();
        }
        CHECK(stats.before.count + stats.after.count - overlap == near);
        CHECK(near + stats.non_boundary.count == total);
    }
}

TEST_CASE("permute_surprisal") {
    const auto docs = generate_synthetic(hs::testing::recovery_spec(9));
    const auto permuted = permute_surprisal(docs, 123);
    REQUIRE(permuted.size() == docs.size());
    bool any_moved = false;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        std::vector<double> a, b;
        for (const auto& t : docs[d].tokens()) a.push_back(t.surprisal);
        for (const auto& t : permuted[d].tokens()) b.push_back(t.surprisal);
        any_moved = any_moved || a != b;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
        for (std::size_t i = 0; i < docs[d].size(); ++i) {
            const auto& x = docs[d].tokens()[i];
            const auto& y = permuted[d].tokens()[i];
            CHECK(x.text == y.text);
            CHECK(x.n_chars == y.n_chars);
            CHECK(x.edu_id == y.edu_id);
            CHECK(x.sent_id == y.sent_id);
            CHECK(x.par_id == y.par_id);
        }
        for (Structure s : kAllStructures)
            CHECK(boundary_positions(docs[d], s) == boundary_positions(permuted[d], s));
        const auto fa = baseline_features(docs[d]);
        const auto fb = baseline_features(permuted[d]);
        for (std::size_t i = 0; i < fa.size(); ++i) {
            CHECK(fa[i].tok_len == fb[i].tok_len);
            CHECK(fa[i].rel_pos == fb[i].rel_pos);
            CHECK(fa[i].bnd_w1 == fb[i].bnd_w1);
            CHECK(fa[i].bnd_w4 == fb[i].bnd_w4);
        }
    }
    CHECK(any_moved);
    CHECK(permute_surprisal(docs, 123) == permuted);

    const std::vector<DocumentContour> single = {make_doc({0}, {}, {}, {3.5})};
    CHECK(permute_surprisal(single, 1) == single);
}

TEST_CASE("spectrum") {
    SUBCASE("constant signal") {
        const auto p = spectrum(std::vector<double>(16, 2.5));
        for (double v : p) CHECK(v <= 1e-24);
    }
    SUBCASE("pure tone at bin 8") {
        std::vector<double> x(64);
        for (std::size_t t = 0; t < 64; ++t) x[t] = std::sin(2.0 * std::numbers::pi * 8.0 * t / 64.0);
        const auto p = spectrum(x);
        REQUIRE(p.size() == 33);
        CHECK(std::distance(p.begin(), std::max_element(p.begin(), p.end())) == 8);
        CHECK(std::abs(std::sqrt(p[8]) - 32.0) <= 1e-9);
    }
    SUBCASE("matches the naive DFT and Parseval") {
        std::mt19937_64 rng(6);
        std::normal_distribution<double> g(3.0, 1.0);
        for (std::size_t n : {2u, 7u, 64u, 101u}) {
            std::vector<double> x(n);
            for (auto& v : x) v = g(rng);
            const auto p = spectrum(x);
            const auto oracle = naive_power(x);
            for (std::size_t k = 0; k < p.size(); ++k) CHECK(std::abs(p[k] - oracle[k]) <= 1e-9 * (1 + oracle[k]));
            double mean = 0, energy = 0, spectral = 0;
            for (double v : x) mean += v;
            mean /= static_cast<double>(n);
            for (double v : x) energy += (v - mean) * (v - mean);
            for (std::size_t k = 0; k < p.size(); ++k)
                spectral += (k == 0 || 2 * k == n) ? p[k] : 2.0 * p[k];
            CHECK(std::abs(spectral / static_cast<double>(n) - energy) <= 1e-9 * energy);
        }
    }
    CHECK_THROWS_AS(spectrum(std::vector<double>{1.0}), Error);
}

TEST_CASE("generate_synthetic") {
    SUBCASE("noise-free, no harmonics: constant intercept") {
        auto spec = hs::testing::recovery_spec(1);
        spec.harmonics.clear();
        spec.noise_sd = 0.0;
        spec.n_docs = 3;
        for (const auto& doc : generate_synthetic(spec))
            for (const auto& t : doc.tokens()) CHECK(t.surprisal == 5.0);
    }
    SUBCASE("shape follows the samplers") {
        const auto docs = generate_synthetic(hs::testing::recovery_spec(2));
        CHECK(docs.size() == 50);
        for (const auto& doc : docs) {
            const auto edus = doc.spans(Structure::Edu);
            CHECK(edus.size() >= 8);
            CHECK(edus.size() <= 12);
            for (const auto& e : edus) {
                CHECK(e.length >= 8);
                CHECK(e.length <= 20);
            }
            for (const auto& s : doc.spans(Structure::Sentence)) {
                std::size_t count = 0;
                for (const auto& e : edus) count += e.start >= s.start && e.end() <= s.end();
                CHECK(count >= 1);
                CHECK(count <= 3);
            }
            for (const auto& t : doc.tokens()) {
                CHECK(t.n_chars >= 1);
                CHECK(t.n_chars <= 12);
            }
        }
    }
    SUBCASE("noise-free EDU harmonic is reconstructed exactly") {
        auto spec = hs::testing::recovery_spec(4);
        spec.harmonics.clear();
        spec.harmonics[{Structure::Edu, 1}] = {0.7, -0.2};
        spec.noise_sd = 0.0;
        spec.n_docs = 10;
        const auto docs = generate_synthetic(spec);
        const std::vector<std::string> names = {"intercept", "edu_sin_1", "edu_cos_1"};
        const auto fit = ols_fit(columns_by_name(docs, names), surprisal_vector(docs));
        CHECK(std::abs(fit.coefficients[0] - 5.0) <= 1e-10);
        CHECK(std::abs(fit.coefficients[1] - 0.7) <= 1e-10);
        CHECK(std::abs(fit.coefficients[2] + 0.2) <= 1e-10);
        CHECK(fit.rss < 1e-18);
    }
    SUBCASE("document harmonic peaks at its bin") {
        auto spec = hs::testing::recovery_spec(8);
        spec.harmonics.clear();
        spec.harmonics[{Structure::Document, 5}] = {1.0, 0.5};
        spec.noise_sd = 0.0;
        spec.n_docs = 4;
        for (const auto& doc : generate_synthetic(spec)) {
            const auto p = spectrum(doc);
            CHECK(std::distance(p.begin(), std::max_element(p.begin(), p.end())) == 5);
        }
    }
    SUBCASE("deterministic") {
        const auto spec = hs::testing::recovery_spec(10);
        CHECK(generate_synthetic(spec) == generate_synthetic(spec));
    }
    SUBCASE("invalid specs") {
        auto spec = hs::testing::recovery_spec(1);
        spec.noise_sd = -1.0;
        CHECK_THROWS_AS(generate_synthetic(spec), Error);
        spec = hs::testing::recovery_spec(1);
        spec.tokens_per_edu = {5, 3};
        CHECK_THROWS_AS(generate_synthetic(spec), Error);
        spec = hs::testing::recovery_spec(1);
        spec.edus_per_doc = {0, 3};
        try {
            generate_synthetic(spec);
            FAIL("expected InvalidSpec");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InvalidSpec);
        }
    }
}
