#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hs/contour_io.hpp"
#include "hs/error.hpp"
#include "hs/features.hpp"
#include "hs/pipeline.hpp"
#include "test_support.hpp"

using namespace hs;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::size_t count_lines(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("format_number") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.123456789) == "0.123457");
    CHECK(format_number(3.5666444944765087519e-8) == "3.56664e-08");
    CHECK(format_number(std::nan("")) == "NA");
}

TEST_CASE("config validation") {
    PipelineConfig c;
    CHECK_NOTHROW(c.validate());
    const auto specs = c.model_specs();
    REQUIRE(specs.size() == 6);
    CHECK(specs[0].name == "baseline");

    c.models = {"edu", "edu", "baseline"};
    CHECK(c.model_specs().size() == 2);

    PipelineConfig bad;
    bad.lambda = -1;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = PipelineConfig{};
    bad.alpha = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = PipelineConfig{};
    bad.n_folds = 1;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = PipelineConfig{};
    bad.models = {"chapter"};
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("HS_SEED overrides the seed") {
    PipelineConfig c;
    c.seed = 1;
    ::setenv("HS_SEED", "77", 1);
    apply_seed_override(c);
    CHECK(c.seed == 77);
    ::setenv("HS_SEED", "7x", 1);
    CHECK_THROWS_AS(apply_seed_override(c), Error);
    ::unsetenv("HS_SEED");
    apply_seed_override(c);
    CHECK(c.seed == 77);
}

TEST_CASE("the all-scales design has intercept, baseline and every harmonic pair") {
    auto spec = hs::testing::recovery_spec(2);
    spec.n_docs = 6;
    const auto docs = generate_synthetic(spec);
    const auto orders = orders_from_training(docs, kAllStructures);
    const auto m = assemble_matrix(docs, BlockSet::all_structures(), orders);
    std::size_t expected = 1 + kBaselineColumns.size();
    for (Structure s : kAllStructures) expected += 2 * *orders.get(s);
    CHECK(static_cast<std::size_t>(m.values.cols()) == expected);
    CHECK(m.names.size() == expected);
    CHECK(static_cast<std::size_t>(m.values.rows()) == total_tokens(docs));
}

TEST_CASE("run_pipeline writes deterministic reports") {
    auto spec = hs::testing::recovery_spec(31);
    spec.n_docs = 16;
    const auto dir = fs::temp_directory_path() / "hs_pipeline_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    save_contours(dir / "in.jsonl", generate_synthetic(spec));

    PipelineConfig c;
    c.input = dir / "in.jsonl";
    c.models = {"edu", "sent"};
    c.n_folds = 4;
    c.seed = 5;
    c.output_dir = dir / "a";
    const auto report = run_pipeline(c);
    c.output_dir = dir / "b";
    run_pipeline(c);

    for (const char* name : {"mse_table.csv", "amplitude_table.csv", "boundary_table.csv", "run_meta.json"}) {
        const auto a = slurp(dir / "a" / name);
        CHECK(!a.empty());
        CHECK(a == slurp(dir / "b" / name));
    }

    const auto mse = slurp(dir / "a" / "mse_table.csv");
    CHECK(first_line(mse) == kMseTableHeader);
    CHECK(count_lines(mse) == 4);
    CHECK(mse.find("\nbaseline,") != std::string::npos);
    CHECK(first_line(slurp(dir / "a" / "amplitude_table.csv")) == kAmplitudeTableHeader);
    const auto bnd = slurp(dir / "a" / "boundary_table.csv");
    CHECK(first_line(bnd) == kBoundaryTableHeader);
    CHECK(count_lines(bnd) == 5);

    // every non-baseline model carries a raw and an adjusted p
    for (const auto& cmp : report.comparisons) {
        if (cmp.is_baseline) continue;
        CHECK(cmp.test.one_sided_p >= 0.0);
        CHECK(cmp.test.holm_adjusted_p >= cmp.test.one_sided_p);
        CHECK(cmp.test.holm_adjusted_p <= 1.0);
    }
    fs::remove_all(dir);
}
