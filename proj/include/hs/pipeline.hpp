#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hs/analyses.hpp"
#include "hs/cross_validation.hpp"

namespace hs {

struct PipelineConfig {
    std::filesystem::path input;
    // Scaled models besides the baseline: any of doc, edu, sent, par, all.
    std::vector<std::string> models = {"doc", "edu", "sent", "par", "all"};
    double lambda = 0.01;
    double alpha = kDefaultAlpha;
    std::size_t n_folds = 10;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = ".";
    std::size_t threads = 1;

    // Throws InvalidArgument when an invariant is broken.
    void validate() const;
    // baseline followed by the configured models, deduplicated.
    std::vector<ModelSpec> model_specs() const;
};

// Applies HS_SEED from the environment when set. Throws InvalidArgument for
// a malformed value.
void apply_seed_override(PipelineConfig& config);

struct PipelineReport {
    CvReport cv;
    std::vector<ModelComparison> comparisons;
    std::vector<BoundaryStats> boundaries;
};

// Runs cross-validation, model comparison and boundary statistics.
PipelineReport analyze(const std::vector<DocumentContour>& docs, const PipelineConfig& config);

// Loads config.input, runs `analyze` and writes mse_table.csv,
// amplitude_table.csv, boundary_table.csv and run_meta.json into
// config.output_dir.
PipelineReport run_pipeline(const PipelineConfig& config);
void write_reports(const PipelineReport& report, const PipelineConfig& config,
                   const std::vector<DocumentContour>& docs);

// Report tables. Numbers use 6 significant digits; missing values are "NA".
inline constexpr const char* kMseTableHeader =
    "model,mean_mse,sd_mse,delta_mse,p_raw,p_holm,significant";
inline constexpr const char* kAmplitudeTableHeader =
    "model,structure,k,mean_amplitude,sd_amplitude,selected_folds,significant_folds";
inline constexpr const char* kBoundaryTableHeader =
    "side,window,paragraph_mean,paragraph_sd,paragraph_n,sentence_mean,sentence_sd,sentence_n,"
    "edu_mean,edu_sd,edu_n,non_boundary_mean,non_boundary_sd,non_boundary_n";

std::string format_number(double value);
std::string mse_table_csv(const std::vector<ModelComparison>& comparisons, double alpha);
std::string amplitude_table_csv(const CvReport& report);
std::string boundary_table_csv(const std::vector<BoundaryStats>& stats);
std::string run_meta_json(const PipelineConfig& config, const CvReport& report,
                          const std::vector<DocumentContour>& docs);

// Writes text to a file, replacing it. Throws Io.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace hs
