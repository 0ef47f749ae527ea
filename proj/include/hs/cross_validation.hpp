#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hs/contour.hpp"
#include "hs/features.hpp"
#include "hs/inference.hpp"
#include "hs/linear_fit.hpp"

namespace hs {

struct ModelSpec {
    std::string name;
    BlockSet blocks;
};

// baseline, doc, edu, sent, par, all
std::vector<ModelSpec> default_models();
// Resolves "baseline", a structure name or "all"; throws InvalidArgument.
ModelSpec model_from_name(const std::string& name);

struct SinusoidKey {
    Structure structure = Structure::Document;
    std::size_t order = 0;
    auto operator<=>(const SinusoidKey&) const = default;
};

struct CvOptions {
    std::size_t n_folds = 10;
    std::uint64_t seed = 0;
    double lambda = 0.01;
    double alpha = kDefaultAlpha;
    std::size_t threads = 1;
};

struct FoldModelResult {
    double mse = 0.0;
    std::vector<std::string> selected;
    FitResult refit;
    bool lasso_converged = true;
    std::map<SinusoidKey, double> amplitudes;
    std::map<SinusoidKey, AnovaResult> anova;
};

struct FoldResult {
    std::vector<std::string> validation_docs;
    OrderSpec orders;
    std::size_t train_tokens = 0;
    std::size_t validation_tokens = 0;
    std::vector<FoldModelResult> models;  // aligned with CvReport::models
};

struct CvReport {
    std::vector<ModelSpec> models;
    std::vector<std::pair<std::string, std::size_t>> fold_of_doc;  // input document order
    std::vector<FoldResult> folds;

    std::vector<double> fold_mses(std::size_t model) const;
    std::size_t model_index(const std::string& name) const;  // throws InvalidArgument
};

// Fold assignment: seeded Fisher-Yates shuffle of the documents, then
// round-robin. Returns the fold of every document in input order.
std::vector<std::size_t> assign_folds(std::size_t n_docs, std::size_t n_folds, std::uint64_t seed);

// K-fold cross-validation by document. Per fold the harmonic orders come from
// the training documents, every model is fit by select_and_refit and scored
// on the held-out tokens, and each surviving harmonic order is tested against
// the baseline-features OLS fit. Throws TooFewDocuments.
CvReport cross_validate(std::span<const DocumentContour> docs, std::span<const ModelSpec> models,
                        const CvOptions& options);

struct SinusoidSummary {
    SinusoidKey key;
    double mean_amplitude = 0.0;
    double sd_amplitude = 0.0;
    std::size_t selected_folds = 0;
    std::size_t significant_folds = 0;
};

// Sinusoids selected in every fold of a model, sorted by descending mean
// amplitude (ties by structure, then order).
std::vector<SinusoidSummary> persistent_sinusoids(const CvReport& report, std::size_t model);

struct ModelComparison {
    std::string name;
    double mean_mse = 0.0;
    double sd_mse = 0.0;
    bool is_baseline = false;
    PairedTestResult test;  // unset for the baseline
};

// Mean/sd of fold MSEs and one-sided paired t tests of every model against
// the "baseline" model, with Holm adjustment across the non-baseline models.
std::vector<ModelComparison> compare_models(const CvReport& report);

}  // namespace hs
