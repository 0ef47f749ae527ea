#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hs/contour.hpp"
#include "hs/linear_fit.hpp"

namespace hs {

inline constexpr double kDefaultAlpha = 0.001;

// A_k = sqrt(b_sin^2 + b_cos^2).
double amplitude(double beta_sin, double beta_cos) noexcept;

struct AnovaResult {
    Structure structure = Structure::Document;
    std::size_t order = 0;
    double f_stat = 0.0;
    double df_num = 2.0;
    double df_den = 0.0;
    double p_value = 1.0;
    bool significant = false;
};

// Nested-model F test of one harmonic order (its sin/cos pair, two extra
// parameters) against the baseline fit. The augmented model's parameter
// count is its numerical rank. Throws NonNested, DegenerateDf.
AnovaResult anova_order_test(const FitResult& baseline_fit, const FitResult& augmented_fit,
                             double alpha = kDefaultAlpha);

struct PairedTestResult {
    double mean_delta = 0.0;   // mean of baseline - model
    double sd_delta = 0.0;
    double t_stat = 0.0;
    double df = 0.0;
    double one_sided_p = 0.5;  // H1: model MSE < baseline MSE
    double holm_adjusted_p = 1.0;
    bool degenerate = false;   // all differences identical and non-zero
};

// One-sided paired t test on per-fold errors. Throws LengthMismatch when the
// inputs differ in length or have fewer than two pairs.
PairedTestResult paired_t_one_sided(std::span<const double> baseline_mses,
                                    std::span<const double> model_mses);

// Holm step-down adjustment, returned in input order. Throws OutOfRangeP.
std::vector<double> holm_correction(std::span<const double> p_values);

}  // namespace hs
