#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hs/features.hpp"

namespace hs {

struct FitResult {
    Eigen::VectorXd coefficients;
    std::vector<std::string> column_names;
    double rss = 0.0;
    std::size_t n_rows = 0;
    // Numerical rank for OLS, non-zero coefficient count for the lasso.
    std::size_t n_params_effective = 0;
    // Lasso only: false when the sweep limit was hit before convergence.
    bool converged = true;
    std::size_t sweeps = 0;

    std::optional<double> coefficient(std::string_view name) const noexcept;
};

// Singular values below this fraction of the largest are treated as zero.
inline constexpr double kSvdCutoff = 1e-10;

// Minimum-norm least squares. Throws EmptyMatrix, LengthMismatch.
FitResult ols_fit(const FeatureMatrix& X, const Eigen::VectorXd& y);

struct LassoOptions {
    double lambda = 0.01;
    double tolerance = 1e-8;       // max absolute coefficient change per sweep
    std::size_t max_sweeps = 10000;
    // When set, receives the objective value after every sweep.
    std::vector<double>* objective_trace = nullptr;
};

// Minimizes (1/(2n))||y - X b||^2 + lambda * sum_{j != intercept} |b_j| by
// cyclic coordinate descent. The column named "intercept" (if any) is left
// unpenalized; it is profiled out by centering, which leaves the objective
// unchanged. Columns are not standardized. Non-convergence is reported
// through FitResult::converged rather than thrown.
FitResult lasso_fit(const FeatureMatrix& X, const Eigen::VectorXd& y, const LassoOptions& options);
inline FitResult lasso_fit(const FeatureMatrix& X, const Eigen::VectorXd& y, double lambda = 0.01) {
    LassoOptions options;
    options.lambda = lambda;
    return lasso_fit(X, y, options);
}

// Lasso objective for arbitrary coefficients (intercept unpenalized).
double lasso_objective(const FeatureMatrix& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& beta, double lambda);

struct SelectionResult {
    FitResult refit;                     // OLS on the surviving columns
    FitResult lasso;                     // the selecting fit over all columns
    std::vector<std::string> selected;   // surviving column names, matrix order
};

// Lasso selection, exact-duplicate removal (first column wins), OLS refit.
// The intercept always survives.
SelectionResult select_and_refit(const FeatureMatrix& X, const Eigen::VectorXd& y,
                                 double lambda = 0.01);

// Looks up the fit's columns by name in X. Throws ColumnMismatch.
Eigen::VectorXd predict(const FitResult& fit, const FeatureMatrix& X);
double mse(const FitResult& fit, const FeatureMatrix& X, const Eigen::VectorXd& y);

}  // namespace hs
