#include "hs/linear_fit.hpp"

#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <string_view>
#include <unordered_map>

#include "hs/error.hpp"

namespace hs {

std::optional<double> FitResult::coefficient(std::string_view name) const noexcept {
    for (std::size_t j = 0; j < column_names.size(); ++j)
        if (column_names[j] == name) return coefficients[static_cast<Eigen::Index>(j)];
    return std::nullopt;
}

namespace {

void check_shapes(const FeatureMatrix& X, const Eigen::VectorXd& y) {
    if (X.rows() == 0 || X.cols() == 0)
        throw Error(ErrorKind::EmptyMatrix, "design matrix has no rows or no columns");
    if (X.rows() != y.size())
        throw Error(ErrorKind::LengthMismatch,
                    "design has " + std::to_string(X.rows()) + " rows but response has " +
                        std::to_string(y.size()));
    if (static_cast<Eigen::Index>(X.names.size()) != X.cols())
        throw Error(ErrorKind::ColumnMismatch, "column name count differs from column count");
}

// Pseudo-inverse solve through the SVD of a square or wide system.
template <typename Matrix>
std::pair<Eigen::VectorXd, std::size_t> svd_solve(const Matrix& A, const Eigen::VectorXd& b) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cutoff = s.size() > 0 ? kSvdCutoff * s[0] : 0.0;
    Eigen::VectorXd ub = svd.matrixU().transpose() * b;
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] > cutoff && s[i] > 0.0) {
            ub[i] /= s[i];
            ++rank;
        } else {
            ub[i] = 0.0;
        }
    }
    return {svd.matrixV() * ub, rank};
}

double soft_threshold(double x, double threshold) noexcept {
    if (x > threshold) return x - threshold;
    if (x < -threshold) return x + threshold;
    return 0.0;
}

}  // namespace

FitResult ols_fit(const FeatureMatrix& X, const Eigen::VectorXd& y) {
    check_shapes(X, y);
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();

    FitResult fit;
    fit.column_names = X.names;
    fit.n_rows = static_cast<std::size_t>(n);
    if (n >= p) {
        // Tall: reduce to the p x p triangular factor first; it has the same
        // singular values as X.
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(X.values);
        const Eigen::MatrixXd r =
            qr.matrixQR().topRows(p).template triangularView<Eigen::Upper>();
        const Eigen::VectorXd qty = (qr.householderQ().adjoint() * y).head(p);
        auto [beta, rank] = svd_solve(r, qty);
        fit.coefficients = std::move(beta);
        fit.n_params_effective = rank;
    } else {
        auto [beta, rank] = svd_solve(X.values, y);
        fit.coefficients = std::move(beta);
        fit.n_params_effective = rank;
    }
    fit.rss = (y - X.values * fit.coefficients).squaredNorm();
    return fit;
}

double lasso_objective(const FeatureMatrix& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& beta, double lambda) {
    const double n = static_cast<double>(X.rows());
    double penalty = 0.0;
    const auto intercept = X.index_of(kInterceptColumn);
    for (Eigen::Index j = 0; j < beta.size(); ++j)
        if (!intercept || j != *intercept) penalty += std::abs(beta[j]);
    return (y - X.values * beta).squaredNorm() / (2.0 * n) + lambda * penalty;
}

FitResult lasso_fit(const FeatureMatrix& X, const Eigen::VectorXd& y, const LassoOptions& options) {
    check_shapes(X, y);
    if (!(options.lambda >= 0.0) || !std::isfinite(options.lambda))
        throw Error(ErrorKind::InvalidArgument, "lambda must be finite and >= 0");

    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    const double inv_n = 1.0 / static_cast<double>(n);
    const auto intercept = X.index_of(kInterceptColumn);

    // Profile out the intercept: with it unpenalized, the optimal intercept
    // for any slope vector is mean(y) - mean(X) * slopes.
    Eigen::MatrixXd xc = X.values;
    Eigen::VectorXd means = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd r = y;
    double y_mean = 0.0;
    if (intercept) {
        means = xc.colwise().mean().transpose();
        xc.rowwise() -= means.transpose();
        xc.col(*intercept).setZero();
        y_mean = y.mean();
        r.array() -= y_mean;
    }

    Eigen::VectorXd scale(p);  // (1/n) ||x_j||^2 of the working columns
    for (Eigen::Index j = 0; j < p; ++j) {
        const double z = xc.col(j).squaredNorm() * inv_n;
        const double raw = X.values.col(j).squaredNorm() * inv_n;
        scale[j] = (intercept && j == *intercept) || z <= 1e-20 * (1.0 + raw) ? 0.0 : z;
    }

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    const double lambda = options.lambda;

    // One coordinate update; returns the absolute change.
    auto update = [&](Eigen::Index j) -> double {
        if (scale[j] == 0.0) return 0.0;
        const double old = beta[j];
        const double rho = xc.col(j).dot(r) * inv_n + scale[j] * old;
        const double next = soft_threshold(rho, lambda) / scale[j];
        if (next == old) return 0.0;
        r.noalias() -= (next - old) * xc.col(j);
        beta[j] = next;
        return std::abs(next - old);
    };
    auto objective = [&] {
        double penalty = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) penalty += std::abs(beta[j]);
        return r.squaredNorm() * inv_n * 0.5 + lambda * penalty;
    };

    std::vector<Eigen::Index> active;
    std::size_t sweeps = 0;
    bool converged = false;
    while (sweeps < options.max_sweeps) {
        // Full sweep over every coordinate.
        double change = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) change = std::max(change, update(j));
        ++sweeps;
        if (options.objective_trace) options.objective_trace->push_back(objective());
        if (change < options.tolerance) {
            converged = true;
            break;
        }
        // Then iterate on the current support until it settles.
        active.clear();
        for (Eigen::Index j = 0; j < p; ++j)
            if (beta[j] != 0.0) active.push_back(j);
        while (sweeps < options.max_sweeps) {
            double active_change = 0.0;
            for (Eigen::Index j : active) active_change = std::max(active_change, update(j));
            ++sweeps;
            if (options.objective_trace) options.objective_trace->push_back(objective());
            if (active_change < options.tolerance) break;
        }
    }

    FitResult fit;
    fit.column_names = X.names;
    fit.n_rows = static_cast<std::size_t>(n);
    fit.converged = converged;
    fit.sweeps = sweeps;
    if (intercept) beta[*intercept] = y_mean - means.dot(beta);
    fit.coefficients = std::move(beta);
    fit.rss = (y - X.values * fit.coefficients).squaredNorm();
    for (Eigen::Index j = 0; j < p; ++j)
        if (fit.coefficients[j] != 0.0) ++fit.n_params_effective;
    if (!converged)
        std::clog << "warning: lasso did not converge within " << options.max_sweeps
                  << " sweeps\n";
    return fit;
}

SelectionResult select_and_refit(const FeatureMatrix& X, const Eigen::VectorXd& y, double lambda) {
    SelectionResult out;
    out.lasso = lasso_fit(X, y, lambda);
    const auto intercept = X.index_of(kInterceptColumn);

    // Survivors, minus exact duplicates of an earlier survivor.
    std::unordered_multimap<std::size_t, Eigen::Index> seen;
    const auto rows = static_cast<std::size_t>(X.rows());
    const auto hash_column = [&](Eigen::Index j) {
        std::string_view bytes(reinterpret_cast<const char*>(X.values.col(j).data()),
                               rows * sizeof(double));
        return std::hash<std::string_view>{}(bytes);
    };
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const bool keep = (intercept && j == *intercept) || out.lasso.coefficients[j] != 0.0;
        if (!keep) continue;
        const std::size_t h = hash_column(j);
        bool duplicate = false;
        auto [lo, hi] = seen.equal_range(h);
        for (auto it = lo; it != hi && !duplicate; ++it)
            duplicate = std::memcmp(X.values.col(it->second).data(), X.values.col(j).data(),
                                    rows * sizeof(double)) == 0;
        if (duplicate) continue;
        seen.emplace(h, j);
        out.selected.push_back(X.names[static_cast<std::size_t>(j)]);
    }
    if (out.selected.empty()) {
        // No intercept column and everything shrunk away: the refit is the zero model.
        out.refit.n_rows = rows;
        out.refit.rss = y.squaredNorm();
        out.refit.coefficients.resize(0);
        return out;
    }
    out.refit = ols_fit(X.select(out.selected), y);
    return out;
}

Eigen::VectorXd predict(const FitResult& fit, const FeatureMatrix& X) {
    Eigen::VectorXd yhat = Eigen::VectorXd::Zero(X.rows());
    if (fit.column_names == X.names) return X.values * fit.coefficients;
    for (std::size_t j = 0; j < fit.column_names.size(); ++j) {
        const auto col = X.index_of(fit.column_names[j]);
        if (!col)
            throw Error(ErrorKind::ColumnMismatch,
                        "prediction matrix lacks column '" + fit.column_names[j] + "'");
        yhat.noalias() += fit.coefficients[static_cast<Eigen::Index>(j)] * X.values.col(*col);
    }
    return yhat;
}

double mse(const FitResult& fit, const FeatureMatrix& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size())
        throw Error(ErrorKind::LengthMismatch, "prediction matrix and response lengths differ");
    if (X.rows() == 0) throw Error(ErrorKind::EmptyMatrix, "no rows to evaluate");
    return (y - predict(fit, X)).squaredNorm() / static_cast<double>(X.rows());
}

}  // namespace hs
