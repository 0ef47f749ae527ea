#include "hs/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hs/distributions.hpp"
#include "hs/error.hpp"

namespace hs {

double amplitude(double beta_sin, double beta_cos) noexcept { return std::hypot(beta_sin, beta_cos); }

AnovaResult anova_order_test(const FitResult& baseline_fit, const FitResult& augmented_fit,
                             double alpha) {
    if (baseline_fit.n_rows != augmented_fit.n_rows)
        throw Error(ErrorKind::NonNested, "baseline and augmented fits use different rows");
    const double tolerance = 1e-9 * std::max(1.0, baseline_fit.rss);
    if (augmented_fit.rss > baseline_fit.rss + tolerance)
        throw Error(ErrorKind::NonNested, "augmented model fits worse than its baseline");
    const double n = static_cast<double>(augmented_fit.n_rows);
    const double p = static_cast<double>(augmented_fit.n_params_effective);
    if (n <= p)
        throw Error(ErrorKind::DegenerateDf, "no residual degrees of freedom (n <= p)");

    AnovaResult out;
    out.df_num = 2.0;
    out.df_den = n - p;
    const double gain = std::max(0.0, baseline_fit.rss - augmented_fit.rss);
    if (gain == 0.0) {
        out.f_stat = 0.0;
    } else if (augmented_fit.rss <= 0.0) {
        out.f_stat = std::numeric_limits<double>::infinity();
    } else {
        out.f_stat = (gain / out.df_num) / (augmented_fit.rss / out.df_den);
    }
    out.p_value = dist::f_survival(out.f_stat, out.df_num, out.df_den);
    out.significant = out.p_value < alpha;
    return out;
}

PairedTestResult paired_t_one_sided(std::span<const double> baseline_mses,
                                    std::span<const double> model_mses) {
    if (baseline_mses.size() != model_mses.size() || baseline_mses.size() < 2)
        throw Error(ErrorKind::LengthMismatch, "paired t test needs two equal-length samples, n >= 2");
    const std::size_t n = baseline_mses.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = baseline_mses[i] - model_mses[i];

    PairedTestResult out;
    out.df = static_cast<double>(n - 1);
    out.mean_delta = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : d) ss += (v - out.mean_delta) * (v - out.mean_delta);
    out.sd_delta = std::sqrt(ss / out.df);

    const bool all_equal = std::all_of(d.begin(), d.end(), [&](double v) { return v == d[0]; });
    if (all_equal) {
        out.sd_delta = 0.0;
        if (d[0] == 0.0) {
            out.t_stat = 0.0;
            out.one_sided_p = 0.5;
        } else {
            out.degenerate = true;
            out.t_stat = std::copysign(std::numeric_limits<double>::infinity(), d[0]);
            out.one_sided_p = d[0] > 0.0 ? 0.0 : 1.0;
        }
        out.holm_adjusted_p = out.one_sided_p;
        return out;
    }
    out.t_stat = out.mean_delta / (out.sd_delta / std::sqrt(static_cast<double>(n)));
    out.one_sided_p = dist::t_survival(out.t_stat, out.df);
    out.holm_adjusted_p = out.one_sided_p;
    return out;
}

std::vector<double> holm_correction(std::span<const double> p_values) {
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0))
            throw Error(ErrorKind::OutOfRangeP, "p-value outside [0, 1]");
    const std::size_t m = p_values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    std::vector<double> adjusted(m);
    double running = 0.0;
    for (std::size_t rank = 0; rank < m; ++rank) {
        const std::size_t idx = order[rank];
        running = std::max(running, static_cast<double>(m - rank) * p_values[idx]);
        adjusted[idx] = std::min(1.0, running);
    }
    return adjusted;
}

}  // namespace hs
