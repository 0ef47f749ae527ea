#include <fftw3.h>

#include <complex>
#include <memory>
#include <mutex>
#include <numeric>

#include "hs/analyses.hpp"
#include "hs/error.hpp"

namespace hs {

namespace {

// FFTW's planner is not thread-safe.
std::mutex planner_mutex;

struct PlanDeleter {
    void operator()(fftw_plan_s* plan) const {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
};

}  // namespace

std::vector<double> spectrum(std::span<const double> signal) {
    const std::size_t n = signal.size();
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "spectrum needs at least two samples");
    const double mean = std::accumulate(signal.begin(), signal.end(), 0.0) / static_cast<double>(n);
    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = signal[i] - mean;

    const std::size_t bins = n / 2 + 1;
    std::vector<std::complex<double>> freq(bins);
    std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
    {
        std::lock_guard lock(planner_mutex);
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), centered.data(),
                                        reinterpret_cast<fftw_complex*>(freq.data()),
                                        FFTW_ESTIMATE));
    }
    if (!plan) throw Error(ErrorKind::InvalidArgument, "could not plan DFT");
    fftw_execute(plan.get());

    std::vector<double> power(bins);
    for (std::size_t k = 0; k < bins; ++k) power[k] = std::norm(freq[k]);
    return power;
}

std::vector<double> spectrum(const DocumentContour& doc) {
    std::vector<double> values;
    values.reserve(doc.size());
    for (const auto& t : doc.tokens()) values.push_back(t.surprisal);
    return spectrum(values);
}

}  // namespace hs
