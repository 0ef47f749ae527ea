#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "hs/contour.hpp"
#include "hs/cross_validation.hpp"
#include "hs/linear_fit.hpp"

namespace hs {

struct RankedSinusoid {
    SinusoidKey key;
    double beta_sin = 0.0;
    double beta_cos = 0.0;
    double amplitude = 0.0;
};

// Harmonic pairs of a fit ordered by descending amplitude.
std::vector<RankedSinusoid> rank_sinusoids(const FitResult& fit);

// SVG line plot of one contour: the observed surprisal, boundary rules
// (paragraph solid, sentence dashed, EDU dotted), the top_n sinusoids by
// amplitude drawn around the contour mean, and the fit's prediction.
// Output is deterministic for fixed inputs.
std::string render_contour_svg(const DocumentContour& doc, const FitResult& fit, std::size_t top_n);

void plot_contour(const DocumentContour& doc, const FitResult& fit, std::size_t top_n,
                  const std::filesystem::path& path);

}  // namespace hs
