#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hs/contour.hpp"
#include "hs/cross_validation.hpp"

namespace hs {

// ---- Boundary surprisal -------------------------------------------------

struct CellStats {
    double mean = 0.0;
    double sd = 0.0;  // sample sd; NaN below two tokens
    std::size_t count = 0;
};

struct BoundaryStats {
    Structure structure = Structure::Edu;
    std::size_t window = 1;
    CellStats before;        // indices [b - window, b - 1]
    CellStats after;         // indices [b, b + window - 1]
    CellStats non_boundary;  // farther than one position from every boundary
};

// Pools tokens across documents; a token in two overlapping windows is
// counted once per cell. Throws InvalidArgument unless window is 1 or 2.
BoundaryStats boundary_stats(std::span<const DocumentContour> docs, Structure structure,
                             std::size_t window);

// Paragraph, sentence and EDU cells for windows 1 and 2.
std::vector<BoundaryStats> boundary_report(std::span<const DocumentContour> docs);

// ---- Permutation null ----------------------------------------------------

// Shuffles surprisal values within each document (Fisher-Yates, generator
// seeded with seed + document ordinal). Everything else is unchanged.
std::vector<DocumentContour> permute_surprisal(std::span<const DocumentContour> docs,
                                               std::uint64_t seed);

// ---- Spectrum -----------------------------------------------------------

// Squared DFT magnitudes of the mean-centered contour for bins 0..n/2.
// Throws InvalidArgument for fewer than two tokens.
std::vector<double> spectrum(const DocumentContour& doc);
std::vector<double> spectrum(std::span<const double> signal);

// ---- Synthetic contours ---------------------------------------------------

struct IntRange {
    long lo = 1;
    long hi = 1;
};

struct SyntheticSpec {
    std::size_t n_docs = 50;
    IntRange edus_per_doc{8, 12};
    IntRange tokens_per_edu{8, 20};
    IntRange edus_per_sentence{1, 3};
    IntRange sentences_per_paragraph{1, 3};
    IntRange chars_per_token{1, 12};
    double intercept = 5.0;
    // (structure, k) -> (beta_sin, beta_cos)
    std::map<SinusoidKey, std::pair<double, double>> harmonics;
    double noise_sd = 1.0;
    std::uint64_t seed = 0;
};

// Nested EDU/sentence/paragraph segmentation with
// surprisal = intercept + sum of time-scaled harmonics + N(0, noise_sd^2),
// clipped at zero. Throws InvalidSpec.
std::vector<DocumentContour> generate_synthetic(const SyntheticSpec& spec);

}  // namespace hs
