#include <cmath>
#include <limits>
#include <numeric>

#include "hs/analyses.hpp"
#include "hs/error.hpp"

namespace hs {

namespace {

CellStats summarize(const std::vector<double>& values) {
    CellStats out;
    out.count = values.size();
    if (values.empty()) {
        out.mean = std::numeric_limits<double>::quiet_NaN();
        out.sd = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double n = static_cast<double>(values.size());
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() < 2) {
        out.sd = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(ss / (n - 1.0));
    return out;
}

}  // namespace

BoundaryStats boundary_stats(std::span<const DocumentContour> docs, Structure structure,
                             std::size_t window) {
    if (window != 1 && window != 2)
        throw Error(ErrorKind::InvalidArgument, "boundary window must be 1 or 2");
    std::vector<double> before, after, other;
    for (const auto& doc : docs) {
        const std::size_t n = doc.size();
        std::vector<bool> in_before(n, false), in_after(n, false), near(n, false);
        for (std::size_t b : boundary_positions(doc, structure)) {
            for (std::size_t i = b >= window ? b - window : 0; i < b; ++i) in_before[i] = true;
            for (std::size_t i = b; i < std::min(n, b + window); ++i) in_after[i] = true;
            near[b - 1] = true;
            near[b] = true;
        }
        const auto tokens = doc.tokens();
        for (std::size_t i = 0; i < n; ++i) {
            if (in_before[i]) before.push_back(tokens[i].surprisal);
            if (in_after[i]) after.push_back(tokens[i].surprisal);
            if (!near[i]) other.push_back(tokens[i].surprisal);
        }
    }
    BoundaryStats out;
    out.structure = structure;
    out.window = window;
    out.before = summarize(before);
    out.after = summarize(after);
    out.non_boundary = summarize(other);
    return out;
}

std::vector<BoundaryStats> boundary_report(std::span<const DocumentContour> docs) {
    std::vector<BoundaryStats> out;
    for (std::size_t window : {1u, 2u})
        for (Structure s : {Structure::Paragraph, Structure::Sentence, Structure::Edu})
            out.push_back(boundary_stats(docs, s, window));
    return out;
}

}  // namespace hs
