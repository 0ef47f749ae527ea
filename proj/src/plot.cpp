#include "hs/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "hs/features.hpp"
#include "hs/inference.hpp"
#include "hs/pipeline.hpp"

namespace hs {

std::vector<RankedSinusoid> rank_sinusoids(const FitResult& fit) {
    std::map<SinusoidKey, RankedSinusoid> pairs;
    for (std::size_t j = 0; j < fit.column_names.size(); ++j) {
        const ColumnId id = parse_column_name(fit.column_names[j]);
        if (!id.is_harmonic()) continue;
        auto& r = pairs[{id.structure, id.order}];
        r.key = {id.structure, id.order};
        (id.is_sin ? r.beta_sin : r.beta_cos) = fit.coefficients[static_cast<Eigen::Index>(j)];
    }
    std::vector<RankedSinusoid> out;
    for (auto& [key, r] : pairs) {
        r.amplitude = amplitude(r.beta_sin, r.beta_cos);
        out.push_back(r);
    }
    std::stable_sort(out.begin(), out.end(), [](const RankedSinusoid& a, const RankedSinusoid& b) {
        return a.amplitude > b.amplitude;
    });
    return out;
}

namespace {

constexpr double kWidth = 1000.0;
constexpr double kHeight = 360.0;
constexpr double kMargin = 40.0;

const char* sinusoid_colors[] = {"#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_contour_svg(const DocumentContour& doc, const FitResult& fit, std::size_t top_n) {
    const std::size_t n = doc.size();
    std::vector<double> observed(n);
    for (std::size_t i = 0; i < n; ++i) observed[i] = doc.tokens()[i].surprisal;
    const double mean = std::accumulate(observed.begin(), observed.end(), 0.0) / static_cast<double>(n);

    std::vector<double> predicted(n, 0.0);
    if (!fit.column_names.empty()) {
        const std::vector<DocumentContour> one{doc};
        const Eigen::VectorXd yhat = predict(fit, columns_by_name(one, fit.column_names));
        for (std::size_t i = 0; i < n; ++i) predicted[i] = yhat[static_cast<Eigen::Index>(i)];
    }

    const auto ranked = rank_sinusoids(fit);
    const std::size_t shown = std::min(top_n, ranked.size());
    std::vector<std::vector<double>> waves;
    for (std::size_t w = 0; w < shown; ++w) {
        const auto& r = ranked[w];
        const auto h = harmonic_features(doc, r.key.structure, r.key.order);
        std::vector<double> wave(n);
        for (std::size_t i = 0; i < n; ++i) wave[i] = mean + r.beta_sin * h.sin[i] + r.beta_cos * h.cos[i];
        waves.push_back(std::move(wave));
    }

    double lo = *std::min_element(observed.begin(), observed.end());
    double hi = *std::max_element(observed.begin(), observed.end());
    for (const auto* series : {&predicted}) {
        if (fit.column_names.empty()) break;
        lo = std::min(lo, *std::min_element(series->begin(), series->end()));
        hi = std::max(hi, *std::max_element(series->begin(), series->end()));
    }
    for (const auto& wave : waves) {
        lo = std::min(lo, *std::min_element(wave.begin(), wave.end()));
        hi = std::max(hi, *std::max_element(wave.begin(), wave.end()));
    }
    if (hi - lo < 1e-9) {
        lo -= 1.0;
        hi += 1.0;
    }

    const double plot_w = kWidth - 2 * kMargin;
    const double plot_h = kHeight - 2 * kMargin;
    const auto x_of = [&](double i) {
        return kMargin + (n > 1 ? i / static_cast<double>(n - 1) : 0.5) * plot_w;
    };
    const auto y_of = [&](double v) { return kMargin + (hi - v) / (hi - lo) * plot_h; };
    const auto polyline = [&](const std::vector<double>& values) {
        std::string d;
        for (std::size_t i = 0; i < values.size(); ++i) {
            d += i == 0 ? "M" : " L";
            d += fixed(x_of(static_cast<double>(i))) + "," + fixed(y_of(values[i]));
        }
        return d;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    svg << "<title>" << xml_escape(doc.doc_id()) << "</title>\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";

    // Boundaries drawn once, in the style of the coarsest unit ending there.
    std::map<std::size_t, Structure> coarsest;
    for (Structure s : {Structure::Edu, Structure::Sentence, Structure::Paragraph})
        for (std::size_t b : boundary_positions(doc, s)) coarsest[b] = s;
    for (const auto& [b, s] : coarsest) {
        const double x = x_of(static_cast<double>(b) - 0.5);
        const char* style = s == Structure::Paragraph ? "stroke-width=\"2\""
                            : s == Structure::Sentence ? "stroke-width=\"1\" stroke-dasharray=\"6,3\""
                                                       : "stroke-width=\"1\" stroke-dasharray=\"2,3\"";
        svg << "<line class=\"boundary-" << short_name(s) << "\" x1=\"" << fixed(x) << "\" y1=\""
            << fixed(kMargin) << "\" x2=\"" << fixed(x) << "\" y2=\"" << fixed(kHeight - kMargin)
            << "\" stroke=\"#888888\" " << style << "/>\n";
    }

    svg << "<path class=\"contour\" d=\"" << polyline(observed)
        << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
    for (std::size_t w = 0; w < waves.size(); ++w) {
        const auto& key = ranked[w].key;
        svg << "<path class=\"sinusoid\" data-structure=\"" << short_name(key.structure)
            << "\" data-k=\"" << key.order << "\" d=\"" << polyline(waves[w])
            << "\" fill=\"none\" stroke=\"" << sinusoid_colors[w % std::size(sinusoid_colors)]
            << "\" stroke-width=\"1\" opacity=\"0.8\"/>\n";
    }
    if (!fit.column_names.empty())
        svg << "<path class=\"predicted\" d=\"" << polyline(predicted)
            << "\" fill=\"none\" stroke=\"#ff7f0e\" stroke-width=\"1.5\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

void plot_contour(const DocumentContour& doc, const FitResult& fit, std::size_t top_n,
                  const std::filesystem::path& path) {
    write_text_file(path, render_contour_svg(doc, fit, top_n));
}

}  // namespace hs
