#include "hs/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "hs/contour_io.hpp"
#include "hs/error.hpp"

namespace hs {

void PipelineConfig::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw Error(ErrorKind::InvalidArgument, "lambda must be finite and >= 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
    if (n_folds < 2) throw Error(ErrorKind::InvalidArgument, "n_folds must be >= 2");
    (void)model_specs();
}

std::vector<ModelSpec> PipelineConfig::model_specs() const {
    std::vector<ModelSpec> specs{model_from_name("baseline")};
    for (const auto& name : models) {
        ModelSpec spec = model_from_name(name);
        bool seen = false;
        for (const auto& s : specs) seen = seen || s.name == spec.name;
        if (!seen) specs.push_back(std::move(spec));
    }
    return specs;
}

void apply_seed_override(PipelineConfig& config) {
    const char* env = std::getenv("HS_SEED");
    if (!env || !*env) return;
    std::uint64_t seed = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, seed);
    if (ec != std::errc{} || ptr != end)
        throw Error(ErrorKind::InvalidArgument, std::string("HS_SEED is not an integer: ") + env);
    config.seed = seed;
}

PipelineReport analyze(const std::vector<DocumentContour>& docs, const PipelineConfig& config) {
    config.validate();
    CvOptions options;
    options.n_folds = config.n_folds;
    options.seed = config.seed;
    options.lambda = config.lambda;
    options.alpha = config.alpha;
    options.threads = config.threads;
    const auto models = config.model_specs();

    PipelineReport report;
    report.cv = cross_validate(docs, models, options);
    report.comparisons = compare_models(report.cv);
    report.boundaries = boundary_report(docs);
    return report;
}

std::string format_number(double value) {
    if (std::isnan(value)) return "NA";
    if (value == 0.0) return "0";  // folds -0 into 0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string mse_table_csv(const std::vector<ModelComparison>& comparisons, double alpha) {
    std::ostringstream out;
    out << kMseTableHeader << '\n';
    double base_mean = 0.0;
    for (const auto& c : comparisons)
        if (c.is_baseline) base_mean = c.mean_mse;
    for (const auto& c : comparisons) {
        out << c.name << ',' << format_number(c.mean_mse) << ',' << format_number(c.sd_mse) << ','
            << format_number(base_mean - c.mean_mse) << ',';
        if (c.is_baseline) {
            out << "NA,NA,\n";
        } else {
            out << format_number(c.test.one_sided_p) << ',' << format_number(c.test.holm_adjusted_p)
                << ',' << (c.test.holm_adjusted_p < alpha ? "*" : "") << '\n';
        }
    }
    return out.str();
}

std::string amplitude_table_csv(const CvReport& report) {
    std::ostringstream out;
    out << kAmplitudeTableHeader << '\n';
    for (std::size_t m = 0; m < report.models.size(); ++m) {
        const auto rows = persistent_sinusoids(report, m);
        for (Structure s : kAllStructures) {
            for (const auto& row : rows) {
                if (row.key.structure != s) continue;
                out << report.models[m].name << ',' << short_name(s) << ',' << row.key.order << ','
                    << format_number(row.mean_amplitude) << ',' << format_number(row.sd_amplitude)
                    << ',' << row.selected_folds << ',' << row.significant_folds << '\n';
            }
        }
    }
    return out.str();
}

std::string boundary_table_csv(const std::vector<BoundaryStats>& stats) {
    const auto find = [&](Structure s, std::size_t w) -> const BoundaryStats& {
        for (const auto& b : stats)
            if (b.structure == s && b.window == w) return b;
        throw Error(ErrorKind::InvalidArgument, "boundary report is missing a cell");
    };
    const auto cell = [](const CellStats& c) {
        return format_number(c.mean) + ',' + format_number(c.sd) + ',' + std::to_string(c.count);
    };
    std::ostringstream out;
    out << kBoundaryTableHeader << '\n';
    for (const char* side : {"before", "after"}) {
        const bool before = std::string_view(side) == "before";
        for (std::size_t w : {1u, 2u}) {
            out << side << ',' << w;
            for (Structure s : {Structure::Paragraph, Structure::Sentence, Structure::Edu}) {
                const auto& b = find(s, w);
                out << ',' << cell(before ? b.before : b.after);
            }
            // EDU boundaries include every sentence and paragraph boundary, so
            // the EDU non-boundary cell is "away from any boundary".
            out << ',' << cell(find(Structure::Edu, w).non_boundary) << '\n';
        }
    }
    return out.str();
}

std::string run_meta_json(const PipelineConfig& config, const CvReport& report,
                          const std::vector<DocumentContour>& docs) {
    nlohmann::ordered_json meta;
    meta["seed"] = config.seed;
    meta["lambda"] = config.lambda;
    meta["alpha"] = config.alpha;
    meta["n_folds"] = config.n_folds;
    meta["models"] = nlohmann::ordered_json::array();
    for (const auto& m : report.models) meta["models"].push_back(m.name);
    meta["n_docs"] = docs.size();
    meta["n_tokens"] = total_tokens(docs);
    meta["folds"] = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < report.folds.size(); ++f) {
        const auto& fold = report.folds[f];
        nlohmann::ordered_json entry;
        entry["fold"] = f;
        entry["validation_docs"] = fold.validation_docs;
        entry["train_tokens"] = fold.train_tokens;
        entry["validation_tokens"] = fold.validation_tokens;
        nlohmann::ordered_json orders;
        for (Structure s : kAllStructures)
            if (const auto k = fold.orders.get(s)) orders[std::string(short_name(s))] = *k;
        entry["orders"] = orders;
        nlohmann::ordered_json converged;
        for (std::size_t m = 0; m < report.models.size(); ++m)
            converged[report.models[m].name] = fold.models[m].lasso_converged;
        entry["lasso_converged"] = converged;
        meta["folds"].push_back(std::move(entry));
    }
    return meta.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

void write_reports(const PipelineReport& report, const PipelineConfig& config,
                   const std::vector<DocumentContour>& docs) {
    std::filesystem::create_directories(config.output_dir);
    write_text_file(config.output_dir / "mse_table.csv",
                    mse_table_csv(report.comparisons, config.alpha));
    write_text_file(config.output_dir / "amplitude_table.csv", amplitude_table_csv(report.cv));
    write_text_file(config.output_dir / "boundary_table.csv", boundary_table_csv(report.boundaries));
    write_text_file(config.output_dir / "run_meta.json", run_meta_json(config, report.cv, docs));
}

PipelineReport run_pipeline(const PipelineConfig& config) {
    config.validate();
    const auto docs = load_contours(config.input, &std::clog);
    PipelineReport report = analyze(docs, config);
    write_reports(report, config, docs);
    return report;
}

}  // namespace hs
