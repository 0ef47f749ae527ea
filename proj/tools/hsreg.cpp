#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "hs/analyses.hpp"
#include "hs/contour_io.hpp"
#include "hs/cross_validation.hpp"
#include "hs/error.hpp"
#include "hs/features.hpp"
#include "hs/inference.hpp"
#include "hs/linear_fit.hpp"
#include "hs/pipeline.hpp"
#include "hs/plot.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

// Writes to `path`, or stdout when it is empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    hs::write_text_file(path, text);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hs::Error(hs::ErrorKind::Io, "cannot open '" + path.string() + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

hs::BlockSet blocks_for(const std::vector<std::string>& names) {
    hs::BlockSet blocks;
    for (const auto& name : names) {
        const auto spec = hs::model_from_name(name);
        for (hs::Structure s : hs::kAllStructures)
            if (spec.blocks.has(s)) blocks.with(s);
    }
    return blocks;
}

std::vector<hs::Structure> structures_in(const hs::BlockSet& blocks) {
    std::vector<hs::Structure> out;
    for (hs::Structure s : hs::kAllStructures)
        if (blocks.has(s)) out.push_back(s);
    return out;
}

const hs::DocumentContour& find_doc(const std::vector<hs::DocumentContour>& docs, const std::string& id) {
    if (id.empty()) return docs.front();
    for (const auto& d : docs)
        if (d.doc_id() == id) return d;
    throw hs::Error(hs::ErrorKind::InvalidArgument, "no document with id '" + id + "'");
}

// Overlays fields of a JSON config file onto `config`.
void apply_config_file(hs::PipelineConfig& config, const fs::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw hs::Error(hs::ErrorKind::InvalidArgument, "config: " + std::string(e.what()));
    }
    try {
        if (j.contains("input")) config.input = j.at("input").get<std::string>();
        if (j.contains("models")) config.models = j.at("models").get<std::vector<std::string>>();
        if (j.contains("lambda")) config.lambda = j.at("lambda").get<double>();
        if (j.contains("alpha")) config.alpha = j.at("alpha").get<double>();
        if (j.contains("n_folds")) config.n_folds = j.at("n_folds").get<std::size_t>();
        if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("output_dir")) config.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("threads")) config.threads = j.at("threads").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw hs::Error(hs::ErrorKind::InvalidArgument, "config: " + std::string(e.what()));
    }
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (width.size() <= c) width.push_back(0);
            width[c] = std::max(width[c], row[c].size());
        }
    std::ostringstream out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::string cell = row[c];
            if (c + 1 < row.size()) cell += std::string(width[c] - row[c].size() + 2, ' ');
            line += cell;
        }
        line.erase(line.find_last_not_of(' ') + 1);
        out << line << '\n';
    }
    return out.str();
}

std::string mean_sd(const std::string& mean, const std::string& sd) {
    return sd == "NA" ? mean : mean + " +- " + sd;
}

int cmd_validate(const std::string& input) {
    const auto docs = hs::load_contours(input, &std::cerr);
    std::cout << docs.size() << " documents, " << hs::total_tokens(docs) << " tokens\n";
    for (hs::Structure s : hs::kAllStructures) {
        std::size_t units = 0;
        for (const auto& d : docs) units += d.spans(s).size();
        std::cout << "  " << hs::short_name(s) << ": " << units << " units\n";
    }
    return 0;
}

int cmd_fit(const std::string& input, const std::vector<std::string>& structures, double lambda,
            const std::string& output) {
    const auto docs = hs::load_contours(input, &std::cerr);
    const auto blocks = blocks_for(structures);
    const auto orders = hs::orders_from_training(docs, structures_in(blocks));
    const auto x = hs::assemble_matrix(docs, blocks, orders);
    const auto y = hs::surprisal_vector(docs);
    const auto sel = hs::select_and_refit(x, y, lambda);

    std::ostringstream out;
    out << "column,lasso,refit\n";
    for (std::size_t j = 0; j < x.names.size(); ++j) {
        const auto refit = sel.refit.coefficient(x.names[j]);
        out << x.names[j] << ',' << hs::format_number(sel.lasso.coefficients[static_cast<Eigen::Index>(j)])
            << ',' << (refit ? hs::format_number(*refit) : std::string("NA")) << '\n';
    }
    emit(output, out.str());
    std::cerr << "n=" << sel.refit.n_rows << " rss=" << hs::format_number(sel.refit.rss)
              << " selected=" << sel.selected.size() << "/" << x.names.size()
              << (sel.lasso.converged ? "" : " (lasso did not converge)") << '\n';
    return 0;
}

int cmd_anova(const std::string& input, const std::vector<std::string>& structures, double alpha,
              const std::string& output) {
    const auto docs = hs::load_contours(input, &std::cerr);
    const auto blocks = blocks_for(structures);
    const auto orders = hs::orders_from_training(docs, structures_in(blocks));
    const auto y = hs::surprisal_vector(docs);
    const auto base_names = hs::column_names(hs::BlockSet::baseline_only(), orders);
    const auto base = hs::ols_fit(hs::columns_by_name(docs, base_names), y);

    std::ostringstream out;
    out << "structure,k,f_stat,df_num,df_den,p_value,significant\n";
    for (hs::Structure s : structures_in(blocks)) {
        for (std::size_t k = 1; k <= *orders.get(s); ++k) {
            auto names = base_names;
            names.push_back(hs::harmonic_column_name(s, true, k));
            names.push_back(hs::harmonic_column_name(s, false, k));
            const auto aug = hs::ols_fit(hs::columns_by_name(docs, names), y);
            const auto r = hs::anova_order_test(base, aug, alpha);
            out << hs::short_name(s) << ',' << k << ',' << hs::format_number(r.f_stat) << ',' << r.df_num
                << ',' << r.df_den << ',' << hs::format_number(r.p_value) << ','
                << (r.significant ? "*" : "") << '\n';
        }
    }
    emit(output, out.str());
    return 0;
}

int cmd_spectrum(const std::string& input, const std::string& doc_id, const std::string& output) {
    const auto docs = hs::load_contours(input, &std::cerr);
    const auto& doc = find_doc(docs, doc_id);
    const auto power = hs::spectrum(doc);
    std::ostringstream out;
    out << "bin,period,power\n";
    for (std::size_t k = 0; k < power.size(); ++k) {
        const double period = k == 0 ? std::nan("") : static_cast<double>(doc.size()) / static_cast<double>(k);
        out << k << ',' << hs::format_number(period) << ',' << hs::format_number(power[k]) << '\n';
    }
    emit(output, out.str());
    return 0;
}

int cmd_plot(const std::string& input, const std::vector<std::string>& structures, double lambda,
             const std::string& doc_id, std::size_t top_n, const std::string& output) {
    const auto docs = hs::load_contours(input, &std::cerr);
    const auto blocks = blocks_for(structures);
    const auto orders = hs::orders_from_training(docs, structures_in(blocks));
    const auto sel = hs::select_and_refit(hs::assemble_matrix(docs, blocks, orders), hs::surprisal_vector(docs),
                                          lambda);
    const auto& doc = find_doc(docs, doc_id);
    if (output.empty()) {
        std::cout << hs::render_contour_svg(doc, sel.refit, top_n);
    } else {
        hs::plot_contour(doc, sel.refit, top_n, output);
    }
    return 0;
}

int cmd_report(const fs::path& dir) {
    const auto mse = parse_csv(read_file(dir / "mse_table.csv"));
    std::vector<std::vector<std::string>> t1{{"model", "mse", "delta", "p", "p_holm", ""}};
    for (std::size_t r = 1; r < mse.size(); ++r) {
        const auto& c = mse[r];
        if (c.size() < 6) throw hs::Error(hs::ErrorKind::ParseError, "malformed mse_table.csv");
        t1.push_back({c[0], mean_sd(c[1], c[2]), c[3], c[4], c[5], c.size() > 6 ? c[6] : ""});
    }
    std::cout << "Validation MSE across folds\n" << render_table(t1) << '\n';

    const auto amp = parse_csv(read_file(dir / "amplitude_table.csv"));
    std::vector<std::vector<std::string>> t3{{"model", "structure", "k", "amplitude", "selected", "significant"}};
    for (std::size_t r = 1; r < amp.size(); ++r) {
        const auto& c = amp[r];
        if (c.size() < 7) throw hs::Error(hs::ErrorKind::ParseError, "malformed amplitude_table.csv");
        t3.push_back({c[0], c[1], c[2], mean_sd(c[3], c[4]), c[5], c[6]});
    }
    std::cout << "Sinusoids selected in every fold\n" << render_table(t3) << '\n';

    const auto bnd = parse_csv(read_file(dir / "boundary_table.csv"));
    std::vector<std::vector<std::string>> tb{{"side", "window", "paragraph", "sentence", "edu", "non-boundary"}};
    for (std::size_t r = 1; r < bnd.size(); ++r) {
        const auto& c = bnd[r];
        if (c.size() < 14) throw hs::Error(hs::ErrorKind::ParseError, "malformed boundary_table.csv");
        tb.push_back({c[0], c[1], mean_sd(c[2], c[3]), mean_sd(c[5], c[6]), mean_sd(c[8], c[9]),
                      mean_sd(c[11], c[12])});
    }
    std::cout << "Surprisal around unit boundaries\n" << render_table(tb);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic regression analysis of surprisal contours"};
    app.require_subcommand(1);

    std::string input, output, doc_id, config_path;
    std::vector<std::string> structures{"all"};
    hs::PipelineConfig config;
    std::size_t top_n = 3;
    std::uint64_t seed = 0;

    auto* validate = app.add_subcommand("validate", "Parse and validate a contour file");
    validate->add_option("--input", input, "Contour file (JSONL)")->required();

    auto* fit = app.add_subcommand("fit", "Lasso selection and OLS refit on the whole corpus");
    fit->add_option("--input", input, "Contour file (JSONL)")->required();
    fit->add_option("--structures", structures, "Structures to scale: doc, edu, sent, par, all")->delimiter(',');
    fit->add_option("--lambda", config.lambda, "L1 penalty")->check(CLI::NonNegativeNumber);
    fit->add_option("--output", output, "Coefficient CSV (default stdout)");

    auto* cv = app.add_subcommand("cv", "Cross-validated model comparison; writes all report tables");
    cv->add_option("--config", config_path, "JSON config; command-line flags take precedence");
    cv->add_option("--input", config.input, "Contour file (JSONL)");
    cv->add_option("--models", config.models, "Scaled models: doc, edu, sent, par, all")->delimiter(',');
    cv->add_option("--lambda", config.lambda, "L1 penalty");
    cv->add_option("--alpha", config.alpha, "Significance level");
    cv->add_option("--n-folds", config.n_folds, "Number of folds");
    cv->add_option("--seed", config.seed, "Fold assignment seed (HS_SEED overrides)");
    cv->add_option("--output-dir", config.output_dir, "Report directory");
    cv->add_option("--threads", config.threads, "Folds evaluated concurrently");

    auto* anova = app.add_subcommand("anova", "Per-order F tests against the baseline model");
    anova->add_option("--input", input, "Contour file (JSONL)")->required();
    anova->add_option("--structures", structures, "Structures to test")->delimiter(',');
    anova->add_option("--alpha", config.alpha, "Significance level");
    anova->add_option("--output", output, "CSV output (default stdout)");

    auto* boundaries = app.add_subcommand("boundaries", "Mean surprisal before and after unit boundaries");
    boundaries->add_option("--input", input, "Contour file (JSONL)")->required();
    boundaries->add_option("--output", output, "CSV output (default stdout)");

    auto* permute = app.add_subcommand("permute", "Shuffle surprisals within each document");
    permute->add_option("--input", input, "Contour file (JSONL)")->required();
    permute->add_option("--seed", seed, "Shuffle seed (HS_SEED overrides)");
    permute->add_option("--output", output, "Contour file to write")->required();

    auto* spectrum = app.add_subcommand("spectrum", "Periodogram of one document");
    spectrum->add_option("--input", input, "Contour file (JSONL)")->required();
    spectrum->add_option("--doc-id", doc_id, "Document id (default first)");
    spectrum->add_option("--output", output, "CSV output (default stdout)");

    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
    synth->add_option("--config", config_path, "Synthetic spec (JSON)")->required();
    synth->add_option("--seed", seed, "Overrides the spec seed (HS_SEED overrides both)");
    synth->add_option("--output", output, "Contour file to write")->required();

    auto* plot = app.add_subcommand("plot", "SVG plot of one contour with its fitted sinusoids");
    plot->add_option("--input", input, "Contour file (JSONL)")->required();
    plot->add_option("--structures", structures, "Structures to scale")->delimiter(',');
    plot->add_option("--lambda", config.lambda, "L1 penalty")->check(CLI::NonNegativeNumber);
    plot->add_option("--doc-id", doc_id, "Document id (default first)");
    plot->add_option("--top-n", top_n, "Sinusoids to draw");
    plot->add_option("--output", output, "SVG file (default stdout)");

    auto* report = app.add_subcommand("report", "Print the tables written by cv");
    report->add_option("--output-dir", config.output_dir, "Report directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(input);
        if (*fit) return cmd_fit(input, structures, config.lambda, output);
        if (*cv) {
            if (!config_path.empty()) {
                // Re-parse so command-line flags win over the file.
                hs::PipelineConfig from_file;
                apply_config_file(from_file, config_path);
                const auto flag = [&](const char* name) { return cv->count(name) > 0; };
                if (!flag("--input")) config.input = from_file.input;
                if (!flag("--models")) config.models = from_file.models;
                if (!flag("--lambda")) config.lambda = from_file.lambda;
                if (!flag("--alpha")) config.alpha = from_file.alpha;
                if (!flag("--n-folds")) config.n_folds = from_file.n_folds;
                if (!flag("--seed")) config.seed = from_file.seed;
                if (!flag("--output-dir")) config.output_dir = from_file.output_dir;
                if (!flag("--threads")) config.threads = from_file.threads;
            }
            if (config.input.empty()) throw hs::Error(hs::ErrorKind::InvalidArgument, "--input is required");
            hs::apply_seed_override(config);
            const auto result = hs::run_pipeline(config);
            std::cout << hs::mse_table_csv(result.comparisons, config.alpha);
            return 0;
        }
        if (*anova) return cmd_anova(input, structures, config.alpha, output);
        if (*boundaries) {
            const auto docs = hs::load_contours(input, &std::cerr);
            emit(output, hs::boundary_table_csv(hs::boundary_report(docs)));
            return 0;
        }
        if (*permute) {
            hs::PipelineConfig seeded;
            seeded.seed = seed;
            hs::apply_seed_override(seeded);
            hs::save_contours(output, hs::permute_surprisal(hs::load_contours(input, &std::cerr), seeded.seed));
            return 0;
        }
        if (*spectrum) return cmd_spectrum(input, doc_id, output);
        if (*synth) {
            auto spec = hs::load_synthetic_spec(config_path);
            hs::PipelineConfig seeded;
            seeded.seed = synth->count("--seed") ? seed : spec.seed;
            hs::apply_seed_override(seeded);
            spec.seed = seeded.seed;
            hs::save_contours(output, hs::generate_synthetic(spec));
            return 0;
        }
        if (*plot) return cmd_plot(input, structures, config.lambda, doc_id, top_n, output);
        if (*report) return cmd_report(config.output_dir);
    } catch (const hs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (e.kind() == hs::ErrorKind::InvalidArgument) return kExitUsage;
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}
