#include "hs/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <set>

#include "hs/error.hpp"

namespace hs {

std::vector<ModelSpec> default_models() {
    std::vector<ModelSpec> out;
    out.push_back({"baseline", BlockSet::baseline_only()});
    for (Structure s : kAllStructures) out.push_back({std::string(short_name(s)), BlockSet{}.with(s)});
    out.push_back({"all", BlockSet::all_structures()});
    return out;
}

ModelSpec model_from_name(const std::string& name) {
    if (name == "baseline") return {name, BlockSet::baseline_only()};
    if (name == "all") return {name, BlockSet::all_structures()};
    if (const auto s = parse_structure(name))
        return {std::string(short_name(*s)), BlockSet{}.with(*s)};
    throw Error(ErrorKind::InvalidArgument, "unknown model '" + name + "'");
}

std::vector<double> CvReport::fold_mses(std::size_t model) const {
    std::vector<double> out;
    out.reserve(folds.size());
    for (const auto& f : folds) out.push_back(f.models.at(model).mse);
    return out;
}

std::size_t CvReport::model_index(const std::string& name) const {
    for (std::size_t i = 0; i < models.size(); ++i)
        if (models[i].name == name) return i;
    throw Error(ErrorKind::InvalidArgument, "report has no model '" + name + "'");
}

std::vector<std::size_t> assign_folds(std::size_t n_docs, std::size_t n_folds, std::uint64_t seed) {
    if (n_folds < 2) throw Error(ErrorKind::InvalidArgument, "need at least two folds");
    if (n_docs < n_folds)
        throw Error(ErrorKind::TooFewDocuments,
                    std::to_string(n_docs) + " documents for " + std::to_string(n_folds) + " folds");
    std::vector<std::size_t> order(n_docs);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = n_docs - 1; i > 0; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i);
        std::swap(order[i], order[pick(rng)]);
    }
    std::vector<std::size_t> fold(n_docs);
    for (std::size_t pos = 0; pos < n_docs; ++pos) fold[order[pos]] = pos % n_folds;
    return fold;
}

namespace {

std::vector<std::string> baseline_names() {
    std::vector<std::string> names{std::string(kInterceptColumn)};
    for (auto c : kBaselineColumns) names.emplace_back(c);
    return names;
}

FoldResult run_fold(std::span<const DocumentContour> docs, std::span<const ModelSpec> models,
                    const std::vector<std::size_t>& fold_of, std::size_t fold,
                    const CvOptions& options) {
    std::vector<DocumentContour> train;
    std::vector<DocumentContour> valid;
    FoldResult out;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (fold_of[d] == fold) {
            valid.push_back(docs[d]);
            out.validation_docs.push_back(docs[d].doc_id());
        } else {
            train.push_back(docs[d]);
        }
    }
    out.orders = orders_from_training(train, kAllStructures);

    BlockSet union_blocks;
    for (const auto& m : models) {
        union_blocks.baseline = union_blocks.baseline || m.blocks.baseline;
        for (Structure s : kAllStructures)
            if (m.blocks.has(s)) union_blocks.with(s);
    }
    union_blocks.baseline = true;  // ANOVA always needs the baseline columns
    const FeatureMatrix x_train = assemble_matrix(train, union_blocks, out.orders);
    const FeatureMatrix x_valid = assemble_matrix(valid, union_blocks, out.orders);
    const Eigen::VectorXd y_train = surprisal_vector(train);
    const Eigen::VectorXd y_valid = surprisal_vector(valid);
    out.train_tokens = static_cast<std::size_t>(y_train.size());
    out.validation_tokens = static_cast<std::size_t>(y_valid.size());

    const auto base_names = baseline_names();
    const FitResult baseline_ols = ols_fit(x_train.select(base_names), y_train);
    std::map<SinusoidKey, AnovaResult> anova_cache;
    auto anova_for = [&](SinusoidKey key) -> const AnovaResult& {
        auto it = anova_cache.find(key);
        if (it != anova_cache.end()) return it->second;
        auto names = base_names;
        names.push_back(harmonic_column_name(key.structure, true, key.order));
        names.push_back(harmonic_column_name(key.structure, false, key.order));
        const FitResult augmented = ols_fit(x_train.select(names), y_train);
        AnovaResult result = anova_order_test(baseline_ols, augmented, options.alpha);
        result.structure = key.structure;
        result.order = key.order;
        return anova_cache.emplace(key, result).first->second;
    };

    for (const auto& model : models) {
        const auto names = column_names(model.blocks, out.orders);
        const SelectionResult sel = select_and_refit(x_train.select(names), y_train, options.lambda);
        FoldModelResult res;
        res.selected = sel.selected;
        res.refit = sel.refit;
        res.lasso_converged = sel.lasso.converged;
        res.mse = mse(sel.refit, x_valid, y_valid);

        std::map<SinusoidKey, std::pair<double, double>> pairs;
        for (std::size_t j = 0; j < sel.refit.column_names.size(); ++j) {
            const ColumnId id = parse_column_name(sel.refit.column_names[j]);
            if (!id.is_harmonic()) continue;
            auto& pair = pairs[{id.structure, id.order}];
            (id.is_sin ? pair.first : pair.second) =
                sel.refit.coefficients[static_cast<Eigen::Index>(j)];
        }
        for (const auto& [key, coef] : pairs) {
            res.amplitudes[key] = amplitude(coef.first, coef.second);
            res.anova[key] = anova_for(key);
        }
        out.models.push_back(std::move(res));
    }
    return out;
}

}  // namespace

CvReport cross_validate(std::span<const DocumentContour> docs, std::span<const ModelSpec> models,
                        const CvOptions& options) {
    if (!(options.lambda >= 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda must be >= 0");
    if (!(options.alpha > 0.0 && options.alpha < 1.0))
        throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
    if (models.empty()) throw Error(ErrorKind::InvalidArgument, "no models to cross-validate");

    const auto fold_of = assign_folds(docs.size(), options.n_folds, options.seed);

    CvReport report;
    report.models.assign(models.begin(), models.end());
    for (std::size_t d = 0; d < docs.size(); ++d)
        report.fold_of_doc.emplace_back(docs[d].doc_id(), fold_of[d]);

    report.folds.resize(options.n_folds);
    const std::size_t threads = std::max<std::size_t>(1, options.threads);
    for (std::size_t first = 0; first < options.n_folds; first += threads) {
        const std::size_t last = std::min(options.n_folds, first + threads);
        if (threads == 1) {
            report.folds[first] = run_fold(docs, models, fold_of, first, options);
            continue;
        }
        std::vector<std::future<FoldResult>> pending;
        for (std::size_t f = first; f < last; ++f)
            pending.push_back(std::async(std::launch::async, run_fold, docs, models,
                                         std::cref(fold_of), f, std::cref(options)));
        for (std::size_t f = first; f < last; ++f) report.folds[f] = pending[f - first].get();
    }
    return report;
}

std::vector<SinusoidSummary> persistent_sinusoids(const CvReport& report, std::size_t model) {
    std::map<SinusoidKey, std::vector<double>> amps;
    std::map<SinusoidKey, std::size_t> significant;
    for (const auto& fold : report.folds) {
        const auto& res = fold.models.at(model);
        for (const auto& [key, a] : res.amplitudes) amps[key].push_back(a);
        for (const auto& [key, test] : res.anova)
            if (test.significant) ++significant[key];
    }
    std::vector<SinusoidSummary> out;
    for (const auto& [key, values] : amps) {
        if (values.size() != report.folds.size()) continue;
        SinusoidSummary s;
        s.key = key;
        s.selected_folds = values.size();
        s.significant_folds = significant[key];
        const double n = static_cast<double>(values.size());
        s.mean_amplitude = std::accumulate(values.begin(), values.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean_amplitude) * (v - s.mean_amplitude);
        s.sd_amplitude = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        out.push_back(s);
    }
    std::stable_sort(out.begin(), out.end(), [](const SinusoidSummary& a, const SinusoidSummary& b) {
        return a.mean_amplitude > b.mean_amplitude;
    });
    return out;
}

std::vector<ModelComparison> compare_models(const CvReport& report) {
    const std::size_t base = report.model_index("baseline");
    const auto base_mses = report.fold_mses(base);
    std::vector<ModelComparison> out;
    std::vector<double> raw;
    for (std::size_t m = 0; m < report.models.size(); ++m) {
        ModelComparison c;
        c.name = report.models[m].name;
        const auto mses = report.fold_mses(m);
        const double n = static_cast<double>(mses.size());
        c.mean_mse = std::accumulate(mses.begin(), mses.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : mses) ss += (v - c.mean_mse) * (v - c.mean_mse);
        c.sd_mse = mses.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        c.is_baseline = m == base;
        if (!c.is_baseline) {
            c.test = paired_t_one_sided(base_mses, mses);
            raw.push_back(c.test.one_sided_p);
        }
        out.push_back(std::move(c));
    }
    const auto adjusted = holm_correction(raw);
    std::size_t i = 0;
    for (auto& c : out)
        if (!c.is_baseline) c.test.holm_adjusted_p = adjusted[i++];
    return out;
}

}  // namespace hs
