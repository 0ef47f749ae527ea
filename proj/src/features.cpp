#include "hs/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "hs/error.hpp"

namespace hs {

void OrderSpec::set(Structure s, std::size_t k) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "harmonic order must be >= 1");
    orders_[static_cast<std::size_t>(s)] = k;
}

BlockSet BlockSet::all_structures() {
    BlockSet b;
    b.harmonic.fill(true);
    return b;
}

OrderSpec orders_from_training(std::span<const DocumentContour> docs,
                               std::span<const Structure> structures) {
    if (docs.empty()) throw Error(ErrorKind::EmptyTrainingSet, "no training documents");
    OrderSpec spec;
    for (Structure s : structures) {
        std::size_t longest = 0;
        for (const auto& doc : docs)
            for (const auto& span : doc.spans(s)) longest = std::max(longest, span.length);
        spec.set(s, longest);
    }
    return spec;
}

namespace {

// Fills sin/cos of 2*pi*k*t/L for every token. out_sin/out_cos may be null.
void fill_harmonic(const DocumentContour& doc, Structure s, std::size_t k, double* out_sin,
                   double* out_cos) {
    const std::size_t n = doc.size();
    for (std::size_t i = 0; i < n; ++i) {
        const UnitSpan& span = doc.span_at(s, i);
        const std::size_t length = span.length;
        const std::size_t offset = i - span.start;
        const std::size_t phase = static_cast<std::size_t>(
            (static_cast<unsigned long long>(k % length) * offset) % length);
        if (phase == 0) {
            if (out_sin) out_sin[i] = 0.0;
            if (out_cos) out_cos[i] = 1.0;
            continue;
        }
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase) /
                             static_cast<double>(length);
        if (out_sin) out_sin[i] = std::sin(angle);
        if (out_cos) out_cos[i] = std::cos(angle);
    }
}

// Distance d(i, b) such that token i lies in the w-window of boundary b iff d <= w.
std::vector<std::size_t> boundary_distance(const DocumentContour& doc) {
    const std::size_t n = doc.size();
    std::vector<bool> is_boundary(n + 1, false);
    for (Structure s : {Structure::Edu, Structure::Sentence, Structure::Paragraph})
        for (std::size_t b : boundary_positions(doc, s)) is_boundary[b] = true;

    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(n, inf);
    // Boundaries at or before i: d = i - b + 1.
    std::size_t last = inf;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_boundary[i]) last = i;
        if (last != inf) dist[i] = i - last + 1;
    }
    // Boundaries after i: d = b - i.
    std::size_t next = inf;
    for (std::size_t i = n; i-- > 0;) {
        if (is_boundary[i + 1] && i + 1 < n) next = i + 1;
        if (next != inf) dist[i] = std::min(dist[i], next - i);
    }
    return dist;
}

}  // namespace

HarmonicColumns harmonic_features(const DocumentContour& doc, Structure s, std::size_t k) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "harmonic order must be >= 1");
    HarmonicColumns out;
    out.sin.resize(doc.size());
    out.cos.resize(doc.size());
    fill_harmonic(doc, s, k, out.sin.data(), out.cos.data());
    return out;
}

std::vector<BaselineRow> baseline_features(const DocumentContour& doc) {
    const std::size_t n = doc.size();
    const auto tokens = doc.tokens();
    const auto dist = boundary_distance(doc);
    std::vector<BaselineRow> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        BaselineRow& r = rows[i];
        r.tok_len = static_cast<double>(tokens[i].n_chars);
        r.prev_surprisal = i == 0 ? 0.0 : tokens[i - 1].surprisal;
        r.rel_pos = static_cast<double>(i) / static_cast<double>(n);
        r.bnd_w1 = dist[i] <= 1 ? 1.0 : 0.0;
        r.bnd_w2 = dist[i] <= 2 ? 1.0 : 0.0;
        r.bnd_w4 = dist[i] <= 4 ? 1.0 : 0.0;
    }
    return rows;
}

std::string harmonic_column_name(Structure s, bool is_sin, std::size_t k) {
    std::string out(short_name(s));
    out += is_sin ? "_sin_" : "_cos_";
    out += std::to_string(k);
    return out;
}

std::string ColumnId::name() const {
    switch (kind) {
        case Kind::Intercept: return std::string(kInterceptColumn);
        case Kind::TokLen: return "tok_len";
        case Kind::PrevSurprisal: return "prev_surprisal";
        case Kind::RelPos: return "rel_pos";
        case Kind::Boundary: return "bnd_w" + std::to_string(window);
        case Kind::Harmonic: return harmonic_column_name(structure, is_sin, order);
    }
    return {};
}

ColumnId parse_column_name(std::string_view name) {
    ColumnId id;
    if (name == kInterceptColumn) return id;
    if (name == "tok_len") return id.kind = ColumnId::Kind::TokLen, id;
    if (name == "prev_surprisal") return id.kind = ColumnId::Kind::PrevSurprisal, id;
    if (name == "rel_pos") return id.kind = ColumnId::Kind::RelPos, id;
    if (name == "bnd_w1" || name == "bnd_w2" || name == "bnd_w4") {
        id.kind = ColumnId::Kind::Boundary;
        id.window = name.back() - '0';
        return id;
    }
    const auto bad = [&] {
        return Error(ErrorKind::InvalidArgument, "unknown column name '" + std::string(name) + "'");
    };
    const auto first = name.find('_');
    if (first == std::string_view::npos) throw bad();
    const auto structure = parse_structure(name.substr(0, first));
    if (!structure || name.substr(0, first) != short_name(*structure)) throw bad();
    const auto rest = name.substr(first + 1);
    if (rest.size() < 5 || rest[3] != '_') throw bad();
    const auto fn = rest.substr(0, 3);
    if (fn != "sin" && fn != "cos") throw bad();
    const auto digits = rest.substr(4);
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || k == 0 || digits[0] == '0')
        throw bad();
    id.kind = ColumnId::Kind::Harmonic;
    id.structure = *structure;
    id.is_sin = fn == "sin";
    id.order = k;
    return id;
}

std::optional<Eigen::Index> FeatureMatrix::index_of(std::string_view name) const noexcept {
    for (std::size_t j = 0; j < names.size(); ++j)
        if (names[j] == name) return static_cast<Eigen::Index>(j);
    return std::nullopt;
}

FeatureMatrix FeatureMatrix::select(std::span<const std::string> wanted) const {
    FeatureMatrix out;
    out.values.resize(values.rows(), static_cast<Eigen::Index>(wanted.size()));
    out.names.assign(wanted.begin(), wanted.end());
    for (std::size_t j = 0; j < wanted.size(); ++j) {
        const auto src = index_of(wanted[j]);
        if (!src) throw Error(ErrorKind::ColumnMismatch, "matrix has no column '" + wanted[j] + "'");
        out.values.col(static_cast<Eigen::Index>(j)) = values.col(*src);
    }
    return out;
}

std::vector<std::string> column_names(const BlockSet& blocks, const OrderSpec& orders) {
    std::vector<std::string> names{std::string(kInterceptColumn)};
    if (blocks.baseline)
        for (auto c : kBaselineColumns) names.emplace_back(c);
    for (Structure s : kAllStructures) {
        if (!blocks.has(s)) continue;
        const auto k_max = orders.get(s);
        if (!k_max)
            throw Error(ErrorKind::MissingOrder,
                        "no harmonic order for structure '" + std::string(short_name(s)) + "'");
        for (std::size_t k = 1; k <= *k_max; ++k) {
            names.push_back(harmonic_column_name(s, true, k));
            names.push_back(harmonic_column_name(s, false, k));
        }
    }
    return names;
}

std::size_t total_tokens(std::span<const DocumentContour> docs) noexcept {
    std::size_t n = 0;
    for (const auto& d : docs) n += d.size();
    return n;
}

FeatureMatrix columns_by_name(std::span<const DocumentContour> docs,
                              std::span<const std::string> names) {
    std::vector<ColumnId> ids;
    ids.reserve(names.size());
    for (const auto& name : names) ids.push_back(parse_column_name(name));

    FeatureMatrix out;
    out.names.assign(names.begin(), names.end());
    out.values.resize(static_cast<Eigen::Index>(total_tokens(docs)),
                      static_cast<Eigen::Index>(names.size()));

    std::vector<double> scratch;
    Eigen::Index row0 = 0;
    for (const auto& doc : docs) {
        const auto n = static_cast<Eigen::Index>(doc.size());
        const auto base = baseline_features(doc);
        scratch.resize(doc.size());
        for (std::size_t j = 0; j < ids.size(); ++j) {
            auto col = out.values.col(static_cast<Eigen::Index>(j)).segment(row0, n);
            const ColumnId& id = ids[j];
            switch (id.kind) {
                case ColumnId::Kind::Intercept: col.setOnes(); break;
                case ColumnId::Kind::TokLen:
                    for (Eigen::Index i = 0; i < n; ++i) col[i] = base[i].tok_len;
                    break;
                case ColumnId::Kind::PrevSurprisal:
                    for (Eigen::Index i = 0; i < n; ++i) col[i] = base[i].prev_surprisal;
                    break;
                case ColumnId::Kind::RelPos:
                    for (Eigen::Index i = 0; i < n; ++i) col[i] = base[i].rel_pos;
                    break;
                case ColumnId::Kind::Boundary:
                    for (Eigen::Index i = 0; i < n; ++i)
                        col[i] = id.window == 1 ? base[i].bnd_w1
                                 : id.window == 2 ? base[i].bnd_w2
                                                  : base[i].bnd_w4;
                    break;
                case ColumnId::Kind::Harmonic:
                    fill_harmonic(doc, id.structure, id.order, id.is_sin ? scratch.data() : nullptr,
                                  id.is_sin ? nullptr : scratch.data());
                    for (Eigen::Index i = 0; i < n; ++i) col[i] = scratch[i];
                    break;
            }
        }
        row0 += n;
    }
    return out;
}

FeatureMatrix assemble_matrix(std::span<const DocumentContour> docs, const BlockSet& blocks,
                              const OrderSpec& orders) {
    const auto names = column_names(blocks, orders);
    return columns_by_name(docs, names);
}

Eigen::VectorXd surprisal_vector(std::span<const DocumentContour> docs) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(total_tokens(docs)));
    Eigen::Index row = 0;
    for (const auto& doc : docs)
        for (const auto& t : doc.tokens()) y[row++] = t.surprisal;
    return y;
}

}  // namespace hs
