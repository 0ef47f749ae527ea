#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hs/contour.hpp"

namespace hs {

// Per-structure maximum harmonic order K.
class OrderSpec {
public:
    std::optional<std::size_t> get(Structure s) const noexcept {
        return orders_[static_cast<std::size_t>(s)];
    }
    // Throws InvalidArgument when k == 0.
    void set(Structure s, std::size_t k);

    bool operator==(const OrderSpec&) const = default;

private:
    std::array<std::optional<std::size_t>, 4> orders_{};
};

// K_s = longest unit of structure s over the training documents
// (for Document: the longest document). Throws EmptyTrainingSet.
OrderSpec orders_from_training(std::span<const DocumentContour> docs,
                               std::span<const Structure> structures);

// Which column blocks a model uses. The intercept is always present.
struct BlockSet {
    bool baseline = true;
    std::array<bool, 4> harmonic{};

    bool has(Structure s) const noexcept { return harmonic[static_cast<std::size_t>(s)]; }
    BlockSet& with(Structure s) {
        harmonic[static_cast<std::size_t>(s)] = true;
        return *this;
    }
    static BlockSet baseline_only() { return {}; }
    static BlockSet all_structures();
};

struct HarmonicColumns {
    std::vector<double> sin;
    std::vector<double> cos;
};

// sin/cos(2*pi*k*t / L_t) with t the token offset inside its unit of `s`.
// For Document, t is the global index and L_t the document length.
// The phase k*t is reduced modulo L_t in integers, so k == L_t yields
// exactly (0, 1).
HarmonicColumns harmonic_features(const DocumentContour& doc, Structure s, std::size_t k);

struct BaselineRow {
    double tok_len = 0.0;
    double prev_surprisal = 0.0;
    double rel_pos = 0.0;
    double bnd_w1 = 0.0;
    double bnd_w2 = 0.0;
    double bnd_w4 = 0.0;
};

// Boundary flags use the union of EDU, sentence and paragraph boundaries;
// token i is within window w of boundary b iff b-w <= i <= b+w-1.
std::vector<BaselineRow> baseline_features(const DocumentContour& doc);

inline constexpr std::array<std::string_view, 6> kBaselineColumns = {
    "tok_len", "prev_surprisal", "rel_pos", "bnd_w1", "bnd_w2", "bnd_w4"};
inline constexpr std::string_view kInterceptColumn = "intercept";

// Parsed form of the column-name grammar
//   intercept | tok_len | prev_surprisal | rel_pos | bnd_w{1|2|4} | {doc|edu|sent|par}_{sin|cos}_{k}
struct ColumnId {
    enum class Kind { Intercept, TokLen, PrevSurprisal, RelPos, Boundary, Harmonic };
    Kind kind = Kind::Intercept;
    int window = 0;                          // Boundary
    Structure structure = Structure::Document;  // Harmonic
    bool is_sin = true;                      // Harmonic
    std::size_t order = 0;                   // Harmonic

    std::string name() const;
    bool is_harmonic() const noexcept { return kind == Kind::Harmonic; }
};

// Throws InvalidArgument for names outside the grammar.
ColumnId parse_column_name(std::string_view name);
std::string harmonic_column_name(Structure s, bool is_sin, std::size_t k);

struct FeatureMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> names;

    Eigen::Index rows() const noexcept { return values.rows(); }
    Eigen::Index cols() const noexcept { return values.cols(); }
    std::optional<Eigen::Index> index_of(std::string_view name) const noexcept;
    // Column subset in the given order. Throws ColumnMismatch on unknown names.
    FeatureMatrix select(std::span<const std::string> wanted) const;
};

// Column names for a block set, in canonical order: intercept, baseline,
// then doc, edu, sent, par harmonics with sin_k, cos_k interleaved by k.
// Throws MissingOrder when a harmonic block has no order.
std::vector<std::string> column_names(const BlockSet& blocks, const OrderSpec& orders);

// Rows are concatenated in document order, then token order.
FeatureMatrix assemble_matrix(std::span<const DocumentContour> docs, const BlockSet& blocks,
                              const OrderSpec& orders);

// Builds an arbitrary set of named columns over the documents.
FeatureMatrix columns_by_name(std::span<const DocumentContour> docs,
                              std::span<const std::string> names);

Eigen::VectorXd surprisal_vector(std::span<const DocumentContour> docs);
std::size_t total_tokens(std::span<const DocumentContour> docs) noexcept;

}  // namespace hs
