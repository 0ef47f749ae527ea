#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hs {

// Structural units a token can belong to. `Document` is the coarsest unit
// and always spans the whole contour.
enum class Structure { Document = 0, Edu = 1, Sentence = 2, Paragraph = 3 };

inline constexpr std::array<Structure, 4> kAllStructures = {
    Structure::Document, Structure::Edu, Structure::Sentence, Structure::Paragraph};

// Short column-name prefix: doc, edu, sent, par.
std::string_view short_name(Structure s) noexcept;
std::optional<Structure> parse_structure(std::string_view name) noexcept;

struct TokenRecord {
    std::size_t index = 0;
    std::string text;
    double surprisal = 0.0;
    long n_chars = 0;
    long edu_id = 0;
    long sent_id = 0;
    long par_id = 0;

    bool operator==(const TokenRecord&) const = default;
};

struct UnitSpan {
    Structure structure = Structure::Document;
    long unit_id = 0;
    std::size_t start = 0;
    std::size_t length = 0;

    std::size_t end() const noexcept { return start + length; }
    bool operator==(const UnitSpan&) const = default;
};

// A validated surprisal contour. Instances can only be obtained through
// `validate_document`, so every live object satisfies the unit invariants:
// consecutive token indices, non-negative finite surprisal, contiguous
// non-decreasing unit ids and EDU/sentence/paragraph nesting.
class DocumentContour {
public:
    const std::string& doc_id() const noexcept { return doc_id_; }
    // Free-text producer metadata (e.g. the surprisal log base). Not interpreted.
    const std::string& meta() const noexcept { return meta_; }
    std::span<const TokenRecord> tokens() const noexcept { return tokens_; }
    std::size_t size() const noexcept { return tokens_.size(); }

    std::span<const UnitSpan> spans(Structure s) const noexcept {
        return spans_[static_cast<std::size_t>(s)];
    }
    // Index into spans(s) of the unit containing `token`. Unchecked.
    std::size_t span_index(Structure s, std::size_t token) const noexcept {
        return span_of_token_[static_cast<std::size_t>(s)][token];
    }
    const UnitSpan& span_at(Structure s, std::size_t token) const noexcept {
        return spans_[static_cast<std::size_t>(s)][span_index(s, token)];
    }

    bool operator==(const DocumentContour&) const = default;

private:
    friend DocumentContour validate_document(std::string doc_id, std::vector<TokenRecord> tokens,
                                             std::string meta);

    std::string doc_id_;
    std::string meta_;
    std::vector<TokenRecord> tokens_;
    std::array<std::vector<UnitSpan>, 4> spans_;
    std::array<std::vector<std::size_t>, 4> span_of_token_;
};

// Checks all invariants and derives unit spans. Throws hs::Error with kind
// EmptyDocument, NonConsecutiveIndex, NegativeSurprisal, NegativeLength,
// NonContiguousUnitIds or NestingViolation.
DocumentContour validate_document(std::string doc_id, std::vector<TokenRecord> tokens,
                                  std::string meta = {});

// Re-validates a document with a replaced surprisal column (same length).
DocumentContour with_surprisals(const DocumentContour& doc, std::span<const double> surprisals);

// Token count of the unit of `s` containing `token` (L_t). For Document this
// is the document length. Throws IndexOutOfRange.
std::size_t unit_length_of(const DocumentContour& doc, Structure s, std::size_t token);

// Positions b (1 <= b < n) where the unit id of `s` changes between token
// b-1 and token b. Document start/end are never boundaries.
std::vector<std::size_t> boundary_positions(const DocumentContour& doc, Structure s);

}  // namespace hs
