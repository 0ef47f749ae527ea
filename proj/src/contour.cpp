#include "hs/contour.hpp"

#include <algorithm>
#include <cmath>

#include "hs/error.hpp"

namespace hs {

std::string_view short_name(Structure s) noexcept {
    switch (s) {
        case Structure::Document: return "doc";
        case Structure::Edu: return "edu";
        case Structure::Sentence: return "sent";
        case Structure::Paragraph: return "par";
    }
    return "?";
}

std::optional<Structure> parse_structure(std::string_view name) noexcept {
    if (name == "doc" || name == "document") return Structure::Document;
    if (name == "edu") return Structure::Edu;
    if (name == "sent" || name == "sentence") return Structure::Sentence;
    if (name == "par" || name == "paragraph") return Structure::Paragraph;
    return std::nullopt;
}

namespace {

long unit_id(const TokenRecord& t, Structure s) {
    switch (s) {
        case Structure::Document: return 0;
        case Structure::Edu: return t.edu_id;
        case Structure::Sentence: return t.sent_id;
        case Structure::Paragraph: return t.par_id;
    }
    return 0;
}

std::string where(const std::string& doc_id, std::size_t token) {
    return "document '" + doc_id + "', token " + std::to_string(token);
}

}  // namespace

DocumentContour validate_document(std::string doc_id, std::vector<TokenRecord> tokens,
                                  std::string meta) {
    if (tokens.empty()) throw Error(ErrorKind::EmptyDocument, "document '" + doc_id + "' has no tokens");

    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const TokenRecord& t = tokens[i];
        if (t.index != i)
            throw Error(ErrorKind::NonConsecutiveIndex,
                        where(doc_id, i) + ": expected index " + std::to_string(i) + ", got " +
                            std::to_string(t.index));
        if (!std::isfinite(t.surprisal) || t.surprisal < 0.0)
            throw Error(ErrorKind::NegativeSurprisal,
                        where(doc_id, i) + ": surprisal must be finite and >= 0");
        if (t.n_chars < 0)
            throw Error(ErrorKind::NegativeLength, where(doc_id, i) + ": n_chars must be >= 0");
    }

    DocumentContour doc;
    const std::size_t n = tokens.size();
    for (Structure s : kAllStructures) {
        auto& spans = doc.spans_[static_cast<std::size_t>(s)];
        auto& owner = doc.span_of_token_[static_cast<std::size_t>(s)];
        owner.resize(n);
        long current = unit_id(tokens[0], s);
        if (current < 0)
            throw Error(ErrorKind::NonContiguousUnitIds,
                        where(doc_id, 0) + ": " + std::string(short_name(s)) + " id is negative");
        spans.push_back({s, current, 0, 0});
        for (std::size_t i = 0; i < n; ++i) {
            const long id = unit_id(tokens[i], s);
            if (id == current + 1) {
                spans.push_back({s, id, i, 0});
                current = id;
            } else if (id != current) {
                throw Error(ErrorKind::NonContiguousUnitIds,
                            where(doc_id, i) + ": " + std::string(short_name(s)) + " id " +
                                std::to_string(id) + " follows " + std::to_string(current));
            }
            ++spans.back().length;
            owner[i] = spans.size() - 1;
        }
    }

    // Every coarser boundary must also be a boundary of the next finer unit.
    constexpr std::array<std::pair<Structure, Structure>, 2> nesting = {
        std::pair{Structure::Sentence, Structure::Edu},
        std::pair{Structure::Paragraph, Structure::Sentence}};
    for (auto [coarse, fine] : nesting) {
        for (std::size_t i = 1; i < n; ++i) {
            const bool coarse_change = unit_id(tokens[i], coarse) != unit_id(tokens[i - 1], coarse);
            const bool fine_change = unit_id(tokens[i], fine) != unit_id(tokens[i - 1], fine);
            if (coarse_change && !fine_change)
                throw Error(ErrorKind::NestingViolation,
                            where(doc_id, i) + ": " + std::string(short_name(coarse)) +
                                " boundary is not a " + std::string(short_name(fine)) + " boundary");
        }
    }

    doc.doc_id_ = std::move(doc_id);
    doc.meta_ = std::move(meta);
    doc.tokens_ = std::move(tokens);
    return doc;
}

DocumentContour with_surprisals(const DocumentContour& doc, std::span<const double> surprisals) {
    if (surprisals.size() != doc.size())
        throw Error(ErrorKind::LengthMismatch, "surprisal vector length differs from document length");
    std::vector<TokenRecord> tokens(doc.tokens().begin(), doc.tokens().end());
    for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i].surprisal = surprisals[i];
    return validate_document(doc.doc_id(), std::move(tokens), doc.meta());
}

std::size_t unit_length_of(const DocumentContour& doc, Structure s, std::size_t token) {
    if (token >= doc.size())
        throw Error(ErrorKind::IndexOutOfRange,
                    "token " + std::to_string(token) + " outside document of " +
                        std::to_string(doc.size()) + " tokens");
    return doc.span_at(s, token).length;
}

std::vector<std::size_t> boundary_positions(const DocumentContour& doc, Structure s) {
    std::vector<std::size_t> out;
    const auto spans = doc.spans(s);
    out.reserve(spans.size());
    for (std::size_t j = 1; j < spans.size(); ++j) out.push_back(spans[j].start);
    return out;
}

}  // namespace hs
