#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hs/analyses.hpp"
#include "hs/contour.hpp"

namespace hs {

// Contour files hold one JSON document per line:
//   {"doc_id": "...", "tokens": [{"i": 0, "text": "...", "surprisal": 1.5,
//                                 "n_chars": 3, "edu": 0, "sent": 0, "par": 0}, ...]}
// An optional string field "meta" carries free-text producer metadata.
// Unknown fields are ignored with a warning on `warnings`.

// Parses and validates one line. Errors carry `line_no`.
DocumentContour parse_contour_line(std::string_view line, std::size_t line_no,
                                   std::ostream* warnings = nullptr);
std::string to_contour_line(const DocumentContour& doc);

// Throws ParseError / validation kinds (with line numbers), EmptyInput, Io.
std::vector<DocumentContour> load_contours(const std::filesystem::path& path,
                                           std::ostream* warnings = nullptr);
std::vector<DocumentContour> read_contours(std::istream& in, std::ostream* warnings = nullptr);
void save_contours(const std::filesystem::path& path, const std::vector<DocumentContour>& docs);

// Synthetic generator config, e.g.
//   {"n_docs": 50, "seed": 7, "intercept": 5, "noise_sd": 1,
//    "edus_per_doc": [8, 12], "tokens_per_edu": [8, 20],
//    "edus_per_sentence": [1, 3], "sentences_per_paragraph": [1, 3],
//    "chars_per_token": [1, 12],
//    "harmonics": [{"structure": "edu", "k": 1, "sin": 0.36, "cos": 0.48}]}
// Missing keys keep their defaults. Throws InvalidSpec, Io.
SyntheticSpec parse_synthetic_spec(std::string_view json_text);
SyntheticSpec load_synthetic_spec(const std::filesystem::path& path);

}  // namespace hs
