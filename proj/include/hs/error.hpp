#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hs {

enum class ErrorKind {
    EmptyDocument,
    NonConsecutiveIndex,
    NonContiguousUnitIds,
    NestingViolation,
    NegativeSurprisal,
    NegativeLength,
    IndexOutOfRange,
    EmptyTrainingSet,
    MissingOrder,
    EmptyMatrix,
    ColumnMismatch,
    NonNested,
    DegenerateDf,
    TooFewDocuments,
    LengthMismatch,
    OutOfRangeP,
    InvalidArgument,
    InvalidSpec,
    ParseError,
    EmptyInput,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library; `kind()` is the stable contract,
// `line()` is set when the error is tied to a line of an input file.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what,
          std::optional<std::size_t> line = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::size_t> line() const noexcept { return line_; }
    // Message without the kind and line prefix.
    const std::string& detail() const noexcept { return detail_; }

    // True for data errors (bad contour content), as opposed to usage/IO errors.
    bool is_validation() const noexcept;

private:
    ErrorKind kind_;
    std::optional<std::size_t> line_;
    std::string detail_;
};

}  // namespace hs
