#include "hs/error.hpp"

namespace hs {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::EmptyDocument: return "EmptyDocument";
        case ErrorKind::NonConsecutiveIndex: return "NonConsecutiveIndex";
        case ErrorKind::NonContiguousUnitIds: return "NonContiguousUnitIds";
        case ErrorKind::NestingViolation: return "NestingViolation";
        case ErrorKind::NegativeSurprisal: return "NegativeSurprisal";
        case ErrorKind::NegativeLength: return "NegativeLength";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::EmptyTrainingSet: return "EmptyTrainingSet";
        case ErrorKind::MissingOrder: return "MissingOrder";
        case ErrorKind::EmptyMatrix: return "EmptyMatrix";
        case ErrorKind::ColumnMismatch: return "ColumnMismatch";
        case ErrorKind::NonNested: return "NonNested";
        case ErrorKind::DegenerateDf: return "DegenerateDf";
        case ErrorKind::TooFewDocuments: return "TooFewDocuments";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::OutOfRangeP: return "OutOfRangeP";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& what, std::optional<std::size_t> line) {
    std::string out;
    if (line) out += "line " + std::to_string(*line) + ": ";
    out += std::string(to_string(kind)) + ": " + what;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& what, std::optional<std::size_t> line)
    : std::runtime_error(decorate(kind, what, line)), kind_(kind), line_(line), detail_(what) {}

bool Error::is_validation() const noexcept {
    switch (kind_) {
        case ErrorKind::EmptyDocument:
        case ErrorKind::NonConsecutiveIndex:
        case ErrorKind::NonContiguousUnitIds:
        case ErrorKind::NestingViolation:
        case ErrorKind::NegativeSurprisal:
        case ErrorKind::NegativeLength:
        case ErrorKind::ParseError:
        case ErrorKind::EmptyInput:
        case ErrorKind::InvalidSpec:
            return true;
        default:
            return false;
    }
}

}  // namespace hs
