#include "qbsd/error.hpp"

namespace qbsd {

const char *to_string(ErrorCode code) noexcept {
	switch (code) {
	case ErrorCode::GridMisaligned:
		return "GridMisaligned";
	case ErrorCode::InvalidGranularity:
		return "InvalidGranularity";
	case ErrorCode::InvalidScheme:
		return "InvalidScheme";
	case ErrorCode::InsufficientSpan:
		return "InsufficientSpan";
	case ErrorCode::EmptyInput:
		return "EmptyInput";
	case ErrorCode::InvalidConstant:
		return "InvalidConstant";
	case ErrorCode::InsufficientHistory:
		return "InsufficientHistory";
	case ErrorCode::StaleObservation:
		return "StaleObservation";
	case ErrorCode::InvalidConfig:
		return "InvalidConfig";
	case ErrorCode::InvalidWindow:
		return "InvalidWindow";
	case ErrorCode::SeriesTooShort:
		return "SeriesTooShort";
	case ErrorCode::DegenerateVariance:
		return "DegenerateVariance";
	case ErrorCode::TooFewPairs:
		return "TooFewPairs";
	case ErrorCode::SizeMismatch:
		return "SizeMismatch";
	case ErrorCode::ParseError:
		return "ParseError";
	case ErrorCode::DuplicateTimestamp:
		return "DuplicateTimestamp";
	case ErrorCode::IoError:
		return "IoError";
	}
	return "Unknown";
}

Error::Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {
}

ParseError::ParseError(std::size_t row, std::string column, const std::string &detail)
    : Error(ErrorCode::ParseError,
            "row " + std::to_string(row) + (column.empty() ? "" : ", column '" + column + "'") + ": " + detail),
      row_(row), column_(std::move(column)) {
}

} // namespace qbsd
