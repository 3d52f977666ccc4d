#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qbsd {

enum class ErrorCode {
	GridMisaligned,
	InvalidGranularity,
	InvalidScheme,
	InsufficientSpan,
	EmptyInput,
	InvalidConstant,
	InsufficientHistory,
	StaleObservation,
	InvalidConfig,
	InvalidWindow,
	SeriesTooShort,
	DegenerateVariance,
	TooFewPairs,
	SizeMismatch,
	ParseError,
	DuplicateTimestamp,
	IoError,
};

const char *to_string(ErrorCode code) noexcept;

/// Base of every error raised by the library. The code identifies the failure
/// class so callers (the CLI, the Python bindings) can map it without parsing
/// the message.
class Error : public std::runtime_error {
public:
	Error(ErrorCode code, const std::string &what);

	ErrorCode code() const noexcept {
		return code_;
	}

private:
	ErrorCode code_;
};

template <ErrorCode C>
class CodedError : public Error {
public:
	explicit CodedError(const std::string &what) : Error(C, what) {
	}
};

using GridMisaligned = CodedError<ErrorCode::GridMisaligned>;
using InvalidGranularity = CodedError<ErrorCode::InvalidGranularity>;
using InvalidScheme = CodedError<ErrorCode::InvalidScheme>;
using InsufficientSpan = CodedError<ErrorCode::InsufficientSpan>;
using EmptyInput = CodedError<ErrorCode::EmptyInput>;
using InvalidConstant = CodedError<ErrorCode::InvalidConstant>;
using InsufficientHistory = CodedError<ErrorCode::InsufficientHistory>;
using StaleObservation = CodedError<ErrorCode::StaleObservation>;
using InvalidConfig = CodedError<ErrorCode::InvalidConfig>;
using InvalidWindow = CodedError<ErrorCode::InvalidWindow>;
using SeriesTooShort = CodedError<ErrorCode::SeriesTooShort>;
using DegenerateVariance = CodedError<ErrorCode::DegenerateVariance>;
using TooFewPairs = CodedError<ErrorCode::TooFewPairs>;
using SizeMismatch = CodedError<ErrorCode::SizeMismatch>;
using DuplicateTimestamp = CodedError<ErrorCode::DuplicateTimestamp>;
using IoError = CodedError<ErrorCode::IoError>;

/// CSV/text parse failure. Row is 1-based and counts the header line; column
/// is the header name when known.
class ParseError : public Error {
public:
	ParseError(std::size_t row, std::string column, const std::string &detail);

	std::size_t row() const noexcept {
		return row_;
	}
	const std::string &column() const noexcept {
		return column_;
	}

private:
	std::size_t row_;
	std::string column_;
};

} // namespace qbsd
