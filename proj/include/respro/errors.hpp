#pragma once

#include <stdexcept>
#include <string>

namespace respro {

/// Base class for all data/analysis errors raised by this library.
/// `code()` returns a stable machine-readable identifier; `what()` is the
/// human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// series
struct InvalidSeriesError : Error {
    explicit InvalidSeriesError(const std::string& msg) : Error("invalid_series", msg) {}
};
struct EmptyIntersectionError : Error {
    explicit EmptyIntersectionError(const std::string& msg) : Error("empty_intersection", msg) {}
};

// smoothing
struct TooShortError : Error {
    explicit TooShortError(const std::string& msg) : Error("too_short", msg) {}
};
struct DegenerateWindowError : Error {
    explicit DegenerateWindowError(const std::string& msg) : Error("degenerate_window", msg) {}
};

// resilience
struct NonPositiveBaselineError : Error {
    explicit NonPositiveBaselineError(const std::string& msg) : Error("non_positive_baseline", msg) {}
};
struct ZeroVarianceError : Error {
    explicit ZeroVarianceError(const std::string& msg) : Error("zero_variance", msg) {}
};
struct InsufficientOverlapError : Error {
    explicit InsufficientOverlapError(const std::string& msg) : Error("insufficient_overlap", msg) {}
};

// ingest / selection
struct MissingColumnError : Error {
    explicit MissingColumnError(const std::string& msg) : Error("missing_column", msg) {}
};
struct ParseError : Error {
    ParseError(std::size_t row, const std::string& column, const std::string& msg)
        : Error("parse_error", msg), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }          // 1-based file line
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::string column_;
};
struct DuplicateKeyError : Error {
    explicit DuplicateKeyError(const std::string& msg) : Error("duplicate_key", msg) {}
};
struct NonPositiveValueError : Error {
    explicit NonPositiveValueError(const std::string& msg) : Error("non_positive_value", msg) {}
};
struct NoMatchingRowsError : Error {
    explicit NoMatchingRowsError(const std::string& msg) : Error("no_matching_rows", msg) {}
};
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io_error", msg) {}
};

}  // namespace respro
