#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace affcurve {

enum class ErrorCode {
    NotSquare,
    AsymmetricEntry,
    NonPositiveEntry,
    InvalidEntry,
    FiniteDiagonal,
    NonPositiveThreshold,
    NegativeLength,
    AllInfinite,
    IndexOutOfRange,
    TooLargeForOracle,
    DegenerateCurve,
    InvalidCurve,
    InvalidPointSet,
    InvalidArgument,
    ParseError,
    SymmetrizationRejected,
    IoError,
};

constexpr std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::AsymmetricEntry: return "AsymmetricEntry";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::InvalidEntry: return "InvalidEntry";
    case ErrorCode::FiniteDiagonal: return "FiniteDiagonal";
    case ErrorCode::NonPositiveThreshold: return "NonPositiveThreshold";
    case ErrorCode::NegativeLength: return "NegativeLength";
    case ErrorCode::AllInfinite: return "AllInfinite";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::InvalidPointSet: return "InvalidPointSet";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SymmetrizationRejected: return "SymmetrizationRejected";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Single exception type for the library. The code identifies the failure;
/// row/col carry the offending matrix cell (or line/column for parse errors)
/// when there is one.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message,
          std::optional<std::size_t> row = std::nullopt,
          std::optional<std::size_t> col = std::nullopt)
        : std::runtime_error(format(code, message, row, col))
        , code_(code)
        , row_(row)
        , col_(col)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    std::optional<std::size_t> row() const noexcept { return row_; }
    std::optional<std::size_t> col() const noexcept { return col_; }

    /// True for failures reading, writing or parsing files.
    bool is_io() const noexcept
    {
        return code_ == ErrorCode::IoError || code_ == ErrorCode::ParseError;
    }

private:
    static std::string format(ErrorCode code, const std::string& message,
                              std::optional<std::size_t> row,
                              std::optional<std::size_t> col)
    {
        std::string out(to_string(code));
        if (row) {
            out += '(' + std::to_string(*row);
            if (col)
                out += ", " + std::to_string(*col);
            out += ')';
        }
        if (!message.empty())
            out += ": " + message;
        return out;
    }

    ErrorCode code_;
    std::optional<std::size_t> row_;
    std::optional<std::size_t> col_;
};

}  // namespace affcurve
