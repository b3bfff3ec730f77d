/**
 * @file errors.hpp
 * @brief Error kinds raised by the composite library.
 *
 * Every failure is reported as a pacomp::Error carrying an ErrorKind, so the
 * CLI can emit one machine-parsable line per failure.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pacomp
{

enum class ErrorKind
{
    NonFiniteInput,
    ZeroVarianceColumn,
    InvalidShape,
    InvalidCorrelation,
    DimensionMismatch,
    DegenerateVariance,
    SingularAfterRegularization,
    InvalidWeights,
    InfeasibleRho,
    InvalidPopulationSpec,
    TargetUnreachable,
    NotPositiveDefinite,
    InvalidBudgetSpec,
    WindowTooShort,
    ParseError,
    RaggedRows,
    EmptyFile,
    IoError,
    UsageError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

    /// Column index for ZeroVarianceColumn, 0-based.
    std::optional<std::size_t> index;
    /// 1-based source position for ParseError / RaggedRows.
    std::optional<std::size_t> line;
    std::optional<std::size_t> column;
    std::optional<std::string> path;

    /// Single-line rendering: `error kind=<Kind> [index=..] [line=..] [column=..] [path=..] message="..."`.
    std::string to_line() const;

private:
    ErrorKind kind_;
};

} // namespace pacomp
