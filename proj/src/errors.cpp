#include "pacomp/errors.hpp"

#include <sstream>

namespace pacomp
{

std::string_view to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::ZeroVarianceColumn: return "ZeroVarianceColumn";
    case ErrorKind::InvalidShape: return "InvalidShape";
    case ErrorKind::InvalidCorrelation: return "InvalidCorrelation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
    case ErrorKind::SingularAfterRegularization: return "SingularAfterRegularization";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::InfeasibleRho: return "InfeasibleRho";
    case ErrorKind::InvalidPopulationSpec: return "InvalidPopulationSpec";
    case ErrorKind::TargetUnreachable: return "TargetUnreachable";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::InvalidBudgetSpec: return "InvalidBudgetSpec";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::RaggedRows: return "RaggedRows";
    case ErrorKind::EmptyFile: return "EmptyFile";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::UsageError: return "UsageError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind)
{
}

std::string Error::to_line() const
{
    std::ostringstream out;
    out << "error kind=" << to_string(kind_);
    if (index)
        out << " index=" << *index;
    if (line)
        out << " line=" << *line;
    if (column)
        out << " column=" << *column;
    if (path)
        out << " path=\"" << *path << '"';
    out << " message=\"";
    for (char c : std::string_view(what()))
    {
        if (c == '"' || c == '\\')
            out << '\\';
        out << (c == '\n' ? ' ' : c);
    }
    out << '"';
    return out.str();
}

} // namespace pacomp
