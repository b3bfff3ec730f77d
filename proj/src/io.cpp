/**
 * @file io.cpp
 * @brief Indicator parsing and report emission.
 */

#include "pacomp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pacomp/errors.hpp"

namespace pacomp
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

Error parse_error(std::size_t line, std::size_t column, const std::string& message)
{
    Error err(ErrorKind::ParseError, message);
    err.line = line;
    err.column = column;
    return err;
}

std::vector<std::string_view> split(std::string_view line, char delimiter)
{
    std::vector<std::string_view> fields;
    if (delimiter == ' ')
    {
        std::size_t pos = 0;
        while ((pos = line.find_first_not_of(" \t", pos)) != std::string_view::npos)
        {
            const auto end = line.find_first_of(" \t", pos);
            fields.push_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
            pos = end;
        }
        return fields;
    }
    std::size_t start = 0;
    while (true)
    {
        const auto pos = line.find(delimiter, start);
        fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return fields;
}

/// Left-justified fixed-width columns joined by a single space; trailing blanks trimmed.
std::string fixed_width_line(const std::vector<std::string>& fields, std::size_t width)
{
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i)
    {
        if (i > 0)
            line += ' ';
        line += fields[i];
        if (fields[i].size() < width)
            line.append(width - fields[i].size(), ' ');
    }
    line.erase(line.find_last_not_of(' ') + 1);
    return line + '\n';
}

std::string in_quotes(std::string_view s)
{
    return '"' + std::string(s) + '"';
}

nlohmann::json to_json(const Vector& v)
{
    return std::vector<double>(v.data(), v.data() + v.size());
}

nlohmann::json to_json(const Matrix& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        rows.push_back(to_json(Vector(m.row(i).transpose())));
    }
    return rows;
}

nlohmann::json to_json(const CompositeResult& result)
{
    nlohmann::json j = {
        {"kind", to_string(result.kind)},
        {"regularized", result.regularized},
        {"combination_weights", to_json(result.combination_weights)},
        {"indicator_correlations", to_json(result.indicator_correlations)},
        {"variance_contributions", to_json(result.variance_contributions)},
        {"relative_contributions", to_json(result.relative_contributions)},
    };
    if (result.scores.size() > 0)
        j["scores"] = to_json(result.scores);
    return j;
}

nlohmann::json to_json(const WindowEvaluation& w)
{
    return {
        {"cases", w.cases},
        {"realized_correlations", to_json(w.realized_correlations)},
        {"realized_contributions", to_json(w.realized_contributions)},
        {"realized_relative", to_json(w.realized_relative)},
        {"max_abs_relative_gap", w.max_abs_relative_gap},
    };
}

std::string joined(const Vector& v, char delimiter)
{
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        if (i > 0)
            out += delimiter;
        out += exact(v(i));
    }
    return out;
}

} // namespace

std::string fixed(double value, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos)
        s.erase(0, 1);
    return s;
}

std::string exact(double value)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

IndicatorMatrix parse_indicators(std::string_view text, const ReadOptions& options)
{
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool header_pending = options.has_header;

    while (start < text.size())
    {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        const std::string_view line = trim(text.substr(start, end - start));
        start = end + 1;
        ++line_no;

        if (line.empty())
            continue;
        if (header_pending)
        {
            header_pending = false;
            continue;
        }

        const auto fields = split(line, options.delimiter);
        std::vector<double> row;
        row.reserve(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c)
        {
            const std::string_view field = fields[c];
            double value = 0.0;
            const char* first = field.data();
            const char* last = field.data() + field.size();
            if (!field.empty() && *first == '+')
                ++first;
            const auto [ptr, ec] = std::from_chars(first, last, value);
            if (field.empty() || ec != std::errc() || ptr != last)
            {
                throw parse_error(line_no, c + 1, "cannot parse '" + std::string(field) + "' as a number");
            }
            row.push_back(value);
        }

        if (!rows.empty() && row.size() != rows.front().size())
        {
            Error err(ErrorKind::RaggedRows, "line " + std::to_string(line_no) + " has " +
                                                 std::to_string(row.size()) + " fields, expected " +
                                                 std::to_string(rows.front().size()));
            err.line = line_no;
            throw err;
        }
        rows.push_back(std::move(row));
    }

    if (rows.empty())
    {
        throw Error(ErrorKind::EmptyFile, "no data rows");
    }

    Matrix values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        for (std::size_t j = 0; j < rows[i].size(); ++j)
        {
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return IndicatorMatrix(std::move(values));
}

IndicatorMatrix read_indicators(const std::filesystem::path& path, const ReadOptions& options)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        Error err(ErrorKind::IoError, "cannot open input file");
        err.path = path.string();
        throw err;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try
    {
        return parse_indicators(buffer.str(), options);
    }
    catch (Error& err)
    {
        err.path = path.string();
        throw;
    }
}

void write_text(const std::filesystem::path& path, std::string_view content)
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (ec || !out)
    {
        Error err(ErrorKind::IoError, "cannot write output file");
        err.path = path.string();
        throw err;
    }
}

Analysis analyze(const IndicatorMatrix& x, const WeightSpec& weights, const RegularizationPolicy& policy)
{
    if (weights.size() != x.indicators())
    {
        throw Error(ErrorKind::DimensionMismatch, std::to_string(weights.size()) + " weights for " +
                                                      std::to_string(x.indicators()) + " indicators");
    }
    const StandardizedMatrix z = standardize(x);
    CorrelationMatrix r = sample_correlation(z);
    CompositeResult analytic = analytic_composite(z, r, weights);
    CompositeResult purely = purely_analytic_composite(z, r, weights, policy);
    return Analysis{x.cases(), std::move(r), weights, std::move(analytic), std::move(purely)};
}

std::string report_stem(Eigen::Index p, Eigen::Index n)
{
    return "purely_analytic_composites_p=" + std::to_string(p) + "_n=" + std::to_string(n);
}

std::string format_results(const Analysis& analysis, const ReportOptions& options)
{
    constexpr std::size_t kMessageWidth = 100;
    constexpr std::size_t kColumnWidth = 22;
    const int digits = options.report_digits;

    std::string out;
    out += "# " + std::string(kVersion) + "\n";
    out += std::string("# regularized=") + (analysis.purely_analytic.regularized ? "true" : "false") + "\n";
    const std::string message = "Compare analytic composites with purely analytic composites for n = " +
                                std::to_string(analysis.cases) + "  and p = " +
                                std::to_string(analysis.correlation.size()) + " :";
    out += fixed_width_line(std::vector<std::string>{in_quotes(message)}, kMessageWidth);
    out += fixed_width_line({in_quotes("Composite"), in_quotes("cor. with comp."), in_quotes("var. within comp."),
                             in_quotes("relative var. within comp.")},
                            kColumnWidth);
    for (const CompositeResult* result : {&analysis.analytic, &analysis.purely_analytic})
    {
        for (const auto& row : contribution_report(*result))
        {
            out += fixed_width_line({in_quotes(to_string(result->kind)), fixed(row.correlation, digits),
                                     fixed(row.contribution, digits), fixed(row.relative_contribution, digits)},
                                    kColumnWidth);
        }
    }
    return out;
}

std::string format_correlations(const Analysis& analysis, const ReportOptions& options)
{
    constexpr std::size_t kColumnWidth = 9;
    const Matrix& r = analysis.correlation.values();
    std::string out;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
    {
        std::vector<std::string> fields;
        for (Eigen::Index j = 0; j < r.cols(); ++j)
            fields.push_back(fixed(r(i, j), options.report_digits));
        out += fixed_width_line(fields, kColumnWidth);
    }
    return out;
}

std::string format_scores(const Analysis& analysis, const ReportOptions& options)
{
    const std::string analytic_header = in_quotes(to_string(CompositeKind::Analytic));
    const std::string purely_header = in_quotes(to_string(CompositeKind::PurelyAnalytic));
    const std::size_t width = std::max<std::size_t>(10, analytic_header.size());

    std::string out = fixed_width_line({analytic_header, purely_header}, width);
    const Vector& a = analysis.analytic.scores;
    const Vector& b = analysis.purely_analytic.scores;
    for (Eigen::Index i = 0; i < a.size(); ++i)
    {
        out += fixed_width_line({fixed(a(i), options.score_digits), fixed(b(i), options.score_digits)}, width);
    }
    return out;
}

ReportPaths write_reports(const Analysis& analysis, const std::filesystem::path& output_dir,
                          const ReportOptions& options)
{
    const std::string stem = report_stem(analysis.correlation.size(), analysis.cases);
    ReportPaths paths{output_dir / (stem + "_results.txt"),
                      output_dir / (stem + "_indicator_inter-correlations.txt"),
                      output_dir / (stem + "_composite_scores.txt")};
    write_text(paths.results, format_results(analysis, options));
    write_text(paths.correlations, format_correlations(analysis, options));
    write_text(paths.scores, format_scores(analysis, options));
    return paths;
}

nlohmann::json to_json(const Analysis& analysis)
{
    return {
        {"version", kVersion},
        {"n", analysis.cases},
        {"p", analysis.correlation.size()},
        {"variance_targets", to_json(analysis.weights.variance_targets())},
        {"weights", to_json(analysis.weights.weights())},
        {"regularized", analysis.purely_analytic.regularized},
        {"correlation", to_json(analysis.correlation.values())},
        {"analytic", to_json(analysis.analytic)},
        {"purely_analytic", to_json(analysis.purely_analytic)},
    };
}

nlohmann::json to_json(const SweepResult& sweep)
{
    nlohmann::json populations = nlohmann::json::array();
    for (const auto& pop : sweep.populations)
    {
        populations.push_back({
            {"population_index", pop.index},
            {"seed", pop.spec.seed},
            {"mean_rho", pop.spec.mean_rho},
            {"target_sd_rho", pop.spec.target_sd_rho},
            {"achieved_sd_rho", pop.achieved.sd},
            {"achieved_mean_rho", pop.achieved.mean},
            {"min_rho", pop.achieved.min},
            {"max_rho", pop.achieved.max},
            {"correlation", to_json(pop.correlation)},
            {"unit", {{"analytic", to_json(pop.analytic_unit)}, {"purely_analytic", to_json(pop.purely_analytic_unit)}}},
            {"specified",
             {{"analytic", to_json(pop.analytic_weighted)}, {"purely_analytic", to_json(pop.purely_analytic_weighted)}}},
        });
    }
    return {
        {"version", kVersion},
        {"generator", sweep.generator},
        {"specified_weights", to_json(sweep.spec_weights.weights())},
        {"populations", populations},
    };
}

nlohmann::json to_json(const BudgetReport& report)
{
    nlohmann::json j = {
        {"version", kVersion},
        {"asset_labels", report.asset_labels},
        {"effective_weights", to_json(report.effective_weights)},
        {"target_relative", to_json(report.target_relative)},
        {"regularized", report.regularized},
        {"in_sample", to_json(report.in_sample)},
    };
    j["holdout"] = report.holdout ? to_json(*report.holdout) : nlohmann::json(nullptr);
    return j;
}

std::string format_sweep_table(const SweepResult& sweep, char delimiter)
{
    std::ostringstream out;
    out << "# " << kVersion << '\n';
    out << "# generator=" << sweep.generator << '\n';
    if (!sweep.populations.empty())
    {
        const auto& first = sweep.populations.front().spec;
        out << "# seed=" << first.seed << '\n';
        out << "# mean_rho=" << exact(first.mean_rho) << '\n';
        out << "# p=" << first.p << '\n';
    }
    out << "# specified_weights=" << joined(sweep.spec_weights.weights(), ' ') << '\n';
    out << "# assumption: intermediate sd(rho) targets and mean_rho are defaults, not recovered values\n";

    const char d = delimiter;
    out << "population_index" << d << "target_sd_rho" << d << "achieved_sd_rho" << d << "min_rho" << d << "max_rho"
        << d << "kind" << d << "weight_pattern" << d << "indicator_index" << d << "correlation" << d << "contribution"
        << d << "relative_contribution" << '\n';

    for (const auto& pop : sweep.populations)
    {
        const std::pair<const CompositeResult*, const char*> blocks[] = {
            {&pop.analytic_unit, "unit"},
            {&pop.analytic_weighted, "specified"},
            {&pop.purely_analytic_unit, "unit"},
            {&pop.purely_analytic_weighted, "specified"},
        };
        for (const auto& [result, pattern] : blocks)
        {
            const char* kind = result->kind == CompositeKind::Analytic ? "analytic" : "purely_analytic";
            for (const auto& row : contribution_report(*result))
            {
                out << pop.index << d << exact(pop.spec.target_sd_rho) << d << exact(pop.achieved.sd) << d
                    << exact(pop.achieved.min) << d << exact(pop.achieved.max) << d << kind << d << pattern << d
                    << row.indicator + 1 << d << exact(row.correlation) << d << exact(row.contribution) << d
                    << exact(row.relative_contribution) << '\n';
            }
        }
    }
    return out.str();
}

std::string format_budget_report(const BudgetReport& report, char delimiter)
{
    std::ostringstream out;
    out << "# " << kVersion << '\n';
    out << "# estimation_window=" << report.in_sample.cases << '\n';
    out << "# holdout_window=" << (report.holdout ? std::to_string(report.holdout->cases) : "none") << '\n';
    out << "# regularized=" << (report.regularized ? "true" : "false") << '\n';
    out << "# in_sample_max_abs_relative_gap=" << exact(report.in_sample.max_abs_relative_gap) << '\n';
    if (report.holdout)
        out << "# holdout_max_abs_relative_gap=" << exact(report.holdout->max_abs_relative_gap) << '\n';

    const char d = delimiter;
    out << "window" << d << "asset" << d << "effective_weight" << d << "target_relative" << d
        << "realized_correlation" << d << "realized_contribution" << d << "realized_relative" << d
        << "relative_gap" << '\n';

    auto emit = [&](const char* name, const WindowEvaluation& w) {
        for (std::size_t i = 0; i < report.asset_labels.size(); ++i)
        {
            const auto k = static_cast<Eigen::Index>(i);
            out << name << d << report.asset_labels[i] << d << exact(report.effective_weights(k)) << d
                << exact(report.target_relative(k)) << d << exact(w.realized_correlations(k)) << d
                << exact(w.realized_contributions(k)) << d << exact(w.realized_relative(k)) << d
                << exact(w.realized_relative(k) - report.target_relative(k)) << '\n';
        }
    };
    emit("in_sample", report.in_sample);
    if (report.holdout)
        emit("holdout", *report.holdout);
    return out.str();
}

} // namespace pacomp
