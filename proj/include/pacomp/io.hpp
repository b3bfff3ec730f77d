/**
 * @file io.hpp
 * @brief Delimited indicator input and the report/table writers.
 *
 * Input: plain numeric text, one case per line, indicators as columns,
 * decimal point only. No quoting; a field never contains the delimiter.
 * A space delimiter matches any run of blanks.
 *
 * Analysis output is three fixed-width text files named
 * `purely_analytic_composites_p=<p>_n=<n>_{results,indicator_inter-correlations,composite_scores}.txt`
 * (report values at 3 decimals, scores at 4), or one JSON file with full
 * precision.
 */

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "pacomp/composite.hpp"
#include "pacomp/population.hpp"
#include "pacomp/risk_budget.hpp"

namespace pacomp
{

inline constexpr std::string_view kVersion = "pacomp 0.1.0";

struct ReadOptions
{
    char delimiter = ',';
    bool has_header = false;
};

/// Throws ParseError (with line/column), RaggedRows or EmptyFile.
IndicatorMatrix parse_indicators(std::string_view text, const ReadOptions& options = {});
/// As parse_indicators; IoError if the file cannot be read.
IndicatorMatrix read_indicators(const std::filesystem::path& path, const ReadOptions& options = {});

/// Both composites computed on one dataset.
struct Analysis
{
    Eigen::Index cases;
    CorrelationMatrix correlation;
    WeightSpec weights;
    CompositeResult analytic;
    CompositeResult purely_analytic;
};

/// standardize -> sample_correlation -> both composites.
Analysis analyze(const IndicatorMatrix& x, const WeightSpec& weights, const RegularizationPolicy& policy = {});

struct ReportOptions
{
    int report_digits = 3;
    int score_digits = 4;
};

struct ReportPaths
{
    std::filesystem::path results;
    std::filesystem::path correlations;
    std::filesystem::path scores;
};

/// `purely_analytic_composites_p=<p>_n=<n>`
std::string report_stem(Eigen::Index p, Eigen::Index n);

std::string format_results(const Analysis& analysis, const ReportOptions& options = {});
std::string format_correlations(const Analysis& analysis, const ReportOptions& options = {});
std::string format_scores(const Analysis& analysis, const ReportOptions& options = {});

ReportPaths write_reports(const Analysis& analysis, const std::filesystem::path& output_dir,
                          const ReportOptions& options = {});

nlohmann::json to_json(const Analysis& analysis);
nlohmann::json to_json(const SweepResult& sweep);
nlohmann::json to_json(const BudgetReport& report);

/// One row per population x kind x weight pattern x indicator, `#` metadata first.
std::string format_sweep_table(const SweepResult& sweep, char delimiter = ',');
std::string format_budget_report(const BudgetReport& report, char delimiter = ',');

/// Fixed-point text with no negative zero.
std::string fixed(double value, int digits);
/// Shortest text that round-trips to the same double.
std::string exact(double value);

/// Writes @p content to @p path, creating parent directories. Throws IoError.
void write_text(const std::filesystem::path& path, std::string_view content);

} // namespace pacomp
