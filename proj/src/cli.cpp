#include "pacomp/cli.hpp"

#include <charconv>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "pacomp/errors.hpp"
#include "pacomp/io.hpp"
#include "pacomp/population.hpp"
#include "pacomp/risk_budget.hpp"

namespace pacomp
{

namespace
{

struct CommonOptions
{
    std::string output_dir = ".";
    bool json = false;
    std::string delimiter = ",";
    bool header = false;
};

void add_common(CLI::App* sub, CommonOptions& common)
{
    sub->add_option("--output-dir,-o", common.output_dir, "Directory for output files")->capture_default_str();
    sub->add_flag("--json", common.json, "Write full-precision JSON instead of text tables");
    sub->add_option("--delimiter", common.delimiter, "Field delimiter of input files")
        ->capture_default_str()
        ->check([](const std::string& s) { return s.size() == 1 ? std::string() : "delimiter must be one character"; });
    sub->add_flag("--header", common.header, "Input files start with a header row");
}

Error usage(const std::string& message)
{
    return Error(ErrorKind::UsageError, message);
}

double parse_double(std::string_view field)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
    {
        throw usage("cannot parse '" + std::string(field) + "' as a number");
    }
    return value;
}

std::vector<std::string> split_list(std::string_view text)
{
    std::vector<std::string> items;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = text.find(',', start);
        items.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return items;
}

/// `--targets` are variance targets, `--weights` raw weights; "unit" means all ones.
WeightSpec weight_spec(const std::string& targets, const std::string& weights, Eigen::Index p)
{
    const bool use_weights = !weights.empty();
    const std::string& text = use_weights ? weights : targets;
    if (text.empty() || text == "unit")
    {
        return WeightSpec::unit(static_cast<std::size_t>(p));
    }
    std::vector<double> values = parse_number_list(text);
    if (static_cast<Eigen::Index>(values.size()) != p)
    {
        throw Error(ErrorKind::DimensionMismatch, std::to_string(values.size()) + " weights given for " +
                                                      std::to_string(p) + " indicators");
    }
    return use_weights ? WeightSpec::from_weights(std::move(values))
                       : WeightSpec::from_variance_targets(std::move(values));
}

void emit(std::ostream& out, const std::filesystem::path& path)
{
    out << path.string() << '\n';
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j)
{
    write_text(path, j.dump(2) + "\n");
}

} // namespace

std::vector<double> parse_number_list(std::string_view text)
{
    std::vector<double> values;
    for (const auto& item : split_list(text))
        values.push_back(parse_double(item));
    return values;
}

std::vector<double> parse_grid(std::string_view text)
{
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos)
    {
        throw usage("grid must be lo:hi:count");
    }
    const double lo = parse_double(text.substr(0, first));
    const double hi = parse_double(text.substr(first + 1, second - first - 1));
    const double count = parse_double(text.substr(second + 1));
    if (!(count >= 1.0) || count != static_cast<int>(count))
    {
        throw usage("grid count must be a positive integer");
    }
    const int k = static_cast<int>(count);
    std::vector<double> grid;
    for (int i = 0; i < k; ++i)
        grid.push_back(k == 1 ? lo : lo + (hi - lo) * i / (k - 1));
    return grid;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Analytic and purely analytic composites with a priori variance contributions", "pacomp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    CommonOptions common;
    ReportOptions report;

    // analyze
    std::string input;
    std::string targets = "unit";
    std::string weights;
    auto* analyze_cmd = app.add_subcommand("analyze", "Build both composites from an indicator file");
    add_common(analyze_cmd, common);
    analyze_cmd->add_option("--input,-i", input, "Indicator file (cases as rows)")->required();
    auto* targets_opt = analyze_cmd->add_option("--targets", targets, "Variance targets, comma-separated, or 'unit'");
    analyze_cmd->add_option("--weights", weights, "Raw positive weights W, comma-separated")->excludes(targets_opt);
    analyze_cmd->add_option("--report-digits", report.report_digits, "Decimals in the results table")
        ->capture_default_str();
    analyze_cmd->add_option("--score-digits", report.score_digits, "Decimals in the score file")
        ->capture_default_str();

    // simulate
    int p = 5;
    std::string grid_text = "0.01:0.23:6";
    double mean_rho = 0.3;
    std::uint64_t seed = 1;
    double sd_tolerance = 1e-3;
    std::string sim_targets;
    std::string sim_weights;
    auto* simulate_cmd = app.add_subcommand("simulate", "Population sweep over sd(rho)");
    add_common(simulate_cmd, common);
    simulate_cmd->add_option("--p", p, "Indicator count")->capture_default_str()->check(CLI::Range(2, 1000));
    simulate_cmd->add_option("--grid", grid_text, "Target sd(rho) grid lo:hi:count")->capture_default_str();
    simulate_cmd->add_option("--mean-rho", mean_rho, "Mean off-diagonal correlation")->capture_default_str();
    simulate_cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();
    simulate_cmd->add_option("--sd-tolerance", sd_tolerance, "Allowed |achieved - target| sd(rho)")
        ->capture_default_str();
    auto* sim_targets_opt =
        simulate_cmd->add_option("--targets", sim_targets, "Variance targets of the specified weight pattern");
    simulate_cmd->add_option("--weights", sim_weights, "Raw weights of the specified pattern (default 1,1,1,2,2)")
        ->excludes(sim_targets_opt);

    // riskbudget
    std::string rb_input;
    std::string rb_targets = "unit";
    std::string labels;
    Eigen::Index window = 0;
    std::string holdout_path;
    auto* budget_cmd = app.add_subcommand("riskbudget", "Variance-contribution budget for standardized assets");
    add_common(budget_cmd, common);
    budget_cmd->add_option("--input,-i", rb_input, "Asset return file (periods as rows)")->required();
    budget_cmd->add_option("--targets", rb_targets, "Variance targets, comma-separated, or 'unit'");
    budget_cmd->add_option("--labels", labels, "Asset labels, comma-separated");
    budget_cmd->add_option("--window", window, "Estimation window (most recent rows; default all)");
    budget_cmd->add_option("--holdout", holdout_path, "Holdout return file evaluated with in-sample weights");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return 0;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    }
    catch (const CLI::CallForVersion&)
    {
        out << kVersion << '\n';
        return 0;
    }
    catch (const CLI::ParseError& e)
    {
        err << usage(e.what()).to_line() << '\n';
        return 2;
    }

    try
    {
        const ReadOptions read{common.delimiter.front(), common.header};
        const std::filesystem::path dir = common.output_dir;

        if (*analyze_cmd)
        {
            const IndicatorMatrix x = read_indicators(input, read);
            const Analysis analysis = analyze(x, weight_spec(targets, weights, x.indicators()));
            if (common.json)
            {
                const auto path = dir / (report_stem(x.indicators(), x.cases()) + ".json");
                write_json(path, to_json(analysis));
                emit(out, path);
            }
            else
            {
                const ReportPaths paths = write_reports(analysis, dir, report);
                emit(out, paths.results);
                emit(out, paths.correlations);
                emit(out, paths.scores);
            }
        }
        else if (*simulate_cmd)
        {
            WeightSpec specified = WeightSpec::unit(static_cast<std::size_t>(p));
            if (sim_weights.empty() && sim_targets.empty())
            {
                if (p != 5)
                    throw usage("the default weight pattern 1,1,1,2,2 needs p = 5; pass --weights");
                specified = WeightSpec::from_weights({1, 1, 1, 2, 2});
            }
            else
            {
                specified = weight_spec(sim_targets, sim_weights, p);
            }

            std::vector<PopulationSpec> grid;
            for (double sd : parse_grid(grid_text))
            {
                PopulationSpec spec;
                spec.p = p;
                spec.mean_rho = mean_rho;
                spec.target_sd_rho = sd;
                spec.seed = seed;
                spec.sd_tolerance = sd_tolerance;
                grid.push_back(spec);
            }
            const SweepResult sweep = run_sweep(grid, specified, WeightSpec::unit(static_cast<std::size_t>(p)));
            const std::string stem = "population_sweep_p=" + std::to_string(p) + "_seed=" + std::to_string(seed);
            std::filesystem::path path;
            if (common.json)
            {
                path = dir / (stem + ".json");
                write_json(path, to_json(sweep));
            }
            else
            {
                path = dir / (stem + ".txt");
                write_text(path, format_sweep_table(sweep));
            }
            emit(out, path);
        }
        else if (*budget_cmd)
        {
            const IndicatorMatrix returns = read_indicators(rb_input, read);
            std::optional<IndicatorMatrix> holdout;
            if (!holdout_path.empty())
                holdout = read_indicators(holdout_path, read);

            RiskBudgetSpec spec;
            spec.estimation_window = window > 0 ? window : returns.cases();
            const WeightSpec w = weight_spec(rb_targets, "", returns.indicators());
            spec.variance_targets.assign(w.variance_targets().data(),
                                         w.variance_targets().data() + w.variance_targets().size());
            if (labels.empty())
            {
                for (Eigen::Index j = 0; j < returns.indicators(); ++j)
                    spec.asset_labels.push_back("asset" + std::to_string(j + 1));
            }
            else
            {
                spec.asset_labels = split_list(labels);
            }

            const BudgetReport budget = evaluate_budget(returns, spec, holdout);
            const std::string stem = "risk_budget_p=" + std::to_string(returns.indicators()) +
                                     "_window=" + std::to_string(spec.estimation_window);
            std::filesystem::path path;
            if (common.json)
            {
                path = dir / (stem + ".json");
                write_json(path, to_json(budget));
            }
            else
            {
                path = dir / (stem + ".txt");
                write_text(path, format_budget_report(budget));
            }
            emit(out, path);
        }
    }
    catch (const Error& e)
    {
        err << e.to_line() << '\n';
        return e.kind() == ErrorKind::UsageError ? 2 : 1;
    }
    catch (const std::exception& e)
    {
        err << Error(ErrorKind::IoError, e.what()).to_line() << '\n';
        return 1;
    }
    return 0;
}

} // namespace pacomp
