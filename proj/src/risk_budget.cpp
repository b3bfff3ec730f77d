#include "pacomp/risk_budget.hpp"

#include <cmath>
#include <set>

#include "pacomp/errors.hpp"

namespace pacomp
{

namespace
{

WindowEvaluation evaluate_window(const IndicatorMatrix& data, const Vector& weights, const Vector& target_relative)
{
    const CorrelationMatrix r = sample_correlation(standardize(data));
    const Vector rv = r.values() * weights;
    const double variance = weights.dot(rv);
    if (!(variance > 1e-12))
    {
        throw Error(ErrorKind::DegenerateVariance, "composite has zero variance on the evaluation window");
    }
    const CompositeResult realized =
        CompositeResult::from_correlations(CompositeKind::PurelyAnalytic, rv / std::sqrt(variance));

    WindowEvaluation out;
    out.cases = data.cases();
    out.realized_correlations = realized.indicator_correlations;
    out.realized_contributions = realized.variance_contributions;
    out.realized_relative = realized.relative_contributions;
    out.max_abs_relative_gap = (out.realized_relative - target_relative).cwiseAbs().maxCoeff();
    return out;
}

} // namespace

void validate(const RiskBudgetSpec& spec)
{
    const std::size_t p = spec.asset_labels.size();
    if (p < 2 || spec.variance_targets.size() != p)
    {
        throw Error(ErrorKind::InvalidBudgetSpec, "need at least two assets with one target per label");
    }
    std::set<std::string> seen;
    for (const auto& label : spec.asset_labels)
    {
        if (label.empty() || !seen.insert(label).second)
        {
            throw Error(ErrorKind::InvalidBudgetSpec, "asset labels must be unique and nonempty");
        }
    }
    for (double t : spec.variance_targets)
    {
        if (!std::isfinite(t) || !(t > 0.0))
        {
            throw Error(ErrorKind::InvalidBudgetSpec, "variance targets must be strictly positive");
        }
    }
    if (spec.estimation_window < static_cast<Eigen::Index>(p) + 1)
    {
        throw Error(ErrorKind::WindowTooShort, "estimation window " + std::to_string(spec.estimation_window) +
                                                   " must be at least p + 1 = " + std::to_string(p + 1));
    }
}

Vector effective_weights(const CorrelationMatrix& r, const WeightSpec& spec, const RegularizationPolicy& policy)
{
    return purely_analytic_population(r, spec, policy).combination_weights;
}

BudgetReport evaluate_budget(const IndicatorMatrix& returns, const RiskBudgetSpec& spec,
                             const std::optional<IndicatorMatrix>& holdout, const RegularizationPolicy& policy)
{
    validate(spec);
    const auto p = static_cast<Eigen::Index>(spec.asset_labels.size());
    if (returns.indicators() != p)
    {
        throw Error(ErrorKind::DimensionMismatch, "returns have " + std::to_string(returns.indicators()) +
                                                      " columns but the budget names " + std::to_string(p) +
                                                      " assets");
    }
    if (holdout && holdout->indicators() != p)
    {
        throw Error(ErrorKind::DimensionMismatch, "holdout column count differs from the budget");
    }
    if (returns.cases() < spec.estimation_window)
    {
        throw Error(ErrorKind::WindowTooShort, "returns have " + std::to_string(returns.cases()) +
                                                   " rows, fewer than the estimation window " +
                                                   std::to_string(spec.estimation_window));
    }

    const IndicatorMatrix window(returns.values().bottomRows(spec.estimation_window));
    const CorrelationMatrix r = sample_correlation(standardize(window));
    const WeightSpec weights = WeightSpec::from_variance_targets(spec.variance_targets);
    const CompositeResult composite = purely_analytic_population(r, weights, policy);

    BudgetReport report;
    report.asset_labels = spec.asset_labels;
    report.effective_weights = composite.combination_weights;
    report.target_relative = weights.variance_targets() / weights.variance_targets().minCoeff();
    report.regularized = composite.regularized;
    report.in_sample = evaluate_window(window, report.effective_weights, report.target_relative);
    if (holdout)
    {
        report.holdout = evaluate_window(*holdout, report.effective_weights, report.target_relative);
    }
    return report;
}

} // namespace pacomp
