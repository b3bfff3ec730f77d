/**
 * @file risk_budget.hpp
 * @brief Variance-contribution budgeting for standardized asset series.
 *
 * A risk contribution here is the squared correlation of a standardized asset
 * with the composite. Effective weights R^-1 W (W'R^-1 W)^-1/2 make the
 * in-sample contributions proportional to the targets; a holdout window is
 * evaluated with the in-sample weights and only the gap is reported.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pacomp/composite.hpp"

namespace pacomp
{

struct RiskBudgetSpec
{
    std::vector<std::string> asset_labels;
    std::vector<double> variance_targets;
    /// Number of most recent rows used to estimate R.
    Eigen::Index estimation_window = 0;
};

/// Throws Error(InvalidBudgetSpec) or Error(WindowTooShort).
void validate(const RiskBudgetSpec& spec);

Vector effective_weights(const CorrelationMatrix& r, const WeightSpec& spec, const RegularizationPolicy& policy = {});

struct WindowEvaluation
{
    Eigen::Index cases = 0;
    Vector realized_correlations;
    Vector realized_contributions;
    Vector realized_relative;
    double max_abs_relative_gap = 0.0;
};

struct BudgetReport
{
    std::vector<std::string> asset_labels;
    Vector effective_weights;
    Vector target_relative;
    bool regularized = false;
    WindowEvaluation in_sample;
    std::optional<WindowEvaluation> holdout;
};

/**
 * Standardizes the last `estimation_window` rows of @p returns, estimates R
 * on them, forms effective weights and evaluates realized contributions
 * in-sample and, if given, on @p holdout (standardized on its own).
 */
BudgetReport evaluate_budget(const IndicatorMatrix& returns, const RiskBudgetSpec& spec,
                             const std::optional<IndicatorMatrix>& holdout = std::nullopt,
                             const RegularizationPolicy& policy = {});

} // namespace pacomp
