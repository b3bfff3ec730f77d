/**
 * @file composite.cpp
 * @brief Analytic and purely analytic composites and their diagnostics.
 */

#include "pacomp/composite.hpp"

#include <cmath>
#include <string>

#include "pacomp/errors.hpp"

namespace pacomp
{

namespace
{

constexpr double kDegenerateVariance = 1e-12;

void require_same_size(Eigen::Index a, Eigen::Index b, const char* what)
{
    if (a != b)
    {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

double inverse_sqrt_variance(double variance, const char* what)
{
    if (!(variance > kDegenerateVariance))
    {
        throw Error(ErrorKind::DegenerateVariance,
                    std::string(what) + " composite variance " + std::to_string(variance) + " is not positive");
    }
    return 1.0 / std::sqrt(variance);
}

Vector validated_positive(const std::vector<double>& values, const char* what)
{
    if (values.size() < 2)
    {
        throw Error(ErrorKind::InvalidWeights, std::string(what) + ": need at least two entries");
    }
    Vector out(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (!std::isfinite(values[i]) || !(values[i] > 0.0))
        {
            throw Error(ErrorKind::InvalidWeights,
                        std::string(what) + " must be finite and strictly positive (entry " + std::to_string(i + 1) +
                            " is " + std::to_string(values[i]) + ")");
        }
        out(static_cast<Eigen::Index>(i)) = values[i];
    }
    return out;
}

} // namespace

WeightSpec WeightSpec::from_variance_targets(std::vector<double> targets)
{
    Vector t = validated_positive(targets, "variance targets");
    Vector w = t.array().sqrt().matrix();
    return WeightSpec(std::move(t), std::move(w));
}

WeightSpec WeightSpec::from_weights(std::vector<double> weights)
{
    Vector w = validated_positive(weights, "weights");
    Vector t = w.array().square().matrix();
    return WeightSpec(std::move(t), std::move(w));
}

WeightSpec WeightSpec::unit(std::size_t p)
{
    return from_weights(std::vector<double>(p, 1.0));
}

std::string_view to_string(CompositeKind kind)
{
    return kind == CompositeKind::Analytic ? "Analytic comp." : "Purely analytic comp.";
}

double weighted_sum_variance(const Vector& w, const Matrix& s)
{
    require_same_size(w.size(), s.rows(), "weights vs covariance rows");
    require_same_size(s.rows(), s.cols(), "covariance rows vs columns");
    return w.dot(s * w);
}

CompositeResult CompositeResult::from_correlations(CompositeKind kind, Vector correlations)
{
    CompositeResult result;
    result.kind = kind;
    result.variance_contributions = correlations.array().square().matrix();
    result.relative_contributions = result.variance_contributions / result.variance_contributions.minCoeff();
    result.indicator_correlations = std::move(correlations);
    return result;
}

CompositeResult analytic_population(const CorrelationMatrix& r, const WeightSpec& spec)
{
    require_same_size(spec.size(), r.size(), "weights vs correlation matrix");
    const Vector& w = spec.weights();
    const Vector rw = r.values() * w;
    const double scale = inverse_sqrt_variance(w.dot(rw), "analytic");

    CompositeResult result = CompositeResult::from_correlations(CompositeKind::Analytic, rw * scale);
    result.combination_weights = w * scale;
    return result;
}

CompositeResult purely_analytic_population(const CorrelationMatrix& r, const WeightSpec& spec,
                                           const RegularizationPolicy& policy)
{
    require_same_size(spec.size(), r.size(), "weights vs correlation matrix");
    const InverseResult inv = regularized_inverse(r, policy);
    const Vector& w = spec.weights();
    const Vector rinv_w = inv.inverse * w;
    const double scale = inverse_sqrt_variance(w.dot(rinv_w), "purely analytic");

    CompositeResult result = CompositeResult::from_correlations(CompositeKind::PurelyAnalytic, w * scale);
    result.combination_weights = rinv_w * scale;
    result.regularized = inv.regularized;
    return result;
}

CompositeResult analytic_composite(const StandardizedMatrix& z, const CorrelationMatrix& r, const WeightSpec& spec)
{
    require_same_size(z.indicators(), r.size(), "data columns vs correlation matrix");
    CompositeResult result = analytic_population(r, spec);
    result.scores = z.values() * result.combination_weights;
    return result;
}

CompositeResult purely_analytic_composite(const StandardizedMatrix& z, const CorrelationMatrix& r,
                                          const WeightSpec& spec, const RegularizationPolicy& policy)
{
    require_same_size(z.indicators(), r.size(), "data columns vs correlation matrix");
    CompositeResult result = purely_analytic_population(r, spec, policy);
    result.scores = z.values() * result.combination_weights;
    return result;
}

std::vector<ContributionRow> contribution_report(const CompositeResult& result)
{
    std::vector<ContributionRow> rows;
    rows.reserve(static_cast<std::size_t>(result.indicator_correlations.size()));
    for (Eigen::Index i = 0; i < result.indicator_correlations.size(); ++i)
    {
        rows.push_back({static_cast<std::size_t>(i), result.indicator_correlations(i),
                        result.variance_contributions(i), result.relative_contributions(i)});
    }
    return rows;
}

} // namespace pacomp
