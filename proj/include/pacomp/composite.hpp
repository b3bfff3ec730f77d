/**
 * @file composite.hpp
 * @brief Standardization, correlation estimation, regularized inversion and
 *        the two composite constructions (analytic and purely analytic).
 *
 * Conventions:
 *  - standardization and correlation use the n-1 divisor, so that
 *    R = Z'Z / (n-1) is the sample correlation of the standardized data;
 *  - variance contribution of indicator i = squared correlation of z_i with
 *    the composite; relative contributions divide by the minimum contribution.
 *
 * Every operation comes in a sample mode (takes standardized data and returns
 * scores) and a population mode (takes R alone, returns correlations only).
 */

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pacomp
{

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Raw n x p observation table (rows = cases, columns = indicators).
class IndicatorMatrix
{
public:
    /// @throws Error(InvalidShape) if n < 2 or p < 2, Error(NonFiniteInput) on NaN/inf.
    explicit IndicatorMatrix(Matrix values);

    const Matrix& values() const noexcept { return values_; }
    Eigen::Index cases() const noexcept { return values_.rows(); }
    Eigen::Index indicators() const noexcept { return values_.cols(); }

private:
    Matrix values_;
};

/// Column-standardized data: mean 0, variance 1 with divisor n-1.
class StandardizedMatrix
{
public:
    const Matrix& values() const noexcept { return values_; }
    Eigen::Index cases() const noexcept { return values_.rows(); }
    Eigen::Index indicators() const noexcept { return values_.cols(); }

private:
    friend StandardizedMatrix standardize(const IndicatorMatrix& x);
    explicit StandardizedMatrix(Matrix values) : values_(std::move(values)) {}

    Matrix values_;
};

/// Symmetric p x p matrix with unit diagonal and entries in [-1, 1].
class CorrelationMatrix
{
public:
    static constexpr double kTolerance = 1e-12;

    /**
     * Validates and symmetrizes @p values. Off-diagonal entries within
     * kTolerance outside [-1, 1] are clamped.
     * @throws Error(InvalidCorrelation) when the invariants do not hold.
     */
    explicit CorrelationMatrix(Matrix values);

    const Matrix& values() const noexcept { return values_; }
    Eigen::Index size() const noexcept { return values_.rows(); }

private:
    Matrix values_;
};

/// Target relative variance contributions and the weight vector W = sqrt(targets).
class WeightSpec
{
public:
    /// Appendix convention: targets are the intended relative variances.
    static WeightSpec from_variance_targets(std::vector<double> targets);
    /// Raw positive weights W; the implied variance targets are W_i^2.
    static WeightSpec from_weights(std::vector<double> weights);
    static WeightSpec unit(std::size_t p);

    const Vector& variance_targets() const noexcept { return targets_; }
    const Vector& weights() const noexcept { return weights_; }
    Eigen::Index size() const noexcept { return weights_.size(); }

private:
    WeightSpec(Vector targets, Vector weights)
        : targets_(std::move(targets)), weights_(std::move(weights))
    {
    }

    Vector targets_;
    Vector weights_;
};

struct RegularizationPolicy
{
    double det_threshold = 1e-5;
    double ridge = 1e-6;
    int max_ridge_applications = 3;
    double residual_tol = 1e-8;
    double pivot_tol = 1e-12;
};

struct InverseResult
{
    Matrix inverse;
    /// The matrix that was actually inverted (R plus any ridge).
    Matrix inverted;
    double determinant = 0.0; ///< determinant of the raw input
    bool regularized = false;
    int ridge_applications = 0;
};

/**
 * Inverts R through an LDL' factorization. If det(R) <= det_threshold the
 * ridge is added to the diagonal before inverting; further ridge
 * applications follow only while the factorization has a pivot at or below
 * pivot_tol or ||A * A^-1 - I||_max >= residual_tol.
 *
 * @throws Error(SingularAfterRegularization) after max_ridge_applications.
 */
InverseResult regularized_inverse(const CorrelationMatrix& r, const RegularizationPolicy& policy = {});

/// Determinant and positive-definiteness from one LDL' factorization.
struct FactorizationCheck
{
    double determinant;
    double min_pivot;
    bool positive_definite;
};
FactorizationCheck factorization_check(const Matrix& a, double pivot_tol = 1e-12);

/// Variance of sum_i w_i x_i given the covariance S, i.e. w' S w.
double weighted_sum_variance(const Vector& w, const Matrix& s);

StandardizedMatrix standardize(const IndicatorMatrix& x);

/// R = Z'Z / (n-1).
CorrelationMatrix sample_correlation(const StandardizedMatrix& z);

enum class CompositeKind
{
    Analytic,
    PurelyAnalytic,
};

std::string_view to_string(CompositeKind kind);

struct CompositeResult
{
    CompositeKind kind = CompositeKind::Analytic;
    /// Empty for population-mode results.
    Vector scores;
    /// Vector applied to standardized indicators to form the scores.
    Vector combination_weights;
    Vector indicator_correlations;
    Vector variance_contributions;
    Vector relative_contributions;
    bool regularized = false;

    /// Fills contributions (squared correlations) and min-normalized relatives.
    static CompositeResult from_correlations(CompositeKind kind, Vector correlations);
};

/// Scores Z W (W'RW)^-1/2, correlations R W (W'RW)^-1/2.
CompositeResult analytic_composite(const StandardizedMatrix& z, const CorrelationMatrix& r,
                                   const WeightSpec& spec);

/// Scores Z R^-1 W (W'R^-1 W)^-1/2, correlations W (W'R^-1 W)^-1/2.
CompositeResult purely_analytic_composite(const StandardizedMatrix& z, const CorrelationMatrix& r,
                                          const WeightSpec& spec,
                                          const RegularizationPolicy& policy = {});

/// Population mode: correlations only, from R.
CompositeResult analytic_population(const CorrelationMatrix& r, const WeightSpec& spec);
CompositeResult purely_analytic_population(const CorrelationMatrix& r, const WeightSpec& spec,
                                           const RegularizationPolicy& policy = {});

struct ContributionRow
{
    std::size_t indicator; ///< 0-based column index
    double correlation;
    double contribution;
    double relative_contribution;
};

std::vector<ContributionRow> contribution_report(const CompositeResult& result);

} // namespace pacomp
