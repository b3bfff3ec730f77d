/**
 * @file population.hpp
 * @brief Population correlation structures with controlled sd of the
 *        inter-correlations, multivariate normal sampling, and the
 *        six-population comparison sweep.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pacomp/composite.hpp"
#include "pacomp/random.hpp"

namespace pacomp
{

struct PopulationSpec
{
    int p = 5;
    double mean_rho = 0.3;
    double target_sd_rho = 0.0;
    std::uint64_t seed = 1;
    double sd_tolerance = 1e-3;
    /// Cap on projection/evaluation steps for the scale search.
    int max_iterations = 200;
    /// Acceptance band for the achieved off-diagonal mean.
    double mean_tolerance = 0.02;
};

/// Throws Error(InvalidPopulationSpec) or Error(InfeasibleRho).
void validate(const PopulationSpec& spec);

/// Summary of the p(p-1)/2 upper off-diagonal entries; sd uses divisor m-1.
struct OffDiagonalStats
{
    double mean;
    double sd;
    double min;
    double max;
};

OffDiagonalStats off_diagonal_stats(const Matrix& r);

/// Unit diagonal, all off-diagonals rho. Requires rho in (-1/(p-1), 1).
CorrelationMatrix make_equicorrelated(int p, double rho);

/**
 * Equicorrelation at mean_rho plus a seeded, centered Gaussian perturbation of
 * the off-diagonals, projected onto valid correlation matrices (eigenvalue
 * floor 1e-4, then diagonal renormalization). The perturbation scale is
 * bisected until the achieved sd is within sd_tolerance of the target.
 *
 * @throws Error(TargetUnreachable) when max_iterations is exhausted.
 */
CorrelationMatrix make_heterogeneous(const PopulationSpec& spec);

/// Nearest-valid projection used by make_heterogeneous, exposed for testing.
Matrix project_to_correlation(const Matrix& a, double eigenvalue_floor = 1e-4);

/// n draws of N(0, R) via the Cholesky factor of R. Throws NotPositiveDefinite.
IndicatorMatrix mvn_sample(const CorrelationMatrix& r, Eigen::Index n, std::uint64_t seed);

/// `count` populations with target sd linearly spaced over [sd_lo, sd_hi], all sharing `seed`.
std::vector<PopulationSpec> default_grid(int p = 5, double mean_rho = 0.3, std::uint64_t seed = 1,
                                         double sd_lo = 0.01, double sd_hi = 0.23, int count = 6);

struct PopulationRecord
{
    std::size_t index; ///< 1-based population number
    PopulationSpec spec;
    Matrix correlation;
    OffDiagonalStats achieved;
    CompositeResult analytic_unit;
    CompositeResult purely_analytic_unit;
    CompositeResult analytic_weighted;
    CompositeResult purely_analytic_weighted;
};

struct SweepResult
{
    std::vector<PopulationRecord> populations;
    WeightSpec unit_weights;
    WeightSpec spec_weights;
    std::string generator = std::string(Rng::kAlgorithm);
};

/// Population-level (no sampling) indicator-composite correlations for both
/// composite kinds and both weight patterns.
SweepResult run_sweep(const std::vector<PopulationSpec>& grid, const WeightSpec& spec_weights,
                      const WeightSpec& unit_weights);

/// max - min of a vector.
double spread(const Vector& v);

} // namespace pacomp
