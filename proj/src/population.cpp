/**
 * @file population.cpp
 * @brief Population generation, sampling and the comparison sweep.
 */

#include "pacomp/population.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "pacomp/errors.hpp"

namespace pacomp
{

namespace
{

constexpr double kEigenvalueFloor = 1e-4;
constexpr int kMaxDoublings = 12;

bool rho_feasible(int p, double rho)
{
    return rho > -1.0 / (p - 1) && rho < 1.0;
}

/// Symmetric matrix of off-diagonal perturbations with mean 0 and sd 1 (divisor m-1).
Matrix draw_perturbation(int p, Rng& rng)
{
    const int m = p * (p - 1) / 2;
    Vector draws(m);
    for (int k = 0; k < m; ++k)
    {
        draws(k) = rng.normal();
    }
    draws.array() -= draws.mean();
    const double sd = m > 1 ? std::sqrt(draws.squaredNorm() / (m - 1)) : 0.0;
    if (sd > 0.0)
    {
        draws /= sd;
    }

    Matrix e = Matrix::Zero(p, p);
    int k = 0;
    for (int i = 0; i < p; ++i)
    {
        for (int j = i + 1; j < p; ++j, ++k)
        {
            e(i, j) = e(j, i) = draws(k);
        }
    }
    return e;
}

} // namespace

void validate(const PopulationSpec& spec)
{
    if (spec.p < 2)
    {
        throw Error(ErrorKind::InvalidPopulationSpec, "p must be at least 2");
    }
    if (!std::isfinite(spec.target_sd_rho) || spec.target_sd_rho < 0.0)
    {
        throw Error(ErrorKind::InvalidPopulationSpec, "target sd(rho) must be finite and nonnegative");
    }
    if (!(spec.sd_tolerance > 0.0) || !(spec.mean_tolerance > 0.0) || spec.max_iterations < 1)
    {
        throw Error(ErrorKind::InvalidPopulationSpec, "tolerances and iteration cap must be positive");
    }
    if (!rho_feasible(spec.p, spec.mean_rho))
    {
        throw Error(ErrorKind::InfeasibleRho, "mean rho " + std::to_string(spec.mean_rho) + " outside (" +
                                                  std::to_string(-1.0 / (spec.p - 1)) + ", 1)");
    }
}

OffDiagonalStats off_diagonal_stats(const Matrix& r)
{
    const Eigen::Index p = r.rows();
    const Eigen::Index m = p * (p - 1) / 2;
    Vector values(m);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < p; ++i)
    {
        for (Eigen::Index j = i + 1; j < p; ++j)
        {
            values(k++) = r(i, j);
        }
    }
    const double mean = values.mean();
    const double sd = m > 1 ? std::sqrt((values.array() - mean).square().sum() / static_cast<double>(m - 1)) : 0.0;
    return {mean, sd, values.minCoeff(), values.maxCoeff()};
}

double spread(const Vector& v)
{
    return v.maxCoeff() - v.minCoeff();
}

CorrelationMatrix make_equicorrelated(int p, double rho)
{
    if (p < 2)
    {
        throw Error(ErrorKind::InvalidPopulationSpec, "p must be at least 2");
    }
    if (!rho_feasible(p, rho))
    {
        throw Error(ErrorKind::InfeasibleRho,
                    "rho " + std::to_string(rho) + " outside (" + std::to_string(-1.0 / (p - 1)) + ", 1)");
    }
    Matrix r = Matrix::Constant(p, p, rho);
    r.diagonal().setOnes();
    return CorrelationMatrix(std::move(r));
}

Matrix project_to_correlation(const Matrix& a, double eigenvalue_floor)
{
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
    const Vector clipped = eig.eigenvalues().cwiseMax(eigenvalue_floor);
    Matrix b = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();

    const Vector inv_sd = b.diagonal().array().rsqrt();
    b = inv_sd.asDiagonal() * b * inv_sd.asDiagonal();
    b = 0.5 * (b + b.transpose()).eval();
    b.diagonal().setOnes();
    return b;
}

CorrelationMatrix make_heterogeneous(const PopulationSpec& spec)
{
    validate(spec);
    if (spec.target_sd_rho == 0.0)
    {
        return make_equicorrelated(spec.p, spec.mean_rho);
    }

    const Matrix base = make_equicorrelated(spec.p, spec.mean_rho).values();
    const double target = spec.target_sd_rho;
    Rng rng(spec.seed);
    int iterations = 0;

    struct Candidate
    {
        Matrix r;
        OffDiagonalStats stats;
    };

    while (iterations < spec.max_iterations)
    {
        const Matrix perturbation = draw_perturbation(spec.p, rng);
        auto evaluate = [&](double scale) {
            ++iterations;
            Candidate c{project_to_correlation(base + scale * perturbation, kEigenvalueFloor), {}};
            c.stats = off_diagonal_stats(c.r);
            return c;
        };
        auto within = [&](const Candidate& c) { return std::abs(c.stats.sd - target) <= spec.sd_tolerance; };

        // bracket the target: sd(lo) < target, sd(hi) >= target - tol
        double lo = 0.0;
        double hi = target;
        Candidate at_hi = evaluate(hi);
        int doublings = 0;
        while (at_hi.stats.sd < target - spec.sd_tolerance && doublings < kMaxDoublings &&
               iterations < spec.max_iterations)
        {
            lo = hi;
            hi *= 2.0;
            at_hi = evaluate(hi);
            ++doublings;
        }

        std::optional<Candidate> found;
        if (within(at_hi))
        {
            found = std::move(at_hi);
        }
        else if (at_hi.stats.sd > target)
        {
            while (iterations < spec.max_iterations)
            {
                const double mid = 0.5 * (lo + hi);
                Candidate c = evaluate(mid);
                if (within(c))
                {
                    found = std::move(c);
                    break;
                }
                (c.stats.sd < target ? lo : hi) = mid;
            }
        }

        if (found && std::abs(found->stats.mean - spec.mean_rho) <= spec.mean_tolerance)
        {
            return CorrelationMatrix(std::move(found->r));
        }
        // otherwise redraw the perturbation direction
    }

    throw Error(ErrorKind::TargetUnreachable, "could not reach sd(rho) = " + std::to_string(target) +
                                                  " with mean " + std::to_string(spec.mean_rho) + " within " +
                                                  std::to_string(spec.max_iterations) + " iterations");
}

IndicatorMatrix mvn_sample(const CorrelationMatrix& r, Eigen::Index n, std::uint64_t seed)
{
    const Eigen::LLT<Matrix> llt(r.values());
    if (llt.info() != Eigen::Success)
    {
        throw Error(ErrorKind::NotPositiveDefinite, "correlation matrix is not positive definite");
    }
    const Matrix lower = llt.matrixL();
    if (lower.diagonal().minCoeff() <= 0.0)
    {
        throw Error(ErrorKind::NotPositiveDefinite, "Cholesky factor has a nonpositive pivot");
    }

    const Eigen::Index p = r.size();
    Rng rng(seed);
    // filled row by row so a prefix of the stream gives a prefix of the sample
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> g(n, p);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        for (Eigen::Index j = 0; j < p; ++j)
        {
            g(i, j) = rng.normal();
        }
    }
    return IndicatorMatrix(g * lower.transpose());
}

std::vector<PopulationSpec> default_grid(int p, double mean_rho, std::uint64_t seed, double sd_lo, double sd_hi,
                                         int count)
{
    if (count < 1)
    {
        throw Error(ErrorKind::InvalidPopulationSpec, "grid needs at least one population");
    }
    std::vector<PopulationSpec> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
    {
        PopulationSpec spec;
        spec.p = p;
        spec.mean_rho = mean_rho;
        spec.seed = seed;
        spec.target_sd_rho = count == 1 ? sd_lo : sd_lo + (sd_hi - sd_lo) * k / (count - 1);
        grid.push_back(spec);
    }
    return grid;
}

SweepResult run_sweep(const std::vector<PopulationSpec>& grid, const WeightSpec& spec_weights,
                      const WeightSpec& unit_weights)
{
    SweepResult result{{}, unit_weights, spec_weights};
    if (grid.empty())
    {
        return result;
    }
    const int p = grid.front().p;
    for (const auto& spec : grid)
    {
        if (spec.p != p)
        {
            throw Error(ErrorKind::DimensionMismatch, "all populations in a sweep must share p");
        }
    }
    if (spec_weights.size() != p || unit_weights.size() != p)
    {
        throw Error(ErrorKind::DimensionMismatch, "weight patterns must have p = " + std::to_string(p) + " entries");
    }

    result.populations.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
    {
        const CorrelationMatrix r = make_heterogeneous(grid[k]);
        result.populations.push_back(PopulationRecord{
            k + 1,
            grid[k],
            r.values(),
            off_diagonal_stats(r.values()),
            analytic_population(r, unit_weights),
            purely_analytic_population(r, unit_weights),
            analytic_population(r, spec_weights),
            purely_analytic_population(r, spec_weights),
        });
    }
    return result;
}

} // namespace pacomp
