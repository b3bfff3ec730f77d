/**
 * @file matrix.cpp
 * @brief Indicator/correlation matrix types, standardization and the
 *        regularized inverse.
 */

#include <algorithm>
#include <cmath>
#include <string>

#include "pacomp/composite.hpp"
#include "pacomp/errors.hpp"

namespace pacomp
{

IndicatorMatrix::IndicatorMatrix(Matrix values) : values_(std::move(values))
{
    if (values_.rows() < 2 || values_.cols() < 2)
    {
        throw Error(ErrorKind::InvalidShape, "indicator matrix must have at least 2 cases and 2 indicators, got " +
                                                 std::to_string(values_.rows()) + "x" +
                                                 std::to_string(values_.cols()));
    }
    for (Eigen::Index j = 0; j < values_.cols(); ++j)
    {
        for (Eigen::Index i = 0; i < values_.rows(); ++i)
        {
            if (!std::isfinite(values_(i, j)))
            {
                throw Error(ErrorKind::NonFiniteInput, "non-finite value at case " + std::to_string(i + 1) +
                                                           ", indicator " + std::to_string(j + 1));
            }
        }
    }
}

CorrelationMatrix::CorrelationMatrix(Matrix values)
{
    const Eigen::Index p = values.rows();
    if (p < 2 || values.cols() != p)
    {
        throw Error(ErrorKind::InvalidCorrelation, "correlation matrix must be square with p >= 2");
    }
    if (!values.allFinite())
    {
        throw Error(ErrorKind::InvalidCorrelation, "correlation matrix has non-finite entries");
    }
    for (Eigen::Index i = 0; i < p; ++i)
    {
        if (std::abs(values(i, i) - 1.0) > kTolerance)
        {
            throw Error(ErrorKind::InvalidCorrelation, "diagonal entry " + std::to_string(i + 1) + " is not 1");
        }
        for (Eigen::Index j = i + 1; j < p; ++j)
        {
            if (std::abs(values(i, j) - values(j, i)) > kTolerance)
            {
                throw Error(ErrorKind::InvalidCorrelation, "matrix is not symmetric at (" + std::to_string(i + 1) +
                                                               "," + std::to_string(j + 1) + ")");
            }
            const double r = 0.5 * (values(i, j) + values(j, i));
            if (std::abs(r) > 1.0 + kTolerance)
            {
                throw Error(ErrorKind::InvalidCorrelation, "off-diagonal entry outside [-1, 1]");
            }
            values(i, j) = values(j, i) = std::clamp(r, -1.0, 1.0);
        }
    }
    values_ = std::move(values);
}

StandardizedMatrix standardize(const IndicatorMatrix& x)
{
    const Matrix& v = x.values();
    const double n = static_cast<double>(v.rows());
    Matrix z(v.rows(), v.cols());
    for (Eigen::Index j = 0; j < v.cols(); ++j)
    {
        const double mean = v.col(j).mean();
        const Vector centered = v.col(j).array() - mean;
        const double sd = std::sqrt(centered.squaredNorm() / (n - 1.0));
        const double scale = std::max(1.0, v.col(j).cwiseAbs().maxCoeff());
        if (!(sd > 1e-14 * scale))
        {
            Error err(ErrorKind::ZeroVarianceColumn, "indicator " + std::to_string(j + 1) + " has zero variance");
            err.index = static_cast<std::size_t>(j);
            throw err;
        }
        z.col(j) = centered / sd;
    }
    return StandardizedMatrix(std::move(z));
}

CorrelationMatrix sample_correlation(const StandardizedMatrix& z)
{
    const double n = static_cast<double>(z.cases());
    Matrix r = (z.values().transpose() * z.values()) / (n - 1.0);
    return CorrelationMatrix(std::move(r));
}

FactorizationCheck factorization_check(const Matrix& a, double pivot_tol)
{
    const Eigen::LDLT<Matrix> ldlt(a);
    const Vector pivots = ldlt.vectorD();
    FactorizationCheck check{pivots.prod(), pivots.minCoeff(), false};
    check.positive_definite = ldlt.info() == Eigen::Success && check.min_pivot > pivot_tol;
    return check;
}

InverseResult regularized_inverse(const CorrelationMatrix& r, const RegularizationPolicy& policy)
{
    const Eigen::Index p = r.size();
    const Matrix identity = Matrix::Identity(p, p);

    InverseResult result;
    result.inverted = r.values();

    Eigen::LDLT<Matrix> ldlt(result.inverted);
    result.determinant = ldlt.vectorD().prod();

    auto add_ridge = [&] {
        result.inverted.diagonal().array() += policy.ridge;
        ++result.ridge_applications;
        ldlt.compute(result.inverted);
    };

    if (result.determinant <= policy.det_threshold)
    {
        add_ridge();
    }

    while (true)
    {
        const Vector pivots = ldlt.vectorD();
        if (ldlt.info() == Eigen::Success && pivots.minCoeff() > policy.pivot_tol)
        {
            result.inverse = ldlt.solve(identity);
            result.inverse = 0.5 * (result.inverse + result.inverse.transpose()).eval();
            const double residual = (result.inverted * result.inverse - identity).cwiseAbs().maxCoeff();
            if (result.inverse.allFinite() && residual < policy.residual_tol)
            {
                break;
            }
        }
        if (result.ridge_applications >= policy.max_ridge_applications)
        {
            throw Error(ErrorKind::SingularAfterRegularization,
                        "correlation matrix is numerically singular after " +
                            std::to_string(result.ridge_applications) + " ridge applications");
        }
        add_ridge();
    }
    result.regularized = result.ridge_applications > 0;
    return result;
}

} // namespace pacomp
