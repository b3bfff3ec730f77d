/**
 * @file test_support.hpp
 * @brief Generators and independent oracles shared by the test binaries.
 *
 * Nothing here calls into the composite formulas; the helpers recompute
 * quantities from raw data so they can serve as checks on the library.
 */

#pragma once

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pacomp/random.hpp"

namespace testing_support
{

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Random positive-definite correlation matrix from a Wishart-like draw.
inline Matrix random_correlation(int p, pacomp::Rng& rng)
{
    const int df = p + 1 + static_cast<int>(rng.uniform() * 2 * p);
    Matrix g(p, df);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < df; ++j)
            g(i, j) = rng.normal();
    // shared factor so correlations are not all near zero
    const double loading = rng.uniform();
    Vector common(df);
    for (int j = 0; j < df; ++j)
        common(j) = rng.normal();
    for (int i = 0; i < p; ++i)
        g.row(i) += loading * (rng.uniform() < 0.5 ? -1.0 : 1.0) * common.transpose();

    Matrix a = g * g.transpose();
    const Vector inv_sd = a.diagonal().array().rsqrt();
    Matrix r = inv_sd.asDiagonal() * a * inv_sd.asDiagonal();
    r = 0.5 * (r + r.transpose()).eval();
    r.diagonal().setOnes();
    return r;
}

inline std::vector<double> random_targets(int p, pacomp::Rng& rng)
{
    std::vector<double> t(static_cast<std::size_t>(p));
    for (auto& v : t)
        v = 0.1 + 4.9 * rng.uniform();
    return t;
}

/// Raw data with arbitrary location/scale per column and a correlation structure.
inline Matrix random_dataset(int n, int p, pacomp::Rng& rng)
{
    const Matrix r = random_correlation(p, rng);
    const Eigen::LLT<Matrix> llt(r);
    const Matrix lower = llt.matrixL();
    Matrix g(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j)
            g(i, j) = rng.normal();
    Matrix x = g * lower.transpose();
    for (int j = 0; j < p; ++j)
        x.col(j) = (x.col(j).array() * (0.5 + 10.0 * rng.uniform()) + 100.0 * (rng.uniform() - 0.5)).matrix();
    return x;
}

inline double sample_variance(const Vector& v)
{
    const double mean = v.mean();
    return (v.array() - mean).square().sum() / static_cast<double>(v.size() - 1);
}

/// Textbook Pearson correlation of two columns.
inline double pearson(const Vector& a, const Vector& b)
{
    const double ma = a.mean();
    const double mb = b.mean();
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
    {
        const double da = a(i) - ma;
        const double db = b(i) - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    return sab / std::sqrt(saa * sbb);
}

inline Matrix pearson_matrix(const Matrix& x)
{
    const Eigen::Index p = x.cols();
    Matrix r(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = 0; j < p; ++j)
            r(i, j) = pearson(x.col(i), x.col(j));
    return r;
}

class TempDir
{
public:
    TempDir()
    {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("pacomp_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace testing_support
