#include <cmath>
#include <limits>

#include "doctest.h"
#include "pacomp/composite.hpp"
#include "pacomp/errors.hpp"
#include "test_support.hpp"

using namespace pacomp;

namespace
{

Matrix three_indicator_r()
{
    Matrix r(3, 3);
    r << 1.0, 0.8, 0.2, //
        0.8, 1.0, 0.2,   //
        0.2, 0.2, 1.0;
    return r;
}

template <typename F>
ErrorKind kind_of(F&& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.kind();
    }
    FAIL("expected pacomp::Error");
    return ErrorKind::UsageError;
}

} // namespace

TEST_CASE("standardize centers and scales with the n-1 divisor")
{
    Matrix x(3, 2);
    x << 1, 10, //
        2, 20,  //
        3, 60;
    const StandardizedMatrix z = standardize(IndicatorMatrix(x));
    CHECK(z.values()(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(z.values()(1, 0) == doctest::Approx(0.0));
    CHECK(z.values()(2, 0) == doctest::Approx(1.0).epsilon(1e-15));
    for (Eigen::Index j = 0; j < 2; ++j)
    {
        CHECK(std::abs(z.values().col(j).mean()) < 1e-12);
        CHECK(std::abs(testing_support::sample_variance(z.values().col(j)) - 1.0) < 1e-12);
    }
}

TEST_CASE("standardize is idempotent")
{
    pacomp::Rng rng(3);
    const Matrix x = testing_support::random_dataset(50, 4, rng);
    const StandardizedMatrix once = standardize(IndicatorMatrix(x));
    const StandardizedMatrix twice = standardize(IndicatorMatrix(once.values()));
    CHECK((once.values() - twice.values()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("standardize rejects constant columns and non-finite input")
{
    Matrix x(3, 2);
    x << 1, 5, //
        2, 5,  //
        3, 5;
    try
    {
        standardize(IndicatorMatrix(x));
        FAIL("constant column accepted");
    }
    catch (const Error& e)
    {
        CHECK(e.kind() == ErrorKind::ZeroVarianceColumn);
        REQUIRE(e.index.has_value());
        CHECK(*e.index == 1);
    }

    x(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK(kind_of([&] { IndicatorMatrix{x}; }) == ErrorKind::NonFiniteInput);
    x(1, 0) = std::numeric_limits<double>::infinity();
    CHECK(kind_of([&] { IndicatorMatrix{x}; }) == ErrorKind::NonFiniteInput);
    CHECK(kind_of([] { IndicatorMatrix{Matrix::Ones(1, 3)}; }) == ErrorKind::InvalidShape);
}

TEST_CASE("sample correlation of identical and orthogonal columns")
{
    Matrix same(4, 2);
    same << 1, 1, //
        2, 2,     //
        4, 4,     //
        7, 7;
    const CorrelationMatrix r = sample_correlation(standardize(IndicatorMatrix(same)));
    CHECK(r.values()(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.values()(0, 1) <= 1.0);

    Matrix orth(4, 2);
    orth << 1, 1, //
        -1, 1,    //
        1, -1,    //
        -1, -1;
    const CorrelationMatrix i = sample_correlation(standardize(IndicatorMatrix(orth)));
    CHECK((i.values() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sample correlation matches a direct Pearson computation")
{
    pacomp::Rng rng(11);
    const Matrix x = testing_support::random_dataset(80, 5, rng);
    const CorrelationMatrix r = sample_correlation(standardize(IndicatorMatrix(x)));
    CHECK((r.values() - testing_support::pearson_matrix(x)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("CorrelationMatrix validates its invariants")
{
    Matrix bad = Matrix::Identity(3, 3);
    bad(0, 0) = 1.1;
    CHECK(kind_of([&] { CorrelationMatrix{bad}; }) == ErrorKind::InvalidCorrelation);
    bad = Matrix::Identity(3, 3);
    bad(0, 1) = 0.5;
    CHECK(kind_of([&] { CorrelationMatrix{bad}; }) == ErrorKind::InvalidCorrelation);
    bad(1, 0) = 0.5;
    CHECK_NOTHROW(CorrelationMatrix{bad});
    bad(0, 1) = bad(1, 0) = 1.5;
    CHECK(kind_of([&] { CorrelationMatrix{bad}; }) == ErrorKind::InvalidCorrelation);
}

TEST_CASE("weighted_sum_variance")
{
    Matrix s(2, 2);
    s << 1, 0.5, //
        0.5, 1;
    CHECK(weighted_sum_variance(Vector::Ones(2), s) == doctest::Approx(3.0));
    CHECK(weighted_sum_variance(Vector::Ones(7), Matrix::Identity(7, 7)) == doctest::Approx(7.0));

    // 1 + 4 + 2*1*2*0.3; Monte Carlo oracle (tests/oracles/closed_forms.py) gives 6.204 at 2e6 draws
    Matrix s2(2, 2);
    s2 << 1, 0.3, //
        0.3, 1;
    Vector w(2);
    w << 1, 2;
    CHECK(weighted_sum_variance(w, s2) == doctest::Approx(6.2).epsilon(1e-14));

    CHECK(kind_of([&] { weighted_sum_variance(Vector::Ones(3), s); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("WeightSpec derivation rule")
{
    const WeightSpec spec = WeightSpec::from_variance_targets({1, 1, 1, 2, 2});
    for (Eigen::Index i = 0; i < spec.size(); ++i)
    {
        const double t = spec.variance_targets()(i);
        CHECK(spec.weights()(i) == std::sqrt(t));
        CHECK(std::abs(spec.weights()(i) * spec.weights()(i) - t) <= 4 * std::numeric_limits<double>::epsilon() * t);
    }
    const WeightSpec raw = WeightSpec::from_weights({1, 2, 0.5});
    CHECK(raw.variance_targets()(1) == 4.0);
    CHECK(raw.variance_targets()(2) == 0.25);

    CHECK(kind_of([] { WeightSpec::from_variance_targets({1, 0}); }) == ErrorKind::InvalidWeights);
    CHECK(kind_of([] { WeightSpec::from_variance_targets({1, -2}); }) == ErrorKind::InvalidWeights);
    CHECK(kind_of([] { WeightSpec::from_weights({1, -1, 1}); }) == ErrorKind::InvalidWeights);
    CHECK(kind_of([] { WeightSpec::from_weights({1, std::nan("")}); }) == ErrorKind::InvalidWeights);
}

TEST_CASE("analytic composite on identity R gives 1/sqrt(p)")
{
    const CorrelationMatrix r(Matrix::Identity(4, 4));
    const CompositeResult res = analytic_population(r, WeightSpec::unit(4));
    for (Eigen::Index i = 0; i < 4; ++i)
        CHECK(res.indicator_correlations(i) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(res.kind == CompositeKind::Analytic);
}

TEST_CASE("analytic correlations are unequal under unequal inter-correlations")
{
    // R 1 / sqrt(1'R1), 1'R1 = 5.4; values from tests/oracles/closed_forms.py
    const CompositeResult res = analytic_population(CorrelationMatrix(three_indicator_r()), WeightSpec::unit(3));
    CHECK(res.indicator_correlations(0) == doctest::Approx(0.86066297).epsilon(1e-8));
    CHECK(res.indicator_correlations(1) == doctest::Approx(0.86066297).epsilon(1e-8));
    CHECK(res.indicator_correlations(2) == doctest::Approx(0.60246408).epsilon(1e-8));
}

TEST_CASE("purely analytic correlations are equal under unit weights")
{
    // 1'R^-1 1 = 75/43 for this R
    const CompositeResult res =
        purely_analytic_population(CorrelationMatrix(three_indicator_r()), WeightSpec::unit(3));
    const double expected = std::sqrt(43.0 / 75.0);
    for (Eigen::Index i = 0; i < 3; ++i)
        CHECK(res.indicator_correlations(i) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(res.indicator_correlations(0) == doctest::Approx(0.7571877794400366).epsilon(1e-12));
    CHECK(res.relative_contributions.maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(res.regularized);
}

TEST_CASE("identity R: analytic and purely analytic coincide")
{
    pacomp::Rng rng(5);
    Matrix g(40, 3);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < 3; ++j)
            g(i, j) = rng.normal();
    const StandardizedMatrix z = standardize(IndicatorMatrix(g));
    const CorrelationMatrix identity(Matrix::Identity(3, 3));
    const WeightSpec spec = WeightSpec::from_variance_targets({1, 3, 0.5});
    const CompositeResult a = analytic_composite(z, identity, spec);
    const CompositeResult b = purely_analytic_composite(z, identity, spec);
    CHECK((a.scores - b.scores).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.indicator_correlations - b.indicator_correlations).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("composites on sample R have unit variance and match empirical correlations")
{
    pacomp::Rng rng(21);
    const Matrix x = testing_support::random_dataset(120, 5, rng);
    const StandardizedMatrix z = standardize(IndicatorMatrix(x));
    const CorrelationMatrix r = sample_correlation(z);
    const WeightSpec spec = WeightSpec::from_weights({1, 1, 1, 2, 2});

    for (const CompositeResult& res : {analytic_composite(z, r, spec), purely_analytic_composite(z, r, spec)})
    {
        REQUIRE_FALSE(res.regularized);
        CHECK(std::abs(testing_support::sample_variance(res.scores) - 1.0) < 1e-10);
        for (Eigen::Index i = 0; i < 5; ++i)
        {
            const double empirical = testing_support::pearson(z.values().col(i), res.scores);
            CHECK(std::abs(empirical - res.indicator_correlations(i)) < 1e-10);
        }
    }
}

TEST_CASE("degenerate composite variance is rejected")
{
    Matrix r(2, 2);
    r << 1, -1, //
        -1, 1;
    CHECK(kind_of([&] { analytic_population(CorrelationMatrix(r), WeightSpec::unit(2)); }) ==
          ErrorKind::DegenerateVariance);
}

TEST_CASE("dimension mismatches are reported")
{
    const CorrelationMatrix r(Matrix::Identity(3, 3));
    CHECK(kind_of([&] { analytic_population(r, WeightSpec::unit(2)); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { purely_analytic_population(r, WeightSpec::unit(4)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("contribution_report squares and min-normalizes")
{
    Vector c(2);
    c << 0.5, 0.5;
    auto rows = contribution_report(CompositeResult::from_correlations(CompositeKind::Analytic, c));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].contribution == 0.25);
    CHECK(rows[1].relative_contribution == 1.0);

    c << 0.3, 0.6;
    rows = contribution_report(CompositeResult::from_correlations(CompositeKind::Analytic, c));
    CHECK(rows[0].contribution == doctest::Approx(0.09));
    CHECK(rows[1].contribution == doctest::Approx(0.36));
    CHECK(rows[0].relative_contribution == 1.0);
    CHECK(rows[1].relative_contribution == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(rows[1].indicator == 1);
}

TEST_CASE("purely analytic report realizes the a priori weights")
{
    pacomp::Rng rng(8);
    const CorrelationMatrix r(testing_support::random_correlation(5, rng));
    const CompositeResult res = purely_analytic_population(r, WeightSpec::from_weights({1, 1, 1, 2, 2}));
    const double expected[] = {1, 1, 1, 4, 4};
    const auto rows = contribution_report(res);
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(std::abs(rows[i].relative_contribution - expected[i]) < 1e-8);
    CHECK(res.relative_contributions.minCoeff() == 1.0);
}
