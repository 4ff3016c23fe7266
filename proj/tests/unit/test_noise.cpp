#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qlik/noise.hpp"
#include "support.hpp"

using namespace qlik;

namespace {
const NoiseFamily kAll[] = {NoiseFamily::Gaussian, NoiseFamily::Laplace, NoiseFamily::Logistic};

Vector vec(std::initializer_list<double> v)
{
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}
}  // namespace

TEST_CASE("log_pdf at known points")
{
    CHECK(NoiseModel(NoiseFamily::Gaussian, 1).log_pdf(vec({0.0})) ==
          doctest::Approx(-0.5 * std::log(2 * std::numbers::pi)).epsilon(1e-14));
    CHECK(NoiseModel(NoiseFamily::Laplace, 1).log_pdf(vec({0.0})) == doctest::Approx(std::log(0.5)).epsilon(1e-14));
    CHECK(NoiseModel(NoiseFamily::Gaussian, 2).log_pdf(vec({1.0, -1.0})) ==
          doctest::Approx(-std::log(2 * std::numbers::pi) - 1.0).epsilon(1e-14));
    CHECK(NoiseModel(NoiseFamily::Logistic, 1).log_pdf(vec({0.0})) == doctest::Approx(std::log(0.25)).epsilon(1e-14));
}

TEST_CASE("log_pdf rejects a wrong length")
{
    CHECK_THROWS_AS(NoiseModel(NoiseFamily::Gaussian, 2).log_pdf(vec({1.0})), std::invalid_argument);
}

TEST_CASE("log_pdf is finite far out")
{
    for (NoiseFamily f : kAll)
        for (double t : {-1e3, -50.0, 0.0, 50.0, 1e3}) CHECK(std::isfinite(univariate::log_pdf(f, t)));
}

TEST_CASE("log_cdf symmetry point and sentinels")
{
    for (NoiseFamily f : kAll) {
        CHECK(univariate::log_cdf(f, 0.0) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
        CHECK(univariate::log_cdf(f, -INFINITY) == -INFINITY);
        CHECK(univariate::log_cdf(f, INFINITY) == 0.0);
        CHECK(univariate::log_sf(f, INFINITY) == -INFINITY);
    }
}

TEST_CASE("Gaussian log_cdf(-10) against tail quadrature")
{
    // Phi(-10) = phi(10) * int_0^inf exp(-10 s - s^2 / 2) ds
    const double tail = test::integrate([](double s) { return std::exp(-10.0 * s - 0.5 * s * s); }, 0.0, 30.0, 1e-15);
    const double oracle = std::log(test::phi_pdf(10.0)) + std::log(tail);
    const double got = univariate::log_cdf(NoiseFamily::Gaussian, -10.0);
    CHECK(std::abs(std::expm1(got - oracle)) <= 1e-10);
}

TEST_CASE("exp(log_cdf) matches integrated density on [-30, t]")
{
    for (NoiseFamily f : kAll) {
        for (double t = -10.0; t <= 10.0; t += 0.5) {
            const double mass = test::integrate([f](double s) { return std::exp(univariate::log_pdf(f, s)); }, -30.0, t);
            const double got = std::exp(univariate::log_cdf(f, t));
            INFO(to_string(f) << " t=" << t);
            CHECK(std::abs(got - mass) <= 1e-8 * got);
        }
    }
}

TEST_CASE("log_cdf is nondecreasing and finite in the tails")
{
    for (NoiseFamily f : kAll) {
        double prev = -INFINITY;
        for (double t = -45.0; t <= 45.0; t += 0.01) {
            const double v = univariate::log_cdf(f, t);
            REQUIRE(std::isfinite(v));
            REQUIRE(v >= prev);
            prev = v;
        }
        CHECK(univariate::log_cdf(f, 30.0) <= 0.0);
    }
}

TEST_CASE("quantile inverts cdf")
{
    for (NoiseFamily f : kAll)
        for (double p : {1e-12, 1e-4, 0.1, 0.5, 0.9, 1 - 1e-9})
            CHECK(univariate::cdf(f, univariate::quantile(f, p)) == doctest::Approx(p).epsilon(1e-9));
}

TEST_CASE("log_interval_probability across the line")
{
    for (NoiseFamily f : kAll) {
        for (auto [a, b] : {std::pair{-1.0, 1.0}, std::pair{2.0, 3.0}, std::pair{-3.0, -2.0}}) {
            const double direct = univariate::cdf(f, b) - univariate::cdf(f, a);
            CHECK(std::exp(univariate::log_interval_probability(f, a, b)) == doctest::Approx(direct).epsilon(1e-12));
        }
        // Far right tail keeps relative precision.
        const double lp = univariate::log_interval_probability(f, 40.0, 41.0);
        CHECK(std::isfinite(lp));
        const double s40 = univariate::log_sf(f, 40.0), s41 = univariate::log_sf(f, 41.0);
        CHECK(lp == doctest::Approx(s40 + std::log1p(-std::exp(s41 - s40))).epsilon(1e-12));
    }
}

TEST_CASE("Gaussian sample mean")
{
    const auto s = NoiseModel(NoiseFamily::Gaussian, 1).sample_matrix(1000000, 3);
    CHECK(std::abs(s.mean()) <= 4.0 / std::sqrt(1e6));
}

TEST_CASE("Laplace sample variance")
{
    const auto s = NoiseModel(NoiseFamily::Laplace, 1).sample_matrix(1000000, 5);
    const double mean = s.mean();
    const double var = (s.array() - mean).square().sum() / (s.size() - 1);
    CHECK(std::abs(var - 2.0) <= 0.05 * 2.0);
}

TEST_CASE("sampling is reproducible")
{
    for (NoiseFamily f : kAll) {
        const NoiseModel m(f, 3);
        const auto a = m.sample(100, 42);
        const auto b = m.sample(100, 42);
        REQUIRE(a.size() == 100);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
        CHECK(m.sample(100, 43)[0] != a[0]);
    }
}

TEST_CASE("sampler passes Kolmogorov-Smirnov at 1e5")
{
    for (NoiseFamily f : kAll) {
        const Matrix s = NoiseModel(f, 1).sample_matrix(100000, 11);
        std::vector<double> v(s.data(), s.data() + s.size());
        std::sort(v.begin(), v.end());
        const double n = static_cast<double>(v.size());
        double d = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double F = univariate::cdf(f, v[i]);
            d = std::max({d, (i + 1) / n - F, F - i / n});
        }
        INFO(to_string(f));
        CHECK(d * std::sqrt(n) < 1.9495);  // 99.9% critical value
    }
}

TEST_CASE("shipped families pass the logconcavity check")
{
    for (NoiseFamily f : kAll) {
        const LogConcavityReport r = check_logconcavity(NoiseModel(f, 2), 10000, 9);
        CHECK(r.trials == 10000);
        CHECK(r.violations == 0);
    }
}

TEST_CASE("logistic log-density has nonpositive second differences")
{
    const double h = 1e-3;
    for (double t = -20.0; t <= 20.0; t += 0.01) {
        const double d2 = univariate::log_pdf(NoiseFamily::Logistic, t + h) - 2 * univariate::log_pdf(NoiseFamily::Logistic, t) +
                          univariate::log_pdf(NoiseFamily::Logistic, t - h);
        REQUIRE(d2 <= 1e-12);
    }
}

TEST_CASE("check_logconcavity flags exp(-|t|^0.5)")
{
    const LogConcavityReport r =
        check_logconcavity([](const Vector& w) { return -std::sqrt(std::abs(w[0])); }, 1, 10000, 1);
    CHECK(r.violations > 0);
    CHECK(r.worst_gap < -1e-3);
}

TEST_CASE("family names")
{
    CHECK(parse_noise_family("gaussian") == NoiseFamily::Gaussian);
    CHECK(parse_noise_family("laplace") == NoiseFamily::Laplace);
    CHECK(parse_noise_family("logistic") == NoiseFamily::Logistic);
    CHECK_THROWS_AS(parse_noise_family("cauchy"), std::invalid_argument);
    CHECK(to_string(NoiseFamily::Logistic) == "logistic");
}
