#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "qlik/likelihood.hpp"
#include "support.hpp"

using namespace qlik;

namespace {
Matrix one() { return Matrix::Ones(1, 1); }
Vector v1(double a) { return Vector::Constant(1, a); }

const Quantizer& sign_quantizer()
{
    static const Quantizer q(AdcBank(test::Thresholds{{0.0}}));
    return q;
}
}  // namespace

TEST_CASE("continuous log-likelihood examples")
{
    const NoiseModel g(NoiseFamily::Gaussian, 1);
    CHECK(continuous_loglik(LocationScaleModel(one(), v1(0), ScalarScale{1.0}), g, v1(0)) ==
          doctest::Approx(-0.5 * std::log(2 * std::numbers::pi)).epsilon(1e-14));
    CHECK(continuous_loglik(LocationScaleModel(one(), v1(0), ScalarScale{2.0}), g, v1(1)) ==
          doctest::Approx(std::log(2.0) - 0.5 * std::log(2 * std::numbers::pi) - 2.0).epsilon(1e-14));
}

TEST_CASE("continuous log-likelihood against a direct density formula")
{
    test::TestRng rng(1);
    for (int t = 0; t < 20; ++t) {
        const Matrix S = rng.normal_matrix(3, 2);
        const Vector x = rng.normal_vector(2), y = rng.normal_vector(3);
        const Matrix psi = rng.pd_matrix(3);
        const Vector w = psi * y - S * x;
        double direct = std::log(psi.determinant());
        for (int j = 0; j < 3; ++j) direct += std::log(test::phi_pdf(w[j]));
        const LocationScaleModel model(S, x, FixedScale{psi});
        CHECK(continuous_loglik(model, NoiseModel(NoiseFamily::Gaussian, 3), y) == doctest::Approx(direct).epsilon(1e-10));
        CHECK(continuous_loglik_without_jacobian(model, NoiseModel(NoiseFamily::Gaussian, 3), y) ==
              doctest::Approx(direct - std::log(psi.determinant())).epsilon(1e-10));
    }
}

TEST_CASE("model validation")
{
    Matrix notpd(2, 2);
    notpd << 1, 2, 2, 1;
    CHECK_THROWS_AS(LocationScaleModel(Matrix::Identity(2, 2), Vector::Zero(2), FixedScale{notpd}), std::invalid_argument);
    CHECK_THROWS_AS(LocationScaleModel(one(), v1(0), ScalarScale{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(LocationScaleModel(one(), v1(0), DiagonalScale{Vector::Ones(2)}), std::invalid_argument);
    CHECK_THROWS_AS(continuous_loglik(LocationScaleModel(one(), v1(0), ScalarScale{1.0}), NoiseModel(NoiseFamily::Gaussian, 2),
                                      Vector::Zero(2)),
                    std::invalid_argument);
}

TEST_CASE("sign quantizer: exact likelihood is log Phi(x)")
{
    const NoiseModel g(NoiseFamily::Gaussian, 1);
    CHECK(quantized_loglik(LocationScaleModel(one(), v1(0), ScalarScale{1.0}), g, sign_quantizer(), Code{1}).log_value ==
          doctest::Approx(std::log(0.5)).epsilon(1e-15));
    for (int i = 0; i <= 60; ++i) {
        const double x = -3.0 + 0.1 * i;
        const LikelihoodValue v = quantized_loglik(LocationScaleModel(one(), v1(x), ScalarScale{1.0}), g, sign_quantizer(), Code{1});
        CHECK(v.method == LikelihoodMethod::ExactBox);
        CHECK(v.std_error == 0.0);
        CHECK(std::abs(v.log_value - std::log(test::phi_cdf(x))) <= 1e-12);
        CHECK(std::abs(v.log_value - univariate::log_cdf(NoiseFamily::Gaussian, x)) <= 1e-15);
    }
}

TEST_CASE("sign quantizer: Monte Carlo agrees with the exact value")
{
    const NoiseModel g(NoiseFamily::Gaussian, 1);
    for (double x : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
        const LocationScaleModel m(one(), v1(x), ScalarScale{1.0});
        const LikelihoodValue mc = quantized_loglik(m, g, sign_quantizer(), Code{1}, McOptions{1000000, 17});
        CHECK(mc.method == LikelihoodMethod::MonteCarlo);
        CHECK(mc.std_error > 0.0);
        CHECK(std::abs(mc.log_value - std::log(test::phi_cdf(x))) <= 4.0 * mc.std_error);
    }
}

TEST_CASE("bin [0, 1) with psi = 2")
{
    const Quantizer q(AdcBank(test::Thresholds{{0.0, 1.0}}));
    const LocationScaleModel m(one(), v1(0), ScalarScale{2.0});
    const NoiseModel g(NoiseFamily::Gaussian, 1);
    const double oracle = std::log(test::phi_cdf(2.0) - 0.5);
    const LikelihoodValue exact = quantized_loglik(m, g, q, Code{1});
    CHECK(exact.log_value == doctest::Approx(oracle).epsilon(1e-12));
    const LikelihoodValue mc = quantized_loglik(m, g, q, Code{1}, McOptions{1000000, 4});
    CHECK(std::abs(mc.log_value - oracle) <= 4.0 * mc.std_error);
}

TEST_CASE("Monte Carlo on a hexagon with a full scale matrix")
{
    Matrix psi(2, 2);
    psi << 1.0, 0.3, 0.3, 1.5;
    const LocationScaleModel m(Matrix::Identity(2, 2), Vector::Zero(2), FixedScale{psi});
    const Quantizer hex(HexagonalQuantizer(1.0));
    const NoiseModel g(NoiseFamily::Gaussian, 2);
    CHECK_THROWS_WITH_AS(quantized_loglik(m, g, hex, Code{0, 0}), doctest::Contains("Monte Carlo"), std::invalid_argument);
    const LikelihoodValue mc = quantized_loglik(m, g, hex, Code{0, 0}, McOptions{100000, 1});
    CHECK(mc.log_value < 0.0);
    CHECK(mc.log_value > std::log(0.1));
    CHECK_THROWS_AS(quantized_loglik(m, g, hex, Code{0, 0}, McOptions{99, 1}), std::invalid_argument);
    // Non-diagonal scale on a box also needs Monte Carlo.
    CHECK_THROWS_AS(quantized_loglik(m, g, Quantizer(AdcBank(test::Thresholds{{0.0}, {0.0}})), Code{1, 1}), std::invalid_argument);
}

TEST_CASE("Monte Carlo with no hits underflows to -inf")
{
    const Quantizer q(AdcBank(test::Thresholds{{40.0}}));
    const LocationScaleModel m(one(), v1(0), ScalarScale{1.0});
    const LikelihoodValue v = quantized_loglik(m, NoiseModel(NoiseFamily::Gaussian, 1), q, Code{1}, McOptions{1000, 1});
    CHECK(v.underflow);
    CHECK(v.log_value == -INFINITY);
    const std::vector<Code> codes{Code{0}, Code{1}, Code{0}};
    CHECK(dataset_loglik(m, NoiseModel(NoiseFamily::Gaussian, 1), q, codes, McOptions{1000, 1}).log_value == -INFINITY);
}

TEST_CASE("far-tail bins stay finite on the exact path")
{
    const Quantizer q(AdcBank(test::Thresholds{{40.0}}));
    const LocationScaleModel m(one(), v1(0), ScalarScale{1.0});
    for (NoiseFamily f : {NoiseFamily::Gaussian, NoiseFamily::Laplace, NoiseFamily::Logistic}) {
        const double v = quantized_loglik(m, NoiseModel(f, 1), q, Code{1}).log_value;
        CHECK(std::isfinite(v));
        CHECK(v < -30.0);
    }
}

TEST_CASE("dataset log-likelihood is additive")
{
    const Quantizer q(AdcBank(test::Thresholds{{-1.0, 0.0, 1.5}, {0.0}}));
    Matrix S(2, 2);
    S << 1.0, 0.2, -0.3, 0.8;
    Vector x(2);
    x << 0.4, -0.2;
    Vector d(2);
    d << 1.2, 0.7;
    const LocationScaleModel m(S, x, DiagonalScale{d});
    const NoiseModel noise(NoiseFamily::Logistic, 2);
    const double single = quantized_loglik(m, noise, q, Code{2, 1}).log_value;
    const std::vector<Code> twice{Code{2, 1}, Code{2, 1}};
    CHECK(dataset_loglik(m, noise, q, twice).log_value == 2.0 * single);

    Matrix w = noise.sample_matrix(100, 8);
    w.colwise() += m.location();
    std::vector<Code> codes;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < w.cols(); ++i) {
        codes.push_back(q.quantize(m.solve_scale(Vector(w.col(i)))));
        sum += quantized_loglik(m, noise, q, codes.back()).log_value;
    }
    CHECK(std::abs(dataset_loglik(m, noise, q, codes).log_value - sum) <= 1e-12);
    CHECK_THROWS_AS(dataset_loglik(m, noise, q, std::vector<Code>{}), std::invalid_argument);
}

TEST_CASE("dataset Monte Carlo uses seed XOR index")
{
    const LocationScaleModel m(one(), v1(0.3), ScalarScale{1.0});
    const NoiseModel g(NoiseFamily::Gaussian, 1);
    const std::vector<Code> codes{Code{1}, Code{0}, Code{1}};
    const LikelihoodValue total = dataset_loglik(m, g, sign_quantizer(), codes, McOptions{1000, 77});
    double sum = 0.0, var = 0.0;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const LikelihoodValue v = quantized_loglik(m, g, sign_quantizer(), codes[i], McOptions{1000, 77 ^ i});
        sum += v.log_value;
        var += v.std_error * v.std_error;
    }
    CHECK(total.log_value == sum);
    CHECK(total.std_error == doctest::Approx(std::sqrt(var)));
}

TEST_CASE("bin probabilities sum to one")
{
    test::TestRng rng(3);
    for (NoiseFamily f : {NoiseFamily::Gaussian, NoiseFamily::Laplace, NoiseFamily::Logistic}) {
        for (int t = 0; t < 20; ++t) {
            const Quantizer q(AdcBank(test::Thresholds{{-1.3, -0.2, 0.4, 2.0}}));
            const LocationScaleModel m(one(), v1(rng.normal()), ScalarScale{rng.uniform(0.2, 4.0)});
            double total = 0.0;
            for (std::int64_t k = 0; k < 5; ++k) total += std::exp(quantized_loglik(m, NoiseModel(f, 1), q, Code{k}).log_value);
            CHECK(std::abs(total - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("gradient matches central differences")
{
    test::TestRng rng(4);
    const double h = 1e-5;
    for (NoiseFamily f : {NoiseFamily::Gaussian, NoiseFamily::Laplace, NoiseFamily::Logistic}) {
        for (int t = 0; t < 30; ++t) {
            const Quantizer q(AdcBank(test::Thresholds{{-1.0, 0.5}, {0.0, 1.0, 2.0}}));
            const Matrix S = rng.normal_matrix(2, 3);
            const Vector x = rng.normal_vector(3);
            Vector d(2);
            d << rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0);
            const LocationScaleModel m(S, x, DiagonalScale{d});
            const Code z{rng.integer(0, 2), rng.integer(0, 3)};
            const NoiseModel noise(f, 2);
            auto ll = [&](const LocationScaleModel& mm) { return quantized_loglik(mm, noise, q, z).log_value; };
            const LoglikGradient g = grad_quantized_loglik(m, noise, q, z);
            for (int k = 0; k < 3; ++k) {
                Vector xp = x, xm = x;
                xp[k] += h;
                xm[k] -= h;
                const double fd = (ll(m.with_location(xp)) - ll(m.with_location(xm))) / (2 * h);
                CHECK(std::abs(fd - g.location[k]) <= 1e-5 * std::max(1.0, std::abs(g.location[k])));
            }
            for (int k = 0; k < 2; ++k) {
                Vector dp = d, dm = d;
                dp[k] += h;
                dm[k] -= h;
                const double fd = (ll(m.with_scale(DiagonalScale{dp})) - ll(m.with_scale(DiagonalScale{dm}))) / (2 * h);
                CHECK(std::abs(fd - g.scale[k]) <= 1e-5 * std::max(1.0, std::abs(g.scale[k])));
            }
        }
    }
}

TEST_CASE("gradient shapes by scale kind and the sign of d/dx")
{
    const NoiseModel g(NoiseFamily::Gaussian, 1);
    // Moving x right raises P[y >= 0].
    const LoglikGradient up = grad_quantized_loglik(LocationScaleModel(one(), v1(0), ScalarScale{1.0}), g, sign_quantizer(), Code{1});
    CHECK(up.location[0] == doctest::Approx(test::phi_pdf(0) / 0.5));
    CHECK(up.scale.size() == 1);
    CHECK(grad_quantized_loglik(LocationScaleModel(one(), v1(0), FixedScale{one()}), g, sign_quantizer(), Code{1}).scale.size() == 0);
    CHECK(grad_quantized_loglik(LocationScaleModel(one(), v1(0), DiagonalScale{v1(1)}), g, sign_quantizer(), Code{1}).scale.size() == 1);
}
