#include <doctest.h>

#include <cmath>
#include <vector>

#include "qlik/estimate.hpp"
#include "support.hpp"

using namespace qlik;

namespace {
Matrix one() { return Matrix::Ones(1, 1); }
Vector v1(double a) { return Vector::Constant(1, a); }

std::vector<double> eight_level()
{
    return {-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
}

std::vector<Code> simulate(const Quantizer& q, NoiseFamily f, double x, double psi, std::int64_t n, std::uint64_t seed)
{
    const Matrix w = NoiseModel(f, 1).sample_matrix(n, seed);
    std::vector<Code> out;
    for (Eigen::Index i = 0; i < w.cols(); ++i) out.push_back(q.quantize(v1((x + w(0, i)) / psi)));
    return out;
}

FitConfig location_only(double x0 = 0.0)
{
    FitConfig c;
    c.mode = FitMode::LocationOnly;
    c.x0 = v1(x0);
    c.scale0 = FixedScale{one()};
    return c;
}

FitConfig joint_scalar(double x0 = 0.0, double psi0 = 1.0)
{
    FitConfig c;
    c.mode = FitMode::LocationScalarScale;
    c.x0 = v1(x0);
    c.scale0 = ScalarScale{psi0};
    return c;
}

void check_monotone(const FitReport& r)
{
    for (std::size_t i = 1; i < r.trajectory.size(); ++i)
        REQUIRE(r.trajectory[i].value >= r.trajectory[i - 1].value - 1e-12);
}
}  // namespace

TEST_CASE("binomial sign data: closed-form MLE")
{
    std::vector<Code> codes(700, Code{1});
    codes.insert(codes.end(), 300, Code{0});
    const FitReport r = fit({one(), NoiseFamily::Gaussian, Quantizer(AdcBank(test::Thresholds{{0.0}}))}, codes, location_only());
    CHECK(r.converged);
    CHECK(r.x_hat[0] == doctest::Approx(test::phi_inverse(0.7)).epsilon(1e-7));
    CHECK(r.x_hat[0] == doctest::Approx(0.5244).epsilon(1e-4));
    check_monotone(r);
}

TEST_CASE("8-level ADC recovers x within 5 standard errors")
{
    const Quantizer q(AdcBank({eight_level()}));
    const auto codes = simulate(q, NoiseFamily::Gaussian, 0.7, 1.0, 1000, 2024);
    const FitReport r = fit({one(), NoiseFamily::Gaussian, q}, codes, location_only());
    CHECK(r.converged);
    REQUIRE(std::isfinite(r.std_errors[0]));
    CHECK(std::abs(r.x_hat[0] - 0.7) <= 5 * r.std_errors[0]);
    check_monotone(r);
}

TEST_CASE("solver optimum beats a brute-force grid")
{
    const Quantizer q(AdcBank({eight_level()}));
    for (NoiseFamily f : {NoiseFamily::Gaussian, NoiseFamily::Laplace, NoiseFamily::Logistic}) {
        const auto codes = simulate(q, f, -0.4, 1.0, 500, 31);
        const FitReport r = fit({one(), f, q}, codes, location_only());
        REQUIRE(r.converged);
        double best = -INFINITY;
        for (double x = r.x_hat[0] - 2.0; x <= r.x_hat[0] + 2.0; x += 1e-3)
            best = std::max(best, dataset_loglik(LocationScaleModel(one(), v1(x), FixedScale{one()}), NoiseModel(f, 1), q, codes).log_value);
        CHECK(best <= r.final_loglik + 1e-6);
        CHECK(best >= r.final_loglik - 1e-3);
    }
}

TEST_CASE("joint fit recovers psi = 2")
{
    const Quantizer q(AdcBank({eight_level()}));
    const auto codes = simulate(q, NoiseFamily::Gaussian, 0.7, 2.0, 2000, 55);
    const FitReport r = fit({one(), NoiseFamily::Gaussian, q}, codes, joint_scalar());
    CHECK(r.converged);
    const double psi = std::get<ScalarScale>(r.scale_hat).value;
    REQUIRE(std::isfinite(r.std_errors[1]));
    CHECK(std::abs(psi - 2.0) <= 5 * r.std_errors[1]);
    CHECK(std::abs(r.x_hat[0] - 0.7) <= 5 * r.std_errors[0]);
    check_monotone(r);
}

TEST_CASE("diagonal-scale fit in two dimensions")
{
    const Quantizer q(AdcBank(test::Thresholds{{-1.0, 0.0, 1.0}, {-0.5, 0.5}}));
    Matrix S(2, 1);
    S << 1.0, -0.5;
    Vector lam(2);
    lam << 1.5, 0.8;
    const LocationScaleModel truth(S, v1(0.4), DiagonalScale{lam});
    Matrix w = NoiseModel(NoiseFamily::Logistic, 2).sample_matrix(3000, 9);
    w.colwise() += truth.location();
    std::vector<Code> codes;
    for (Eigen::Index i = 0; i < w.cols(); ++i) codes.push_back(q.quantize(truth.solve_scale(Vector(w.col(i)))));
    FitConfig c;
    c.mode = FitMode::LocationDiagScale;
    c.x0 = v1(0.0);
    c.scale0 = DiagonalScale{Vector::Ones(2)};
    const FitReport r = fit({S, NoiseFamily::Logistic, q}, codes, c);
    CHECK(r.converged);
    const Vector got = std::get<DiagonalScale>(r.scale_hat).values;
    for (int j = 0; j < 2; ++j) CHECK(std::abs(got[j] - lam[j]) <= 5 * r.std_errors[1 + j]);
    CHECK(std::abs(r.x_hat[0] - 0.4) <= 5 * r.std_errors[0]);
}

TEST_CASE("all data in an unbounded end bin diverges")
{
    const std::vector<Code> codes(50, Code{1});
    FitConfig c = location_only();
    c.max_iters = 60;
    const FitReport r = fit({one(), NoiseFamily::Gaussian, Quantizer(AdcBank(test::Thresholds{{0.0}}))}, codes, c);
    CHECK_FALSE(r.converged);
    CHECK(r.diverging);
    CHECK(r.iterations == 60);
    CHECK(r.x_hat[0] > 3.0);
    check_monotone(r);
}

TEST_CASE("mode and scale must match")
{
    const Quantizer q(AdcBank(test::Thresholds{{0.0}}));
    const std::vector<Code> codes{Code{0}, Code{1}};
    FitConfig c = location_only();
    c.scale0 = ScalarScale{1.0};
    CHECK_THROWS_AS(fit({one(), NoiseFamily::Gaussian, q}, codes, c), std::invalid_argument);
    FitConfig d = joint_scalar();
    d.scale0 = FixedScale{one()};
    CHECK_THROWS_AS(fit({one(), NoiseFamily::Gaussian, q}, codes, d), std::invalid_argument);
    CHECK_THROWS_AS(fit({one(), NoiseFamily::Gaussian, Quantizer(HexagonalQuantizer(1.0))}, codes, location_only()),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_fit_mode("location_and_everything"), std::invalid_argument);
    CHECK(parse_fit_mode("location_diag_scale") == FitMode::LocationDiagScale);
}

TEST_CASE("zero-probability start is repaired")
{
    const Quantizer q(AdcBank({eight_level()}));
    const auto codes = simulate(q, NoiseFamily::Gaussian, 0.7, 1.0, 300, 8);
    // psi = 1e3 squeezes every bin to a sliver; x0 far from the data.
    const FitReport r = fit({one(), NoiseFamily::Gaussian, q}, codes, joint_scalar(50.0, 1e3));
    CHECK(r.converged);
    CHECK(r.initialization_attempts >= 1);
    CHECK(std::abs(r.x_hat[0] - 0.7) < 0.3);
}

TEST_CASE("bin representatives")
{
    const AdcBank adc({eight_level()});
    CHECK(bin_representative(adc, Code{3})[0] == doctest::Approx(-0.5));
    CHECK(bin_representative(adc, Code{0})[0] == doctest::Approx(-4.0));
    CHECK(bin_representative(adc, Code{7})[0] == doctest::Approx(4.0));
}

TEST_CASE("baseline on one bounded bin returns the midpoint")
{
    const Quantizer q(AdcBank(test::Thresholds{{0.0, 1.0}}));
    const std::vector<Code> codes(20, Code{1});
    const FitReport r = fit_ignoring_quantization({one(), NoiseFamily::Gaussian, q}, codes, location_only());
    CHECK(r.x_hat[0] == 0.5);
    CHECK(r.converged);
}

TEST_CASE("coarse quantization biases the baseline more than the exact fit")
{
    const Quantizer q(AdcBank(test::Thresholds{{0.0}}));
    const auto codes = simulate(q, NoiseFamily::Gaussian, 0.7, 1.0, 1000, 2024);
    const FitProblem p{one(), NoiseFamily::Gaussian, q};
    const FitReport exact = fit(p, codes, location_only());
    const FitReport naive = fit_ignoring_quantization(p, codes, location_only());
    CHECK(std::abs(naive.x_hat[0] - 0.7) > std::abs(exact.x_hat[0] - 0.7));
}

TEST_CASE("fine quantization: baseline and exact fit agree")
{
    std::vector<double> th;
    for (int i = -500; i <= 500; ++i) th.push_back(0.01 * i);
    const Quantizer q(AdcBank({th}));
    const auto codes = simulate(q, NoiseFamily::Gaussian, 0.7, 1.0, 1000, 12);
    const FitProblem p{one(), NoiseFamily::Gaussian, q};
    const FitReport exact = fit(p, codes, location_only());
    const FitReport naive = fit_ignoring_quantization(p, codes, location_only());
    CHECK(std::abs(naive.x_hat[0] - exact.x_hat[0]) <= 0.01);
}

TEST_CASE("baseline with a non-Gaussian family runs the continuous MLE")
{
    const Quantizer q(AdcBank({eight_level()}));
    const auto codes = simulate(q, NoiseFamily::Laplace, 0.3, 1.0, 500, 3);
    const FitReport r = fit_ignoring_quantization({one(), NoiseFamily::Laplace, q}, codes, joint_scalar());
    CHECK(std::isfinite(r.final_loglik));
    CHECK(std::abs(r.x_hat[0] - 0.3) < 0.5);
}

TEST_CASE("estimator spread shrinks like 1/sqrt(N)")
{
    const Quantizer q(AdcBank({eight_level()}));
    const FitProblem p{one(), NoiseFamily::Gaussian, q};
    std::vector<double> logn, logvar;
    for (std::int64_t n : {100, 1000, 10000}) {
        std::vector<double> est;
        for (std::uint64_t s = 0; s < 100; ++s) est.push_back(fit(p, simulate(q, NoiseFamily::Gaussian, 0.7, 1.0, n, 1000 + s), location_only()).x_hat[0]);
        double mean = 0.0;
        for (double e : est) mean += e / est.size();
        double var = 0.0;
        for (double e : est) var += (e - mean) * (e - mean) / (est.size() - 1);
        logn.push_back(std::log(static_cast<double>(n)));
        logvar.push_back(std::log(var));
    }
    const double slope = (logvar[2] - logvar[0]) / (logn[2] - logn[0]);
    CHECK(std::abs(slope + 1.0) <= 0.2);
}

TEST_CASE("projected ascent on a bounded concave quadratic")
{
    // max -(a - 3)^2 - (b + 2)^2 with b >= 0: optimum (3, 0).
    const SmoothObjective f = [](const Vector& t, Vector* g) {
        if (g) *g = Vector{{-2 * (t[0] - 3), -2 * (t[1] + 2)}};
        return -(t[0] - 3) * (t[0] - 3) - (t[1] + 2) * (t[1] + 2);
    };
    AscentOptions o;
    o.lower_bounds = Vector{{-INFINITY, 0.0}};
    const AscentResult r = projected_gradient_ascent(f, Vector{{0.0, 5.0}}, o);
    CHECK(r.stationary);
    CHECK(r.theta[0] == doctest::Approx(3.0));
    CHECK(r.theta[1] == 0.0);
    for (std::size_t i = 1; i < r.trajectory.size(); ++i) CHECK(r.trajectory[i].value >= r.trajectory[i - 1].value);
}
