#include "qlik/noise.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

#include "qlik/random.hpp"

namespace qlik {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * log(2 pi)
constexpr double kLn2 = std::numbers::ln2;

// log(1 - exp(x)) for x <= 0.
double log1mexp(double x)
{
    if (x > -kLn2) return std::log(-std::expm1(x));
    return std::log1p(-std::exp(x));
}

double gaussian_log_cdf(double t)
{
    if (t == -kInf) return -kInf;
    if (t == kInf) return 0.0;
    if (t < -30.0) {
        // Asymptotic series of the Mills ratio; truncation error below
        // 1e-16 relative for t < -30.
        const double r = 1.0 / (t * t);
        const double series =
            1.0 + r * (-1.0 + r * (3.0 + r * (-15.0 + r * (105.0 + r * (-945.0 + r * 10395.0)))));
        return -0.5 * t * t - std::log(-t) - kHalfLog2Pi + std::log(series);
    }
    if (t < 0.0) return std::log(0.5 * std::erfc(-t / std::numbers::sqrt2));
    return std::log1p(-0.5 * std::erfc(t / std::numbers::sqrt2));
}

double laplace_log_cdf(double t)
{
    if (t == -kInf) return -kInf;
    if (t == kInf) return 0.0;
    if (t < 0.0) return t - kLn2;
    return std::log1p(-0.5 * std::exp(-t));
}

double logistic_log_cdf(double t)
{
    if (t == -kInf) return -kInf;
    if (t == kInf) return 0.0;
    if (t >= 0.0) return -std::log1p(std::exp(-t));
    return t - std::log1p(std::exp(t));
}

}  // namespace

std::string_view to_string(NoiseFamily family)
{
    switch (family) {
    case NoiseFamily::Gaussian: return "gaussian";
    case NoiseFamily::Laplace: return "laplace";
    case NoiseFamily::Logistic: return "logistic";
    }
    return "unknown";
}

NoiseFamily parse_noise_family(std::string_view name)
{
    if (name == "gaussian") return NoiseFamily::Gaussian;
    if (name == "laplace") return NoiseFamily::Laplace;
    if (name == "logistic") return NoiseFamily::Logistic;
    throw std::invalid_argument("unknown noise family '" + std::string(name) +
                                "' (expected gaussian, laplace or logistic)");
}

namespace univariate {

double log_pdf(NoiseFamily family, double t)
{
    switch (family) {
    case NoiseFamily::Gaussian: return -0.5 * t * t - kHalfLog2Pi;
    case NoiseFamily::Laplace: return -std::abs(t) - kLn2;
    case NoiseFamily::Logistic: {
        const double a = std::abs(t);
        return -a - 2.0 * std::log1p(std::exp(-a));
    }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double pdf(NoiseFamily family, double t)
{
    if (std::isinf(t)) return 0.0;
    return std::exp(log_pdf(family, t));
}

double log_cdf(NoiseFamily family, double t)
{
    switch (family) {
    case NoiseFamily::Gaussian: return gaussian_log_cdf(t);
    case NoiseFamily::Laplace: return laplace_log_cdf(t);
    case NoiseFamily::Logistic: return logistic_log_cdf(t);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double log_sf(NoiseFamily family, double t) { return log_cdf(family, -t); }

double cdf(NoiseFamily family, double t) { return std::exp(log_cdf(family, t)); }

double quantile(NoiseFamily family, double p)
{
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("quantile: p outside [0, 1]");
    if (p == 0.0) return -kInf;
    if (p == 1.0) return kInf;
    switch (family) {
    case NoiseFamily::Gaussian:
        return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
    case NoiseFamily::Laplace:
        return p < 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
    case NoiseFamily::Logistic:
        return std::log(p) - std::log1p(-p);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double score(NoiseFamily family, double t)
{
    switch (family) {
    case NoiseFamily::Gaussian: return -t;
    case NoiseFamily::Laplace: return t > 0.0 ? -1.0 : (t < 0.0 ? 1.0 : 0.0);
    case NoiseFamily::Logistic: return -std::tanh(0.5 * t);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double log_interval_probability(NoiseFamily family, double lower, double upper)
{
    if (!(lower < upper)) return -kInf;
    if (lower > 0.0) {
        // Both edges in the right tail: difference of survival functions.
        const double hi = log_sf(family, lower);
        return hi + log1mexp(log_sf(family, upper) - hi);
    }
    const double hi = log_cdf(family, upper);
    return hi + log1mexp(log_cdf(family, lower) - hi);
}

}  // namespace univariate

NoiseModel::NoiseModel(NoiseFamily family, int dimension)
    : family_(family), dimension_(dimension)
{
    if (dimension < 1) throw std::invalid_argument("NoiseModel: dimension must be positive");
}

double NoiseModel::log_pdf(const Vector& w) const
{
    if (w.size() != dimension_)
        throw std::invalid_argument("NoiseModel::log_pdf: dimension mismatch");
    double total = 0.0;
    for (Eigen::Index j = 0; j < w.size(); ++j) total += univariate::log_pdf(family_, w[j]);
    return total;
}

Matrix NoiseModel::sample_matrix(std::int64_t count, std::uint64_t seed) const
{
    if (count < 1) throw std::invalid_argument("NoiseModel::sample: count must be >= 1");
    Rng rng = make_rng(seed);
    Matrix out(dimension_, count);
    for (std::int64_t i = 0; i < count; ++i)
        for (int j = 0; j < dimension_; ++j)
            out(j, i) = univariate::quantile(family_, uniform_open01(rng));
    return out;
}

std::vector<Vector> NoiseModel::sample(std::int64_t count, std::uint64_t seed) const
{
    const Matrix m = sample_matrix(count, seed);
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (Eigen::Index i = 0; i < m.cols(); ++i) out.emplace_back(m.col(i));
    return out;
}

LogConcavityReport check_logconcavity(const LogDensity& log_density, int dimension,
                                      std::int64_t trials, std::uint64_t seed, double box)
{
    if (trials < 1) throw std::invalid_argument("check_logconcavity: trials must be >= 1");
    constexpr double kSlack = 1e-9;
    Rng rng = make_rng(seed);
    LogConcavityReport report;
    report.trials = trials;
    report.worst_gap = kInf;
    Vector w0(dimension), w1(dimension);
    for (std::int64_t t = 0; t < trials; ++t) {
        for (int j = 0; j < dimension; ++j) {
            w0[j] = uniform_in(rng, -box, box);
            w1[j] = uniform_in(rng, -box, box);
        }
        const double alpha = uniform_open01(rng);
        const Vector wa = alpha * w1 + (1.0 - alpha) * w0;
        const double gap =
            log_density(wa) - (alpha * log_density(w1) + (1.0 - alpha) * log_density(w0));
        report.worst_gap = std::min(report.worst_gap, gap);
        if (gap < -kSlack) ++report.violations;
    }
    return report;
}

LogConcavityReport check_logconcavity(const NoiseModel& noise, std::int64_t trials,
                                      std::uint64_t seed)
{
    return check_logconcavity([&noise](const Vector& w) { return noise.log_pdf(w); },
                              noise.dimension(), trials, seed);
}

}  // namespace qlik
