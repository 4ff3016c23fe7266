#ifndef QLIK_NOISE_HPP_
#define QLIK_NOISE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace qlik {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class NoiseFamily { Gaussian, Laplace, Logistic };

std::string_view to_string(NoiseFamily family);

// Accepts "gaussian", "laplace", "logistic". Throws std::invalid_argument
// for anything else.
NoiseFamily parse_noise_family(std::string_view name);

// Standard univariate members of each family (zero location, unit scale).
// All three are symmetric about 0, so the survival function is F(-t).
namespace univariate {
double log_pdf(NoiseFamily family, double t);
double pdf(NoiseFamily family, double t);
// Tail-stable log F(t); log F(-inf) = -inf, log F(+inf) = 0.
double log_cdf(NoiseFamily family, double t);
// log(1 - F(t)).
double log_sf(NoiseFamily family, double t);
double cdf(NoiseFamily family, double t);
double quantile(NoiseFamily family, double p);
// d/dt log p(t). For the Laplace family the subgradient -sign(t) is
// returned, with 0 at the kink.
double score(NoiseFamily family, double t);
// log(F(upper) - F(lower)) for lower <= upper, without cancellation
// in either tail. Returns -inf when the interval is empty.
double log_interval_probability(NoiseFamily family, double lower, double upper);
}  // namespace univariate

// An n-dimensional noise vector with i.i.d. standard coordinates.
// Immutable; safe to share across threads.
class NoiseModel {
public:
    NoiseModel(NoiseFamily family, int dimension);

    NoiseFamily family() const { return family_; }
    int dimension() const { return dimension_; }

    // Sum of univariate log densities. Throws on dimension mismatch.
    double log_pdf(const Vector& w) const;
    double log_cdf(double t) const { return univariate::log_cdf(family_, t); }
    double log_sf(double t) const { return univariate::log_sf(family_, t); }
    double quantile(double p) const { return univariate::quantile(family_, p); }

    // i.i.d. draws by inversion of 53-bit uniforms from a
    // std::mt19937_64 seeded with `seed`. Same (seed, count) gives the
    // same draws on every platform with a conforming libm.
    std::vector<Vector> sample(std::int64_t count, std::uint64_t seed) const;

    // Draws `count` vectors into the columns of a dimension x count matrix.
    Matrix sample_matrix(std::int64_t count, std::uint64_t seed) const;

private:
    NoiseFamily family_;
    int dimension_;
};

struct LogConcavityReport {
    std::int64_t trials = 0;
    std::int64_t violations = 0;
    // Most negative value of log p(w_a) - [a log p(w1) + (1-a) log p(w0)].
    double worst_gap = 0.0;
};

using LogDensity = std::function<double(const Vector&)>;

// Random triples (w0, w1, a) with coordinates uniform on [-box, box].
// A violation is a gap below -1e-9.
LogConcavityReport check_logconcavity(const LogDensity& log_density, int dimension,
                                      std::int64_t trials, std::uint64_t seed,
                                      double box = 8.0);
LogConcavityReport check_logconcavity(const NoiseModel& noise, std::int64_t trials,
                                      std::uint64_t seed);

}  // namespace qlik

#endif  // QLIK_NOISE_HPP_
