#ifndef QLIK_LIKELIHOOD_HPP_
#define QLIK_LIKELIHOOD_HPP_

#include <cstdint>
#include <optional>
#include <span>

#include "qlik/model.hpp"
#include "qlik/noise.hpp"
#include "qlik/quantizer.hpp"

namespace qlik {

enum class LikelihoodMethod { ExactBox, MonteCarlo };

struct LikelihoodValue {
    double log_value = 0.0;   // <= 0; -inf allowed
    double std_error = 0.0;   // 0 on the exact path
    LikelihoodMethod method = LikelihoodMethod::ExactBox;
    // Monte Carlo saw no hits; log_value is -inf.
    bool underflow = false;
};

struct McOptions {
    std::int64_t count = 100000;
    std::uint64_t seed = 0;
};

// log p_w(Psi y - S x) + log det Psi: a normalized log density of y.
double continuous_loglik(const LocationScaleModel& model, const NoiseModel& noise, const Vector& y);

// log p_w(Psi y - S x) without the Jacobian. This is the fixed-data
// likelihood whose joint logconcavity in (x, Psi) is the continuous
// counterpart of the quantized results.
double continuous_loglik_without_jacobian(const LocationScaleModel& model, const NoiseModel& noise,
                                          const Vector& y);

// True when log L(x, Psi | z) factorizes into per-coordinate CDF
// differences: box region and diagonal scale.
bool exact_path_available(const LocationScaleModel& model, const Quantizer& q, const Code& z);

// Probability that Psi^{-1}(S x + w) falls in region(q, z).
//
// Without `mc`, uses the closed form
//   sum_j log[F(d_j b_j - (Sx)_j) - F(d_j a_j - (Sx)_j)]
// and throws std::invalid_argument when the configuration is not on the
// exact path. With `mc`, draws `count` noise vectors and returns the log
// hit fraction with a delta-method standard error; zero hits give -inf
// with `underflow` set.
LikelihoodValue quantized_loglik(const LocationScaleModel& model, const NoiseModel& noise,
                                 const Quantizer& q, const Code& z,
                                 std::optional<McOptions> mc = std::nullopt);

// Exact log-probability of a box in y-space under diagonal scale `d` and
// location `mu` = S x.
double box_loglik(NoiseFamily family, const Box& box, const Vector& d, const Vector& mu);

struct LoglikGradient {
    Vector location;  // d/dx, length m
    // d/dpsi (length 1) for ScalarScale, d/dlambda (length n) for
    // DiagonalScale, empty for FixedScale.
    Vector scale;
};

// Analytic gradient on the exact path. Throws std::domain_error for a
// zero-probability bin.
LoglikGradient grad_quantized_loglik(const LocationScaleModel& model, const NoiseModel& noise,
                                     const Quantizer& q, const Code& z);

// Sum over i.i.d. observations. With `mc`, observation i uses seed
// (mc->seed XOR i) and standard errors add in quadrature.
LikelihoodValue dataset_loglik(const LocationScaleModel& model, const NoiseModel& noise,
                               const Quantizer& q, std::span<const Code> codes,
                               std::optional<McOptions> mc = std::nullopt);

LoglikGradient grad_dataset_loglik(const LocationScaleModel& model, const NoiseModel& noise,
                                   const Quantizer& q, std::span<const Code> codes);

}  // namespace qlik

#endif  // QLIK_LIKELIHOOD_HPP_
