#ifndef QLIK_ESTIMATE_HPP_
#define QLIK_ESTIMATE_HPP_

#include <span>
#include <vector>

#include "qlik/likelihood.hpp"
#include "qlik/optimize.hpp"

namespace qlik {

// Which parameters are estimated. Each mode corresponds to one scale
// structure under which the quantized likelihood is logconcave:
//   LocationOnly        - x, with a fixed (diagonal) Psi
//   LocationScalarScale - x and psi jointly, Psi = psi I
//   LocationDiagScale   - x and Lambda jointly, Psi = Lambda (ADC banks)
enum class FitMode { LocationOnly, LocationScalarScale, LocationDiagScale };

std::string_view to_string(FitMode mode);
FitMode parse_fit_mode(std::string_view name);

struct FitConfig {
    FitMode mode = FitMode::LocationOnly;
    Vector x0;
    Scale scale0 = FixedScale{};
    double grad_tol = 1e-8;
    int max_iters = 500;
    double initial_step = 1.0;
    double shrink = 0.5;
    double sufficient_increase = 1e-4;
    double scale_floor = 1e-8;
};

// Everything about the generative model except the estimated parameters.
struct FitProblem {
    Matrix S;
    NoiseFamily noise = NoiseFamily::Gaussian;
    Quantizer quantizer;
};

struct FitReport {
    FitMode mode = FitMode::LocationOnly;
    Vector x_hat;
    Scale scale_hat = FixedScale{};
    double final_loglik = 0.0;
    int iterations = 0;
    double gradient_norm = 0.0;
    std::vector<TrajectoryPoint> trajectory;
    bool converged = false;
    // The log-likelihood approached its supremum 0 at a stationary
    // point: the maximum is not attained (e.g. every observation in one
    // unbounded end bin) and the estimate runs off to infinity.
    bool diverging = false;
    bool line_search_failed = false;
    int initialization_attempts = 1;
    // Observed-information standard errors from finite differences of the
    // analytic gradient; x first, then scale parameters. Approximate.
    // NaN where the information matrix is not positive definite.
    Vector std_errors;
};

// Projected gradient ascent on the exact-path dataset log-likelihood.
// Requires an ADC-bank quantizer; `cfg.scale0` must be FixedScale
// (diagonal) for LocationOnly, ScalarScale or DiagonalScale for the
// joint modes. Throws std::invalid_argument on mismatches and
// std::domain_error when no initialization gives a finite likelihood.
FitReport fit(const FitProblem& problem, std::span<const Code> codes, const FitConfig& cfg);

// Representative y for each code: bin midpoints, with unbounded end bins
// mapped one bin-width beyond their finite threshold. The width is that
// of the adjacent bounded bin, or 1 when the dimension has a single
// threshold.
Vector bin_representative(const AdcBank& adc, const Code& z);

// Treats bin representatives as exact continuous observations and
// maximizes the continuous log-likelihood (with Jacobian). For Gaussian
// noise and LocationOnly this is least squares, solved in closed form.
FitReport fit_ignoring_quantization(const FitProblem& problem, std::span<const Code> codes,
                                    const FitConfig& cfg);

}  // namespace qlik

#endif  // QLIK_ESTIMATE_HPP_
