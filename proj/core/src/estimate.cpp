#include "qlik/estimate.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qlik {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxInitAttempts = 10;

struct CodeCounts {
    std::vector<Code> codes;
    std::vector<double> counts;
};

CodeCounts aggregate(std::span<const Code> codes)
{
    std::map<Code, double> tally;
    for (const Code& c : codes) tally[c] += 1.0;
    CodeCounts out;
    for (auto& [code, count] : tally) {
        out.codes.push_back(code);
        out.counts.push_back(count);
    }
    return out;
}

int scale_parameter_count(FitMode mode, int n)
{
    switch (mode) {
    case FitMode::LocationOnly: return 0;
    case FitMode::LocationScalarScale: return 1;
    case FitMode::LocationDiagScale: return n;
    }
    return 0;
}

Vector scale_parameters(const Scale& scale)
{
    if (const auto* s = std::get_if<ScalarScale>(&scale)) return Vector::Constant(1, s->value);
    if (const auto* d = std::get_if<DiagonalScale>(&scale)) return d->values;
    return Vector(0);
}

Scale scale_from_parameters(FitMode mode, const Vector& params, const Scale& fixed)
{
    switch (mode) {
    case FitMode::LocationOnly: return fixed;
    case FitMode::LocationScalarScale: return ScalarScale{params[0]};
    case FitMode::LocationDiagScale: return DiagonalScale{params};
    }
    return fixed;
}

// Parameter vector theta = [x; scale parameters].
class Parametrization {
public:
    Parametrization(FitMode mode, int m, int n, Scale fixed)
        : mode_(mode), m_(m), k_(scale_parameter_count(mode, n)), fixed_(std::move(fixed))
    {
    }

    int size() const { return m_ + k_; }
    int m() const { return m_; }

    Vector pack(const Vector& x, const Scale& scale) const
    {
        Vector theta(size());
        theta.head(m_) = x;
        if (k_ > 0) theta.tail(k_) = scale_parameters(scale);
        return theta;
    }
    Vector x(const Vector& theta) const { return theta.head(m_); }
    Scale scale(const Vector& theta) const
    {
        return scale_from_parameters(mode_, theta.tail(k_), fixed_);
    }
    Vector lower_bounds(double floor) const
    {
        Vector lb = Vector::Constant(size(), -kInf);
        if (k_ > 0) lb.tail(k_).setConstant(floor);
        return lb;
    }

private:
    FitMode mode_;
    int m_;
    int k_;
    Scale fixed_;
};

void validate_mode(FitMode mode, const Scale& scale)
{
    const ScaleKind kind = scale_kind(scale);
    const bool ok = (mode == FitMode::LocationOnly && kind == ScaleKind::Fixed) ||
                    (mode == FitMode::LocationScalarScale && kind == ScaleKind::Scalar) ||
                    (mode == FitMode::LocationDiagScale && kind == ScaleKind::Diagonal);
    if (!ok)
        throw std::invalid_argument("fit mode " + std::string(to_string(mode)) +
                                    " does not match the structure of scale0");
}

void validate_problem(const FitProblem& problem, std::span<const Code> codes, const FitConfig& cfg,
                      bool need_adc)
{
    if (codes.empty()) throw std::invalid_argument("fit: no observations");
    const int n = static_cast<int>(problem.S.rows());
    if (problem.quantizer.dimension() != n)
        throw std::invalid_argument("fit: quantizer dimension does not match S");
    if (cfg.x0.size() != problem.S.cols()) throw std::invalid_argument("fit: x0 has wrong length");
    validate_mode(cfg.mode, cfg.scale0);
    validate_scale(cfg.scale0, n);
    if (!(cfg.scale_floor > 0.0)) throw std::invalid_argument("fit: scale_floor must be positive");
    if (need_adc && problem.quantizer.adc() == nullptr)
        throw std::invalid_argument("fit: the exact-path solver needs an ADC-bank quantizer");
    if (cfg.mode == FitMode::LocationOnly) {
        const LocationScaleModel probe(problem.S, cfg.x0, cfg.scale0);
        if (need_adc && !probe.diagonal_scale())
            throw std::invalid_argument("fit: LocationOnly on the exact path needs a diagonal Psi");
    }
}

AscentOptions ascent_options(const FitConfig& cfg, const Parametrization& p)
{
    AscentOptions o;
    o.grad_tol = cfg.grad_tol;
    o.max_iters = cfg.max_iters;
    o.initial_step = cfg.initial_step;
    o.shrink = cfg.shrink;
    o.sufficient_increase = cfg.sufficient_increase;
    o.lower_bounds = p.lower_bounds(cfg.scale_floor);
    return o;
}

// Central differences of the analytic gradient; returns sqrt(diag(-H^-1)).
Vector observed_information_std_errors(const SmoothObjective& f, const Vector& theta,
                                       const Vector& lower)
{
    const Eigen::Index k = theta.size();
    Matrix H(k, k);
    Vector gp(k), gm(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const double h = 1e-5 * std::max(1.0, std::abs(theta[j]));
        if (theta[j] - h < lower[j]) return Vector::Constant(k, kNaN);
        Vector tp = theta, tm = theta;
        tp[j] += h;
        tm[j] -= h;
        const double vp = f(tp, &gp);
        const double vm = f(tm, &gm);
        if (!std::isfinite(vp) || !std::isfinite(vm)) return Vector::Constant(k, kNaN);
        H.col(j) = (gp - gm) / (2.0 * h);
    }
    const Matrix info = -0.5 * (H + H.transpose());
    Eigen::LLT<Matrix> llt(info);
    if (llt.info() != Eigen::Success) return Vector::Constant(k, kNaN);
    const Matrix cov = llt.solve(Matrix::Identity(k, k));
    return cov.diagonal().cwiseSqrt();
}

FitReport assemble_report(FitMode mode, const Parametrization& p, const AscentResult& r)
{
    FitReport rep;
    rep.mode = mode;
    rep.x_hat = p.x(r.theta);
    rep.scale_hat = p.scale(r.theta);
    rep.final_loglik = r.value;
    rep.iterations = r.iterations;
    rep.gradient_norm = r.gradient_norm;
    rep.trajectory = r.trajectory;
    rep.converged = r.stationary;
    rep.line_search_failed = r.line_search_failed;
    return rep;
}

// Runs the ascent. A stationary point whose mean log-likelihood is within
// 1e-6 of the supremum 0 is treated as a vanishing gradient on the way to
// infinity, and iteration continues to max_iters.
AscentResult ascend_with_divergence_check(const SmoothObjective& objective, const Vector& theta0,
                                          const AscentOptions& options, double total_weight,
                                          bool& diverging)
{
    AscentResult r = projected_gradient_ascent(objective, theta0, options);
    diverging = false;
    if (r.stationary && r.value > -1e-6 * total_weight) {
        diverging = true;
        AscentOptions rest = options;
        rest.grad_tol = -1.0;
        rest.max_iters = options.max_iters - r.iterations;
        if (rest.max_iters > 0) {
            AscentResult tail = projected_gradient_ascent(objective, r.theta, rest);
            for (std::size_t i = 1; i < tail.trajectory.size(); ++i)
                r.trajectory.push_back({r.iterations + tail.trajectory[i].iteration, tail.trajectory[i].value});
            r.iterations += tail.iterations;
            r.theta = tail.theta;
            r.value = tail.value;
            r.gradient_norm = tail.gradient_norm;
        }
        r.stationary = false;
    }
    return r;
}

}  // namespace

std::string_view to_string(FitMode mode)
{
    switch (mode) {
    case FitMode::LocationOnly: return "location_only";
    case FitMode::LocationScalarScale: return "location_scalar_scale";
    case FitMode::LocationDiagScale: return "location_diag_scale";
    }
    return "unknown";
}

FitMode parse_fit_mode(std::string_view name)
{
    if (name == "location_only") return FitMode::LocationOnly;
    if (name == "location_scalar_scale") return FitMode::LocationScalarScale;
    if (name == "location_diag_scale") return FitMode::LocationDiagScale;
    throw std::invalid_argument("unknown fit mode '" + std::string(name) + "'");
}

Vector bin_representative(const AdcBank& adc, const Code& z)
{
    const int n = adc.dimension();
    if (static_cast<int>(z.size()) != n) throw std::invalid_argument("bin_representative: bad code");
    Vector y(n);
    for (int j = 0; j < n; ++j) {
        const std::int64_t b = z[static_cast<std::size_t>(j)];
        if (b < 0 || b >= adc.bins(j)) throw std::invalid_argument("bin_representative: unknown code");
        const auto& t = adc.thresholds()[static_cast<std::size_t>(j)];
        const std::size_t k = t.size();
        const double first_width = k >= 2 ? t[1] - t[0] : 1.0;
        const double last_width = k >= 2 ? t[k - 1] - t[k - 2] : 1.0;
        if (b == 0) {
            y[j] = t.front() - first_width;
        } else if (b == adc.bins(j) - 1) {
            y[j] = t.back() + last_width;
        } else {
            y[j] = 0.5 * (t[static_cast<std::size_t>(b - 1)] + t[static_cast<std::size_t>(b)]);
        }
    }
    return y;
}

FitReport fit(const FitProblem& problem, std::span<const Code> codes, const FitConfig& cfg)
{
    validate_problem(problem, codes, cfg, /*need_adc=*/true);
    const int n = static_cast<int>(problem.S.rows());
    const int m = static_cast<int>(problem.S.cols());
    const NoiseModel noise(problem.noise, n);
    const CodeCounts data = aggregate(codes);
    const Parametrization param(cfg.mode, m, n, cfg.scale0);

    const SmoothObjective objective = [&](const Vector& theta, Vector* grad) -> double {
        const LocationScaleModel model(problem.S, param.x(theta), param.scale(theta));
        double total = 0.0;
        for (std::size_t i = 0; i < data.codes.size(); ++i) {
            total += data.counts[i] * quantized_loglik(model, noise, problem.quantizer, data.codes[i]).log_value;
            if (total == -kInf) return total;
        }
        if (grad != nullptr) {
            grad->setZero(param.size());
            for (std::size_t i = 0; i < data.codes.size(); ++i) {
                const LoglikGradient g = grad_quantized_loglik(model, noise, problem.quantizer, data.codes[i]);
                grad->head(m) += data.counts[i] * g.location;
                if (param.size() > m) grad->tail(param.size() - m) += data.counts[i] * g.scale;
            }
        }
        return total;
    };

    // Initialization: if the start has zero likelihood, move x to the
    // least-squares fit of the bin representatives and widen the noise
    // (halve the scale) until every observed bin has positive mass.
    Vector x0 = cfg.x0;
    Scale scale0 = cfg.scale0;
    int attempts = 1;
    while (!std::isfinite(objective(param.pack(x0, scale0), nullptr))) {
        if (attempts > kMaxInitAttempts)
            throw std::domain_error("fit: observed codes have zero probability at every initialization");
        if (attempts > 1 && cfg.mode != FitMode::LocationOnly) {
            Vector s = scale_parameters(scale0) * 0.5;
            s = s.cwiseMax(cfg.scale_floor);
            scale0 = scale_from_parameters(cfg.mode, s, cfg.scale0);
        }
        const LocationScaleModel probe(problem.S, x0, scale0);
        Vector mean_rep = Vector::Zero(n);
        for (std::size_t i = 0; i < data.codes.size(); ++i)
            mean_rep += data.counts[i] * bin_representative(*problem.quantizer.adc(), data.codes[i]);
        mean_rep /= static_cast<double>(codes.size());
        x0 = problem.S.colPivHouseholderQr().solve(probe.apply_scale(mean_rep));
        ++attempts;
    }

    const AscentOptions options = ascent_options(cfg, param);
    bool diverging = false;
    const AscentResult r = ascend_with_divergence_check(objective, param.pack(x0, scale0), options,
                                                        static_cast<double>(codes.size()), diverging);
    FitReport rep = assemble_report(cfg.mode, param, r);
    rep.diverging = diverging;
    rep.initialization_attempts = attempts;
    rep.std_errors = observed_information_std_errors(objective, r.theta, options.lower_bounds);
    return rep;
}

FitReport fit_ignoring_quantization(const FitProblem& problem, std::span<const Code> codes,
                                    const FitConfig& cfg)
{
    validate_problem(problem, codes, cfg, /*need_adc=*/true);
    const int n = static_cast<int>(problem.S.rows());
    const int m = static_cast<int>(problem.S.cols());
    const NoiseModel noise(problem.noise, n);
    const CodeCounts data = aggregate(codes);
    const Parametrization param(cfg.mode, m, n, cfg.scale0);

    std::vector<Vector> reps;
    reps.reserve(data.codes.size());
    for (const Code& c : data.codes) reps.push_back(bin_representative(*problem.quantizer.adc(), c));
    const double total_weight = static_cast<double>(codes.size());

    const SmoothObjective objective = [&](const Vector& theta, Vector* grad) -> double {
        const LocationScaleModel model(problem.S, param.x(theta), param.scale(theta));
        double total = 0.0;
        if (grad != nullptr) grad->setZero(param.size());
        const Vector mu = model.location();
        for (std::size_t i = 0; i < reps.size(); ++i) {
            const double c = data.counts[i];
            total += c * continuous_loglik(model, noise, reps[i]);
            if (grad == nullptr) continue;
            const Vector w = model.apply_scale(reps[i]) - mu;
            Vector s(n);
            for (int j = 0; j < n; ++j) s[j] = univariate::score(problem.noise, w[j]);
            grad->head(m) -= c * (problem.S.transpose() * s);
            if (cfg.mode == FitMode::LocationScalarScale) {
                (*grad)[m] += c * (s.dot(reps[i]) + n / std::get<ScalarScale>(model.scale()).value);
            } else if (cfg.mode == FitMode::LocationDiagScale) {
                const Vector& lam = std::get<DiagonalScale>(model.scale()).values;
                grad->tail(n) += c * (s.cwiseProduct(reps[i]) + lam.cwiseInverse());
            }
        }
        return total;
    };

    const AscentOptions options = ascent_options(cfg, param);
    if (problem.noise == NoiseFamily::Gaussian && cfg.mode == FitMode::LocationOnly) {
        // Least squares on the representatives: S x = Psi ybar.
        const LocationScaleModel probe(problem.S, cfg.x0, cfg.scale0);
        Vector mean_rep = Vector::Zero(n);
        for (std::size_t i = 0; i < reps.size(); ++i) mean_rep += data.counts[i] * reps[i];
        mean_rep /= total_weight;
        const Vector x = problem.S.colPivHouseholderQr().solve(probe.apply_scale(mean_rep));
        AscentResult r;
        r.theta = x;
        Vector g(param.size());
        r.value = objective(x, &g);
        r.gradient_norm = g.norm();
        r.stationary = true;
        r.trajectory.push_back({0, r.value});
        FitReport rep = assemble_report(cfg.mode, param, r);
        rep.converged = true;
        rep.std_errors = observed_information_std_errors(objective, x, options.lower_bounds);
        return rep;
    }

    const AscentResult r = projected_gradient_ascent(objective, param.pack(cfg.x0, cfg.scale0), options);
    FitReport rep = assemble_report(cfg.mode, param, r);
    rep.std_errors = observed_information_std_errors(objective, r.theta, options.lower_bounds);
    return rep;
}

}  // namespace qlik
