#include "qlik/likelihood.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qlik {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dimensions(const LocationScaleModel& model, const NoiseModel& noise)
{
    if (noise.dimension() != model.n())
        throw std::invalid_argument("noise dimension does not match the model's n");
}

// Edges of the noise interval for one coordinate: d * edge - mu.
double transform_edge(double edge, double d, double mu)
{
    if (std::isinf(edge)) return edge;
    return d * edge - mu;
}

struct ExactSetup {
    Box box;
    Vector d;
    Vector mu;
};

ExactSetup exact_setup(const LocationScaleModel& model, const Quantizer& q, const Code& z)
{
    const Region region = q.region(z);
    if (!region.is_box())
        throw std::invalid_argument(
            "exact likelihood needs a box region; pass Monte Carlo options for this quantizer");
    auto d = model.diagonal_scale();
    if (!d)
        throw std::invalid_argument(
            "exact likelihood needs a diagonal scale; pass Monte Carlo options for a full matrix");
    return {region.box(), *d, model.location()};
}

}  // namespace

double continuous_loglik_without_jacobian(const LocationScaleModel& model, const NoiseModel& noise,
                                          const Vector& y)
{
    check_dimensions(model, noise);
    if (y.size() != model.n()) throw std::invalid_argument("y has wrong length");
    return noise.log_pdf(model.apply_scale(y) - model.location());
}

double continuous_loglik(const LocationScaleModel& model, const NoiseModel& noise, const Vector& y)
{
    return continuous_loglik_without_jacobian(model, noise, y) + model.log_det_scale();
}

bool exact_path_available(const LocationScaleModel& model, const Quantizer& q, const Code& z)
{
    return q.region(z).is_box() && model.diagonal_scale().has_value();
}

double box_loglik(NoiseFamily family, const Box& box, const Vector& d, const Vector& mu)
{
    const int n = box.dimension();
    if (d.size() != n || mu.size() != n) throw std::invalid_argument("box_loglik: dimension mismatch");
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        const double lo = transform_edge(box.lower()[j], d[j], mu[j]);
        const double hi = transform_edge(box.upper()[j], d[j], mu[j]);
        total += univariate::log_interval_probability(family, lo, hi);
        if (total == -kInf) break;
    }
    return total;
}

LikelihoodValue quantized_loglik(const LocationScaleModel& model, const NoiseModel& noise,
                                 const Quantizer& q, const Code& z, std::optional<McOptions> mc)
{
    check_dimensions(model, noise);
    if (q.dimension() != model.n()) throw std::invalid_argument("quantizer dimension does not match n");

    if (!mc) {
        const ExactSetup s = exact_setup(model, q, z);
        return {box_loglik(noise.family(), s.box, s.d, s.mu), 0.0, LikelihoodMethod::ExactBox, false};
    }

    if (mc->count < 100) throw std::invalid_argument("Monte Carlo count must be at least 100");
    const Region region = q.region(z);
    Matrix w = noise.sample_matrix(mc->count, mc->seed);
    w.colwise() += model.location();
    const Matrix y = model.solve_scale(w);
    std::int64_t hits = 0;
    for (Eigen::Index i = 0; i < y.cols(); ++i)
        if (region.contains(y.col(i))) ++hits;

    LikelihoodValue out;
    out.method = LikelihoodMethod::MonteCarlo;
    if (hits == 0) {
        out.log_value = -kInf;
        out.std_error = kInf;
        out.underflow = true;
        return out;
    }
    const double count = static_cast<double>(mc->count);
    const double p = static_cast<double>(hits) / count;
    out.log_value = std::log(p);
    // se(log p) = se(p) / p = sqrt((1 - p) / (count p)).
    out.std_error = std::sqrt((1.0 - p) / (count * p));
    return out;
}

LoglikGradient grad_quantized_loglik(const LocationScaleModel& model, const NoiseModel& noise,
                                     const Quantizer& q, const Code& z)
{
    check_dimensions(model, noise);
    const ExactSetup s = exact_setup(model, q, z);
    const NoiseFamily family = noise.family();
    const int n = model.n();

    Vector d_mu(n);   // d log L / d (Sx)_j
    Vector d_d(n);    // d log L / d d_j
    for (int j = 0; j < n; ++j) {
        const double a = s.box.lower()[j];
        const double b = s.box.upper()[j];
        const double l = transform_edge(a, s.d[j], s.mu[j]);
        const double u = transform_edge(b, s.d[j], s.mu[j]);
        const double log_p = univariate::log_interval_probability(family, l, u);
        if (log_p == -kInf)
            throw std::domain_error("gradient undefined: bin " + to_string(z) + " has zero probability");
        // Infinite edges contribute nothing: the density decays faster
        // than the edge grows.
        const double fu = std::isinf(u) ? 0.0 : std::exp(univariate::log_pdf(family, u) - log_p);
        const double fl = std::isinf(l) ? 0.0 : std::exp(univariate::log_pdf(family, l) - log_p);
        d_mu[j] = fl - fu;
        d_d[j] = (std::isinf(b) ? 0.0 : b * fu) - (std::isinf(a) ? 0.0 : a * fl);
    }

    LoglikGradient g;
    g.location = model.S().transpose() * d_mu;
    switch (model.kind()) {
    case ScaleKind::Scalar: g.scale = Vector::Constant(1, d_d.sum()); break;
    case ScaleKind::Diagonal: g.scale = d_d; break;
    case ScaleKind::Fixed: g.scale = Vector(0); break;
    }
    return g;
}

LikelihoodValue dataset_loglik(const LocationScaleModel& model, const NoiseModel& noise,
                               const Quantizer& q, std::span<const Code> codes,
                               std::optional<McOptions> mc)
{
    if (codes.empty()) throw std::invalid_argument("dataset_loglik: no observations");
    LikelihoodValue total;
    total.method = mc ? LikelihoodMethod::MonteCarlo : LikelihoodMethod::ExactBox;
    double variance = 0.0;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        std::optional<McOptions> local = mc;
        if (local) local->seed = mc->seed ^ static_cast<std::uint64_t>(i);
        const LikelihoodValue v = quantized_loglik(model, noise, q, codes[i], local);
        total.log_value += v.log_value;
        variance += v.std_error * v.std_error;
        total.underflow = total.underflow || v.underflow;
    }
    total.std_error = std::sqrt(variance);
    return total;
}

LoglikGradient grad_dataset_loglik(const LocationScaleModel& model, const NoiseModel& noise,
                                   const Quantizer& q, std::span<const Code> codes)
{
    if (codes.empty()) throw std::invalid_argument("grad_dataset_loglik: no observations");
    LoglikGradient total = grad_quantized_loglik(model, noise, q, codes[0]);
    for (std::size_t i = 1; i < codes.size(); ++i) {
        const LoglikGradient g = grad_quantized_loglik(model, noise, q, codes[i]);
        total.location += g.location;
        total.scale += g.scale;
    }
    return total;
}

}  // namespace qlik
