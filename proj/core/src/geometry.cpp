#include "qlik/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>

#include "qlik/linprog.hpp"

namespace qlik {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double gaussian_draw(Rng& rng) { return univariate::quantile(NoiseFamily::Gaussian, uniform_open01(rng)); }

Vector gaussian_vector(int n, Rng& rng)
{
    Vector v(n);
    for (int j = 0; j < n; ++j) v[j] = gaussian_draw(rng);
    return v;
}

// Polytope in w-space for {w : Psi^{-1}(w + mu) in P}.
Polytope transform_polytope(const Polytope& p, const LocationScaleModel& model, const Vector& mu)
{
    std::vector<Halfspace> hs;
    hs.reserve(p.halfspaces().size());
    for (const Halfspace& h : p.halfspaces()) {
        // n.Psi^{-1}(w + mu) <= o  <=>  (Psi^{-1} n).w <= o - (Psi^{-1} n).mu  (Psi symmetric)
        const Vector a = model.solve_scale(h.normal);
        hs.push_back({a, h.offset - a.dot(mu)});
    }
    return Polytope(std::move(hs), model.apply_scale(p.interior_point()) - mu);
}

double combine_edge(double e0, double e1, double alpha)
{
    if (std::isinf(e0) || std::isinf(e1)) {
        if (e0 == -kInf || e1 == -kInf) return alpha == 1.0 ? e1 : (alpha == 0.0 ? e0 : -kInf);
        return alpha == 1.0 ? e1 : (alpha == 0.0 ? e0 : kInf);
    }
    return alpha * e1 + (1.0 - alpha) * e0;
}

// Unit normals of both polygons, deduplicated.
std::vector<Vector> union_of_normals(const Polytope& p0, const Polytope& p1)
{
    std::vector<Vector> normals;
    for (const Polytope* p : {&p0, &p1}) {
        for (const Halfspace& h : p->halfspaces()) {
            const Vector u = h.normal / h.normal.norm();
            const bool seen = std::any_of(normals.begin(), normals.end(),
                                          [&u](const Vector& v) { return (u - v).norm() < 1e-12; });
            if (!seen) normals.push_back(u);
        }
    }
    return normals;
}

double box_violation(const Box& b, const Vector& y)
{
    double worst = -kInf;
    for (int j = 0; j < b.dimension(); ++j) {
        if (std::isfinite(b.lower()[j])) worst = std::max(worst, b.lower()[j] - y[j]);
        if (std::isfinite(b.upper()[j])) worst = std::max(worst, y[j] - b.upper()[j]);
    }
    return worst;
}

}  // namespace

SampledSet sample_set(const Region& region, std::int64_t count, std::uint64_t seed, std::string label)
{
    return {sample_region(region, count, seed).points, std::move(label)};
}

void write_point_cloud_csv(std::ostream& out, std::span<const SampledSet> sets)
{
    int n = -1;
    for (const SampledSet& s : sets) {
        if (s.points.empty()) continue;
        if (n < 0) n = s.dimension();
        if (s.dimension() != n) throw std::invalid_argument("write_point_cloud_csv: mixed dimensions");
    }
    if (n < 0) n = 0;
    for (int j = 0; j < n; ++j) out << "dim" << j << ',';
    out << "label\n";
    const auto old_precision = out.precision(17);
    for (const SampledSet& s : sets) {
        for (const Vector& p : s.points) {
            for (int j = 0; j < n; ++j) out << p[j] << ',';
            out << s.label << '\n';
        }
    }
    out.precision(old_precision);
}

bool noise_region_membership(const Vector& w, const Code& z, const LocationScaleModel& model,
                             const Quantizer& q)
{
    if (w.size() != model.n()) throw std::invalid_argument("noise_region_membership: dimension mismatch");
    return q.region(z).contains(model.solve_scale(Vector(w + model.location())));
}

Region noise_region(const LocationScaleModel& model, const Quantizer& q, const Code& z)
{
    const Region r = q.region(z);
    const Vector mu = model.location();
    if (r.is_box()) {
        if (const auto d = model.diagonal_scale()) {
            const Box& b = r.box();
            Vector lo(b.dimension()), hi(b.dimension());
            for (int j = 0; j < b.dimension(); ++j) {
                lo[j] = std::isinf(b.lower()[j]) ? b.lower()[j] : (*d)[j] * b.lower()[j] - mu[j];
                hi[j] = std::isinf(b.upper()[j]) ? b.upper()[j] : (*d)[j] * b.upper()[j] - mu[j];
            }
            return Box(lo, hi);
        }
    }
    return transform_polytope(r.as_polytope(), model, mu);
}

double region_violation(const Region& region, const Vector& y)
{
    if (region.is_box()) return box_violation(region.box(), y);
    double worst = -kInf;
    for (const Halfspace& h : region.polytope().halfspaces())
        worst = std::max(worst, (h.normal.dot(y) - h.offset) / h.normal.norm());
    return worst;
}

SampledSet minkowski_combine(const SampledSet& a0, const SampledSet& a1, double alpha,
                             std::int64_t pairs, std::uint64_t seed)
{
    if (a0.points.empty() || a1.points.empty())
        throw std::invalid_argument("minkowski_combine: empty set");
    if (a0.dimension() != a1.dimension()) throw std::invalid_argument("minkowski_combine: dimension mismatch");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("minkowski_combine: alpha outside [0, 1]");
    Rng rng = make_rng(seed);
    SampledSet out;
    out.label = "minkowski";
    out.points.reserve(static_cast<std::size_t>(pairs));
    for (std::int64_t i = 0; i < pairs; ++i) {
        const Vector& w0 = a0.points[uniform_index(rng, a0.points.size())];
        const Vector& w1 = a1.points[uniform_index(rng, a1.points.size())];
        if (alpha == 0.0) out.points.push_back(w0);
        else if (alpha == 1.0) out.points.push_back(w1);
        else out.points.push_back(alpha * w1 + (1.0 - alpha) * w0);
    }
    return out;
}

// --- MinkowskiCombination ------------------------------------------------------

MinkowskiCombination::MinkowskiCombination(Region a0, Region a1, double alpha, double tolerance)
    : a0_(std::move(a0)), a1_(std::move(a1)), alpha_(alpha), tolerance_(tolerance)
{
    if (a0_.dimension() != a1_.dimension())
        throw std::invalid_argument("MinkowskiCombination: dimension mismatch");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("MinkowskiCombination: alpha outside [0, 1]");
    if (alpha == 0.0) {
        explicit_form_ = a0_;
    } else if (alpha == 1.0) {
        explicit_form_ = a1_;
    } else if (a0_.is_box() && a1_.is_box()) {
        const Box& b0 = a0_.box();
        const Box& b1 = a1_.box();
        const int n = b0.dimension();
        Vector lo(n), hi(n);
        for (int j = 0; j < n; ++j) {
            lo[j] = combine_edge(b0.lower()[j], b1.lower()[j], alpha);
            hi[j] = combine_edge(b0.upper()[j], b1.upper()[j], alpha);
        }
        explicit_form_ = Box(lo, hi);
    } else if (a0_.dimension() == 2) {
        // In the plane every edge of the sum is parallel to an edge of a
        // summand, and h_{aA+bB} = a h_A + b h_B.
        const Polytope p0 = a0_.as_polytope();
        const Polytope p1 = a1_.as_polytope();
        std::vector<Halfspace> hs;
        for (const Vector& u : union_of_normals(p0, p1)) {
            const double h0 = p0.support(u);
            const double h1 = p1.support(u);
            if (std::isinf(h0) || std::isinf(h1)) continue;
            hs.push_back({u, alpha * h1 + (1.0 - alpha) * h0});
        }
        if (!hs.empty()) {
            const Vector interior = alpha * p1.interior_point() + (1.0 - alpha) * p0.interior_point();
            explicit_form_ = Polytope(std::move(hs), interior);
        }
    }
}

bool MinkowskiCombination::contains(const Vector& w) const
{
    if (explicit_form_) {
        if (explicit_form_->is_box()) return explicit_form_->contains(w);
        return explicit_form_->polytope().max_violation(w) <= tolerance_;
    }
    return decomposition_exists(w);
}

bool MinkowskiCombination::decomposition_exists(const Vector& w) const
{
    // Find w0 in A0 with (w - (1 - a) w0) / a in A1.
    const Polytope p0 = a0_.as_polytope();
    const Polytope p1 = a1_.as_polytope();
    const Matrix A0 = p0.normals_matrix();
    const Matrix A1 = p1.normals_matrix();
    const Vector b0 = p0.offsets();
    const Vector b1 = p1.offsets();
    const Eigen::Index k0 = A0.rows(), k1 = A1.rows();
    const Eigen::Index n = w.size();
    Matrix A(k0 + k1, n);
    Vector b(k0 + k1);
    A.topRows(k0) = A0;
    b.head(k0) = b0.array() + tolerance_;
    A.bottomRows(k1) = -((1.0 - alpha_) / alpha_) * A1;
    b.tail(k1) = (b1.array() + tolerance_).matrix() - A1 * w / alpha_;
    return maximize_linear(Vector::Zero(n), A, b).status == LpStatus::Optimal;
}

PrekopaReport prekopa_check(const NoiseModel& noise, const Region& a0, const Region& a1, double alpha,
                            std::int64_t mc_count, std::uint64_t seed)
{
    if (mc_count < 100000) throw std::invalid_argument("prekopa_check: mc_count must be at least 1e5");
    if (a0.dimension() != noise.dimension() || a1.dimension() != noise.dimension())
        throw std::invalid_argument("prekopa_check: dimension mismatch");
    const MinkowskiCombination combined(a0, a1, alpha);
    const Matrix w = noise.sample_matrix(mc_count, seed);

    std::int64_t hits0 = 0, hits1 = 0, hits_a = 0;
    Vector col(noise.dimension());
    for (Eigen::Index i = 0; i < w.cols(); ++i) {
        col = w.col(i);
        hits0 += a0.contains(col) ? 1 : 0;
        hits1 += a1.contains(col) ? 1 : 0;
        hits_a += combined.contains(col) ? 1 : 0;
    }

    PrekopaReport rep;
    const double count = static_cast<double>(mc_count);
    auto log_and_var = [count](std::int64_t hits, double& log_p, double& var) {
        const double p = static_cast<double>(hits) / count;
        log_p = hits > 0 ? std::log(p) : -kInf;
        var = hits > 0 ? (1.0 - p) / (count * p) : kInf;
    };
    double v0 = 0.0, v1 = 0.0, va = 0.0;
    log_and_var(hits0, rep.log_p0, v0);
    log_and_var(hits1, rep.log_p1, v1);
    log_and_var(hits_a, rep.lhs, va);
    if (hits0 == 0 || hits1 == 0 || hits_a == 0) {
        rep.inconclusive = true;
        return rep;
    }
    rep.rhs = alpha * rep.log_p1 + (1.0 - alpha) * rep.log_p0;
    rep.margin = rep.lhs - rep.rhs;
    rep.combined_se = std::sqrt(va + alpha * alpha * v1 + (1.0 - alpha) * (1.0 - alpha) * v0);
    rep.passed = rep.margin >= -4.0 * rep.combined_se;
    return rep;
}

// --- Parameter combinations -------------------------------------------------------

Decomposition lemma2_decompose(const Matrix& S, const Vector& w, const Vector& y, const Vector& x0,
                               const Vector& x1, const Matrix& scale0, const Matrix& scale1,
                               double alpha)
{
    const Vector xa = alpha * x1 + (1.0 - alpha) * x0;
    const Matrix scale_a = alpha * scale1 + (1.0 - alpha) * scale0;
    const Vector expected = scale_a * y - S * xa;
    if ((expected - w).lpNorm<Eigen::Infinity>() > 1e-9 * (1.0 + w.lpNorm<Eigen::Infinity>()))
        throw std::invalid_argument("lemma2_decompose: w is not Psi_alpha y - S x_alpha");
    return {scale0 * y - S * x0, scale1 * y - S * x1};
}

Recombination lemma3_recombine(const Vector& y0, const Vector& y1, const Matrix& scale0,
                               const Matrix& scale1, double alpha, ScaleCase scale_case)
{
    const Eigen::Index n = y0.size();
    if (y1.size() != n || scale0.rows() != n || scale0.cols() != n || scale1.rows() != n || scale1.cols() != n)
        throw std::invalid_argument("lemma3_recombine: dimension mismatch");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("lemma3_recombine: alpha outside [0, 1]");
    const double tol = 1e-12 * (1.0 + std::max(scale0.cwiseAbs().maxCoeff(), scale1.cwiseAbs().maxCoeff()));
    auto off_diagonal = [](const Matrix& m) {
        Matrix o = m;
        o.diagonal().setZero();
        return o.cwiseAbs().maxCoeff();
    };
    switch (scale_case) {
    case ScaleCase::SharedScale:
        if ((scale0 - scale1).cwiseAbs().maxCoeff() > tol)
            throw std::invalid_argument("lemma3_recombine: shared-scale case needs Psi0 == Psi1");
        break;
    case ScaleCase::ScalarMultiples:
        for (const Matrix* m : {&scale0, &scale1}) {
            const double d0 = (*m)(0, 0);
            if (off_diagonal(*m) > tol || (m->diagonal().array() - d0).abs().maxCoeff() > tol || !(d0 > 0.0))
                throw std::invalid_argument("lemma3_recombine: scalar case needs Psi_i = psi_i I");
        }
        break;
    case ScaleCase::Diagonal:
        for (const Matrix* m : {&scale0, &scale1}) {
            if (off_diagonal(*m) > tol || !(m->diagonal().array() > 0.0).all())
                throw std::invalid_argument("lemma3_recombine: diagonal case needs positive diagonal Psi_i");
        }
        break;
    }
    const double a0 = 1.0 - alpha;
    const double a1 = alpha;
    const Matrix combined = a0 * scale0 + a1 * scale1;
    const Eigen::PartialPivLU<Matrix> lu(combined);
    Recombination r;
    r.c0 = lu.solve(Matrix(a0 * scale0));
    r.c1 = lu.solve(Matrix(a1 * scale1));
    r.y = r.c0 * y0 + r.c1 * y1;
    return r;
}

// --- Hull oracles -------------------------------------------------------------------

HullCheckReport diag_box_hull_check(const Vector& y0, const Vector& y1, std::int64_t samples,
                                    std::uint64_t seed, double tolerance)
{
    const int n = static_cast<int>(y0.size());
    if (y1.size() != n || n < 1) throw std::invalid_argument("diag_box_hull_check: dimension mismatch");
    Rng rng = make_rng(seed);
    const Vector lo = y0.cwiseMin(y1);
    const Vector hi = y0.cwiseMax(y1);
    HullCheckReport rep;
    rep.cloud.label = "diagonal";
    rep.cloud.points.reserve(static_cast<std::size_t>(samples));

    // Combinations land in the box.
    for (std::int64_t s = 0; s < samples; ++s) {
        Vector c(n);
        for (int j = 0; j < n; ++j) c[j] = uniform_open01(rng);
        const Vector p = c.cwiseProduct(y0) + (Vector::Ones(n) - c).cwiseProduct(y1);
        const double excess = std::max((lo - p).maxCoeff(), (p - hi).maxCoeff());
        rep.max_containment_violation = std::max(rep.max_containment_violation, excess);
        if (excess > tolerance) ++rep.containment_failures;
        ++rep.containment_samples;
        rep.cloud.points.push_back(p);
    }

    // Box points (random interior points plus every corner) are reached.
    auto reconstruct = [&](const Vector& y) {
        Vector c(n);
        bool coefficient_ok = true;
        for (int j = 0; j < n; ++j) {
            const double span = y0[j] - y1[j];
            c[j] = span == 0.0 ? 0.0 : (y[j] - y1[j]) / span;
            if (c[j] < -tolerance || c[j] > 1.0 + tolerance) coefficient_ok = false;
        }
        const Vector back = c.cwiseProduct(y0) + (Vector::Ones(n) - c).cwiseProduct(y1);
        const double err = (back - y).lpNorm<Eigen::Infinity>();
        rep.max_reconstruction_error = std::max(rep.max_reconstruction_error, err);
        if (!coefficient_ok || err > tolerance) ++rep.reconstruction_failures;
        ++rep.reconstruction_samples;
    };
    for (std::int64_t s = 0; s < samples; ++s) {
        Vector y(n);
        for (int j = 0; j < n; ++j) y[j] = lo[j] == hi[j] ? lo[j] : uniform_in(rng, lo[j], hi[j]);
        reconstruct(y);
    }
    if (n <= 16) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            Vector corner(n);
            for (int j = 0; j < n; ++j) corner[j] = (mask >> j) & 1U ? hi[j] : lo[j];
            reconstruct(corner);
        }
    }
    return rep;
}

Matrix random_psd_contraction(int n, Rng& rng)
{
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gaussian_draw(rng);
    const Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    Vector eig(n);
    for (int j = 0; j < n; ++j) eig[j] = uniform_open01(rng);
    Matrix c = q * eig.asDiagonal() * q.transpose();
    return 0.5 * (c + c.transpose());
}

std::optional<Matrix> ball_point_combination(const Vector& y0, const Vector& y1, const Vector& y)
{
    const Eigen::Index n = y0.size();
    const Vector t = y - y1;
    const Vector t0 = y0 - y1;
    if (t.squaredNorm() == 0.0) return Matrix::Zero(n, n);
    const double denom = t.dot(t0);
    if (!(denom > 0.0)) return std::nullopt;
    return Matrix(t * t.transpose() / denom);
}

HullCheckReport psd_ball_hull_check(const Vector& y0, const Vector& y1, std::int64_t samples,
                                    std::uint64_t seed, double tolerance)
{
    const int n = static_cast<int>(y0.size());
    if (y1.size() != n || n < 1) throw std::invalid_argument("psd_ball_hull_check: dimension mismatch");
    Rng rng = make_rng(seed);
    const Vector centre = 0.5 * (y0 + y1);
    const double radius = 0.5 * (y1 - y0).norm();
    const Matrix I = Matrix::Identity(n, n);
    HullCheckReport rep;
    rep.cloud.label = "psd";
    rep.cloud.points.reserve(static_cast<std::size_t>(samples));

    for (std::int64_t s = 0; s < samples; ++s) {
        const Matrix c = random_psd_contraction(n, rng);
        const Vector p = c * y0 + (I - c) * y1;
        const double excess = (p - centre).norm() - radius;
        rep.max_containment_violation = std::max(rep.max_containment_violation, excess);
        if (excess > tolerance) ++rep.containment_failures;
        ++rep.containment_samples;
        rep.cloud.points.push_back(p);
    }

    rep.min_trace = kInf;
    rep.max_trace = -kInf;
    for (std::int64_t s = 0; s < samples; ++s) {
        // Uniform point in the ball.
        Vector dir = gaussian_vector(n, rng);
        dir /= dir.norm();
        const double rho = radius * std::pow(uniform_open01(rng), 1.0 / n);
        const Vector y = centre + rho * dir;
        const auto c = ball_point_combination(y0, y1, y);
        if (!c) {
            ++rep.skipped;
            continue;
        }
        ++rep.reconstruction_samples;
        const double trace = c->trace();
        rep.min_trace = std::min(rep.min_trace, trace);
        rep.max_trace = std::max(rep.max_trace, trace);
        const Eigen::SelfAdjointEigenSolver<Matrix> eig(*c);
        const double top = eig.eigenvalues().maxCoeff();
        const double bottom = eig.eigenvalues().minCoeff();
        const bool spectrum_ok = trace >= -tolerance && trace <= 1.0 + tolerance &&
                                 std::abs(top - trace) <= tolerance * (1.0 + trace) && bottom >= -tolerance;
        const Vector back = *c * y0 + (I - *c) * y1;
        const double err = (back - y).norm();
        rep.max_reconstruction_error = std::max(rep.max_reconstruction_error, err);
        if (!spectrum_ok || err > tolerance) ++rep.reconstruction_failures;
    }
    return rep;
}

BallOutsideBoxWitness find_ball_outside_box(const Box& box, std::int64_t trials, std::uint64_t seed)
{
    const int n = box.dimension();
    const Region region(box);
    Rng rng = make_rng(seed);
    BallOutsideBoxWitness out;
    for (std::int64_t t = 0; t < trials; ++t) {
        const auto ends = sample_region(region, 2, mix_seed(seed) + static_cast<std::uint64_t>(t)).points;
        const Vector& y0 = ends[0];
        const Vector& y1 = ends[1];
        const Vector centre = 0.5 * (y0 + y1);
        const double radius = 0.5 * (y1 - y0).norm();
        for (int k = 0; k < 32; ++k) {
            Vector dir = gaussian_vector(n, rng);
            dir /= dir.norm();
            const Vector p = centre + radius * (1.0 - 1e-9) * dir;
            if (box.contains(p)) continue;
            const auto c = ball_point_combination(y0, y1, p);
            if (!c) continue;
            out.found = true;
            out.y0 = y0;
            out.y1 = y1;
            out.point = p;
            out.combination = *c;
            return out;
        }
    }
    return out;
}

// --- Sampled checks on noise regions -----------------------------------------------

ChordReport noise_region_chord_check(const LocationScaleModel& model, const Quantizer& q,
                                     const Code& z, std::int64_t chords, std::uint64_t seed)
{
    const Region cell = q.region(z);
    const auto ys = sample_region(cell, 2 * chords, seed).points;
    const Vector mu = model.location();
    Rng rng = make_rng(seed ^ 0x5bd1e995ULL);
    ChordReport rep;
    for (std::int64_t i = 0; i < chords; ++i) {
        const Vector w0 = model.apply_scale(ys[static_cast<std::size_t>(2 * i)]) - mu;
        const Vector w1 = model.apply_scale(ys[static_cast<std::size_t>(2 * i + 1)]) - mu;
        const double a = uniform_open01(rng);
        const Vector wa = a * w1 + (1.0 - a) * w0;
        const Vector ya = model.solve_scale(Vector(wa + mu));
        ++rep.chords;
        if (region_violation(cell, ya) > 1e-9 * (1.0 + ya.lpNorm<Eigen::Infinity>())) ++rep.failures;
    }
    return rep;
}

CrossContainmentReport minkowski_region_cross_check(const LocationScaleModel& model0,
                                                    const LocationScaleModel& model1, double alpha,
                                                    const Quantizer& q, const Code& z,
                                                    std::int64_t points, std::uint64_t seed,
                                                    double tolerance)
{
    if (model0.S() != model1.S()) throw std::invalid_argument("minkowski_region_cross_check: S differs");
    const Region cell = q.region(z);
    const LocationScaleModel model_a(model0.S(), alpha * model1.x() + (1.0 - alpha) * model0.x(),
                                     combine_scales(model0.scale(), model1.scale(), alpha));
    const Vector mu0 = model0.location(), mu1 = model1.location(), mua = model_a.location();
    const MinkowskiCombination oracle(noise_region(model0, q, z), noise_region(model1, q, z), alpha);

    const auto ys0 = sample_region(cell, points, seed).points;
    const auto ys1 = sample_region(cell, points, seed + 1).points;
    const auto ysa = sample_region(cell, points, seed + 2).points;
    CrossContainmentReport rep;
    rep.points = points;
    for (std::int64_t i = 0; i < points; ++i) {
        const auto k = static_cast<std::size_t>(i);
        // A_alpha -> W_z(x_alpha, Psi_alpha).
        const Vector w = alpha * (model1.apply_scale(ys1[k]) - mu1) + (1.0 - alpha) * (model0.apply_scale(ys0[k]) - mu0);
        const Vector y = model_a.solve_scale(Vector(w + mua));
        const double v = region_violation(cell, y) / (1.0 + y.lpNorm<Eigen::Infinity>());
        rep.max_violation = std::max(rep.max_violation, v);
        if (v > tolerance) ++rep.minkowski_outside_region;

        // W_z(x_alpha, Psi_alpha) -> A_alpha, constructively and by the oracle.
        const Vector wa = model_a.apply_scale(ysa[k]) - mua;
        const Decomposition d = lemma2_decompose(model0.S(), wa, ysa[k], model0.x(), model1.x(),
                                                 model0.scale_matrix(), model1.scale_matrix(), alpha);
        const Vector y0 = model0.solve_scale(Vector(d.w0 + mu0));
        const Vector y1 = model1.solve_scale(Vector(d.w1 + mu1));
        const double v0 = region_violation(cell, y0) / (1.0 + y0.lpNorm<Eigen::Infinity>());
        const double v1 = region_violation(cell, y1) / (1.0 + y1.lpNorm<Eigen::Infinity>());
        if (std::max(v0, v1) > tolerance) ++rep.region_not_decomposed;
        if (!oracle.contains(wa)) ++rep.region_outside_minkowski;
    }
    return rep;
}

// --- Figures --------------------------------------------------------------------------

std::vector<SampledSet> minkowski_figure(std::int64_t count, std::uint64_t seed)
{
    Vector lo(2), hi(2);
    lo << 0.25, 0.25;
    hi << 1.25, 1.25;
    const Region square{Box(lo, hi)};

    // Unit square rotated by 30 degrees, centred at (3, 1).
    Vector centre(2);
    centre << 3.0, 1.0;
    std::vector<Halfspace> hs;
    for (int k = 0; k < 4; ++k) {
        const double angle = (30.0 + 90.0 * k) * std::numbers::pi / 180.0;
        Vector u(2);
        u << std::cos(angle), std::sin(angle);
        hs.push_back({u, u.dot(centre) + 0.5});
    }
    const Region rotated{Polytope(std::move(hs), centre)};

    SampledSet a0 = sample_set(square, count, seed, "A0");
    SampledSet a1 = sample_set(rotated, count, seed + 1, "A1");
    SampledSet combined = minkowski_combine(a0, a1, 0.5, count, seed + 2);
    combined.label = "A_alpha";
    return {std::move(a0), std::move(a1), std::move(combined)};
}

namespace {
Vector figure_y0()
{
    Vector v(2);
    v << -1.0, 0.5;
    return v;
}
Vector figure_y1()
{
    Vector v(2);
    v << 1.0, -0.5;
    return v;
}
}  // namespace

SampledSet diagonal_combination_figure(std::int64_t count, std::uint64_t seed)
{
    return diag_box_hull_check(figure_y0(), figure_y1(), count, seed).cloud;
}

SampledSet psd_combination_figure(std::int64_t count, std::uint64_t seed)
{
    return psd_ball_hull_check(figure_y0(), figure_y1(), count, seed).cloud;
}

}  // namespace qlik
