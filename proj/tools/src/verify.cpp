#include "qlik/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qlik/cli/config.hpp"
#include "qlik/geometry.hpp"
#include "qlik/likelihood.hpp"
#include "qlik/random.hpp"

namespace qlik::cli {

namespace {

constexpr double kSlack = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

const NoiseFamily kFamilies[] = {NoiseFamily::Gaussian, NoiseFamily::Laplace, NoiseFamily::Logistic};

double normal(Rng& rng) { return univariate::quantile(NoiseFamily::Gaussian, uniform_open01(rng)); }

Matrix normal_matrix(int r, int c, Rng& rng)
{
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = normal(rng);
    return m;
}

Vector normal_vector(int n, Rng& rng) { return normal_matrix(n, 1, rng).col(0); }

Matrix random_pd(int n, Rng& rng)
{
    const Matrix a = normal_matrix(n, n, rng) / std::sqrt(static_cast<double>(n));
    return a * a.transpose() + 0.5 * Matrix::Identity(n, n);
}

AdcBank random_adc(int n, Rng& rng)
{
    std::vector<std::vector<double>> th(static_cast<std::size_t>(n));
    for (auto& t : th) {
        const int k = 1 + static_cast<int>(uniform_index(rng, 4));
        double edge = uniform_in(rng, -2.0, 0.0);
        for (int i = 0; i < k; ++i) {
            t.push_back(edge);
            edge += uniform_in(rng, 0.2, 1.5);
        }
    }
    return AdcBank(std::move(th));
}

enum class Case { A, B, C };

Scale random_scale(Case c, int n, Rng& rng)
{
    switch (c) {
    case Case::A: {
        Vector d(n);
        for (int j = 0; j < n; ++j) d[j] = uniform_in(rng, 0.3, 3.0);
        return FixedScale{Matrix(d.asDiagonal())};
    }
    case Case::B: return ScalarScale{uniform_in(rng, 0.3, 3.0)};
    case Case::C: {
        Vector d(n);
        for (int j = 0; j < n; ++j) d[j] = uniform_in(rng, 0.3, 3.0);
        return DiagonalScale{d};
    }
    }
    return ScalarScale{1.0};
}

// A code drawn from the model itself, so its probability is not negligible.
Code draw_code(const LocationScaleModel& model, NoiseFamily family, const Quantizer& q, Rng& rng)
{
    Vector w(model.n());
    for (int j = 0; j < model.n(); ++j) w[j] = univariate::quantile(family, uniform_open01(rng));
    return q.quantize(model.solve_scale(Vector(model.location() + w)));
}

struct ExactInstance {
    NoiseFamily family;
    Quantizer q;
    LocationScaleModel model;
    Code z;
};

ExactInstance random_instance(Case c, Rng& rng, int max_n = 3)
{
    const int n = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(max_n)));
    const int m = 1 + static_cast<int>(uniform_index(rng, 3));
    const NoiseFamily family = kFamilies[uniform_index(rng, 3)];
    Quantizer q(random_adc(n, rng));
    LocationScaleModel model(normal_matrix(n, m, rng) / std::sqrt(static_cast<double>(m)), normal_vector(m, rng),
                             random_scale(c, n, rng));
    Code z = draw_code(model, family, q, rng);
    return {family, std::move(q), std::move(model), std::move(z)};
}

double exact_ll(const ExactInstance& inst, const LocationScaleModel& model)
{
    return quantized_loglik(model, NoiseModel(inst.family, model.n()), inst.q, inst.z).log_value;
}

// --- checks ---------------------------------------------------------------------

CheckOutcome noise_logconcavity(const VerifyOptions& o)
{
    CheckOutcome out;
    std::int64_t violations = 0;
    double worst = -kInf;
    for (NoiseFamily f : kFamilies) {
        const LogConcavityReport r = check_logconcavity(NoiseModel(f, 3), 10000, o.seed);
        violations += r.violations;
        worst = std::max(worst, -r.worst_gap);
        out.metrics[std::string(to_string(f)) + "_violations"] = static_cast<double>(r.violations);
    }
    out.metrics["worst_gap"] = worst;
    out.passed = violations == 0;
    return out;
}

CheckOutcome prop1_midpoint(const VerifyOptions& o)
{
    Rng rng = make_rng(o.seed ^ 0x11);
    CheckOutcome out;
    std::int64_t violations = 0;
    double worst = -kInf;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(uniform_index(rng, 3));
        const int m = 1 + static_cast<int>(uniform_index(rng, 3));
        const NoiseModel noise(kFamilies[uniform_index(rng, 3)], n);
        const Matrix S = normal_matrix(n, m, rng);
        const Vector y = normal_vector(n, rng);
        const LocationScaleModel m0(S, normal_vector(m, rng), FixedScale{random_pd(n, rng)});
        const LocationScaleModel m1(S, normal_vector(m, rng), FixedScale{random_pd(n, rng)});
        const double a = uniform_open01(rng);
        const LocationScaleModel ma(S, a * m1.x() + (1 - a) * m0.x(), combine_scales(m0.scale(), m1.scale(), a));
        const double gap = a * continuous_loglik_without_jacobian(m1, noise, y) +
                           (1 - a) * continuous_loglik_without_jacobian(m0, noise, y) -
                           continuous_loglik_without_jacobian(ma, noise, y);
        worst = std::max(worst, gap);
        if (gap > kSlack) ++violations;
    }
    out.metrics["trials"] = trials;
    out.metrics["violations"] = static_cast<double>(violations);
    out.metrics["worst_gap"] = worst;
    out.passed = violations == 0;
    return out;
}

CheckOutcome thm1_midpoint(Case c, const VerifyOptions& o)
{
    Rng rng = make_rng(o.seed ^ (0x20 + static_cast<std::uint64_t>(c)));
    CheckOutcome out;
    std::int64_t violations = 0;
    double worst = -kInf;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const ExactInstance inst = random_instance(c, rng);
        const LocationScaleModel& m0 = inst.model;
        const LocationScaleModel m1 = m0.with_location(normal_vector(m0.m(), rng))
                                          .with_scale(c == Case::A ? m0.scale() : random_scale(c, m0.n(), rng));
        const double a = uniform_open01(rng);
        const LocationScaleModel ma(m0.S(), a * m1.x() + (1 - a) * m0.x(), combine_scales(m0.scale(), m1.scale(), a));
        const double gap = a * exact_ll(inst, m1) + (1 - a) * exact_ll(inst, m0) - exact_ll(inst, ma);
        if (std::isnan(gap)) continue;
        worst = std::max(worst, gap);
        if (gap > kSlack) ++violations;
    }
    out.metrics["trials"] = trials;
    out.metrics["violations"] = static_cast<double>(violations);
    out.metrics["worst_gap"] = worst;
    out.passed = violations == 0;
    return out;
}

// One code for (-inf, -1] u [1, inf): L(x) = Phi(-1 - x) + 1 - Phi(1 - x).
CheckOutcome nonconvex_control(const VerifyOptions&)
{
    const Box left_piece(Vector::Constant(1, -kInf), Vector::Constant(1, -1.0));
    const Box right_piece(Vector::Constant(1, 1.0), Vector::Constant(1, kInf));
    auto ll = [&](double x) {
        const Vector d = Vector::Ones(1), mu = Vector::Constant(1, x);
        const double left = box_loglik(NoiseFamily::Gaussian, left_piece, d, mu);
        const double right = box_loglik(NoiseFamily::Gaussian, right_piece, d, mu);
        const double hi = std::max(left, right);
        return hi + std::log(std::exp(left - hi) + std::exp(right - hi));
    };
    CheckOutcome out;
    double best = -kInf;
    double bx0 = 0.0, bx1 = 0.0;
    const int points = 81;
    for (int i = 0; i < points; ++i) {
        for (int j = i + 2; j < points; j += 2) {
            const double x0 = -2.0 + 4.0 * i / (points - 1);
            const double x1 = -2.0 + 4.0 * j / (points - 1);
            const double gap = 0.5 * (ll(x0) + ll(x1)) - ll(0.5 * (x0 + x1));
            if (gap > best) {
                best = gap;
                bx0 = x0;
                bx1 = x1;
            }
        }
    }
    out.metrics["worst_gap"] = best;
    out.metrics["x0"] = bx0;
    out.metrics["x1"] = bx1;
    out.passed = best > 1e-3;
    return out;
}

CheckOutcome normalization(const VerifyOptions& o)
{
    Rng rng = make_rng(o.seed ^ 0x30);
    CheckOutcome out;
    double worst = 0.0;
    const int configs = 100;
    for (int t = 0; t < configs; ++t) {
        const Case c = t % 2 ? Case::C : Case::B;
        const ExactInstance inst = random_instance(c, rng, 2);
        const AdcBank& adc = *inst.q.adc();
        const NoiseModel noise(inst.family, inst.model.n());
        double total = 0.0;
        std::vector<std::int64_t> idx(static_cast<std::size_t>(adc.dimension()), 0);
        for (;;) {
            total += std::exp(quantized_loglik(inst.model, noise, inst.q, Code(idx)).log_value);
            std::size_t d = 0;
            while (d < idx.size() && ++idx[d] == adc.bins(static_cast<int>(d))) idx[d++] = 0;
            if (d == idx.size()) break;
        }
        worst = std::max(worst, std::abs(total - 1.0));
    }
    out.metrics["configs"] = configs;
    out.metrics["max_abs_error"] = worst;
    out.passed = worst <= 1e-9;
    return out;
}

CheckOutcome exact_vs_mc(const VerifyOptions& o)
{
    Rng rng = make_rng(o.seed ^ 0x40);
    CheckOutcome out;
    const std::int64_t count = o.mc_count.value_or(100000);
    int within = 0;
    const int configs = 100;
    std::vector<double> z_scores;
    for (int t = 0; t < configs; ++t) {
        const ExactInstance inst = random_instance(static_cast<Case>(t % 3), rng);
        const NoiseModel noise(inst.family, inst.model.n());
        const double exact = quantized_loglik(inst.model, noise, inst.q, inst.z).log_value;
        const LikelihoodValue mc =
            quantized_loglik(inst.model, noise, inst.q, inst.z, McOptions{count, o.seed + static_cast<std::uint64_t>(t)});
        const double zs = std::abs(exact - mc.log_value) / mc.std_error;
        z_scores.push_back(zs);
        if (zs <= 4.0) ++within;
    }
    out.metrics["configs"] = configs;
    out.metrics["within_4se"] = within;
    out.metrics["mc_count"] = static_cast<double>(count);
    out.series["abs_diff_in_se"] = z_scores;
    out.passed = within >= 99;
    return out;
}

CheckOutcome gradient_check(const VerifyOptions& o)
{
    Rng rng = make_rng(o.seed ^ 0x50);
    CheckOutcome out;
    const double h = 1e-5;
    double worst = 0.0;
    const int points = 1000;
    for (int t = 0; t < points; ++t) {
        const Case c = static_cast<Case>(t % 3);
        const ExactInstance inst = random_instance(c, rng);
        const NoiseModel noise(inst.family, inst.model.n());
        const LoglikGradient g = grad_quantized_loglik(inst.model, noise, inst.q, inst.z);
        Vector fd_x(inst.model.m());
        for (int k = 0; k < inst.model.m(); ++k) {
            Vector xp = inst.model.x(), xm = inst.model.x();
            xp[k] += h;
            xm[k] -= h;
            fd_x[k] = (exact_ll(inst, inst.model.with_location(xp)) - exact_ll(inst, inst.model.with_location(xm))) / (2 * h);
        }
        Vector fd_s(g.scale.size());
        for (Eigen::Index k = 0; k < g.scale.size(); ++k) {
            Scale sp = inst.model.scale(), sm = sp;
            if (auto* s = std::get_if<ScalarScale>(&sp)) {
                s->value += h;
                std::get<ScalarScale>(sm).value -= h;
            } else {
                std::get<DiagonalScale>(sp).values[k] += h;
                std::get<DiagonalScale>(sm).values[k] -= h;
            }
            fd_s[k] = (exact_ll(inst, inst.model.with_scale(sp)) - exact_ll(inst, inst.model.with_scale(sm))) / (2 * h);
        }
        Vector analytic(g.location.size() + g.scale.size()), numeric(analytic.size());
        analytic << g.location, g.scale;
        numeric << fd_x, fd_s;
        const double rel = (analytic - numeric).lpNorm<Eigen::Infinity>() /
                           std::max(1.0, analytic.lpNorm<Eigen::Infinity>());
        worst = std::max(worst, rel);
    }
    out.metrics["points"] = points;
    out.metrics["max_relative_error"] = worst;
    out.passed = worst <= 1e-5;
    return out;
}

Region random_convex_region(int kind, Rng& rng)
{
    if (kind == 0) {
        Vector lo(2), hi(2);
        for (int j = 0; j < 2; ++j) {
            lo[j] = uniform_in(rng, -2.0, 1.0);
            hi[j] = lo[j] + uniform_in(rng, 0.3, 2.0);
        }
        return Box(lo, hi);
    }
    const HexagonalQuantizer hex(uniform_in(rng, 0.5, 1.5));
    const Code z{static_cast<std::int64_t>(uniform_index(rng, 3)) - 1, static_cast<std::int64_t>(uniform_index(rng, 3)) - 1};
    return hex.region(z);
}

CheckOutcome prekopa(const VerifyOptions& o)
{
    Rng rng = make_rng(o.seed ^ 0x60);
    CheckOutcome out;
    const std::int64_t count = o.mc_count.value_or(1000000);
    int passed = 0, inconclusive = 0, trials = 0;
    std::vector<double> margins, margins_in_se;
    for (NoiseFamily f : {NoiseFamily::Gaussian, NoiseFamily::Laplace}) {
        const NoiseModel noise(f, 2);
        for (int t = 0; t < 50; ++t) {
            const Region a0 = random_convex_region(t % 2, rng);
            const Region a1 = random_convex_region((t / 2) % 2, rng);
            const double alpha = uniform_in(rng, 0.1, 0.9);
            const PrekopaReport r = prekopa_check(noise, a0, a1, alpha, count, o.seed + static_cast<std::uint64_t>(trials));
            ++trials;
            if (r.inconclusive) {
                ++inconclusive;
                continue;
            }
            if (r.passed) ++passed;
            margins.push_back(r.margin);
            margins_in_se.push_back(r.margin / r.combined_se);
        }
    }
    out.metrics["trials"] = trials;
    out.metrics["passed"] = passed;
    out.metrics["inconclusive"] = inconclusive;
    out.metrics["mc_count"] = static_cast<double>(count);
    out.metrics["min_margin_in_se"] = margins_in_se.empty() ? 0.0 : *std::min_element(margins_in_se.begin(), margins_in_se.end());
    out.series["margin"] = margins;
    out.series["margin_in_se"] = margins_in_se;
    out.passed = passed == trials;
    return out;
}

CheckOutcome lemma1_chords(const VerifyOptions& o)
{
    Rng rng = make_rng(o.seed ^ 0x70);
    CheckOutcome out;
    std::int64_t chords = 0, failures = 0, mismatches = 0;
    for (int t = 0; t < 10; ++t) {
        const bool hex = t % 2 == 1;
        const Quantizer q = hex ? Quantizer(HexagonalQuantizer(uniform_in(rng, 0.5, 1.5))) : Quantizer(random_adc(2, rng));
        const Scale s = hex ? Scale{FixedScale{random_pd(2, rng)}} : random_scale(Case::C, 2, rng);
        const LocationScaleModel model(normal_matrix(2, 2, rng), normal_vector(2, rng), s);
        const Code z = draw_code(model, NoiseFamily::Gaussian, q, rng);
        const ChordReport r = noise_region_chord_check(model, q, z, 1000, o.seed + static_cast<std::uint64_t>(t));
        chords += r.chords;
        failures += r.failures;

        const LocationScaleModel identity(Matrix::Identity(2, 2), Vector::Zero(2), FixedScale{Matrix::Identity(2, 2)});
        const Region cell = q.region(z);
        const Region box = cell.bounding_box();
        for (int k = 0; k < 1000; ++k) {
            Vector w(2);
            for (int j = 0; j < 2; ++j) {
                const double lo = std::isfinite(box.box().lower()[j]) ? box.box().lower()[j] - 1.0 : -5.0;
                const double hi = std::isfinite(box.box().upper()[j]) ? box.box().upper()[j] + 1.0 : 5.0;
                w[j] = uniform_in(rng, lo, hi);
            }
            if (noise_region_membership(w, z, identity, q) != cell.contains(w)) ++mismatches;
        }
    }
    out.metrics["chords"] = static_cast<double>(chords);
    out.metrics["chord_failures"] = static_cast<double>(failures);
    out.metrics["identity_mismatches"] = static_cast<double>(mismatches);
    out.passed = failures == 0 && mismatches == 0;
    return out;
}

CheckOutcome lemma23_cross(const VerifyOptions& o)
{
    Rng rng = make_rng(o.seed ^ 0x80);
    CheckOutcome out;
    std::int64_t bad = 0;
    double worst = -kInf;
    const char* names[] = {"a", "b", "c"};
    for (Case c : {Case::A, Case::B, Case::C}) {
        std::int64_t case_bad = 0;
        for (int t = 0; t < 3; ++t) {
            const Matrix S = normal_matrix(2, 2, rng);
            Quantizer q = c == Case::C ? Quantizer(random_adc(2, rng)) : Quantizer(HexagonalQuantizer(uniform_in(rng, 0.5, 1.5)));
            Scale s0, s1;
            if (c == Case::A) {
                s0 = FixedScale{random_pd(2, rng)};
                s1 = s0;
            } else {
                s0 = random_scale(c, 2, rng);
                s1 = random_scale(c, 2, rng);
            }
            const LocationScaleModel m0(S, normal_vector(2, rng), s0);
            const LocationScaleModel m1(S, normal_vector(2, rng), s1);
            const Code z = draw_code(m0, NoiseFamily::Gaussian, q, rng);
            const double alpha = uniform_in(rng, 0.1, 0.9);
            const CrossContainmentReport r =
                minkowski_region_cross_check(m0, m1, alpha, q, z, 1000, o.seed + static_cast<std::uint64_t>(t), 1e-9);
            case_bad += r.minkowski_outside_region + r.region_not_decomposed + r.region_outside_minkowski;
            worst = std::max(worst, r.max_violation);
        }
        out.metrics[std::string("case_") + names[static_cast<int>(c)] + "_failures"] = static_cast<double>(case_bad);
        bad += case_bad;
    }
    out.metrics["max_violation"] = worst;
    out.passed = bad == 0;
    return out;
}

CheckOutcome lemma3_recombination(const VerifyOptions& o)
{
    Rng rng = make_rng(o.seed ^ 0x90);
    CheckOutcome out;
    double identity_error = 0.0;
    std::int64_t failures = 0;
    for (int t = 0; t < 300; ++t) {
        const Case c = static_cast<Case>(t % 3);
        const int n = 1 + static_cast<int>(uniform_index(rng, 4));
        const Vector y0 = normal_vector(n, rng), y1 = normal_vector(n, rng);
        Matrix s0, s1;
        ScaleCase sc;
        if (c == Case::A) {
            s0 = random_pd(n, rng);
            s1 = s0;
            sc = ScaleCase::SharedScale;
        } else if (c == Case::B) {
            s0 = uniform_in(rng, 0.3, 3.0) * Matrix::Identity(n, n);
            s1 = uniform_in(rng, 0.3, 3.0) * Matrix::Identity(n, n);
            sc = ScaleCase::ScalarMultiples;
        } else {
            s0 = std::get<DiagonalScale>(random_scale(Case::C, n, rng)).values.asDiagonal();
            s1 = std::get<DiagonalScale>(random_scale(Case::C, n, rng)).values.asDiagonal();
            sc = ScaleCase::Diagonal;
        }
        const double a = uniform_open01(rng);
        const Recombination r = lemma3_recombine(y0, y1, s0, s1, a, sc);
        identity_error = std::max(identity_error, (r.c0 + r.c1 - Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
        const Vector lo = y0.cwiseMin(y1), hi = y0.cwiseMax(y1);
        if ((r.y - lo).minCoeff() < -kSlack || (hi - r.y).minCoeff() < -kSlack) ++failures;
        if (c != Case::C) {
            // y on the segment [y0, y1].
            const Vector d = y1 - y0;
            const double s = d.squaredNorm() > 0 ? (r.y - y0).dot(d) / d.squaredNorm() : 0.0;
            if ((y0 + s * d - r.y).norm() > kSlack || s < -kSlack || s > 1 + kSlack) ++failures;
        }
    }
    const Recombination b = lemma3_recombine(Vector::Zero(2), Vector::Ones(2), Matrix::Identity(2, 2),
                                             3.0 * Matrix::Identity(2, 2), 0.5, ScaleCase::ScalarMultiples);
    out.metrics["max_identity_error"] = identity_error;
    out.metrics["failures"] = static_cast<double>(failures);
    out.metrics["scalar_case_weight"] = b.c1(0, 0);
    out.passed = identity_error <= 1e-12 && failures == 0 && std::abs(b.c1(0, 0) - 0.75) <= 1e-12;
    return out;
}

CheckOutcome lemma4(const VerifyOptions& o)
{
    Rng rng = make_rng(o.seed ^ 0xa0);
    CheckOutcome out;
    std::int64_t failures = 0;
    double worst_c = -kInf, worst_r = 0.0;
    for (int n = 1; n <= 5; ++n) {
        const HullCheckReport r =
            diag_box_hull_check(normal_vector(n, rng), normal_vector(n, rng), 10000, o.seed + static_cast<std::uint64_t>(n));
        failures += r.containment_failures + r.reconstruction_failures;
        worst_c = std::max(worst_c, r.max_containment_violation);
        worst_r = std::max(worst_r, r.max_reconstruction_error);
    }
    Vector y0(2), y1(2);
    y0 << -1.0, 0.5;
    y1 << 1.0, -0.5;
    const HullCheckReport fig = diag_box_hull_check(y0, y1, 10000, o.seed);
    failures += fig.containment_failures + fig.reconstruction_failures;
    out.metrics["failures"] = static_cast<double>(failures);
    out.metrics["max_containment_violation"] = std::max(worst_c, fig.max_containment_violation);
    out.metrics["max_reconstruction_error"] = std::max(worst_r, fig.max_reconstruction_error);
    out.passed = failures == 0;
    return out;
}

CheckOutcome lemma5(const VerifyOptions& o)
{
    Rng rng = make_rng(o.seed ^ 0xb0);
    CheckOutcome out;
    std::int64_t failures = 0, skipped = 0;
    double worst_c = -kInf, worst_r = 0.0, min_tr = kInf, max_tr = -kInf;
    for (int n = 2; n <= 5; ++n) {
        const HullCheckReport r =
            psd_ball_hull_check(normal_vector(n, rng), normal_vector(n, rng), 10000, o.seed + static_cast<std::uint64_t>(n));
        failures += r.containment_failures + r.reconstruction_failures;
        skipped += r.skipped;
        worst_c = std::max(worst_c, r.max_containment_violation);
        worst_r = std::max(worst_r, r.max_reconstruction_error);
        min_tr = std::min(min_tr, r.min_trace);
        max_tr = std::max(max_tr, r.max_trace);
    }
    Vector y0(2), y1(2);
    y0 << -1.0, 0.5;
    y1 << 1.0, -0.5;
    const double radius = 0.5 * (y1 - y0).norm();
    out.metrics["failures"] = static_cast<double>(failures);
    out.metrics["skipped"] = static_cast<double>(skipped);
    out.metrics["max_radius_excess"] = worst_c;
    out.metrics["max_reconstruction_error"] = worst_r;
    out.metrics["min_trace"] = min_tr;
    out.metrics["max_trace"] = max_tr;
    out.metrics["figure_radius"] = radius;
    out.passed = failures == 0 && worst_c <= 1e-9 && std::abs(radius - 1.1180) <= 1e-4;
    return out;
}

CheckOutcome ball_outside_box(const VerifyOptions& o)
{
    CheckOutcome out;
    const Box box(Vector::Zero(2), Vector::Ones(2));
    const BallOutsideBoxWitness w = find_ball_outside_box(box, 1000, o.seed);
    out.passed = w.found;
    if (w.found) {
        std::ostringstream ss;
        ss << "y0=(" << w.y0.transpose() << ") y1=(" << w.y1.transpose() << ") point=(" << w.point.transpose() << ")";
        out.detail = ss.str();
        out.metrics["trace_C"] = w.combination.trace();
    }
    return out;
}

struct Entry {
    std::string id;
    std::string claim;
    bool negative;
    std::function<CheckOutcome(const VerifyOptions&)> run;
};

const std::vector<Entry>& registry()
{
    static const std::vector<Entry> entries = {
        {"noise-logconcavity", "Gaussian, Laplace and logistic noise densities are logconcave", false, noise_logconcavity},
        {"prop1-midpoint", "logconcave noise gives a logconcave continuous likelihood in (x, Psi)", false, prop1_midpoint},
        {"thm1a-midpoint", "quantized likelihood is logconcave in x for fixed Psi", false,
         [](const VerifyOptions& o) { return thm1_midpoint(Case::A, o); }},
        {"thm1b-midpoint", "quantized likelihood is jointly logconcave in (x, psi) for Psi = psi I", false,
         [](const VerifyOptions& o) { return thm1_midpoint(Case::B, o); }},
        {"thm1c-midpoint", "quantized likelihood is jointly logconcave in (x, Lambda) for independent ADCs", false,
         [](const VerifyOptions& o) { return thm1_midpoint(Case::C, o); }},
        {"thm1-nonconvex-control", "a non-convex quantization region breaks logconcavity in x", true, nonconvex_control},
        {"eq6-normalization", "quantized likelihoods over all codes sum to one", false, normalization},
        {"eq6-exact-vs-mc", "closed-form box likelihood agrees with Monte Carlo", false, exact_vs_mc},
        {"eq6-gradient", "analytic gradient matches central finite differences", false, gradient_check},
        {"prekopa", "P[aA1 + (1-a)A0] >= P[A1]^a P[A0]^(1-a) for convex A0, A1", false, prekopa},
        {"lemma1-chords", "noise regions of convex cells are convex", false, lemma1_chords},
        {"lemma2-3-cross", "Minkowski combination of noise regions equals the combined-parameter noise region", false,
         lemma23_cross},
        {"lemma3-recombine", "C0 + C1 = I and the recombined point stays between y0 and y1", false, lemma3_recombination},
        {"lemma4", "diagonal [0,1] combinations fill exactly the coordinate box", false, lemma4},
        {"lemma5", "PSD contractions fill exactly the ball on [y0, y1]", false, lemma5},
        {"lemma5-ball-outside-box", "the PSD ball of two box points can leave the box", true, ball_outside_box},
    };
    return entries;
}

}  // namespace

std::vector<std::string> check_ids()
{
    std::vector<std::string> ids;
    for (const Entry& e : registry()) ids.push_back(e.id);
    return ids;
}

std::vector<CheckOutcome> run_verify(const VerifyOptions& options)
{
    std::vector<CheckOutcome> out;
    for (const Entry& e : registry()) {
        if (options.only && *options.only != e.id) continue;
        CheckOutcome r;
        try {
            r = e.run(options);
        } catch (const std::exception& ex) {
            r = CheckOutcome{};
            r.passed = false;
            r.detail = std::string("error: ") + ex.what();
        }
        r.id = e.id;
        r.claim = e.claim;
        r.negative_control = e.negative;
        out.push_back(std::move(r));
    }
    if (out.empty()) throw InputError("no check named \"" + options.only.value_or("") + "\"");
    return out;
}

std::string verify_report_json(const std::vector<CheckOutcome>& outcomes, const VerifyOptions& options)
{
    using nlohmann::json;
    json checks = json::array();
    bool all = true;
    for (const CheckOutcome& c : outcomes) {
        json j = {{"id", c.id},
                  {"claim", c.claim},
                  {"negative_control", c.negative_control},
                  {"passed", c.passed},
                  {"metrics", c.metrics}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        if (!c.series.empty()) j["series"] = c.series;
        checks.push_back(std::move(j));
        all = all && c.passed;
    }
    json doc = {{"seed", options.seed}, {"all_passed", all}, {"checks", checks}};
    if (options.mc_count) doc["mc_count"] = *options.mc_count;
    return doc.dump(2) + "\n";
}

}  // namespace qlik::cli
