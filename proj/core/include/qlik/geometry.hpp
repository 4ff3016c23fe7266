#ifndef QLIK_GEOMETRY_HPP_
#define QLIK_GEOMETRY_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlik/likelihood.hpp"
#include "qlik/random.hpp"

namespace qlik {

// A convex set represented by random elements.
struct SampledSet {
    std::vector<Vector> points;
    std::string label;

    int dimension() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
};

SampledSet sample_set(const Region& region, std::int64_t count, std::uint64_t seed, std::string label);

// Writes `dim0,dim1,...,label` then one row per point. All sets must
// share a dimension.
void write_point_cloud_csv(std::ostream& out, std::span<const SampledSet> sets);

// --- Noise regions ------------------------------------------------------------

// W_z(x, Psi) = {w : Psi^{-1}(w + S x) in region(q, z)}.
bool noise_region_membership(const Vector& w, const Code& z, const LocationScaleModel& model,
                             const Quantizer& q);

// W_z(x, Psi) as an explicit region: the affine image of the quantizer
// cell. Boxes stay boxes under diagonal scales; everything else becomes a
// polytope.
Region noise_region(const LocationScaleModel& model, const Quantizer& q, const Code& z);

// Signed distance-like violation of y against a region: <= 0 inside.
// Box: max over coordinates of (lower - y, y - upper); polytope: max
// normalized halfspace residual.
double region_violation(const Region& region, const Vector& y);

// --- Minkowski combinations ---------------------------------------------------

// alpha * w1 + (1 - alpha) * w0 for `pairs` random pairs.
SampledSet minkowski_combine(const SampledSet& a0, const SampledSet& a1, double alpha,
                             std::int64_t pairs, std::uint64_t seed);

// Membership oracle for alpha A1 + (1 - alpha) A0 of two convex regions.
// Two boxes: exact interval arithmetic. Two polygons in the plane: exact
// halfspace form from the support functions over the union of edge
// normals. Otherwise: LP search for a decomposition w = a w1 + (1-a) w0,
// with constraints relaxed by `tolerance`.
class MinkowskiCombination {
public:
    MinkowskiCombination(Region a0, Region a1, double alpha, double tolerance = 1e-6);

    bool contains(const Vector& w) const;
    double alpha() const { return alpha_; }
    // True when membership is decided by a closed-form halfspace/box
    // representation rather than per-point decomposition search.
    bool has_explicit_form() const { return explicit_form_.has_value(); }

private:
    bool decomposition_exists(const Vector& w) const;

    Region a0_;
    Region a1_;
    double alpha_;
    double tolerance_;
    std::optional<Region> explicit_form_;
};

struct PrekopaReport {
    double log_p0 = 0.0;
    double log_p1 = 0.0;
    double lhs = 0.0;          // log P[A_alpha]
    double rhs = 0.0;          // alpha log P[A1] + (1 - alpha) log P[A0]
    double margin = 0.0;       // lhs - rhs
    double combined_se = 0.0;  // delta-method, added in quadrature
    bool passed = false;       // lhs >= rhs - 4 combined_se
    bool inconclusive = false; // some probability estimate was 0
};

// Monte Carlo check of P[A_alpha] >= P[A1]^alpha P[A0]^(1-alpha) with
// common noise draws for the three sets. Requires mc_count >= 1e5.
PrekopaReport prekopa_check(const NoiseModel& noise, const Region& a0, const Region& a1,
                            double alpha, std::int64_t mc_count, std::uint64_t seed);

// --- Parameter combinations ---------------------------------------------------

struct Decomposition {
    Vector w0;
    Vector w1;
};

// Given w = Psi_a y - S x_a at the combined parameters, returns
// w_i = Psi_i y - S x_i so that w = alpha w1 + (1 - alpha) w0. Throws
// std::invalid_argument if the premise is off by more than 1e-9.
Decomposition lemma2_decompose(const Matrix& S, const Vector& w, const Vector& y, const Vector& x0,
                               const Vector& x1, const Matrix& scale0, const Matrix& scale1,
                               double alpha);

enum class ScaleCase { SharedScale, ScalarMultiples, Diagonal };

struct Recombination {
    Vector y;   // C0 y0 + C1 y1
    Matrix c0;  // (a0 Psi0 + a1 Psi1)^{-1} a0 Psi0
    Matrix c1;
};

// Throws std::invalid_argument when the scales do not have the stated
// structure.
Recombination lemma3_recombine(const Vector& y0, const Vector& y1, const Matrix& scale0,
                               const Matrix& scale1, double alpha, ScaleCase scale_case);

// --- Hull oracles for matrix combinations ---------------------------------------

struct HullCheckReport {
    std::int64_t containment_samples = 0;
    std::int64_t containment_failures = 0;
    double max_containment_violation = 0.0;  // box excess / radius excess
    std::int64_t reconstruction_samples = 0;
    std::int64_t reconstruction_failures = 0;
    double max_reconstruction_error = 0.0;
    std::int64_t skipped = 0;
    double min_trace = 0.0;  // PSD check only: range of tr(C) of built C
    double max_trace = 0.0;
    SampledSet cloud;        // the sampled combinations C y0 + (I - C) y1
    bool passed() const { return containment_failures == 0 && reconstruction_failures == 0; }
};

// Diagonal C with entries in [0, 1]: combinations fill the coordinate box
// between y0 and y1, and every box point is reached by
// C_jj = (y_j - y1_j) / (y0_j - y1_j).
HullCheckReport diag_box_hull_check(const Vector& y0, const Vector& y1, std::int64_t samples,
                                    std::uint64_t seed, double tolerance = 1e-9);

// Random PSD C with spectral radius <= 1: Q diag(u) Q^T with Q from the QR
// factorization of a Gaussian matrix and u uniform on [0, 1].
Matrix random_psd_contraction(int n, Rng& rng);

// Rank-one C = t t^T / (t . t0), t = y - y1, t0 = y0 - y1, reaching a
// point y of the ball with centre (y0 + y1) / 2 and radius |y1 - y0| / 2.
// Returns nullopt on the degenerate ray t . t0 = 0 with t != 0.
std::optional<Matrix> ball_point_combination(const Vector& y0, const Vector& y1, const Vector& y);

// PSD C with spectral radius <= 1: combinations stay in the ball, and
// every ball point is reached by the rank-one construction.
HullCheckReport psd_ball_hull_check(const Vector& y0, const Vector& y1, std::int64_t samples,
                                    std::uint64_t seed, double tolerance = 1e-9);

struct BallOutsideBoxWitness {
    bool found = false;
    Vector y0, y1;      // both inside the box
    Vector point;       // in the PSD-combination ball, outside the box
    Matrix combination; // C with point = C y0 + (I - C) y1
};

// Searches for endpoints inside `box` whose PSD-combination ball leaves
// the box.
BallOutsideBoxWitness find_ball_outside_box(const Box& box, std::int64_t trials, std::uint64_t seed);

// --- Sampled checks on noise regions --------------------------------------------

struct ChordReport {
    std::int64_t chords = 0;
    std::int64_t failures = 0;
};

// Random chords between sampled points of W_z(x, Psi) stay inside it.
ChordReport noise_region_chord_check(const LocationScaleModel& model, const Quantizer& q,
                                     const Code& z, std::int64_t chords, std::uint64_t seed);

struct CrossContainmentReport {
    std::int64_t points = 0;
    std::int64_t minkowski_outside_region = 0;    // A_alpha point not in W_z(x_a, Psi_a)
    std::int64_t region_not_decomposed = 0;       // W_z(x_a, Psi_a) point without w_i in A_i
    std::int64_t region_outside_minkowski = 0;    // rejected by the MinkowskiCombination oracle
    double max_violation = 0.0;
};

// A_i = W_z(x_i, Psi_i); checks that sampled points of
// alpha A1 + (1 - alpha) A0 and of W_z(x_alpha, Psi_alpha) lie in each
// other's set. The models must share S.
CrossContainmentReport minkowski_region_cross_check(const LocationScaleModel& model0,
                                                    const LocationScaleModel& model1, double alpha,
                                                    const Quantizer& q, const Code& z,
                                                    std::int64_t points, std::uint64_t seed,
                                                    double tolerance = 1e-9);

// --- Figure point clouds ----------------------------------------------------------

// Two convex sets (a square and a rotated square) and their alpha = 1/2
// Minkowski combination.
std::vector<SampledSet> minkowski_figure(std::int64_t count, std::uint64_t seed);
// Diagonal-matrix and PSD-matrix combination clouds for
// y0 = (-1, 0.5), y1 = (1, -0.5).
SampledSet diagonal_combination_figure(std::int64_t count, std::uint64_t seed);
SampledSet psd_combination_figure(std::int64_t count, std::uint64_t seed);

}  // namespace qlik

#endif  // QLIK_GEOMETRY_HPP_
