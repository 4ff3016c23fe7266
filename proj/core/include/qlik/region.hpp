#ifndef QLIK_REGION_HPP_
#define QLIK_REGION_HPP_

#include <cstdint>
#include <variant>
#include <vector>

#include "qlik/noise.hpp"

namespace qlik {

// Product of half-open intervals [lower_j, upper_j). Ends may be +-inf;
// an infinite upper end is treated as closed.
class Box {
public:
    Box(Vector lower, Vector upper);

    const Vector& lower() const { return lower_; }
    const Vector& upper() const { return upper_; }
    int dimension() const { return static_cast<int>(lower_.size()); }
    bool bounded() const;

    bool contains(const Vector& y) const;

private:
    Vector lower_;
    Vector upper_;
};

struct Halfspace {
    Vector normal;
    double offset = 0.0;  // {y : normal.y <= offset}
};

// Intersection of finitely many closed halfspaces. Construction certifies
// nonemptiness with an interior (Chebyshev-centre) point.
class Polytope {
public:
    explicit Polytope(std::vector<Halfspace> halfspaces);
    // Skips the LP certification; the caller vouches for `interior`.
    Polytope(std::vector<Halfspace> halfspaces, Vector interior);

    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
    const Vector& interior_point() const { return interior_; }
    int dimension() const { return static_cast<int>(interior_.size()); }

    bool contains(const Vector& y) const;
    // Largest halfspace residual normal.y - offset (<= 0 inside).
    double max_violation(const Vector& y) const;
    // max over the polytope of direction.y; +inf if unbounded.
    double support(const Vector& direction) const;
    // Tight axis-aligned bounding box; infinite ends for unbounded sides.
    Box bounding_box() const;

    Eigen::MatrixXd normals_matrix() const;
    Vector offsets() const;

private:
    std::vector<Halfspace> halfspaces_;
    Vector interior_;
};

class Region {
public:
    Region(Box box) : shape_(std::move(box)) {}  // NOLINT(google-explicit-constructor)
    Region(Polytope polytope) : shape_(std::move(polytope)) {}  // NOLINT

    bool is_box() const { return std::holds_alternative<Box>(shape_); }
    const Box& box() const { return std::get<Box>(shape_); }
    const Polytope& polytope() const { return std::get<Polytope>(shape_); }
    int dimension() const;

    bool contains(const Vector& y) const;
    // Polytope view of either kind (finite box ends become halfspaces).
    Polytope as_polytope() const;
    Box bounding_box() const;

private:
    std::variant<Box, Polytope> shape_;
};

struct RegionSample {
    std::vector<Vector> points;
    double acceptance_rate = 1.0;
};

// Uniform rejection sampling from the bounding box for bounded regions.
// Unbounded box sides use an Exp(1) tail beyond the finite end (or a
// two-sided Exp(1) spread around 0 when both ends are infinite).
// Throws std::runtime_error if the acceptance rate drops below 1e-6.
RegionSample sample_region(const Region& region, std::int64_t count, std::uint64_t seed);

}  // namespace qlik

#endif  // QLIK_REGION_HPP_
