#include "qlik/region.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qlik/linprog.hpp"
#include "qlik/random.hpp"

namespace qlik {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Box::Box(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper))
{
    if (lower_.size() != upper_.size() || lower_.size() == 0)
        throw std::invalid_argument("Box: lower and upper must be nonempty and equal length");
    for (Eigen::Index j = 0; j < lower_.size(); ++j) {
        if (std::isnan(lower_[j]) || std::isnan(upper_[j]) || !(lower_[j] < upper_[j]))
            throw std::invalid_argument("Box: requires lower[j] < upper[j]");
    }
}

bool Box::bounded() const { return lower_.allFinite() && upper_.allFinite(); }

bool Box::contains(const Vector& y) const
{
    if (y.size() != lower_.size()) throw std::invalid_argument("Box::contains: dimension mismatch");
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        if (!(lower_[j] <= y[j])) return false;
        if (upper_[j] == kInf) continue;
        if (!(y[j] < upper_[j])) return false;
    }
    return true;
}

Polytope::Polytope(std::vector<Halfspace> halfspaces) : halfspaces_(std::move(halfspaces))
{
    if (halfspaces_.empty()) throw std::invalid_argument("Polytope: needs at least one halfspace");
    const Eigen::Index n = halfspaces_.front().normal.size();
    const auto k = static_cast<Eigen::Index>(halfspaces_.size());
    // Chebyshev centre: max t s.t. a.x + |a| t <= b, t <= 1.
    Eigen::MatrixXd A(k + 1, n + 1);
    Vector b(k + 1);
    for (Eigen::Index i = 0; i < k; ++i) {
        const Halfspace& h = halfspaces_[static_cast<std::size_t>(i)];
        if (h.normal.size() != n) throw std::invalid_argument("Polytope: inconsistent dimensions");
        const double norm = h.normal.norm();
        if (!(norm > 0.0) || !std::isfinite(h.offset))
            throw std::invalid_argument("Polytope: halfspace normal must be nonzero and offset finite");
        A.block(i, 0, 1, n) = h.normal.transpose();
        A(i, n) = norm;
        b[i] = h.offset;
    }
    A.row(k).setZero();
    A(k, n) = 1.0;
    b[k] = 1.0;
    Vector c = Vector::Zero(n + 1);
    c[n] = 1.0;
    const LpResult lp = maximize_linear(c, A, b);
    if (lp.status != LpStatus::Optimal || lp.value <= 1e-12)
        throw std::invalid_argument("Polytope: region is empty or has no interior");
    interior_ = lp.x.head(n);
}

Polytope::Polytope(std::vector<Halfspace> halfspaces, Vector interior)
    : halfspaces_(std::move(halfspaces)), interior_(std::move(interior))
{
    if (halfspaces_.empty()) throw std::invalid_argument("Polytope: needs at least one halfspace");
    for (const Halfspace& h : halfspaces_)
        if (h.normal.size() != interior_.size())
            throw std::invalid_argument("Polytope: inconsistent dimensions");
}

bool Polytope::contains(const Vector& y) const
{
    if (y.size() != interior_.size())
        throw std::invalid_argument("Polytope::contains: dimension mismatch");
    for (const Halfspace& h : halfspaces_)
        if (!(h.normal.dot(y) <= h.offset)) return false;
    return true;
}

double Polytope::max_violation(const Vector& y) const
{
    double worst = -kInf;
    for (const Halfspace& h : halfspaces_) worst = std::max(worst, h.normal.dot(y) - h.offset);
    return worst;
}

Eigen::MatrixXd Polytope::normals_matrix() const
{
    Eigen::MatrixXd A(static_cast<Eigen::Index>(halfspaces_.size()), interior_.size());
    for (std::size_t i = 0; i < halfspaces_.size(); ++i)
        A.row(static_cast<Eigen::Index>(i)) = halfspaces_[i].normal.transpose();
    return A;
}

Vector Polytope::offsets() const
{
    Vector b(static_cast<Eigen::Index>(halfspaces_.size()));
    for (std::size_t i = 0; i < halfspaces_.size(); ++i)
        b[static_cast<Eigen::Index>(i)] = halfspaces_[i].offset;
    return b;
}

double Polytope::support(const Vector& direction) const
{
    const LpResult lp = maximize_linear(direction, normals_matrix(), offsets());
    if (lp.status == LpStatus::Unbounded) return kInf;
    if (lp.status != LpStatus::Optimal) throw std::logic_error("Polytope::support: infeasible polytope");
    return lp.value;
}

Box Polytope::bounding_box() const
{
    const int n = dimension();
    Vector lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
        Vector e = Vector::Zero(n);
        e[j] = 1.0;
        hi[j] = support(e);
        lo[j] = -support(-e);
    }
    return Box(lo, hi);
}

int Region::dimension() const
{
    return is_box() ? box().dimension() : polytope().dimension();
}

bool Region::contains(const Vector& y) const
{
    return is_box() ? box().contains(y) : polytope().contains(y);
}

Polytope Region::as_polytope() const
{
    if (!is_box()) return polytope();
    const Box& bx = box();
    const int n = bx.dimension();
    std::vector<Halfspace> hs;
    Vector interior(n);
    for (int j = 0; j < n; ++j) {
        const double lo = bx.lower()[j];
        const double hi = bx.upper()[j];
        if (std::isfinite(hi)) {
            Vector a = Vector::Zero(n);
            a[j] = 1.0;
            hs.push_back({a, hi});
        }
        if (std::isfinite(lo)) {
            Vector a = Vector::Zero(n);
            a[j] = -1.0;
            hs.push_back({a, -lo});
        }
        if (std::isfinite(lo) && std::isfinite(hi)) interior[j] = 0.5 * (lo + hi);
        else if (std::isfinite(lo)) interior[j] = lo + 1.0;
        else if (std::isfinite(hi)) interior[j] = hi - 1.0;
        else interior[j] = 0.0;
    }
    if (hs.empty()) throw std::invalid_argument("Region::as_polytope: box is the whole space");
    return Polytope(std::move(hs), interior);
}

Box Region::bounding_box() const { return is_box() ? box() : polytope().bounding_box(); }

namespace {

double propose_coordinate(Rng& rng, double lo, double hi)
{
    if (std::isfinite(lo) && std::isfinite(hi)) return uniform_in(rng, lo, hi);
    const double e = -std::log(uniform_open01(rng));
    if (std::isfinite(lo)) return lo + e;
    if (std::isfinite(hi)) return hi - e;
    return uniform_open01(rng) < 0.5 ? -e : e;
}

}  // namespace

RegionSample sample_region(const Region& region, std::int64_t count, std::uint64_t seed)
{
    if (count < 1) throw std::invalid_argument("sample_region: count must be >= 1");
    const Box bbox = region.bounding_box();
    const int n = region.dimension();
    Rng rng = make_rng(seed);
    RegionSample out;
    out.points.reserve(static_cast<std::size_t>(count));
    std::int64_t attempts = 0;
    Vector y(n);
    while (static_cast<std::int64_t>(out.points.size()) < count) {
        for (int j = 0; j < n; ++j) {
            // Half-open upper ends: resample the measure-zero boundary.
            do {
                y[j] = propose_coordinate(rng, bbox.lower()[j], bbox.upper()[j]);
            } while (y[j] == bbox.upper()[j]);
        }
        ++attempts;
        if (region.contains(y)) out.points.push_back(y);
        const auto accepted = static_cast<double>(out.points.size());
        if (attempts >= 1'000'000 && accepted / static_cast<double>(attempts) < 1e-6)
            throw std::runtime_error("sample_region: acceptance rate below 1e-6 (degenerate region)");
    }
    out.acceptance_rate = static_cast<double>(count) / static_cast<double>(attempts);
    return out;
}

}  // namespace qlik
