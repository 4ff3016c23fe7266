#include "qlik/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qlik {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dimension(const Vector& y, int n, const char* who)
{
    if (y.size() != n) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    if (!y.allFinite()) throw std::invalid_argument(std::string(who) + ": non-finite input");
}
}  // namespace

std::string to_string(const Code& code)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < code.size(); ++i) os << (i ? "," : "") << code[i];
    os << ')';
    return os.str();
}

std::size_t CodeHash::operator()(const Code& c) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t v : c.value) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

// --- AdcBank ---------------------------------------------------------------

AdcBank::AdcBank(std::vector<std::vector<double>> thresholds) : thresholds_(std::move(thresholds))
{
    if (thresholds_.empty()) throw std::invalid_argument("AdcBank: needs at least one dimension");
    for (const auto& t : thresholds_) {
        if (t.empty()) throw std::invalid_argument("AdcBank: every dimension needs a threshold");
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (!std::isfinite(t[k])) throw std::invalid_argument("AdcBank: thresholds must be finite");
            if (k > 0 && !(t[k - 1] < t[k]))
                throw std::invalid_argument("AdcBank: thresholds must be strictly increasing");
        }
    }
}

double AdcBank::lower_edge(int dim, std::int64_t bin) const
{
    const auto& t = thresholds_.at(static_cast<std::size_t>(dim));
    return bin == 0 ? -kInf : t.at(static_cast<std::size_t>(bin - 1));
}

double AdcBank::upper_edge(int dim, std::int64_t bin) const
{
    const auto& t = thresholds_.at(static_cast<std::size_t>(dim));
    return bin == static_cast<std::int64_t>(t.size()) ? kInf : t.at(static_cast<std::size_t>(bin));
}

Code AdcBank::quantize(const Vector& y) const
{
    require_dimension(y, dimension(), "AdcBank::quantize");
    std::vector<std::int64_t> bins(thresholds_.size());
    for (std::size_t j = 0; j < thresholds_.size(); ++j) {
        const auto& t = thresholds_[j];
        bins[j] = std::upper_bound(t.begin(), t.end(), y[static_cast<Eigen::Index>(j)]) - t.begin();
    }
    return Code(std::move(bins));
}

Box AdcBank::region(const Code& z) const
{
    if (static_cast<int>(z.size()) != dimension())
        throw std::invalid_argument("AdcBank::region: code " + to_string(z) + " has wrong length");
    Vector lo(dimension()), hi(dimension());
    for (int j = 0; j < dimension(); ++j) {
        const std::int64_t b = z[static_cast<std::size_t>(j)];
        if (b < 0 || b >= bins(j))
            throw std::invalid_argument("AdcBank::region: unknown code " + to_string(z));
        lo[j] = lower_edge(j, b);
        hi[j] = upper_edge(j, b);
    }
    return Box(lo, hi);
}

// --- HexagonalQuantizer ----------------------------------------------------

HexagonalQuantizer::HexagonalQuantizer(double pitch) : pitch_(pitch)
{
    if (!(pitch > 0.0) || !std::isfinite(pitch))
        throw std::invalid_argument("HexagonalQuantizer: pitch must be positive");
}

double HexagonalQuantizer::apothem() const { return pitch_ * std::numbers::sqrt3 / 2.0; }

Vector HexagonalQuantizer::center(const Code& z) const
{
    if (z.size() != 2) throw std::invalid_argument("HexagonalQuantizer: codes are (q, r) pairs");
    const auto q = static_cast<double>(z[0]);
    const auto r = static_cast<double>(z[1]);
    Vector c(2);
    c << pitch_ * 1.5 * q, pitch_ * std::numbers::sqrt3 * (r + 0.5 * q);
    return c;
}

Polytope HexagonalQuantizer::region(const Code& z) const
{
    const Vector c = center(z);
    std::vector<Halfspace> hs;
    hs.reserve(6);
    for (int k = 0; k < 6; ++k) {
        const double angle = (30.0 + 60.0 * k) * std::numbers::pi / 180.0;
        Vector normal(2);
        normal << std::cos(angle), std::sin(angle);
        hs.push_back({normal, normal.dot(c) + apothem()});
    }
    return Polytope(std::move(hs), c);
}

Code HexagonalQuantizer::quantize(const Vector& y) const
{
    require_dimension(y, 2, "HexagonalQuantizer::quantize");
    // Fractional axial coordinates, then cube rounding.
    const double fq = (2.0 / 3.0) * y[0] / pitch_;
    const double fr = (-y[0] / 3.0 + std::numbers::sqrt3 / 3.0 * y[1]) / pitch_;
    const double fs = -fq - fr;
    double rq = std::round(fq), rr = std::round(fr), rs = std::round(fs);
    const double dq = std::abs(rq - fq), dr = std::abs(rr - fr), ds = std::abs(rs - fs);
    if (dq > dr && dq > ds) rq = -rr - rs;
    else if (dr > ds) rr = -rq - rs;
    const auto q0 = static_cast<std::int64_t>(rq);
    const auto r0 = static_cast<std::int64_t>(rr);

    static constexpr std::int64_t kNeighbours[7][2] = {{0, 0},  {1, 0},  {1, -1}, {0, -1},
                                                       {-1, 0}, {-1, 1}, {0, 1}};
    const Code* best = nullptr;
    std::vector<Code> candidates;
    candidates.reserve(7);
    for (const auto& d : kNeighbours) candidates.push_back(Code{q0 + d[0], r0 + d[1]});
    for (const Code& c : candidates) {
        if (region(c).contains(y) && (best == nullptr || c < *best)) best = &c;
    }
    if (best != nullptr) return *best;
    // Rounding left y in a sliver between closed cells; fall back to the
    // nearest centre.
    double best_d = kInf;
    for (const Code& c : candidates) {
        const double d = (center(c) - y).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = &c;
        }
    }
    return *best;
}

// --- PolytopeQuantizer -----------------------------------------------------

PolytopeQuantizer::PolytopeQuantizer(std::vector<Cell> cells, std::uint64_t check_seed)
    : cells_(std::move(cells))
{
    if (cells_.empty()) throw std::invalid_argument("PolytopeQuantizer: needs at least one region");
    std::sort(cells_.begin(), cells_.end(),
              [](const Cell& a, const Cell& b) { return a.code < b.code; });
    const int n = cells_.front().polytope.dimension();
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (cells_[i].code < 0) throw std::invalid_argument("PolytopeQuantizer: codes must be >= 0");
        if (i > 0 && cells_[i].code == cells_[i - 1].code)
            throw std::invalid_argument("PolytopeQuantizer: duplicate code");
        if (cells_[i].polytope.dimension() != n)
            throw std::invalid_argument("PolytopeQuantizer: inconsistent dimensions");
    }
    // Disjointness up to boundaries: no sampled point of one cell may lie
    // strictly inside another.
    constexpr std::int64_t kProbe = 256;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const RegionSample s =
            sample_region(Region(cells_[i].polytope), kProbe, check_seed + static_cast<std::uint64_t>(i));
        for (std::size_t k = 0; k < cells_.size(); ++k) {
            if (k == i) continue;
            for (const Vector& p : s.points) {
                if (cells_[k].polytope.max_violation(p) < -1e-9)
                    throw std::invalid_argument("PolytopeQuantizer: regions " +
                                                std::to_string(cells_[i].code) + " and " +
                                                std::to_string(cells_[k].code) + " overlap");
            }
        }
    }
}

Code PolytopeQuantizer::quantize(const Vector& y) const
{
    require_dimension(y, dimension(), "PolytopeQuantizer::quantize");
    for (const Cell& c : cells_)
        if (c.polytope.contains(y)) return Code{c.code};
    return Code{kOutsideCode};
}

const Polytope& PolytopeQuantizer::region(const Code& z) const
{
    if (z.size() != 1) throw std::invalid_argument("PolytopeQuantizer: codes are scalars");
    if (z[0] == kOutsideCode)
        throw std::invalid_argument("PolytopeQuantizer: the outside code has no convex region");
    const auto it = std::lower_bound(cells_.begin(), cells_.end(), z[0],
                                     [](const Cell& c, std::int64_t v) { return c.code < v; });
    if (it == cells_.end() || it->code != z[0])
        throw std::invalid_argument("PolytopeQuantizer: unknown code " + to_string(z));
    return it->polytope;
}

// --- Quantizer ---------------------------------------------------------------

QuantizerKind Quantizer::kind() const
{
    if (adc()) return QuantizerKind::AdcBank;
    if (hex()) return QuantizerKind::Hexagonal;
    return QuantizerKind::PolytopeList;
}

int Quantizer::dimension() const
{
    return std::visit(
        [](const auto& q) -> int {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, HexagonalQuantizer>) return 2;
            else return q.dimension();
        },
        impl_);
}

Code Quantizer::quantize(const Vector& y) const
{
    return std::visit([&y](const auto& q) { return q.quantize(y); }, impl_);
}

Region Quantizer::region(const Code& z) const
{
    return std::visit([&z](const auto& q) { return Region(q.region(z)); }, impl_);
}

}  // namespace qlik
