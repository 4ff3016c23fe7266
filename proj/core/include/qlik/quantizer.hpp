#ifndef QLIK_QUANTIZER_HPP_
#define QLIK_QUANTIZER_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qlik/region.hpp"

namespace qlik {

// A quantizer output. ADC banks emit one bin index per dimension,
// hexagonal quantizers an axial (q, r) pair, polytope lists a single
// integer. Ordered lexicographically; that order breaks boundary ties.
struct Code {
    std::vector<std::int64_t> value;

    Code() = default;
    Code(std::initializer_list<std::int64_t> v) : value(v) {}
    explicit Code(std::vector<std::int64_t> v) : value(std::move(v)) {}

    std::size_t size() const { return value.size(); }
    std::int64_t operator[](std::size_t i) const { return value[i]; }

    auto operator<=>(const Code&) const = default;
    bool operator==(const Code&) const = default;
};

std::string to_string(const Code& code);

struct CodeHash {
    std::size_t operator()(const Code& c) const noexcept;
};

// Independent monotone scalar quantizers, one per coordinate. Bin k of
// dimension j is [t_{k-1}, t_k) with t_{-1} = -inf and t_K = +inf, so a
// dimension with K thresholds has K + 1 bins indexed 0..K left to right.
class AdcBank {
public:
    explicit AdcBank(std::vector<std::vector<double>> thresholds);

    int dimension() const { return static_cast<int>(thresholds_.size()); }
    const std::vector<std::vector<double>>& thresholds() const { return thresholds_; }
    std::int64_t bins(int dim) const
    {
        return static_cast<std::int64_t>(thresholds_[static_cast<std::size_t>(dim)].size()) + 1;
    }
    double lower_edge(int dim, std::int64_t bin) const;
    double upper_edge(int dim, std::int64_t bin) const;

    Code quantize(const Vector& y) const;
    Box region(const Code& z) const;

private:
    std::vector<std::vector<double>> thresholds_;
};

// Regular hexagonal tiling of the plane, flat-top orientation, cells
// parametrized by circumradius (pitch). Cell (q, r) is centred at
// pitch * (1.5 q, sqrt(3) (r + q / 2)).
class HexagonalQuantizer {
public:
    explicit HexagonalQuantizer(double pitch);

    double pitch() const { return pitch_; }
    double apothem() const;
    Vector center(const Code& z) const;

    Code quantize(const Vector& y) const;
    Polytope region(const Code& z) const;

private:
    double pitch_;
};

// Explicit list of convex cells with nonnegative integer codes; points
// in none of them map to kOutsideCode, which has no convex region.
class PolytopeQuantizer {
public:
    static constexpr std::int64_t kOutsideCode = -1;

    struct Cell {
        std::int64_t code;
        Polytope polytope;
    };

    // Validates codes (unique, >= 0), dimensions, and pairwise disjoint
    // interiors by cross-membership of sampled points.
    explicit PolytopeQuantizer(std::vector<Cell> cells, std::uint64_t check_seed = 0);

    int dimension() const { return cells_.front().polytope.dimension(); }
    const std::vector<Cell>& cells() const { return cells_; }

    Code quantize(const Vector& y) const;
    const Polytope& region(const Code& z) const;

private:
    std::vector<Cell> cells_;  // sorted by code
};

enum class QuantizerKind { AdcBank, Hexagonal, PolytopeList };

class Quantizer {
public:
    Quantizer(AdcBank q) : impl_(std::move(q)) {}              // NOLINT
    Quantizer(HexagonalQuantizer q) : impl_(std::move(q)) {}   // NOLINT
    Quantizer(PolytopeQuantizer q) : impl_(std::move(q)) {}    // NOLINT

    QuantizerKind kind() const;
    int dimension() const;

    // Throws std::invalid_argument on dimension mismatch.
    Code quantize(const Vector& y) const;
    // Convex inverse image of z. Throws std::invalid_argument for codes
    // the quantizer cannot emit and for the polytope-list outside code.
    Region region(const Code& z) const;

    const AdcBank* adc() const { return std::get_if<AdcBank>(&impl_); }
    const HexagonalQuantizer* hex() const { return std::get_if<HexagonalQuantizer>(&impl_); }
    const PolytopeQuantizer* polytopes() const { return std::get_if<PolytopeQuantizer>(&impl_); }

private:
    std::variant<AdcBank, HexagonalQuantizer, PolytopeQuantizer> impl_;
};

// JSON description:
//   {"kind": "adc", "thresholds": [[...], ...]}
//   {"kind": "hex", "pitch": p}
//   {"kind": "polytopes", "regions": [{"code": k, "halfspaces":
//        [{"normal": [...], "offset": o}, ...]}, ...]}
// Throws std::invalid_argument on malformed input.
Quantizer quantizer_from_json(const std::string& text);
std::string quantizer_to_json(const Quantizer& q);

}  // namespace qlik

#endif  // QLIK_QUANTIZER_HPP_
