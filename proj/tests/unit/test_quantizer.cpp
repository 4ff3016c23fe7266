#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "qlik/quantizer.hpp"
#include "qlik/random.hpp"
#include "support.hpp"

using namespace qlik;

namespace {
Vector v1(double a) { return Vector::Constant(1, a); }
Vector v2(double a, double b)
{
    Vector v(2);
    v << a, b;
    return v;
}

// Flat-top axial lattice, written out independently of the quantizer.
Vector hex_centre(double pitch, long q, long r)
{
    return v2(pitch * 1.5 * static_cast<double>(q), pitch * std::sqrt(3.0) * (static_cast<double>(r) + 0.5 * static_cast<double>(q)));
}

Code nearest_centre(double pitch, const Vector& y)
{
    Code best;
    double best_d = std::numeric_limits<double>::infinity();
    const long q0 = std::lround(y[0] / (1.5 * pitch));
    const long r0 = std::lround(y[1] / (std::sqrt(3.0) * pitch) - 0.5 * static_cast<double>(q0));
    for (long q = q0 - 3; q <= q0 + 3; ++q)
        for (long r = r0 - 3; r <= r0 + 3; ++r) {
            const double d = (hex_centre(pitch, q, r) - y).norm();
            if (d < best_d) {
                best_d = d;
                best = Code{q, r};
            }
        }
    return best;
}

PolytopeQuantizer two_triangles()
{
    std::vector<PolytopeQuantizer::Cell> cells;
    cells.push_back({4, Polytope({{v2(-1, 0), 0.0}, {v2(0, -1), 0.0}, {v2(1, 1), 1.0}})});
    cells.push_back({2, Polytope({{v2(1, 0), 1.0}, {v2(0, 1), 1.0}, {v2(-1, -1), -1.0}})});
    return PolytopeQuantizer(std::move(cells));
}
}  // namespace

TEST_CASE("ADC bank lookups")
{
    const AdcBank one({{-1.0, 0.0, 1.0}});
    CHECK(one.quantize(v1(0.4)) == Code{2});
    const Box b = one.region(Code{2});
    CHECK(b.lower()[0] == 0.0);
    CHECK(b.upper()[0] == 1.0);
    const Box left = one.region(Code{0});
    CHECK(left.lower()[0] == -INFINITY);
    CHECK(left.upper()[0] == -1.0);
    CHECK(one.quantize(v1(-1.0)) == Code{1});
    CHECK(one.quantize(v1(5.0)) == Code{3});
    CHECK(one.bins(0) == 4);

    const AdcBank sign({{0.0}, {0.0}});
    CHECK(sign.quantize(v2(-3, 5)) == Code{0, 1});
    const Box orthant = sign.region(Code{1, 1});
    CHECK(orthant.lower() == Vector::Zero(2));
    CHECK(orthant.upper()[0] == INFINITY);
    CHECK(orthant.upper()[1] == INFINITY);
}

TEST_CASE("ADC bank validation")
{
    CHECK_THROWS_AS(AdcBank(test::Thresholds{{0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(AdcBank(test::Thresholds{{1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(AdcBank(test::Thresholds{{}}), std::invalid_argument);
    CHECK_THROWS_AS(AdcBank(test::Thresholds{{0.0, INFINITY}}), std::invalid_argument);
    const AdcBank a(test::Thresholds{{0.0}});
    CHECK_THROWS_AS(a.region(Code{2}), std::invalid_argument);
    CHECK_THROWS_AS(a.region(Code{0, 0}), std::invalid_argument);
}

TEST_CASE("hexagon at the origin")
{
    const HexagonalQuantizer hex(1.0);
    CHECK(hex.quantize(v2(0, 0)) == Code{0, 0});
    const Polytope cell = hex.region(Code{0, 0});
    REQUIRE(cell.halfspaces().size() == 6);
    for (const Halfspace& h : cell.halfspaces())
        CHECK(h.offset / h.normal.norm() == doctest::Approx(std::cos(std::numbers::pi / 6)).epsilon(1e-14));
    CHECK(cell.contains(v2(0, 0)));
    CHECK_FALSE(cell.contains(v2(1.01, 0)));
    CHECK(cell.contains(v2(0, 0.8660)));
    CHECK_FALSE(cell.contains(v2(0, 0.8661)));
    CHECK(hex.apothem() == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK_THROWS_AS(HexagonalQuantizer(0.0), std::invalid_argument);
}

TEST_CASE("hexagon membership matches the nearest-centre rule on a grid")
{
    const HexagonalQuantizer hex(1.0);
    const Polytope cell = hex.region(Code{0, 0});
    int checked = 0;
    for (double x = -1.5; x <= 1.5; x += 0.0123)
        for (double y = -1.5; y <= 1.5; y += 0.0123) {
            const Vector p = v2(x, y);
            double other = std::numeric_limits<double>::infinity();
            for (long q = -2; q <= 2; ++q)
                for (long r = -2; r <= 2; ++r)
                    if (q != 0 || r != 0) other = std::min(other, (hex_centre(1.0, q, r) - p).norm());
            if (std::abs(p.norm() - other) < 1e-9) continue;
            REQUIRE(cell.contains(p) == (p.norm() < other));
            ++checked;
        }
    CHECK(checked > 50000);
}

TEST_CASE("hexagonal quantize agrees with exhaustive nearest-centre search")
{
    test::TestRng rng(5);
    for (double pitch : {0.3, 1.0, 2.5}) {
        const HexagonalQuantizer hex(pitch);
        for (int i = 0; i < 10000; ++i) {
            const Vector y = v2(rng.uniform(-20, 20), rng.uniform(-20, 20));
            REQUIRE(hex.quantize(y) == nearest_centre(pitch, y));
            REQUIRE((hex.center(hex.quantize(y)) - hex_centre(pitch, hex.quantize(y)[0], hex.quantize(y)[1])).norm() < 1e-12);
        }
    }
}

TEST_CASE("round trip: the emitted code's region contains y")
{
    test::TestRng rng(6);
    const Quantizer adc(AdcBank(test::Thresholds{{-1.0, 0.0, 2.0}, {0.5}}));
    const Quantizer hex(HexagonalQuantizer(0.7));
    const Quantizer poly(two_triangles());
    for (int i = 0; i < 10000; ++i) {
        const Vector y = v2(rng.uniform(-4, 4), rng.uniform(-4, 4));
        REQUIRE(adc.region(adc.quantize(y)).contains(y));
        REQUIRE(hex.region(hex.quantize(y)).contains(y));
        const Vector u = v2(rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5));
        const Code z = poly.quantize(u);
        if (z != Code{PolytopeQuantizer::kOutsideCode}) REQUIRE(poly.region(z).contains(u));
    }
}

TEST_CASE("regions are convex under sampled chords")
{
    test::TestRng rng(7);
    const Region cells[] = {Region(HexagonalQuantizer(1.0).region(Code{2, -1})), Region(AdcBank(test::Thresholds{{0.0, 1.0}}).region(Code{1})),
                            Region(two_triangles().region(Code{2}))};
    for (const Region& r : cells) {
        const auto pts = sample_region(r, 2000, 3).points;
        for (int i = 0; i < 1000; ++i) {
            const double a = rng.uniform(0, 1);
            REQUIRE(r.contains(a * pts[2 * i] + (1 - a) * pts[2 * i + 1]));
        }
    }
}

TEST_CASE("ADC regions partition a grid")
{
    const AdcBank adc({{-1.0, 0.5}, {0.0, 0.25, 2.0}});
    std::set<Code> seen;
    for (double x = -3; x <= 3; x += 0.05)
        for (double y = -3; y <= 3; y += 0.05) {
            const Vector p = v2(x, y);
            int owners = 0;
            for (std::int64_t i = 0; i < adc.bins(0); ++i)
                for (std::int64_t j = 0; j < adc.bins(1); ++j) owners += adc.region(Code{i, j}).contains(p) ? 1 : 0;
            REQUIRE(owners == 1);
            seen.insert(adc.quantize(p));
        }
    CHECK(seen.size() == 12);
}

TEST_CASE("hexagon sampling acceptance matches the area ratio")
{
    const RegionSample s = sample_region(Region(HexagonalQuantizer(1.0).region(Code{0, 0})), 1000, 4);
    for (const Vector& p : s.points) CHECK(HexagonalQuantizer(1.0).region(Code{0, 0}).contains(p));
    const double ratio = (3.0 * std::sqrt(3.0) / 2.0) / (2.0 * std::sqrt(3.0));
    CHECK(std::abs(s.acceptance_rate - ratio) <= 0.1);
}

TEST_CASE("polytope quantizer")
{
    const PolytopeQuantizer pq = two_triangles();
    CHECK(pq.cells().front().code == 2);
    CHECK(pq.quantize(v2(0.1, 0.1)) == Code{4});
    CHECK(pq.quantize(v2(0.9, 0.9)) == Code{2});
    CHECK(pq.quantize(v2(5, 5)) == Code{PolytopeQuantizer::kOutsideCode});
    // Shared edge goes to the lower code.
    CHECK(pq.quantize(v2(0.5, 0.5)) == Code{2});
    CHECK_THROWS_AS(pq.region(Code{PolytopeQuantizer::kOutsideCode}), std::invalid_argument);
    CHECK_THROWS_AS(pq.region(Code{3}), std::invalid_argument);

    std::vector<PolytopeQuantizer::Cell> overlapping;
    overlapping.push_back({0, Polytope({{v2(1, 0), 1.0}, {v2(-1, 0), 0.0}, {v2(0, 1), 1.0}, {v2(0, -1), 0.0}})});
    overlapping.push_back({1, Polytope({{v2(1, 0), 1.5}, {v2(-1, 0), -0.5}, {v2(0, 1), 1.0}, {v2(0, -1), 0.0}})});
    CHECK_THROWS_AS(PolytopeQuantizer(std::move(overlapping)), std::invalid_argument);
}

TEST_CASE("quantizer JSON round trip")
{
    const Quantizer adc = quantizer_from_json(R"({"kind": "adc", "thresholds": [[-1, 0, 1], [0]]})");
    CHECK(adc.kind() == QuantizerKind::AdcBank);
    CHECK(adc.dimension() == 2);
    CHECK(quantizer_from_json(quantizer_to_json(adc)).adc()->thresholds() == adc.adc()->thresholds());

    const Quantizer hex = quantizer_from_json(R"({"kind": "hex", "pitch": 0.5})");
    CHECK(hex.hex()->pitch() == 0.5);

    const Quantizer poly = quantizer_from_json(R"({"kind": "polytopes", "regions": [
        {"code": 7, "halfspaces": [{"normal": [1, 0], "offset": 1}, {"normal": [-1, 0], "offset": 0},
                                   {"normal": [0, 1], "offset": 1}, {"normal": [0, -1], "offset": 0}]}]})");
    CHECK(poly.quantize(v2(0.5, 0.5)) == Code{7});
    const Quantizer again = quantizer_from_json(quantizer_to_json(poly));
    CHECK(again.polytopes()->cells().size() == 1);

    CHECK_THROWS_AS(quantizer_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(quantizer_from_json(R"({"kind": "voronoi"})"), std::invalid_argument);
    CHECK_THROWS_AS(quantizer_from_json(R"({"kind": "adc", "thresholds": [[1, 0]]})"), std::invalid_argument);
    CHECK_THROWS_AS(quantizer_from_json(R"({"kind": "hex"})"), std::invalid_argument);
}

TEST_CASE("codes order and print")
{
    CHECK(Code{0, 1} < Code{1, 0});
    CHECK(to_string(Code{3, -2}) == "(3,-2)");
    CHECK(CodeHash{}(Code{1, 2}) != CodeHash{}(Code{2, 1}));
}
