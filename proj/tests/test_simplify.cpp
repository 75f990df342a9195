#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>

#include "parcelize/convex_hull.hpp"
#include "parcelize/simplify.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace parcelize;

namespace {

Polygon ring(std::initializer_list<Point> pts) {
    Polygon p;
    p.vertices = pts;
    return p;
}

const Polygon kLShape = ring({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});

bool cyclically_equal(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return false;
    const std::size_t n = a.size();
    for (std::size_t off = 0; off < n; ++off) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = a[(off + i) % n] == b[i];
        if (ok) return true;
    }
    return false;
}

std::set<std::pair<double, double>> vertex_set(const Polygon& p) {
    std::set<std::pair<double, double>> s;
    for (const Point& v : p.vertices) s.insert({v.x, v.y});
    return s;
}

}  // namespace

TEST_CASE("find_pockets: convex polygon has none") {
    REQUIRE(find_pockets(ring({{0, 0}, {4, 0}, {4, 4}, {0, 4}})).empty());
}

TEST_CASE("find_pockets: the L-shape has exactly one") {
    const auto pockets = find_pockets(kLShape);
    REQUIRE(pockets.size() == 1);
    const Pocket& p = pockets.front();
    REQUIRE(kLShape.vertices[p.start_index] == Point{2, 1});
    REQUIRE(kLShape.vertices[p.end_index] == Point{1, 2});
    REQUIRE(p.chord_length == Catch::Approx(std::sqrt(2.0)));
    REQUIRE(p.path_length == Catch::Approx(2.0));
}

TEST_CASE("find_pockets: octagon with two notches") {
    // Square hull; both the top and the left side carry a concave excursion.
    const Polygon octo =
        ring({{0, 0}, {6, 0}, {6, 6}, {4, 6}, {3, 4}, {2, 6}, {0, 6}, {1, 3}});
    const auto pockets = find_pockets(octo);
    REQUIRE(pockets.size() == 2);
    for (const Pocket& p : pockets) {
        REQUIRE(p.chord_length > 0.0);
        REQUIRE(p.path_length > p.chord_length);
    }
    // Brute-force chord set: hull edges minus polygon edges.
    const auto chords = oracles::brute_pocket_chords(octo);
    REQUIRE(chords.size() == 2);
    for (const Pocket& p : pockets) {
        const auto e = oracles::make_edge(octo.vertices[p.start_index],
                                          octo.vertices[p.end_index]);
        REQUIRE(std::find(chords.begin(), chords.end(), e) != chords.end());
    }
}

TEST_CASE("pocket_simplify: L-shape threshold arithmetic") {
    SECTION("t = 1.5 replaces the pocket (2 < 1.5 * sqrt(2))") {
        const Polygon out = pocket_simplify(kLShape, 1.5);
        REQUIRE(cyclically_equal(out.vertices, {{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}}));
    }
    SECTION("t = 1.2 keeps the original path (2 >= 1.2 * sqrt(2))") {
        const Polygon out = pocket_simplify(kLShape, 1.2);
        REQUIRE(out.vertices == kLShape.vertices);
    }
    SECTION("convex input unchanged for any t") {
        const Polygon sq = ring({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
        REQUIRE(pocket_simplify(sq, 1.0).vertices == sq.vertices);
        REQUIRE(pocket_simplify(sq, 1e9).vertices == sq.vertices);
    }
}

TEST_CASE("pocket_simplify: exact-tie keeps the path") {
    // Pocket with path == t * chord must not be replaced (strict <).
    const auto pockets = find_pockets(kLShape);
    const double t_tie = pockets.front().path_length / pockets.front().chord_length;
    REQUIRE(pocket_simplify(kLShape, t_tie).vertices == kLShape.vertices);
}

TEST_CASE("pocket_simplify invariants on random simple polygons") {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        const Polygon poly = gen::random_simple_polygon(rng);
        const Polygon hull = convex_hull(poly);
        const double t = 1.0 + gen::unit(rng) * 3.0;
        const Polygon out = pocket_simplify(poly, t);

        // Vertex subset, perimeter non-increase, area sandwich, hull containment.
        const auto in_set = vertex_set(poly);
        for (const Point& v : out.vertices) {
            REQUIRE(in_set.count({v.x, v.y}) == 1);
            REQUIRE(point_in_polygon(v, hull) != Location::Outside);
        }
        REQUIRE(perimeter(out) <= perimeter(poly) + 1e-9);
        REQUIRE(signed_area(out) >= signed_area(poly) - 1e-9);
        REQUIRE(signed_area(out) <= signed_area(hull) + 1e-9);

        // t = 1 is the identity; t -> infinity is the hull.
        REQUIRE(pocket_simplify(poly, 1.0).vertices == poly.vertices);
        REQUIRE(cyclically_equal(pocket_simplify(poly, 1e12).vertices, hull.vertices));

        // Monotone replacement set: larger t never keeps a vertex that a
        // smaller t deleted.
        const Polygon out2 = pocket_simplify(poly, t + 1.0);
        const auto set_t = vertex_set(out);
        for (const Point& v : out2.vertices) REQUIRE(set_t.count({v.x, v.y}) == 1);
    }
}

TEST_CASE("douglas_peucker_chain: open-chain semantics") {
    const std::vector<Point> chain{{0, 0}, {1, 0.1}, {2, 0}};
    REQUIRE(douglas_peucker_chain(chain, 0.2) == std::vector<Point>{{0, 0}, {2, 0}});
    REQUIRE(douglas_peucker_chain(chain, 0.05) == chain);
}

TEST_CASE("douglas_peucker: epsilon 0 drops only exactly-collinear vertices") {
    const Polygon withCollinear =
        ring({{0, 0}, {2, 0}, {4, 0}, {4, 4}, {0, 4}});  // (2,0) is collinear
    const SimplifyOutcome out = douglas_peucker(withCollinear, 0.0);
    REQUIRE_FALSE(out.over_simplified);
    REQUIRE(cyclically_equal(out.polygon.vertices, {{0, 0}, {4, 0}, {4, 4}, {0, 4}}));

    const Polygon square = ring({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
    REQUIRE(cyclically_equal(douglas_peucker(square, 0.0).polygon.vertices, square.vertices));
}

TEST_CASE("douglas_peucker: degenerate output falls back to a flagged triangle") {
    // A long thin sliver collapses to its endpoints at a large epsilon.
    const Polygon sliver = ring({{0, 0}, {5, 0.2}, {10, 0}, {5, 0.4}});
    const SimplifyOutcome out = douglas_peucker(sliver, 1.0);
    REQUIRE(out.over_simplified);
    REQUIRE(out.polygon.vertices.size() == 3);
    REQUIRE(signed_area(out.polygon) > 0.0);
}

TEST_CASE("douglas_peucker error bound and vertex subset on random polylines") {
    std::mt19937 rng(13);
    for (int iter = 0; iter < 100; ++iter) {
        const std::vector<Point> chain = gen::random_polyline(rng);
        const double eps = gen::unit(rng) * 10.0;
        const std::vector<Point> simp = douglas_peucker_chain(chain, eps);
        REQUIRE(simp.size() >= 2);
        REQUIRE(simp.front() == chain.front());
        REQUIRE(simp.back() == chain.back());
        std::size_t k = 0;  // subsequence check
        for (const Point& v : chain) {
            if (k < simp.size() && v == simp[k]) ++k;
        }
        REQUIRE(k == simp.size());
        for (const Point& v : chain)
            REQUIRE(oracles::min_distance_to_chain(v, simp) <= eps + 1e-9);
    }
}

TEST_CASE("simplify dispatch honors passes and validates parameters") {
    SimplifyParams bad;
    bad.method = SimplifyMethod::PocketBased;
    bad.t = 0.5;
    REQUIRE_THROWS_AS(simplify(kLShape, bad), ConfigError);

    SimplifyParams dp;
    dp.method = SimplifyMethod::DouglasPeucker;
    dp.epsilon = -1.0;
    REQUIRE_THROWS_AS(simplify(kLShape, dp), ConfigError);

    // Two pocket passes reach the hull of the once-simplified polygon.
    SimplifyParams pocket;
    pocket.method = SimplifyMethod::PocketBased;
    pocket.t = 1.5;
    pocket.passes = 3;
    const SimplifyOutcome out = simplify(kLShape, pocket);
    REQUIRE(cyclically_equal(out.polygon.vertices, {{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}}));
}
