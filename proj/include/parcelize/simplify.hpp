#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "parcelize/convex_hull.hpp"
#include "parcelize/errors.hpp"
#include "parcelize/polygon.hpp"

namespace parcelize {

/// A convex-hull edge of a polygon that is not an edge of the polygon itself.
/// It spans a concave excursion of the boundary: the chord is the hull edge,
/// the path is the boundary walk between the chord's endpoints.
struct Pocket {
    std::size_t start_index = 0;  // index into the polygon's vertex list
    std::size_t end_index = 0;
    double chord_length = 0.0;
    double path_length = 0.0;
};

enum class SimplifyMethod { PocketBased, DouglasPeucker };

struct SimplifyParams {
    SimplifyMethod method = SimplifyMethod::PocketBased;
    double t = 1.0;        // pocket threshold ratio, >= 1
    double epsilon = 0.0;  // Douglas-Peucker tolerance in pixels, >= 0
    int passes = 1;        // repeated application; 1 = the single-pass semantics

    void validate() const {
        if (passes < 1) throw ConfigError("simplify passes must be >= 1");
        if (method == SimplifyMethod::PocketBased && t < 1.0)
            throw ConfigError("pocket threshold t must be >= 1");
        if (method == SimplifyMethod::DouglasPeucker && epsilon < 0.0)
            throw ConfigError("douglas-peucker epsilon must be >= 0");
    }
};

namespace detail {

// Maps each hull vertex back to its index in the polygon. Simple polygons
// have distinct vertices, so exact coordinate match is unambiguous.
inline std::vector<std::size_t> hull_vertex_indices(const Polygon& poly,
                                                    const std::vector<Point>& hull) {
    std::vector<std::size_t> idx(hull.size());
    for (std::size_t h = 0; h < hull.size(); ++h) {
        bool found = false;
        for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
            if (poly.vertices[i] == hull[h]) {
                idx[h] = i;
                found = true;
                break;
            }
        }
        if (!found) throw GeometryError("hull vertex missing from polygon");
    }
    return idx;
}

}  // namespace detail

/// One Pocket per hull edge absent from the polygon's edge set. The path is
/// the forward boundary walk from start to end; for a counter-clockwise
/// polygon this is exactly the concave excursion excluded from the hull.
/// Convex polygons yield an empty list.
inline std::vector<Pocket> find_pockets(const Polygon& poly) {
    require_ring(poly);
    if (signed_area(poly) <= 0.0)
        throw GeometryError("find_pockets expects a counter-clockwise ring");
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    const std::vector<Point> hull = convex_hull(poly.vertices);
    const std::vector<std::size_t> hidx = detail::hull_vertex_indices(poly, hull);

    std::vector<Pocket> pockets;
    for (std::size_t h = 0; h < hull.size(); ++h) {
        const std::size_t ia = hidx[h];
        const std::size_t ib = hidx[(h + 1) % hull.size()];
        if ((ia + 1) % n == ib) continue;  // hull edge is a polygon edge
        Pocket p;
        p.start_index = ia;
        p.end_index = ib;
        p.chord_length = distance(v[ia], v[ib]);
        p.path_length = 0.0;
        for (std::size_t k = ia; k != ib; k = (k + 1) % n)
            p.path_length += distance(v[k], v[(k + 1) % n]);
        pockets.push_back(p);
    }
    return pockets;
}

/// Pocket-based simplification, single pass: pockets are found once on the
/// input polygon; every pocket whose boundary path is shorter than t times
/// its chord is replaced by the chord (the vertices between its endpoints
/// are deleted). Ties keep the original path. Hull vertices are never
/// deleted, so t = 1 returns the input and t -> infinity returns the hull.
inline Polygon pocket_simplify(const Polygon& poly, double t) {
    if (t < 1.0) throw ConfigError("pocket threshold t must be >= 1");
    const std::vector<Pocket> pockets = find_pockets(poly);
    const std::size_t n = poly.vertices.size();
    std::vector<bool> keep(n, true);
    for (const Pocket& p : pockets) {
        // Strict "path < t * chord"; ties keep the original path. The epsilon
        // absorbs summation noise so a collinear excursion (path == chord)
        // never flips the t = 1 identity.
        if (p.path_length < t * p.chord_length - detail::kGeomEps) {
            for (std::size_t k = (p.start_index + 1) % n; k != p.end_index; k = (k + 1) % n)
                keep[k] = false;
        }
    }
    Polygon out;
    out.id = poly.id;
    out.vertices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (keep[i]) out.vertices.push_back(poly.vertices[i]);
    }
    if (out.vertices.size() < 3) throw GeometryError("pocket simplification left < 3 vertices");
    return out;
}

/// Perpendicular distance from p to the segment [a, b].
inline double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    const double len2 = squared_distance(a, b);
    if (len2 == 0.0) return distance(p, a);
    double u = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len2;
    u = std::clamp(u, 0.0, 1.0);
    return distance(p, Point{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)});
}

/// Classic Douglas-Peucker on an open chain. Endpoints are always kept; a
/// vertex survives only if it lies farther than epsilon from the chord of
/// the sub-chain it belongs to.
inline std::vector<Point> douglas_peucker_chain(const std::vector<Point>& chain, double epsilon) {
    if (epsilon < 0.0) throw ConfigError("douglas-peucker epsilon must be >= 0");
    const std::size_t n = chain.size();
    if (n < 3) return chain;
    std::vector<bool> keep(n, false);
    keep.front() = keep.back() = true;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n - 1}};
    while (!stack.empty()) {
        const auto [lo, hi] = stack.back();
        stack.pop_back();
        double dmax = 0.0;
        std::size_t imax = lo;
        for (std::size_t i = lo + 1; i < hi; ++i) {
            const double d = point_segment_distance(chain[i], chain[lo], chain[hi]);
            if (d > dmax) {
                dmax = d;
                imax = i;
            }
        }
        if (dmax > epsilon) {
            keep[imax] = true;
            stack.emplace_back(lo, imax);
            stack.emplace_back(imax, hi);
        }
    }
    std::vector<Point> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (keep[i]) out.push_back(chain[i]);
    }
    return out;
}

struct SimplifyOutcome {
    Polygon polygon;
    bool over_simplified = false;
};

/// Douglas-Peucker adapted to closed rings: the ring is split at its two
/// mutually farthest vertices, each open chain is simplified, and the halves
/// are rejoined. A result with fewer than 3 vertices falls back to the
/// triangle of the split pair plus the vertex farthest from their chord,
/// flagged over_simplified.
inline SimplifyOutcome douglas_peucker(const Polygon& poly, double epsilon) {
    require_ring(poly);
    if (epsilon < 0.0) throw ConfigError("douglas-peucker epsilon must be >= 0");
    const auto& v = poly.vertices;
    const std::size_t n = v.size();

    std::size_t si = 0, sj = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = squared_distance(v[i], v[j]);
            if (d > best) {
                best = d;
                si = i;
                sj = j;
            }
        }
    }

    std::vector<Point> chain1(v.begin() + si, v.begin() + sj + 1);
    std::vector<Point> chain2(v.begin() + sj, v.end());
    chain2.insert(chain2.end(), v.begin(), v.begin() + si + 1);

    const std::vector<Point> s1 = douglas_peucker_chain(chain1, epsilon);
    const std::vector<Point> s2 = douglas_peucker_chain(chain2, epsilon);

    SimplifyOutcome res;
    res.polygon.id = poly.id;
    res.polygon.vertices.assign(s1.begin(), s1.end() - 1);
    res.polygon.vertices.insert(res.polygon.vertices.end(), s2.begin(), s2.end() - 1);

    if (res.polygon.vertices.size() < 3) {
        std::size_t sk = 0;
        double dmax = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == si || i == sj) continue;
            const double d = point_segment_distance(v[i], v[si], v[sj]);
            if (d > dmax) {
                dmax = d;
                sk = i;
            }
        }
        std::vector<std::size_t> order{si, sj, sk};
        std::sort(order.begin(), order.end());
        res.polygon.vertices = {v[order[0]], v[order[1]], v[order[2]]};
        if (signed_area(res.polygon) < 0.0)
            std::reverse(res.polygon.vertices.begin(), res.polygon.vertices.end());
        res.over_simplified = true;
    }
    return res;
}

/// Dispatch on method; `passes` re-applies the simplifier to its own output,
/// stopping early at a fixpoint.
inline SimplifyOutcome simplify(const Polygon& poly, const SimplifyParams& params) {
    params.validate();
    SimplifyOutcome out{poly, false};
    for (int pass = 0; pass < params.passes; ++pass) {
        const std::size_t before = out.polygon.vertices.size();
        if (params.method == SimplifyMethod::PocketBased) {
            out.polygon = pocket_simplify(out.polygon, params.t);
        } else {
            SimplifyOutcome step = douglas_peucker(out.polygon, params.epsilon);
            out.polygon = std::move(step.polygon);
            out.over_simplified = out.over_simplified || step.over_simplified;
        }
        if (out.polygon.vertices.size() == before) break;
    }
    return out;
}

}  // namespace parcelize
