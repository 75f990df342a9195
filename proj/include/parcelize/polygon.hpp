#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "parcelize/errors.hpp"

namespace parcelize {

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

// Cross product of (a - o) x (b - o). Exact for lattice coordinates.
inline double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline double squared_distance(const Point& a, const Point& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return dx * dx + dy * dy;
}

inline double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

/// Closed vertex ring in pixel coordinates. Closure is implicit: the last
/// vertex connects back to the first, and the first vertex is never repeated.
/// Exterior rings are counter-clockwise, i.e. signed_area() > 0. Pixel files
/// use a y-down frame; "counter-clockwise" here means positive shoelace area
/// over the raw (x, y) values, which renders clockwise on screen.
struct Polygon {
    std::vector<Point> vertices;
    std::int64_t id = -1;
    friend bool operator==(const Polygon&, const Polygon&) = default;
};

/// Shoelace area, positive for counter-clockwise rings.
inline double signed_area(const Polygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    return 0.5 * acc;
}

/// Sum of edge lengths, closing edge included.
inline double perimeter(const Polygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += distance(v[i], v[(i + 1) % n]);
    return acc;
}

enum class Location { Inside, OnBoundary, Outside };

namespace detail {

// Absolute tolerance for floating-point geometric comparisons (pixels).
constexpr double kGeomEps = 1e-9;

inline bool point_on_segment(const Point& p, const Point& a, const Point& b) {
    const double len = distance(a, b);
    if (len <= kGeomEps) return distance(p, a) <= kGeomEps;
    if (std::abs(cross(a, b, p)) > kGeomEps * len) return false;
    const double dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    return dot >= -kGeomEps * len && dot <= len * len + kGeomEps * len;
}

}  // namespace detail

/// Ray-crossing test with explicit boundary detection. Vertices and points
/// collinear with an edge report OnBoundary, so the result is deterministic
/// for lattice inputs.
inline Location point_in_polygon(const Point& pt, const Polygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (detail::point_on_segment(pt, v[i], v[(i + 1) % n])) return Location::OnBoundary;
    }
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        if ((a.y > pt.y) != (b.y > pt.y)) {
            const double xi = a.x + (pt.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (pt.x < xi) inside = !inside;
        }
    }
    return inside ? Location::Inside : Location::Outside;
}

/// O(n^2) simplicity check: no two edges intersect except adjacent edges at
/// their shared vertex. Used by tests and defensive validation, not on the
/// hot path.
inline bool is_simple(const Polygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] == v[(i + 1) % n]) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p1 = v[i];
        const Point& p2 = v[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point& p3 = v[j];
            const Point& p4 = v[(j + 1) % n];
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                // Only the shared endpoint may touch; anything more is a
                // fold-back or overlap.
                const Point& shared = (j == i + 1) ? p2 : p1;
                const Point& tail_i = (j == i + 1) ? p1 : p2;
                const Point& tail_j = (j == i + 1) ? p4 : p3;
                if (tail_i == tail_j) return false;
                if (detail::point_on_segment(tail_j, tail_i, shared) ||
                    detail::point_on_segment(tail_i, tail_j, shared))
                    return false;
                continue;
            }
            const double d1 = cross(p3, p4, p1);
            const double d2 = cross(p3, p4, p2);
            const double d3 = cross(p1, p2, p3);
            const double d4 = cross(p1, p2, p4);
            if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
                ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
                return false;
            if (detail::point_on_segment(p1, p3, p4) || detail::point_on_segment(p2, p3, p4) ||
                detail::point_on_segment(p3, p1, p2) || detail::point_on_segment(p4, p1, p2))
                return false;
        }
    }
    return true;
}

// Structural checks shared by geometry entry points: ring size and distinct
// consecutive vertices. Full simplicity is checked in tests only.
inline void require_ring(const Polygon& poly) {
    const auto& v = poly.vertices;
    if (v.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == v[(i + 1) % v.size()])
            throw GeometryError("polygon has repeated consecutive vertices");
    }
}

}  // namespace parcelize
