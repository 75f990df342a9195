#pragma once

#include <algorithm>
#include <vector>

#include "parcelize/errors.hpp"
#include "parcelize/polygon.hpp"

namespace parcelize {

/// Strict convex hull of a point set via Andrew's monotone chain: collinear
/// points on hull edges are dropped, output is counter-clockwise starting at
/// the lexicographically smallest point. Throws GeometryError when all points
/// are collinear.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) throw GeometryError("convex hull of fewer than 3 distinct points");

    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);  // last point repeats the first
    if (hull.size() < 3) throw GeometryError("degenerate hull: points are collinear");
    return hull;
}

inline Polygon convex_hull(const Polygon& poly) {
    require_ring(poly);
    Polygon out;
    out.vertices = convex_hull(poly.vertices);
    out.id = poly.id;
    return out;
}

}  // namespace parcelize
