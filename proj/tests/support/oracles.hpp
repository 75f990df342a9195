#pragma once

// Brute-force reference implementations used to check the library. These are
// deliberately slow and independent of the code paths they verify.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <vector>

#include "parcelize/polygon.hpp"
#include "parcelize/raster.hpp"
#include "parcelize/simplify.hpp"

namespace oracles {

using parcelize::Point;
using parcelize::Polygon;
using parcelize::RasterGrid;

using DirectedEdge = std::array<double, 4>;  // ax, ay, bx, by

inline DirectedEdge make_edge(const Point& a, const Point& b) { return {a.x, a.y, b.x, b.y}; }

// O(n^3) strict convex hull as a directed edge set: (a, b) is a hull edge iff
// every other point is strictly left of the line a->b, allowing points
// exactly on the open segment between them (those are interior to the edge
// and excluded from a strict hull).
inline std::vector<DirectedEdge> brute_hull_edges(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<DirectedEdge> edges;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j || pts[i] == pts[j]) continue;
            bool is_edge = true;
            for (std::size_t k = 0; k < pts.size(); ++k) {
                if (k == i || k == j || pts[k] == pts[i] || pts[k] == pts[j]) continue;
                const double c = parcelize::cross(pts[i], pts[j], pts[k]);
                if (c > 0) continue;
                if (c < 0) {
                    is_edge = false;
                    break;
                }
                // Collinear: must lie strictly between the endpoints.
                const double dot = (pts[k].x - pts[i].x) * (pts[j].x - pts[i].x) +
                                   (pts[k].y - pts[i].y) * (pts[j].y - pts[i].y);
                const double len2 = parcelize::squared_distance(pts[i], pts[j]);
                if (dot <= 0 || dot >= len2) {
                    is_edge = false;
                    break;
                }
            }
            if (is_edge) edges.push_back(make_edge(pts[i], pts[j]));
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

inline std::vector<DirectedEdge> ring_edges(const std::vector<Point>& ring) {
    std::vector<DirectedEdge> edges;
    for (std::size_t i = 0; i < ring.size(); ++i)
        edges.push_back(make_edge(ring[i], ring[(i + 1) % ring.size()]));
    std::sort(edges.begin(), edges.end());
    return edges;
}

// Pocket chords by set difference: hull edges that are not polygon edges.
inline std::vector<DirectedEdge> brute_pocket_chords(const Polygon& poly) {
    const std::vector<DirectedEdge> hull = brute_hull_edges(poly.vertices);
    const std::vector<DirectedEdge> pedges = ring_edges(poly.vertices);
    std::vector<DirectedEdge> out;
    for (const DirectedEdge& e : hull) {
        if (!std::binary_search(pedges.begin(), pedges.end(), e)) out.push_back(e);
    }
    return out;
}

// Exhaustive Otsu: recomputes class weights and means from scratch for every
// split and returns the argmax bin (class 0 = bins 0..k), ties to lowest k.
inline int brute_otsu_argmax(const std::array<std::int64_t, 256>& hist) {
    double best = -1.0;
    int best_k = -1;
    for (int k = 0; k < 256; ++k) {
        std::int64_t w0 = 0, w1 = 0, s0 = 0, s1 = 0;
        for (int b = 0; b <= k; ++b) {
            w0 += hist[b];
            s0 += static_cast<std::int64_t>(b) * hist[b];
        }
        for (int b = k + 1; b < 256; ++b) {
            w1 += hist[b];
            s1 += static_cast<std::int64_t>(b) * hist[b];
        }
        if (w0 == 0 || w1 == 0) continue;
        const double mu0 = double(s0) / double(w0);
        const double mu1 = double(s1) / double(w1);
        const double var = double(w0) * double(w1) * (mu0 - mu1) * (mu0 - mu1);
        if (var > best) {
            best = var;
            best_k = k;
        }
    }
    return best_k;
}

// Dilation by direct distance transform: output pixel set iff the squared
// distance to the nearest input 1-pixel is <= radius^2.
inline RasterGrid brute_dilate(const RasterGrid& mask, double radius) {
    RasterGrid out = RasterGrid::make(mask.width, mask.height, mask.kind, 0.0f);
    const double r2 = radius * radius;
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            bool hit = false;
            for (int sy = 0; sy < mask.height && !hit; ++sy) {
                for (int sx = 0; sx < mask.width && !hit; ++sx) {
                    if (mask.at(sx, sy) == 0.0f) continue;
                    const double dx = x - sx, dy = y - sy;
                    if (dx * dx + dy * dy <= r2) hit = true;
                }
            }
            if (hit) out.at(x, y) = 1.0f;
        }
    }
    return out;
}

inline double min_distance_to_chain(const Point& p, const std::vector<Point>& chain) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        best = std::min(best, parcelize::point_segment_distance(p, chain[i], chain[i + 1]));
    return best;
}

// 4-connected component count by flood fill.
inline int component_count_4(const RasterGrid& mask) {
    std::vector<std::uint8_t> seen(mask.pixel_count(), 0);
    std::vector<std::size_t> stack;
    int count = 0;
    for (std::size_t i = 0; i < mask.pixel_count(); ++i) {
        if (mask.values[i] == 0.0f || seen[i]) continue;
        ++count;
        seen[i] = 1;
        stack.assign(1, i);
        while (!stack.empty()) {
            const std::size_t j = stack.back();
            stack.pop_back();
            const int x = static_cast<int>(j % mask.width);
            const int y = static_cast<int>(j / mask.width);
            const int nx[4] = {x + 1, x - 1, x, x};
            const int ny[4] = {y, y, y + 1, y - 1};
            for (int k = 0; k < 4; ++k) {
                if (!mask.in_bounds(nx[k], ny[k])) continue;
                const std::size_t a = static_cast<std::size_t>(ny[k]) * mask.width + nx[k];
                if (mask.values[a] != 0.0f && !seen[a]) {
                    seen[a] = 1;
                    stack.push_back(a);
                }
            }
        }
    }
    return count;
}

// Fills a corner-lattice ring back into a pixel mask by testing pixel
// centers; exact because centers never lie on lattice-line boundaries.
inline RasterGrid rasterize_interior(const Polygon& poly, int width, int height) {
    RasterGrid out = RasterGrid::make(width, height, parcelize::GridKind::Binary, 0.0f);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (parcelize::point_in_polygon(Point{x + 0.5, y + 0.5}, poly) ==
                parcelize::Location::Inside)
                out.at(x, y) = 1.0f;
        }
    }
    return out;
}

// True when some background pixel cannot reach the frame border through
// 4-connected background: a hole or a bridged pinch pocket. Outer-ring
// tracing encloses such pixels, so exact mask reconstruction is only
// expected when this is false.
inline bool has_enclosed_background(const RasterGrid& mask) {
    std::vector<std::uint8_t> seen(mask.pixel_count(), 0);
    std::vector<std::pair<int, int>> stack;
    auto push = [&](int x, int y) {
        const std::size_t i = static_cast<std::size_t>(y) * mask.width + x;
        if (mask.values[i] == 0.0f && !seen[i]) {
            seen[i] = 1;
            stack.emplace_back(x, y);
        }
    };
    for (int x = 0; x < mask.width; ++x) {
        push(x, 0);
        push(x, mask.height - 1);
    }
    for (int y = 0; y < mask.height; ++y) {
        push(0, y);
        push(mask.width - 1, y);
    }
    while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        if (x + 1 < mask.width) push(x + 1, y);
        if (x > 0) push(x - 1, y);
        if (y + 1 < mask.height) push(x, y + 1);
        if (y > 0) push(x, y - 1);
    }
    for (std::size_t i = 0; i < mask.pixel_count(); ++i) {
        if (mask.values[i] == 0.0f && !seen[i]) return true;
    }
    return false;
}

}  // namespace oracles
