#pragma once

#include <cstdint>
#include <vector>

#include "parcelize/errors.hpp"
#include "parcelize/polygon.hpp"
#include "parcelize/raster.hpp"

namespace parcelize {

namespace detail {

// Crack-following directions over the pixel-corner lattice, array coords
// (x right, y down): E, S, W, N. Walking with the region on the right-hand
// side yields positive shoelace area.
inline constexpr int kDx[4] = {1, 0, -1, 0};
inline constexpr int kDy[4] = {0, 1, 0, -1};

struct ComponentView {
    const std::vector<std::int32_t>* labels;
    int width;
    int height;
    std::int32_t label;

    bool in(int px, int py) const {
        if (px < 0 || px >= width || py < 0 || py >= height) return false;
        return (*labels)[static_cast<std::size_t>(py) * width + px] == label;
    }
};

// Pixels deciding the turn at corner (cx, cy) for incoming direction d:
// ahead-left and ahead-right of the walk.
inline void corner_pixels(int d, int cx, int cy, int& alx, int& aly, int& arx, int& ary) {
    switch (d) {
        case 0: alx = cx; aly = cy - 1; arx = cx; ary = cy; break;      // E
        case 1: alx = cx; aly = cy; arx = cx - 1; ary = cy; break;      // S
        case 2: alx = cx - 1; aly = cy; arx = cx - 1; ary = cy - 1; break;  // W
        default: alx = cx - 1; aly = cy - 1; arx = cx; ary = cy - 1; break;  // N
    }
}

// Traces the outer boundary of one component starting from its first pixel
// in scan order. Left-turn priority keeps the ring simple: a component that
// touches itself diagonally is bridged at the corner rather than pinched,
// so the enclosed background pixel joins the interior.
inline Polygon trace_component(const ComponentView& view, int first_x, int first_y) {
    Polygon poly;
    const int sx = first_x;
    const int sy = first_y;
    int cx = sx, cy = sy;
    int d = 0;  // E; pixel above and left of the start corner are empty
    poly.vertices.push_back(Point{static_cast<double>(sx), static_cast<double>(sy)});

    while (true) {
        cx += kDx[d];
        cy += kDy[d];
        if (cx == sx && cy == sy) break;
        int alx, aly, arx, ary;
        corner_pixels(d, cx, cy, alx, aly, arx, ary);
        int nd;
        if (view.in(alx, aly))
            nd = (d + 3) % 4;  // turn left
        else if (view.in(arx, ary))
            nd = d;  // straight
        else
            nd = (d + 1) % 4;  // turn right
        if (nd != d)
            poly.vertices.push_back(Point{static_cast<double>(cx), static_cast<double>(cy)});
        d = nd;
    }
    return poly;
}

}  // namespace detail

/// Converts a binary mask into closed polygons, one per 4-connected region
/// of 1-pixels. Boundaries follow the pixel-corner lattice, so vertices are
/// integers and areas are exact pixel counts for hole-free regions. Interior
/// holes are ignored (outer rings only). Collinear runs are merged while
/// tracing. Output is ordered by each region's first pixel in scan order;
/// ids are assigned 0, 1, 2, ... in that order.
inline std::vector<Polygon> extract_polygons(const RasterGrid& field_mask) {
    if (field_mask.kind != GridKind::Binary)
        throw ConfigError("extract_polygons expects a binary mask");
    const int w = field_mask.width;
    const int h = field_mask.height;

    std::vector<std::int32_t> labels(field_mask.pixel_count(), 0);
    std::vector<std::pair<int, int>> first_pixel;  // per label, scan-order first pixel
    std::vector<std::size_t> queue;

    std::int32_t next_label = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (field_mask.values[i] == 0.0f || labels[i] != 0) continue;
            ++next_label;
            first_pixel.emplace_back(x, y);
            labels[i] = next_label;
            queue.clear();
            queue.push_back(i);
            while (!queue.empty()) {
                const std::size_t j = queue.back();
                queue.pop_back();
                const int jx = static_cast<int>(j % w);
                const int jy = static_cast<int>(j / w);
                constexpr int nx4[4] = {1, -1, 0, 0};
                constexpr int ny4[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int ax = jx + nx4[k];
                    const int ay = jy + ny4[k];
                    if (ax < 0 || ax >= w || ay < 0 || ay >= h) continue;
                    const std::size_t a = static_cast<std::size_t>(ay) * w + ax;
                    if (field_mask.values[a] != 0.0f && labels[a] == 0) {
                        labels[a] = next_label;
                        queue.push_back(a);
                    }
                }
            }
        }
    }

    std::vector<Polygon> out;
    out.reserve(first_pixel.size());
    for (std::int32_t lbl = 1; lbl <= next_label; ++lbl) {
        detail::ComponentView view{&labels, w, h, lbl};
        const auto [fx, fy] = first_pixel[lbl - 1];
        Polygon poly = detail::trace_component(view, fx, fy);
        poly.id = lbl - 1;
        out.push_back(std::move(poly));
    }
    return out;
}

}  // namespace parcelize
