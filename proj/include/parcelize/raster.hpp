#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "parcelize/errors.hpp"

namespace parcelize {

enum class GridKind { Probability, Binary, Edge };

/// 2-D scalar field in row-major order. Probability grids hold values in
/// [0, 1]; binary and edge grids hold exactly 0 or 1. Grids are immutable by
/// convention once an operation returned them and safe to share across
/// threads for reading.
struct RasterGrid {
    int width = 0;
    int height = 0;
    GridKind kind = GridKind::Probability;
    std::vector<float> values;

    static RasterGrid make(int w, int h, GridKind k, float fill = 0.0f) {
        if (w < 1 || h < 1) throw ConfigError("raster dimensions must be >= 1");
        RasterGrid g;
        g.width = w;
        g.height = h;
        g.kind = k;
        g.values.assign(static_cast<std::size_t>(w) * h, fill);
        return g;
    }

    std::size_t pixel_count() const { return values.size(); }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    float& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
};

inline long long count_ones(const RasterGrid& mask) {
    long long n = 0;
    for (float v : mask.values) n += (v != 0.0f);
    return n;
}

/// Window-sized view of a larger image, tagged with its origin in the parent.
struct Patch {
    int origin_x = 0;
    int origin_y = 0;
    RasterGrid grid;
};

enum class AggregationMode { Max, Average, Sum, HarmonicMean };

namespace detail {

// Patch origins along one dimension: the lattice {0, stride, 2*stride, ...}
// with the final origin clamped flush to the image edge. A dimension smaller
// than the window yields the single origin 0 (the patch is zero-padded).
inline std::vector<int> patch_origins(int dim, int window, int stride) {
    std::vector<int> origins;
    int o = 0;
    while (true) {
        origins.push_back(std::min(o, std::max(0, dim - window)));
        if (o + window >= dim) break;
        o += stride;
    }
    return origins;
}

}  // namespace detail

/// Slides a window x stride lattice over the image. Every pixel is covered by
/// at least one patch; the last row/column of patches is clamped flush with
/// the image edge. Images smaller than the window produce one zero-padded
/// patch per dimension.
inline std::vector<Patch> patchify(const RasterGrid& image, int window, int stride) {
    if (window <= 0) throw ConfigError("patch window must be positive");
    if (stride <= 0 || stride > window) throw ConfigError("stride must satisfy 0 < stride <= window");
    const std::vector<int> xs = detail::patch_origins(image.width, window, stride);
    const std::vector<int> ys = detail::patch_origins(image.height, window, stride);
    std::vector<Patch> patches;
    patches.reserve(xs.size() * ys.size());
    for (int oy : ys) {
        for (int ox : xs) {
            Patch p;
            p.origin_x = ox;
            p.origin_y = oy;
            p.grid = RasterGrid::make(window, window, image.kind, 0.0f);
            for (int y = 0; y < window; ++y) {
                const int sy = oy + y;
                if (sy >= image.height) break;
                for (int x = 0; x < window; ++x) {
                    const int sx = ox + x;
                    if (sx >= image.width) break;
                    p.grid.at(x, y) = image.at(sx, sy);
                }
            }
            patches.push_back(std::move(p));
        }
    }
    return patches;
}

struct AggregateResult {
    RasterGrid grid;
    long long uncovered_pixels = 0;  // pixels covered by no patch; left at 0
};

/// Recombines overlapping patches into one grid. Average and harmonic mean
/// divide by the coverage count; a harmonic mean over any zero value is 0.
/// Patch cells outside the output bounds (zero-padding) are ignored.
/// Accumulation runs in a fixed sequential order so results are bit-stable.
inline AggregateResult aggregate_patches(const std::vector<Patch>& patches, int out_width,
                                         int out_height, AggregationMode mode) {
    if (patches.empty()) throw ConfigError("aggregate_patches needs at least one patch");
    const std::size_t npix = static_cast<std::size_t>(out_width) * out_height;
    std::vector<std::uint32_t> coverage(npix, 0);
    std::vector<double> acc(npix, 0.0);
    std::vector<std::uint8_t> zero_seen;
    if (mode == AggregationMode::HarmonicMean) zero_seen.assign(npix, 0);

    AggregateResult result;
    result.grid = RasterGrid::make(out_width, out_height, GridKind::Probability, 0.0f);

    for (const Patch& p : patches) {
        if (p.origin_x < 0 || p.origin_y < 0)
            throw ConfigError("patch origin outside the output bounds");
        for (int y = 0; y < p.grid.height; ++y) {
            const int oy = p.origin_y + y;
            if (oy >= out_height) break;
            for (int x = 0; x < p.grid.width; ++x) {
                const int ox = p.origin_x + x;
                if (ox >= out_width) break;
                const std::size_t i = static_cast<std::size_t>(oy) * out_width + ox;
                const double v = p.grid.at(x, y);
                switch (mode) {
                    case AggregationMode::Max:
                        acc[i] = coverage[i] == 0 ? v : std::max(acc[i], v);
                        break;
                    case AggregationMode::Average:
                    case AggregationMode::Sum:
                        acc[i] += v;
                        break;
                    case AggregationMode::HarmonicMean:
                        if (v == 0.0)
                            zero_seen[i] = 1;
                        else
                            acc[i] += 1.0 / v;
                        break;
                }
                ++coverage[i];
            }
        }
    }

    for (std::size_t i = 0; i < npix; ++i) {
        if (coverage[i] == 0) {
            ++result.uncovered_pixels;
            continue;
        }
        double v = 0.0;
        switch (mode) {
            case AggregationMode::Max: v = acc[i]; break;
            case AggregationMode::Average: v = acc[i] / coverage[i]; break;
            case AggregationMode::Sum: v = acc[i]; break;
            case AggregationMode::HarmonicMean:
                v = zero_seen[i] ? 0.0 : coverage[i] / acc[i];
                break;
        }
        result.grid.values[i] = static_cast<float>(v);
    }
    return result;
}

/// Euclidean dilation: an output pixel is set when any input 1-pixel center
/// lies within `radius` of its center. radius 0 is the identity.
inline RasterGrid dilate(const RasterGrid& mask, double radius) {
    if (mask.kind != GridKind::Binary && mask.kind != GridKind::Edge)
        throw ConfigError("dilate expects a binary mask");
    if (radius < 0.0) throw ConfigError("dilation radius must be >= 0");

    const int r = static_cast<int>(std::floor(radius));
    const double r2 = radius * radius;
    std::vector<std::pair<int, int>> offsets;
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            if (dx * dx + dy * dy <= r2) offsets.emplace_back(dx, dy);
        }
    }

    RasterGrid out = RasterGrid::make(mask.width, mask.height, mask.kind, 0.0f);
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            if (mask.at(x, y) == 0.0f) continue;
            for (const auto& [dx, dy] : offsets) {
                const int nx = x + dx;
                const int ny = y + dy;
                if (out.in_bounds(nx, ny)) out.at(nx, ny) = 1.0f;
            }
        }
    }
    return out;
}

}  // namespace parcelize
