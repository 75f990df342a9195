#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "parcelize/errors.hpp"
#include "parcelize/polygon.hpp"
#include "parcelize/raster.hpp"

namespace parcelize {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn_ = 0;
    std::int64_t tn = 0;
};

struct EvalConfig {
    int buffer_width = 0;  // reference thickness in pixels, >= 1
    int frame_width = 0;
    int frame_height = 0;

    void validate() const {
        if (buffer_width < 1) throw ConfigError("buffer width must be >= 1");
        if (frame_width < 1 || frame_height < 1) throw ConfigError("evaluation frame must be >= 1x1");
    }
};

struct EvalReport {
    double precision = 0.0;  // percent
    double recall = 0.0;     // percent; may exceed 100, flagged below
    double fscore = 0.0;     // percent, computed from unclamped values
    bool recall_exceeds_100 = false;
    ConfusionCounts counts;
    int buffer_width = 0;
    std::string method_label;
    long long clamped_vertices = 0;
};

struct RasterizeResult {
    RasterGrid grid;
    long long clamped_vertices = 0;  // vertices pulled back inside the frame
};

/// Draws every polygon edge as a 1-pixel Bresenham line. Vertex coordinates
/// are corner-lattice values; a vertex at x maps to pixel column round(x),
/// clamped to the frame (with a warning count) when it falls outside.
inline RasterizeResult rasterize_boundaries(const std::vector<Polygon>& polys, int width,
                                            int height) {
    RasterizeResult res;
    res.grid = RasterGrid::make(width, height, GridKind::Binary, 0.0f);

    auto to_pixel = [&](double v, int hi, bool& clamped) {
        int p = static_cast<int>(std::llround(v));
        if (p < 0) {
            p = 0;
            clamped = true;
        } else if (p >= hi) {
            p = hi - 1;
            clamped = true;
        }
        return p;
    };

    for (const Polygon& poly : polys) {
        const std::size_t n = poly.vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = poly.vertices[i];
            const Point& b = poly.vertices[(i + 1) % n];
            bool clamped = false;
            int x0 = to_pixel(a.x, width, clamped);
            int y0 = to_pixel(a.y, height, clamped);
            const int x1 = to_pixel(b.x, width, clamped);
            const int y1 = to_pixel(b.y, height, clamped);
            if (clamped) ++res.clamped_vertices;

            const int dx = std::abs(x1 - x0);
            const int dy = -std::abs(y1 - y0);
            const int sx = x0 < x1 ? 1 : -1;
            const int sy = y0 < y1 ? 1 : -1;
            int err = dx + dy;
            while (true) {
                res.grid.at(x0, y0) = 1.0f;
                if (x0 == x1 && y0 == y1) break;
                const int e2 = 2 * err;
                if (e2 >= dy) {
                    err += dy;
                    x0 += sx;
                }
                if (e2 <= dx) {
                    err += dx;
                    y0 += sy;
                }
            }
        }
    }
    return res;
}

/// Thickens a 1-pixel reference boundary to `buffer_width` pixels via
/// Euclidean dilation with radius (buffer_width - 1) / 2; even widths use a
/// fractional radius. Width 1 is the identity.
inline RasterGrid buffer_reference(const RasterGrid& ref_boundary, int buffer_width) {
    if (buffer_width < 1) throw ConfigError("buffer width must be >= 1");
    if (ref_boundary.kind != GridKind::Binary && ref_boundary.kind != GridKind::Edge)
        throw ConfigError("buffer_reference expects a binary mask");
    return dilate(ref_boundary, (buffer_width - 1) / 2.0);
}

/// Pixel-wise confusion of prediction vs buffered reference. By construction
/// tp + fn equals the buffered reference pixel count and tp + fp the
/// prediction pixel count.
inline ConfusionCounts confusion(const RasterGrid& pred, const RasterGrid& buffered_ref) {
    if (pred.width != buffered_ref.width || pred.height != buffered_ref.height)
        throw ConfigError("confusion: grid dimensions differ");
    ConfusionCounts c;
    for (std::size_t i = 0; i < pred.values.size(); ++i) {
        const bool p = pred.values[i] != 0.0f;
        const bool r = buffered_ref.values[i] != 0.0f;
        if (p && r)
            ++c.tp;
        else if (p)
            ++c.fp;
        else if (r)
            ++c.fn_;
        else
            ++c.tn;
    }
    return c;
}

inline double precision(const ConfusionCounts& c) {
    if (c.tp + c.fp == 0) throw MetricError("precision undefined: no predicted boundary pixels");
    return 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
}

/// Buffer-corrected recall: BF * TP / (TP + FN). TP + FN counts the buffered
/// reference, so the multiplication re-normalizes against the 1-pixel
/// original; values above 100 are possible and reported, not clamped.
inline double recall(const ConfusionCounts& c, int bf) {
    if (bf < 1) throw ConfigError("buffer width must be >= 1");
    if (c.tp + c.fn_ == 0) throw MetricError("recall undefined: empty reference");
    return 100.0 * bf * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn_);
}

inline double fscore(double p, double r) {
    if (p + r == 0.0) throw MetricError("f-score undefined: precision + recall is zero");
    return 2.0 * p * r / (p + r);
}

/// Full pipeline-side evaluation: rasterize the predicted boundaries, buffer
/// the reference, compute the confusion matrix and the three measures.
inline EvalReport evaluate_full(const std::vector<Polygon>& pred_polys,
                                const RasterGrid& ref_boundary, const EvalConfig& cfg,
                                const std::string& label) {
    cfg.validate();
    if (ref_boundary.width != cfg.frame_width || ref_boundary.height != cfg.frame_height)
        throw ConfigError("evaluation frame does not match the reference dimensions");

    RasterizeResult pred = rasterize_boundaries(pred_polys, cfg.frame_width, cfg.frame_height);
    const RasterGrid buffered = buffer_reference(ref_boundary, cfg.buffer_width);
    const ConfusionCounts c = confusion(pred.grid, buffered);

    // Identities that hold exactly for every run.
    if (c.tp + c.fn_ != count_ones(buffered))
        throw std::logic_error("confusion identity violated: tp + fn != |buffered reference|");
    if (c.tp + c.fp != count_ones(pred.grid))
        throw std::logic_error("confusion identity violated: tp + fp != |prediction|");

    EvalReport report;
    report.counts = c;
    report.buffer_width = cfg.buffer_width;
    report.method_label = label;
    report.clamped_vertices = pred.clamped_vertices;
    report.precision = precision(c);
    report.recall = recall(c, cfg.buffer_width);
    report.recall_exceeds_100 = report.recall > 100.0;
    report.fscore = fscore(report.precision, report.recall);
    return report;
}

}  // namespace parcelize
