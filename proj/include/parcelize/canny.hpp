#pragma once

#include <cmath>
#include <vector>

#include "parcelize/errors.hpp"
#include "parcelize/raster.hpp"

namespace parcelize {

namespace detail {

inline int clamp_coord(int v, int hi) { return v < 0 ? 0 : (v >= hi ? hi - 1 : v); }

// Separable Gaussian with replicated borders, kernel radius ceil(3*sigma).
inline std::vector<double> gaussian_smooth(const RasterGrid& img, double sigma) {
    const int w = img.width, h = img.height;
    std::vector<double> buf(img.pixel_count());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = img.values[i];
    if (sigma <= 0.0) return buf;

    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double norm = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        norm += kernel[i + radius];
    }
    for (double& k : kernel) k /= norm;

    std::vector<double> tmp(buf.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int i = -radius; i <= radius; ++i)
                s += kernel[i + radius] * buf[static_cast<std::size_t>(y) * w + clamp_coord(x + i, w)];
            tmp[static_cast<std::size_t>(y) * w + x] = s;
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int i = -radius; i <= radius; ++i)
                s += kernel[i + radius] * tmp[static_cast<std::size_t>(clamp_coord(y + i, h)) * w + x];
            buf[static_cast<std::size_t>(y) * w + x] = s;
        }
    }
    return buf;
}

}  // namespace detail

/// Canny edge extraction: Gaussian smoothing (skipped at sigma 0), 3x3 Sobel
/// gradients with replicated borders, non-maximum suppression along the
/// gradient direction quantized to 4 bins, then double-threshold hysteresis
/// with 8-connected linking. `low` and `high` are absolute gradient-magnitude
/// thresholds (a clean unit step has Sobel magnitude 4). Suppression keeps a
/// pixel only when its magnitude strictly exceeds the next pixel along the
/// gradient and is >= the previous one, so a two-pixel-wide step response
/// thins to the single column on the bright side.
inline RasterGrid canny_edges(const RasterGrid& mask, double sigma, double low, double high) {
    if (sigma < 0.0) throw ConfigError("canny sigma must be >= 0");
    if (low < 0.0 || low > high) throw ConfigError("canny thresholds must satisfy 0 <= low <= high");

    const int w = mask.width, h = mask.height;
    const std::vector<double> img = detail::gaussian_smooth(mask, sigma);

    auto px = [&](int x, int y) {
        return img[static_cast<std::size_t>(detail::clamp_coord(y, h)) * w + detail::clamp_coord(x, w)];
    };

    std::vector<double> gx(img.size()), gy(img.size()), mag(img.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double sx = (px(x + 1, y - 1) + 2.0 * px(x + 1, y) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2.0 * px(x - 1, y) + px(x - 1, y + 1));
            const double sy = (px(x - 1, y + 1) + 2.0 * px(x, y + 1) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2.0 * px(x, y - 1) + px(x + 1, y - 1));
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            gx[i] = sx;
            gy[i] = sy;
            mag[i] = std::hypot(sx, sy);
        }
    }

    // Non-maximum suppression.
    std::vector<std::uint8_t> thin(img.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (mag[i] <= 0.0) continue;
            // Quantize the gradient direction to one of 4 axes.
            double angle = std::atan2(gy[i], gx[i]) * 180.0 / 3.14159265358979323846;
            if (angle < 0.0) angle += 180.0;
            int dx = 1, dy = 0;
            if (angle >= 22.5 && angle < 67.5) {
                dx = 1;
                dy = 1;
            } else if (angle >= 67.5 && angle < 112.5) {
                dx = 0;
                dy = 1;
            } else if (angle >= 112.5 && angle < 157.5) {
                dx = -1;
                dy = 1;
            }
            // Orient the axis so "next" points along the actual gradient.
            if (gx[i] * dx + gy[i] * dy < 0.0) {
                dx = -dx;
                dy = -dy;
            }
            auto mag_at = [&](int ax, int ay) -> double {
                if (ax < 0 || ax >= w || ay < 0 || ay >= h) return 0.0;
                return mag[static_cast<std::size_t>(ay) * w + ax];
            };
            if (mag[i] > mag_at(x + dx, y + dy) && mag[i] >= mag_at(x - dx, y - dy)) thin[i] = 1;
        }
    }

    // Hysteresis: grow strong seeds through weak pixels, 8-connected.
    RasterGrid out = RasterGrid::make(w, h, GridKind::Edge, 0.0f);
    std::vector<std::size_t> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (thin[i] && mag[i] >= high && out.values[i] == 0.0f) {
                out.values[i] = 1.0f;
                stack.push_back(i);
                while (!stack.empty()) {
                    const std::size_t j = stack.back();
                    stack.pop_back();
                    const int cx = static_cast<int>(j % w);
                    const int cy = static_cast<int>(j / w);
                    for (int ny = cy - 1; ny <= cy + 1; ++ny) {
                        for (int nx = cx - 1; nx <= cx + 1; ++nx) {
                            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                            const std::size_t k = static_cast<std::size_t>(ny) * w + nx;
                            if (thin[k] && mag[k] >= low && out.values[k] == 0.0f) {
                                out.values[k] = 1.0f;
                                stack.push_back(k);
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace parcelize
