#pragma once

#include <array>
#include <cstdint>

#include "parcelize/errors.hpp"
#include "parcelize/raster.hpp"

namespace parcelize {

struct OtsuResult {
    double threshold = 0.0;
    bool degenerate = false;  // all pixels fell into one class
};

namespace detail {

inline int otsu_bin(float v) {
    int b = static_cast<int>(v * 256.0f);
    if (b < 0) b = 0;
    if (b > 255) b = 255;
    return b;
}

}  // namespace detail

/// Otsu's threshold over a 256-bin histogram of [0, 1]: picks the split
/// maximizing between-class variance, ties broken toward the lowest bin.
/// The returned scalar is the upper edge of the argmax bin, so binarize()
/// with strict ">" reproduces the two classes. A constant mask returns that
/// constant with the degenerate flag set.
inline OtsuResult otsu_threshold(const RasterGrid& mask) {
    if (mask.kind != GridKind::Probability)
        throw ConfigError("otsu_threshold expects a probability mask");
    if (mask.values.empty()) throw ConfigError("otsu_threshold on empty mask");

    bool constant = true;
    for (float v : mask.values) {
        if (v != mask.values.front()) {
            constant = false;
            break;
        }
    }
    if (constant) return {static_cast<double>(mask.values.front()), true};

    std::array<std::int64_t, 256> hist{};
    for (float v : mask.values) ++hist[detail::otsu_bin(v)];

    std::int64_t total = static_cast<std::int64_t>(mask.values.size());
    std::int64_t sum_all = 0;
    for (int b = 0; b < 256; ++b) sum_all += static_cast<std::int64_t>(b) * hist[b];

    // Incremental scan: class 0 holds bins 0..k.
    std::int64_t w0 = 0;
    std::int64_t sum0 = 0;
    double best_var = -1.0;
    int best_k = 0;
    for (int k = 0; k < 256; ++k) {
        w0 += hist[k];
        sum0 += static_cast<std::int64_t>(k) * hist[k];
        const std::int64_t w1 = total - w0;
        if (w0 == 0 || w1 == 0) continue;
        const double mu0 = static_cast<double>(sum0) / w0;
        const double mu1 = static_cast<double>(sum_all - sum0) / w1;
        const double var = static_cast<double>(w0) * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (var > best_var) {
            best_var = var;
            best_k = k;
        }
    }
    if (best_var < 0.0) {
        // Distinct values inside a single bin: no split separates them.
        return {(detail::otsu_bin(mask.values.front()) + 1) / 256.0, true};
    }
    return {(best_k + 1) / 256.0, false};
}

/// Strict comparison: value > threshold maps to 1, everything else to 0.
inline RasterGrid binarize(const RasterGrid& mask, double threshold) {
    if (threshold < 0.0 || threshold > 1.0) throw ConfigError("threshold must be in [0, 1]");
    RasterGrid out = RasterGrid::make(mask.width, mask.height, GridKind::Binary, 0.0f);
    for (std::size_t i = 0; i < mask.values.size(); ++i)
        out.values[i] = mask.values[i] > threshold ? 1.0f : 0.0f;
    return out;
}

}  // namespace parcelize
