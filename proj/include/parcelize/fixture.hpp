#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "parcelize/errors.hpp"
#include "parcelize/raster.hpp"

namespace parcelize {

/// Synthetic test scene: a farms x farms grid of rectangular parcels
/// separated by 1-pixel fence lines, plus the matching noisy probability
/// mask. Noise flips probabilities only near the fences and is capped at
/// max_flip_fraction of the whole frame.
struct FixtureParams {
    int size = 1000;   // square frame edge, pixels
    int farms = 10;    // parcels per side
    std::uint32_t seed = 1;
    // Per-pixel flip probability inside the noise band. Flipped fence pixels
    // bridge adjacent parcels, so rates much above ~2% dissolve the fence
    // grid entirely; 1% leaves a recognizably noisy but parcel-like scene.
    double flip_probability = 0.01;
    double max_flip_fraction = 0.05;   // hard cap, fraction of all pixels
    double band_radius = 2.0;          // noise band distance from fences

    void validate() const {
        if (size < 8) throw ConfigError("fixture size must be >= 8");
        if (farms < 1 || farms > size / 4) throw ConfigError("fixture farms out of range");
        if (flip_probability < 0.0 || flip_probability > 1.0)
            throw ConfigError("flip probability must be in [0, 1]");
        if (max_flip_fraction < 0.0 || max_flip_fraction > 1.0)
            throw ConfigError("max flip fraction must be in [0, 1]");
    }
};

struct Fixture {
    RasterGrid prob_mask;     // probability kind
    RasterGrid ref_boundary;  // binary 1-px fence lines
    long long flipped_pixels = 0;

    std::string manifest(const FixtureParams& p) const {
        std::ostringstream os;
        os << "size=" << p.size << "\n"
           << "farms=" << p.farms << "\n"
           << "seed=" << p.seed << "\n"
           << "flip_probability=" << p.flip_probability << "\n"
           << "max_flip_fraction=" << p.max_flip_fraction << "\n"
           << "flipped_pixels=" << flipped_pixels << "\n";
        return os.str();
    }
};

namespace detail {

// mt19937 output mapped to [0, 1) without distribution objects, so streams
// are identical across standard libraries.
inline double unit_rand(std::mt19937& rng) {
    return (rng() >> 8) * (1.0 / 16777216.0);
}

}  // namespace detail

inline Fixture generate_fixture(const FixtureParams& params) {
    params.validate();
    const int n = params.size;
    const int k = params.farms;
    std::mt19937 rng(params.seed);

    Fixture fx;
    fx.ref_boundary = RasterGrid::make(n, n, GridKind::Binary, 0.0f);
    fx.prob_mask = RasterGrid::make(n, n, GridKind::Probability, 0.0f);

    // Fence positions: k+1 evenly spaced lines including both frame edges.
    std::vector<int> fences(k + 1);
    for (int i = 0; i <= k; ++i)
        fences[i] = static_cast<int>(static_cast<long long>(i) * (n - 1) / k);

    std::vector<std::uint8_t> is_fence(n, 0);
    for (int f : fences) is_fence[f] = 1;

    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            if (is_fence[x] || is_fence[y]) fx.ref_boundary.at(x, y) = 1.0f;
        }
    }

    // Clean probabilities: low on fences, high inside parcels, mild jitter.
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            const bool fence = fx.ref_boundary.at(x, y) != 0.0f;
            const double base = fence ? 0.08 : 0.92;
            const double jitter = (detail::unit_rand(rng) - 0.5) * 0.10;
            double v = base + jitter;
            if (v < 0.0) v = 0.0;
            if (v > 1.0) v = 1.0;
            fx.prob_mask.at(x, y) = static_cast<float>(v);
        }
    }

    // Boundary-adjacent flips, capped at max_flip_fraction of the frame.
    const RasterGrid band = dilate(fx.ref_boundary, params.band_radius);
    const long long cap =
        static_cast<long long>(params.max_flip_fraction * static_cast<double>(fx.prob_mask.pixel_count()));
    for (int y = 0; y < n && fx.flipped_pixels < cap; ++y) {
        for (int x = 0; x < n && fx.flipped_pixels < cap; ++x) {
            if (band.at(x, y) == 0.0f) continue;
            if (detail::unit_rand(rng) < params.flip_probability) {
                fx.prob_mask.at(x, y) = 1.0f - fx.prob_mask.at(x, y);
                ++fx.flipped_pixels;
            }
        }
    }
    return fx;
}

}  // namespace parcelize
