#include <catch2/catch_amalgamated.hpp>

#include "parcelize/canny.hpp"
#include "support/oracles.hpp"

using namespace parcelize;

namespace {

// 4-connected flood fill over non-edge pixels from (0,0); returns true when
// the walk reaches (tx, ty). Used to check that an edge ring is closed.
bool background_reaches(const RasterGrid& edges, int tx, int ty) {
    std::vector<std::uint8_t> seen(edges.pixel_count(), 0);
    std::vector<std::pair<int, int>> stack{{0, 0}};
    if (edges.at(0, 0) != 0.0f) return false;
    seen[0] = 1;
    while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        if (x == tx && y == ty) return true;
        const int nx[4] = {x + 1, x - 1, x, x};
        const int ny[4] = {y, y, y + 1, y - 1};
        for (int k = 0; k < 4; ++k) {
            if (!edges.in_bounds(nx[k], ny[k])) continue;
            const std::size_t i = static_cast<std::size_t>(ny[k]) * edges.width + nx[k];
            if (!seen[i] && edges.values[i] == 0.0f) {
                seen[i] = 1;
                stack.emplace_back(nx[k], ny[k]);
            }
        }
    }
    return false;
}

}  // namespace

TEST_CASE("canny: constant image yields no edges") {
    const RasterGrid img = RasterGrid::make(16, 16, GridKind::Probability, 0.7f);
    REQUIRE(count_ones(canny_edges(img, 0.0, 1.0, 2.0)) == 0);
    REQUIRE(count_ones(canny_edges(img, 1.0, 0.0, 0.0)) == 0);
}

TEST_CASE("canny: vertical step thins to the single bright-side column") {
    // 6x6, columns 0-2 are 0, columns 3-5 are 1. Sobel magnitude is 4 on
    // both columns astride the step; suppression keeps only column 3.
    RasterGrid img = RasterGrid::make(6, 6, GridKind::Binary, 0.0f);
    for (int y = 0; y < 6; ++y)
        for (int x = 3; x < 6; ++x) img.at(x, y) = 1.0f;
    const RasterGrid edges = canny_edges(img, 0.0, 1.0, 2.0);
    REQUIRE(count_ones(edges) == 6);
    for (int y = 0; y < 6; ++y) REQUIRE(edges.at(3, y) == 1.0f);
}

TEST_CASE("canny: edges are one pixel wide across the gradient") {
    RasterGrid img = RasterGrid::make(12, 8, GridKind::Binary, 0.0f);
    for (int y = 0; y < 8; ++y)
        for (int x = 6; x < 12; ++x) img.at(x, y) = 1.0f;
    const RasterGrid edges = canny_edges(img, 0.0, 1.0, 2.0);
    for (int y = 0; y < 8; ++y) {
        int run = 0;
        for (int x = 0; x < 12; ++x) run += edges.at(x, y) != 0.0f;
        REQUIRE(run == 1);
    }
}

TEST_CASE("canny: filled square produces a closed one-pixel ring") {
    RasterGrid img = RasterGrid::make(20, 20, GridKind::Binary, 0.0f);
    for (int y = 5; y <= 14; ++y)
        for (int x = 5; x <= 14; ++x) img.at(x, y) = 1.0f;
    const RasterGrid edges = canny_edges(img, 0.0, 1.0, 2.0);

    // The ring is exactly the square's border pixels.
    for (int y = 0; y < 20; ++y) {
        for (int x = 0; x < 20; ++x) {
            const bool border = (x >= 5 && x <= 14 && y >= 5 && y <= 14) &&
                                (x == 5 || x == 14 || y == 5 || y == 14);
            REQUIRE((edges.at(x, y) != 0.0f) == border);
        }
    }
    // Closed: the outside background cannot flood into the interior.
    REQUIRE_FALSE(background_reaches(edges, 10, 10));
}

TEST_CASE("canny: threshold validation and smoothing sanity") {
    const RasterGrid img = RasterGrid::make(8, 8, GridKind::Probability, 0.0f);
    REQUIRE_THROWS_AS(canny_edges(img, 0.0, 2.0, 1.0), ConfigError);
    REQUIRE_THROWS_AS(canny_edges(img, -1.0, 0.0, 1.0), ConfigError);

    // With smoothing the step edge survives at reduced magnitude.
    RasterGrid step = RasterGrid::make(16, 16, GridKind::Binary, 0.0f);
    for (int y = 0; y < 16; ++y)
        for (int x = 8; x < 16; ++x) step.at(x, y) = 1.0f;
    const RasterGrid edges = canny_edges(step, 1.0, 0.2, 0.5);
    REQUIRE(count_ones(edges) >= 16);
}
