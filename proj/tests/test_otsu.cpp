#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <random>

#include "parcelize/otsu.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace parcelize;

namespace {

RasterGrid mask_of(const std::vector<float>& values) {
    RasterGrid g = RasterGrid::make(static_cast<int>(values.size()), 1, GridKind::Probability);
    g.values = values;
    return g;
}

std::array<std::int64_t, 256> histogram_of(const RasterGrid& g) {
    std::array<std::int64_t, 256> hist{};
    for (float v : g.values) ++hist[parcelize::detail::otsu_bin(v)];
    return hist;
}

}  // namespace

TEST_CASE("otsu: perfectly bimodal mask separates the two populations") {
    std::vector<float> values(200, 0.0f);
    for (int i = 100; i < 200; ++i) values[i] = 1.0f;
    const RasterGrid mask = mask_of(values);
    const OtsuResult res = otsu_threshold(mask);
    REQUIRE_FALSE(res.degenerate);
    const RasterGrid bin = binarize(mask, res.threshold);
    for (int i = 0; i < 100; ++i) REQUIRE(bin.values[i] == 0.0f);
    for (int i = 100; i < 200; ++i) REQUIRE(bin.values[i] == 1.0f);
}

TEST_CASE("otsu: three-cluster mask matches the exhaustive-scan value") {
    std::vector<float> values;
    values.insert(values.end(), 50, 0.1f);
    values.insert(values.end(), 50, 0.2f);
    values.insert(values.end(), 100, 0.9f);
    const OtsuResult res = otsu_threshold(mask_of(values));
    // Bins 25, 51, 230; the best split separates {0.1, 0.2} from {0.9} and
    // ties resolve to the lowest bin, 51 -> threshold 52/256.
    REQUIRE(res.threshold == 52.0 / 256.0);
    REQUIRE_FALSE(res.degenerate);
}

TEST_CASE("otsu: constant mask is degenerate and returns the constant") {
    const OtsuResult res = otsu_threshold(mask_of(std::vector<float>(64, 0.5f)));
    REQUIRE(res.degenerate);
    REQUIRE(res.threshold == 0.5);
}

TEST_CASE("otsu equals the exhaustive 256-bin argmax on random masks") {
    std::mt19937 rng(21);
    for (int iter = 0; iter < 50; ++iter) {
        const RasterGrid mask = gen::random_probability_mask(rng, 1024);
        const OtsuResult res = otsu_threshold(mask);
        if (res.degenerate) continue;
        const int k = oracles::brute_otsu_argmax(histogram_of(mask));
        REQUIRE(res.threshold == (k + 1) / 256.0);
    }
}

TEST_CASE("binarize: strict comparison and kind handling") {
    REQUIRE(binarize(mask_of({0.9f, 0.9f}), 0.5).values == std::vector<float>{1.0f, 1.0f});
    // Boundary convention: equal to threshold maps to 0.
    REQUIRE(binarize(mask_of({0.5f, 0.5f}), 0.5).values == std::vector<float>{0.0f, 0.0f});
    const RasterGrid out = binarize(mask_of({0.2f, 0.7f, 0.2f, 0.7f}), 0.5);
    REQUIRE(out.kind == GridKind::Binary);
    REQUIRE(out.values == std::vector<float>{0.0f, 1.0f, 0.0f, 1.0f});
    REQUIRE_THROWS_AS(binarize(mask_of({0.5f}), 1.5), ConfigError);
}

TEST_CASE("binarize is monotone in the threshold") {
    std::mt19937 rng(22);
    const RasterGrid mask = gen::random_probability_mask(rng, 512);
    const double t1 = gen::unit(rng);
    const double t2 = t1 + (1.0 - t1) * gen::unit(rng);
    const RasterGrid b1 = binarize(mask, t1);
    const RasterGrid b2 = binarize(mask, t2);
    for (std::size_t i = 0; i < mask.values.size(); ++i) {
        if (b2.values[i] != 0.0f) REQUIRE(b1.values[i] != 0.0f);
    }
}
