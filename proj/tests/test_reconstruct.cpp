#include <doctest.h>

#include <cmath>
#include <random>

#include "qs/reconstruct.hpp"
#include "qs/sampling.hpp"

using qs::GrayImage;
using qs::QuarterMask;
using qs::SampledImage;

namespace {

GrayImage random_image(int h, int w, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    GrayImage img(h, w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            img.at(r, c) = dist(rng);
        }
    }
    return img;
}

GrayImage affine_image(int h, int w, double a, double b, double d) {
    GrayImage img(h, w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            img.at(r, c) = a * r + b * c + d;
        }
    }
    return img;
}

}  // namespace

TEST_CASE("nearest: single known pixel floods the image") {
    std::vector<std::uint8_t> cells = {1, 0, 0, 0};
    SampledImage sampled{QuarterMask(2, 2, cells), GrayImage(2, 2, 0.0)};
    sampled.values.at(0, 0) = 42.0;
    const GrayImage out = qs::reconstruct_nearest(sampled);
    for (double v : out.values()) CHECK(v == 42.0);
}

TEST_CASE("nearest: distance comparison along a row") {
    // Row 0 known at c=0 (10) and c=3 (40); c=1 is nearer to 0, c=2 to 3.
    std::vector<std::uint8_t> cells = {1, 0, 0, 1, 0, 0, 0, 0};
    SampledImage sampled{QuarterMask(2, 4, cells), GrayImage(2, 4, 0.0)};
    sampled.values.at(0, 0) = 10.0;
    sampled.values.at(0, 3) = 40.0;
    const GrayImage out = qs::reconstruct_nearest(sampled);
    CHECK(out.at(0, 0) == 10.0);
    CHECK(out.at(0, 1) == 10.0);
    CHECK(out.at(0, 2) == 40.0);
    CHECK(out.at(0, 3) == 40.0);
}

TEST_CASE("nearest: ties break to the smaller row, then column") {
    // Knowns at (0,1) and (1,2). Pixel (1,1) is at distance 1 from both; the
    // candidate with the smaller row, (0,1), wins. Same for pixel (0,2).
    std::vector<std::uint8_t> cells = {0, 1, 0, 0, 0, 0, 1, 0};
    SampledImage sampled{QuarterMask(2, 4, cells), GrayImage(2, 4, 0.0)};
    sampled.values.at(0, 1) = 11.0;
    sampled.values.at(1, 2) = 22.0;
    const GrayImage out = qs::reconstruct_nearest(sampled);
    CHECK(out.at(1, 1) == 11.0);
    CHECK(out.at(0, 2) == 11.0);
}

TEST_CASE("linear: constant and affine images are reproduced") {
    const QuarterMask mask = qs::make_random(16, 16, 5);

    const GrayImage constant(16, 16, 123.0);
    const GrayImage out_c = qs::reconstruct_linear(qs::subsample(constant, mask));
    for (double v : out_c.values()) CHECK(v == doctest::Approx(123.0).epsilon(1e-12));

    // Affine images are recovered exactly at hull-interior pixels; border
    // pixels may fall outside the hull and are excluded here.
    const GrayImage affine = affine_image(16, 16, 3.0, -2.0, 60.0);
    const GrayImage out_a = qs::reconstruct_linear(qs::subsample(affine, mask));
    for (int r = 2; r < 14; ++r) {
        for (int c = 2; c < 14; ++c) {
            CHECK(std::abs(out_a.at(r, c) - affine.at(r, c)) <= 1e-9);
        }
    }
}

TEST_CASE("linear: 1-D blend inside the hull") {
    // Knowns on rows 0 and 7 bracket the interior; along row 4 between the
    // knowns at (4,0) and (4,3)... use an image linear in the column index.
    const GrayImage img = affine_image(8, 8, 0.0, 10.0, 0.0);
    const GrayImage out = qs::reconstruct_linear(qs::subsample(img, qs::make_random(8, 8, 1)));
    for (int r = 2; r < 6; ++r) {
        for (int c = 2; c < 6; ++c) {
            CHECK(out.at(r, c) == doctest::Approx(10.0 * c).epsilon(1e-9));
        }
    }
}

TEST_CASE("linear: too few or collinear knowns are rejected") {
    std::vector<std::uint8_t> cells = {1, 0, 0, 0};
    SampledImage one_known{QuarterMask(2, 2, cells), GrayImage(2, 2, 5.0)};
    CHECK_THROWS_AS(qs::reconstruct_linear(one_known), qs::ValidationError);

    // 2x6: three knowns, all on row 0.
    std::vector<std::uint8_t> row_cells = {1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0};
    SampledImage collinear{QuarterMask(2, 6, row_cells), GrayImage(2, 6, 5.0)};
    CHECK_THROWS_AS(qs::reconstruct_linear(collinear), qs::ValidationError);
}

TEST_CASE("fsr: constant images are reproduced to 1e-6") {
    const GrayImage constant(32, 32, 99.0);
    const SampledImage sampled = qs::subsample(constant, qs::make_random(32, 32, 8));
    const GrayImage out = qs::reconstruct_fsr(sampled);
    for (double v : out.values()) CHECK(std::abs(v - 99.0) <= 1e-6);
}

TEST_CASE("fsr: single horizontal frequency is recovered within 1 gray level") {
    const int n = 32;
    GrayImage img(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            img.at(r, c) = 128.0 + 100.0 * std::cos(2.0 * M_PI * 3.0 * r / n);
        }
    }
    const SampledImage sampled = qs::subsample(img, qs::make_random(n, n, 2));
    const GrayImage out = qs::reconstruct_fsr(sampled);
    // Windows near the image border are clipped (out-of-image support gets
    // zero weight), so the 1-gray-level bound is checked on the interior.
    const int margin = 8;
    for (int r = margin; r < n - margin; ++r) {
        for (int c = margin; c < n - margin; ++c) {
            CHECK(std::abs(out.at(r, c) - img.at(r, c)) <= 1.0);
        }
    }
}

TEST_CASE("all reconstructors are exact at known pixels") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const GrayImage img = random_image(16, 16, seed);
        const SampledImage sampled = qs::subsample(img, qs::make_random(16, 16, seed + 50));
        for (qs::Algorithm alg :
             {qs::Algorithm::Nearest, qs::Algorithm::Linear, qs::Algorithm::Fsr}) {
            const GrayImage out = qs::reconstruct(sampled, alg);
            for (int r = 0; r < 16; ++r) {
                for (int c = 0; c < 16; ++c) {
                    if (sampled.known(r, c)) {
                        CHECK(out.at(r, c) == img.at(r, c));
                    }
                }
            }
        }
    }
}

TEST_CASE("reconstructions stay within [0, 255]") {
    const GrayImage img = random_image(16, 16, 77);
    const SampledImage sampled = qs::subsample(img, qs::make_random(16, 16, 78));
    for (qs::Algorithm alg :
         {qs::Algorithm::Nearest, qs::Algorithm::Linear, qs::Algorithm::Fsr}) {
        for (double v : qs::reconstruct(sampled, alg).values()) {
            CHECK(v >= 0.0);
            CHECK(v <= 255.0);
        }
    }
}

TEST_CASE("fsr window: weighted residual energy never increases") {
    const int t = 32;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> val(0.0, 255.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<double> values(t * t);
        std::vector<double> weights(t * t);
        for (int i = 0; i < t * t; ++i) {
            values[i] = val(rng);
            weights[i] = unit(rng) < 0.25 ? std::pow(0.7, unit(rng) * 16.0) : 0.0;
        }
        const qs::FsrWindowResult res =
            qs::fsr_approximate_window(values, weights, t, 100, 0.5, true);
        REQUIRE(!res.residual_energy.empty());
        double prev = std::numeric_limits<double>::infinity();
        for (double e : res.residual_energy) {
            CHECK(e <= prev * (1.0 + 1e-9) + 1e-9);
            prev = e;
        }
    }
}

TEST_CASE("fsr parameter validation") {
    qs::FsrParams params;
    params.border = 10;  // 4 + 20 != 32
    CHECK_THROWS_AS(params.validate(), qs::ValidationError);
    params = {};
    params.gamma = 1.5;
    CHECK_THROWS_AS(params.validate(), qs::ValidationError);
    params = {};
    params.rho = 1.0;
    CHECK_THROWS_AS(params.validate(), qs::ValidationError);
    params = {};
    params.delta = 1.0;
    CHECK_THROWS_AS(params.validate(), qs::ValidationError);
}

TEST_CASE("algorithm names round-trip") {
    CHECK(qs::to_string(qs::Algorithm::Fsr) == "fsr");
    CHECK(qs::algorithm_from_string("linear") == qs::Algorithm::Linear);
    CHECK_THROWS_AS(qs::algorithm_from_string("skr"), qs::ValidationError);
}
