// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "chebresize/bicubic.hpp"
#include "test_support.hpp"

using namespace chebresize;
using chebresize::testing::random_image;

TEST(CubicKernel, InterpolatesAndHasCompactSupport) {
    EXPECT_EQ(cubic_kernel(0.0), 1.0);
    for (double t : {1.0, -1.0, 2.0, -2.0, 2.5, -7.0}) EXPECT_EQ(cubic_kernel(t), 0.0);
}

TEST(CubicKernel, PartitionOfUnity) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> shift(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double t = shift(rng);
        double sum = 0.0;
        for (int i = -6; i <= 6; ++i) sum += cubic_kernel(t - i);
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
}

TEST(BicubicWeights, RowsSumToOneWhenShrinking) {
    for (std::size_t ratio : {2u, 3u, 4u}) {
        const auto w = bicubic_axis_weights(60 * ratio, 60);
        EXPECT_GE(w.taps, 4 * ratio);
        for (std::size_t o = 0; o < w.out; ++o) {
            double sum = 0.0;
            for (std::size_t j = 0; j < w.taps; ++j) sum += w.weight[o * w.taps + j];
            EXPECT_NEAR(sum, 1.0, 1e-12);
        }
    }
}

TEST(ResizeBicubic, SameSizeIsIdentity) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const auto img = random_image(rng, {5 + static_cast<std::size_t>(trial), 13}, trial % 2 ? 3 : 1);
        EXPECT_EQ(resize_bicubic(img, img.size()), img);
    }
}

TEST(ResizeBicubic, ConstantImageStaysConstant) {
    const auto img = ImageBuffer::filled({21, 30}, 3, 77.0);
    for (Size target : {Size{7, 10}, Size{42, 60}, Size{50, 11}, Size{1, 1}})
        EXPECT_EQ(resize_bicubic(img, target), ImageBuffer::filled(target, 3, 77.0));
}

TEST(ResizeBicubic, UpscaledRampStaysLinear) {
    Plane ramp(8, 32);
    for (Eigen::Index r = 0; r < 8; ++r)
        for (Eigen::Index c = 0; c < 32; ++c) ramp(r, c) = static_cast<double>(c);
    const auto out = resize_bicubic(ImageBuffer(ramp), {16, 64});
    for (std::size_t o = 5; o < 59; ++o) {
        // source coordinate of output column o, zero-based
        const double expected = (2.0 * static_cast<double>(o) + 1.0) / 4.0 - 0.5;
        EXPECT_NEAR(out.at(7, o), expected, 1.0);
    }
}

TEST(ResizeBicubic, ReproducesLinearImagesAwayFromTheBorder) {
    // f(r, c) = 1.3 r + 0.7 c + 20 on zero-based pixel centres
    auto linear = [](Size s) {
        Plane p(static_cast<Eigen::Index>(s.rows), static_cast<Eigen::Index>(s.cols));
        for (Eigen::Index r = 0; r < p.rows(); ++r)
            for (Eigen::Index c = 0; c < p.cols(); ++c) p(r, c) = 1.3 * r + 0.7 * c + 20.0;
        return p;
    };
    const Size src{64, 80};
    for (Size dst : {Size{128, 160}, Size{192, 100}, Size{32, 40}, Size{16, 20}, Size{21, 27}, Size{64, 80}}) {
        const auto out = resize_bicubic(ImageBuffer(linear(src)), dst, {.antialias = true, .quantize = false});
        const double fr = static_cast<double>(src.rows) / static_cast<double>(dst.rows);
        const double fc = static_cast<double>(src.cols) / static_cast<double>(dst.cols);
        // keep outputs whose kernel support stays inside the image
        const double reach_r = 2.0 * std::max(1.0, fr) + 1.0, reach_c = 2.0 * std::max(1.0, fc) + 1.0;
        for (std::size_t r = 0; r < dst.rows; ++r)
            for (std::size_t c = 0; c < dst.cols; ++c) {
                const double ur = (r + 0.5) * fr - 0.5, uc = (c + 0.5) * fc - 0.5;
                if (ur < reach_r || uc < reach_c || ur > src.rows - 1 - reach_r || uc > src.cols - 1 - reach_c)
                    continue;
                EXPECT_NEAR(out.at(r, c), 1.3 * ur + 0.7 * uc + 20.0, 0.5) << to_string(dst) << " " << r << "," << c;
            }
    }
}

TEST(ResizeBicubic, OddUpscaleKeepsOriginalSamplesAtCoincidentPositions) {
    std::mt19937_64 rng(4);
    const auto img = random_image(rng, {11, 7}, 3);
    const auto up = resize_bicubic(img, {33, 21});
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t k = 0; k < 11; ++k)
            for (std::size_t h = 0; h < 7; ++h) EXPECT_EQ(up.at(3 * k + 1, 3 * h + 1, c), img.at(k, h, c));
}

TEST(ResizeBicubic, RejectsEmptyTargets) {
    EXPECT_THROW((void)resize_bicubic(ImageBuffer::filled({3, 3}, 1, 0), {0, 3}), std::invalid_argument);
    EXPECT_THROW((void)bicubic_axis_weights(0, 3), std::invalid_argument);
}
