// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "chebresize/metrics.hpp"
#include "chebresize/resize.hpp"
#include "test_support.hpp"

using namespace chebresize;
using chebresize::testing::random_image;

TEST(ResolveTarget, PassesExplicitSizeThrough) {
    const auto r = resolve_target({Size{300, 400}}, {17, 23});
    EXPECT_EQ(r.size, (Size{300, 400}));
    EXPECT_TRUE(r.warnings.empty());
}

TEST(ResolveTarget, FloorsScaledSizes) {
    EXPECT_EQ(resolve_target({ScaleFactor{3.0, Direction::down}}, {481, 321}).size, (Size{160, 107}));
    EXPECT_EQ(resolve_target({ScaleFactor{2.0, Direction::up}}, {100, 100}).size, (Size{200, 200}));
    EXPECT_EQ(resolve_target({ScaleFactor{1.5, Direction::up}}, {7, 9}).size, (Size{10, 13}));
    EXPECT_EQ(resolve_target({ScaleFactor{1.1, Direction::up}}, {100, 30}).size, (Size{110, 33}));
}

TEST(ResolveTarget, ClampsVanishingAxisWithWarning) {
    const auto r = resolve_target({ScaleFactor{10.0, Direction::down}}, {5, 40});
    EXPECT_EQ(r.size, (Size{1, 4}));
    ASSERT_EQ(r.warnings.size(), 1u);
}

TEST(ResolveTarget, RejectsInvalidRequests) {
    EXPECT_THROW((void)resolve_target({ScaleFactor{10.0, Direction::down}}, {5, 5}), std::invalid_argument);
    EXPECT_THROW((void)resolve_target({ScaleFactor{0.0, Direction::up}}, {5, 5}), std::invalid_argument);
    EXPECT_THROW((void)resolve_target({ScaleFactor{-2.0, Direction::up}}, {5, 5}), std::invalid_argument);
    EXPECT_THROW((void)resolve_target({Size{0, 3}}, {5, 5}), std::invalid_argument);
}

TEST(DecimateOdd, CenterPixelOfThreeByThree) {
    Plane p(3, 3);
    p << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    const auto out = decimate_odd(ImageBuffer(p), 3);
    ASSERT_EQ(out.size(), (Size{1, 1}));
    EXPECT_EQ(out.at(0, 0), 5.0);
}

TEST(DecimateOdd, PicksCoincidentRowsAndColumns) {
    std::mt19937_64 rng(1);
    const auto img = random_image(rng, {9, 6}, 3);
    const auto out = decimate_odd(img, 3);
    ASSERT_EQ(out.size(), (Size{3, 2}));
    const std::size_t rows[] = {1, 4, 7}, cols[] = {1, 4};
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t h = 0; h < 2; ++h) EXPECT_EQ(out.at(k, h, c), img.at(rows[k], cols[h], c));

    const auto big = random_image(rng, {15, 15}, 1);
    const auto five = decimate_odd(big, 5);
    const std::size_t idx[] = {2, 7, 12};
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t h = 0; h < 3; ++h) EXPECT_EQ(five.at(k, h), big.at(idx[k], idx[h]));
}

TEST(DecimateOdd, RejectsEvenFactorsAndIndivisibleSizes) {
    const auto img = ImageBuffer::filled({12, 12}, 1, 0.0);
    EXPECT_THROW((void)decimate_odd(img, 2), std::invalid_argument);
    EXPECT_THROW((void)decimate_odd(img, 1), std::invalid_argument);
    EXPECT_THROW((void)decimate_odd(img, 5), std::invalid_argument);
    EXPECT_NO_THROW((void)decimate_odd(img, 3));
}

TEST(ResizeLci, SameSizeIsIdentity) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::size_t> extent(1, 64);
    for (int trial = 0; trial < 50; ++trial) {
        const auto img = random_image(rng, {extent(rng), extent(rng)}, trial % 2 ? 3 : 1);
        EXPECT_EQ(resize_lci(img, img.size()), img);
    }
}

TEST(ResizeLci, ConstantImageStaysConstant) {
    const auto img = ImageBuffer::filled({20, 14}, 3, 128.0);
    for (Size target : {Size{7, 9}, Size{40, 28}, Size{1, 1}, Size{33, 5}})
        EXPECT_EQ(resize_lci(img, target), ImageBuffer::filled(target, 3, 128.0));
}

TEST(ResizeLci, NineByNineToThreeByThree) {
    std::mt19937_64 rng(4);
    const auto img = random_image(rng, {9, 9}, 1);
    const auto out = resize_lci(img, {3, 3});
    for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t h = 1; h <= 3; ++h) EXPECT_EQ(out.at(k - 1, h - 1), img.at(3 * k - 2, 3 * h - 2));
}

TEST(ResizeLci, OddFactorsEqualDecimation) {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<std::size_t> extent(1, 40);
    for (std::size_t s : {3u, 5u, 7u})
        for (int trial = 0; trial < 8; ++trial) {
            const Size coarse{extent(rng), extent(rng)};
            const auto img = random_image(rng, {s * coarse.rows, s * coarse.cols}, trial % 2 ? 3 : 1);
            const auto out = resize_lci(img, coarse);
            const auto ref = decimate_odd(img, s);
            EXPECT_EQ(out, ref);
            EXPECT_EQ(mse(ref, out), 0.0);
        }
}

TEST(ResizeLci, MixedOddFactorsStillHitCoincidentNodes) {
    std::mt19937_64 rng(8);
    const auto img = random_image(rng, {15, 20}, 1);
    const auto out = resize_lci(img, {5, 4});
    for (std::size_t k = 0; k < 5; ++k)
        for (std::size_t h = 0; h < 4; ++h) EXPECT_EQ(out.at(k, h), img.at(3 * k + 1, 5 * h + 2));
}

TEST(ResizeLci, OddFactorErrorBound) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::size_t> extent(2, 20);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t s = trial % 2 ? 3 : 5;
        const double delta = (trial % 3 == 0) ? 1.0 : (trial % 3 == 1 ? 5.0 : 20.0);
        const Size coarse{extent(rng), extent(rng)};
        const auto clean = random_image(rng, {s * coarse.rows, s * coarse.cols}, 1);
        Plane noisy = clean.channel(0);
        std::uniform_real_distribution<double> noise(-delta, delta);
        for (Eigen::Index r = 0; r < noisy.rows(); ++r)
            for (Eigen::Index c = 0; c < noisy.cols(); ++c) noisy(r, c) += noise(rng);
        const ImageBuffer input(noisy);
        const auto out = resize_lci(input, coarse, false);
        const double lhs = mse(decimate_odd(clean, s), out, SampleMode::raw);
        const double rhs = static_cast<double>(s * s) * mse(clean, input, SampleMode::raw);
        EXPECT_LE(lhs, rhs + 1e-9);
    }
}

TEST(ResizeLci, ReproducesBivariatePolynomials) {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<std::size_t> source_extent(1, 12), target_extent(1, 32);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const Size src{source_extent(rng), source_extent(rng)};
        const Size dst{target_extent(rng), target_extent(rng)};
        const std::size_t degree = std::min(src.rows, src.cols);
        Eigen::MatrixXd a(degree, degree);
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = coef(rng);
        auto p = [&](double x, double y) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                for (Eigen::Index j = 0; j < a.cols(); ++j) acc += a(i, j) * std::pow(x, i) * std::pow(y, j);
            return acc;
        };
        auto sample = [&](Size s) {
            const auto gx = make_chebyshev_grid(s.rows), gy = make_chebyshev_grid(s.cols);
            Plane out(static_cast<Eigen::Index>(s.rows), static_cast<Eigen::Index>(s.cols));
            for (Eigen::Index i = 0; i < out.rows(); ++i)
                for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) = p(gx.nodes()[i], gy.nodes()[j]);
            return out;
        };
        const auto out = resize_lci(ImageBuffer(sample(src)), dst, false);
        EXPECT_LT((out.channel(0) - sample(dst)).cwiseAbs().maxCoeff(), 1e-7);
    }
}

TEST(ResizeLci, IsSeparable) {
    std::mt19937_64 rng(12);
    const auto img = random_image(rng, {23, 17}, 1);
    const auto direct = resize_lci(img, {30, 11}, false);
    const auto staged = resize_lci(resize_lci(img, {30, 17}, false), {30, 11}, false);
    EXPECT_LT((direct.channel(0) - staged.channel(0)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ResizeLci, ChannelsAreIndependent) {
    std::mt19937_64 rng(13);
    const auto img = random_image(rng, {19, 26}, 3);
    const auto rgb = resize_lci(img, {31, 12});
    for (std::size_t c = 0; c < 3; ++c)
        EXPECT_EQ(ImageBuffer(rgb.channel(c)), resize_lci(ImageBuffer(img.channel(c)), {31, 12}));
}

TEST(ResizeLci, RejectsEmptyTargets) {
    const auto img = ImageBuffer::filled({4, 4}, 1, 1.0);
    EXPECT_THROW((void)resize_lci(img, {0, 4}), std::invalid_argument);
    EXPECT_THROW((void)resize_lci(ImageBuffer{}, {2, 2}), std::invalid_argument);
}

TEST(ResizeEquispaced, SameSizeIsIdentity) {
    std::mt19937_64 rng(14);
    const auto img = random_image(rng, {12, 9}, 1);
    EXPECT_EQ(resize_equispaced_lagrange(img, img.size()), img);
}

TEST(ResizeEquispaced, SmoothRampBlowsUpAtTheBorder) {
    Plane ramp(64, 64);
    for (Eigen::Index r = 0; r < 64; ++r)
        for (Eigen::Index c = 0; c < 64; ++c) ramp(r, c) = quantize_sample(2.0 * static_cast<double>(r + c));
    const auto raw = resize_equispaced_lagrange(ImageBuffer(ramp), {128, 128}, false).channel(0);
    double border = 0.0;
    for (Eigen::Index r = 0; r < 128; ++r)
        for (Eigen::Index c = 0; c < 128; ++c)
            if (r < 4 || c < 4 || r >= 124 || c >= 124) border = std::max(border, std::abs(raw(r, c)));
    EXPECT_GT(border, 1e3);
    const auto quantized = resize_equispaced_lagrange(ImageBuffer(ramp), {128, 128});
    EXPECT_GE(quantized.channel(0).minCoeff(), 0.0);
    EXPECT_LE(quantized.channel(0).maxCoeff(), 255.0);
}

TEST(ResizeEquispaced, WarnsAboveSizeGuard) {
    EXPECT_FALSE(equispaced_size_warning({300, 300}));
    EXPECT_TRUE(equispaced_size_warning({301, 20}));
}

TEST(ApplyOperator, ReusesPrecomputedMatrices) {
    std::mt19937_64 rng(15);
    const ResizeOperator op({16, 12}, {10, 20}, NodeFamily::chebyshev);
    for (int i = 0; i < 3; ++i) {
        const auto img = random_image(rng, {16, 12}, 3);
        EXPECT_EQ(apply_operator(img, op), resize_lci(img, {10, 20}));
    }
    EXPECT_THROW((void)apply_operator(random_image(rng, {12, 16}, 1), op), std::invalid_argument);
}
