// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chebresize/image.hpp"
#include "chebresize/parallel.hpp"

namespace chebresize {

/// Keys cubic convolution kernel parameter.
inline constexpr double kCubicA = -0.5;

/// Keys cubic convolution kernel with a = -0.5; support [-2, 2].
[[nodiscard]] inline double cubic_kernel(double t) {
    const double x = std::abs(t);
    const double x2 = x * x, x3 = x2 * x;
    if (x <= 1.0) return (kCubicA + 2.0) * x3 - (kCubicA + 3.0) * x2 + 1.0;
    if (x < 2.0) return kCubicA * x3 - 5.0 * kCubicA * x2 + 8.0 * kCubicA * x - 4.0 * kCubicA;
    return 0.0;
}

/// Sparse resampling weights for one axis: output sample o reads source
/// samples index[o*taps + j] with weight[o*taps + j]. Rows sum to 1.
struct AxisWeights {
    std::size_t in = 0;
    std::size_t out = 0;
    std::size_t taps = 0;
    std::vector<std::size_t> index;
    std::vector<double> weight;
};

/// Cubic convolution weights mapping `in` cell-centred samples onto `out`.
///
/// Output sample x (1-based) sits at source coordinate (2x-1)*in/(2*out) + 1/2.
/// When shrinking with antialiasing the kernel is stretched by in/out and
/// rescaled; every row is renormalized to sum to one. Indices past either end
/// are clamped (replicated border).
[[nodiscard]] inline AxisWeights bicubic_axis_weights(std::size_t in, std::size_t out, bool antialias = true) {
    if (in == 0 || out == 0) throw std::invalid_argument("bicubic sizes must be at least 1");
    const double scale = static_cast<double>(out) / static_cast<double>(in);
    const bool widen = antialias && scale < 1.0;
    const double stretch = widen ? scale : 1.0;
    const double width = 4.0 / stretch;

    AxisWeights w;
    w.in = in;
    w.out = out;
    w.taps = static_cast<std::size_t>(std::ceil(width)) + 2;
    w.index.resize(out * w.taps);
    w.weight.resize(out * w.taps);
    const auto last = static_cast<std::int64_t>(in);
    for (std::size_t o = 0; o < out; ++o) {
        const double u = static_cast<double>((2 * static_cast<std::uint64_t>(o) + 1) * in) /
                             static_cast<double>(2 * static_cast<std::uint64_t>(out)) +
                         0.5;
        const auto left = static_cast<std::int64_t>(std::floor(u - width / 2.0));
        double sum = 0.0;
        for (std::size_t j = 0; j < w.taps; ++j) {
            const std::int64_t pos = left + static_cast<std::int64_t>(j);
            const double value = stretch * cubic_kernel(stretch * (u - static_cast<double>(pos)));
            w.index[o * w.taps + j] = static_cast<std::size_t>(std::clamp<std::int64_t>(pos, 1, last) - 1);
            w.weight[o * w.taps + j] = value;
            sum += value;
        }
        for (std::size_t j = 0; j < w.taps; ++j) w.weight[o * w.taps + j] /= sum;
    }
    return w;
}

struct BicubicOptions {
    bool antialias = true;
    bool quantize = true;
};

namespace detail {

[[nodiscard]] inline Plane resample_rows(const Plane& src, const AxisWeights& w) {
    Plane dst = Plane::Zero(static_cast<Eigen::Index>(w.out), src.cols());
    for (std::size_t o = 0; o < w.out; ++o)
        for (std::size_t j = 0; j < w.taps; ++j) {
            const double weight = w.weight[o * w.taps + j];
            if (weight == 0.0) continue;
            dst.row(static_cast<Eigen::Index>(o)) += weight * src.row(static_cast<Eigen::Index>(w.index[o * w.taps + j]));
        }
    return dst;
}

[[nodiscard]] inline Plane resample_cols(const Plane& src, const AxisWeights& w) {
    Plane dst = Plane::Zero(src.rows(), static_cast<Eigen::Index>(w.out));
    for (Eigen::Index r = 0; r < src.rows(); ++r)
        for (std::size_t o = 0; o < w.out; ++o) {
            double acc = 0.0;
            for (std::size_t j = 0; j < w.taps; ++j) {
                const double weight = w.weight[o * w.taps + j];
                if (weight != 0.0) acc += weight * src(r, static_cast<Eigen::Index>(w.index[o * w.taps + j]));
            }
            dst(r, static_cast<Eigen::Index>(o)) = acc;
        }
    return dst;
}

}  // namespace detail

/// Separable cubic-convolution resize, the conventional baseline. The axis
/// with the smaller scale ratio is processed first.
[[nodiscard]] inline ImageBuffer resize_bicubic(const ImageBuffer& input, Size target, BicubicOptions options = {}) {
    if (input.empty()) throw std::invalid_argument("input image is empty");
    if (target.rows == 0 || target.cols == 0) throw std::invalid_argument("target size must be at least 1x1");
    const AxisWeights row_w = bicubic_axis_weights(input.rows(), target.rows, options.antialias);
    const AxisWeights col_w = bicubic_axis_weights(input.cols(), target.cols, options.antialias);
    const double row_scale = static_cast<double>(target.rows) / static_cast<double>(input.rows());
    const double col_scale = static_cast<double>(target.cols) / static_cast<double>(input.cols());
    const bool rows_first = row_scale <= col_scale;

    std::vector<Plane> planes(input.channel_count());
    parallel_for(input.channel_count(), [&](std::size_t c) {
        const Plane& src = input.channel(c);
        Plane out = rows_first ? detail::resample_cols(detail::resample_rows(src, row_w), col_w)
                               : detail::resample_rows(detail::resample_cols(src, col_w), row_w);
        if (options.quantize) out = out.unaryExpr([](double v) { return quantize_sample(v); });
        planes[c] = std::move(out);
    });
    return ImageBuffer(std::move(planes));
}

}  // namespace chebresize
