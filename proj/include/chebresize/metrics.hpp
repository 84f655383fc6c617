// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "chebresize/image.hpp"

namespace chebresize {

/// Whether metrics read samples as stored or after 8-bit quantization.
enum class SampleMode { quantized, raw };

enum class SsimMode { global, windowed };

[[nodiscard]] inline const char* to_string(SsimMode m) { return m == SsimMode::global ? "global" : "windowed"; }

struct SsimParams {
    double dynamic_range = 255.0;
    double k1 = 0.01;
    double k2 = 0.03;
    SsimMode mode = SsimMode::global;
    std::size_t window = 8;
    /// false selects the unsquared stabilizers c1 = k1*L, c2 = k2*L.
    bool squared_constants = true;
    SampleMode samples = SampleMode::quantized;

    [[nodiscard]] double c1() const {
        const double c = k1 * dynamic_range;
        return squared_constants ? c * c : c;
    }
    [[nodiscard]] double c2() const {
        const double c = k2 * dynamic_range;
        return squared_constants ? c * c : c;
    }
};

struct MetricsReport {
    double mse = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
    SsimMode ssim_mode = SsimMode::global;
    std::optional<double> elapsed_s;
};

namespace detail {

inline void require_same_shape(const ImageBuffer& a, const ImageBuffer& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("metrics need non-empty images");
    if (a.size() != b.size() || a.channel_count() != b.channel_count())
        throw std::invalid_argument("image shapes differ: " + to_string(a.size()) + "x" +
                                    std::to_string(a.channel_count()) + " vs " + to_string(b.size()) + "x" +
                                    std::to_string(b.channel_count()));
}

[[nodiscard]] inline double read(double v, SampleMode mode) {
    return mode == SampleMode::quantized ? quantize_sample(v) : v;
}

/// Mean, variances and covariance of two equally shaped blocks. The variance
/// of a block is its covariance with itself, computed by the same expression,
/// so identical blocks yield bitwise equal terms.
struct BlockStats {
    double mean_a = 0.0, mean_b = 0.0, var_a = 0.0, var_b = 0.0, cov = 0.0;
};

template <typename BlockA, typename BlockB>
[[nodiscard]] BlockStats block_stats(const BlockA& a, const BlockB& b) {
    const double count = static_cast<double>(a.size());
    auto mean = [count](const auto& x) {
        double acc = 0.0;
        for (Eigen::Index r = 0; r < x.rows(); ++r)
            for (Eigen::Index c = 0; c < x.cols(); ++c) acc += x(r, c);
        return acc / count;
    };
    BlockStats s;
    s.mean_a = mean(a);
    s.mean_b = mean(b);
    auto covariance = [count](const auto& x, double mx, const auto& y, double my) {
        double acc = 0.0;
        for (Eigen::Index r = 0; r < x.rows(); ++r)
            for (Eigen::Index c = 0; c < x.cols(); ++c) acc += (x(r, c) - mx) * (y(r, c) - my);
        return acc / count;
    };
    s.var_a = covariance(a, s.mean_a, a, s.mean_a);
    s.var_b = covariance(b, s.mean_b, b, s.mean_b);
    s.cov = covariance(a, s.mean_a, b, s.mean_b);
    return s;
}

[[nodiscard]] inline double ssim_formula(const BlockStats& s, double c1, double c2) {
    const double num = (2.0 * s.mean_a * s.mean_b + c1) * (2.0 * s.cov + c2);
    const double den = (s.mean_a * s.mean_a + s.mean_b * s.mean_b + c1) * (s.var_a + s.var_b + c2);
    return num / den;
}

}  // namespace detail

/// Mean squared error over all samples of all channels.
[[nodiscard]] inline double mse(const ImageBuffer& reference, const ImageBuffer& candidate,
                                SampleMode mode = SampleMode::quantized) {
    detail::require_same_shape(reference, candidate);
    double total = 0.0;
    for (std::size_t c = 0; c < reference.channel_count(); ++c) {
        const Plane& a = reference.channel(c);
        const Plane& b = candidate.channel(c);
        for (Eigen::Index r = 0; r < a.rows(); ++r)
            for (Eigen::Index k = 0; k < a.cols(); ++k) {
                const double d = detail::read(a(r, k), mode) - detail::read(b(r, k), mode);
                total += d * d;
            }
    }
    return total / static_cast<double>(reference.rows() * reference.cols() * reference.channel_count());
}

/// 20 log10(255 / sqrt(mse)); +infinity for mse = 0.
[[nodiscard]] inline double psnr_from_mse(double mse_value) {
    if (mse_value < 0.0) throw std::invalid_argument("mse must be non-negative");
    if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(255.0 / std::sqrt(mse_value));
}

[[nodiscard]] inline double psnr(const ImageBuffer& reference, const ImageBuffer& candidate,
                                 SampleMode mode = SampleMode::quantized) {
    return psnr_from_mse(mse(reference, candidate, mode));
}

/// BT.601 full-range luma Y = 0.299 R + 0.587 G + 0.114 B, unquantized.
[[nodiscard]] inline ImageBuffer rgb_to_luma(const ImageBuffer& image, SampleMode mode = SampleMode::raw) {
    if (!image.is_rgb()) throw std::invalid_argument("luma conversion needs an RGB image");
    auto rd = [mode](const Plane& p) -> Plane {
        return mode == SampleMode::quantized ? Plane(p.unaryExpr([](double v) { return quantize_sample(v); })) : p;
    };
    Plane y = 0.299 * rd(image.channel(0)) + 0.587 * rd(image.channel(1)) + 0.114 * rd(image.channel(2));
    return ImageBuffer(std::move(y));
}

/// Structural similarity. Global mode evaluates the formula once over the
/// whole image; windowed mode averages it over every dense window x window
/// block (stride 1). RGB images are compared on their luma channel.
[[nodiscard]] inline double ssim(const ImageBuffer& reference, const ImageBuffer& candidate,
                                 const SsimParams& params = {}) {
    detail::require_same_shape(reference, candidate);
    Plane a, b;
    if (reference.is_rgb()) {
        a = rgb_to_luma(reference, params.samples).channel(0);
        b = rgb_to_luma(candidate, params.samples).channel(0);
    } else {
        a = reference.channel(0).unaryExpr([&](double v) { return detail::read(v, params.samples); });
        b = candidate.channel(0).unaryExpr([&](double v) { return detail::read(v, params.samples); });
    }
    const double c1 = params.c1(), c2 = params.c2();
    if (params.mode == SsimMode::global) return detail::ssim_formula(detail::block_stats(a, b), c1, c2);

    const auto w = static_cast<Eigen::Index>(params.window);
    if (w == 0) throw std::invalid_argument("SSIM window must be at least 1");
    if (a.rows() < w || a.cols() < w)
        throw std::invalid_argument("SSIM window " + std::to_string(params.window) + " is larger than the image " +
                                    to_string(reference.size()));
    double total = 0.0;
    std::size_t count = 0;
    for (Eigen::Index r = 0; r + w <= a.rows(); ++r)
        for (Eigen::Index c = 0; c + w <= a.cols(); ++c) {
            total += detail::ssim_formula(detail::block_stats(a.block(r, c, w, w), b.block(r, c, w, w)), c1, c2);
            ++count;
        }
    return total / static_cast<double>(count);
}

[[nodiscard]] inline MetricsReport evaluate_metrics(const ImageBuffer& reference, const ImageBuffer& candidate,
                                                    const SsimParams& params = {}) {
    MetricsReport report;
    report.mse = mse(reference, candidate, params.samples);
    report.psnr = psnr_from_mse(report.mse);
    report.ssim = ssim(reference, candidate, params);
    report.ssim_mode = params.mode;
    return report;
}

}  // namespace chebresize
