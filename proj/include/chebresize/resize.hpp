// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chebresize/image.hpp"
#include "chebresize/operator.hpp"
#include "chebresize/parallel.hpp"

namespace chebresize {

enum class Method { lci, bicubic, equispaced_lagrange };
enum class Direction { up, down };

[[nodiscard]] inline const char* to_string(Method m) {
    switch (m) {
        case Method::lci: return "lci";
        case Method::bicubic: return "bicubic";
        case Method::equispaced_lagrange: return "equispaced_lagrange";
    }
    return "?";
}

[[nodiscard]] inline const char* to_string(Direction d) { return d == Direction::up ? "up" : "down"; }

[[nodiscard]] inline std::optional<Method> parse_method(const std::string& s) {
    if (s == "lci") return Method::lci;
    if (s == "bicubic") return Method::bicubic;
    if (s == "equispaced_lagrange" || s == "equispaced") return Method::equispaced_lagrange;
    return std::nullopt;
}

/// Resize by a factor in an explicit direction.
struct ScaleFactor {
    double factor = 1.0;
    Direction direction = Direction::down;
};

/// What the caller asked for: a scale factor or an exact target size.
struct ResizeSpec {
    std::variant<ScaleFactor, Size> intent = Size{};
    Method method = Method::lci;
    bool quantize_output = true;
};

struct ResolvedTarget {
    Size size;
    std::vector<std::string> warnings;
};

namespace detail {

/// floor(v), except that values within 1e-9 (relative) of an integer snap to it,
/// so decimal factors such as 1.1 * 100 do not lose a pixel to rounding.
[[nodiscard]] inline double floor_snapped(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return r;
    return std::floor(v);
}

}  // namespace detail

/// Floor-rule size of one axis scaled by `factor` in `direction` (unclamped).
[[nodiscard]] inline std::size_t scaled_extent(std::size_t extent, double factor, Direction direction) {
    const double e = static_cast<double>(extent);
    const double v = direction == Direction::up ? e * factor : e / factor;
    return static_cast<std::size_t>(detail::floor_snapped(v));
}

/// Turns a ResizeSpec into an explicit target size for a given source size.
///
/// Factor mode floors each axis (n*s when scaling up, n/s when scaling down).
/// An axis that floors to zero is clamped to 1 with a warning; if both axes
/// vanish the request is rejected.
[[nodiscard]] inline ResolvedTarget resolve_target(const ResizeSpec& spec, Size source) {
    if (source.rows == 0 || source.cols == 0) throw std::invalid_argument("source size must be at least 1x1");
    if (const auto* target = std::get_if<Size>(&spec.intent)) {
        if (target->rows == 0 || target->cols == 0)
            throw std::invalid_argument("target size must be at least 1x1");
        return {*target, {}};
    }
    const auto& scale = std::get<ScaleFactor>(spec.intent);
    if (!(scale.factor > 0.0) || !std::isfinite(scale.factor))
        throw std::invalid_argument("scale factor must be a positive finite number");
    ResolvedTarget out{{scaled_extent(source.rows, scale.factor, scale.direction),
                        scaled_extent(source.cols, scale.factor, scale.direction)},
                       {}};
    if (out.size.rows == 0 && out.size.cols == 0)
        throw std::invalid_argument("scale factor reduces " + to_string(source) + " to nothing");
    if (out.size.rows == 0) {
        out.size.rows = 1;
        out.warnings.emplace_back("row count floored to 0; clamped to 1");
    }
    if (out.size.cols == 0) {
        out.size.cols = 1;
        out.warnings.emplace_back("column count floored to 0; clamped to 1");
    }
    return out;
}

/// Keeps the pixels at the Chebyshev nodes shared by a grid and its s-fold
/// coarsening (s odd): output(k, h) = input(s*k + (s-1)/2, s*h + (s-1)/2),
/// zero-based, per channel.
[[nodiscard]] inline ImageBuffer decimate_odd(const ImageBuffer& input, std::size_t s) {
    if (s < 3 || s % 2 == 0) throw std::invalid_argument("decimation factor must be an odd integer >= 3");
    if (input.rows() % s != 0 || input.cols() % s != 0)
        throw std::invalid_argument("image size " + to_string(input.size()) + " is not divisible by " +
                                    std::to_string(s));
    const auto rows = static_cast<Eigen::Index>(input.rows() / s);
    const auto cols = static_cast<Eigen::Index>(input.cols() / s);
    const auto step = static_cast<Eigen::Index>(s);
    const auto offset = static_cast<Eigen::Index>((s - 1) / 2);
    std::vector<Plane> planes;
    for (const auto& c : input.channels()) {
        Plane out(rows, cols);
        for (Eigen::Index k = 0; k < rows; ++k)
            for (Eigen::Index h = 0; h < cols; ++h) out(k, h) = c(step * k + offset, step * h + offset);
        planes.push_back(std::move(out));
    }
    return ImageBuffer(std::move(planes));
}

/// Applies a prebuilt operator to every channel. Reusing one operator across
/// many same-sized images skips the matrix construction.
[[nodiscard]] inline ImageBuffer apply_operator(const ImageBuffer& input, const ResizeOperator& op,
                                                bool quantize = true) {
    if (input.size() != op.source_size())
        throw std::invalid_argument("image size " + to_string(input.size()) + " does not match operator source " +
                                    to_string(op.source_size()));
    std::vector<Plane> planes(input.channel_count());
    parallel_for(input.channel_count(), [&](std::size_t c) {
        planes[c] = op.apply(input.channel(c));
        if (quantize) planes[c] = planes[c].unaryExpr([](double v) { return quantize_sample(v); });
    });
    return ImageBuffer(std::move(planes));
}

/// Shared odd integer factor s >= 3 with source = s * target on both axes, if any.
[[nodiscard]] inline std::optional<std::size_t> common_odd_factor(Size source, Size target) {
    if (target.rows == 0 || target.cols == 0) return std::nullopt;
    if (source.rows % target.rows != 0 || source.cols % target.cols != 0) return std::nullopt;
    const std::size_t s = source.rows / target.rows;
    if (s != source.cols / target.cols || s < 3 || s % 2 == 0) return std::nullopt;
    return s;
}

/// Lagrange-Chebyshev resize: each channel C becomes V1^T C V2, i.e. the
/// tensor-product interpolant on the source Chebyshev grid sampled at the
/// target grid. Equal odd factors on both axes take the exact decimation path.
[[nodiscard]] inline ImageBuffer resize_lci(const ImageBuffer& input, Size target, bool quantize = true) {
    if (input.empty()) throw std::invalid_argument("input image is empty");
    if (target.rows == 0 || target.cols == 0) throw std::invalid_argument("target size must be at least 1x1");
    if (target == input.size()) return quantize ? input.quantized() : input;
    if (const auto s = common_odd_factor(input.size(), target)) {
        ImageBuffer out = decimate_odd(input, *s);
        return quantize ? out.quantized() : out;
    }
    return apply_operator(input, ResizeOperator(input.size(), target, NodeFamily::chebyshev), quantize);
}

/// Largest axis for which equispaced Lagrange output is numerically meaningful.
inline constexpr std::size_t kEquispacedSizeGuard = 300;

/// Warning text when an equispaced resize exceeds the size guard.
[[nodiscard]] inline std::optional<std::string> equispaced_size_warning(Size source) {
    if (source.rows <= kEquispacedSizeGuard && source.cols <= kEquispacedSizeGuard) return std::nullopt;
    return "equispaced Lagrange on " + to_string(source) + " exceeds " + std::to_string(kEquispacedSizeGuard) +
           " pixels per axis; output is numerically meaningless";
}

/// Global Lagrange interpolation on equispaced nodes. Exists to demonstrate
/// the instability of that node family; expect saturated borders.
[[nodiscard]] inline ImageBuffer resize_equispaced_lagrange(const ImageBuffer& input, Size target,
                                                            bool quantize = true) {
    if (input.empty()) throw std::invalid_argument("input image is empty");
    if (target.rows == 0 || target.cols == 0) throw std::invalid_argument("target size must be at least 1x1");
    return apply_operator(input, ResizeOperator(input.size(), target, NodeFamily::equispaced), quantize);
}

}  // namespace chebresize
