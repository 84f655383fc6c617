// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace chebresize {

/// Image extent in matrix order: rows (height) first, then columns (width).
struct Size {
    std::size_t rows = 0;
    std::size_t cols = 0;

    friend bool operator==(const Size&, const Size&) = default;
};

[[nodiscard]] inline std::string to_string(Size s) {
    return std::to_string(s.rows) + "x" + std::to_string(s.cols);
}

/// One channel of real-valued samples, stored row-major.
using Plane = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 8-bit quantization: round half away from zero, then clamp to [0, 255].
[[nodiscard]] inline double quantize_sample(double v) {
    return std::clamp(std::round(v), 0.0, 255.0);
}

/// Planar image with one (gray) or three (RGB) channels of real samples.
///
/// Samples nominally live in [0, 255]; unquantized results of resampling may
/// leave that range, and quantized() brings them back to 8-bit values.
class ImageBuffer {
public:
    ImageBuffer() = default;

    explicit ImageBuffer(std::vector<Plane> channels) : channels_(std::move(channels)) {
        if (channels_.size() != 1 && channels_.size() != 3)
            throw std::invalid_argument("image must have 1 or 3 channels");
        for (const auto& c : channels_) {
            if (c.rows() != channels_.front().rows() || c.cols() != channels_.front().cols())
                throw std::invalid_argument("image channels differ in shape");
        }
        if (channels_.front().size() == 0)
            throw std::invalid_argument("image must not be empty");
    }

    explicit ImageBuffer(Plane gray) : ImageBuffer(std::vector<Plane>{std::move(gray)}) {}

    [[nodiscard]] static ImageBuffer filled(Size size, std::size_t channels, double value) {
        std::vector<Plane> planes(channels, Plane::Constant(static_cast<Eigen::Index>(size.rows),
                                                           static_cast<Eigen::Index>(size.cols),
                                                           value));
        return ImageBuffer(std::move(planes));
    }

    /// Builds an image from interleaved 8-bit samples (row-major, channel fastest).
    [[nodiscard]] static ImageBuffer from_interleaved(Size size, std::size_t channels,
                                                      std::span<const std::uint8_t> bytes) {
        if (bytes.size() != size.rows * size.cols * channels)
            throw std::invalid_argument("interleaved buffer has the wrong length");
        std::vector<Plane> planes(channels, Plane(static_cast<Eigen::Index>(size.rows),
                                                  static_cast<Eigen::Index>(size.cols)));
        std::size_t p = 0;
        for (std::size_t r = 0; r < size.rows; ++r)
            for (std::size_t c = 0; c < size.cols; ++c)
                for (std::size_t ch = 0; ch < channels; ++ch)
                    planes[ch](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = bytes[p++];
        return ImageBuffer(std::move(planes));
    }

    [[nodiscard]] std::size_t rows() const {
        return channels_.empty() ? 0 : static_cast<std::size_t>(channels_.front().rows());
    }
    [[nodiscard]] std::size_t cols() const {
        return channels_.empty() ? 0 : static_cast<std::size_t>(channels_.front().cols());
    }
    [[nodiscard]] Size size() const { return {rows(), cols()}; }
    [[nodiscard]] std::size_t channel_count() const { return channels_.size(); }
    [[nodiscard]] bool empty() const { return channels_.empty(); }
    [[nodiscard]] bool is_rgb() const { return channels_.size() == 3; }

    [[nodiscard]] const Plane& channel(std::size_t c) const { return channels_.at(c); }
    [[nodiscard]] const std::vector<Plane>& channels() const { return channels_; }

    [[nodiscard]] double at(std::size_t row, std::size_t col, std::size_t c = 0) const {
        return channels_.at(c)(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    [[nodiscard]] ImageBuffer quantized() const {
        std::vector<Plane> planes;
        planes.reserve(channels_.size());
        for (const auto& c : channels_)
            planes.push_back(c.unaryExpr([](double v) { return quantize_sample(v); }));
        return ImageBuffer(std::move(planes));
    }

    /// True when every sample is already an integer in [0, 255].
    [[nodiscard]] bool is_quantized() const {
        return std::all_of(channels_.begin(), channels_.end(), [](const Plane& c) {
            return (c.array() == c.array().unaryExpr([](double v) { return quantize_sample(v); })).all();
        });
    }

    /// Interleaved 8-bit samples (row-major, channel fastest), quantizing on the way out.
    [[nodiscard]] std::vector<std::uint8_t> to_interleaved() const {
        std::vector<std::uint8_t> out;
        out.reserve(rows() * cols() * channel_count());
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c = 0; c < cols(); ++c)
                for (const auto& ch : channels_)
                    out.push_back(static_cast<std::uint8_t>(
                        quantize_sample(ch(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)))));
        return out;
    }

    friend bool operator==(const ImageBuffer& a, const ImageBuffer& b) {
        if (a.channels_.size() != b.channels_.size() || a.size() != b.size()) return false;
        for (std::size_t c = 0; c < a.channels_.size(); ++c)
            if (!(a.channels_[c].array() == b.channels_[c].array()).all()) return false;
        return true;
    }

private:
    std::vector<Plane> channels_;
};

}  // namespace chebresize
