// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "chebresize/image.hpp"

namespace chebresize::testing {

/// Random 8-bit image with the given shape.
inline ImageBuffer random_image(std::mt19937_64& rng, Size size, std::size_t channels) {
    std::uniform_int_distribution<int> pixel(0, 255);
    std::vector<Plane> planes;
    for (std::size_t c = 0; c < channels; ++c) {
        Plane p(static_cast<Eigen::Index>(size.rows), static_cast<Eigen::Index>(size.cols));
        for (Eigen::Index r = 0; r < p.rows(); ++r)
            for (Eigen::Index k = 0; k < p.cols(); ++k) p(r, k) = pixel(rng);
        planes.push_back(std::move(p));
    }
    return ImageBuffer(std::move(planes));
}

/// Fresh scratch directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("chebresize_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace chebresize::testing
