// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "chebresize/error.hpp"
#include "chebresize/image.hpp"
#include "chebresize/nodes.hpp"
#include "chebresize/parallel.hpp"

namespace chebresize {

using Matrix = Eigen::MatrixXd;

/// Largest matrix (in entries) an operator will allocate: 2^30 doubles, 8 GiB.
inline constexpr std::uint64_t kMaxOperatorEntries = std::uint64_t{1} << 30;

namespace detail {

inline void check_operator_extent(std::size_t from, std::size_t to) {
    if (from == 0 || to == 0) throw std::invalid_argument("resize sizes must be at least 1");
    const auto a = static_cast<std::uint64_t>(from);
    const auto b = static_cast<std::uint64_t>(to);
    if (a > kMaxOperatorEntries / b || a > kMaxOperatorEntries / a)
        throw ResourceError("resize operator " + std::to_string(from) + "x" + std::to_string(to) +
                            " exceeds the supported size");
}

/// Source row (zero-based) whose Chebyshev angle equals that of target node k,
/// or -1 when node k of the target grid is not a node of the source grid.
/// Angles (2i+1)/(2n) and (2k+1)/(2N) are compared as exact rationals.
[[nodiscard]] inline std::int64_t coincident_row(std::size_t from, std::size_t to, std::size_t k) {
    const std::uint64_t num = (2 * static_cast<std::uint64_t>(k) + 1) * from;
    if (num % to != 0) return -1;
    const std::uint64_t odd = num / to;
    if (odd % 2 == 0) return -1;
    return static_cast<std::int64_t>((odd - 1) / 2);
}

}  // namespace detail

/// Matrix V of shape from x to with V(i, k) = l_i(x_k), where l_i is the
/// fundamental Lagrange polynomial of the order-`from` Chebyshev grid and x_k
/// are the order-`to` Chebyshev nodes.
///
/// When from = s * to with s odd, every target node is a source node and the
/// columns are set to exact unit vectors (row s*k + (s-1)/2). Other columns use
/// the cosine expansion, summed directly per entry; any column whose node
/// still coincides with a source node is replaced by its unit vector.
[[nodiscard]] inline Matrix chebyshev_resize_matrix(std::size_t from, std::size_t to) {
    detail::check_operator_extent(from, to);
    try {
        Matrix v = Matrix::Zero(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(to));
        if (from % to == 0 && (from / to) % 2 == 1) {
            const std::size_t s = from / to;
            for (std::size_t k = 0; k < to; ++k)
                v(static_cast<Eigen::Index>(s * k + (s - 1) / 2), static_cast<Eigen::Index>(k)) = 1.0;
            return v;
        }

        const auto n = static_cast<Eigen::Index>(from);
        const auto big_n = static_cast<Eigen::Index>(to);
        const std::uint64_t src_period = 4 * static_cast<std::uint64_t>(from);
        const std::uint64_t dst_period = 4 * static_cast<std::uint64_t>(to);

        std::vector<double> src_cos(src_period), dst_cos(dst_period);
        for (std::uint64_t j = 0; j < src_period; ++j) src_cos[j] = cos_quarter_turns(j, from);
        for (std::uint64_t j = 0; j < dst_period; ++j) dst_cos[j] = cos_quarter_turns(j, to);

        // target(r, k) = cos(r t_k), t_k = (2k+1) pi / (2 to)
        Matrix target(n, big_n);
        for (Eigen::Index k = 0; k < big_n; ++k)
            for (Eigen::Index r = 0; r < n; ++r)
                target(r, k) = dst_cos[(static_cast<std::uint64_t>(2 * k + 1) * static_cast<std::uint64_t>(r)) % dst_period];

        constexpr Eigen::Index kBlock = 128;
        const Eigen::Index blocks = (n + kBlock - 1) / kBlock;
        const double scale = 2.0 / static_cast<double>(from);
        parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
            const Eigen::Index first = static_cast<Eigen::Index>(b) * kBlock;
            const Eigen::Index count = std::min(kBlock, n - first);
            // source(i, r) = cos((2i+1) r pi / (2 from)), first term halved
            Matrix source(count, n);
            for (Eigen::Index i = 0; i < count; ++i) {
                const auto odd = static_cast<std::uint64_t>(2 * (first + i) + 1);
                source(i, 0) = 0.5;
                for (Eigen::Index r = 1; r < n; ++r)
                    source(i, r) = src_cos[(odd * static_cast<std::uint64_t>(r)) % src_period];
            }
            v.middleRows(first, count).noalias() = scale * (source * target);
        });

        for (std::size_t k = 0; k < to; ++k) {
            const std::int64_t row = detail::coincident_row(from, to, k);
            if (row < 0) continue;
            v.col(static_cast<Eigen::Index>(k)).setZero();
            v(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(k)) = 1.0;
        }
        return v;
    } catch (const std::bad_alloc&) {
        throw ResourceError("out of memory building a " + std::to_string(from) + "x" + std::to_string(to) +
                            " resize operator");
    }
}

/// Same shape as chebyshev_resize_matrix, for the equispaced node family,
/// evaluated with the product form. Diagnostic only: the Lebesgue constant of
/// these nodes grows exponentially.
[[nodiscard]] inline Matrix equispaced_resize_matrix(std::size_t from, std::size_t to) {
    detail::check_operator_extent(from, to);
    const EquispacedGrid source(from);
    const EquispacedGrid target(to);
    try {
        Matrix v(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(to));
        parallel_for(to, [&](std::size_t k) {
            for (std::size_t i = 0; i < from; ++i)
                v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                    detail::lagrange_product_unchecked(source.nodes(), i, target.nodes()[k]);
        });
        return v;
    } catch (const std::bad_alloc&) {
        throw ResourceError("out of memory building a " + std::to_string(from) + "x" + std::to_string(to) +
                            " resize operator");
    }
}

/// The pair (V1, V2) mapping an image of size `source` to `target`:
/// out = V1^T * in * V2 for each channel.
class ResizeOperator {
public:
    ResizeOperator(Size source, Size target, NodeFamily family)
        : source_(source), target_(target), family_(family) {
        auto build = family == NodeFamily::chebyshev ? chebyshev_resize_matrix : equispaced_resize_matrix;
        v1_ = build(source.rows, target.rows);
        if (source.cols == source.rows && target.cols == target.rows)
            v2_ = v1_;
        else
            v2_ = build(source.cols, target.cols);
    }

    [[nodiscard]] const Matrix& v1() const { return v1_; }
    [[nodiscard]] const Matrix& v2() const { return v2_; }
    [[nodiscard]] Size source_size() const { return source_; }
    [[nodiscard]] Size target_size() const { return target_; }
    [[nodiscard]] NodeFamily family() const { return family_; }

    /// V1^T * plane * V2, multiplied in whichever order needs fewer operations.
    [[nodiscard]] Plane apply(const Plane& plane) const {
        if (static_cast<std::size_t>(plane.rows()) != source_.rows ||
            static_cast<std::size_t>(plane.cols()) != source_.cols)
            throw std::invalid_argument("plane does not match the operator's source size");
        const double n = static_cast<double>(source_.rows), m = static_cast<double>(source_.cols);
        const double big_n = static_cast<double>(target_.rows), big_m = static_cast<double>(target_.cols);
        const double rows_first = big_n * n * m + big_n * m * big_m;
        const double cols_first = n * m * big_m + big_n * n * big_m;
        Plane out;
        if (rows_first <= cols_first) {
            Matrix tmp = v1_.transpose() * plane;
            out.noalias() = tmp * v2_;
        } else {
            Matrix tmp = plane * v2_;
            out.noalias() = v1_.transpose() * tmp;
        }
        return out;
    }

private:
    Size source_;
    Size target_;
    NodeFamily family_;
    Matrix v1_;
    Matrix v2_;
};

[[nodiscard]] inline ResizeOperator build_resize_operator(Size source, Size target, NodeFamily family) {
    return ResizeOperator(source, target, family);
}

}  // namespace chebresize
