// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebresize {

enum class NodeFamily { chebyshev, equispaced };

[[nodiscard]] inline const char* to_string(NodeFamily f) {
    return f == NodeFamily::chebyshev ? "chebyshev" : "equispaced";
}

/// First-kind Chebyshev nodes of order mu together with their angles on the
/// upper unit semicircle.
///
/// Indices are zero-based: angle k is (2k+1)pi/(2mu), strictly increasing in
/// (0, pi), and node k is its cosine, strictly decreasing in (-1, 1).
class ChebyshevGrid {
public:
    explicit ChebyshevGrid(std::size_t order) : order_(order) {
        if (order == 0) throw std::invalid_argument("Chebyshev grid order must be at least 1");
        angles_.resize(order);
        nodes_.resize(order);
        const double mu = static_cast<double>(order);
        for (std::size_t k = 0; k < order; ++k) {
            angles_[k] = static_cast<double>(2 * k + 1) * std::numbers::pi / (2.0 * mu);
            // cos(t) written as sin(pi/2 - t): the argument is an integer multiple of
            // pi/(2mu), so the node set is exactly antisymmetric and has an exact zero.
            const auto shift = static_cast<std::int64_t>(order) - 1 - 2 * static_cast<std::int64_t>(k);
            nodes_[k] = std::sin(static_cast<double>(shift) * std::numbers::pi / (2.0 * mu));
        }
    }

    [[nodiscard]] std::size_t order() const { return order_; }
    [[nodiscard]] std::span<const double> nodes() const { return nodes_; }
    [[nodiscard]] std::span<const double> angles() const { return angles_; }

private:
    std::size_t order_;
    std::vector<double> nodes_;
    std::vector<double> angles_;
};

/// The mu interior points of the uniform partition of [-1, 1] into mu+1 cells.
class EquispacedGrid {
public:
    explicit EquispacedGrid(std::size_t order) : order_(order) {
        if (order == 0) throw std::invalid_argument("equispaced grid order must be at least 1");
        nodes_.resize(order);
        for (std::size_t k = 0; k < order; ++k)
            nodes_[k] = -1.0 + 2.0 * static_cast<double>(k + 1) / static_cast<double>(order + 1);
    }

    [[nodiscard]] std::size_t order() const { return order_; }
    [[nodiscard]] std::span<const double> nodes() const { return nodes_; }

private:
    std::size_t order_;
    std::vector<double> nodes_;
};

[[nodiscard]] inline ChebyshevGrid make_chebyshev_grid(std::size_t mu) { return ChebyshevGrid(mu); }
[[nodiscard]] inline EquispacedGrid make_equispaced_grid(std::size_t mu) { return EquispacedGrid(mu); }

/// cos(j * pi / (2 mu)) with the integer multiple reduced modulo 4mu first, so
/// arguments like (2k+1) r pi/(2mu) carry no accumulated rounding.
[[nodiscard]] inline double cos_quarter_turns(std::uint64_t j, std::size_t mu) {
    const std::uint64_t period = 4 * static_cast<std::uint64_t>(mu);
    return std::cos(static_cast<double>(j % period) * std::numbers::pi / (2.0 * static_cast<double>(mu)));
}

/// Fundamental Lagrange polynomial k (zero-based) of the order-mu Chebyshev
/// grid, evaluated at x = cos(t) through its cosine expansion
///   (2/mu) * sum'_{r<mu} cos((2k+1) r pi/(2mu)) cos(r t),
/// with the r = 0 term halved.
[[nodiscard]] inline double lagrange_basis_trig(std::size_t mu, std::size_t k, double t) {
    if (mu == 0 || k >= mu) throw std::invalid_argument("basis index out of range");
    double sum = 0.5;
    for (std::size_t r = 1; r < mu; ++r)
        sum += cos_quarter_turns(static_cast<std::uint64_t>(2 * k + 1) * r, mu) * std::cos(static_cast<double>(r) * t);
    return 2.0 * sum / static_cast<double>(mu);
}

namespace detail {

/// Product formula without the distinctness check; callers guarantee distinct nodes.
[[nodiscard]] inline double lagrange_product_unchecked(std::span<const double> nodes, std::size_t k, double x) {
    double value = 1.0;
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        if (s == k) continue;
        value *= (x - nodes[s]) / (nodes[k] - nodes[s]);
    }
    return value;
}

}  // namespace detail

/// True when no two nodes are equal.
[[nodiscard]] inline bool nodes_distinct(std::span<const double> nodes) {
    std::vector<double> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

/// Fundamental Lagrange polynomial k (zero-based) for an arbitrary set of
/// pairwise distinct nodes, evaluated with the product formula.
[[nodiscard]] inline double lagrange_basis_product(std::span<const double> nodes, std::size_t k, double x) {
    if (k >= nodes.size()) throw std::invalid_argument("basis index out of range");
    if (!nodes_distinct(nodes)) throw std::invalid_argument("interpolation nodes must be pairwise distinct");
    return detail::lagrange_product_unchecked(nodes, k, x);
}

/// Lebesgue function sum_k |l_k(x)| of a node set at x, via the product form.
[[nodiscard]] inline double lebesgue_function(std::span<const double> nodes, double x) {
    if (!nodes_distinct(nodes)) throw std::invalid_argument("interpolation nodes must be pairwise distinct");
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) sum += std::abs(detail::lagrange_product_unchecked(nodes, k, x));
    return sum;
}

}  // namespace chebresize
