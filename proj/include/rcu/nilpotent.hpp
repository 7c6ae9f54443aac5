#pragma once

// Single-entry shift matrices A_j with (A_j)_{k,l} = delta_{k,j+1} delta_{l,j} (1-based) and their
// products. A product A_{j_L} ... A_{j_0} is nonzero exactly when j_i = j_0 + i for every i, and
// then its only nonzero entry is a 1 at (j_L + 1, j_0).

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

namespace rcu {

class NilpotentShift {
public:
    /// Throws DomainError unless N >= 2 and 1 <= j <= N-1.
    NilpotentShift(std::size_t N, std::size_t j);

    std::size_t dimension() const { return N_; }
    std::size_t index() const { return j_; }
    /// Dense N x N matrix.
    Eigen::MatrixXd matrix() const;

private:
    std::size_t N_;
    std::size_t j_;
};

/// True iff indices[i] == indices[0] + i for all i.
bool is_consecutive_run(std::span<const std::size_t> indices);

/// A_{j_L} ... A_{j_0} for indices = (j_0, ..., j_L), computed from the index structure.
/// Throws DomainError for an empty list or indices outside 1..N-1.
Eigen::MatrixXd nilpotent_product(std::span<const std::size_t> indices, std::size_t N);

/// 1-based (row, col) of the nonzero entry of the product, or nullopt for the zero matrix.
std::optional<std::pair<std::size_t, std::size_t>> nilpotent_product_support(std::span<const std::size_t> indices,
                                                                              std::size_t N);

}  // namespace rcu
