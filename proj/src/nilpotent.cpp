#include "rcu/nilpotent.hpp"

#include "rcu/errors.hpp"

#include <string>

namespace rcu {

NilpotentShift::NilpotentShift(std::size_t N, std::size_t j) : N_(N), j_(j)
{
    if (N < 2) throw DomainError("nilpotent shift needs N >= 2");
    if (j < 1 || j > N - 1)
        throw DomainError("shift index " + std::to_string(j) + " outside 1.." + std::to_string(N - 1));
}

Eigen::MatrixXd NilpotentShift::matrix() const
{
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N_), static_cast<Eigen::Index>(N_));
    A(static_cast<Eigen::Index>(j_), static_cast<Eigen::Index>(j_ - 1)) = 1.0;
    return A;
}

bool is_consecutive_run(std::span<const std::size_t> indices)
{
    for (std::size_t i = 1; i < indices.size(); ++i)
        if (indices[i] != indices[0] + i) return false;
    return true;
}

std::optional<std::pair<std::size_t, std::size_t>> nilpotent_product_support(std::span<const std::size_t> indices,
                                                                              std::size_t N)
{
    if (indices.empty()) throw DomainError("nilpotent product needs at least one factor");
    for (std::size_t j : indices) NilpotentShift(N, j);
    if (!is_consecutive_run(indices)) return std::nullopt;
    return std::make_pair(indices.back() + 1, indices.front());
}

Eigen::MatrixXd nilpotent_product(std::span<const std::size_t> indices, std::size_t N)
{
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    if (const auto s = nilpotent_product_support(indices, N))
        P(static_cast<Eigen::Index>(s->first - 1), static_cast<Eigen::Index>(s->second - 1)) = 1.0;
    return P;
}

}  // namespace rcu
