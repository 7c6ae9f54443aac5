#include "rcu/least_squares.hpp"

#include "rcu/errors.hpp"

#include <cmath>
#include <string>

namespace rcu {

RidgeSolution ridge_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda)
{
    if (X.rows() != y.size()) throw DimensionError("design matrix and target have different row counts");
    if (!(lambda >= 0.0)) throw DomainError("ridge parameter must be >= 0");
    const Eigen::Index M = X.rows(), p = X.cols();
    Eigen::VectorXd scale(p);
    for (Eigen::Index j = 0; j < p; ++j) scale(j) = M > 0 ? X.col(j).norm() / std::sqrt(static_cast<double>(M)) : 0.0;

    Eigen::MatrixXd Xs(M + (lambda > 0.0 ? p : 0), p);
    for (Eigen::Index j = 0; j < p; ++j)
        Xs.col(j).head(M) = scale(j) > 0.0 ? Eigen::VectorXd(X.col(j) / scale(j)) : Eigen::VectorXd::Zero(M);
    Eigen::VectorXd ys = Eigen::VectorXd::Zero(Xs.rows());
    ys.head(M) = y;
    if (lambda > 0.0) {
        Xs.bottomRows(p) = std::sqrt(lambda) * Eigen::MatrixXd::Identity(p, p);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
    RidgeSolution sol;
    sol.rank = qr.rank();
    Eigen::Index nonzero_cols = 0;
    for (Eigen::Index j = 0; j < p; ++j) nonzero_cols += scale(j) > 0.0 ? 1 : 0;
    if (lambda == 0.0 && sol.rank < nonzero_cols)
        throw SingularSystem("normal equations are singular (rank " + std::to_string(sol.rank) + " < " +
                             std::to_string(nonzero_cols) + " features); set a positive ridge parameter");
    Eigen::VectorXd bs = qr.solve(ys);
    sol.coefficients.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) sol.coefficients(j) = scale(j) > 0.0 ? bs(j) / scale(j) : 0.0;
    return sol;
}

}  // namespace rcu
