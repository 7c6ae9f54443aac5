#pragma once

#include <Eigen/Dense>

namespace rcu {

struct RidgeSolution {
    Eigen::VectorXd coefficients;
    Eigen::Index rank = 0;
};

/// argmin ||X b - y||^2 + lambda ||D b||^2 with D = diag of column RMS values, i.e. ridge in the
/// standardized feature space. Solved as an augmented least-squares problem with column-pivoting
/// Householder QR. Zero columns get coefficient 0. Throws SingularSystem when lambda == 0 and the
/// standardized design is rank deficient, DimensionError on shape mismatch.
RidgeSolution ridge_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda);

}  // namespace rcu
