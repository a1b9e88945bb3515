#pragma once

#include <Eigen/Dense>

namespace hermite {

/// ||A||_2 by power iteration on A^T A, stopping when successive estimates
/// agree to rel_tol. The estimate approaches the norm from below. Returns
/// +inf if A has non-finite entries.
double spectral_norm(const Eigen::MatrixXd& A, double rel_tol = 1e-8, int max_iter = 2000);

}  // namespace hermite
