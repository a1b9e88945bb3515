#include "hermite/linalg.hpp"

#include <cmath>
#include <limits>

namespace hermite {

double spectral_norm(const Eigen::MatrixXd& A, double rel_tol, int max_iter) {
  if (A.size() == 0) return 0;
  if (!A.allFinite()) return std::numeric_limits<double>::infinity();
  // Fixed, non-symmetric start so results are reproducible and unlikely to be
  // orthogonal to the top singular vector of structured matrices.
  Eigen::VectorXd v(A.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 3.7 * static_cast<double>(i));
  v.normalize();
  double sigma = 0;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd u = A * v;
    const double s = u.norm();
    if (s == 0) return 0;
    v = A.transpose() * (u / s);
    const double next = v.norm();
    v /= next;
    if (std::abs(next - sigma) <= rel_tol * next) return next;
    sigma = next;
  }
  return sigma;
}

}  // namespace hermite
