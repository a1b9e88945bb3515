#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hermite/special_functions.hpp"
#include "hermite/tridiag_eig.hpp"

namespace hermite {

/// Explicit transform matrix, T(i, j) = psi_j(x_i).
using DenseTransform = Eigen::MatrixXd;

/// T = diag(d) Q^T with Q orthogonal, T^{-1} = Q diag(1/d).
///
/// x ascending Gauss-Hermite nodes, d_j = sqrt(N) |psi_{N-1}(x_j)| and
/// sign(Q(N-1, j)) = (-1)^(N-1-j), so that T(:, N-1) carries the sign of
/// psi_{N-1} at the nodes.
struct TransformFactors {
  std::vector<double> x;
  std::vector<double> d;
  Eigen::MatrixXd Q;

  std::size_t size() const { return x.size(); }
};

struct GaussHermiteRule {
  std::vector<double> nodes;
  // w_k = exp(-x_k^2) / d_k^2; underflows to 0 at the outer nodes for N >= 372.
  std::vector<double> raw_weights;
  // W_kk = 1 / d_k^2 = w_k exp(x_k^2), always representable.
  std::vector<double> effective_weights;
};

struct GolubWelschOptions {
  // psi_{N-1} is evaluated by Clenshaw when N < threshold, otherwise by the
  // large-degree expansion.
  int threshold = kAsymptoticThreshold;
  EigOptions eig;
};

/// Hermite Jacobi matrix: zero diagonal, offdiag[i] = sqrt((i+1)/2).
/// Throws std::invalid_argument for n = 0.
SymTridiagonal jacobi_matrix(std::size_t n);

/// Gauss-Hermite nodes, ascending; identical to the x of build_golub_welsch
/// with the same eigensolver options.
std::vector<double> gauss_hermite_nodes(std::size_t n, const EigOptions& options = {});

/// T by the plain three-term recurrence seeded with pi^{-1/4} exp(-x^2/2).
/// Column 0 underflows to zero for |x| > ~38.6 and the error propagates to
/// every later column; kept unscaled on purpose.
DenseTransform build_direct(std::span<const double> nodes);

/// T by the recurrence on psi_j(x) exp(x^2/2), rescaling entries whose
/// magnitude reaches 10 and undoing the accumulated scaling at the end.
DenseTransform build_bunck(std::span<const double> nodes);

/// Factors of T from the eigendecomposition of the Jacobi matrix.
TransformFactors build_golub_welsch(std::size_t n, const GolubWelschOptions& options = {});

GaussHermiteRule gauss_hermite_rule(const TransformFactors& f);

/// v = T c = diag(d) Q^T c. Throws std::invalid_argument on length mismatch.
Eigen::VectorXd forward(const TransformFactors& f, const Eigen::VectorXd& c);
Eigen::VectorXcd forward(const TransformFactors& f, const Eigen::VectorXcd& c);

/// c = T^{-1} v = Q (v / d). Throws std::invalid_argument on length mismatch.
Eigen::VectorXd inverse(const TransformFactors& f, const Eigen::VectorXd& v);
Eigen::VectorXcd inverse(const TransformFactors& f, const Eigen::VectorXcd& v);

struct DensePair {
  DenseTransform T;
  DenseTransform Tinv;
};

DensePair dense_from_factors(const TransformFactors& f);

/// T^{-1} = T^T W with W_kk = 1 / (N T(k, N-1)^2), the quadrature form of
/// the inverse used with the recurrence backends. Entries become inf/nan
/// where T(k, N-1) underflowed.
DenseTransform dense_inverse_from_transform(const DenseTransform& T);

}  // namespace hermite
