#include "hermite/transform.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hermite {
namespace {

const double kPiMinusQuarter = std::pow(std::numbers::pi, -0.25);

// Bunck's rescaling threshold.
constexpr double kScaleThreshold = 10.0;

void require_length(const TransformFactors& f, Eigen::Index len, const char* who) {
  if (static_cast<std::size_t>(len) != f.size())
    throw std::invalid_argument(std::string(who) + ": vector length " + std::to_string(len) +
                                " does not match transform size " + std::to_string(f.size()));
}

}  // namespace

SymTridiagonal jacobi_matrix(std::size_t n) {
  if (n == 0) throw std::invalid_argument("jacobi_matrix: size must be at least 1");
  SymTridiagonal m;
  m.diag.assign(n, 0.0);
  m.offdiag.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) m.offdiag[i] = std::sqrt((static_cast<double>(i) + 1) / 2);
  return m;
}

std::vector<double> gauss_hermite_nodes(std::size_t n, const EigOptions& options) {
  return eigvals_sym_tridiag(jacobi_matrix(n), options);
}

DenseTransform build_direct(std::span<const double> nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const Eigen::Map<const Eigen::VectorXd> x(nodes.data(), n);
  DenseTransform T(n, n);
  if (n == 0) return T;
  // std::exp rather than the vectorized Eigen exp, which clamps the argument
  // and would keep exp(-x^2/2) from underflowing.
  for (Eigen::Index k = 0; k < n; ++k) T(k, 0) = kPiMinusQuarter * std::exp(-x[k] * x[k] / 2);
  if (n == 1) return T;
  T.col(1) = std::numbers::sqrt2 * x.cwiseProduct(T.col(0));
  for (Eigen::Index j = 1; j + 1 < n; ++j) {
    const double a = std::sqrt(2.0 / (j + 1));
    const double b = std::sqrt(static_cast<double>(j) / (j + 1));
    T.col(j + 1) = a * x.cwiseProduct(T.col(j)) - b * T.col(j - 1);
  }
  return T;
}

DenseTransform build_bunck(std::span<const double> nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const Eigen::Map<const Eigen::ArrayXd> x(nodes.data(), n);
  DenseTransform T(n, n);
  if (n == 0) return T;
  const Eigen::ArrayXd half_x2 = x.square() / 2;

  // h_prev, h_cur hold h_{j-1}, h_j at a common accumulated scale; a column
  // is final once the step that rescales it has run, so it is de-scaled
  // into T right away against the running sum of the s_i.
  Eigen::ArrayXd h_prev = Eigen::ArrayXd::Constant(n, kPiMinusQuarter);
  Eigen::ArrayXd h_cur = std::numbers::sqrt2 * kPiMinusQuarter * x;
  Eigen::ArrayXd h_next(n);
  Eigen::ArrayXd scale_sum = Eigen::ArrayXd::Zero(n);
  auto descale = [&](const Eigen::ArrayXd& h, Eigen::Index j) {
    for (Eigen::Index k = 0; k < n; ++k) T(k, j) = h[k] * std::exp(scale_sum[k] - half_x2[k]);
  };
  descale(h_prev, 0);
  if (n == 1) return T;

  for (Eigen::Index j = 1; j + 1 < n; ++j) {
    const double a = std::sqrt(2.0 / (j + 1));
    const double b = std::sqrt(static_cast<double>(j) / (j + 1));
    h_next = a * x * h_cur - b * h_prev;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double mag = std::abs(h_cur[k]);
      if (mag >= kScaleThreshold) {
        const double s = std::log(mag);
        const double e = std::exp(-s);
        h_next[k] *= e;
        h_cur[k] *= e;
        scale_sum[k] += s;
      }
    }
    descale(h_cur, j);
    std::swap(h_prev, h_cur);
    std::swap(h_cur, h_next);
  }
  descale(h_cur, n - 1);
  return T;
}

TransformFactors build_golub_welsch(std::size_t n, const GolubWelschOptions& options) {
  EigenDecomposition eig = eig_sym_tridiag(jacobi_matrix(n), options.eig);
  TransformFactors f;
  f.x = std::move(eig.eigenvalues);
  f.Q = std::move(eig.vectors);

  const auto last = static_cast<Eigen::Index>(n - 1);
  for (Eigen::Index j = 0; j <= last; ++j) {
    const double q = f.Q(last, j);
    // psi_{N-1} does not vanish at the roots of psi_N.
    assert(q != 0);
    const bool want_positive = (last - j) % 2 == 0;
    if ((q > 0) != want_positive) f.Q.col(j) *= -1;
  }

  // d is symmetric about the middle node; evaluate the non-negative half.
  const int degree = static_cast<int>(n) - 1;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  f.d.resize(n);
  for (std::size_t j = n / 2; j < n; ++j) {
    f.d[j] = sqrt_n * std::abs(hermite_fn(degree, f.x[j], options.threshold));
    f.d[n - 1 - j] = f.d[j];
  }
  return f;
}

GaussHermiteRule gauss_hermite_rule(const TransformFactors& f) {
  GaussHermiteRule rule;
  rule.nodes = f.x;
  const std::size_t n = f.size();
  rule.raw_weights.resize(n);
  rule.effective_weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double W = 1 / (f.d[k] * f.d[k]);
    rule.effective_weights[k] = W;
    rule.raw_weights[k] = std::exp(-f.x[k] * f.x[k]) * W;
  }
  return rule;
}

Eigen::VectorXd forward(const TransformFactors& f, const Eigen::VectorXd& c) {
  require_length(f, c.size(), "forward");
  const Eigen::Map<const Eigen::VectorXd> d(f.d.data(), static_cast<Eigen::Index>(f.size()));
  return d.cwiseProduct(f.Q.transpose() * c);
}

Eigen::VectorXcd forward(const TransformFactors& f, const Eigen::VectorXcd& c) {
  require_length(f, c.size(), "forward");
  const auto n = static_cast<Eigen::Index>(f.size());
  const Eigen::Map<const Eigen::VectorXd> d(f.d.data(), n);
  Eigen::MatrixXd parts(n, 2);
  parts.col(0) = c.real();
  parts.col(1) = c.imag();
  const Eigen::MatrixXd out = d.asDiagonal() * (f.Q.transpose() * parts);
  Eigen::VectorXcd v(n);
  v.real() = out.col(0);
  v.imag() = out.col(1);
  return v;
}

Eigen::VectorXd inverse(const TransformFactors& f, const Eigen::VectorXd& v) {
  require_length(f, v.size(), "inverse");
  const Eigen::Map<const Eigen::VectorXd> d(f.d.data(), static_cast<Eigen::Index>(f.size()));
  return f.Q * v.cwiseQuotient(d);
}

Eigen::VectorXcd inverse(const TransformFactors& f, const Eigen::VectorXcd& v) {
  require_length(f, v.size(), "inverse");
  const auto n = static_cast<Eigen::Index>(f.size());
  const Eigen::Map<const Eigen::VectorXd> d(f.d.data(), n);
  Eigen::MatrixXd parts(n, 2);
  parts.col(0) = v.real().cwiseQuotient(d);
  parts.col(1) = v.imag().cwiseQuotient(d);
  const Eigen::MatrixXd out = f.Q * parts;
  Eigen::VectorXcd c(n);
  c.real() = out.col(0);
  c.imag() = out.col(1);
  return c;
}

DensePair dense_from_factors(const TransformFactors& f) {
  const auto n = static_cast<Eigen::Index>(f.size());
  const Eigen::Map<const Eigen::VectorXd> d(f.d.data(), n);
  DensePair p;
  p.T = d.asDiagonal() * f.Q.transpose();
  p.Tinv = f.Q * d.cwiseInverse().asDiagonal();
  return p;
}

DenseTransform dense_inverse_from_transform(const DenseTransform& T) {
  const Eigen::Index n = T.rows();
  if (T.cols() != n) throw std::invalid_argument("dense_inverse_from_transform: matrix must be square");
  if (n == 0) return T;
  const Eigen::VectorXd last = T.col(n - 1);
  const Eigen::VectorXd W = (static_cast<double>(n) * last.cwiseAbs2()).cwiseInverse();
  return T.transpose() * W.asDiagonal();
}

}  // namespace hermite
