#include "hermite/tridiag_eig.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace hermite {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pythag(double a, double b) {
  const double aa = std::abs(a), ab = std::abs(b);
  if (aa < 1e150 && ab < 1e150) return std::sqrt(a * a + b * b);
  return std::hypot(a, b);
}

void check_input(const SymTridiagonal& m) {
  if (m.diag.empty()) throw std::invalid_argument("eig_sym_tridiag: matrix must be at least 1x1");
  if (m.offdiag.size() + 1 != m.diag.size())
    throw std::invalid_argument("eig_sym_tridiag: offdiag must have length N - 1");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(m.diag.begin(), m.diag.end(), finite) ||
      !std::all_of(m.offdiag.begin(), m.offdiag.end(), finite))
    throw std::invalid_argument("eig_sym_tridiag: entries must be finite");
}

// Implicit-shift QL on (d, e), e[i] coupling rows i and i+1, e[n-1] unused.
// When z is non-null the rotations are accumulated into its columns.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Eigen::MatrixXd* z) {
  const std::size_t n = d.size();
  e.resize(n);
  e[n - 1] = 0;
  double anorm = 0;
  for (std::size_t i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]));

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        // The absolute floor only matters when d[m], d[m+1] are both ~0,
        // e.g. the middle eigenvalue of a zero-diagonal matrix.
        if (std::abs(e[m]) <= kEps * dd || std::abs(e[m]) <= kEps * kEps * anorm) break;
      }
      if (m != l) {
        if (iter++ == kMaxQlIterations) throw ConvergenceError(l, kMaxQlIterations);
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = pythag(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1, c = 1, p = 0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = pythag(f, g);
          e[i + 1] = r;
          if (r == 0) {
            d[i + 1] -= p;
            e[m] = 0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            double* zi = z->col(static_cast<Eigen::Index>(i)).data();
            double* zi1 = z->col(static_cast<Eigen::Index>(i + 1)).data();
            for (Eigen::Index k = 0; k < z->rows(); ++k) {
              f = zi1[k];
              zi1[k] = s * zi[k] + c * f;
              zi[k] = c * zi[k] - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0;
      }
    } while (m != l);
  }
}

std::vector<std::size_t> ascending_order(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  return idx;
}

// Whether one inverse-iteration step per eigenvalue yields vectors within
// the orthogonality target: the angle error behaves like eps*||T||/gap, so
// the relative gap must not fall below ~1/N. Also requires an unreduced
// matrix, since the vectors are built from ratios b_i / D_i.
bool well_separated(const SymTridiagonal& m, const std::vector<double>& sorted) {
  const std::size_t n = sorted.size();
  if (std::any_of(m.offdiag.begin(), m.offdiag.end(), [](double b) { return b == 0; })) return false;
  const double anorm = std::max(std::abs(sorted.front()), std::abs(sorted.back()));
  if (anorm == 0) return false;
  const double min_gap = 0.5 * anorm / static_cast<double>(n);
  for (std::size_t j = 1; j < n; ++j)
    if (sorted[j] - sorted[j - 1] < min_gap) return false;
  return true;
}

// Inverse iteration with the twisted factorization
// T - sigma = N_r D_r N_r^T, r chosen to minimize |gamma_r|; with z_r = 1 the
// Rayleigh quotient of z is sigma + gamma_r / |z|^2. Pivots for a block of
// shifts are formed together so the divisions vectorize.
class TwistedSolver {
 public:
  static constexpr std::size_t kBlock = 16;

  explicit TwistedSolver(const SymTridiagonal& m)
      : a_(m.diag), b_(m.offdiag), n_(m.size()), b2_(n_, 0.0), inv_b_(n_, 0.0),
        tp_(n_ * kBlock, 0.0), tm_(n_ * kBlock, 0.0) {
    double bmax = 0;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      b2_[i] = b_[i] * b_[i];
      inv_b_[i] = 1 / b_[i];
      bmax = std::max(bmax, b2_[i]);
    }
    pivmin_ = std::numeric_limits<double>::min() * std::max(1.0, bmax);
  }

  // Returns the Rayleigh quotient corrections for shifts sigma[0..nb) and,
  // if v is non-null, writes the unit vectors into columns col0... Returns
  // false on a non-finite vector.
  bool solve_block(const std::array<double, kBlock>& sigma, std::size_t nb, Eigen::MatrixXd* v,
                   std::size_t col0, std::array<double, kBlock>& delta) {
    const std::size_t n = n_;
    std::array<double, kBlock> piv{};
    for (std::size_t j = 0; j < kBlock; ++j) piv[j] = a_[0] - sigma[j];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      double* row = &tp_[i * kBlock];
      for (std::size_t j = 0; j < kBlock; ++j) {
        const double dj = std::abs(piv[j]) < pivmin_ ? -pivmin_ : piv[j];
        const double t = b2_[i] / dj;
        row[j] = t;
        piv[j] = a_[i + 1] - sigma[j] - t;
      }
    }
    for (std::size_t j = 0; j < kBlock; ++j) piv[j] = a_[n - 1] - sigma[j];
    for (std::size_t i = n - 1; i >= 1; --i) {
      double* row = &tm_[i * kBlock];
      for (std::size_t j = 0; j < kBlock; ++j) {
        const double dj = std::abs(piv[j]) < pivmin_ ? -pivmin_ : piv[j];
        const double t = b2_[i - 1] / dj;
        row[j] = t;
        piv[j] = a_[i - 1] - sigma[j] - t;
      }
    }

    // Twist index per shift: argmin_i |gamma_i|.
    std::array<double, kBlock> best, gamma_r, r;
    best.fill(std::numeric_limits<double>::infinity());
    gamma_r.fill(0);
    r.fill(0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* up = i > 0 ? &tp_[(i - 1) * kBlock] : zeros_.data();
      const double* down = i + 1 < n ? &tm_[(i + 1) * kBlock] : zeros_.data();
      const double fi = static_cast<double>(i);
      for (std::size_t j = 0; j < kBlock; ++j) {
        const double g = a_[i] - sigma[j] - up[j] - down[j];
        const bool take = std::abs(g) < best[j];
        best[j] = take ? std::abs(g) : best[j];
        gamma_r[j] = take ? g : gamma_r[j];
        r[j] = take ? fi : r[j];
      }
    }

    // z with z_r = 1, overwriting tp_. All lanes advance together.
    std::array<double, kBlock> w, norm2;
    w.fill(0);
    norm2.fill(0);
    for (std::size_t i = n; i-- > 0;) {
      double* zi = &tp_[i * kBlock];
      const double ib = i + 1 < n ? inv_b_[i] : 0.0;
      const double fi = static_cast<double>(i);
      for (std::size_t j = 0; j < kBlock; ++j) {
        const double below = -(zi[j] * ib) * w[j];
        w[j] = fi == r[j] ? 1.0 : (fi < r[j] ? below : 0.0);
        zi[j] = w[j];
        norm2[j] += w[j] * w[j];
      }
    }
    w.fill(0);
    for (std::size_t i = 0; i < n; ++i) {
      double* zi = &tp_[i * kBlock];
      const double* mi = &tm_[i * kBlock];
      const double ib = i > 0 ? inv_b_[i - 1] : 0.0;
      const double fi = static_cast<double>(i);
      for (std::size_t j = 0; j < kBlock; ++j) {
        const double above = -(mi[j] * ib) * w[j];
        const bool active = fi > r[j];
        w[j] = fi == r[j] ? 1.0 : (active ? above : 0.0);
        zi[j] = active ? w[j] : zi[j];
        norm2[j] += active ? w[j] * w[j] : 0.0;
      }
    }

    std::array<double, kBlock> scale{};
    for (std::size_t j = 0; j < nb; ++j) {
      if (!std::isfinite(norm2[j])) return false;
      delta[j] = gamma_r[j] / norm2[j];
      scale[j] = 1 / std::sqrt(norm2[j]);
    }
    if (v) {
      // Column by column: writing a row of the block at a time strides by
      // N doubles, which aliases cache sets when N is a power of two.
      for (std::size_t j = 0; j < nb; ++j) {
        double* col = v->col(static_cast<Eigen::Index>(col0 + j)).data();
        for (std::size_t i = 0; i < n; ++i) col[i] = tp_[i * kBlock + j] * scale[j];
      }
    }
    return true;
  }

 private:
  const std::vector<double>& a_;
  const std::vector<double>& b_;
  std::size_t n_;
  std::vector<double> b2_, inv_b_;
  std::vector<double> tp_, tm_;  // b_i^2 / D+_i and b_{i-1}^2 / D-_i, row-blocked
  double pivmin_ = 0;
  std::array<double, kBlock> zeros_{};
};

// Refines the QL eigenvalues by Rayleigh quotient corrections and, if v is
// non-null, builds the eigenvectors. A block is re-solved at the corrected
// shifts until the corrections drop to rounding level, since the vector
// angle error scales with the shift error. The eigenvalues do not depend on
// whether v is requested.
bool twisted_refine(const SymTridiagonal& m, std::vector<double>& lambda, Eigen::MatrixXd* v) {
  constexpr std::size_t kBlock = TwistedSolver::kBlock;
  constexpr int kMaxPasses = 3;
  const std::size_t n = m.size();
  const double anorm = std::max(std::abs(lambda.front()), std::abs(lambda.back()));
  TwistedSolver solver(m);
  if (v) v->resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  for (std::size_t j0 = 0; j0 < n; j0 += kBlock) {
    const std::size_t nb = std::min(kBlock, n - j0);
    std::array<double, kBlock> sigma{}, delta{};
    for (std::size_t j = 0; j < kBlock; ++j) sigma[j] = lambda[j0 + std::min(j, nb - 1)];
    for (int pass = 0; pass < kMaxPasses; ++pass) {
      if (!solver.solve_block(sigma, nb, v, j0, delta)) return false;
      bool converged = true;
      for (std::size_t j = 0; j < nb; ++j) {
        if (std::abs(delta[j]) > 2 * kEps * anorm) converged = false;
        sigma[j] += delta[j];
      }
      if (converged) break;
    }
    for (std::size_t j = 0; j < nb; ++j) lambda[j0 + j] = sigma[j];
  }
  return true;
}

void symmetrize(std::vector<double>& lambda) {
  const std::size_t n = lambda.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double avg = 0.5 * (lambda[n - 1 - j] - lambda[j]);
    lambda[j] = -avg;
    lambda[n - 1 - j] = avg;
  }
  if (n % 2 == 1) lambda[n / 2] = 0;
}

EigenDecomposition eig_ql_accumulate(const SymTridiagonal& m) {
  const std::size_t n = m.size();
  std::vector<double> d = m.diag;
  std::vector<double> e = m.offdiag;
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  ql_implicit(d, e, &z);
  const auto order = ascending_order(d);
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.vectors.resize(z.rows(), z.cols());
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = d[order[j]];
    out.vectors.col(static_cast<Eigen::Index>(j)) = z.col(static_cast<Eigen::Index>(order[j]));
  }
  return out;
}

std::vector<double> ql_eigenvalues(const SymTridiagonal& m) {
  std::vector<double> d = m.diag;
  std::vector<double> e = m.offdiag;
  ql_implicit(d, e, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

std::vector<double> eigvals_sym_tridiag(const SymTridiagonal& m, const EigOptions& options) {
  check_input(m);
  std::vector<double> lambda = ql_eigenvalues(m);
  if (options.method == EigenvectorMethod::automatic && well_separated(m, lambda)) {
    std::vector<double> refined = lambda;
    if (twisted_refine(m, refined, nullptr)) lambda = std::move(refined);
  }
  if (options.symmetrize_spectrum) symmetrize(lambda);
  return lambda;
}

EigenDecomposition eig_sym_tridiag(const SymTridiagonal& m, const EigOptions& options) {
  check_input(m);
  EigenDecomposition out;
  bool done = false;
  if (options.method == EigenvectorMethod::automatic) {
    std::vector<double> lambda = ql_eigenvalues(m);
    if (well_separated(m, lambda) && twisted_refine(m, lambda, &out.vectors)) {
      out.eigenvalues = std::move(lambda);
      done = true;
    }
  }
  if (!done) out = eig_ql_accumulate(m);
  if (options.symmetrize_spectrum) symmetrize(out.eigenvalues);
  return out;
}

}  // namespace hermite
