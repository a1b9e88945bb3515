#include "hermite/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hermite/tridiag_eig.hpp"

namespace hermite::oracle {

BigFloat::BigFloat(int bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
  live_ = true;
}

BigFloat::BigFloat(double v, int bits) : BigFloat(bits) { mpfr_set_d(v_, v, MPFR_RNDN); }

BigFloat::BigFloat(const BigFloat& other) : BigFloat(other.bits()) { mpfr_set(v_, other.v_, MPFR_RNDN); }

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Steal the limbs; the moved-from object is left without storage.
  *v_ = *other.v_;
  live_ = other.live_;
  other.live_ = false;
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this == &other) return *this;
  if (!live_) {
    mpfr_init2(v_, other.bits());
    live_ = true;
  } else if (bits() != other.bits()) {
    mpfr_set_prec(v_, other.bits());
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this == &other) return *this;
  if (live_) mpfr_clear(v_);
  *v_ = *other.v_;
  live_ = other.live_;
  other.live_ = false;
  return *this;
}

BigFloat::~BigFloat() {
  if (live_) mpfr_clear(v_);
}

std::string BigFloat::to_string(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", digits - 1, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

namespace {

int result_bits(const BigFloat& a, const BigFloat& b) { return std::max(a.bits(), b.bits()); }

}  // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_bits(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_bits(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_bits(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(result_bits(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& a) {
  BigFloat r(a.bits());
  mpfr_abs(r.get(), a.get(), MPFR_RNDN);
  return r;
}

void validate(const PrecisionConfig& cfg) {
  if (cfg.bits < kMinBits)
    throw OracleError("oracle: precision must be at least " + std::to_string(kMinBits) + " bits");
}

namespace {

// Recurrence coefficients sqrt(2/(j+1)) and sqrt(j/(j+1)), j = 0..n-1.
struct Coefficients {
  std::vector<BigFloat> a, b;
  BigFloat pi_quarter;  // pi^{-1/4}

  Coefficients(std::size_t n, int bits) : pi_quarter(bits) {
    a.reserve(n);
    b.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      BigFloat t(bits);
      mpfr_set_ui(t.get(), 2, MPFR_RNDN);
      mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(j + 1), MPFR_RNDN);
      mpfr_sqrt(t.get(), t.get(), MPFR_RNDN);
      a.push_back(t);
      mpfr_set_ui(t.get(), static_cast<unsigned long>(j), MPFR_RNDN);
      mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(j + 1), MPFR_RNDN);
      mpfr_sqrt(t.get(), t.get(), MPFR_RNDN);
      b.push_back(t);
    }
    mpfr_const_pi(pi_quarter.get(), MPFR_RNDN);
    mpfr_rootn_ui(pi_quarter.get(), pi_quarter.get(), 4, MPFR_RNDN);
    mpfr_ui_div(pi_quarter.get(), 1, pi_quarter.get(), MPFR_RNDN);
  }
};

// Scratch for the recurrence at one point; callers see psi_{n-1}, psi_n or
// the whole row.
class Recurrence {
 public:
  Recurrence(std::size_t max_degree, int bits)
      : c_(max_degree + 1, bits), bits_(bits), p0_(bits), p1_(bits), p2_(bits), t_(bits) {}

  // Runs to degree n, storing psi_{n-1}(x), psi_n(x); row receives
  // psi_0..psi_n when non-null.
  void run(std::size_t n, const BigFloat& x, std::vector<BigFloat>* row = nullptr) {
    // p0 = psi_0 = pi^{-1/4} exp(-x^2/2)
    mpfr_sqr(t_.get(), x.get(), MPFR_RNDN);
    mpfr_div_2ui(t_.get(), t_.get(), 1, MPFR_RNDN);
    mpfr_neg(t_.get(), t_.get(), MPFR_RNDN);
    mpfr_exp(p0_.get(), t_.get(), MPFR_RNDN);
    mpfr_mul(p0_.get(), p0_.get(), c_.pi_quarter.get(), MPFR_RNDN);
    mpfr_set_zero(p1_.get(), 1);  // psi_{-1}
    if (row) row->assign(1, p0_);
    for (std::size_t j = 0; j < n; ++j) {
      // psi_{j+1} = a_j x psi_j - b_j psi_{j-1}
      mpfr_mul(t_.get(), x.get(), p0_.get(), MPFR_RNDN);
      mpfr_mul(t_.get(), t_.get(), c_.a[j].get(), MPFR_RNDN);
      mpfr_mul(p2_.get(), p1_.get(), c_.b[j].get(), MPFR_RNDN);
      mpfr_sub(p2_.get(), t_.get(), p2_.get(), MPFR_RNDN);
      mpfr_swap(p1_.get(), p0_.get());
      mpfr_swap(p0_.get(), p2_.get());
      if (row) row->push_back(p0_);
    }
  }

  const BigFloat& current() const { return p0_; }   // psi_n
  const BigFloat& previous() const { return p1_; }  // psi_{n-1}
  int bits() const { return bits_; }

 private:
  Coefficients c_;
  int bits_;
  BigFloat p0_, p1_, p2_, t_;
};

}  // namespace

std::vector<BigFloat> hermite_fn(std::size_t n, std::span<const BigFloat> xs, const PrecisionConfig& cfg) {
  validate(cfg);
  if (n > kMaxDegree) throw OracleError("oracle: degree exceeds " + std::to_string(kMaxDegree));
  Recurrence rec(n, cfg.bits);
  std::vector<BigFloat> out;
  out.reserve(xs.size());
  for (const BigFloat& x : xs) {
    BigFloat xw(cfg.bits);
    mpfr_set(xw.get(), x.get(), MPFR_RNDN);
    rec.run(n, xw);
    out.push_back(rec.current());
  }
  return out;
}

std::vector<BigFloat> hermite_fn(std::size_t n, std::span<const double> xs, const PrecisionConfig& cfg) {
  std::vector<BigFloat> big;
  big.reserve(xs.size());
  for (double x : xs) big.emplace_back(x, cfg.bits);
  return hermite_fn(n, std::span<const BigFloat>(big), cfg);
}

NodesWeights nodes_weights(std::size_t n, const PrecisionConfig& cfg) {
  validate(cfg);
  if (n == 0 || n > kMaxNodes) throw OracleError("oracle: node count must be in [1, " + std::to_string(kMaxNodes) + "]");
  const int bits = cfg.bits;
  // Seeds from the plain QL eigenvalues, which are independent of the
  // refinement used by the fast path.
  EigOptions seed_opts;
  seed_opts.method = EigenvectorMethod::ql_accumulate;
  const std::vector<double> seeds = eigvals_sym_tridiag(jacobi_matrix(n), seed_opts);

  Recurrence rec(n, bits);
  BigFloat sqrt_2n(bits), step(bits), deriv(bits), tol(bits), scale(bits);
  mpfr_set_ui(sqrt_2n.get(), static_cast<unsigned long>(2 * n), MPFR_RNDN);
  mpfr_sqrt(sqrt_2n.get(), sqrt_2n.get(), MPFR_RNDN);

  NodesWeights out;
  out.nodes.assign(n, BigFloat(bits));
  out.weights.assign(n, BigFloat(bits));
  constexpr int kMaxNewton = 100;
  for (std::size_t k = n / 2; k < n; ++k) {
    BigFloat x(seeds[k], bits);
    if (n % 2 == 1 && k == n / 2) mpfr_set_zero(x.get(), 1);  // psi_n is odd
    bool converged = n % 2 == 1 && k == n / 2;
    int small_steps = 0;
    for (int it = 0; it < kMaxNewton && !converged; ++it) {
      rec.run(n, x);
      // psi_n' = sqrt(2n) psi_{n-1} - x psi_n
      mpfr_mul(deriv.get(), sqrt_2n.get(), rec.previous().get(), MPFR_RNDN);
      mpfr_mul(step.get(), x.get(), rec.current().get(), MPFR_RNDN);
      mpfr_sub(deriv.get(), deriv.get(), step.get(), MPFR_RNDN);
      if (mpfr_zero_p(deriv.get())) break;
      mpfr_div(step.get(), rec.current().get(), deriv.get(), MPFR_RNDN);
      mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
      // Converged once the step is at the working-precision noise level
      // twice in a row (quadratic convergence makes one more step free).
      mpfr_set_ui(scale.get(), 1, MPFR_RNDN);
      mpfr_max(scale.get(), scale.get(), abs(x).get(), MPFR_RNDN);
      mpfr_mul_2si(tol.get(), scale.get(), -(bits - 16), MPFR_RNDN);
      if (mpfr_cmpabs(step.get(), tol.get()) <= 0) {
        if (++small_steps == 2) converged = true;
      }
    }
    if (!converged) throw NodeConvergenceError(k);
    out.nodes[k] = x;
    mpfr_neg(out.nodes[n - 1 - k].get(), x.get(), MPFR_RNDN);
  }
  // w_k = exp(-x^2) / (N psi_{N-1}(x)^2), symmetric.
  BigFloat t(bits);
  for (std::size_t k = n / 2; k < n; ++k) {
    rec.run(n - 1, out.nodes[k]);
    mpfr_sqr(t.get(), rec.current().get(), MPFR_RNDN);
    mpfr_mul_ui(t.get(), t.get(), static_cast<unsigned long>(n), MPFR_RNDN);
    BigFloat e(bits);
    mpfr_sqr(e.get(), out.nodes[k].get(), MPFR_RNDN);
    mpfr_neg(e.get(), e.get(), MPFR_RNDN);
    mpfr_exp(e.get(), e.get(), MPFR_RNDN);
    mpfr_div(out.weights[k].get(), e.get(), t.get(), MPFR_RNDN);
    out.weights[n - 1 - k] = out.weights[k];
  }
  return out;
}

DenseReference dense_transform(std::size_t n, const PrecisionConfig& cfg, bool keep_extended) {
  validate(cfg);
  if (n == 0 || n > kMaxDense) throw OracleError("oracle: dense size must be in [1, " + std::to_string(kMaxDense) + "]");
  const int bits = cfg.bits;
  NodesWeights nw = nodes_weights(n, cfg);
  Recurrence rec(n, bits);

  const auto N = static_cast<Eigen::Index>(n);
  DenseReference ref;
  ref.T.resize(N, N);
  ref.Tinv.resize(N, N);
  if (keep_extended) {
    ref.T_ext.assign(n * n, BigFloat(bits));
    ref.Tinv_ext.assign(n * n, BigFloat(bits));
  }
  std::vector<BigFloat> row;
  BigFloat W(bits), t(bits);
  for (std::size_t i = 0; i < n; ++i) {
    rec.run(n - 1, nw.nodes[i], &row);
    // W_ii = 1 / (N psi_{N-1}(x_i)^2); Tinv(j, i) = T(i, j) W_ii.
    mpfr_sqr(W.get(), row[n - 1].get(), MPFR_RNDN);
    mpfr_mul_ui(W.get(), W.get(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_ui_div(W.get(), 1, W.get(), MPFR_RNDN);
    for (std::size_t j = 0; j < n; ++j) {
      mpfr_mul(t.get(), row[j].get(), W.get(), MPFR_RNDN);
      ref.T(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].to_double();
      ref.Tinv(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = t.to_double();
      if (keep_extended) {
        ref.T_ext[i * n + j] = row[j];
        ref.Tinv_ext[j * n + i] = t;
      }
    }
  }
  ref.x = std::move(nw.nodes);
  return ref;
}

TransformFactors reference_factors(std::size_t n, const PrecisionConfig& cfg) {
  validate(cfg);
  if (n == 0 || n > kMaxDense) throw OracleError("oracle: dense size must be in [1, " + std::to_string(kMaxDense) + "]");
  const int bits = cfg.bits;
  NodesWeights nw = nodes_weights(n, cfg);
  Recurrence rec(n, bits);
  const auto N = static_cast<Eigen::Index>(n);
  TransformFactors f;
  f.x.resize(n);
  f.d.resize(n);
  f.Q.resize(N, N);
  BigFloat d(bits), sqrt_n(bits), q(bits);
  mpfr_set_ui(sqrt_n.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  mpfr_sqrt(sqrt_n.get(), sqrt_n.get(), MPFR_RNDN);
  std::vector<BigFloat> row;
  for (std::size_t j = 0; j < n; ++j) {
    rec.run(n - 1, nw.nodes[j], &row);
    mpfr_abs(d.get(), row[n - 1].get(), MPFR_RNDN);
    mpfr_mul(d.get(), d.get(), sqrt_n.get(), MPFR_RNDN);
    f.x[j] = nw.nodes[j].to_double();
    f.d[j] = d.to_double();
    for (std::size_t k = 0; k < n; ++k) {
      mpfr_div(q.get(), row[k].get(), d.get(), MPFR_RNDN);
      f.Q(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = q.to_double();
    }
  }
  return f;
}

}  // namespace hermite::oracle
