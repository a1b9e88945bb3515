#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <mpfr.h>

#include "hermite/transform.hpp"

namespace hermite::oracle {

struct PrecisionConfig {
  int bits = 256;
};

inline constexpr int kMinBits = 128;
inline constexpr std::size_t kMaxDegree = 100000;
inline constexpr std::size_t kMaxNodes = 5000;
inline constexpr std::size_t kMaxDense = 3000;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton's method failed to converge for the node with this index.
class NodeConvergenceError : public OracleError {
 public:
  explicit NodeConvergenceError(std::size_t index)
      : OracleError("oracle: Newton iteration did not converge for node " + std::to_string(index)),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Owning MPFR number with its own precision.
class BigFloat {
 public:
  explicit BigFloat(int bits);
  BigFloat(double v, int bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Decimal string with the given number of significant digits.
  std::string to_string(int digits = 40) const;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
  bool live_ = false;
};

/// Result precision is the larger of the operands'.
BigFloat operator+(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, const BigFloat& b);
BigFloat operator/(const BigFloat& a, const BigFloat& b);
BigFloat abs(const BigFloat& a);

/// Throws OracleError if cfg.bits < kMinBits.
void validate(const PrecisionConfig& cfg);

/// psi_n at each x by the three-term recurrence in extended precision.
std::vector<BigFloat> hermite_fn(std::size_t n, std::span<const BigFloat> xs, const PrecisionConfig& cfg = {});
std::vector<BigFloat> hermite_fn(std::size_t n, std::span<const double> xs, const PrecisionConfig& cfg = {});

struct NodesWeights {
  std::vector<BigFloat> nodes;    // ascending
  std::vector<BigFloat> weights;  // exp(-x^2) / (N psi_{N-1}(x)^2)
};

/// Roots of psi_n by Newton's method seeded from the double eigensolver,
/// refined to the working precision; nodes mirrored about zero.
NodesWeights nodes_weights(std::size_t n, const PrecisionConfig& cfg = {});

struct DenseReference {
  std::vector<BigFloat> x;
  DenseTransform T;     // rounded to double
  DenseTransform Tinv;  // T^T W evaluated in extended precision, then rounded
  // Extended-precision entries, row-major, only when requested.
  std::vector<BigFloat> T_ext;
  std::vector<BigFloat> Tinv_ext;
};

/// T(i, j) = psi_j(x_i) on the extended-precision nodes. n <= kMaxDense.
DenseReference dense_transform(std::size_t n, const PrecisionConfig& cfg = {}, bool keep_extended = false);

/// Reference factors rounded to double: x, d = sqrt(N) |psi_{N-1}(x)| and
/// Q(k, j) = psi_k(x_j) / d_j, in the same form as build_golub_welsch.
TransformFactors reference_factors(std::size_t n, const PrecisionConfig& cfg = {});

}  // namespace hermite::oracle
