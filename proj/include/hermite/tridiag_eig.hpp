#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hermite {

/// Real symmetric tridiagonal matrix: diag has length N, offdiag N - 1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const { return diag.size(); }
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXd vectors;          // column j belongs to eigenvalues[j]
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::size_t index, int iterations)
      : std::runtime_error("tridiagonal QL failed to converge for eigenvalue " +
                           std::to_string(index) + " after " + std::to_string(iterations) +
                           " iterations"),
        index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

enum class EigenvectorMethod {
  // QL eigenvalues, refined by Rayleigh quotient corrections from twisted
  // factorizations of T - lambda, which also give the eigenvectors by inverse
  // iteration. Used when the spectrum is well separated (relative gaps above
  // ~1/N) and the matrix unreduced; otherwise falls back to ql_accumulate.
  automatic,
  // Accumulate the QL rotations into the eigenvector matrix (O(N^3)).
  ql_accumulate,
};

struct EigOptions {
  EigenvectorMethod method = EigenvectorMethod::automatic;
  // Average lambda_j with -lambda_{N-1-j} and zero the middle eigenvalue of
  // an odd-sized matrix. Only meaningful for spectra symmetric about zero.
  bool symmetrize_spectrum = false;
};

inline constexpr int kMaxQlIterations = 30;

/// Eigenvalues only, ascending, O(N^2). Bitwise the same values that
/// eig_sym_tridiag returns for the same options.
std::vector<double> eigvals_sym_tridiag(const SymTridiagonal& m, const EigOptions& options = {});

/// Full eigendecomposition with orthonormal eigenvectors. Eigenvector signs
/// are whatever the solver produces.
EigenDecomposition eig_sym_tridiag(const SymTridiagonal& m, const EigOptions& options = {});

}  // namespace hermite
