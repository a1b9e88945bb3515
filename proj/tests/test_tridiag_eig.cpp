#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hermite/transform.hpp"
#include "hermite/tridiag_eig.hpp"
#include "support.hpp"

using namespace hermite;

namespace {

// ||J V - V diag(lambda)||_2 for tridiagonal J.
double residual(const SymTridiagonal& m, const EigenDecomposition& e) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd R(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto v = e.vectors.col(j);
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = m.diag[i] * v[i];
      if (i > 0) s += m.offdiag[i - 1] * v[i - 1];
      if (i + 1 < n) s += m.offdiag[i] * v[i + 1];
      R(i, j) = s - e.eigenvalues[j] * v[i];
    }
  }
  return spectral_norm(R);
}

// ||J||_2 = max |lambda| for the symmetric Jacobi matrix.
double norm2(const EigenDecomposition& e) {
  return std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
}

}  // namespace

TEST_SUITE("tridiag_eig") {
  TEST_CASE("1x1") {
    const EigenDecomposition e = eig_sym_tridiag({{0.0}, {}});
    REQUIRE(e.eigenvalues.size() == 1);
    CHECK(e.eigenvalues[0] == 0);
    CHECK(std::abs(e.vectors(0, 0)) == 1);
  }

  TEST_CASE("2x2") {
    const EigenDecomposition e = eig_sym_tridiag({{0.0, 0.0}, {std::sqrt(0.5)}});
    CHECK(std::abs(e.eigenvalues[0] + std::sqrt(0.5)) <= test::kEps);
    CHECK(std::abs(e.eigenvalues[1] - std::sqrt(0.5)) <= test::kEps);
    CHECK(test::orthogonality_error(e.vectors) <= 1e-15);
  }

  TEST_CASE("Hermite nodes for N = 100") {
    const EigenDecomposition e = eig_sym_tridiag(jacobi_matrix(100));
    CHECK(std::abs(e.eigenvalues.back() - test::scalar("gh100_largest")) <= 1e-13);
    const auto ref = test::read_csv("gh100.csv");
    double worst = 0;
    for (std::size_t k = 0; k < 100; ++k) worst = std::max(worst, std::abs(e.eigenvalues[k] - ref[k][0]));
    CHECK(worst <= 1e-13);
  }

  TEST_CASE("orthogonality and residual") {
    for (std::size_t n : {10u, 100u, 1000u, 4000u}) {
      const SymTridiagonal m = jacobi_matrix(n);
      const EigenDecomposition e = eig_sym_tridiag(m);
      const double bound = 50.0 * static_cast<double>(n) * test::kEps;
      INFO("N = " << n);
      CHECK(test::orthogonality_error(e.vectors) <= bound);
      CHECK(residual(m, e) <= bound * norm2(e));
    }
  }

  TEST_CASE("QL accumulation path") {
    EigOptions opt;
    opt.method = EigenvectorMethod::ql_accumulate;
    for (std::size_t n : {7u, 64u, 300u}) {
      const SymTridiagonal m = jacobi_matrix(n);
      const EigenDecomposition e = eig_sym_tridiag(m, opt);
      const double bound = 50.0 * static_cast<double>(n) * test::kEps;
      CHECK(test::orthogonality_error(e.vectors) <= bound);
      CHECK(residual(m, e) <= bound * norm2(e));
      CHECK(eigvals_sym_tridiag(m, opt) == e.eigenvalues);
    }
  }

  TEST_CASE("clustered spectrum falls back to QL accumulation") {
    // Glued Wilkinson-like matrix with near-degenerate pairs.
    SymTridiagonal m;
    const int n = 41;
    for (int i = 0; i < n; ++i) m.diag.push_back(std::abs(i - n / 2));
    m.offdiag.assign(n - 1, 1.0);
    const EigenDecomposition e = eig_sym_tridiag(m);
    const double bound = 50.0 * n * test::kEps;
    CHECK(test::orthogonality_error(e.vectors) <= bound);
    CHECK(residual(m, e) <= bound * norm2(e));
  }

  TEST_CASE("reduced matrix") {
    SymTridiagonal m{{1.0, 2.0, 3.0, 4.0}, {0.5, 0.0, 0.25}};
    const EigenDecomposition e = eig_sym_tridiag(m);
    CHECK(test::orthogonality_error(e.vectors) <= 1e-14);
    CHECK(residual(m, e) <= 1e-14);
  }

  TEST_CASE("eigenvalues only match the full decomposition bitwise") {
    for (std::size_t n : {5u, 200u, 1500u}) {
      const SymTridiagonal m = jacobi_matrix(n);
      CHECK(eigvals_sym_tridiag(m) == eig_sym_tridiag(m).eigenvalues);
    }
  }

  TEST_CASE("strictly ascending and symmetric spectrum") {
    for (std::size_t n : {9u, 100u, 1001u, 4000u}) {
      const std::vector<double> x = eigvals_sym_tridiag(jacobi_matrix(n));
      double sym = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) CHECK(x[j] > x[j - 1]);
        sym = std::max(sym, std::abs(x[j] + x[n - 1 - j]));
      }
      INFO("N = " << n);
      CHECK(sym <= 1e-13);
      if (n % 2) CHECK(std::abs(x[n / 2]) <= 1e-13);
    }
  }

  TEST_CASE("symmetrized spectrum") {
    EigOptions opt;
    opt.symmetrize_spectrum = true;
    const std::vector<double> x = eigvals_sym_tridiag(jacobi_matrix(101), opt);
    for (std::size_t j = 0; j < x.size(); ++j) CHECK(x[j] == -x[x.size() - 1 - j]);
    CHECK(x[50] == 0);
  }

  TEST_CASE("interlacing") {
    for (std::size_t n : {50u, 500u}) {
      const auto a = eigvals_sym_tridiag(jacobi_matrix(n));
      const auto b = eigvals_sym_tridiag(jacobi_matrix(n + 1));
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(b[j] < a[j]);
        CHECK(a[j] < b[j + 1]);
      }
    }
  }

  TEST_CASE("deterministic") {
    const SymTridiagonal m = jacobi_matrix(333);
    const EigenDecomposition a = eig_sym_tridiag(m);
    const EigenDecomposition b = eig_sym_tridiag(m);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.vectors == b.vectors);
  }

  TEST_CASE("invalid input") {
    CHECK_THROWS_AS(eig_sym_tridiag({{}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(eig_sym_tridiag({{0.0, 0.0}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(eig_sym_tridiag({{0.0, NAN}, {1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(eigvals_sym_tridiag({{0.0, 1.0}, {INFINITY}}), std::invalid_argument);
  }
}
