#pragma once

#include <span>
#include <vector>

namespace hermite {

struct AiryValue {
  double ai;
  double ai_prime;
};

/// Airy function Ai and its derivative for real z.
///
/// Small |z| uses the Maclaurin series evaluated in quad precision, large
/// negative z the modulus/phase expansion with the phase reduced in quad
/// precision, large positive z the exponentially decaying expansion.
/// Throws std::domain_error for non-finite z.
AiryValue airy(double z);

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// Default transform size at which psi_{N-1} switches from Clenshaw to the
/// large-degree expansion.
inline constexpr int kAsymptoticThreshold = 200;

/// Quantities of the turning-point expansion of psi_n at a point x >= 0.
struct AsymptoticContext {
  int n = 0;
  double mu2 = 0;    // 2n + 1
  double t = 0;      // x / sqrt(mu2), in [0, 1]
  double theta = 0;  // acos(t)
  double zeta = 0;   // <= 0, zero iff t == 1
  double phi = 0;    // (zeta / (t^2 - 1))^(1/4)
};

/// Builds the context for psi_n at x. Requires 0 <= x / sqrt(2n+1) < 1.
AsymptoticContext asymptotic_context(int n, double x);

/// Constants of the truncated expansion. The expressions are kept in the
/// same evaluation order as the reference MATLAB listing so the doubles
/// agree bit for bit.
namespace asymptotic_coeffs {
inline constexpr double a1 = 15.0 / 144.0;
inline constexpr double b1 = -7.0 / 5.0 * a1;
inline constexpr double a2 = 5.0 * 7.0 * 9.0 * 11.0 / 2.0 / (144.0 * 144.0);
inline constexpr double b2 = -13.0 / 11.0 * a2;
inline constexpr double a3 =
    7.0 * 9.0 * 11.0 * 13.0 * 15.0 * 17.0 / 6.0 / (144.0 * 144.0 * 144.0);

// Coefficients of the 1/mu^2 correction to the Gamma-ratio prefactor.
inline constexpr double g1 = -1.0 / 24.0;
inline constexpr double g2 = 1.0 / 576.0;
inline constexpr double g3 = 1003.0 / 103680.0;
inline constexpr double g4 = -4027.0 / 4976640.0;

double u1(double t);
double u2(double t);
double u3(double t);
}  // namespace asymptotic_coeffs

struct AsymptoticSeriesTerms {
  double A0 = 1;
  double A1 = 0;
  double B0 = 0;
  double B1 = 0;
};

AsymptoticSeriesTerms asymptotic_series_terms(const AsymptoticContext& ctx);

/// psi_n(x) by Clenshaw summation of the expansion with coefficient vector
/// e_n. Loses everything once exp(-x^2/2) underflows; that is the
/// documented limitation of the unscaled recurrence and is kept as is.
double hermite_fn_clenshaw(int n, double x);
std::vector<double> hermite_fn_clenshaw(int n, std::span<const double> xs);

/// Clenshaw summation of sum_k c_k psi_k(x).
double hermite_series_clenshaw(std::span<const double> coeffs, double x);

/// psi_n(x) from the Airy-type expansion of the parabolic cylinder
/// function. Requires 0 <= x <= sqrt(2n+1); callers mirror negative x.
double hermite_fn_asymptotic(int n, double x);
std::vector<double> hermite_fn_asymptotic(int n, std::span<const double> xs);

/// Dispatching evaluator: Clenshaw when n + 1 < threshold, otherwise the
/// expansion, with negative x handled by parity.
double hermite_fn(int n, double x, int threshold = kAsymptoticThreshold);
std::vector<double> hermite_fn(int n, std::span<const double> xs,
                               int threshold = kAsymptoticThreshold);

}  // namespace hermite
