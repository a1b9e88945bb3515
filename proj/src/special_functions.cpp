#include "hermite/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

namespace hermite {
namespace {

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(who) + ": non-finite argument");
}

void require_degree(int n, const char* who) {
  if (n < 0) throw std::domain_error(std::string(who) + ": degree must be non-negative");
}

const double kPiQuarter = std::pow(std::numbers::pi, 0.25);

}  // namespace

double log_gamma(double x) {
  if (!(x > 0) || !std::isfinite(x)) throw std::domain_error("log_gamma: x must be positive and finite");
  return boost::math::lgamma(x);
}

namespace asymptotic_coeffs {

double u1(double t) {
  const double t2 = t * t;
  return (t2 - 6) * t / 24;
}

double u2(double t) {
  const double t2 = t * t;
  return ((-9 * t2 + 249) * t2 + 145) / 1152;
}

double u3(double t) {
  const double t2 = t * t;
  return ((((-4042 * t2 + 18189) * t2 - 28287) * t2 - 151995) * t2 - 259290) * t / 414720;
}

}  // namespace asymptotic_coeffs

AsymptoticContext asymptotic_context(int n, double x) {
  require_degree(n, "asymptotic_context");
  require_finite(x, "asymptotic_context");
  AsymptoticContext c;
  c.n = n;
  c.mu2 = 2.0 * n + 1;
  c.t = x / std::sqrt(c.mu2);
  if (c.t < 0 || c.t > 1)
    throw std::domain_error("hermite_fn_asymptotic: x / sqrt(2n+1) must lie in [0, 1]");
  const double t2 = c.t * c.t;
  c.theta = std::acos(c.t);
  // Direct evaluation loses relative accuracy like eps / (1 - t) near the
  // turning point; Gauss-Hermite nodes stay a distance ~ N^(-2/3) away.
  const double eta = (c.theta - c.t * std::sqrt(1 - t2)) / 2;
  // In long double: 2/3 is inexact in binary, and in double that alone
  // costs ~|log eta| ulps when zeta is mapped back to eta.
  c.zeta = -static_cast<double>(std::pow(3.0L * eta / 2, 2.0L / 3));
  // phi -> 2^(-1/6) at the turning point.
  c.phi = (c.t == 1) ? std::pow(2.0, -1.0 / 6.0) : std::pow(c.zeta / (t2 - 1), 0.25);
  return c;
}

AsymptoticSeriesTerms asymptotic_series_terms(const AsymptoticContext& c) {
  using namespace asymptotic_coeffs;
  const double t = c.t;
  const double zeta = c.zeta;
  const double phi6 = std::pow(c.phi, 6);
  const double v1 = u1(t), v2 = u2(t), v3 = u3(t);
  AsymptoticSeriesTerms s;
  s.A0 = 1;
  s.B0 = -(phi6 * v1 + a1) / (zeta * zeta);
  s.A1 = ((phi6 * v2 + b1 * v1) * phi6 + b2) / (zeta * zeta * zeta);
  s.B1 = -(((phi6 * v3 + a1 * v2) * phi6 + a2 * v1) * phi6 + a3) / std::pow(zeta, 5);
  return s;
}

double hermite_series_clenshaw(std::span<const double> coeffs, double x) {
  require_finite(x, "hermite_series_clenshaw");
  if (coeffs.empty()) return 0;
  // b_k = c_k + sqrt(2/(k+1)) x b_{k+1} - sqrt((k+1)/(k+2)) b_{k+2},
  // seeded with psi_0(x) so that the result is b_0 directly.
  const double psi0 = std::exp(-x * x / 2) / kPiQuarter;
  double b1 = 0, b2 = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const double kk = static_cast<double>(k);
    const double b0 = coeffs[k] * psi0 + x * b1 * std::sqrt(2 / (kk + 1)) -
                      b2 / std::sqrt(1 + 1 / (kk + 1));
    b2 = b1;
    b1 = b0;
  }
  return b1;
}

double hermite_fn_clenshaw(int n, double x) {
  require_degree(n, "hermite_fn_clenshaw");
  require_finite(x, "hermite_fn_clenshaw");
  double val = std::exp(-x * x / 2) / kPiQuarter;
  double val1 = 0;
  for (int k = n; k >= 1; --k) {
    const double val2 = val1;
    val1 = val;
    val = x * val1 * std::sqrt(2.0 / k) - val2 / std::sqrt(1 + 1.0 / k);
  }
  return val;
}

std::vector<double> hermite_fn_clenshaw(int n, std::span<const double> xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = hermite_fn_clenshaw(n, xs[i]);
  return out;
}

double hermite_fn_asymptotic(int n, double x) {
  const AsymptoticContext c = asymptotic_context(n, x);
  if (c.zeta == 0)
    throw std::domain_error("hermite_fn_asymptotic: the truncated expansion is singular at x = sqrt(2n+1)");
  const AsymptoticSeriesTerms s = asymptotic_series_terms(c);
  const double mu2 = c.mu2;

  const AiryValue a = airy(std::pow(mu2, 2.0 / 3.0) * c.zeta);
  const double val = a.ai * (s.A0 + s.A1 / (mu2 * mu2)) +
                     (a.ai_prime / std::pow(mu2, 4.0 / 3.0)) * (s.B0 + s.B1 / (mu2 * mu2));

  using namespace asymptotic_coeffs;
  double g = (((g4 / mu2 + g3) / mu2 + g2) / mu2 + g1) / mu2 + 1;
  // Prefactor in log space: mu^(mu^2/2) overflows long before n = 1000.
  g *= std::exp(-log_gamma(n + 1.0) / 2 + (mu2 / 4 - 1.0 / 12) * std::log(mu2) -
                (mu2 - 3) * std::numbers::ln2 / 4 - mu2 / 4);
  return (kPiQuarter * g) * c.phi * val;
}

std::vector<double> hermite_fn_asymptotic(int n, std::span<const double> xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = hermite_fn_asymptotic(n, xs[i]);
  return out;
}

double hermite_fn(int n, double x, int threshold) {
  if (n + 1 < threshold) return hermite_fn_clenshaw(n, x);
  if (x >= 0) return hermite_fn_asymptotic(n, x);
  const double v = hermite_fn_asymptotic(n, -x);
  return (n % 2 == 0) ? v : -v;
}

std::vector<double> hermite_fn(int n, std::span<const double> xs, int threshold) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = hermite_fn(n, xs[i], threshold);
  return out;
}

}  // namespace hermite
