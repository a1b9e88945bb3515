#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hermite/special_functions.hpp"

namespace hermite {
namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

// Beyond |z| = 9 the smallest term of the asymptotic series is below 2e-17,
// while the Maclaurin series in quad precision still has 25+ digits to spare
// after cancellation.
constexpr double kSeriesLimit = 9.0;

// Ai(0) and -Ai'(0) to 36 digits.
const Quad& ai_zero() {
  static const Quad v("0.355028053887817239260063186004183176398");
  return v;
}
const Quad& minus_ai_prime_zero() {
  static const Quad v("0.258819403792806798405183560189203963479");
  return v;
}

AiryValue airy_maclaurin(double z) {
  const Quad zq = z;
  const Quad z3 = zq * zq * zq;
  const Quad tol("1e-36");

  // Ai = c1 f - c2 g with f, g the two power series solutions.
  Quad f = 1, g = zq, fp = 0, gp = 1;
  Quad tf = 1, tg = zq, tfp = zq * zq / 2, tgp = 1;
  fp = tfp;
  for (int k = 0; k < 400; ++k) {
    const Quad k3 = 3 * k;
    tf *= z3 / ((k3 + 2) * (k3 + 3));
    tg *= z3 / ((k3 + 3) * (k3 + 4));
    tfp *= z3 / ((k3 + 3) * (k3 + 5));
    tgp *= z3 / ((k3 + 1) * (k3 + 3));
    f += tf;
    g += tg;
    fp += tfp;
    gp += tgp;
    if (abs(tf) <= tol * (1 + abs(f)) && abs(tg) <= tol * (1 + abs(g)) &&
        abs(tfp) <= tol * (1 + abs(fp)) && abs(tgp) <= tol * (1 + abs(gp)))
      break;
  }
  const Quad ai = ai_zero() * f - minus_ai_prime_zero() * g;
  const Quad aip = ai_zero() * fp - minus_ai_prime_zero() * gp;
  return {static_cast<double>(ai), static_cast<double>(aip)};
}

// Modulus/phase form for z = -x, x >= kSeriesLimit.
AiryValue airy_oscillatory(double x) {
  // The phase xi - pi/4 reaches 1e9 for x = 1e6, so it is formed and
  // reduced modulo 2 pi in quad precision.
  const Quad xq = x;
  const Quad xi_q = 2 * xq * sqrt(xq) / 3;
  const Quad two_pi = 2 * boost::math::constants::pi<Quad>();
  Quad phase = xi_q - boost::math::constants::pi<Quad>() / 4;
  phase -= floor(phase / two_pi) * two_pi;
  const double r = static_cast<double>(phase);
  const double xi = static_cast<double>(xi_q);

  // u_k, v_k series in 1/xi, alternating in pairs.
  double p_u = 1, q_u = 0, p_v = 1, q_v = 0;
  double u = 1, inv_pow = 1, last = 1;
  for (int k = 1; k < 200; ++k) {
    u *= (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216 * k);
    const double v = -(6.0 * k + 1) / (6.0 * k - 1) * u;
    inv_pow /= xi;
    const double tu = u * inv_pow;
    if (std::abs(tu) > last) break;  // past the smallest term
    last = std::abs(tu);
    const double tv = v * inv_pow;
    // k = 2m -> (-1)^m into P, k = 2m+1 -> (-1)^m into Q
    const int m = k / 2;
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p_u += sgn * tu;
      p_v += sgn * tv;
    } else {
      q_u += sgn * tu;
      q_v += sgn * tv;
    }
    if (last < 1e-18) break;
  }
  const double c = std::cos(r), s = std::sin(r);
  const double quarter = std::pow(x, 0.25);
  const double inv_sqrt_pi = std::numbers::inv_sqrtpi;
  return {inv_sqrt_pi / quarter * (c * p_u + s * q_u),
          inv_sqrt_pi * quarter * (s * p_v - c * q_v)};
}

AiryValue airy_decaying(double z) {
  const double xi = 2.0 * z * std::sqrt(z) / 3.0;
  double su = 1, sv = 1, u = 1, inv_pow = 1, last = 1;
  for (int k = 1; k < 200; ++k) {
    u *= (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216 * k);
    const double v = -(6.0 * k + 1) / (6.0 * k - 1) * u;
    inv_pow /= -xi;
    const double tu = u * inv_pow;
    if (std::abs(tu) > last) break;
    last = std::abs(tu);
    su += tu;
    sv += v * inv_pow;
    if (last < 1e-18) break;
  }
  const double e = std::exp(-xi) * 0.5 * std::numbers::inv_sqrtpi;
  const double quarter = std::pow(z, 0.25);
  return {e / quarter * su, -e * quarter * sv};
}

}  // namespace

AiryValue airy(double z) {
  if (!std::isfinite(z)) throw std::domain_error("airy: argument must be finite");
  if (z <= -kSeriesLimit) return airy_oscillatory(-z);
  if (z >= kSeriesLimit) return airy_decaying(z);
  return airy_maclaurin(z);
}

}  // namespace hermite
