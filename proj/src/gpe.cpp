#include "hermite/gpe.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace hermite {
namespace {

using cd = std::complex<double>;

Eigen::VectorXcd apply_real(const Eigen::MatrixXd& M, const Eigen::VectorXcd& v) {
  Eigen::MatrixXd parts(v.size(), 2);
  parts.col(0) = v.real();
  parts.col(1) = v.imag();
  const Eigen::MatrixXd out = M * parts;
  Eigen::VectorXcd r(out.rows());
  r.real() = out.col(0);
  r.imag() = out.col(1);
  return r;
}

void apply_linear(Eigen::VectorXcd& c, double tau) {
  for (Eigen::Index n = 0; n < c.size(); ++n)
    c[n] *= std::polar(1.0, -tau * (static_cast<double>(n) + 0.5));
}

}  // namespace

std::string to_string(Backend b) {
  switch (b) {
    case Backend::direct: return "direct";
    case Backend::golub_welsch: return "golub_welsch";
    case Backend::bunck: return "bunck";
  }
  return "?";
}

std::string to_string(Splitting s) { return s == Splitting::lie ? "lie" : "strang"; }

Backend parse_backend(const std::string& name) {
  if (name == "direct") return Backend::direct;
  if (name == "golub_welsch" || name == "gw") return Backend::golub_welsch;
  if (name == "bunck") return Backend::bunck;
  throw std::invalid_argument("unknown backend '" + name + "' (expected direct, golub_welsch or bunck)");
}

Splitting parse_splitting(const std::string& name) {
  if (name == "lie") return Splitting::lie;
  if (name == "strang") return Splitting::strang;
  throw std::invalid_argument("unknown splitting '" + name + "' (expected lie or strang)");
}

SpectralBasis SpectralBasis::from_factors(TransformFactors f) {
  SpectralBasis b;
  b.nodes_ = f.x;
  b.factors_ = std::move(f);
  return b;
}

SpectralBasis SpectralBasis::from_dense(std::vector<double> nodes, DenseTransform T,
                                        std::optional<DenseTransform> Tinv) {
  if (static_cast<std::size_t>(T.rows()) != nodes.size() || T.rows() != T.cols())
    throw std::invalid_argument("SpectralBasis: transform size does not match the nodes");
  SpectralBasis b;
  b.nodes_ = std::move(nodes);
  b.Tinv_ = Tinv ? std::move(*Tinv) : dense_inverse_from_transform(T);
  b.T_ = std::move(T);
  return b;
}

SpectralBasis SpectralBasis::build(Backend backend, std::size_t n, int threshold) {
  if (backend == Backend::golub_welsch) {
    GolubWelschOptions opt;
    opt.threshold = threshold;
    return from_factors(build_golub_welsch(n, opt));
  }
  std::vector<double> x = gauss_hermite_nodes(n);
  DenseTransform T = backend == Backend::direct ? build_direct(x) : build_bunck(x);
  return from_dense(std::move(x), std::move(T));
}

Eigen::VectorXcd SpectralBasis::forward(const Eigen::VectorXcd& c) const {
  if (factors_) return hermite::forward(*factors_, c);
  if (static_cast<std::size_t>(c.size()) != size())
    throw std::invalid_argument("forward: vector length does not match transform size");
  return apply_real(T_, c);
}

Eigen::VectorXcd SpectralBasis::inverse(const Eigen::VectorXcd& v) const {
  if (factors_) return hermite::inverse(*factors_, v);
  if (static_cast<std::size_t>(v.size()) != size())
    throw std::invalid_argument("inverse: vector length does not match transform size");
  return apply_real(Tinv_, v);
}

void GpeConfig::validate() const {
  if (!(tau > 0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  if (n_modes < 1) throw std::invalid_argument("n_modes must be at least 1");
  if (!(t_end >= 0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be non-negative");
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
  for (double t : snapshot_times)
    if (!(t >= 0 && t <= t_end)) throw std::invalid_argument("snapshot times must lie in [0, t_end]");
}

std::size_t GpeConfig::steps() const { return static_cast<std::size_t>(std::llround(t_end / tau)); }

void GpeState::sync_coeffs(const SpectralBasis& basis) {
  if (coeffs_current) return;
  coeffs = basis.inverse(values);
  coeffs_current = true;
}

void GpeState::sync_values(const SpectralBasis& basis) {
  if (values_current) return;
  values = basis.forward(coeffs);
  values_current = true;
}

double GpeState::mass(const SpectralBasis& basis) {
  sync_coeffs(basis);
  return coeffs.squaredNorm();
}

GpeState initial_condition(const SpectralBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  GpeState s;
  s.values.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = basis.nodes()[static_cast<std::size_t>(k)];
    s.values[k] = std::sqrt(8.0) * std::exp(-(x + 25) * (x + 25) / 8) * std::polar(1.0, x / 2);
  }
  s.values_current = true;
  s.sync_coeffs(basis);
  return s;
}

void linear_step(GpeState& state, double tau, const SpectralBasis& basis) {
  state.sync_coeffs(basis);
  apply_linear(state.coeffs, tau);
  state.values_current = false;
  state.time += tau;
}

void nonlinear_step(GpeState& state, double tau, double beta, const SpectralBasis& basis) {
  state.sync_values(basis);
  for (Eigen::Index k = 0; k < state.values.size(); ++k)
    state.values[k] *= std::polar(1.0, -beta * tau * std::norm(state.values[k]));
  state.coeffs_current = false;
}

GpeResult run(const GpeConfig& cfg, const SpectralBasis& basis) {
  cfg.validate();
  if (basis.size() != cfg.n_modes) throw std::invalid_argument("run: basis size does not match n_modes");
  const std::size_t steps = cfg.steps();
  const double tau = cfg.tau;

  GpeResult result;
  GpeState state = initial_condition(basis);
  result.mass_log.push_back({0, 0.0, state.mass(basis)});

  // Snapshot requests by step index; several times may share a step.
  std::vector<std::size_t> snap_step(cfg.snapshot_times.size());
  result.snapshots.resize(cfg.snapshot_times.size());
  for (std::size_t i = 0; i < snap_step.size(); ++i) {
    snap_step[i] = std::min<std::size_t>(steps, static_cast<std::size_t>(std::llround(cfg.snapshot_times[i] / tau)));
    if (snap_step[i] == 0) result.snapshots[i] = {0.0, state.values};
  }

  auto check = [&](std::size_t step) {
    if (!state.coeffs.allFinite()) throw GpeInstability(step, static_cast<double>(step) * tau);
  };
  auto record = [&](std::size_t step, const Eigen::VectorXcd& boundary_coeffs) {
    const double t = static_cast<double>(step) * tau;
    result.mass_log.push_back({step, t, boundary_coeffs.squaredNorm()});
    bool forwarded = false;
    Eigen::VectorXcd values;
    for (std::size_t i = 0; i < snap_step.size(); ++i) {
      if (snap_step[i] != step || step == 0) continue;
      if (!forwarded) values = basis.forward(boundary_coeffs);
      forwarded = true;
      result.snapshots[i] = {t, values};
    }
  };

  if (cfg.splitting == Splitting::lie) {
    for (std::size_t k = 1; k <= steps; ++k) {
      linear_step(state, tau, basis);
      nonlinear_step(state, tau, cfg.beta, basis);
      state.sync_coeffs(basis);
      check(k);
      record(k, state.coeffs);
    }
  } else if (steps > 0) {
    // L(tau/2) [N(tau) L(tau)]^(steps-1) N(tau) L(tau/2); the state at a
    // step boundary sits half a linear step past the stored coefficients.
    linear_step(state, tau / 2, basis);
    for (std::size_t k = 1; k <= steps; ++k) {
      nonlinear_step(state, tau, cfg.beta, basis);
      state.sync_coeffs(basis);
      check(k);
      Eigen::VectorXcd boundary = state.coeffs;
      apply_linear(boundary, tau / 2);
      record(k, boundary);
      if (k < steps) {
        linear_step(state, tau, basis);
      } else {
        state.coeffs = boundary;
        state.values_current = false;
        state.time += tau / 2;
      }
    }
  }
  state.sync_coeffs(basis);
  state.time = static_cast<double>(steps) * tau;
  result.final_state = std::move(state);
  return result;
}

GpeResult run(const GpeConfig& cfg) {
  cfg.validate();
  return run(cfg, SpectralBasis::build(cfg.backend, cfg.n_modes, cfg.threshold));
}

double coefficient_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  double s = (a.head(n) - b.head(n)).squaredNorm();
  s += a.tail(a.size() - n).squaredNorm() + b.tail(b.size() - n).squaredNorm();
  return std::sqrt(s);
}

}  // namespace hermite
