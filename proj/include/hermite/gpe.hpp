#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hermite/transform.hpp"

namespace hermite {

enum class Backend { direct, golub_welsch, bunck };
enum class Splitting { lie, strang };

std::string to_string(Backend b);
std::string to_string(Splitting s);
/// Throws std::invalid_argument for unknown names.
Backend parse_backend(const std::string& name);
Splitting parse_splitting(const std::string& name);

/// Forward/inverse Hermite transform on N nodes, either in factored form or
/// as explicit matrices.
class SpectralBasis {
 public:
  static SpectralBasis from_factors(TransformFactors f);
  /// Tinv defaults to the quadrature inverse T^T W.
  static SpectralBasis from_dense(std::vector<double> nodes, DenseTransform T,
                                  std::optional<DenseTransform> Tinv = std::nullopt);
  /// Builds the basis for backend; the recurrence backends use the
  /// Golub-Welsch nodes.
  static SpectralBasis build(Backend backend, std::size_t n, int threshold = kAsymptoticThreshold);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }

  Eigen::VectorXcd forward(const Eigen::VectorXcd& c) const;
  Eigen::VectorXcd inverse(const Eigen::VectorXcd& v) const;

 private:
  std::vector<double> nodes_;
  std::optional<TransformFactors> factors_;
  DenseTransform T_, Tinv_;
};

struct GpeConfig {
  std::size_t n_modes = 1024;
  double tau = 1e-3;
  double beta = 1.0;
  double t_end = 5.0;
  Backend backend = Backend::golub_welsch;
  Splitting splitting = Splitting::strang;
  int threshold = kAsymptoticThreshold;
  std::vector<double> snapshot_times;

  /// Throws std::invalid_argument unless tau > 0, n_modes >= 1, t_end >= 0
  /// and every snapshot time lies in [0, t_end].
  void validate() const;
  /// round(t_end / tau).
  std::size_t steps() const;
};

/// Solution on the nodes and in Hermite coefficients. Only the
/// representations flagged as current are meaningful.
struct GpeState {
  Eigen::VectorXcd values;
  Eigen::VectorXcd coeffs;
  double time = 0;
  bool values_current = false;
  bool coeffs_current = false;

  void sync_coeffs(const SpectralBasis& basis);
  void sync_values(const SpectralBasis& basis);
  /// sum |c_n|^2; synchronizes the coefficients first.
  double mass(const SpectralBasis& basis);
};

/// u0(x) = sqrt(8) exp(-(x+25)^2/8) exp(i x/2) at the nodes, with both
/// representations current.
GpeState initial_condition(const SpectralBasis& basis);

/// c_n <- exp(-i tau (n + 1/2)) c_n, the exact harmonic-oscillator flow.
void linear_step(GpeState& state, double tau, const SpectralBasis& basis);

/// u_k <- exp(-i beta tau |u_k|^2) u_k, the exact flow of the cubic term.
void nonlinear_step(GpeState& state, double tau, double beta, const SpectralBasis& basis);

/// NaN or inf in the solution.
class GpeInstability : public std::runtime_error {
 public:
  GpeInstability(std::size_t step, double time)
      : std::runtime_error("instability: non-finite solution at step " + std::to_string(step) +
                           " (t = " + std::to_string(time) + ")"),
        step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

struct MassRecord {
  std::size_t step;
  double time;
  double mass;
};

struct Snapshot {
  double time;
  Eigen::VectorXcd values;
};

struct GpeResult {
  std::vector<MassRecord> mass_log;  // step 0 is the initial state
  std::vector<Snapshot> snapshots;   // in the order of cfg.snapshot_times
  GpeState final_state;              // coefficients current
};

/// Integrates i u_t = -u_xx/2 + x^2 u/2 + beta |u|^2 u to t_end in
/// round(t_end/tau) steps. Strang steps are composed with the half steps
/// of neighbouring steps merged. Throws GpeInstability on a non-finite
/// state.
GpeResult run(const GpeConfig& cfg, const SpectralBasis& basis);
GpeResult run(const GpeConfig& cfg);

/// Discrete L2 distance between two coefficient vectors, the shorter one
/// padded with zeros. By Parseval this is the L2 distance of the expansions.
double coefficient_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

}  // namespace hermite
