#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "hermite/gpe.hpp"
#include "support.hpp"

using namespace hermite;

namespace {

const double kMass0 = 16 * std::sqrt(std::numbers::pi);

GpeConfig config(std::size_t n, double t_end, double tau = 1e-3, double beta = 1) {
  GpeConfig c;
  c.n_modes = n;
  c.t_end = t_end;
  c.tau = tau;
  c.beta = beta;
  return c;
}

double max_drift(const GpeResult& r) {
  const double m0 = r.mass_log.front().mass;
  double d = 0;
  for (const MassRecord& m : r.mass_log) d = std::max(d, std::abs(m.mass - m0) / m0);
  return d;
}

}  // namespace

TEST_SUITE("gpe") {
  TEST_CASE("names") {
    CHECK(parse_backend("direct") == Backend::direct);
    CHECK(parse_backend("gw") == Backend::golub_welsch);
    CHECK(parse_backend(to_string(Backend::bunck)) == Backend::bunck);
    CHECK(parse_splitting("lie") == Splitting::lie);
    CHECK(to_string(Splitting::strang) == "strang");
    CHECK_THROWS_AS(parse_backend("fft"), std::invalid_argument);
    CHECK_THROWS_AS(parse_splitting("yoshida"), std::invalid_argument);
  }

  TEST_CASE("config validation") {
    CHECK_THROWS_AS(config(64, 1, 0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(config(64, 1, -1e-3).validate(), std::invalid_argument);
    CHECK_THROWS_AS(config(0, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(config(64, -1).validate(), std::invalid_argument);
    GpeConfig c = config(64, 1);
    c.snapshot_times = {2.0};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK(config(64, 5).steps() == 5000);
    CHECK(config(64, 0).steps() == 0);
  }

  TEST_CASE("initial condition") {
    const SpectralBasis point = SpectralBasis::from_dense({-25.0}, Eigen::MatrixXd::Identity(1, 1));
    CHECK(std::abs(std::abs(initial_condition(point).values[0]) - std::sqrt(8.0)) <= 1e-15);

    const SpectralBasis b1024 = SpectralBasis::build(Backend::golub_welsch, 1024);
    GpeState s = initial_condition(b1024);
    CHECK(std::abs(s.mass(b1024) - kMass0) <= 1e-6 * kMass0);

    const SpectralBasis b64 = SpectralBasis::build(Backend::golub_welsch, 64);
    GpeState s64 = initial_condition(b64);
    CHECK(std::abs(s64.mass(b64) - kMass0) > 1e-3 * kMass0);
  }

  TEST_CASE("coefficient and quadrature masses agree") {
    const TransformFactors f = build_golub_welsch(512);
    const GaussHermiteRule rule = gauss_hermite_rule(f);
    const SpectralBasis b = SpectralBasis::from_factors(f);
    GpeState s = initial_condition(b);
    double quad = 0;
    for (Eigen::Index k = 0; k < s.values.size(); ++k) quad += rule.effective_weights[k] * std::norm(s.values[k]);
    CHECK(std::abs(s.mass(b) - quad) <= 1e-12 * quad);
  }

  TEST_CASE("linear step") {
    const SpectralBasis b = SpectralBasis::build(Backend::golub_welsch, 40);
    GpeState s = initial_condition(b);
    const Eigen::VectorXcd c0 = s.coeffs;
    linear_step(s, 0, b);
    CHECK(s.coeffs == c0);
    CHECK_FALSE(s.values_current);

    linear_step(s, 0.37, b);
    for (Eigen::Index n = 0; n < c0.size(); ++n) {
      const double a = std::abs(c0[n]);
      CHECK(std::abs(std::abs(s.coeffs[n]) - a) <= std::nextafter(a, INFINITY) - a);
    }

    GpeState e;
    e.coeffs = Eigen::VectorXcd::Zero(40);
    e.coeffs[0] = 1;
    e.coeffs_current = true;
    linear_step(e, 2 * std::numbers::pi, b);
    CHECK(std::abs(e.coeffs[0] - std::complex<double>(-1, 0)) <= 1e-15);
  }

  TEST_CASE("nonlinear step") {
    const SpectralBasis b = SpectralBasis::build(Backend::golub_welsch, 40);
    GpeState s = initial_condition(b);
    const Eigen::VectorXcd v0 = s.values;
    nonlinear_step(s, 0.5, 0, b);
    CHECK(s.values == v0);
    CHECK_FALSE(s.coeffs_current);

    nonlinear_step(s, 0.5, 3, b);
    for (Eigen::Index k = 0; k < v0.size(); ++k) {
      const double a = std::abs(v0[k]);
      CHECK(std::abs(std::abs(s.values[k]) - a) <= std::nextafter(a, INFINITY) - a);
    }

    GpeState c;
    c.values = Eigen::VectorXcd::Constant(40, std::polar(2.0, 0.3));
    c.values_current = true;
    nonlinear_step(c, 0.1, 1.5, b);
    const std::complex<double> phase = std::polar(1.0, -1.5 * 0.1 * 4);
    for (Eigen::Index k = 0; k < 40; ++k) CHECK(std::abs(c.values[k] - std::polar(2.0, 0.3) * phase) <= 1e-15);
  }

  TEST_CASE("linear flow is periodic in modulus") {
    GpeConfig c = config(128, 2 * std::numbers::pi, 2 * std::numbers::pi / 1000, 0);
    const SpectralBasis b = SpectralBasis::build(Backend::golub_welsch, 128);
    const GpeResult r = run(c, b);
    const GpeState s0 = initial_condition(b);
    for (Eigen::Index n = 0; n < 128; ++n)
      CHECK(std::abs(std::abs(r.final_state.coeffs[n]) - std::abs(s0.coeffs[n])) <= 1e-12);
    // exp(-i t (n + 1/2)) at t = 2 pi is -1 for every n.
    CHECK((r.final_state.coeffs + s0.coeffs).norm() <= 1e-11);
  }

  TEST_CASE("t_end = 0 returns the initial condition") {
    GpeConfig c = config(64, 0);
    c.snapshot_times = {0};
    const SpectralBasis b = SpectralBasis::build(Backend::golub_welsch, 64);
    const GpeResult r = run(c, b);
    const GpeState s0 = initial_condition(b);
    CHECK(r.snapshots.at(0).values == s0.values);
    CHECK(r.final_state.coeffs == s0.coeffs);
    CHECK(r.mass_log.size() == 1);
  }

  TEST_CASE("snapshots and mass log") {
    GpeConfig c = config(128, 0.05);
    c.snapshot_times = {0, 0.025, 0.05};
    const GpeResult r = run(c);
    CHECK(r.mass_log.size() == 51);
    CHECK(r.mass_log.back().step == 50);
    REQUIRE(r.snapshots.size() == 3);
    CHECK(r.snapshots[1].time == doctest::Approx(0.025));
    const SpectralBasis b = SpectralBasis::build(Backend::golub_welsch, 128);
    CHECK((b.forward(r.final_state.coeffs) - r.snapshots[2].values).norm() <= 1e-12);
  }

  TEST_CASE("lie and strang agree to first order") {
    GpeConfig c = config(256, 0.2, 1e-3);
    const SpectralBasis b = SpectralBasis::build(Backend::golub_welsch, 256);
    const GpeResult s = run(c, b);
    c.splitting = Splitting::lie;
    const GpeResult l = run(c, b);
    const double d = coefficient_distance(s.final_state.coeffs, l.final_state.coeffs);
    CHECK(d > 0);
    CHECK(d < 1e-2);
  }

  TEST_CASE("direct backend breaks down at N = 800") {
    const SpectralBasis b = SpectralBasis::build(Backend::direct, 800);
    CHECK_THROWS_AS(run(config(800, 5), b), GpeInstability);
  }

  TEST_CASE("coefficient distance pads with zeros") {
    Eigen::VectorXcd a(2), b(3);
    a << 1.0, 2.0;
    b << 1.0, 2.0, std::complex<double>(0, 3);
    CHECK(coefficient_distance(a, b) == 3);
    CHECK(coefficient_distance(b, a) == 3);
  }

  TEST_CASE("length checks") {
    const SpectralBasis b = SpectralBasis::build(Backend::bunck, 16);
    CHECK_THROWS_AS(b.forward(Eigen::VectorXcd::Zero(15)), std::invalid_argument);
    CHECK_THROWS_AS(run(config(17, 1), b), std::invalid_argument);
  }
}

TEST_SUITE("gpe_long") {
  TEST_CASE("mass conservation over 5000 steps") {
    for (std::size_t n : {512u, 1024u, 2048u}) {
      const GpeResult r = run(config(n, 5));
      INFO("N = " << n << ", drift " << max_drift(r));
      CHECK(max_drift(r) <= 1e-10);
    }
  }

  TEST_CASE("direct and golub-welsch agree at N = 512") {
    GpeConfig c = config(512, 5);
    const GpeResult g = run(c);
    c.backend = Backend::direct;
    const GpeResult d = run(c);
    CHECK(coefficient_distance(g.final_state.coeffs, d.final_state.coeffs) <= 1e-8);
  }

  TEST_CASE("splitting order") {
    const SpectralBasis b = SpectralBasis::build(Backend::golub_welsch, 2048);
    for (Splitting sp : {Splitting::strang, Splitting::lie}) {
      auto final = [&](double tau) {
        GpeConfig c = config(2048, 1, tau);
        c.splitting = sp;
        return run(c, b).final_state.coeffs;
      };
      const Eigen::VectorXcd ref = final(1.25e-4);
      const double e4 = coefficient_distance(final(4e-3), ref);
      const double e2 = coefficient_distance(final(2e-3), ref);
      const double e1 = coefficient_distance(final(1e-3), ref);
      const double order = std::log2(std::sqrt(e4 * e2) / std::sqrt(e2 * e1));
      const double expected = sp == Splitting::strang ? 2.0 : 1.0;
      INFO(to_string(sp) << ": errors " << e4 << " " << e2 << " " << e1 << ", order " << order);
      CHECK(std::abs(order - expected) <= 0.2);
    }
  }

  TEST_CASE("spatial self-convergence") {
    const Eigen::VectorXcd ref = run(config(4096, 5)).final_state.coeffs;
    double prev = INFINITY;
    for (std::size_t n : {512u, 1024u, 2048u}) {
      const double e = coefficient_distance(run(config(n, 5)).final_state.coeffs, ref);
      INFO("N = " << n << ", error " << e);
      CHECK(e < prev);
      prev = e;
    }
  }
}
