#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hermite/factors_io.hpp"
#include "hermite/gpe.hpp"
#include "hermite/oracle.hpp"

namespace {

using namespace hermite::cli;

// "hermite-transform <sub> --flag value ..." with every option, given or
// defaulted.
std::string flag_set(const CLI::App& sub) {
  std::ostringstream s;
  s << "hermite-transform " << sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
    s << " --" << opt->get_lnames().front();
    if (opt->get_type_size() == 0) continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    s << ' ' << (value.empty() ? "\"\"" : value);
  }
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite-function transforms at large degree"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  NodesArgs nodes;
  auto* s_nodes = app.add_subcommand("nodes", "Gauss-Hermite nodes and weights as CSV (k, x, w, W)");
  s_nodes->add_option("--n", nodes.n, "number of nodes");
  s_nodes->add_option("--backend", nodes.backend, "direct, bunck or golub_welsch");
  s_nodes->add_option("--threshold", nodes.threshold, "degree at which psi_n switches to the asymptotic formula");
  s_nodes->add_option("--nodes-file", nodes.nodes_file, "nodes to use with direct/bunck, one per line");
  s_nodes->add_option("--out", nodes.out, "output CSV (default stdout)");

  FactorsArgs factors;
  auto* s_factors = app.add_subcommand("factors", "Write transform factors x, d, Q to an HTF1 file");
  s_factors->add_option("--n", factors.n, "transform size")->required();
  s_factors->add_flag("--reference", factors.reference, "extended-precision reference instead of Golub-Welsch");
  s_factors->add_option("--oracle-bits", factors.oracle_bits, "reference precision in bits");
  s_factors->add_option("--threshold", factors.threshold, "asymptotic switch degree");
  s_factors->add_option("--out", factors.out, "output file")->required();

  BenchArgs bench;
  auto* s_bench = app.add_subcommand("bench", "Median assembly time per backend and N");
  s_bench->add_option("--sizes", bench.sizes, "ascending transform sizes")->delimiter(',');
  s_bench->add_option("--backends", bench.backends, "backends to time")->delimiter(',');
  s_bench->add_option("--repeats", bench.repeats, "timed repetitions per cell");
  s_bench->add_option("--out", bench.out, "output CSV (default stdout)");

  ErrorCurveArgs curve;
  auto* s_curve = app.add_subcommand("error-curve", "2-norm errors of T and T^-1 against the extended-precision oracle");
  s_curve->add_option("--sizes", curve.sizes, "ascending transform sizes")->delimiter(',');
  s_curve->add_option("--backends", curve.backends, "backends to measure")->delimiter(',');
  s_curve->add_option("--oracle-bits", curve.oracle_bits, "oracle precision in bits");
  s_curve->add_option("--threshold", curve.threshold, "asymptotic switch degree for golub_welsch");
  s_curve->add_option("--out", curve.out, "output CSV (default stdout)");
  s_curve->add_option("--cache-dir", curve.cache_dir, "directory of cached HTF1 reference factors");

  GpeArgs gpe;
  auto* s_gpe = app.add_subcommand("gpe", "Split-step Gross-Pitaevskii run in the Hermite basis");
  s_gpe->add_option("--n", gpe.n, "number of Hermite modes");
  s_gpe->add_option("--tau", gpe.tau, "time step");
  s_gpe->add_option("--beta", gpe.beta, "nonlinearity coefficient");
  s_gpe->add_option("--t-end", gpe.t_end, "final time");
  s_gpe->add_option("--backend", gpe.backend, "direct, bunck or golub_welsch");
  s_gpe->add_option("--splitting", gpe.splitting, "strang or lie");
  s_gpe->add_option("--threshold", gpe.threshold, "asymptotic switch degree for golub_welsch");
  s_gpe->add_option("--snapshots", gpe.snapshots, "times at which to write the solution (default 0, t_end/2, t_end)")->delimiter(',');
  s_gpe->add_option("--reference-n", gpe.reference_n,
                    "if nonzero, also write the error at t_end against a golub_welsch run with this N");
  s_gpe->add_option("--out-dir", gpe.out_dir, "output directory");
  s_gpe->add_option("--cache-dir", gpe.cache_dir, "directory of cached HTF1 golub_welsch factors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s_nodes) {
      nodes.meta = flag_set(*s_nodes);
      return cmd_nodes(nodes);
    }
    if (*s_factors) {
      factors.meta = flag_set(*s_factors);
      return cmd_factors(factors);
    }
    if (*s_bench) {
      bench.meta = flag_set(*s_bench);
      return cmd_bench(bench);
    }
    if (*s_curve) {
      curve.meta = flag_set(*s_curve);
      return cmd_error_curve(curve);
    }
    gpe.meta = flag_set(*s_gpe);
    return cmd_gpe(gpe);
  } catch (const std::invalid_argument& e) {
    std::cerr << "hermite-transform: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "hermite-transform: " << e.what() << '\n';
    return kIo;
  } catch (const hermite::FactorsIoError& e) {
    std::cerr << "hermite-transform: " << e.what() << '\n';
    return kIo;
  } catch (const hermite::oracle::NodeConvergenceError& e) {
    std::cerr << "hermite-transform: " << e.what() << '\n';
    return kNumerical;
  } catch (const hermite::oracle::OracleError& e) {
    // Precision below the minimum or a size over the cap.
    std::cerr << "hermite-transform: " << e.what() << '\n';
    return kUsage;
  } catch (const hermite::GpeInstability& e) {
    std::cerr << "hermite-transform: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    // Convergence failures and other numerical errors.
    std::cerr << "hermite-transform: " << e.what() << '\n';
    return kNumerical;
  }
}
