#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hermite/factors_io.hpp"
#include "hermite/gpe.hpp"
#include "hermite/linalg.hpp"
#include "hermite/oracle.hpp"
#include "hermite/transform.hpp"

namespace hermite::cli {
namespace fs = std::filesystem;

namespace {

constexpr double kCensorLevel = 0.1;

std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// Output file, or stdout for an empty path. The first lines are the flag
// comment and the column header.
class CsvOut {
 public:
  CsvOut(const std::string& path, const std::string& meta, const std::string& header) : path_(path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open '" + path + "' for writing");
    }
    out() << "# " << meta << '\n' << header << '\n';
  }

  std::ostream& out() { return path_.empty() ? std::cout : file_; }

  template <typename... Ts>
  void row(const Ts&... cells) {
    std::ostringstream line;
    bool first = true;
    ((line << (first ? "" : ",") << cell(cells), first = false), ...);
    out() << line.str() << '\n';
  }

  void close() {
    out().flush();
    if (!out()) throw IoError("write to '" + (path_.empty() ? std::string("stdout") : path_) + "' failed");
    if (file_.is_open()) file_.close();
  }

 private:
  static std::string cell(double v) { return fmt(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  template <typename I>
    requires std::is_integral_v<I>
  static std::string cell(I v) {
    return std::to_string(v);
  }

  std::string path_;
  std::ofstream file_;
};

void require_sizes(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("--sizes must not be empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw std::invalid_argument("--sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw std::invalid_argument("--sizes must be ascending");
  }
}

std::vector<Backend> parse_backends(const std::vector<std::string>& names) {
  if (names.empty()) throw std::invalid_argument("--backends must not be empty");
  std::vector<Backend> out;
  for (const auto& n : names) out.push_back(parse_backend(n));
  return out;
}

std::vector<double> read_nodes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open nodes file '" + path + "'");
  std::vector<double> x;
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    double v;
    if (!(ls >> v)) throw IoError("nodes file '" + path + "': cannot parse '" + line + "'");
    x.push_back(v);
  }
  if (x.empty()) throw IoError("nodes file '" + path + "' holds no nodes");
  if (!std::is_sorted(x.begin(), x.end())) throw std::invalid_argument("nodes file: nodes must be ascending");
  return x;
}

// Load from cache_dir/name if it exists, else build and store it there.
template <typename Build>
TransformFactors cached_factors(const std::string& cache_dir, const std::string& name, Build build) {
  if (cache_dir.empty()) return build();
  const fs::path path = fs::path(cache_dir) / name;
  if (fs::exists(path)) return load_factors(path);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  if (ec) throw IoError("cannot create cache directory '" + cache_dir + "': " + ec.message());
  TransformFactors f = build();
  save_factors(path, f);
  return f;
}

TransformFactors gw_factors(std::size_t n, int threshold, const std::string& cache_dir) {
  GolubWelschOptions opt;
  opt.threshold = threshold;
  return cached_factors(cache_dir, "gw_N" + std::to_string(n) + "_th" + std::to_string(threshold) + ".htf1",
                        [&] { return build_golub_welsch(n, opt); });
}

DenseTransform build_recurrence(Backend b, std::span<const double> x) {
  return b == Backend::direct ? build_direct(x) : build_bunck(x);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

}  // namespace

int cmd_nodes(const NodesArgs& a) {
  const Backend backend = parse_backend(a.backend);
  std::vector<double> x;
  std::vector<double> W;
  if (!a.nodes_file.empty()) {
    if (backend == Backend::golub_welsch)
      throw std::invalid_argument("--nodes-file applies to the direct and bunck backends only");
    x = read_nodes(a.nodes_file);
    if (a.n != 0 && a.n != x.size())
      throw std::invalid_argument("--n " + std::to_string(a.n) + " does not match the " + std::to_string(x.size()) +
                                  " nodes in the file");
  } else if (a.n == 0) {
    throw std::invalid_argument("--n must be at least 1");
  }

  if (backend == Backend::golub_welsch) {
    GolubWelschOptions opt;
    opt.threshold = a.threshold;
    const GaussHermiteRule rule = gauss_hermite_rule(build_golub_welsch(a.n, opt));
    x = rule.nodes;
    W = rule.effective_weights;
  } else {
    if (x.empty()) x = gauss_hermite_nodes(a.n);
    const DenseTransform T = build_recurrence(backend, x);
    const auto n = static_cast<Eigen::Index>(x.size());
    W.resize(x.size());
    for (Eigen::Index k = 0; k < n; ++k) {
      const double p = T(k, n - 1);
      W[static_cast<std::size_t>(k)] = 1 / (static_cast<double>(n) * p * p);
    }
  }

  CsvOut csv(a.out, a.meta, "k,x,w,W");
  for (std::size_t k = 0; k < x.size(); ++k) csv.row(k, x[k], std::exp(-x[k] * x[k]) * W[k], W[k]);
  csv.close();
  return kOk;
}

int cmd_factors(const FactorsArgs& a) {
  if (a.n == 0) throw std::invalid_argument("--n must be at least 1");
  if (a.out.empty()) throw std::invalid_argument("--out is required");
  TransformFactors f;
  if (a.reference) {
    oracle::PrecisionConfig cfg{a.oracle_bits};
    oracle::validate(cfg);
    f = oracle::reference_factors(a.n, cfg);
  } else {
    GolubWelschOptions opt;
    opt.threshold = a.threshold;
    f = build_golub_welsch(a.n, opt);
  }
  save_factors(a.out, f);
  return kOk;
}

int cmd_bench(const BenchArgs& a) {
  require_sizes(a.sizes);
  if (a.repeats < 1) throw std::invalid_argument("--repeats must be at least 1");
  const std::vector<Backend> backends = parse_backends(a.backends);

  CsvOut csv(a.out, a.meta, "backend,N,median_seconds,repeats");
  using clock = std::chrono::steady_clock;
  for (Backend b : backends) {
    for (std::size_t n : a.sizes) {
      std::vector<double> times;
      for (int r = 0; r < a.repeats; ++r) {
        // Recurrence backends are timed including their nodes.
        const auto t0 = clock::now();
        if (b == Backend::golub_welsch) {
          volatile double sink = build_golub_welsch(n).d.back();
          (void)sink;
        } else {
          const std::vector<double> x = gauss_hermite_nodes(n);
          volatile double sink = build_recurrence(b, x)(0, 0);
          (void)sink;
        }
        times.push_back(std::chrono::duration<double>(clock::now() - t0).count());
      }
      csv.row(to_string(b), n, median(times), a.repeats);
      csv.out().flush();
    }
  }
  csv.close();
  return kOk;
}

int cmd_error_curve(const ErrorCurveArgs& a) {
  require_sizes(a.sizes);
  if (a.sizes.back() > oracle::kMaxDense)
    throw std::invalid_argument("--sizes: the oracle handles N <= " + std::to_string(oracle::kMaxDense));
  const std::vector<Backend> backends = parse_backends(a.backends);
  const oracle::PrecisionConfig cfg{a.oracle_bits};
  oracle::validate(cfg);

  CsvOut csv(a.out, a.meta, "backend,N,err_T,err_Tinv,censored");
  for (std::size_t n : a.sizes) {
    DensePair ref;
    if (a.cache_dir.empty()) {
      oracle::DenseReference r = oracle::dense_transform(n, cfg);
      ref.T = std::move(r.T);
      ref.Tinv = std::move(r.Tinv);
    } else {
      ref = dense_from_factors(cached_factors(
          a.cache_dir, "ref_N" + std::to_string(n) + "_b" + std::to_string(a.oracle_bits) + ".htf1",
          [&] { return oracle::reference_factors(n, cfg); }));
    }

    std::optional<std::vector<double>> nodes;
    for (Backend b : backends) {
      DensePair p;
      if (b == Backend::golub_welsch) {
        GolubWelschOptions opt;
        opt.threshold = a.threshold;
        p = dense_from_factors(build_golub_welsch(n, opt));
      } else {
        if (!nodes) nodes = gauss_hermite_nodes(n);
        p.T = build_recurrence(b, *nodes);
        p.Tinv = dense_inverse_from_transform(p.T);
      }
      const double eT = spectral_norm(p.T - ref.T);
      const double eTinv = spectral_norm(p.Tinv - ref.Tinv);
      const bool censored = !(eT <= kCensorLevel) || !(eTinv <= kCensorLevel);
      csv.row(to_string(b), n, eT, eTinv, censored ? 1 : 0);
      csv.out().flush();
    }
  }
  csv.close();
  return kOk;
}

int cmd_gpe(const GpeArgs& a) {
  GpeConfig cfg;
  cfg.n_modes = a.n;
  cfg.tau = a.tau;
  cfg.beta = a.beta;
  cfg.t_end = a.t_end;
  cfg.backend = parse_backend(a.backend);
  cfg.splitting = parse_splitting(a.splitting);
  cfg.threshold = a.threshold;
  cfg.snapshot_times = a.snapshots;
  if (cfg.snapshot_times.empty()) cfg.snapshot_times = {0.0, a.t_end / 2, a.t_end};
  cfg.validate();

  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + a.out_dir + "': " + ec.message());

  auto make_basis = [&](Backend b, std::size_t n) {
    if (b == Backend::golub_welsch) return SpectralBasis::from_factors(gw_factors(n, a.threshold, a.cache_dir));
    return SpectralBasis::build(b, n, a.threshold);
  };

  const SpectralBasis basis = make_basis(cfg.backend, cfg.n_modes);
  GpeResult result;
  try {
    result = run(cfg, basis);
  } catch (const GpeInstability& e) {
    std::cerr << "hermite-transform gpe: " << e.what() << " with backend " << to_string(cfg.backend)
              << ", N = " << cfg.n_modes << '\n';
    return kNumerical;
  }

  {
    CsvOut csv((fs::path(a.out_dir) / "mass_log.csv").string(), a.meta, "step,t,mass");
    for (const MassRecord& m : result.mass_log) csv.row(m.step, m.time, m.mass);
    csv.close();
  }
  for (const Snapshot& s : result.snapshots) {
    CsvOut csv((fs::path(a.out_dir) / ("snapshot_t" + fmt(s.time) + ".csv")).string(), a.meta,
               "x,re_u,im_u,abs_u2");
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const auto& u = s.values[static_cast<Eigen::Index>(k)];
      csv.row(basis.nodes()[k], u.real(), u.imag(), std::norm(u));
    }
    csv.close();
  }

  const double m0 = result.mass_log.front().mass;
  double drift = 0;
  for (const MassRecord& m : result.mass_log) drift = std::max(drift, std::abs(m.mass - m0) / m0);
  std::cout << "steps " << cfg.steps() << ", initial mass " << fmt(m0) << ", max relative mass drift "
            << fmt(drift) << '\n';

  if (a.reference_n > 0) {
    GpeConfig ref_cfg = cfg;
    ref_cfg.n_modes = a.reference_n;
    ref_cfg.backend = Backend::golub_welsch;
    ref_cfg.snapshot_times.clear();
    const GpeResult ref = run(ref_cfg, make_basis(Backend::golub_welsch, a.reference_n));
    const double err = coefficient_distance(result.final_state.coeffs, ref.final_state.coeffs);
    CsvOut csv((fs::path(a.out_dir) / "error.csv").string(),
               a.meta + " | error: discrete L2 distance of the Hermite coefficients at t_end from a golub_welsch run "
                        "with N = reference_n and the same tau, beta and splitting",
               "N,reference_N,t,error");
    csv.row(cfg.n_modes, a.reference_n, cfg.t_end, err);
    csv.close();
    std::cout << "error vs N = " << a.reference_n << ": " << fmt(err) << '\n';
  }
  return kOk;
}

}  // namespace hermite::cli
