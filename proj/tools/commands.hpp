#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hermite/special_functions.hpp"

namespace hermite::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kNumerical = 2;
inline constexpr int kIo = 3;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NodesArgs {
  std::string meta;  // flag set, written as a CSV comment
  std::size_t n = 0;
  std::string backend = "golub_welsch";
  int threshold = kAsymptoticThreshold;
  std::string nodes_file;  // direct/bunck only; one node per line
  std::string out;  // empty: stdout
};

struct FactorsArgs {
  std::string meta;  // flag set, written as a CSV comment
  std::size_t n = 0;
  bool reference = false;
  int oracle_bits = 256;
  int threshold = kAsymptoticThreshold;
  std::string out;
};

struct BenchArgs {
  std::string meta;  // flag set, written as a CSV comment
  std::vector<std::size_t> sizes = {100, 200, 400, 800, 1600, 3200};
  std::vector<std::string> backends = {"direct", "bunck", "golub_welsch"};
  int repeats = 5;
  std::string out;
};

struct ErrorCurveArgs {
  std::string meta;  // flag set, written as a CSV comment
  std::vector<std::size_t> sizes = {100, 200, 400, 800, 1000};
  std::vector<std::string> backends = {"direct", "bunck", "golub_welsch"};
  int oracle_bits = 256;
  int threshold = kAsymptoticThreshold;
  std::string out;
  std::string cache_dir;
};

struct GpeArgs {
  std::string meta;  // flag set, written as a CSV comment
  std::size_t n = 1024;
  double tau = 1e-3;
  double beta = 1.0;
  double t_end = 5.0;
  std::string backend = "golub_welsch";
  std::string splitting = "strang";
  int threshold = kAsymptoticThreshold;
  std::vector<double> snapshots;  // empty: 0, t_end/2, t_end
  std::string out_dir = ".";
  std::size_t reference_n = 0;  // 0: no error against a reference run
  std::string cache_dir;
};

int cmd_nodes(const NodesArgs& a);
int cmd_factors(const FactorsArgs& a);
int cmd_bench(const BenchArgs& a);
int cmd_error_curve(const ErrorCurveArgs& a);
int cmd_gpe(const GpeArgs& a);

}  // namespace hermite::cli
