#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hermite/linalg.hpp"

namespace test {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

inline std::string data_path(const std::string& name) { return std::string(HERMITE_TEST_DATA_DIR) + "/" + name; }

/// Numeric CSV rows, header skipped. Values are parsed with correct rounding.
inline std::vector<std::vector<double>> read_csv(const std::string& name) {
  std::ifstream in(data_path(name));
  if (!in) throw std::runtime_error("missing test data " + name);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// name -> decimal string from scalars.csv.
inline std::map<std::string, std::string> scalar_strings() {
  std::ifstream in(data_path("scalars.csv"));
  if (!in) throw std::runtime_error("missing test data scalars.csv");
  std::map<std::string, std::string> out;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    out[line.substr(0, comma)] = line.substr(comma + 1);
  }
  return out;
}

inline double scalar(const std::string& name) {
  static const auto table = scalar_strings();
  return std::stod(table.at(name));
}

/// ||V^T V - I||_2.
inline double orthogonality_error(const Eigen::MatrixXd& V) {
  Eigen::MatrixXd G = V.transpose() * V;
  G.diagonal().array() -= 1;
  return hermite::spectral_norm(G);
}

}  // namespace test
