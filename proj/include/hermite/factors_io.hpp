#pragma once

#include <filesystem>
#include <stdexcept>

#include "hermite/transform.hpp"

namespace hermite {

/// Malformed or truncated HTF1 file, or a failed read/write.
class FactorsIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// HTF1 container: the 4 bytes "HTF1", N as a little-endian u64, then x (N),
/// d (N) and Q (N x N, row-major) as little-endian IEEE doubles.
void save_factors(const std::filesystem::path& path, const TransformFactors& f);
TransformFactors load_factors(const std::filesystem::path& path);

}  // namespace hermite
