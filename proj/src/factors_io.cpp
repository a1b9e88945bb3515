#include "hermite/factors_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace hermite {
namespace {

constexpr std::array<char, 4> kMagic = {'H', 'T', 'F', '1'};

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
  return v;
}

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw FactorsIoError("cannot open " + path.string() + " for writing");
  }

  void bytes(const char* p, std::size_t n) {
    out_.write(p, static_cast<std::streamsize>(n));
    if (!out_) throw FactorsIoError("write failed: " + path_.string());
  }

  void u64(std::uint64_t v) {
    const std::uint64_t le = to_little(v);
    bytes(reinterpret_cast<const char*>(&le), sizeof le);
  }

  void doubles(const double* p, std::size_t n) {
    std::vector<std::uint64_t> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = to_little(std::bit_cast<std::uint64_t>(p[i]));
    bytes(reinterpret_cast<const char*>(buf.data()), n * sizeof(std::uint64_t));
  }

  void close() {
    out_.close();
    if (!out_) throw FactorsIoError("write failed: " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw FactorsIoError("cannot open " + path.string());
  }

  void bytes(char* p, std::size_t n) {
    in_.read(p, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n)
      throw FactorsIoError("truncated HTF1 file: " + path_.string());
  }

  std::uint64_t u64() {
    std::uint64_t v = 0;
    bytes(reinterpret_cast<char*>(&v), sizeof v);
    return to_little(v);
  }

  void doubles(double* p, std::size_t n) {
    std::vector<std::uint64_t> buf(n);
    bytes(reinterpret_cast<char*>(buf.data()), n * sizeof(std::uint64_t));
    for (std::size_t i = 0; i < n; ++i) p[i] = std::bit_cast<double>(to_little(buf[i]));
  }

  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
};

}  // namespace

void save_factors(const std::filesystem::path& path, const TransformFactors& f) {
  const std::size_t n = f.size();
  if (f.d.size() != n || static_cast<std::size_t>(f.Q.rows()) != n ||
      static_cast<std::size_t>(f.Q.cols()) != n)
    throw std::invalid_argument("save_factors: inconsistent factor sizes");
  Writer w(path);
  w.bytes(kMagic.data(), kMagic.size());
  w.u64(n);
  w.doubles(f.x.data(), n);
  w.doubles(f.d.data(), n);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      row[j] = f.Q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    w.doubles(row.data(), n);
  }
  w.close();
}

TransformFactors load_factors(const std::filesystem::path& path) {
  Reader r(path);
  std::array<char, 4> magic{};
  r.bytes(magic.data(), magic.size());
  if (magic != kMagic) throw FactorsIoError("not an HTF1 file: " + path.string());
  const std::uint64_t n64 = r.u64();
  // Guards against allocating from a corrupt header.
  const std::uintmax_t size = std::filesystem::file_size(path);
  if (n64 == 0 || n64 > (1u << 20) || (n64 + 2) * n64 * 8 + 12 != size)
    throw FactorsIoError("HTF1 size field does not match file length: " + path.string());
  const auto n = static_cast<std::size_t>(n64);
  TransformFactors f;
  f.x.resize(n);
  f.d.resize(n);
  r.doubles(f.x.data(), n);
  r.doubles(f.d.data(), n);
  // Row-major on disk, column-major in memory.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> q(n, n);
  r.doubles(q.data(), n * n);
  f.Q = q;
  return f;
}

}  // namespace hermite
