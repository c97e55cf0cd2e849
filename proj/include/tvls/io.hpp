// Serialization: TVLS binary images, PGM previews, CSV index sets, and
// flat key-value report blocks. All text output is formatted
// deterministically so identical runs produce identical bytes.
#pragma once

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tvls/image.hpp"
#include "tvls/sets.hpp"
#include "tvls/structure.hpp"

namespace tvls {

inline constexpr char kTvlsMagic[8] = {'T', 'V', 'L', 'S', '0', '0', '0', '1'};

namespace detail {
inline void put_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

inline std::uint64_t get_u64_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
  return v;
}

inline void put_f64_le(std::string& out, double d) {
  put_u64_le(out, std::bit_cast<std::uint64_t>(d));
}

inline double get_f64_le(const unsigned char* p) {
  return std::bit_cast<double>(get_u64_le(p));
}
}  // namespace detail

// 17 significant digits: round-trips doubles and is byte-stable.
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string encode_tvls(const ComplexImage& z) {
  std::string out(kTvlsMagic, sizeof(kTvlsMagic));
  detail::put_u64_le(out, std::uint64_t(z.n));
  out.reserve(out.size() + z.data.size() * 16);
  for (const cplx& v : z.data) {
    detail::put_f64_le(out, v.real());
    detail::put_f64_le(out, v.imag());
  }
  return out;
}

inline ComplexImage decode_tvls(const std::string& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kTvlsMagic, 8) != 0)
    throw std::runtime_error("decode_tvls: bad magic");
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::uint64_t n = detail::get_u64_le(p + 8);
  if (n < 2 || n > (1u << 20)) throw std::runtime_error("decode_tvls: bad side length");
  if (bytes.size() != 16 + n * n * 16) throw std::runtime_error("decode_tvls: truncated payload");
  ComplexImage z(static_cast<int>(n));
  for (std::uint64_t i = 0; i < n * n; ++i) {
    const double re = detail::get_f64_le(p + 16 + i * 16);
    const double im = detail::get_f64_le(p + 16 + i * 16 + 8);
    z.data[i] = {re, im};
  }
  return z;
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_file: cannot open " + path.string());
  f.write(bytes.data(), std::streamsize(bytes.size()));
  if (!f) throw std::runtime_error("write_file: short write to " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_file: cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_tvls(const std::filesystem::path& path, const ComplexImage& z) {
  write_file(path, encode_tvls(z));
}

inline ComplexImage read_tvls(const std::filesystem::path& path) {
  return decode_tvls(read_file(path));
}

// Magnitude preview, linearly scaled to 0..255. Lossy by design.
inline std::string encode_pgm(const ComplexImage& z) {
  double peak = 0;
  for (const cplx& v : z.data) peak = std::max(peak, std::abs(v));
  std::string out = "P5\n" + std::to_string(z.n) + " " + std::to_string(z.n) + "\n255\n";
  for (const cplx& v : z.data) {
    const double t = peak > 0 ? std::abs(v) / peak : 0.0;
    out.push_back(char(int(std::lround(t * 255.0))));
  }
  return out;
}

inline void write_pgm(const std::filesystem::path& path, const ComplexImage& z) {
  write_file(path, encode_pgm(z));
}

// 0/255 sampling-mask preview with the zero frequency at the center.
inline std::string encode_mask_pgm(const IndexSet2D& omega) {
  const int n = omega.side();
  std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int k1 = freq_min(n) + r;
      const int k2 = freq_min(n) + c;
      out.push_back(omega.contains(k1, k2) ? char(255) : char(0));
    }
  return out;
}

inline void write_mask_pgm(const std::filesystem::path& path, const IndexSet2D& omega) {
  write_file(path, encode_mask_pgm(omega));
}

// Signed frequency pairs "k1,k2", ascending.
inline std::string encode_mask_csv(const IndexSet2D& omega) {
  std::string out = "k1,k2\n";
  for (const auto& [k1, k2] : omega.members())
    out += std::to_string(k1) + "," + std::to_string(k2) + "\n";
  return out;
}

// 1-based spatial pairs "k,j", row-major ascending.
inline std::string encode_support_csv(const Support2D& s) {
  std::string out = "k,j\n";
  for (const auto& [k, j] : s.members()) out += std::to_string(k) + "," + std::to_string(j) + "\n";
  return out;
}

inline std::string encode_structure_report(const StructureReport& r) {
  std::string out;
  out += "n=" + std::to_string(r.n) + "\n";
  out += "s1=" + std::to_string(r.s1) + "\n";
  out += "s2=" + std::to_string(r.s2) + "\n";
  out += "nu_col=" + (r.nu_col ? fmt_double(*r.nu_col) : std::string("undefined")) + "\n";
  out += "nu_row=" + (r.nu_row ? fmt_double(*r.nu_row) : std::string("undefined")) + "\n";
  out += "T1=" + std::to_string(r.T1) + "\n";
  out += "T2=" + std::to_string(r.T2) + "\n";
  out += "M1=" + std::to_string(r.M1) + "\n";
  out += "M2=" + std::to_string(r.M2) + "\n";
  out += "tol=" + fmt_double(r.tol) + "\n";
  return out;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace tvls
