// N x N complex images and gradient pairs.
#pragma once

#include <cmath>
#include <cstddef>

#include "tvls/common.hpp"

namespace tvls {

// Row-major N x N complex grid. The same container holds spatial images
// (1-based indices (k,j) in {1..N}^2) and frequency-domain images (signed
// pairs in [N]^2 stored at (k1 mod N, k2 mod N)).
struct ComplexImage {
  int n = 0;
  CVec data;

  ComplexImage() = default;
  explicit ComplexImage(int side) : n(side), data(std::size_t(side) * std::size_t(side)) {
    if (side < 2) throw std::invalid_argument("ComplexImage: side must be at least 2");
  }

  cplx& at(int k, int j) { return data[std::size_t(k - 1) * n + std::size_t(j - 1)]; }
  const cplx& at(int k, int j) const { return data[std::size_t(k - 1) * n + std::size_t(j - 1)]; }

  cplx& freq(int k1, int k2) { return data[std::size_t(freq_pos(k1, n)) * n + freq_pos(k2, n)]; }
  const cplx& freq(int k1, int k2) const {
    return data[std::size_t(freq_pos(k1, n)) * n + freq_pos(k2, n)];
  }

  std::size_t size() const { return data.size(); }
};

struct GradientPair {
  ComplexImage d1;  // vertical differences, z(k,j) - z(k-1,j)
  ComplexImage d2;  // horizontal differences, z(k,j) - z(k,j-1)
};

inline double norm2_sq(const ComplexImage& z) {
  double s = 0;
  for (const cplx& v : z.data) s += std::norm(v);
  return s;
}

inline double norm2(const ComplexImage& z) { return std::sqrt(norm2_sq(z)); }

inline double norm1(const ComplexImage& z) {
  double s = 0;
  for (const cplx& v : z.data) s += std::abs(v);
  return s;
}

inline double norm_inf(const ComplexImage& z) {
  double s = 0;
  for (const cplx& v : z.data) s = std::max(s, std::abs(v));
  return s;
}

inline double norm2(const CVec& v) {
  double s = 0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

// Complex inner product, linear in the first argument.
inline cplx inner(const ComplexImage& a, const ComplexImage& b) {
  if (a.n != b.n) throw std::invalid_argument("inner: size mismatch");
  cplx s = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * std::conj(b.data[i]);
  return s;
}

inline ComplexImage operator-(const ComplexImage& a, const ComplexImage& b) {
  if (a.n != b.n) throw std::invalid_argument("operator-: size mismatch");
  ComplexImage out(a.n);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] - b.data[i];
  return out;
}

inline ComplexImage operator+(const ComplexImage& a, const ComplexImage& b) {
  if (a.n != b.n) throw std::invalid_argument("operator+: size mismatch");
  ComplexImage out(a.n);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] + b.data[i];
  return out;
}

inline ComplexImage operator*(cplx c, const ComplexImage& a) {
  ComplexImage out(a.n);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = c * a.data[i];
  return out;
}

}  // namespace tvls
