// Fourier and circular finite-difference operators.
//
// The 1D transform is (A z)_k = sum_{j=1}^{N} z_j e^{-2 pi i k j / N} for
// k in [N]; the spatial sum starts at j = 1, which differs from the usual
// 0-based FFT by a per-frequency phase e^{-2 pi i k / N}. The 2D transform
// applies A down every column, then across every row. Norms: ||A z||_2^2 =
// N ||z||_2^2 and ||A~ z||_2^2 = N^2 ||z||_2^2.
#pragma once

#include <unsupported/Eigen/FFT>

#include <utility>

#include "tvls/common.hpp"
#include "tvls/image.hpp"
#include "tvls/sets.hpp"

namespace tvls {

// Reusable transform plan; owns FFT tables and scratch buffers. One plan per
// thread of execution; calls on the same plan are not reentrant.
class Dft2Plan {
 public:
  explicit Dft2Plan(int n) : n_(n), twiddle_(n), a_(n), b_(n), tmp_(n) {
    if (n < 1) throw std::invalid_argument("Dft2Plan: side must be positive");
    for (int p = 0; p < n; ++p) {
      const double ang = -2.0 * kPi * p / n;
      twiddle_[p] = {std::cos(ang), std::sin(ang)};
    }
  }

  int side() const { return n_; }

  // in and out must not alias tmp_; out may equal in only if the FFT backend
  // tolerates it, so callers here always pass distinct buffers.
  void forward1(const cplx* in, cplx* out) {
    fft_.fwd(out, in, n_);
    for (int p = 0; p < n_; ++p) out[p] *= twiddle_[p];
  }

  void inverse1(const cplx* in, cplx* out) {
    for (int p = 0; p < n_; ++p) tmp_[p] = in[p] * std::conj(twiddle_[p]);
    fft_.inv(out, tmp_.data(), n_);
  }

  // Columns first (index k1), then rows (index k2).
  void forward2(const ComplexImage& z, ComplexImage& out) {
    require_side(z);
    if (&z == &out) throw std::invalid_argument("forward2: in-place call not supported");
    if (out.n != n_) out = ComplexImage(n_);
    for (int c = 0; c < n_; ++c) {
      for (int r = 0; r < n_; ++r) a_[r] = z.data[std::size_t(r) * n_ + c];
      forward1(a_.data(), b_.data());
      for (int r = 0; r < n_; ++r) out.data[std::size_t(r) * n_ + c] = b_[r];
    }
    for (int r = 0; r < n_; ++r) {
      cplx* row = out.data.data() + std::size_t(r) * n_;
      std::copy(row, row + n_, b_.data());
      forward1(b_.data(), row);
    }
  }

  void inverse2(const ComplexImage& w, ComplexImage& out) {
    require_side(w);
    if (&w == &out) throw std::invalid_argument("inverse2: in-place call not supported");
    if (out.n != n_) out = ComplexImage(n_);
    for (int r = 0; r < n_; ++r) {
      const cplx* row = w.data.data() + std::size_t(r) * n_;
      inverse1(row, out.data.data() + std::size_t(r) * n_);
    }
    for (int c = 0; c < n_; ++c) {
      for (int r = 0; r < n_; ++r) b_[r] = out.data[std::size_t(r) * n_ + c];
      inverse1(b_.data(), a_.data());
      for (int r = 0; r < n_; ++r) out.data[std::size_t(r) * n_ + c] = a_[r];
    }
  }

 private:
  void require_side(const ComplexImage& z) const {
    if (z.n != n_) throw std::invalid_argument("Dft2Plan: image side mismatch");
  }

  int n_;
  Eigen::FFT<double> fft_;
  CVec twiddle_, a_, b_, tmp_;
};

inline CVec dft1(const CVec& z) {
  if (z.empty()) throw std::invalid_argument("dft1: empty input");
  Dft2Plan plan(int(z.size()));
  CVec out(z.size());
  plan.forward1(z.data(), out.data());
  return out;
}

inline CVec idft1(const CVec& w) {
  if (w.empty()) throw std::invalid_argument("idft1: empty input");
  Dft2Plan plan(int(w.size()));
  CVec out(w.size());
  plan.inverse1(w.data(), out.data());
  return out;
}

inline ComplexImage dft2(const ComplexImage& z) {
  Dft2Plan plan(z.n);
  ComplexImage out(z.n);
  plan.forward2(z, out);
  return out;
}

inline ComplexImage idft2(const ComplexImage& w) {
  Dft2Plan plan(w.n);
  ComplexImage out(w.n);
  plan.inverse2(w, out);
  return out;
}

// Circular vertical differences: (D1 z)(k,j) = z(k,j) - z(k-1,j), row 0 wraps to row N.
inline void diff1_into(const ComplexImage& z, ComplexImage& out) {
  const int n = z.n;
  if (out.n != n) out = ComplexImage(n);
  for (int r = 0; r < n; ++r) {
    const int rp = (r + n - 1) % n;
    const cplx* cur = z.data.data() + std::size_t(r) * n;
    const cplx* prev = z.data.data() + std::size_t(rp) * n;
    cplx* o = out.data.data() + std::size_t(r) * n;
    for (int c = 0; c < n; ++c) o[c] = cur[c] - prev[c];
  }
}

// Circular horizontal differences: (D2 z)(k,j) = z(k,j) - z(k,j-1), column 0 wraps.
inline void diff2_into(const ComplexImage& z, ComplexImage& out) {
  const int n = z.n;
  if (out.n != n) out = ComplexImage(n);
  for (int r = 0; r < n; ++r) {
    const cplx* cur = z.data.data() + std::size_t(r) * n;
    cplx* o = out.data.data() + std::size_t(r) * n;
    for (int c = 0; c < n; ++c) o[c] = cur[c] - cur[(c + n - 1) % n];
  }
}

inline ComplexImage diff1(const ComplexImage& z) {
  ComplexImage out(z.n);
  diff1_into(z, out);
  return out;
}

inline ComplexImage diff2(const ComplexImage& z) {
  ComplexImage out(z.n);
  diff2_into(z, out);
  return out;
}

inline GradientPair gradient(const ComplexImage& z) {
  GradientPair g;
  g.d1 = diff1(z);
  g.d2 = diff2(z);
  return g;
}

// Adjoint of the stacked difference map: <D z, g> = <z, adjoint_diff(g)>.
inline void adjoint_diff_into(const ComplexImage& g1, const ComplexImage& g2, ComplexImage& out) {
  const int n = g1.n;
  if (g2.n != n) throw std::invalid_argument("adjoint_diff: component size mismatch");
  if (out.n != n) out = ComplexImage(n);
  for (int r = 0; r < n; ++r) {
    const int rn = (r + 1) % n;
    const cplx* a = g1.data.data() + std::size_t(r) * n;
    const cplx* an = g1.data.data() + std::size_t(rn) * n;
    const cplx* b = g2.data.data() + std::size_t(r) * n;
    cplx* o = out.data.data() + std::size_t(r) * n;
    for (int c = 0; c < n; ++c) o[c] = a[c] - an[c] + b[c] - b[(c + 1) % n];
  }
}

inline ComplexImage adjoint_diff(const GradientPair& g) {
  ComplexImage out(g.d1.n);
  adjoint_diff_into(g.d1, g.d2, out);
  return out;
}

// Frequency-domain restriction: keep entries of w indexed by Omega, zero the rest.
inline ComplexImage project(const IndexSet2D& omega, const ComplexImage& w) {
  if (omega.side() != w.n) throw std::invalid_argument("project: dimension mismatch");
  const int n = w.n;
  ComplexImage out(n);
  for (int p1 = 0; p1 < n; ++p1)
    for (int p2 = 0; p2 < n; ++p2) {
      const std::size_t i = std::size_t(p1) * n + p2;
      out.data[i] = omega.contains_pos(p1, p2) ? w.data[i] : cplx(0);
    }
  return out;
}

// Anisotropic total variation ||D1 z||_1 + ||D2 z||_1.
inline double tv_norm(const ComplexImage& z) {
  const int n = z.n;
  double s = 0;
  for (int r = 0; r < n; ++r) {
    const int rp = (r + n - 1) % n;
    const cplx* cur = z.data.data() + std::size_t(r) * n;
    const cplx* prev = z.data.data() + std::size_t(rp) * n;
    for (int c = 0; c < n; ++c)
      s += std::abs(cur[c] - prev[c]) + std::abs(cur[c] - cur[(c + n - 1) % n]);
  }
  return s;
}

// Restricted TV: gradient magnitudes summed only over the given supports.
inline double tv_restricted(const ComplexImage& z, const Support2D& d1, const Support2D& d2) {
  if (d1.side() != z.n || d2.side() != z.n)
    throw std::invalid_argument("tv_restricted: dimension mismatch");
  double s = 0;
  for (const auto& [k, j] : d1.members()) {
    const int kp = k == 1 ? z.n : k - 1;
    s += std::abs(z.at(k, j) - z.at(kp, j));
  }
  for (const auto& [k, j] : d2.members()) {
    const int jp = j == 1 ? z.n : j - 1;
    s += std::abs(z.at(k, j) - z.at(k, jp));
  }
  return s;
}

enum class LineOrientation {
  Rows,  // samples Omega x [N]: per-line first index fixed; sees 1D transforms of columns
  Cols,  // samples [N] x Omega: per-line second index fixed; sees 1D transforms of rows
};

// Both sides of the line-restriction energy identity:
//   || P_(Omega x [N]) A~ z ||_2^2 = N * sum_k || P_Omega A z^[col,k] ||_2^2
// (and the transposed statement for [N] x Omega with rows).
inline std::pair<double, double> line_energy_identity_check(const std::vector<int>& omega,
                                                            const ComplexImage& z,
                                                            LineOrientation orient) {
  const int n = z.n;
  for (int k : omega)
    if (!in_freq_range(k, n))
      throw std::invalid_argument("line_energy_identity_check: frequency outside [N]");

  const ComplexImage w = dft2(z);
  double lhs = 0;
  for (int k : omega) {
    for (int other = freq_min(n); other <= freq_max(n); ++other) {
      lhs += orient == LineOrientation::Rows ? std::norm(w.freq(k, other))
                                             : std::norm(w.freq(other, k));
    }
  }

  Dft2Plan plan(n);
  CVec line(n), hat(n);
  double rhs = 0;
  for (int idx = 0; idx < n; ++idx) {
    if (orient == LineOrientation::Rows) {
      for (int r = 0; r < n; ++r) line[r] = z.data[std::size_t(r) * n + idx];
    } else {
      const cplx* row = z.data.data() + std::size_t(idx) * n;
      std::copy(row, row + n, line.begin());
    }
    plan.forward1(line.data(), hat.data());
    for (int k : omega) rhs += std::norm(hat[freq_pos(k, n)]);
  }
  return {lhs, double(n) * rhs};
}

}  // namespace tvls
