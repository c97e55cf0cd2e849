// Transform and difference operator tests. Every expected value comes from
// the direct-sum oracles defined below, from hand-computed constants, or
// from closed-form identities; nothing is read back from the implementation.
#include <gtest/gtest.h>

#include <complex>
#include <vector>

#include "tvls/ops.hpp"
#include "tvls/rng.hpp"
#include "tvls/sampling.hpp"

using tvls::cplx;
using tvls::ComplexImage;
using tvls::CVec;
using tvls::kPi;

namespace {

// Direct O(N^2) evaluation of the 1-D transform with 1-based spatial sums.
CVec dft1_direct(const CVec& z) {
  const int n = int(z.size());
  CVec w(z.size());
  for (int k = 0; k < n; ++k) {
    const int kf = tvls::signed_freq(k, n);
    cplx acc = 0;
    for (int j = 1; j <= n; ++j) {
      const double ang = -2.0 * kPi * double(kf) * double(j) / double(n);
      acc += z[std::size_t(j - 1)] * cplx(std::cos(ang), std::sin(ang));
    }
    w[std::size_t(k)] = acc;
  }
  return w;
}

// Direct O(N^4) evaluation of the 2-D transform.
ComplexImage dft2_direct(const ComplexImage& z) {
  const int n = z.n;
  ComplexImage w(n);
  for (int k1 = 1; k1 <= n; ++k1)
    for (int k2 = 1; k2 <= n; ++k2) {
      const int f1 = tvls::signed_freq(k1 - 1, n);
      const int f2 = tvls::signed_freq(k2 - 1, n);
      cplx acc = 0;
      for (int j1 = 1; j1 <= n; ++j1)
        for (int j2 = 1; j2 <= n; ++j2) {
          const double ang = -2.0 * kPi * (double(f1) * j1 + double(f2) * j2) / double(n);
          acc += z.at(j1, j2) * cplx(std::cos(ang), std::sin(ang));
        }
      w.data[std::size_t(k1 - 1) * n + (k2 - 1)] = acc;
    }
  return w;
}

ComplexImage random_image(int n, tvls::SplitMix64& g) {
  ComplexImage z(n);
  for (cplx& c : z.data) c = g.next_complex_gaussian();
  return z;
}

CVec random_vec(int n, tvls::SplitMix64& g) {
  CVec z(static_cast<std::size_t>(n));
  for (cplx& c : z) c = g.next_complex_gaussian();
  return z;
}

double max_abs_diff(const CVec& a, const CVec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_diff(const ComplexImage& a, const ComplexImage& b) {
  return max_abs_diff(a.data, b.data);
}

}  // namespace

TEST(Dft1, MatchesDirectSum) {
  tvls::SplitMix64 g(101);
  for (int n : {2, 3, 4, 7, 8, 12, 16}) {
    const CVec z = random_vec(n, g);
    EXPECT_LT(max_abs_diff(tvls::dft1(z), dft1_direct(z)), 1e-10 * n) << "n=" << n;
  }
}

TEST(Dft1, ImpulsePhase) {
  // z = e_1 at N = 4: entry k is exp(-2 pi i k / 4); slot order 0,1,2,-1.
  CVec z(4, 0.0);
  z[0] = 1.0;
  const CVec w = tvls::dft1(z);
  const double tol = 1e-14;
  EXPECT_NEAR(std::abs(w[0] - cplx(1, 0)), 0, tol);
  EXPECT_NEAR(std::abs(w[1] - cplx(0, -1)), 0, tol);
  EXPECT_NEAR(std::abs(w[2] - cplx(-1, 0)), 0, tol);
  EXPECT_NEAR(std::abs(w[3] - cplx(0, 1)), 0, tol);
}

TEST(Dft1, ConstantVector) {
  // Constant 1: transform is N at frequency 0, zero elsewhere.
  const int n = 8;
  const CVec z(n, 1.0);
  const CVec w = tvls::dft1(z);
  EXPECT_NEAR(std::abs(w[0] - cplx(n, 0)), 0, 1e-12);
  for (int p = 1; p < n; ++p) EXPECT_NEAR(std::abs(w[std::size_t(p)]), 0, 1e-12) << p;
}

TEST(Dft1, RoundTrip) {
  tvls::SplitMix64 g(102);
  for (int n : {2, 5, 8, 16, 31}) {
    const CVec z = random_vec(n, g);
    EXPECT_LT(max_abs_diff(tvls::idft1(tvls::dft1(z)), z), 1e-12 * n) << "n=" << n;
  }
}

TEST(Dft1, Parseval) {
  tvls::SplitMix64 g(103);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + int(g.next_below(13));
    const CVec z = random_vec(n, g);
    double zn = 0, wn = 0;
    for (const cplx& c : z) zn += std::norm(c);
    for (const cplx& c : tvls::dft1(z)) wn += std::norm(c);
    ASSERT_NEAR(wn, n * zn, 1e-10 * (1 + wn));
  }
}

TEST(Dft2, MatchesDirectSum) {
  tvls::SplitMix64 g(104);
  for (int n : {2, 3, 4, 8}) {
    const ComplexImage z = random_image(n, g);
    EXPECT_LT(max_abs_diff(tvls::dft2(z), dft2_direct(z)), 1e-9) << "n=" << n;
  }
}

TEST(Dft2, SeparabilityOverLines) {
  // Transforming all columns then all rows with the 1-D oracle agrees.
  tvls::SplitMix64 g(105);
  const int n = 8;
  const ComplexImage z = random_image(n, g);
  ComplexImage byline(n);
  for (int j = 0; j < n; ++j) {  // columns first
    CVec col(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) col[std::size_t(k)] = z.data[std::size_t(k) * n + j];
    const CVec t = dft1_direct(col);
    for (int k = 0; k < n; ++k) byline.data[std::size_t(k) * n + j] = t[std::size_t(k)];
  }
  for (int k = 0; k < n; ++k) {
    CVec row(byline.data.begin() + std::ptrdiff_t(k) * n,
             byline.data.begin() + std::ptrdiff_t(k + 1) * n);
    const CVec t = dft1_direct(row);
    for (int j = 0; j < n; ++j) byline.data[std::size_t(k) * n + j] = t[std::size_t(j)];
  }
  EXPECT_LT(max_abs_diff(tvls::dft2(z), byline), 1e-10);
}

TEST(Dft2, RoundTripAndParseval) {
  tvls::SplitMix64 g(106);
  for (int n : {2, 4, 6, 16}) {
    const ComplexImage z = random_image(n, g);
    const ComplexImage w = tvls::dft2(z);
    EXPECT_LT(max_abs_diff(tvls::idft2(w), z), 1e-11 * n);
    EXPECT_NEAR(tvls::norm2_sq(w), double(n) * n * tvls::norm2_sq(z), 1e-9 * (1 + tvls::norm2_sq(w)));
  }
}

TEST(Dft2, PlanRejectsAliasedAndMismatched) {
  tvls::Dft2Plan plan(4);
  ComplexImage z(4), out(4), bad(8);
  EXPECT_THROW(plan.forward2(z, z), std::invalid_argument);
  EXPECT_THROW(plan.inverse2(z, z), std::invalid_argument);
  EXPECT_THROW(plan.forward2(bad, out), std::invalid_argument);
}

TEST(Diff, HandComputedColumnCase) {
  // Column phantom: rows 2..3 of a 4x4 hold value 2, elsewhere 0.
  ComplexImage z(4);
  for (int j = 1; j <= 4; ++j) {
    z.at(2, j) = 2.0;
    z.at(3, j) = 2.0;
  }
  const ComplexImage d1 = tvls::diff1(z);
  const ComplexImage d2 = tvls::diff2(z);
  for (int j = 1; j <= 4; ++j) {
    EXPECT_EQ(d1.at(1, j), cplx(0.0));  // wrap: row1 - row4 = 0 - 0
    EXPECT_EQ(d1.at(2, j), cplx(2.0));
    EXPECT_EQ(d1.at(3, j), cplx(0.0));
    EXPECT_EQ(d1.at(4, j), cplx(-2.0));
  }
  for (const cplx& c : d2.data) EXPECT_EQ(c, cplx(0.0));
  EXPECT_NEAR(tvls::tv_norm(z), 16.0, 1e-14);
}

TEST(Diff, ModulationIdentity) {
  // Transforming a circular difference multiplies slot p by 1 - exp(-2 pi i p / N).
  tvls::SplitMix64 g(107);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + int(g.next_below(14));
    const CVec z = random_vec(n, g);
    CVec dz(z.size());
    for (int j = 0; j < n; ++j) dz[std::size_t(j)] = z[std::size_t(j)] - z[std::size_t((j + n - 1) % n)];
    const CVec lhs = tvls::dft1(dz);
    const CVec w = tvls::dft1(z);
    double err = 0;
    for (int p = 0; p < n; ++p) {
      const double ang = -2.0 * kPi * double(p) / double(n);
      const cplx factor = 1.0 - cplx(std::cos(ang), std::sin(ang));
      err = std::max(err, std::abs(lhs[std::size_t(p)] - factor * w[std::size_t(p)]));
    }
    ASSERT_LT(err, 1e-10 * n) << "n=" << n;
  }
}

TEST(Diff, AdjointPairing) {
  tvls::SplitMix64 g(108);
  for (int n : {2, 3, 8, 13}) {
    const ComplexImage z = random_image(n, g);
    const ComplexImage w1 = random_image(n, g), w2 = random_image(n, g);
    const cplx lhs = tvls::inner(tvls::diff1(z), w1) + tvls::inner(tvls::diff2(z), w2);
    const cplx rhs = tvls::inner(z, tvls::adjoint_diff({w1, w2}));
    EXPECT_LT(std::abs(lhs - rhs), 1e-10 * n) << "n=" << n;
  }
}

TEST(Diff, OperatorNormBelowThree) {
  // ||D z||_2 <= sqrt(8) ||z||_2; the solver's step rule relies on this.
  tvls::SplitMix64 g(109);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + int(g.next_below(15));
    const ComplexImage z = random_image(n, g);
    const tvls::GradientPair d = tvls::gradient(z);
    const double gn = std::sqrt(tvls::norm2_sq(d.d1) + tvls::norm2_sq(d.d2));
    ASSERT_LE(gn, std::sqrt(8.0) * tvls::norm2(z) + 1e-12);
  }
}

TEST(Poincare, ZeroMeanImagesSatisfyTvBound) {
  tvls::SplitMix64 g(110);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + int(g.next_below(31));
    ComplexImage z = random_image(n, g);
    cplx mean = 0;
    for (const cplx& c : z.data) mean += c;
    mean /= double(n) * double(n);
    for (cplx& c : z.data) c -= mean;
    ASSERT_LE(tvls::norm2(z), tvls::tv_norm(z) + 1e-12) << "n=" << n;
    ++checked;
  }
  EXPECT_EQ(checked, 1000);
}

TEST(LineEnergy, IdentityBothOrientations) {
  tvls::SplitMix64 g(111);
  int checked = 0;
  for (int n : {4, 8, 16}) {
    for (int trial = 0; trial < 34; ++trial) {
      const ComplexImage z = random_image(n, g);
      const std::size_t cnt = 1 + g.next_below(std::uint64_t(n));
      std::vector<int> omega =
          tvls::unif_without_replacement(tvls::freq_range(n), cnt, g);
      for (auto orient : {tvls::LineOrientation::Rows, tvls::LineOrientation::Cols}) {
        const auto [lhs, rhs] = tvls::line_energy_identity_check(omega, z, orient);
        ASSERT_LT(std::abs(lhs - rhs), 1e-10 * (1 + std::abs(lhs)))
            << "n=" << n << " orient=" << int(orient);
      }
      ++checked;
    }
  }
  EXPECT_GE(checked, 100);
}

TEST(Project, KeepsOnlySelectedFrequencies) {
  tvls::SplitMix64 g(112);
  const int n = 6;
  const ComplexImage z = random_image(n, g);
  tvls::IndexSet2D omega(n);
  omega.insert(0, 0);
  omega.insert(1, -2);
  omega.insert(3, 2);
  const ComplexImage p = tvls::project(omega, z);
  for (int k1 : tvls::freq_range(n))
    for (int k2 : tvls::freq_range(n)) {
      if (omega.contains(k1, k2))
        EXPECT_EQ(p.freq(k1, k2), z.freq(k1, k2));
      else
        EXPECT_EQ(p.freq(k1, k2), cplx(0.0));
    }
}

TEST(TvRestricted, SplitsCleanly) {
  // Restricted TV over a support plus over its complement equals the full TV.
  tvls::SplitMix64 g(113);
  const int n = 8;
  const ComplexImage z = random_image(n, g);
  tvls::Support2D d1(n), d2(n);
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= n; ++j) {
      if (g.next_double() < 0.3) d1.insert(k, j);
      if (g.next_double() < 0.3) d2.insert(k, j);
    }
  const double full = tvls::tv_norm(z);
  const double on = tvls::tv_restricted(z, d1, d2);
  const double off = tvls::tv_restricted(z, d1.complement(), d2.complement());
  EXPECT_NEAR(on + off, full, 1e-10 * (1 + full));
}
