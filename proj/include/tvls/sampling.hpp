// Sample-set construction: Cartesian line unions, theorem-driven budgets,
// and seeded random draws.
#pragma once

#include <cmath>
#include <cstdint>

#include "tvls/rng.hpp"
#include "tvls/sets.hpp"

namespace tvls {

// Uniform m-subset of the universe, without replacement, by partial
// Fisher-Yates with unbiased index draws. Result is sorted ascending.
inline std::vector<int> unif_without_replacement(std::vector<int> universe, std::size_t m,
                                                 SplitMix64& g) {
  if (m > universe.size())
    throw std::invalid_argument("unif_without_replacement: m exceeds universe size");
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + std::size_t(g.next_below(universe.size() - i));
    std::swap(universe[i], universe[j]);
  }
  universe.resize(m);
  std::sort(universe.begin(), universe.end());
  return universe;
}

inline std::vector<int> unif_without_replacement(const std::vector<int>& universe, std::size_t m,
                                                 std::uint64_t seed) {
  SplitMix64 g(seed);
  return unif_without_replacement(universe, m, g);
}

// Union of full Cartesian lines plus the zero frequency:
// Omega = {(0,0)} u (Omega1 x [N]) u ([N] x Omega2).
struct SampleSet {
  IndexSet2D omega;
  std::vector<int> omega1, omega2;  // line indices, sorted
  bool includes_zero = true;
  std::size_t m = 0;
  bool line_structured = true;

  explicit SampleSet(int n) : omega(n) {}
};

inline SampleSet cartesian_line_set(std::vector<int> omega1, std::vector<int> omega2, int n) {
  for (int k : omega1)
    if (!in_freq_range(k, n)) throw std::invalid_argument("cartesian_line_set: omega1 outside [N]");
  for (int k : omega2)
    if (!in_freq_range(k, n)) throw std::invalid_argument("cartesian_line_set: omega2 outside [N]");
  std::sort(omega1.begin(), omega1.end());
  std::sort(omega2.begin(), omega2.end());
  omega1.erase(std::unique(omega1.begin(), omega1.end()), omega1.end());
  omega2.erase(std::unique(omega2.begin(), omega2.end()), omega2.end());

  SampleSet s(n);
  s.omega1 = omega1;
  s.omega2 = omega2;
  s.omega.insert(0, 0);
  for (int k1 : omega1)
    for (int k2 = freq_min(n); k2 <= freq_max(n); ++k2) s.omega.insert(k1, k2);
  for (int k2 : omega2)
    for (int k1 = freq_min(n); k1 <= freq_max(n); ++k1) s.omega.insert(k1, k2);
  s.m = s.omega.size();
  return s;
}

// m_i = min(M_i, ceil(C * s_i * log(T_i s_i / eps) * log(T_i M_i / eps))),
// natural logs. consistent reports the preamble condition
// s_i log(T_i s_i / eps) >= log(T_i M_i / eps) for both directions.
struct TheoremBudget {
  int m1 = 0, m2 = 0;
  bool consistent = false;
};

inline TheoremBudget theorem_budget(int s1, int s2, int T1, int T2, int M1, int M2, double eps,
                                    double C = 1.0) {
  if (s1 < 1 || s2 < 1 || T1 < 1 || T2 < 1 || M1 < 1 || M2 < 1)
    throw std::invalid_argument("theorem_budget: counts must be positive");
  if (!(eps > 0) || !(eps < 1)) throw std::invalid_argument("theorem_budget: eps must be in (0,1)");
  if (!(C > 0)) throw std::invalid_argument("theorem_budget: C must be positive");

  const auto raw = [&](int s, int T, int M) {
    return C * s * std::log(double(T) * s / eps) * std::log(double(T) * M / eps);
  };
  TheoremBudget b;
  b.m1 = std::min(M1, int(std::ceil(raw(s1, T1, M1))));
  b.m2 = std::min(M2, int(std::ceil(raw(s2, T2, M2))));
  b.consistent = s1 * std::log(double(T1) * s1 / eps) >= std::log(double(T1) * M1 / eps) &&
                 s2 * std::log(double(T2) * s2 / eps) >= std::log(double(T2) * M2 / eps);
  return b;
}

struct LineSamplingSpec {
  int n = 0;
  int M1 = 0, M2 = 0;  // line index ranges [M_i]; 0 means no lines in that direction
  int m1 = 0, m2 = 0;  // ignored when deterministic
  std::uint64_t seed = 0;
  bool deterministic = false;
};

// Omega_i drawn Unif([M_i], m_i), or all of [M_i] when deterministic.
inline SampleSet draw_theorem_sampling(const LineSamplingSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("draw_theorem_sampling: n must be at least 2");
  if (spec.M1 < 0 || spec.M1 > spec.n || spec.M2 < 0 || spec.M2 > spec.n)
    throw std::invalid_argument("draw_theorem_sampling: M out of range");
  std::vector<int> omega1, omega2;
  SplitMix64 g(spec.seed);
  if (spec.deterministic) {
    omega1 = freq_range(spec.M1);
    omega2 = freq_range(spec.M2);
  } else {
    if (spec.M1 > 0 && (spec.m1 < 1 || spec.m1 > spec.M1))
      throw std::invalid_argument("draw_theorem_sampling: need 1 <= m1 <= M1");
    if (spec.M2 > 0 && (spec.m2 < 1 || spec.m2 > spec.M2))
      throw std::invalid_argument("draw_theorem_sampling: need 1 <= m2 <= M2");
    if (spec.M1 > 0) {
      SplitMix64 g1 = g.fork(1);
      omega1 = unif_without_replacement(freq_range(spec.M1), std::size_t(spec.m1), g1);
    }
    if (spec.M2 > 0) {
      SplitMix64 g2 = g.fork(2);
      omega2 = unif_without_replacement(freq_range(spec.M2), std::size_t(spec.m2), g2);
    }
  }
  return cartesian_line_set(std::move(omega1), std::move(omega2), spec.n);
}

// m grid points drawn uniformly without replacement; (0,0) always included.
inline SampleSet uniform_pointwise_mask(int n, std::size_t m, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("uniform_pointwise_mask: n must be at least 2");
  const std::size_t total = std::size_t(n) * std::size_t(n);
  if (m < 1 || m > total) throw std::invalid_argument("uniform_pointwise_mask: m out of range");

  std::vector<int> universe;  // storage offsets excluding DC
  universe.reserve(total - 1);
  for (std::size_t i = 0; i < total; ++i)
    if (i != 0) universe.push_back(int(i));
  SplitMix64 g(seed);
  const std::vector<int> chosen = unif_without_replacement(universe, m - 1, g);

  SampleSet s(n);
  s.line_structured = false;
  s.omega.insert(0, 0);
  for (int off : chosen) {
    const int p1 = off / n, p2 = off % n;
    s.omega.insert(signed_freq(p1, n), signed_freq(p2, n));
  }
  s.m = s.omega.size();
  return s;
}

}  // namespace tvls
