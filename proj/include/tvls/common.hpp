// Frequency indexing conventions and small shared utilities.
//
// Signed frequency range: [N] = {-ceil(N/2)+1, ..., floor(N/2)}, stored at
// position k mod N. Spatial indices are 1-based {1..N} in the operator
// definitions and 0-based in storage.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tvls {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr double kPi = 3.14159265358979323846;

inline int freq_min(int n) { return -((n + 1) / 2) + 1; }
inline int freq_max(int n) { return n / 2; }
inline bool in_freq_range(int k, int n) { return k >= freq_min(n) && k <= freq_max(n); }

// Storage position of signed frequency k in {0..N-1}.
inline int freq_pos(int k, int n) {
  int r = k % n;
  return r < 0 ? r + n : r;
}

// Inverse of freq_pos restricted to [N].
inline int signed_freq(int p, int n) { return p <= n / 2 ? p : p - n; }

// All of [N], ascending.
inline std::vector<int> freq_range(int n) {
  std::vector<int> ks;
  ks.reserve(n > 0 ? n : 0);
  for (int k = freq_min(n); k <= freq_max(n); ++k) ks.push_back(k);
  return ks;
}

}  // namespace tvls
