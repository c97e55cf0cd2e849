// Gradient-support structure analyzers: per-line cardinalities, minimum
// separations, distinct line counts, and the implied sampling bandwidths.
//
// Separation naming. min_sep_rows scans pairs (j,n),(k,n) that differ in the
// FIRST coordinate while the second is fixed, i.e. the gaps between the rows
// present in each column; min_sep_cols is the transposed formula. The two
// names are kept as-is even though they read backwards. In StructureReport,
// nu_col is the separation along the columns of Delta1 (= min_sep_rows of
// Delta1) and drives M1; nu_row is the separation along the rows of Delta2
// (= min_sep_cols of Delta2) and drives M2. Distances are linear, |j - k|/N,
// with no circular wrap.
#pragma once

#include <map>
#include <optional>

#include "tvls/image.hpp"
#include "tvls/ops.hpp"
#include "tvls/sets.hpp"

namespace tvls {

inline cplx sgn(cplx w) {
  const double a = std::abs(w);
  return a == 0 ? cplx(0) : w / a;
}

// Entries with magnitude strictly above tol.
inline Support2D support_of(const ComplexImage& z, double tol) {
  if (tol < 0) throw std::invalid_argument("support_of: tol must be nonnegative");
  Support2D s(z.n);
  for (int k = 1; k <= z.n; ++k)
    for (int j = 1; j <= z.n; ++j)
      if (std::abs(z.at(k, j)) > tol) s.insert(k, j);
  return s;
}

// Entrywise sgn with entries at or below tol mapped to 0.
inline ComplexImage sign_image(const ComplexImage& z, double tol = 0) {
  ComplexImage out(z.n);
  for (std::size_t i = 0; i < z.data.size(); ++i)
    out.data[i] = std::abs(z.data[i]) > tol ? z.data[i] / std::abs(z.data[i]) : cplx(0);
  return out;
}

// s1: largest number of support rows in any single column.
inline int column_cardinality(const Support2D& d) {
  int best = 0;
  for (int j = 1; j <= d.side(); ++j) best = std::max(best, int(d.column(j).size()));
  return best;
}

// s2: largest number of support columns in any single row.
inline int row_cardinality(const Support2D& d) {
  int best = 0;
  for (int k = 1; k <= d.side(); ++k) best = std::max(best, int(d.row(k).size()));
  return best;
}

// min over n of min |j-k|/N for (j,n),(k,n) in Delta; empty when no column
// holds two support rows.
inline std::optional<double> min_sep_rows(const Support2D& d) {
  const int n = d.side();
  std::optional<double> best;
  for (int col = 1; col <= n; ++col) {
    const std::vector<int> rows = d.column(col);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double sep = double(rows[i] - rows[i - 1]) / n;
      if (!best || sep < *best) best = sep;
    }
  }
  return best;
}

// Transposed formula: pairs (n,j),(n,k) within a fixed row.
inline std::optional<double> min_sep_cols(const Support2D& d) {
  const int n = d.side();
  std::optional<double> best;
  for (int row = 1; row <= n; ++row) {
    const std::vector<int> cols = d.row(row);
    for (std::size_t i = 1; i < cols.size(); ++i) {
      const double sep = double(cols[i] - cols[i - 1]) / n;
      if (!best || sep < *best) best = sep;
    }
  }
  return best;
}

// Number of distinct columns of z, compared entrywise as exact values.
inline int distinct_column_supports(const ComplexImage& z) {
  std::map<std::vector<std::pair<double, double>>, int> seen;
  for (int j = 1; j <= z.n; ++j) {
    std::vector<std::pair<double, double>> key;
    key.reserve(z.n);
    for (int k = 1; k <= z.n; ++k) {
      const cplx v = z.at(k, j);
      key.emplace_back(v.real(), v.imag());
    }
    seen.emplace(std::move(key), j);
  }
  return int(seen.size());
}

inline int distinct_row_supports(const ComplexImage& z) {
  std::map<std::vector<std::pair<double, double>>, int> seen;
  for (int k = 1; k <= z.n; ++k) {
    std::vector<std::pair<double, double>> key;
    key.reserve(z.n);
    for (int j = 1; j <= z.n; ++j) {
      const cplx v = z.at(k, j);
      key.emplace_back(v.real(), v.imag());
    }
    seen.emplace(std::move(key), k);
  }
  return int(seen.size());
}

struct StructureReport {
  int n = 0;
  int s1 = 0, s2 = 0;
  std::optional<double> nu_col;  // separation along columns of Delta1; drives M1
  std::optional<double> nu_row;  // separation along rows of Delta2; drives M2
  int T1 = 0, T2 = 0;
  int M1 = 0, M2 = 0;
  double tol = 0;
};

// Support tol default: 1e-9 times the largest gradient magnitude.
inline double default_support_tol(const GradientPair& g) {
  return 1e-9 * std::max(norm_inf(g.d1), norm_inf(g.d2));
}

// Spatial-domain restriction used by the sign-pattern summaries.
inline ComplexImage project_support(const ComplexImage& z, const Support2D& s) {
  if (s.side() != z.n) throw std::invalid_argument("project_support: dimension mismatch");
  ComplexImage out(z.n);
  for (int k = 1; k <= z.n; ++k)
    for (int j = 1; j <= z.n; ++j)
      if (s.contains(k, j)) out.at(k, j) = z.at(k, j);
  return out;
}

// Summary of a signal's gradient structure. tol < 0 selects the default
// rule; fallback_M (or floor(N/4) when 0) stands in for M when the
// corresponding separation is undefined.
inline StructureReport structure_summary(const ComplexImage& x, double tol = -1.0,
                                         int fallback_M = 0) {
  const GradientPair g = gradient(x);
  if (tol < 0) tol = default_support_tol(g);
  const Support2D d1 = support_of(g.d1, tol);
  const Support2D d2 = support_of(g.d2, tol);

  StructureReport r;
  r.n = x.n;
  r.tol = tol;
  r.s1 = column_cardinality(d1);
  r.s2 = row_cardinality(d2);
  r.nu_col = min_sep_rows(d1);
  r.nu_row = min_sep_cols(d2);
  r.T1 = distinct_column_supports(project_support(sign_image(g.d1, tol), d1));
  r.T2 = distinct_row_supports(project_support(sign_image(g.d2, tol), d2));
  const int fallback = fallback_M > 0 ? fallback_M : x.n / 4;
  r.M1 = r.nu_col ? int(std::floor(2.0 / *r.nu_col + 1e-9)) : fallback;
  r.M2 = r.nu_row ? int(std::floor(2.0 / *r.nu_row + 1e-9)) : fallback;
  return r;
}

}  // namespace tvls
