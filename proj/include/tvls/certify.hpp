// Numerical verification of the per-line dual conditions behind exact
// recovery: restricted injectivity constants and sign-interpolating
// certificates built from the sampled frequencies of each line.
//
// For a line with support Delta in {1..N} and frequencies Omega1, the
// certificate is rho = m^{-1/2} A* P_Omega1 w with rho = sign on Delta and
// max off-support modulus strictly below 1. Lines are deduplicated by
// (support, sign) before solving; when the minimum-norm interpolant
// violates the sup bound, a Lawson reweighting pass minimizes the
// off-support sup norm over the interpolation affine space before the line
// is declared infeasible.
#pragma once

#include <Eigen/Dense>

#include <limits>
#include <map>

#include "tvls/image.hpp"
#include "tvls/ops.hpp"
#include "tvls/sets.hpp"
#include "tvls/structure.hpp"

namespace tvls {

namespace detail {
using CMat = Eigen::MatrixXcd;
using CEVec = Eigen::VectorXcd;

// Rows indexed by frequencies, columns by spatial points, entries
// m^{-1/2} e^{-2 pi i k j / N}.
inline CMat restricted_forward(const std::vector<int>& omega, const std::vector<int>& delta,
                               int n) {
  CMat B(omega.size(), delta.size());
  const double scale = 1.0 / std::sqrt(double(omega.size()));
  for (std::size_t r = 0; r < omega.size(); ++r)
    for (std::size_t c = 0; c < delta.size(); ++c) {
      const double ang = -2.0 * kPi * double(omega[r]) * double(delta[c]) / n;
      B(r, c) = scale * cplx(std::cos(ang), std::sin(ang));
    }
  return B;
}
}  // namespace detail

// Smallest singular value of m^{-1/2} P_Omega A P_Delta; 0 when |Delta|
// exceeds the number of frequencies.
inline double injectivity_constant(const std::vector<int>& omega, const std::vector<int>& delta,
                                   int n) {
  for (int k : omega)
    if (!in_freq_range(k, n)) throw std::invalid_argument("injectivity_constant: omega outside [N]");
  for (int j : delta)
    if (j < 1 || j > n) throw std::invalid_argument("injectivity_constant: delta outside {1..N}");
  if (omega.empty() || delta.empty())
    throw std::invalid_argument("injectivity_constant: empty index set");
  if (delta.size() > omega.size()) return 0.0;
  const detail::CMat B = detail::restricted_forward(omega, delta, n);
  Eigen::JacobiSVD<detail::CMat> svd(B);
  return svd.singularValues().minCoeff();
}

struct Certificate {
  CVec rho;  // length N, evaluated at every spatial point
  CVec w;    // coefficients per sorted Omega entry
  double off_sup_norm = 0;
};

namespace detail {
inline Certificate evaluate_certificate(const std::vector<int>& omega,
                                        const std::vector<int>& delta, const CEVec& w, int n) {
  Certificate cert;
  cert.w.assign(w.data(), w.data() + w.size());
  cert.rho.assign(n, cplx(0));
  const double scale = 1.0 / std::sqrt(double(omega.size()));
  for (int j = 1; j <= n; ++j) {
    cplx acc = 0;
    for (std::size_t r = 0; r < omega.size(); ++r) {
      const double ang = 2.0 * kPi * double(omega[r]) * double(j) / n;
      acc += w[Eigen::Index(r)] * cplx(std::cos(ang), std::sin(ang));
    }
    cert.rho[j - 1] = scale * acc;
  }
  cert.off_sup_norm = 0;
  std::vector<char> on(n + 1, 0);
  for (int j : delta) on[j] = 1;
  for (int j = 1; j <= n; ++j)
    if (!on[j]) cert.off_sup_norm = std::max(cert.off_sup_norm, std::abs(cert.rho[j - 1]));
  return cert;
}
}  // namespace detail

// Minimum-l2-norm w with rho interpolating the sign data on Delta. Throws
// when the Gram system is singular (restricted injectivity fails).
inline Certificate construct_certificate(const std::vector<int>& omega,
                                         const std::vector<int>& delta, const CVec& sign_on_delta,
                                         int n) {
  for (int k : omega)
    if (!in_freq_range(k, n)) throw std::invalid_argument("construct_certificate: omega outside [N]");
  for (int j : delta)
    if (j < 1 || j > n) throw std::invalid_argument("construct_certificate: delta outside {1..N}");
  if (omega.empty()) throw std::invalid_argument("construct_certificate: empty omega");
  if (delta.size() != sign_on_delta.size())
    throw std::invalid_argument("construct_certificate: sign data size mismatch");

  const std::size_t m = omega.size(), s = delta.size();
  if (s == 0) {
    detail::CEVec w = detail::CEVec::Zero(Eigen::Index(m));
    return detail::evaluate_certificate(omega, delta, w, n);
  }

  // Interpolation map M = (restricted forward)^H acting on w: M w = sign.
  const detail::CMat B = detail::restricted_forward(omega, delta, n);  // m x s
  const detail::CMat M = B.adjoint();                                  // s x m
  detail::CEVec rhs(static_cast<Eigen::Index>(s));
  for (std::size_t i = 0; i < s; ++i) rhs[Eigen::Index(i)] = sign_on_delta[i];

  const detail::CMat G = M * M.adjoint();  // s x s Gram
  Eigen::LDLT<detail::CMat> ldlt(G);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("construct_certificate: singular Gram system");
  const detail::CEVec alpha = ldlt.solve(rhs);
  if (!alpha.allFinite() || (G * alpha - rhs).norm() > 1e-8 * std::sqrt(double(s)))
    throw std::runtime_error("construct_certificate: singular Gram system");
  const detail::CEVec w = M.adjoint() * alpha;
  return detail::evaluate_certificate(omega, delta, w, n);
}

// Lawson-reweighted sup-norm reduction over {w : M w = sign}. Returns the
// better of the input certificate and the refined one.
inline Certificate refine_certificate_supnorm(const std::vector<int>& omega,
                                              const std::vector<int>& delta,
                                              const Certificate& start, int n,
                                              int iters = 80) {
  const std::size_t m = omega.size(), s = delta.size();
  if (s == 0 || m <= s) return start;

  const detail::CMat B = detail::restricted_forward(omega, delta, n);
  const detail::CMat M = B.adjoint();  // s x m
  Eigen::JacobiSVD<detail::CMat> svd(M, Eigen::ComputeFullV);
  const Eigen::Index d = Eigen::Index(m - s);
  const detail::CMat Z = svd.matrixV().rightCols(d);  // null-space basis

  // Off-support evaluation rows.
  std::vector<int> off;
  {
    std::vector<char> on(n + 1, 0);
    for (int j : delta) on[j] = 1;
    for (int j = 1; j <= n; ++j)
      if (!on[j]) off.push_back(j);
  }
  const std::size_t q = off.size();
  if (q == 0) return start;
  detail::CMat E(q, m);
  const double scale = 1.0 / std::sqrt(double(m));
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      const double ang = 2.0 * kPi * double(omega[c]) * double(off[r]) / n;
      E(Eigen::Index(r), Eigen::Index(c)) = scale * cplx(std::cos(ang), std::sin(ang));
    }

  detail::CEVec w0(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) w0[Eigen::Index(i)] = start.w[i];
  const detail::CEVec c0 = E * w0;
  const detail::CMat Q = E * Z;  // q x d

  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(Eigen::Index(q), 1.0 / double(q));
  detail::CEVec best_v = detail::CEVec::Zero(d);
  double best_sup = start.off_sup_norm;
  detail::CMat QL(Eigen::Index(q), d);
  detail::CEVec cw(static_cast<Eigen::Index>(q));
  for (int t = 0; t < iters; ++t) {
    for (Eigen::Index r = 0; r < Eigen::Index(q); ++r) {
      QL.row(r) = Q.row(r) * lambda[r];
      cw[r] = c0[r] * lambda[r];
    }
    detail::CMat H = Q.adjoint() * QL;
    H.diagonal().array() += 1e-14;
    const detail::CEVec rhs = -(Q.adjoint() * cw);
    const detail::CEVec v = H.ldlt().solve(rhs);
    if (!v.allFinite()) break;
    const detail::CEVec r = c0 + Q * v;
    double sup = 0;
    for (Eigen::Index i = 0; i < r.size(); ++i) sup = std::max(sup, std::abs(r[i]));
    if (sup < best_sup) {
      best_sup = sup;
      best_v = v;
    }
    double tot = 0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      lambda[i] = std::max(lambda[i] * std::abs(r[i]), 1e-300);
      tot += lambda[i];
    }
    lambda /= tot;
  }
  if (best_sup >= start.off_sup_norm) return start;
  const detail::CEVec w = w0 + Z * best_v;
  return detail::evaluate_certificate(omega, delta, w, n);
}

struct LineClassReport {
  char orientation = 'c';  // 'c' for columns of Delta1, 'r' for rows of Delta2
  int rep_index = 0;       // representative line index, 1-based
  int count = 0;           // lines sharing this (support, sign) class
  int support_size = 0;
  double sigma_min = 0;
  double off_sup_norm = 0;
  bool feasible = false;
};

struct CertificateReport {
  double c1_min = std::numeric_limits<double>::infinity();
  double c2_max = 0;
  double L_sq = 0;  // max over directions of the summed certificate norms
  std::vector<LineClassReport> per_line;
  bool all_pass = false;
  bool supports_consistent = true;
};

// Strict feasibility margin on the off-support sup norm.
inline constexpr double kCertSupMargin = 1e-6;

namespace detail {
struct LineClassKey {
  std::vector<int> support;
  std::vector<std::pair<double, double>> sign;
  bool operator<(const LineClassKey& o) const {
    if (support != o.support) return support < o.support;
    return sign < o.sign;
  }
};

struct LineClassAccum {
  int rep_index = 0;
  int count = 0;
};
}  // namespace detail

// Checks the dual conditions for every column line of Delta1 against omega1
// and every row line of Delta2 against omega2, deduplicating identical
// (support, sign) classes. Lines with empty support pass vacuously.
inline CertificateReport verify_dual_conditions(const ComplexImage& x, const Support2D& d1,
                                                const Support2D& d2,
                                                const std::vector<int>& omega1,
                                                const std::vector<int>& omega2) {
  const int n = x.n;
  if (d1.side() != n || d2.side() != n)
    throw std::invalid_argument("verify_dual_conditions: dimension mismatch");

  const GradientPair g = gradient(x);
  const double tol = default_support_tol(g);
  CertificateReport report;
  report.supports_consistent =
      d1 == support_of(g.d1, tol) && d2 == support_of(g.d2, tol);

  bool every_line_ok = true;

  const auto run_direction = [&](char orient, const Support2D& d, const ComplexImage& grad,
                                 const std::vector<int>& omega) {
    std::map<detail::LineClassKey, detail::LineClassAccum> classes;
    for (int line = 1; line <= n; ++line) {
      detail::LineClassKey key;
      key.support = orient == 'c' ? d.column(line) : d.row(line);
      key.sign.reserve(key.support.size());
      for (int idx : key.support) {
        const cplx v = orient == 'c' ? grad.at(idx, line) : grad.at(line, idx);
        const cplx sg = sgn(v);
        key.sign.emplace_back(sg.real(), sg.imag());
      }
      auto [it, inserted] = classes.try_emplace(std::move(key));
      if (inserted) it->second.rep_index = line;
      ++it->second.count;
    }

    double sum_w = 0;
    for (const auto& [key, acc] : classes) {
      LineClassReport lc;
      lc.orientation = orient;
      lc.rep_index = acc.rep_index;
      lc.count = acc.count;
      lc.support_size = int(key.support.size());
      if (key.support.empty()) {
        lc.sigma_min = std::numeric_limits<double>::infinity();
        lc.off_sup_norm = 0;
        lc.feasible = true;
        report.per_line.push_back(lc);
        continue;
      }
      if (omega.empty()) {
        lc.sigma_min = 0;
        lc.off_sup_norm = std::numeric_limits<double>::infinity();
        lc.feasible = false;
        every_line_ok = false;
        report.per_line.push_back(lc);
        report.c1_min = 0;
        continue;
      }
      lc.sigma_min = injectivity_constant(omega, key.support, n);
      report.c1_min = std::min(report.c1_min, lc.sigma_min);
      CVec sign(key.sign.size());
      for (std::size_t i = 0; i < key.sign.size(); ++i)
        sign[i] = cplx(key.sign[i].first, key.sign[i].second);
      try {
        Certificate cert = construct_certificate(omega, key.support, sign, n);
        if (cert.off_sup_norm >= 1.0 - kCertSupMargin)
          cert = refine_certificate_supnorm(omega, key.support, cert, n);
        lc.off_sup_norm = cert.off_sup_norm;
        lc.feasible = lc.sigma_min > 0 && cert.off_sup_norm < 1.0 - kCertSupMargin;
        sum_w += double(acc.count) * norm2(cert.w);
      } catch (const std::runtime_error&) {
        lc.off_sup_norm = std::numeric_limits<double>::infinity();
        lc.feasible = false;
      }
      report.c2_max = std::max(report.c2_max, lc.off_sup_norm);
      if (!lc.feasible) every_line_ok = false;
      report.per_line.push_back(lc);
    }
    report.L_sq = std::max(report.L_sq, sum_w);
  };

  run_direction('c', d1, g.d1, omega1);
  run_direction('r', d2, g.d2, omega2);

  report.all_pass =
      every_line_ok && report.c1_min > 0 && report.c2_max < 1.0 - kCertSupMargin;
  return report;
}

// Reference constant c(M) = max{0.99993, 1 - 0.92 (M^2 - 1) / N^2}.
inline double c_of_M(int M, int N) {
  if (M < 1 || N < 1) throw std::invalid_argument("c_of_M: arguments must be positive");
  return std::max(0.99993, 1.0 - 0.92 * (double(M) * M - 1.0) / (double(N) * N));
}

struct ProofConstants {
  double c1 = 0;  // per-line injectivity lower bound
};

inline ProofConstants proof_constants() {
  ProofConstants p;
  p.c1 = 3.0 / (2.0 * std::sqrt(5.0));
  return p;
}

// 1D sample-budget form max{log^2(M/eps), s log(s/eps) log(M/eps)}.
inline double certificate_budget(double s, double M, double eps) {
  if (!(s >= 1) || !(M >= 1) || !(eps > 0) || !(eps < 1))
    throw std::invalid_argument("certificate_budget: bad arguments");
  const double lm = std::log(M / eps);
  return std::max(lm * lm, s * std::log(s / eps) * lm);
}

}  // namespace tvls
