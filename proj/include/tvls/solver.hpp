// Constrained anisotropic TV minimization:
//
//   min ||z||_TV  subject to  || P_Omega A~ z - xi ||_2 <= delta sqrt(m)
//
// solved by a first-order primal-dual iteration on
// min_z max_{||p||_inf <= 1} <D z, p> + i_ball(P_Omega A~ z). The dual block
// handles the difference map; the constraint is applied exactly each step:
// A~ / N is unitary, so projecting onto the feasible set is a closed-form
// ball projection in the transform domain. Iterates are therefore feasible
// from the first step on, and the solver is single-threaded and
// deterministic per call.
#pragma once

#include <cstdint>

#include "tvls/image.hpp"
#include "tvls/ops.hpp"
#include "tvls/rng.hpp"
#include "tvls/sampling.hpp"
#include "tvls/sets.hpp"
#include "tvls/structure.hpp"

namespace tvls {

struct RecoveryProblem {
  int n = 0;
  SampleSet omega;
  ComplexImage xi;  // measurements, supported on omega
  double delta = 0;
  std::size_t m = 0;

  explicit RecoveryProblem(int side) : omega(side), xi(side) { n = side; }
};

// xi = P_Omega A~ x + eta with eta supported on Omega and ||eta||_2 exactly
// delta sqrt(m) (complex Gaussian direction, rescaled).
inline RecoveryProblem measure(const ComplexImage& x, const SampleSet& omega, double delta,
                               std::uint64_t seed) {
  if (omega.omega.side() != x.n) throw std::invalid_argument("measure: dimension mismatch");
  if (delta < 0) throw std::invalid_argument("measure: delta must be nonnegative");

  RecoveryProblem prob(x.n);
  prob.omega = omega;
  prob.delta = delta;
  prob.m = omega.m;
  prob.xi = project(omega.omega, dft2(x));

  if (delta > 0) {
    SplitMix64 g = SplitMix64(seed).fork(0x6e6f697365ULL);
    const std::vector<std::size_t> offs = omega.omega.storage_offsets();
    CVec eta(offs.size());
    double nrm = 0;
    for (std::size_t i = 0; i < offs.size(); ++i) {
      eta[i] = g.next_complex_gaussian();
      nrm += std::norm(eta[i]);
    }
    nrm = std::sqrt(nrm);
    const double scale = delta * std::sqrt(double(prob.m)) / nrm;
    for (std::size_t i = 0; i < offs.size(); ++i) prob.xi.data[offs[i]] += scale * eta[i];
  }
  return prob;
}

struct SolverConfig {
  int max_iters = 50000;
  double tol_feas = 1e-9;
  double tol_change = 1e-10;
  double step_primal = 0;  // 0 selects the automatic rule
  double step_dual = 0;
};

struct SolverResult {
  ComplexImage xhat;
  int iterations = 0;
  double feas_violation = 0;
  double objective = 0;
  bool converged = false;

  explicit SolverResult(int side) : xhat(side) {}
};

inline SolverResult solve_tv(const RecoveryProblem& prob, const SolverConfig& cfg = {}) {
  const int n = prob.n;
  if (prob.xi.n != n || prob.omega.omega.side() != n)
    throw std::invalid_argument("solve_tv: dimension mismatch");

  // Step sizes: product 0.95 / L^2 with L^2 <= ||D||^2 + ||P A~/N||^2 <= 9.
  double tau = cfg.step_primal, sigma = cfg.step_dual;
  if (tau <= 0 || sigma <= 0) {
    tau = sigma = std::sqrt(0.95 / 9.0);
  } else if (tau * sigma * 8.0 > 1.0 + 1e-12) {
    throw std::invalid_argument("solve_tv: step product violates the stability bound");
  }

  Dft2Plan plan(n);
  const std::vector<std::size_t> offs = prob.omega.omega.storage_offsets();
  const double radius = prob.delta * std::sqrt(double(prob.m)) / n;
  CVec xi_n(offs.size());  // normalized target on Omega
  for (std::size_t i = 0; i < offs.size(); ++i) xi_n[i] = prob.xi.data[offs[i]] / double(n);

  ComplexImage z(n), znew(n), zbar(n), v(n), w(n);
  ComplexImage p1(n), p2(n), g1(n), g2(n);

  // Warm start from the zero-filled inverse.
  plan.inverse2(prob.xi, z);
  zbar = z;

  SolverResult res(n);
  double feas = 0;
  int it = 0;
  bool converged = false;
  for (it = 1; it <= cfg.max_iters; ++it) {
    diff1_into(zbar, g1);
    diff2_into(zbar, g2);
    double dp = 0, np = 0;
    for (std::size_t i = 0; i < p1.data.size(); ++i) {
      cplx a = p1.data[i] + sigma * g1.data[i];
      cplx b = p2.data[i] + sigma * g2.data[i];
      const double na = std::abs(a), nb = std::abs(b);
      a = na > 1 ? a / na : a;
      b = nb > 1 ? b / nb : b;
      dp += std::norm(a - p1.data[i]) + std::norm(b - p2.data[i]);
      np += std::norm(a) + std::norm(b);
      p1.data[i] = a;
      p2.data[i] = b;
    }

    adjoint_diff_into(p1, p2, v);
    for (std::size_t i = 0; i < v.data.size(); ++i) v.data[i] = z.data[i] - tau * v.data[i];

    // Exact projection onto the constraint set through the scaled transform.
    plan.forward2(v, w);
    for (cplx& c : w.data) c /= double(n);
    double dn = 0;
    for (std::size_t i = 0; i < offs.size(); ++i) dn += std::norm(w.data[offs[i]] - xi_n[i]);
    dn = std::sqrt(dn);
    if (dn > radius) {
      const double shrinkf = radius > 0 ? radius / dn : 0.0;
      for (std::size_t i = 0; i < offs.size(); ++i)
        w.data[offs[i]] = xi_n[i] + shrinkf * (w.data[offs[i]] - xi_n[i]);
    }
    feas = std::max(0.0, (dn > radius ? radius : dn) * n - prob.delta * std::sqrt(double(prob.m)));
    for (cplx& c : w.data) c *= double(n);
    plan.inverse2(w, znew);

    double dz = 0, nz = 0;
    for (std::size_t i = 0; i < z.data.size(); ++i) {
      dz += std::norm(znew.data[i] - z.data[i]);
      nz += std::norm(znew.data[i]);
      zbar.data[i] = 2.0 * znew.data[i] - z.data[i];
    }
    z = znew;
    // Both blocks must be stationary. The warm start is already feasible, so
    // the primal alone can look converged on the first sweep while the dual
    // is still far from its fixed point.
    const double rel_primal = std::sqrt(dz) / std::max(1e-30, std::sqrt(nz));
    const double rel_dual = std::sqrt(dp) / std::max(1e-30, std::sqrt(np));
    if (std::max(rel_primal, rel_dual) < cfg.tol_change &&
        feas <= cfg.tol_feas * (1.0 + norm2(prob.xi))) {
      converged = true;
      break;
    }
  }

  res.xhat = z;
  res.iterations = std::min(it, cfg.max_iters);
  res.converged = converged;
  res.objective = tv_norm(z);
  // Reported violation is re-evaluated on the final iterate.
  const ComplexImage residual = project(prob.omega.omega, dft2(z));
  double rn = 0;
  for (std::size_t i = 0; i < offs.size(); ++i)
    rn += std::norm(residual.data[offs[i]] - prob.xi.data[offs[i]]);
  res.feas_violation = std::max(0.0, std::sqrt(rn) - prob.delta * std::sqrt(double(prob.m)));
  return res;
}

struct ErrorMetrics {
  double err2 = 0;       // ||x - xhat||_2
  double rel_err2 = 0;   // ||x - xhat||_2 / ||x||_2
  double grad_err2 = 0;  // ||D(x - xhat)||_2
  double tv_err = 0;     // ||x - xhat||_TV
  double tv_tail = 0;    // ||x||_TV restricted to the complements of the supports
};

inline ErrorMetrics error_metrics(const ComplexImage& x, const ComplexImage& xhat,
                                  const Support2D& d1, const Support2D& d2) {
  if (x.n != xhat.n) throw std::invalid_argument("error_metrics: dimension mismatch");
  const ComplexImage e = x - xhat;
  const GradientPair ge = gradient(e);
  ErrorMetrics m;
  m.err2 = norm2(e);
  m.rel_err2 = m.err2 / std::max(1e-300, norm2(x));
  m.grad_err2 = std::sqrt(norm2_sq(ge.d1) + norm2_sq(ge.d2));
  m.tv_err = tv_norm(e);
  m.tv_tail = tv_restricted(x, d1.complement(), d2.complement());
  return m;
}

struct TheoremParams {
  double s = 0;        // max{s1, s2}
  double m = 0;        // total sample count
  double m0 = 0;       // min{m1, m2}
  double M0 = 0;       // min{M1, M2}
  double N = 0;
  double delta = 0;
  double tv_tail = 0;  // ||x||_TV on the complement supports
};

// Scale factors of the two recovery error bounds, returned as
// (gradient-side, signal-side).
inline std::pair<double, double> theoretical_rhs(const TheoremParams& p) {
  if (!(p.s > 0) || !(p.m > 0) || !(p.m0 > 0) || !(p.M0 > 0) || !(p.N > 0))
    throw std::invalid_argument("theoretical_rhs: parameters must be positive");
  const double lead = (p.N * p.N) / (p.M0 * p.M0);
  const double b1 = lead * (std::sqrt(p.m) * p.delta / std::sqrt(p.m0 * p.N) + p.tv_tail);
  const double b2 =
      lead * (std::sqrt(p.m / p.m0) * std::sqrt(p.s) * p.delta + std::sqrt(p.s) * p.tv_tail);
  return {b1, b2};
}

}  // namespace tvls
