// Reproducible experiment driver: phantom -> sampling -> measurement ->
// recovery -> metrics, with optional dual-certificate checks and a phase
// sweep over line budgets. All randomness is derived from explicit seeds
// and all emitted text is byte-deterministic for a fixed spec.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvls/certify.hpp"
#include "tvls/io.hpp"
#include "tvls/phantom.hpp"
#include "tvls/sampling.hpp"
#include "tvls/solver.hpp"

namespace tvls {

// DeterministicLines / TheoremLines sample Cartesian lines in both
// directions. UniformPoints is the unstructured baseline with a matched
// budget. OrientedA samples many random lines in direction 1 plus a few
// deterministic low lines in direction 2; OrientedB is its transpose.
enum class SamplingMode { TheoremLines, DeterministicLines, UniformPoints, OrientedA, OrientedB };

inline std::string mode_name(SamplingMode m) {
  switch (m) {
    case SamplingMode::TheoremLines: return "theorem-lines";
    case SamplingMode::DeterministicLines: return "deterministic-lines";
    case SamplingMode::UniformPoints: return "uniform-points";
    case SamplingMode::OrientedA: return "oriented-a";
    case SamplingMode::OrientedB: return "oriented-b";
  }
  return "?";
}

inline std::optional<SamplingMode> parse_mode(const std::string& s) {
  if (s == "theorem-lines") return SamplingMode::TheoremLines;
  if (s == "deterministic-lines") return SamplingMode::DeterministicLines;
  if (s == "uniform-points") return SamplingMode::UniformPoints;
  if (s == "oriented-a") return SamplingMode::OrientedA;
  if (s == "oriented-b") return SamplingMode::OrientedB;
  return std::nullopt;
}

struct ExperimentSpec {
  std::string name = "experiment";
  int n = 32;

  PhantomKind kind = PhantomKind::LineGrid;
  PhantomParams phantom;
  std::uint64_t phantom_seed = 7;

  SamplingMode mode = SamplingMode::DeterministicLines;
  int M1 = 0, M2 = 0;  // line index ranges; 0 leaves that direction unsampled
  int m1 = 0, m2 = 0;  // lines drawn per direction; 0 under TheoremLines = use the budget rule
  double budget_C = 1.0;
  double budget_eps = 0.25;
  std::size_t points_m = 0;  // UniformPoints budget; 0 = match the (M1, M2) line pattern
  int rand_M = 16;           // Oriented modes: random direction draws from [rand_M]
  int rand_lines = 15;
  int low_lines = 2;  // deterministic low range in the other direction

  double delta = 0;
  std::vector<std::uint64_t> seeds = {1};
  SolverConfig solver;
  bool run_certify = false;
  std::string out_dir;  // empty = no files written
};

struct ExperimentRow {
  std::uint64_t seed = 0;
  std::size_t m = 0;
  int m1 = 0, m2 = 0;
  ErrorMetrics err;
  double bound1 = 0, bound2 = 0;  // nan when the theorem does not apply
  int iterations = 0;
  bool converged = false;
  double feas_violation = 0;
  double objective = 0;
  bool has_cert = false;
  bool cert_all_pass = false;
  double cert_c1_min = 0, cert_c2_max = 0, cert_L_sq = 0;
};

struct ExperimentResult {
  std::uint64_t spec_hash = 0;
  Phantom phantom;
  std::vector<ExperimentRow> rows;
  std::string csv;
  bool gating = true;          // false for the expected-failure baselines
  bool all_converged = false;  // over rows
};

inline std::string canonical_spec_string(const ExperimentSpec& s) {
  std::string out;
  out += "name=" + s.name + "\n";
  out += "n=" + std::to_string(s.n) + "\n";
  out += "kind=" + phantom_kind_name(s.kind) + "\n";
  const PhantomParams& p = s.phantom;
  out += "rect=" + std::to_string(p.row0) + "," + std::to_string(p.row1) + "," +
         std::to_string(p.col0) + "," + std::to_string(p.col1) + "\n";
  out += "amplitude=" + fmt_double(p.amplitude) + "\n";
  out += "bands=" + std::to_string(p.bands1) + "," + std::to_string(p.bands2) + "\n";
  out += "offsets=" + std::to_string(p.offset1) + "," + std::to_string(p.offset2) + "\n";
  out += "jumps=" + std::to_string(p.jumps1) + "," + std::to_string(p.jumps2) + "\n";
  out += "min_sep=" + fmt_double(p.min_sep) + "\n";
  out += "notch=" + fmt_double(p.notch_depth) + "," + std::to_string(p.notch_col) + "," +
         std::to_string(p.notch_width) + "\n";
  out += "path=" + p.path + "\n";
  out += "phantom_seed=" + std::to_string(s.phantom_seed) + "\n";
  out += "mode=" + mode_name(s.mode) + "\n";
  out += "M=" + std::to_string(s.M1) + "," + std::to_string(s.M2) + "\n";
  out += "m=" + std::to_string(s.m1) + "," + std::to_string(s.m2) + "\n";
  out += "budget_C=" + fmt_double(s.budget_C) + "\n";
  out += "budget_eps=" + fmt_double(s.budget_eps) + "\n";
  out += "points_m=" + std::to_string(s.points_m) + "\n";
  out += "oriented=" + std::to_string(s.rand_M) + "," + std::to_string(s.rand_lines) + "," +
         std::to_string(s.low_lines) + "\n";
  out += "delta=" + fmt_double(s.delta) + "\n";
  out += "seeds=";
  for (std::size_t i = 0; i < s.seeds.size(); ++i)
    out += (i ? "," : "") + std::to_string(s.seeds[i]);
  out += "\n";
  out += "max_iters=" + std::to_string(s.solver.max_iters) + "\n";
  out += "tol_feas=" + fmt_double(s.solver.tol_feas) + "\n";
  out += "tol_change=" + fmt_double(s.solver.tol_change) + "\n";
  out += "steps=" + fmt_double(s.solver.step_primal) + "," + fmt_double(s.solver.step_dual) + "\n";
  out += "certify=" + std::to_string(int(s.run_certify)) + "\n";
  return out;
}

// Realizes the spec's sampling mode for one seed. The structure report is
// consulted only by TheoremLines when a per-direction count is left at 0.
inline SampleSet build_sample_set(const ExperimentSpec& spec, const StructureReport& st,
                                  std::uint64_t seed) {
  const int n = spec.n;
  switch (spec.mode) {
    case SamplingMode::DeterministicLines: {
      LineSamplingSpec ls{n, spec.M1, spec.M2, 0, 0, seed, true};
      return draw_theorem_sampling(ls);
    }
    case SamplingMode::TheoremLines: {
      int m1 = spec.M1 > 0 ? spec.m1 : 0;
      int m2 = spec.M2 > 0 ? spec.m2 : 0;
      if ((spec.M1 > 0 && m1 == 0) || (spec.M2 > 0 && m2 == 0)) {
        const TheoremBudget b =
            theorem_budget(std::max(st.s1, 1), std::max(st.s2, 1), std::max(st.T1, 1),
                           std::max(st.T2, 1), std::max(spec.M1, 1), std::max(spec.M2, 1),
                           spec.budget_eps, spec.budget_C);
        if (spec.M1 > 0 && m1 == 0) m1 = b.m1;
        if (spec.M2 > 0 && m2 == 0) m2 = b.m2;
      }
      LineSamplingSpec ls{n, spec.M1, spec.M2, m1, m2, seed, false};
      return draw_theorem_sampling(ls);
    }
    case SamplingMode::UniformPoints: {
      std::size_t m = spec.points_m;
      if (m == 0) {
        LineSamplingSpec ls{n, spec.M1, spec.M2, 0, 0, 0, true};
        m = draw_theorem_sampling(ls).m;
      }
      return uniform_pointwise_mask(n, m, seed);
    }
    case SamplingMode::OrientedA:
    case SamplingMode::OrientedB: {
      SplitMix64 g(seed);
      SplitMix64 gr = g.fork(0x6f72ull);
      const std::vector<int> rnd =
          unif_without_replacement(freq_range(spec.rand_M), std::size_t(spec.rand_lines), gr);
      const std::vector<int> low = freq_range(spec.low_lines);
      if (spec.mode == SamplingMode::OrientedA) return cartesian_line_set(rnd, low, n);
      return cartesian_line_set(low, rnd, n);
    }
  }
  throw std::logic_error("build_sample_set: unhandled mode");
}

namespace detail {

// Bound parameters exist only for line-structured sampling of a signal with
// at least one jump; otherwise the row reports nan bounds.
inline std::pair<double, double> row_bounds(const ExperimentSpec& spec, const StructureReport& st,
                                            const SampleSet& samp, double tv_tail) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!samp.line_structured) return {nan, nan};
  const int s = std::max(st.s1, st.s2);
  if (s == 0) return {nan, nan};

  int M1 = 0, M2 = 0;
  switch (spec.mode) {
    case SamplingMode::TheoremLines:
    case SamplingMode::DeterministicLines:
      M1 = spec.M1;
      M2 = spec.M2;
      break;
    case SamplingMode::OrientedA:
      M1 = spec.rand_M;
      M2 = spec.low_lines;
      break;
    case SamplingMode::OrientedB:
      M1 = spec.low_lines;
      M2 = spec.rand_M;
      break;
    default: return {nan, nan};
  }
  const int c1 = int(samp.omega1.size());
  const int c2 = int(samp.omega2.size());

  TheoremParams tp;
  tp.s = s;
  tp.m = double(samp.m);
  tp.m0 = 0;
  if (M1 > 0 && c1 > 0) tp.m0 = c1;
  if (M2 > 0 && c2 > 0) tp.m0 = tp.m0 > 0 ? std::min(tp.m0, double(c2)) : c2;
  if (tp.m0 == 0) tp.m0 = 1;
  tp.M0 = 0;
  if (M1 > 0) tp.M0 = M1;
  if (M2 > 0) tp.M0 = tp.M0 > 0 ? std::min(tp.M0, double(M2)) : M2;
  if (tp.M0 == 0) return {nan, nan};
  tp.N = spec.n;
  tp.delta = spec.delta;
  tp.tv_tail = tv_tail;
  return theoretical_rhs(tp);
}

inline std::string csv_header() {
  return "name,spec_hash,version,seed,mode,n,delta,m,m1,m2,err2,rel_err2,grad_err2,tv_err,"
         "tv_tail,bound1,bound2,iterations,converged,feas_violation,objective,cert_all_pass,"
         "cert_c1_min,cert_c2_max,cert_L_sq\n";
}

inline std::string csv_row(const ExperimentSpec& spec, std::uint64_t hash,
                           const ExperimentRow& r) {
  std::string out;
  out += spec.name + "," + hex64(hash) + "," + kLibraryVersion + ",";
  out += std::to_string(r.seed) + "," + mode_name(spec.mode) + "," + std::to_string(spec.n) + ",";
  out += fmt_double(spec.delta) + "," + std::to_string(r.m) + "," + std::to_string(r.m1) + "," +
         std::to_string(r.m2) + ",";
  out += fmt_double(r.err.err2) + "," + fmt_double(r.err.rel_err2) + "," +
         fmt_double(r.err.grad_err2) + "," + fmt_double(r.err.tv_err) + "," +
         fmt_double(r.err.tv_tail) + ",";
  out += fmt_double(r.bound1) + "," + fmt_double(r.bound2) + ",";
  out += std::to_string(r.iterations) + "," + std::to_string(int(r.converged)) + "," +
         fmt_double(r.feas_violation) + "," + fmt_double(r.objective) + ",";
  if (r.has_cert)
    out += std::to_string(int(r.cert_all_pass)) + "," + fmt_double(r.cert_c1_min) + "," +
           fmt_double(r.cert_c2_max) + "," + fmt_double(r.cert_L_sq);
  else
    out += ",,,";
  out += "\n";
  return out;
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  ExperimentResult res;
  res.spec_hash = fnv1a64(canonical_spec_string(spec));
  res.phantom = make_phantom(spec.kind, spec.phantom, spec.n, spec.phantom_seed);
  res.gating =
      spec.mode != SamplingMode::UniformPoints && spec.mode != SamplingMode::OrientedB;
  res.csv = detail::csv_header();
  res.all_converged = true;

  const ComplexImage& x = res.phantom.image;
  for (std::uint64_t seed : spec.seeds) {
    const SampleSet samp = build_sample_set(spec, res.phantom.structure, seed);
    const RecoveryProblem prob = measure(x, samp, spec.delta, seed);
    const SolverResult sol = solve_tv(prob, spec.solver);

    ExperimentRow row;
    row.seed = seed;
    row.m = samp.m;
    row.m1 = int(samp.omega1.size());
    row.m2 = int(samp.omega2.size());
    row.err = error_metrics(x, sol.xhat, res.phantom.delta1, res.phantom.delta2);
    std::tie(row.bound1, row.bound2) =
        detail::row_bounds(spec, res.phantom.structure, samp, row.err.tv_tail);
    row.iterations = sol.iterations;
    row.converged = sol.converged;
    row.feas_violation = sol.feas_violation;
    row.objective = sol.objective;
    if (spec.run_certify && samp.line_structured) {
      const CertificateReport cert = verify_dual_conditions(x, res.phantom.delta1,
                                                            res.phantom.delta2, samp.omega1,
                                                            samp.omega2);
      row.has_cert = true;
      row.cert_all_pass = cert.all_pass;
      row.cert_c1_min = cert.c1_min;
      row.cert_c2_max = cert.c2_max;
      row.cert_L_sq = cert.L_sq;
    }
    res.all_converged = res.all_converged && row.converged;
    res.csv += detail::csv_row(spec, res.spec_hash, row);
    res.rows.push_back(row);

    if (!spec.out_dir.empty()) {
      const std::filesystem::path dir =
          std::filesystem::path(spec.out_dir) / ("seed" + std::to_string(seed));
      write_mask_pgm(dir / "mask.pgm", samp.omega);
      write_file(dir / "mask.csv", encode_mask_csv(samp.omega));
      write_tvls(dir / "recon.tvls", sol.xhat);
      write_pgm(dir / "recon.pgm", sol.xhat);
    }
  }

  if (!spec.out_dir.empty()) {
    const std::filesystem::path dir(spec.out_dir);
    write_file(dir / "results.csv", res.csv);
    write_file(dir / "spec.txt", canonical_spec_string(spec));
    write_file(dir / "structure.txt", encode_structure_report(res.phantom.structure));
    write_tvls(dir / "phantom.tvls", x);
    write_pgm(dir / "phantom.pgm", x);
  }
  return res;
}

struct PhaseSpec {
  std::string name = "phase";
  int n = 32;
  PhantomKind kind = PhantomKind::LineGrid;
  PhantomParams phantom;
  std::uint64_t phantom_seed = 7;
  int M1 = 8, M2 = 8;
  std::vector<int> m1_list, m2_list;  // full grid is swept; use {0} with M=0 to skip a direction
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  double delta = 0;
  double success_rel = 1e-4;
  SolverConfig solver;
  double budget_C = 1.0;
  double budget_eps = 0.25;
  std::string out_dir;
};

struct PhaseRow {
  int m1 = 0, m2 = 0;
  int trials = 0, successes = 0;
  double rate = 0;
};

struct PhaseResult {
  std::uint64_t spec_hash = 0;
  Phantom phantom;
  std::vector<PhaseRow> rows;
  int pred_m1 = 0, pred_m2 = 0;  // budget-rule predictions for this phantom
  bool pred_consistent = false;
  std::string csv;
};

inline PhaseResult phase_transition(const PhaseSpec& spec) {
  PhaseResult res;
  std::string canon = "phase:" + spec.name + ":" + std::to_string(spec.n) + ":" +
                      phantom_kind_name(spec.kind) + ":" + std::to_string(spec.M1) + "," +
                      std::to_string(spec.M2) + ":" + fmt_double(spec.delta) + ":" +
                      fmt_double(spec.success_rel);
  for (int v : spec.m1_list) canon += ";" + std::to_string(v);
  for (int v : spec.m2_list) canon += "|" + std::to_string(v);
  for (std::uint64_t s : spec.seeds) canon += "~" + std::to_string(s);
  res.spec_hash = fnv1a64(canon);
  res.phantom = make_phantom(spec.kind, spec.phantom, spec.n, spec.phantom_seed);
  const StructureReport& st = res.phantom.structure;

  if (spec.M1 > 0 && spec.M2 > 0 && st.s1 > 0 && st.s2 > 0) {
    const TheoremBudget b = theorem_budget(st.s1, st.s2, std::max(st.T1, 1), std::max(st.T2, 1),
                                           spec.M1, spec.M2, spec.budget_eps, spec.budget_C);
    res.pred_m1 = b.m1;
    res.pred_m2 = b.m2;
    res.pred_consistent = b.consistent;
  }

  res.csv =
      "name,spec_hash,version,n,delta,M1,M2,m1,m2,trials,successes,success_rate,pred_m1,pred_m2,"
      "pred_consistent\n";
  const std::vector<int> l1 = spec.m1_list.empty() ? std::vector<int>{0} : spec.m1_list;
  const std::vector<int> l2 = spec.m2_list.empty() ? std::vector<int>{0} : spec.m2_list;
  for (int m1 : l1)
    for (int m2 : l2) {
      PhaseRow row;
      row.m1 = spec.M1 > 0 ? m1 : 0;
      row.m2 = spec.M2 > 0 ? m2 : 0;
      for (std::uint64_t seed : spec.seeds) {
        LineSamplingSpec ls{spec.n, spec.M1, spec.M2, row.m1, row.m2, seed, false};
        const SampleSet samp = draw_theorem_sampling(ls);
        const RecoveryProblem prob = measure(res.phantom.image, samp, spec.delta, seed);
        const SolverResult sol = solve_tv(prob, spec.solver);
        const ErrorMetrics em =
            error_metrics(res.phantom.image, sol.xhat, res.phantom.delta1, res.phantom.delta2);
        ++row.trials;
        if (sol.converged && em.rel_err2 <= spec.success_rel) ++row.successes;
      }
      row.rate = row.trials > 0 ? double(row.successes) / double(row.trials) : 0.0;
      res.csv += spec.name + "," + hex64(res.spec_hash) + "," + kLibraryVersion + "," +
                 std::to_string(spec.n) + "," + fmt_double(spec.delta) + "," +
                 std::to_string(spec.M1) + "," + std::to_string(spec.M2) + "," +
                 std::to_string(row.m1) + "," + std::to_string(row.m2) + "," +
                 std::to_string(row.trials) + "," + std::to_string(row.successes) + "," +
                 fmt_double(row.rate) + "," + std::to_string(res.pred_m1) + "," +
                 std::to_string(res.pred_m2) + "," + std::to_string(int(res.pred_consistent)) +
                 "\n";
      res.rows.push_back(row);
    }

  if (!spec.out_dir.empty()) {
    const std::filesystem::path dir(spec.out_dir);
    write_file(dir / "phase.csv", res.csv);
    write_file(dir / "structure.txt", encode_structure_report(st));
    write_tvls(dir / "phantom.tvls", res.phantom.image);
  }
  return res;
}

}  // namespace tvls
