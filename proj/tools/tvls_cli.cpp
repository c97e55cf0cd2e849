// Command-line front end. Subcommands cover mask generation, phantom
// generation, single recoveries, dual-certificate checks, multi-seed
// experiments and phase sweeps. Exit codes: 0 success, 1 usage error,
// 2 a gated run failed to converge (solve, experiment) or a certificate
// condition failed (certify).
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "tvls/tvls.hpp"

namespace {

struct Options {
  tvls::ExperimentSpec ex;
  std::string kind = "line-grid";
  std::string mode = "deterministic-lines";
  std::uint64_t seed = 1;
  std::vector<int> m1_list, m2_list;
  double success_rel = 1e-4;
};

void add_phantom_options(CLI::App* c, Options& o) {
  c->add_option("--n", o.ex.n, "grid side length");
  c->add_option("--kind", o.kind,
                "rect | line-grid | random-piecewise | banded-notch | from-file");
  c->add_option("--row0", o.ex.phantom.row0, "rect: first row, 1-based");
  c->add_option("--row1", o.ex.phantom.row1, "rect: one past the last row");
  c->add_option("--col0", o.ex.phantom.col0, "rect: first column, 1-based");
  c->add_option("--col1", o.ex.phantom.col1, "rect: one past the last column");
  c->add_option("--amplitude", o.ex.phantom.amplitude, "phantom amplitude");
  c->add_option("--bands1", o.ex.phantom.bands1, "line-grid: jumps down each column (even or 0)");
  c->add_option("--bands2", o.ex.phantom.bands2, "line-grid: jumps across each row (even or 0)");
  c->add_option("--offset1", o.ex.phantom.offset1, "line-grid: vertical jump offset");
  c->add_option("--offset2", o.ex.phantom.offset2, "line-grid: horizontal jump offset");
  c->add_option("--jumps1", o.ex.phantom.jumps1, "random-piecewise: jumps per column profile");
  c->add_option("--jumps2", o.ex.phantom.jumps2, "random-piecewise: jumps per row profile");
  c->add_option("--min-sep", o.ex.phantom.min_sep,
                "random-piecewise: minimum circular jump gap / n");
  c->add_option("--notch-depth", o.ex.phantom.notch_depth, "banded-notch: stripe depth");
  c->add_option("--notch-col", o.ex.phantom.notch_col, "banded-notch: first stripe column");
  c->add_option("--notch-width", o.ex.phantom.notch_width, "banded-notch: stripe width");
  c->add_option("--file", o.ex.phantom.path, "from-file: input image path");
  c->add_option("--phantom-seed", o.ex.phantom_seed, "seed for random phantoms");
}

void add_sampling_options(CLI::App* c, Options& o) {
  c->add_option("--mode", o.mode,
                "theorem-lines | deterministic-lines | uniform-points | oriented-a | oriented-b");
  c->add_option("--M1", o.ex.M1, "line index range in direction 1 (0 = unsampled)");
  c->add_option("--M2", o.ex.M2, "line index range in direction 2 (0 = unsampled)");
  c->add_option("--m1", o.ex.m1, "lines drawn in direction 1 (0 = budget rule)");
  c->add_option("--m2", o.ex.m2, "lines drawn in direction 2 (0 = budget rule)");
  c->add_option("--budget-C", o.ex.budget_C, "budget rule constant");
  c->add_option("--budget-eps", o.ex.budget_eps, "budget rule failure probability");
  c->add_option("--points-m", o.ex.points_m,
                "uniform-points sample count (0 = match the line pattern)");
  c->add_option("--rand-M", o.ex.rand_M, "oriented: random-direction index range");
  c->add_option("--rand-lines", o.ex.rand_lines, "oriented: random lines drawn");
  c->add_option("--low-lines", o.ex.low_lines, "oriented: deterministic low lines");
}

void add_solver_options(CLI::App* c, Options& o) {
  c->add_option("--max-iters", o.ex.solver.max_iters, "iteration cap");
  c->add_option("--tol-feas", o.ex.solver.tol_feas, "feasibility tolerance");
  c->add_option("--tol-change", o.ex.solver.tol_change, "relative-change stopping tolerance");
  c->add_option("--step-primal", o.ex.solver.step_primal, "primal step (0 = automatic)");
  c->add_option("--step-dual", o.ex.solver.step_dual, "dual step (0 = automatic)");
}

// Resolves the string-valued choices; throws CLI::ValidationError on junk.
void finalize(Options& o) {
  if (o.kind == "rect")
    o.ex.kind = tvls::PhantomKind::Rect;
  else if (o.kind == "line-grid")
    o.ex.kind = tvls::PhantomKind::LineGrid;
  else if (o.kind == "random-piecewise")
    o.ex.kind = tvls::PhantomKind::RandomPiecewise;
  else if (o.kind == "banded-notch")
    o.ex.kind = tvls::PhantomKind::BandedNotch;
  else if (o.kind == "from-file")
    o.ex.kind = tvls::PhantomKind::FromFile;
  else
    throw CLI::ValidationError("--kind", "unknown phantom kind: " + o.kind);
  const auto m = tvls::parse_mode(o.mode);
  if (!m) throw CLI::ValidationError("--mode", "unknown sampling mode: " + o.mode);
  o.ex.mode = *m;
}

void print_row(const tvls::ExperimentRow& r) {
  std::printf("m=%zu\nm1=%d\nm2=%d\n", r.m, r.m1, r.m2);
  std::printf("err2=%s\n", tvls::fmt_double(r.err.err2).c_str());
  std::printf("rel_err2=%s\n", tvls::fmt_double(r.err.rel_err2).c_str());
  std::printf("grad_err2=%s\n", tvls::fmt_double(r.err.grad_err2).c_str());
  std::printf("tv_err=%s\n", tvls::fmt_double(r.err.tv_err).c_str());
  std::printf("tv_tail=%s\n", tvls::fmt_double(r.err.tv_tail).c_str());
  std::printf("bound1=%s\nbound2=%s\n", tvls::fmt_double(r.bound1).c_str(),
              tvls::fmt_double(r.bound2).c_str());
  std::printf("iterations=%d\nconverged=%d\n", r.iterations, int(r.converged));
  std::printf("feas_violation=%s\n", tvls::fmt_double(r.feas_violation).c_str());
  std::printf("objective=%s\n", tvls::fmt_double(r.objective).c_str());
  if (r.has_cert) {
    std::printf("cert_all_pass=%d\n", int(r.cert_all_pass));
    std::printf("cert_c1_min=%s\n", tvls::fmt_double(r.cert_c1_min).c_str());
    std::printf("cert_c2_max=%s\n", tvls::fmt_double(r.cert_c2_max).c_str());
    std::printf("cert_L_sq=%s\n", tvls::fmt_double(r.cert_L_sq).c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Line-structured Fourier sampling and TV recovery toolkit"};
  app.require_subcommand(1);
  app.set_config("--config");

  Options o;

  CLI::App* mask = app.add_subcommand("mask", "generate a sampling mask");
  add_sampling_options(mask, o);
  mask->add_option("--n", o.ex.n, "grid side length");
  mask->add_option("--seed", o.seed, "sampling seed");
  mask->add_option("--out", o.ex.out_dir, "output directory")->required();

  CLI::App* phantom = app.add_subcommand("phantom", "generate a phantom and its structure report");
  add_phantom_options(phantom, o);
  phantom->add_option("--out", o.ex.out_dir, "output directory");

  CLI::App* solve = app.add_subcommand("solve", "run a single recovery");
  add_phantom_options(solve, o);
  add_sampling_options(solve, o);
  add_solver_options(solve, o);
  solve->add_option("--delta", o.ex.delta, "noise level");
  solve->add_option("--seed", o.seed, "sampling and noise seed");
  solve->add_flag("--certify", o.ex.run_certify, "verify the dual conditions");
  solve->add_option("--out", o.ex.out_dir, "output directory");

  CLI::App* certify = app.add_subcommand("certify", "check the dual certificate conditions");
  add_phantom_options(certify, o);
  add_sampling_options(certify, o);
  certify->add_option("--seed", o.seed, "sampling seed");

  CLI::App* experiment = app.add_subcommand("experiment", "multi-seed recovery experiment");
  add_phantom_options(experiment, o);
  add_sampling_options(experiment, o);
  add_solver_options(experiment, o);
  experiment->add_option("--name", o.ex.name, "experiment name for the results table");
  experiment->add_option("--delta", o.ex.delta, "noise level");
  experiment->add_option("--seeds", o.ex.seeds, "seeds, comma separated")->delimiter(',');
  experiment->add_flag("--certify", o.ex.run_certify, "verify the dual conditions per seed");
  experiment->add_option("--out", o.ex.out_dir, "output directory");

  CLI::App* phase = app.add_subcommand("phase", "success-rate sweep over line budgets");
  add_phantom_options(phase, o);
  add_solver_options(phase, o);
  phase->add_option("--name", o.ex.name, "sweep name");
  phase->add_option("--M1", o.ex.M1, "line index range in direction 1");
  phase->add_option("--M2", o.ex.M2, "line index range in direction 2");
  phase->add_option("--m1-list", o.m1_list, "direction-1 counts, comma separated")->delimiter(',');
  phase->add_option("--m2-list", o.m2_list, "direction-2 counts, comma separated")->delimiter(',');
  phase->add_option("--seeds", o.ex.seeds, "seeds, comma separated")->delimiter(',');
  phase->add_option("--delta", o.ex.delta, "noise level");
  phase->add_option("--success-rel", o.success_rel, "relative-error success threshold");
  phase->add_option("--budget-C", o.ex.budget_C, "budget rule constant");
  phase->add_option("--budget-eps", o.ex.budget_eps, "budget rule failure probability");
  phase->add_option("--out", o.ex.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    finalize(o);

    if (mask->parsed()) {
      tvls::StructureReport st;  // mask generation has no phantom to consult
      if (o.ex.mode == tvls::SamplingMode::TheoremLines &&
          ((o.ex.M1 > 0 && o.ex.m1 == 0) || (o.ex.M2 > 0 && o.ex.m2 == 0)))
        throw std::invalid_argument("mask: theorem-lines needs explicit --m1/--m2");
      const tvls::SampleSet s = tvls::build_sample_set(o.ex, st, o.seed);
      const std::filesystem::path dir(o.ex.out_dir);
      tvls::write_mask_pgm(dir / "mask.pgm", s.omega);
      tvls::write_file(dir / "mask.csv", tvls::encode_mask_csv(s.omega));
      std::printf("n=%d\nm=%zu\nm1=%zu\nm2=%zu\nline_structured=%d\n", o.ex.n, s.m,
                  s.omega1.size(), s.omega2.size(), int(s.line_structured));
      return 0;
    }

    if (phantom->parsed()) {
      const tvls::Phantom ph =
          tvls::make_phantom(o.ex.kind, o.ex.phantom, o.ex.n, o.ex.phantom_seed);
      std::fputs(tvls::encode_structure_report(ph.structure).c_str(), stdout);
      if (!o.ex.out_dir.empty()) {
        const std::filesystem::path dir(o.ex.out_dir);
        tvls::write_tvls(dir / "phantom.tvls", ph.image);
        tvls::write_pgm(dir / "phantom.pgm", ph.image);
        tvls::write_file(dir / "structure.txt", tvls::encode_structure_report(ph.structure));
        tvls::write_file(dir / "delta1.csv", tvls::encode_support_csv(ph.delta1));
        tvls::write_file(dir / "delta2.csv", tvls::encode_support_csv(ph.delta2));
      }
      return 0;
    }

    if (solve->parsed()) {
      o.ex.seeds = {o.seed};
      const tvls::ExperimentResult res = tvls::run_experiment(o.ex);
      print_row(res.rows.at(0));
      return res.rows.at(0).converged ? 0 : 2;
    }

    if (certify->parsed()) {
      const tvls::Phantom ph =
          tvls::make_phantom(o.ex.kind, o.ex.phantom, o.ex.n, o.ex.phantom_seed);
      const tvls::SampleSet s = tvls::build_sample_set(o.ex, ph.structure, o.seed);
      if (!s.line_structured)
        throw std::invalid_argument("certify: needs a line-structured sampling mode");
      const tvls::CertificateReport rep =
          tvls::verify_dual_conditions(ph.image, ph.delta1, ph.delta2, s.omega1, s.omega2);
      for (const tvls::LineClassReport& lc : rep.per_line)
        std::printf("line=%c%d count=%d support=%d sigma_min=%s off_sup=%s feasible=%d\n",
                    lc.orientation, lc.rep_index, lc.count, lc.support_size,
                    tvls::fmt_double(lc.sigma_min).c_str(),
                    tvls::fmt_double(lc.off_sup_norm).c_str(), int(lc.feasible));
      std::printf("c1_min=%s\n", tvls::fmt_double(rep.c1_min).c_str());
      std::printf("c2_max=%s\n", tvls::fmt_double(rep.c2_max).c_str());
      std::printf("L_sq=%s\n", tvls::fmt_double(rep.L_sq).c_str());
      std::printf("supports_consistent=%d\n", int(rep.supports_consistent));
      std::printf("all_pass=%d\n", int(rep.all_pass));
      return rep.all_pass ? 0 : 2;
    }

    if (experiment->parsed()) {
      const tvls::ExperimentResult res = tvls::run_experiment(o.ex);
      std::fputs(res.csv.c_str(), stdout);
      return (!res.gating || res.all_converged) ? 0 : 2;
    }

    if (phase->parsed()) {
      tvls::PhaseSpec ps;
      ps.name = o.ex.name;
      ps.n = o.ex.n;
      ps.kind = o.ex.kind;
      ps.phantom = o.ex.phantom;
      ps.phantom_seed = o.ex.phantom_seed;
      ps.M1 = o.ex.M1;
      ps.M2 = o.ex.M2;
      ps.m1_list = o.m1_list;
      ps.m2_list = o.m2_list;
      ps.seeds = o.ex.seeds;
      ps.delta = o.ex.delta;
      ps.success_rel = o.success_rel;
      ps.solver = o.ex.solver;
      ps.budget_C = o.ex.budget_C;
      ps.budget_eps = o.ex.budget_eps;
      ps.out_dir = o.ex.out_dir;
      const tvls::PhaseResult res = tvls::phase_transition(ps);
      std::fputs(res.csv.c_str(), stdout);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
