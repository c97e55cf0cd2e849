// Phantom generators, serialization, and the experiment driver. The
// round-trip and determinism checks compare full byte strings: two runs of
// the same spec must agree bit for bit, not just numerically.
#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "tvls/tvls.hpp"

namespace {

using namespace tvls;

std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("tvls_harness_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(PhantomRect, SupportsAndStructure) {
  PhantomParams p;
  p.row0 = 9;
  p.row1 = 17;
  p.col0 = 9;
  p.col1 = 17;
  p.amplitude = 2.0;
  const Phantom ph = make_phantom(PhantomKind::Rect, p, 32, 0);

  EXPECT_EQ(ph.structure.s1, 2);
  EXPECT_EQ(ph.structure.s2, 2);
  ASSERT_TRUE(ph.structure.nu_col.has_value());
  EXPECT_NEAR(*ph.structure.nu_col, 0.25, 1e-15);
  ASSERT_TRUE(ph.structure.nu_row.has_value());
  EXPECT_NEAR(*ph.structure.nu_row, 0.25, 1e-15);
  EXPECT_EQ(ph.structure.M1, 8);
  EXPECT_EQ(ph.structure.M2, 8);

  // Vertical jumps sit on the first row of the rectangle and the first row
  // past it, one per active column.
  for (int j = 9; j <= 16; ++j) {
    EXPECT_TRUE(ph.delta1.contains(9, j));
    EXPECT_TRUE(ph.delta1.contains(17, j));
  }
  EXPECT_EQ(ph.delta1.size(), 16u);
  EXPECT_EQ(ph.delta2.size(), 16u);
}

TEST(PhantomRect, ValidatesBands) {
  PhantomParams p;
  p.row0 = 5;
  p.row1 = 5;
  p.col0 = 1;
  p.col1 = 2;
  EXPECT_THROW(make_phantom(PhantomKind::Rect, p, 16, 0), std::invalid_argument);
  p.row0 = 5;
  p.row1 = 18;
  EXPECT_THROW(make_phantom(PhantomKind::Rect, p, 16, 0), std::invalid_argument);
}

TEST(PhantomLineGrid, BandCountsAndValidation) {
  PhantomParams p;
  p.bands1 = 4;
  p.bands2 = 0;
  const Phantom ph = make_phantom(PhantomKind::LineGrid, p, 32, 0);
  EXPECT_EQ(ph.structure.s1, 4);
  EXPECT_EQ(ph.structure.s2, 0);
  ASSERT_TRUE(ph.structure.nu_col.has_value());
  EXPECT_NEAR(*ph.structure.nu_col, 8.0 / 32.0, 1e-15);
  EXPECT_FALSE(ph.structure.nu_row.has_value());

  PhantomParams bad;
  bad.bands1 = 3;
  EXPECT_THROW(make_phantom(PhantomKind::LineGrid, bad, 32, 0), std::invalid_argument);
  bad.bands1 = 6;
  EXPECT_THROW(make_phantom(PhantomKind::LineGrid, bad, 32, 0), std::invalid_argument);
}

TEST(PhantomLineGrid, OffsetShiftsJumpRows) {
  PhantomParams p;
  p.bands1 = 2;
  p.bands2 = 0;
  p.offset1 = 5;
  const Phantom ph = make_phantom(PhantomKind::LineGrid, p, 16, 0);
  std::set<int> rows;
  for (const auto& [k, j] : ph.delta1.members()) rows.insert(k);
  EXPECT_EQ(rows, (std::set<int>{6, 14}));
}

TEST(PhantomRandomPiecewise, RespectsJumpCountAndSeparation) {
  PhantomParams p;
  p.jumps1 = 4;
  p.jumps2 = 2;
  p.min_sep = 0.15;
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    const Phantom ph = make_phantom(PhantomKind::RandomPiecewise, p, 32, seed);
    EXPECT_EQ(ph.structure.s1, 4);
    EXPECT_EQ(ph.structure.s2, 2);
    ASSERT_TRUE(ph.structure.nu_col.has_value());
    // min_sep is a floor for the circular gap; the report measures the
    // linear one, which can only be larger.
    EXPECT_GE(*ph.structure.nu_col, 0.15 - 1e-12);
    ASSERT_TRUE(ph.structure.nu_row.has_value());
    EXPECT_GE(*ph.structure.nu_row, 0.15 - 1e-12);
  }
}

TEST(PhantomRandomPiecewise, SeedDeterminism) {
  PhantomParams p;
  p.jumps1 = 2;
  p.jumps2 = 2;
  p.min_sep = 0.2;
  const Phantom a = make_phantom(PhantomKind::RandomPiecewise, p, 16, 9);
  const Phantom b = make_phantom(PhantomKind::RandomPiecewise, p, 16, 9);
  const Phantom c = make_phantom(PhantomKind::RandomPiecewise, p, 16, 10);
  EXPECT_EQ(encode_tvls(a.image), encode_tvls(b.image));
  EXPECT_NE(encode_tvls(a.image), encode_tvls(c.image));
}

TEST(PhantomRandomPiecewise, InfeasibleSeparationThrows) {
  PhantomParams p;
  p.jumps1 = 4;
  p.jumps2 = 0;
  p.min_sep = 0.4;
  EXPECT_THROW(make_phantom(PhantomKind::RandomPiecewise, p, 8, 1), std::invalid_argument);
  p.jumps1 = 1;
  p.min_sep = 0.1;
  EXPECT_THROW(make_phantom(PhantomKind::RandomPiecewise, p, 8, 1), std::invalid_argument);
}

TEST(PhantomBandedNotch, StructureAndValidation) {
  PhantomParams p;
  const Phantom ph = make_phantom(PhantomKind::BandedNotch, p, 64, 1);
  EXPECT_EQ(ph.structure.s1, 6);
  EXPECT_EQ(ph.structure.s2, 2);
  ASSERT_TRUE(ph.structure.nu_col.has_value());
  EXPECT_NEAR(*ph.structure.nu_col, 8.0 / 64.0, 1e-12);
  ASSERT_TRUE(ph.structure.nu_row.has_value());
  EXPECT_NEAR(*ph.structure.nu_row, 3.0 / 64.0, 1e-12);
  EXPECT_EQ(ph.structure.M1, 16);
  EXPECT_EQ(ph.structure.M2, 42);

  // Band sums are balanced, so every row profile has zero mean and the
  // two lowest vertical frequencies vanish.
  for (int j : {1, 29, 40}) {
    cplx sum = 0, first = 0;
    for (int k = 1; k <= 64; ++k) {
      sum += ph.image.at(k, j);
      first += ph.image.at(k, j) * std::polar(1.0, -2.0 * kPi * k / 64.0);
    }
    EXPECT_LT(std::abs(sum), 1e-9);
    EXPECT_LT(std::abs(first), 0.2);
  }

  EXPECT_THROW(make_phantom(PhantomKind::BandedNotch, p, 32, 1), std::invalid_argument);
  PhantomParams bad = p;
  bad.notch_col = 63;
  bad.notch_width = 3;
  EXPECT_THROW(make_phantom(PhantomKind::BandedNotch, bad, 64, 1), std::invalid_argument);
}

TEST(PhantomFromFile, RoundTripAndSizeCheck) {
  const auto dir = temp_dir("fromfile");
  PhantomParams grid;
  grid.bands1 = 2;
  grid.bands2 = 2;
  const Phantom ph = make_phantom(PhantomKind::LineGrid, grid, 16, 0);
  write_tvls(dir / "x.tvls", ph.image);

  PhantomParams p;
  p.path = (dir / "x.tvls").string();
  const Phantom back = make_phantom(PhantomKind::FromFile, p, 16, 0);
  EXPECT_EQ(encode_tvls(back.image), encode_tvls(ph.image));
  EXPECT_EQ(back.structure.s1, ph.structure.s1);
  EXPECT_THROW(make_phantom(PhantomKind::FromFile, p, 32, 0), std::invalid_argument);
}

TEST(TvlsCodec, RoundTripIsExact) {
  ComplexImage z(5);
  SplitMix64 g(42);
  for (cplx& v : z.data) v = {g.next_gaussian() * 1e9, g.next_gaussian() * 1e-9};
  z.data[3] = {-0.0, 1e-308};
  const std::string bytes = encode_tvls(z);
  EXPECT_EQ(bytes.size(), 16u + 25u * 16u);
  const ComplexImage back = decode_tvls(bytes);
  ASSERT_EQ(back.n, 5);
  for (std::size_t i = 0; i < z.data.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(z.data[i].real()),
              std::bit_cast<std::uint64_t>(back.data[i].real()));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(z.data[i].imag()),
              std::bit_cast<std::uint64_t>(back.data[i].imag()));
  }
}

TEST(TvlsCodec, RejectsCorruptInput) {
  ComplexImage z(3);
  std::string bytes = encode_tvls(z);
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_tvls(bad_magic), std::runtime_error);
  EXPECT_THROW(decode_tvls(bytes.substr(0, bytes.size() - 1)), std::runtime_error);
  EXPECT_THROW(decode_tvls(std::string("TVLS0001")), std::runtime_error);
}

TEST(Previews, DeterministicBytes) {
  PhantomParams p;
  p.bands1 = 2;
  p.bands2 = 2;
  const Phantom ph = make_phantom(PhantomKind::LineGrid, p, 8, 0);
  const std::string a = encode_pgm(ph.image);
  const std::string b = encode_pgm(ph.image);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, 9), "P5\n8 8\n25");

  const SampleSet samp = cartesian_line_set({0}, {}, 8);
  const std::string mask = encode_mask_pgm(samp.omega);
  ASSERT_EQ(mask.substr(0, 11), "P5\n8 8\n255\n");
  int lit = 0;
  for (char c : mask.substr(11)) lit += c ? 1 : 0;
  EXPECT_EQ(lit, 8);
}

TEST(MaskCsv, AscendingPairs) {
  const SampleSet samp = cartesian_line_set({1}, {0}, 4);
  EXPECT_EQ(encode_mask_csv(samp.omega),
            "k1,k2\n-1,0\n0,0\n1,-1\n1,0\n1,1\n1,2\n2,0\n");
}

TEST(Formatting, DoubleRoundTripAndHash) {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02e23, 0.0}) {
    const std::string s = fmt_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(0xcbf29ce484222325ULL), "cbf29ce484222325");
}

ExperimentSpec small_spec() {
  ExperimentSpec spec;
  spec.name = "unit";
  spec.n = 16;
  spec.kind = PhantomKind::LineGrid;
  spec.phantom.bands1 = 2;
  spec.phantom.bands2 = 0;
  spec.mode = SamplingMode::DeterministicLines;
  spec.M1 = 4;
  spec.M2 = 0;
  spec.seeds = {1, 2};
  return spec;
}

TEST(Experiment, DeterministicLinesRecoverGridPhantom) {
  const ExperimentResult res = run_experiment(small_spec());
  ASSERT_EQ(res.rows.size(), 2u);
  EXPECT_TRUE(res.gating);
  EXPECT_TRUE(res.all_converged);
  for (const ExperimentRow& r : res.rows) {
    EXPECT_EQ(r.m1, 4);
    EXPECT_EQ(r.m2, 0);
    EXPECT_EQ(r.m, 4u * 16u);
    EXPECT_LE(r.err.rel_err2, 1e-6);
    EXPECT_TRUE(std::isfinite(r.bound1));
    EXPECT_TRUE(std::isfinite(r.bound2));
  }
  // Deterministic sampling makes the per-seed rows identical except for the
  // seed column and the noise draw, which is empty at delta = 0.
  EXPECT_NEAR(res.rows[0].err.rel_err2, res.rows[1].err.rel_err2, 1e-12);
}

TEST(Experiment, CsvBytesReproducible) {
  const ExperimentResult a = run_experiment(small_spec());
  const ExperimentResult b = run_experiment(small_spec());
  EXPECT_EQ(a.spec_hash, b.spec_hash);
  EXPECT_EQ(a.csv, b.csv);

  ExperimentSpec other = small_spec();
  other.delta = 0.01;
  const ExperimentResult c = run_experiment(other);
  EXPECT_NE(a.spec_hash, c.spec_hash);
  EXPECT_NE(a.csv, c.csv);
}

TEST(Experiment, OutputDirectoryRoundTrip) {
  const auto dir = temp_dir("expdir");
  ExperimentSpec spec = small_spec();
  spec.out_dir = dir.string();
  const ExperimentResult a = run_experiment(spec);

  EXPECT_EQ(read_file(dir / "results.csv"), a.csv);
  EXPECT_EQ(read_file(dir / "spec.txt"), canonical_spec_string(spec));
  const ComplexImage phantom_back = read_tvls(dir / "phantom.tvls");
  EXPECT_EQ(encode_tvls(phantom_back), encode_tvls(a.phantom.image));
  const ComplexImage recon = read_tvls(dir / "seed1" / "recon.tvls");
  EXPECT_EQ(recon.n, 16);

  // Re-running the same spec must reproduce every emitted byte.
  const std::string csv_before = read_file(dir / "results.csv");
  run_experiment(spec);
  EXPECT_EQ(read_file(dir / "results.csv"), csv_before);
}

TEST(Experiment, UniformPointsMatchesLineBudgetAndIsNonGating) {
  ExperimentSpec spec = small_spec();
  spec.mode = SamplingMode::UniformPoints;
  const ExperimentResult res = run_experiment(spec);
  EXPECT_FALSE(res.gating);
  for (const ExperimentRow& r : res.rows) {
    EXPECT_EQ(r.m, 4u * 16u);
    EXPECT_TRUE(std::isnan(r.bound1));
  }
}

TEST(Experiment, OrientedModesAreTransposes) {
  ExperimentSpec spec = small_spec();
  spec.rand_M = 8;
  spec.rand_lines = 3;
  spec.low_lines = 2;
  spec.mode = SamplingMode::OrientedA;
  const SampleSet a = build_sample_set(spec, StructureReport{}, 5);
  spec.mode = SamplingMode::OrientedB;
  const SampleSet b = build_sample_set(spec, StructureReport{}, 5);
  ASSERT_EQ(a.m, b.m);
  for (const auto& [k1, k2] : a.omega.members()) EXPECT_TRUE(b.omega.contains(k2, k1));
  EXPECT_EQ(a.omega1, b.omega2);
  EXPECT_EQ(a.omega2, b.omega1);
}

TEST(Experiment, CertifyColumnsPopulated)
{
  ExperimentSpec spec = small_spec();
  spec.seeds = {1};
  spec.run_certify = true;
  const ExperimentResult res = run_experiment(spec);
  ASSERT_EQ(res.rows.size(), 1u);
  EXPECT_TRUE(res.rows[0].has_cert);
  EXPECT_TRUE(res.rows[0].cert_all_pass);
  EXPECT_GT(res.rows[0].cert_c1_min, 0.0);
  EXPECT_LT(res.rows[0].cert_c2_max, 1.0);
}

TEST(Phase, FullBudgetSaturatesAndCsvIsStable) {
  PhaseSpec spec;
  spec.name = "unit-phase";
  spec.n = 16;
  spec.kind = PhantomKind::LineGrid;
  spec.phantom.bands1 = 2;
  spec.phantom.bands2 = 2;
  spec.M1 = 4;
  spec.M2 = 4;
  spec.m1_list = {2, 4};
  spec.m2_list = {4};
  spec.seeds = {1, 2, 3};
  const PhaseResult a = phase_transition(spec);
  ASSERT_EQ(a.rows.size(), 2u);
  EXPECT_EQ(a.rows[1].m1, 4);
  EXPECT_EQ(a.rows[1].trials, 3);
  EXPECT_DOUBLE_EQ(a.rows[1].rate, 1.0);
  EXPECT_GE(a.rows[1].rate, a.rows[0].rate);

  const PhaseResult b = phase_transition(spec);
  EXPECT_EQ(a.csv, b.csv);
}

}  // namespace
