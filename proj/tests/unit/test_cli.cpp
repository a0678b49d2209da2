#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "commands.hpp"

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sqcd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = sqcd::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  ADD_FAILURE() << "no column " << name;
  return 0;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sqcd_cli_test_" + name);
}

}  // namespace

TEST(Cli, AlgebraCheckPasses) {
  const CliRun r = run_cli({"algebra-check"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_GT(rows.size(), 10u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"identity", "residual", "tolerance", "status"}));
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][3], "pass") << rows[i][0];
}

TEST(Cli, AlgebraCheckPerturbationFails) {
  const CliRun r = run_cli({"algebra-check", "--perturb", "su3_jacobi"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("su3_jacobi"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("su3_jacobi,"), std::string::npos);
  EXPECT_EQ(run_cli({"algebra-check", "--perturb", "no_such_identity"}).code, 2);
}

TEST(Cli, SpectrumRowCount) {
  const CliRun r = run_cli({"spectrum", "--nmax", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  EXPECT_EQ(rows.size(), 51u);
  const int res = column(rows[0], "oracle_residual");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i][res]), 1e-12);
}

TEST(Cli, SpectrumFlagsDegeneratePairsWhenFieldFree) {
  const CliRun r = run_cli({"spectrum", "--nmax", "1", "--amp", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  const int deg = column(rows[0], "degenerate");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][deg], "1");
  const CliRun special = run_cli({"spectrum", "--nmax", "1"});
  EXPECT_NE(special.out.find(",0\n"), std::string::npos);
}

TEST(Cli, OutputFileIsByteIdentical) {
  const auto a = temp_path("a.csv"), b = temp_path("b.csv");
  ASSERT_EQ(run_cli({"spectrum", "--nmax", "3", "--out", a.string()}).code, 0);
  ASSERT_EQ(run_cli({"spectrum", "--nmax", "3", "--out", b.string()}).code, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, TraceSummaryWithinOnePercent) {
  const CliRun r = run_cli({"trace", "--nmax", "60", "--kmax", "40", "--lambda-min", "1.5",
                         "--lambda-max", "5", "--lambda-points", "15"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto pos = r.err.find("max_relative_deviation = ");
  ASSERT_NE(pos, std::string::npos) << r.err;
  EXPECT_LT(std::stod(r.err.substr(pos + 25)), 0.01);
}

TEST(Cli, TraceRejectsZeroWidth) {
  const CliRun r = run_cli({"trace", "--width", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("width"), std::string::npos);
}

TEST(Cli, TraceWithoutOrbitsAndStrictMode) {
  const CliRun r = run_cli({"trace", "--nmax", "40", "--kmax", "0", "--lambda-min", "1",
                         "--lambda-max", "3", "--lambda-points", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("warning:"), std::string::npos);
  const auto rows = parse_csv(r.out);
  const int w = column(rows[0], "weyl"), wo = column(rows[0], "weyl_plus_orbits");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][w], rows[i][wo]);

  const CliRun strict = run_cli({"trace", "--nmax", "40", "--kmax", "0", "--lambda-min", "1",
                              "--lambda-max", "3", "--lambda-points", "5", "--strict"});
  EXPECT_EQ(strict.code, 1);
}

TEST(Cli, WeylFreeValue) {
  const CliRun r = run_cli({"weyl", "--kind", "free", "--lambda-min", "1", "--lambda-max", "1",
                         "--lambda-points", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][1]), 0.0759909, 5e-8);
}

TEST(Cli, WeylTripleAtZeroSigmaEqualsFree) {
  const CliRun free = run_cli({"weyl", "--kind", "free"});
  const CliRun triple = run_cli({"weyl", "--kind", "triple", "--sigma", "0"});
  ASSERT_EQ(free.code, 0);
  ASSERT_EQ(triple.code, 0);
  EXPECT_EQ(free.out, triple.out);
}

TEST(Cli, WeylMonteCarloIsReproducible) {
  const std::vector<std::string> args{"weyl", "--kind", "mc", "--sigma", "0.3", "--samples",
                                      "5000", "--seed", "11", "--lambda-points", "4"};
  const CliRun a = run_cli(args), b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto rows = parse_csv(a.out);
  EXPECT_EQ(rows[0].size(), 4u);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  EXPECT_EQ(run_cli(threaded).out, a.out);
}

TEST(Cli, WeylRejectsUnknownKind) { EXPECT_EQ(run_cli({"weyl", "--kind", "quantum"}).code, 2); }

TEST(Cli, ChiralCurve) {
  const CliRun r = run_cli({"chiral", "--zeta-min", "0.1", "--zeta-max", "1", "--zeta-points", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_LT(std::stod(rows[1][1]), 1e-21);
  EXPECT_NEAR(std::stod(rows[10][1]), 0.606531, 5e-7);
  const CliRun grid = run_cli({"chiral", "--zeta-min", "0.2", "--zeta-max", "3", "--zeta-points", "57"});
  const auto g = parse_csv(grid.out);
  for (std::size_t i = 2; i < g.size(); ++i) EXPECT_GT(std::stod(g[i][1]), std::stod(g[i - 1][1]));
  EXPECT_EQ(run_cli({"chiral", "--zeta-min", "0"}).code, 2);
}

TEST(Cli, WongFieldFreeIsStraightLine) {
  const CliRun r = run_cli({"wong", "--amp", "0", "--t-final", "2", "--dt", "0.01", "--stride", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  const int t = column(rows[0], "t"), x0 = column(rows[0], "x0"), p0 = column(rows[0], "p0");
  const double speed = 1.0 / std::sqrt(1.0 + 0.25 + 0.09 + 0.64);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_NEAR(std::stod(rows[i][x0]), speed * std::stod(rows[i][t]), 1e-12);
    EXPECT_EQ(rows[i][p0], rows[1][p0]);
  }
  EXPECT_NE(r.err.find("casimir2_drift = 0"), std::string::npos) << r.err;
}

namespace {
double summary_value(const std::string& err, const std::string& key) {
  const auto pos = err.find(key + " = ");
  if (pos == std::string::npos) return NAN;
  return std::stod(err.substr(pos + key.size() + 3));
}
}  // namespace

TEST(Cli, WongConstantFieldConservation) {
  const CliRun r = run_cli({"wong", "--amp", "0.5", "--t-final", "10", "--dt", "1e-3", "--stride",
                         "1000", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(summary_value(r.err, "casimir2_drift"), 1e-8);
  EXPECT_LT(summary_value(r.err, "casimir3_drift"), 1e-8);
  EXPECT_LT(summary_value(r.err, "energy_drift"), 1e-8);
}

TEST(Cli, WongStepHalvingReducesEnergyDrift) {
  auto drift = [](const std::string& dt) {
    const CliRun r = run_cli({"wong", "--amp", "1.5", "--t-final", "5", "--dt", dt, "--stride",
                           "100000", "--seed", "8", "--momentum", "0.6,0.2,-0.3,0.4"});
    EXPECT_EQ(r.code, 0) << r.err;
    return summary_value(r.err, "energy_drift");
  };
  const double ratio = drift("0.04") / drift("0.02");
  EXPECT_GT(ratio, 10.0);
  EXPECT_LT(ratio, 24.0);
}

TEST(Cli, WongDomainErrorReportsTime) {
  const CliRun r = run_cli({"wong", "--kind", "triple+", "--amp", "3", "--momentum", "0.01,0,0,0",
                         "--spin-vector", "5,0,0", "--t-final", "1", "--dt", "0.01"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("at t = "), std::string::npos) << r.err;
}

TEST(Cli, McAverageLatticeMatchesClosedForm) {
  const CliRun r = run_cli({"mc-average", "--sigma", "0.4", "--sites", "4", "--samples", "20000",
                         "--lambda-min", "0.5", "--lambda-max", "1.5", "--lambda-points", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(summary_value(r.err, "max_abs_z"), 4.0);
}

TEST(Cli, JsonMirrorsCsv) {
  const CliRun r = run_cli({"chiral", "--zeta-points", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "chiral");
  EXPECT_EQ(j["columns"], (nlohmann::json{"zeta", "r"}));
  ASSERT_EQ(j["rows"].size(), 3u);
  EXPECT_NEAR(j["rows"][2]["zeta"].get<double>(), 3.0, 1e-15);
}

TEST(Cli, HelpListsEveryFlag) {
  const CliRun r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* flag :
       {"--config", "--seed", "--out", "--format", "--strict", "--l1", "--l2", "--amp",
        "--coupling", "--hbar", "--nmax", "--kmax", "--width", "--lambda-min", "--lambda-max",
        "--lambda-points", "--sigma", "--samples", "--t-final", "--dt"})
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
}

TEST(Cli, UnknownFlagIsAnError) {
  EXPECT_EQ(run_cli({"chiral", "--zeta-maxx", "2"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto cfg = temp_path("run.cfg");
  {
    std::ofstream f(cfg);
    f << "# chiral scan\nzeta-min = 0.5\nzeta-max = 2\nzeta-points = 4\n";
  }
  const CliRun file = run_cli({"chiral", "--config", cfg.string()});
  ASSERT_EQ(file.code, 0) << file.err;
  auto rows = parse_csv(file.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(std::stod(rows[1][0]), 0.5);

  const CliRun flag = run_cli({"chiral", "--config", cfg.string(), "--zeta-points", "2"});
  rows = parse_csv(flag.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(std::stod(rows[2][0]), 2.0);

  {
    std::ofstream f(cfg);
    f << "zeta-min = 0.5\nbogus-key = 1\n";
  }
  EXPECT_EQ(run_cli({"chiral", "--config", cfg.string()}).code, 2);
  std::filesystem::remove(cfg);
}

TEST(Cli, BinaryRunsAreByteIdentical) {
  const auto a = temp_path("bin_a.csv"), b = temp_path("bin_b.csv");
  const std::string base = std::string(SQCD_CLI_PATH) +
                           " weyl --kind mc --sigma 0.5 --samples 2000 --seed 3 --out ";
  ASSERT_EQ(std::system((base + a.string() + " > /dev/null").c_str()), 0);
  ASSERT_EQ(std::system((base + b.string() + " > /dev/null").c_str()), 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
