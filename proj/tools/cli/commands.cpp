#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <tuple>

#include <CLI11.hpp>

#include "sqcd/algebra.hpp"
#include "sqcd/dynamics.hpp"
#include "sqcd/random.hpp"
#include "sqcd/symbols.hpp"
#include "sqcd/torus.hpp"
#include "sqcd/weyl.hpp"

namespace sqcd::cli {
namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return out;
}

std::string weyl_kind(const RunConfig& cfg) { return cfg.kind.empty() ? "free" : cfg.kind; }
std::string wong_kind(const RunConfig& cfg) { return cfg.kind.empty() ? "wong+" : cfg.kind; }

TorusConfig torus_config(const RunConfig& cfg) {
  return TorusConfig::special(cfg.amp, cfg.l1, cfg.l2, cfg.hbar, cfg.coupling);
}

WeylConfig weyl_config(const RunConfig& cfg) {
  WeylConfig w;
  w.d = cfg.d;
  w.volume = cfg.volume;
  w.J = cfg.colours;
  w.spin = cfg.spin;
  w.hbar = cfg.hbar;
  w.g = cfg.coupling;
  w.N = cfg.group_n;
  return w;
}

std::shared_ptr<const LieAlgebraRep> su(int n) {
  return std::make_shared<const LieAlgebraRep>(LieAlgebraRep::su(n));
}

RMatrix normal_matrix(CounterRng& rng, int rows, int cols, double scale) {
  RMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = scale * rng.normal();
  return m;
}

/// Constant SU(N) field with Gaussian components of standard deviation amp.
GaugeField random_constant_field(const RunConfig& cfg, int d, std::uint64_t stream) {
  const auto alg = su(cfg.group_n);
  if (cfg.amp == 0.0) return GaugeField::zero(d, alg, cfg.coupling);
  CounterRng rng(cfg.seed, stream);
  return GaugeField::constant(alg, normal_matrix(rng, d, alg->size(), cfg.amp), cfg.coupling);
}

void check_grid(double lo, double hi, int n, const char* name) {
  if (!(lo >= 0.0) || !(hi >= lo)) throw ConfigError(std::string(name) + " grid needs 0 <= min <= max");
  if (n < 1) throw ConfigError(std::string(name) + " grid needs at least one point");
}

// ---- algebra-check ----

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double clifford_residual(int d) {
  const GammaSet g = build_gamma(d);
  const int n = g.spinor_dim();
  double r = 0.0;
  for (int mu = 0; mu < d; ++mu)
    for (int nu = 0; nu < d; ++nu) {
      const CMatrix ac = g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu];
      r = std::max(r, max_abs(ac - (mu == nu ? 2.0 : 0.0) * CMatrix::Identity(n, n)));
    }
  return r;
}

double gamma5_residual() {
  const GammaSet g = build_gamma(4);
  double r = max_abs(*g.gamma5 * *g.gamma5 - CMatrix::Identity(4, 4));
  for (const auto& gm : g.gamma) r = std::max(r, max_abs(*g.gamma5 * gm + gm * *g.gamma5));
  return r;
}

double normalisation_residual(const LieAlgebraRep& alg) {
  double r = 0.0;
  for (int a = 0; a < alg.size(); ++a) {
    r = std::max(r, std::abs(alg.generator(a).trace()));
    for (int b = 0; b < alg.size(); ++b)
      r = std::max(r, std::abs((alg.generator(a) * alg.generator(b)).trace() - (a == b ? 2.0 : 0.0)));
  }
  return r;
}

double commutator_residual(const LieAlgebraRep& alg) {
  double r = 0.0;
  for (int a = 0; a < alg.size(); ++a)
    for (int b = 0; b < alg.size(); ++b) {
      const CMatrix& x = alg.generator(a);
      const CMatrix& y = alg.generator(b);
      CMatrix want = CMatrix::Zero(x.rows(), x.cols());
      for (int c = 0; c < alg.size(); ++c) want += Complex(0.0, 2.0 * alg.f(a, b, c)) * alg.generator(c);
      r = std::max(r, max_abs(x * y - y * x - want));
    }
  return r;
}

double jacobi_residual(const LieAlgebraRep& alg) {
  auto comm = [](const CMatrix& x, const CMatrix& y) -> CMatrix { return x * y - y * x; };
  double r = 0.0;
  const auto& X = alg.generators();
  for (int a = 0; a < alg.size(); ++a)
    for (int b = a + 1; b < alg.size(); ++b)
      for (int c = b + 1; c < alg.size(); ++c)
        r = std::max(r, max_abs(comm(comm(X[a], X[b]), X[c]) + comm(comm(X[b], X[c]), X[a]) +
                                comm(comm(X[c], X[a]), X[b])));
  return r;
}

double casimir_residual(const LieAlgebraRep& alg) {
  CMatrix sum = CMatrix::Zero(alg.dim_rep(), alg.dim_rep());
  for (const auto& x : alg.generators()) sum += x * x;
  return max_abs(sum - alg.casimir2() * CMatrix::Identity(alg.dim_rep(), alg.dim_rep()));
}

// ½FᵃXᵃ = −ig[𝒜_μ, 𝒜_ν] with 𝒜 = ½AᵃXᵃ for a constant field.
double field_strength_residual(CounterRng& rng) {
  const auto alg = su(3);
  const double g = 1.3;
  const GaugeField f = GaugeField::constant(alg, normal_matrix(rng, 4, alg->size(), 0.7), g);
  const FieldStrength fs = field_strength(f, RVector::Zero(4));
  double r = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const CMatrix am = 0.5 * f.potential_matrix(RVector::Zero(4), mu);
      const CMatrix an = 0.5 * f.potential_matrix(RVector::Zero(4), nu);
      RVector fa(alg->size());
      for (int a = 0; a < alg->size(); ++a) fa[a] = fs.F[a](mu, nu);
      r = std::max(r, max_abs(Complex(0.0, -g) * (am * an - an * am) - 0.5 * alg->combine(fa)));
    }
  return r;
}

Eigen::VectorXd sorted_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  return es.eigenvalues();
}

double squared_symbol_residual(CounterRng& rng) {
  const auto alg = su(3);
  const GaugeField f = GaugeField::constant(alg, normal_matrix(rng, 4, alg->size(), 0.7), 1.2);
  ClassicalState st;
  st.p = normal_matrix(rng, 4, 1, 1.0);
  st.x = normal_matrix(rng, 4, 1, 1.0);
  st.C = RVector::Zero(alg->size());
  const Couplings c{1.0, 1.0};
  const CMatrix d = dirac_symbol(st.p, st.x, f, c);
  const CMatrix d2 = dirac_squared_symbol(st, f, c, SquaredSymbolMode::WeylHbar);
  return (sorted_eigenvalues(d * d) - sorted_eigenvalues(d2)).cwiseAbs().maxCoeff();
}

double projected_transport_residual(CounterRng& rng) {
  double r = 0.0;
  for (int i = 0; i < 100; ++i) {
    RMatrix fmn = normal_matrix(rng, 4, 4, 0.5);
    fmn -= RMatrix(fmn.transpose());
    const GaugeField f = GaugeField::abelian_uniform_strength(normal_matrix(rng, 4, 1, 1.0), fmn);
    RMatrix h = normal_matrix(rng, 4, 4, 1.0);
    h = 0.5 * (h + RMatrix(h.transpose()));
    const RVector p = normal_matrix(rng, 4, 1, 2.0);
    const RVector x = normal_matrix(rng, 4, 1, 1.0);
    r = std::max(r, projected_transport_identities(p, x, f, 1.0, h).max_residual());
  }
  return r;
}

}  // namespace

void RunConfig::validate(const std::string& command) const {
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (command == "spectrum" || command == "trace") {
    torus_config(*this).validate();
    if (nmax < 0) throw ConfigError("nmax must be >= 0");
  }
  if (command == "trace") {
    if (!(width > 0.0)) throw ConfigError("width must be positive (smoothing is required)");
    if (kmax < 0) throw ConfigError("kmax must be >= 0");
    check_grid(lambda_min, lambda_max, lambda_points, "lambda");
  }
  if (command == "weyl" || command == "mc-average") {
    weyl_config(*this).validate();
    check_grid(lambda_min, lambda_max, lambda_points, "lambda");
    if (!(sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  }
  if (command == "weyl") {
    const std::string k = weyl_kind(*this);
    if (k != "free" && k != "colour" && k != "triple" && k != "mc")
      throw ConfigError("weyl kind must be free, colour, triple or mc (got '" + k + "')");
    if ((k == "colour" || k == "mc") && samples < 2) throw ConfigError("samples must be >= 2");
    if (k == "colour" && !(lambda_min > 0.0)) throw ConfigError("colour kind needs lambda-min > 0");
  }
  if (command == "mc-average") {
    if (samples < 2) throw ConfigError("samples must be >= 2");
    if (sites < 0) throw ConfigError("sites must be >= 0");
  }
  if (command == "chiral") {
    if (!(zeta_min > 0.0) || !(zeta_max > zeta_min))
      throw ConfigError("chiral grid needs 0 < zeta-min < zeta-max");
    if (zeta_points < 2) throw ConfigError("zeta-points must be >= 2");
  }
  if (command == "wong") {
    const std::string k = wong_kind(*this);
    if (k != "wong+" && k != "wong-" && k != "triple+" && k != "triple-")
      throw ConfigError("wong kind must be wong+, wong-, triple+ or triple- (got '" + k + "')");
    if (!(t_final > 0.0) || !(dt > 0.0)) throw ConfigError("t-final and dt must be positive");
    if (stride < 1) throw ConfigError("stride must be >= 1");
    if (momentum.size() != 4) throw ConfigError("momentum needs 4 components");
    if (spin_vector.size() != 3) throw ConfigError("spin-vector needs 3 components");
    if (group_n < 2) throw ConfigError("N must be >= 2");
  }
}

CommandResult cmd_algebra_check(const RunConfig& cfg) {
  struct Check {
    std::string name;
    double tolerance;
    std::function<double()> residual;
  };
  CounterRng rng(cfg.seed, 0);
  std::vector<Check> checks{
      {"gamma_clifford_d4", 1e-14, [] { return clifford_residual(4); }},
      {"gamma_clifford_d2", 1e-14, [] { return clifford_residual(2); }},
      {"gamma5_anticommutes", 1e-14, [] { return gamma5_residual(); }},
  };
  for (int n : {2, 3, 4}) {
    const auto alg = su(n);
    const std::string p = "su" + std::to_string(n) + "_";
    checks.push_back({p + "normalisation", 1e-13, [alg] { return normalisation_residual(*alg); }});
    checks.push_back({p + "commutator", 1e-13, [alg] { return commutator_residual(*alg); }});
    checks.push_back({p + "jacobi", 1e-12, [alg] { return jacobi_residual(*alg); }});
    checks.push_back({p + "casimir", 1e-13, [alg] { return casimir_residual(*alg); }});
  }
  checks.push_back({"field_strength_commutator", 1e-12, [&rng] { return field_strength_residual(rng); }});
  checks.push_back({"dirac_squared_spectrum", 1e-12, [&rng] { return squared_symbol_residual(rng); }});
  checks.push_back({"projected_transport", 1e-12, [&rng] { return projected_transport_residual(rng); }});

  if (!cfg.perturb.empty() &&
      std::none_of(checks.begin(), checks.end(), [&](const Check& c) { return c.name == cfg.perturb; }))
    throw ConfigError("unknown invariant for --perturb: " + cfg.perturb);

  CommandResult res;
  res.table.columns = {"identity", "residual", "tolerance", "status"};
  std::vector<std::string> failed;
  for (const auto& c : checks) {
    double r = c.residual();
    if (c.name == cfg.perturb) r += 1.0;
    const bool ok = r < c.tolerance;
    if (!ok) failed.push_back(c.name);
    res.table.rows.push_back({c.name, r, c.tolerance, std::string(ok ? "pass" : "fail")});
  }
  res.summary["checks"] = checks.size();
  res.summary["failed"] = failed.size();
  if (!failed.empty()) {
    std::string names;
    for (const auto& f : failed) names += (names.empty() ? "" : ", ") + f;
    res.failure = "invariant check failed: " + names;
  }
  return res;
}

CommandResult cmd_spectrum(const RunConfig& cfg) {
  const SpectrumTable t = exact_eigenvalues(torus_config(cfg), cfg.nmax, true);
  std::map<std::pair<int, int>, std::pair<double, double>> by_n;
  for (const auto& e : t.entries) {
    auto& slot = by_n[{e.n1, e.n2}];
    (e.branch == Branch::Plus ? slot.first : slot.second) = e.lambda;
  }
  CommandResult res;
  res.table.columns = {"n1", "n2", "branch", "lambda", "oracle_residual", "degenerate"};
  long long zero_modes = 0, degenerate = 0;
  for (const auto& e : t.entries) {
    const auto [lp, lm] = by_n[{e.n1, e.n2}];
    const bool deg = std::abs(lp - lm) <= 1e-12 * std::max(1.0, lp);
    degenerate += deg;
    zero_modes += e.lambda < 1e-12;
    res.table.rows.push_back({static_cast<long long>(e.n1), static_cast<long long>(e.n2),
                              std::string(branch_name(e.branch)), e.lambda, e.oracle_residual,
                              static_cast<long long>(deg)});
  }
  res.summary["rows"] = t.entries.size();
  res.summary["max_oracle_residual"] = t.max_oracle_residual;
  res.summary["zero_modes"] = zero_modes;
  res.summary["degenerate_rows"] = degenerate;
  return res;
}

CommandResult cmd_trace(const RunConfig& cfg) {
  const auto grid = linspace(cfg.lambda_min, cfg.lambda_max, cfg.lambda_points);
  const CompareResult cmp = smoothed_compare(torus_config(cfg), grid, cfg.width, cfg.nmax, cfg.kmax);
  CommandResult res;
  res.table.columns = {"lambda", "exact_smoothed", "weyl", "weyl_plus_orbits", "relative_deviation"};
  for (const auto& r : cmp.rows)
    res.table.rows.push_back({r.lambda, r.exact_smoothed, r.weyl, r.weyl_plus_orbits,
                              std::abs(r.exact_smoothed - r.weyl_plus_orbits) / r.exact_smoothed});
  res.summary["max_relative_deviation"] = cmp.max_relative_deviation;
  res.summary["orbit_groups_used"] = cmp.orbit_groups_used;
  res.warnings = cmp.warnings;
  if (cfg.strict && !cmp.warnings.empty()) res.failure = "truncation warning (strict): " + cmp.warnings.front();
  return res;
}

CommandResult cmd_weyl(const RunConfig& cfg) {
  const WeylConfig wc = weyl_config(cfg);
  const std::string kind = weyl_kind(cfg);
  const auto grid = linspace(cfg.lambda_min, cfg.lambda_max, cfg.lambda_points);
  CommandResult res;
  if (kind == "free") {
    res.table.columns = {"lambda", "density"};
    for (double l : grid) res.table.rows.push_back({l, mean_density_free(l, wc)});
  } else if (kind == "triple") {
    const double v = triple_v(cfg.sigma, wc);
    res.table.columns = {"lambda", "density"};
    for (double l : grid) res.table.rows.push_back({l, mean_density_triple(l, v, wc)});
    res.summary["v"] = v;
  } else if (kind == "mc") {
    const double v = triple_v(cfg.sigma, wc);
    res.table.columns = {"lambda", "estimate", "stderr", "closed_form"};
    for (double l : grid) {
      const MeanEstimate e = mc_density_triple(l, cfg.sigma, wc, cfg.samples, cfg.seed, cfg.threads);
      res.table.rows.push_back({l, e.value, e.std_error, mean_density_triple(l, v, wc)});
    }
    res.summary["v"] = v;
  } else {
    const GaugeField field = random_constant_field(cfg, wc.d, 1);
    res.table.columns = {"lambda", "estimate", "stderr", "free"};
    for (double l : grid) {
      const MeanEstimate e =
          mean_density_colour_limit(l, wc, field, cfg.samples, cfg.seed, cfg.threads);
      res.table.rows.push_back({l, e.value, e.std_error, mean_density_free(l, wc)});
    }
  }
  res.summary["kind"] = kind;
  return res;
}

CommandResult cmd_chiral(const RunConfig& cfg) {
  CommandResult res;
  res.table.columns = {"zeta", "r"};
  for (const auto& p : chiral_curve(linspace(cfg.zeta_min, cfg.zeta_max, cfg.zeta_points)))
    res.table.rows.push_back({p.zeta, p.r});
  return res;
}

CommandResult cmd_wong(const RunConfig& cfg) {
  const HamiltonianKind kind = parse_kind(wong_kind(cfg));
  const GaugeField field = random_constant_field(cfg, 4, 1);
  const auto& alg = *field.algebra();
  const WeylConfig wc = weyl_config(cfg);
  CounterRng rng(cfg.seed, 0);
  ClassicalState s0;
  s0.p = Eigen::Map<const RVector>(cfg.momentum.data(), 4);
  s0.x = RVector::Zero(4);
  s0.C = sample_colour_orbit(rng, alg, colour_reference(alg, wc));
  s0.s = Vec3(cfg.spin_vector[0], cfg.spin_vector[1], cfg.spin_vector[2]);

  CommandResult res;
  res.table.columns = {"t", "x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3",
                       "energy", "casimir2", "casimir3", "spin2"};
  Trajectory tr;
  try {
    tr = integrate_wong(s0, field, {1.0, cfg.hbar}, cfg.t_final, cfg.dt, kind, cfg.stride);
  } catch (const IntegrationError& e) {
    res.failure = e.what();
    return res;
  }
  for (const auto& smp : tr.samples) {
    std::vector<Cell> row{smp.t};
    for (int i = 0; i < 4; ++i) row.emplace_back(smp.state.x[i]);
    for (int i = 0; i < 4; ++i) row.emplace_back(smp.state.p[i]);
    row.emplace_back(smp.energy);
    row.emplace_back(alg.quadratic_casimir(smp.state.C));
    row.emplace_back(alg.cubic_casimir(smp.state.C));
    row.emplace_back(smp.state.s.squaredNorm());
    res.table.rows.push_back(std::move(row));
  }
  res.summary["kind"] = kind_name(kind);
  res.summary["dt"] = tr.dt;
  res.summary["energy_drift"] = tr.energy_drift;
  res.summary["casimir2_drift"] = tr.casimir2_drift;
  res.summary["casimir3_drift"] = tr.casimir3_drift;
  res.summary["spin_drift"] = tr.spin_drift;
  return res;
}

CommandResult cmd_mc_average(const RunConfig& cfg) {
  const WeylConfig wc = weyl_config(cfg);
  const double v = triple_v(cfg.sigma, wc);
  CommandResult res;
  res.table.columns = {"lambda", "estimate", "stderr", "closed_form", "z"};
  double zmax = 0.0;
  for (double l : linspace(cfg.lambda_min, cfg.lambda_max, cfg.lambda_points)) {
    const MeanEstimate e =
        cfg.sites == 0
            ? mc_density_triple(l, cfg.sigma, wc, cfg.samples, cfg.seed, cfg.threads)
            : mc_density_triple_lattice(l, cfg.sigma, wc, cfg.sites, cfg.samples, cfg.seed,
                                        cfg.threads);
    const double exact = mean_density_triple(l, v, wc);
    const double z = e.std_error > 0.0 ? (e.value - exact) / e.std_error : 0.0;
    zmax = std::max(zmax, std::abs(z));
    res.table.rows.push_back({l, e.value, e.std_error, exact, z});
  }
  res.summary["v"] = v;
  res.summary["sites"] = cfg.sites;
  res.summary["max_abs_z"] = zmax;
  return res;
}

std::string render(const std::string& command, const CommandResult& result, Format format) {
  if (format == Format::Csv) {
    std::string s;
    for (std::size_t i = 0; i < result.table.columns.size(); ++i)
      s += (i ? "," : "") + result.table.columns[i];
    s += '\n';
    char buf[64];
    for (const auto& row : result.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) s += ',';
        if (const auto* d = std::get_if<double>(&row[i])) {
          std::snprintf(buf, sizeof buf, "%.17g", *d);
          s += buf;
        } else if (const auto* n = std::get_if<long long>(&row[i])) {
          s += std::to_string(*n);
        } else {
          s += std::get<std::string>(row[i]);
        }
      }
      s += '\n';
    }
    return s;
  }
  nlohmann::ordered_json j;
  j["command"] = command;
  j["columns"] = result.table.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : result.table.rows) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < row.size(); ++i)
      std::visit([&](const auto& v) { o[result.table.columns[i]] = v; }, row[i]);
    j["rows"].push_back(std::move(o));
  }
  j["summary"] = result.summary;
  j["warnings"] = result.warnings;
  return j.dump(2) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Semiclassical Dirac operator toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a key = value file (flags win)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("--out", cfg.out, "Output file (default stdout)");
  app.add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::Csv},
                                                                         {"json", Format::Json}}))
      ->default_str("csv");
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_flag("--strict", cfg.strict, "Treat truncation warnings as errors");
  app.add_option("--threads", cfg.threads, "Monte Carlo worker threads")->capture_default_str();

  app.add_option("--l1", cfg.l1, "Torus length L1")->capture_default_str();
  app.add_option("--l2", cfg.l2, "Torus length L2")->capture_default_str();
  app.add_option("--amp", cfg.amp, "Field amplitude A (torus) or component scale (random fields)")
      ->capture_default_str();
  app.add_option("--coupling", cfg.coupling, "Gauge coupling g")->capture_default_str();
  app.add_option("--hbar", cfg.hbar, "Planck constant")->capture_default_str();
  app.add_option("--nmax", cfg.nmax, "Lattice cutoff |n| <= nmax")->capture_default_str();
  app.add_option("--kmax", cfg.kmax, "Orbit cutoff |k| <= kmax")->capture_default_str();
  app.add_option("--width", cfg.width, "Gaussian smoothing width")->capture_default_str();
  app.add_option("--lambda-min", cfg.lambda_min, "Smallest lambda")->capture_default_str();
  app.add_option("--lambda-max", cfg.lambda_max, "Largest lambda")->capture_default_str();
  app.add_option("--lambda-points", cfg.lambda_points, "Number of lambda points")
      ->capture_default_str();

  app.add_option("--kind", cfg.kind,
                 "weyl: free|colour|triple|mc (default free); wong: wong+|wong-|triple+|triple- "
                 "(default wong+)");
  app.add_option("--d", cfg.d, "Space-time dimension")->capture_default_str();
  app.add_option("--volume", cfg.volume, "Volume V")->capture_default_str();
  app.add_option("--colours", cfg.colours, "Colour multiplicity J")->capture_default_str();
  app.add_option("--group-n", cfg.group_n, "Gauge group SU(N)")->capture_default_str();
  app.add_option("--spin", cfg.spin, "Spin quantum number s")->capture_default_str();
  app.add_option("--sigma", cfg.sigma, "Gaussian field strength deviation")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str();
  app.add_option("--sites", cfg.sites, "Lattice sites for local Gaussian fields (0: constant)")
      ->capture_default_str();

  app.add_option("--zeta-min", cfg.zeta_min, "Smallest zeta")->capture_default_str();
  app.add_option("--zeta-max", cfg.zeta_max, "Largest zeta")->capture_default_str();
  app.add_option("--zeta-points", cfg.zeta_points, "Number of zeta points")->capture_default_str();

  app.add_option("--t-final", cfg.t_final, "Integration time")->capture_default_str();
  app.add_option("--dt", cfg.dt, "Step size")->capture_default_str();
  app.add_option("--stride", cfg.stride, "Keep every stride-th step")->capture_default_str();
  app.add_option("--momentum", cfg.momentum, "Initial momentum p0,p1,p2,p3")
      ->delimiter(',')
      ->expected(4);
  app.add_option("--spin-vector", cfg.spin_vector, "Initial classical spin s1,s2,s3")
      ->delimiter(',')
      ->expected(3);
  app.add_option("--perturb", cfg.perturb, "Test hook: corrupt the named invariant");

  using Fn = CommandResult (*)(const RunConfig&);
  const std::vector<std::tuple<std::string, std::string, Fn>> commands{
      {"algebra-check", "Run the algebraic identity checks", cmd_algebra_check},
      {"spectrum", "Exact torus spectrum with diagonalisation residuals", cmd_spectrum},
      {"trace", "Smoothed exact density vs Weyl term plus orbit sum", cmd_trace},
      {"weyl", "Mean density scan", cmd_weyl},
      {"chiral", "Scaled density curve r(zeta)", cmd_chiral},
      {"wong", "Wong flow trajectory with conservation diagnostics", cmd_wong},
      {"mc-average", "Gaussian field average of the triple-limit density", cmd_mc_average},
  };
  for (const auto& [name, help, fn] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  std::string command;
  Fn fn = nullptr;
  for (const auto& [name, help, f] : commands)
    if (app.got_subcommand(name)) command = name, fn = f;

  CommandResult res;
  try {
    cfg.validate(command);
    res = fn(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const std::string text = render(command, res, cfg.format);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    f << text;
    if (!f) {
      err << "error: cannot write " << cfg.out << '\n';
      return 1;
    }
  }
  std::ostream& info = cfg.out.empty() ? err : out;
  for (const auto& w : res.warnings) err << "warning: " << w << '\n';
  for (const auto& [k, v] : res.summary.items()) info << k << " = " << v.dump() << '\n';
  if (!res.failure.empty()) {
    err << "error: " << res.failure << '\n';
    return 1;
  }
  return 0;
}

}  // namespace sqcd::cli
