#include "sqcd/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "sqcd/algebra.hpp"
#include "sqcd/symbols.hpp"

namespace sqcd {

namespace {

constexpr double kPi = std::numbers::pi;

double heaviside(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); }

void require_special(const TorusConfig& cfg, const char* what) {
  if (!cfg.is_special())
    throw UnsupportedError(std::string(what) + " needs the special field A⃗₁ = A ê₁, A⃗₂ = A ê₂");
}

double density_prefactor(const TorusConfig& cfg) {
  return cfg.L1 * cfg.L2 / (2.0 * kPi * cfg.hbar * cfg.hbar);
}

const std::shared_ptr<const LieAlgebraRep>& su2() {
  static const auto alg = std::make_shared<const LieAlgebraRep>(LieAlgebraRep::su(2));
  return alg;
}

}  // namespace

TorusConfig TorusConfig::special(double A, double L1, double L2, double hbar, double g) {
  TorusConfig c;
  c.L1 = L1;
  c.L2 = L2;
  c.hbar = hbar;
  c.g = g;
  c.A1 = Vec3(A, 0.0, 0.0);
  c.A2 = Vec3(0.0, A, 0.0);
  return c;
}

bool TorusConfig::is_special() const {
  return A1[1] == 0.0 && A1[2] == 0.0 && A2[0] == 0.0 && A2[2] == 0.0 && A1[0] == A2[1];
}

double TorusConfig::amplitude() const {
  require_special(*this, "TorusConfig::amplitude");
  return A1[0];
}

double TorusConfig::a() const { return hbar * g * amplitude(); }

void TorusConfig::validate() const {
  if (!(L1 > 0.0) || !(L2 > 0.0)) throw ConfigError("torus lengths L1, L2 must be positive");
  if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
  if (!std::isfinite(g) || !A1.allFinite() || !A2.allFinite())
    throw ConfigError("coupling and potentials must be finite");
}

Eigen::Vector2d torus_momentum(int n1, int n2, const TorusConfig& cfg) {
  return {2.0 * kPi * cfg.hbar * n1 / cfg.L1, 2.0 * kPi * cfg.hbar * n2 / cfg.L2};
}

double general_eigenvalue(int n1, int n2, Branch branch, const TorusConfig& cfg) {
  const Eigen::Vector2d p = torus_momentum(n1, n2, cfg);
  const double h2g2 = cfg.hbar * cfg.hbar * cfg.g * cfg.g;
  const Vec3 pa = p[0] * cfg.A1 + p[1] * cfg.A2;  // p_μ A⃗_μ
  const double outer = p.squaredNorm() + 0.25 * h2g2 * (cfg.A1.squaredNorm() + cfg.A2.squaredNorm());
  const double inner = h2g2 * pa.squaredNorm() + 0.25 * h2g2 * h2g2 * cfg.A1.cross(cfg.A2).squaredNorm();
  const double root = std::sqrt(inner);
  const double sq = branch == Branch::Plus ? outer + root : std::max(0.0, outer - root);
  return std::sqrt(sq);
}

double special_eigenvalue(int n1, int n2, Branch branch, const TorusConfig& cfg) {
  require_special(cfg, "special_eigenvalue");
  const double a = std::abs(cfg.a());
  const Eigen::Vector2d p = torus_momentum(n1, n2, cfg);
  const double base = std::sqrt(p.squaredNorm() + 0.25 * a * a);
  return branch == Branch::Plus ? base + 0.5 * a : base - 0.5 * a;
}

BruteForceEigen brute_force_eigenvalues(int n1, int n2, const TorusConfig& cfg) {
  RMatrix a(2, 3);
  a.row(0) = cfg.A1.transpose();
  a.row(1) = cfg.A2.transpose();
  const GaugeField field = GaugeField::constant(su2(), a, cfg.g);
  const Eigen::Vector2d p = torus_momentum(n1, n2, cfg);
  Couplings c;
  c.hbar = cfg.hbar;
  const CMatrix d = dirac_symbol(RVector(p), RVector::Zero(2), field, c);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(d, Eigen::EigenvaluesOnly);
  BruteForceEigen out;
  out.all = es.eigenvalues();
  out.lambda_minus = out.all[2];
  out.lambda_plus = out.all[3];
  return out;
}

SpectrumTable exact_eigenvalues(const TorusConfig& cfg, int nmax, bool verify) {
  cfg.validate();
  if (nmax < 0) throw ConfigError("nmax must be >= 0");
  SpectrumTable table;
  const std::size_t side = 2 * static_cast<std::size_t>(nmax) + 1;
  table.entries.reserve(2 * side * side);
  for (int n1 = -nmax; n1 <= nmax; ++n1) {
    for (int n2 = -nmax; n2 <= nmax; ++n2) {
      const double lp = general_eigenvalue(n1, n2, Branch::Plus, cfg);
      const double lm = general_eigenvalue(n1, n2, Branch::Minus, cfg);
      double rp = std::numeric_limits<double>::quiet_NaN();
      double rm = rp;
      if (verify) {
        const BruteForceEigen bf = brute_force_eigenvalues(n1, n2, cfg);
        rp = std::abs(lp - bf.lambda_plus);
        rm = std::abs(lm - bf.lambda_minus);
        table.max_oracle_residual = std::max({table.max_oracle_residual, rp, rm});
      }
      table.entries.push_back({n1, n2, Branch::Plus, lp, rp});
      table.entries.push_back({n1, n2, Branch::Minus, lm, rm});
    }
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const SpectrumEntry& x, const SpectrumEntry& y) {
              if (x.lambda != y.lambda) return x.lambda < y.lambda;
              if (x.n1 != y.n1) return x.n1 < y.n1;
              if (x.n2 != y.n2) return x.n2 < y.n2;
              return x.branch == Branch::Plus && y.branch == Branch::Minus;
            });
  return table;
}

double exact_mean_density(double lambda, const TorusConfig& cfg) {
  require_special(cfg, "exact_mean_density");
  if (lambda < 0.0) throw DomainError("exact_mean_density: λ must be >= 0", lambda);
  const double a = std::abs(cfg.a());
  return density_prefactor(cfg) *
         (heaviside(lambda - a) * (lambda - 0.5 * a) + (lambda + 0.5 * a));
}

std::vector<OrbitGroup> orbit_groups(const TorusConfig& cfg, int kmax) {
  std::map<double, OrbitGroup> groups;
  for (int k1 = 0; k1 <= kmax; ++k1) {
    for (int k2 = 0; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const double q = std::sqrt(k1 * k1 * cfg.L1 * cfg.L1 + k2 * k2 * cfg.L2 * cfg.L2);
      const int mult = (k1 > 0 ? 2 : 1) * (k2 > 0 ? 2 : 1);
      auto [it, inserted] = groups.try_emplace(q, OrbitGroup{q, 0, k1, k2});
      it->second.multiplicity += mult;
    }
  }
  std::vector<OrbitGroup> out;
  out.reserve(groups.size());
  for (const auto& [q, grp] : groups) out.push_back(grp);
  return out;
}

double bessel_j0(double x) {
  using namespace boost::math::policies;
  return boost::math::cyl_bessel_j(0, x, policy<promote_double<false>>());
}

double orbit_term_exact(double lambda, double q, const TorusConfig& cfg) {
  const double a = std::abs(cfg.a());
  const double h = cfg.hbar;
  double v = (lambda + 0.5 * a) * bessel_j0((q / h) * std::sqrt(lambda * (lambda + a)));
  if (lambda >= a) {
    const double th = heaviside(lambda - a);
    v += th * (lambda - 0.5 * a) * bessel_j0((q / h) * std::sqrt(lambda * (lambda - a)));
  }
  return density_prefactor(cfg) * v;
}

double orbit_colour_weight(double q, const TorusConfig& cfg) {
  return std::cos(0.5 * q * cfg.g * cfg.amplitude());
}

double orbit_term_semiclassical(double lambda, double q, const TorusConfig& cfg) {
  const double h = cfg.hbar;
  const double pref = cfg.L1 * cfg.L2 / std::pow(kPi * h, 1.5);
  return pref * std::sqrt(2.0 * lambda / q) * orbit_colour_weight(q, cfg) *
         std::cos(q * lambda / h - 0.25 * kPi);
}

double orbit_sum_exact(double lambda, const TorusConfig& cfg, int kmax) {
  require_special(cfg, "orbit_sum_exact");
  if (!(lambda > 0.0)) throw DomainError("orbit_sum_exact: λ must be positive", lambda);
  double sum = 0.0;
  for (const auto& grp : orbit_groups(cfg, kmax))
    sum += grp.multiplicity * orbit_term_exact(lambda, grp.q, cfg);
  return sum;
}

double orbit_sum_semiclassical(double lambda, const TorusConfig& cfg, int kmax) {
  require_special(cfg, "orbit_sum_semiclassical");
  if (!(lambda > 0.0)) throw DomainError("orbit_sum_semiclassical: λ must be positive", lambda);
  double sum = 0.0;
  for (const auto& grp : orbit_groups(cfg, kmax))
    sum += grp.multiplicity * orbit_term_semiclassical(lambda, grp.q, cfg);
  return sum;
}

CompareResult smoothed_compare(const TorusConfig& cfg, const std::vector<double>& lambda_grid,
                               double width, int nmax, int kmax, const CompareOptions& options) {
  cfg.validate();
  require_special(cfg, "smoothed_compare");
  if (!(width > 0.0)) throw ConfigError("smoothing width must be positive");
  if (nmax < 0 || kmax < 0) throw ConfigError("nmax and kmax must be >= 0");
  if (lambda_grid.empty()) return {};
  for (double l : lambda_grid)
    if (!(l >= 0.0)) throw ConfigError("λ grid points must be >= 0");

  const double lmin = *std::min_element(lambda_grid.begin(), lambda_grid.end());
  const double lmax = *std::max_element(lambda_grid.begin(), lambda_grid.end());
  const double reach = 8.0 * width;
  const double h = cfg.hbar;
  const double a = std::abs(cfg.a());
  CompareResult res;

  // Truncation diagnostics.
  double smallest_discarded = std::numeric_limits<double>::infinity();
  for (int i = -(nmax + 1); i <= nmax + 1; ++i) {
    for (const auto& [n1, n2] : {std::pair{i, -(nmax + 1)}, std::pair{i, nmax + 1},
                                 std::pair{-(nmax + 1), i}, std::pair{nmax + 1, i}})
      smallest_discarded =
          std::min(smallest_discarded, general_eigenvalue(n1, n2, Branch::Minus, cfg));
  }
  if (smallest_discarded <= lmax + reach) {
    std::ostringstream os;
    os << "nmax = " << nmax << " truncates the spectrum at λ = " << smallest_discarded
       << ", inside the smoothing window (needs > " << lmax + reach << ")";
    res.warnings.push_back(os.str());
  }
  const double q_next = (kmax + 1) * std::min(cfg.L1, cfg.L2);
  const double damp_next = std::exp(-0.5 * q_next * q_next * width * width / (h * h));
  if (damp_next >= 1e-6) {
    std::ostringstream os;
    os << "kmax = " << kmax << " drops orbits with Gaussian damping " << damp_next
       << " (needs < 1e-6)";
    res.warnings.push_back(os.str());
  }

  auto gauss = [width](double x) {
    return std::exp(-0.5 * x * x / (width * width)) / (std::sqrt(2.0 * kPi) * width);
  };

  // Exact side: Gaussian-smoothed eigenvalue spikes.
  const SpectrumTable spec = exact_eigenvalues(cfg, nmax, false);
  std::vector<double> exact(lambda_grid.size(), 0.0);
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    const double l = lambda_grid[i];
    auto lo = std::lower_bound(spec.entries.begin(), spec.entries.end(), l - 12.0 * width,
                               [](const SpectrumEntry& e, double v) { return e.lambda < v; });
    double s = 0.0;
    for (auto it = lo; it != spec.entries.end() && it->lambda <= l + 12.0 * width; ++it)
      s += gauss(l - it->lambda);
    exact[i] = s;
  }

  // Orbits that survive the Gaussian damping.
  std::vector<OrbitGroup> orbits;
  for (const auto& grp : orbit_groups(cfg, kmax)) {
    const double damp = std::exp(-0.5 * grp.q * grp.q * width * width / (h * h));
    if (damp >= options.damping_cutoff) orbits.push_back(grp);
  }
  res.orbit_groups_used = static_cast<int>(orbits.size());
  const double q_max = orbits.empty() ? 0.0 : orbits.back().q;

  // Composite 10-point Gauss–Legendre mesh with breakpoints at 0 and a.
  const double lo_edge = std::max(0.0, lmin - reach);
  const double hi_edge = lmax + reach;
  double step = 0.125 * width;
  if (q_max > 0.0) step = std::min(step, 0.5 * h / q_max);
  std::vector<double> cuts{lo_edge};
  if (a > lo_edge && a < hi_edge) cuts.push_back(a);
  cuts.push_back(hi_edge);

  using GL = boost::math::quadrature::gauss<double, 10>;
  std::vector<double> nodes, weights;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double x0 = cuts[c], x1 = cuts[c + 1];
    const auto panels = static_cast<long>(std::ceil((x1 - x0) / step));
    const double hp = (x1 - x0) / static_cast<double>(panels);
    for (long k = 0; k < panels; ++k) {
      const double mid = x0 + (static_cast<double>(k) + 0.5) * hp;
      const double half = 0.5 * hp;
      const auto& xs = GL::abscissa();
      const auto& ws = GL::weights();
      for (std::size_t j = 0; j < xs.size(); ++j) {
        for (double sgn : {-1.0, 1.0}) {
          if (xs[j] == 0.0 && sgn > 0.0) continue;
          nodes.push_back(mid + sgn * half * xs[j]);
          weights.push_back(half * ws[j]);
        }
      }
    }
  }

  std::vector<double> mean_at(nodes.size()), osc_at(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const double l = nodes[n];
    mean_at[n] = exact_mean_density(l, cfg);
    double s = 0.0;
    for (const auto& grp : orbits) s += grp.multiplicity * orbit_term_exact(l, grp.q, cfg);
    osc_at[n] = s;
  }

  res.rows.resize(lambda_grid.size());
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    const double l = lambda_grid[i];
    double weyl = 0.0, osc = 0.0;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      const double w = weights[n] * gauss(l - nodes[n]);
      weyl += w * mean_at[n];
      osc += w * osc_at[n];
    }
    CompareRow& row = res.rows[i];
    row.lambda = l;
    row.exact_smoothed = exact[i];
    row.weyl = weyl;
    row.weyl_plus_orbits = weyl + osc;
    if (exact[i] != 0.0)
      res.max_relative_deviation = std::max(
          res.max_relative_deviation, std::abs(row.weyl_plus_orbits - exact[i]) / std::abs(exact[i]));
  }
  return res;
}

}  // namespace sqcd
