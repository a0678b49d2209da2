#include "sqcd/weyl.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace sqcd {

namespace {

constexpr double kPi = std::numbers::pi;

// (2s+1) J V / (2πħ)^d
double multiplicity(const WeylConfig& cfg) {
  return (2.0 * cfg.spin + 1.0) * cfg.J * cfg.volume / std::pow(2.0 * kPi * cfg.hbar, cfg.d);
}

double triple_prefactor(const WeylConfig& cfg) {
  return 2.0 * sphere_area(cfg.d) * multiplicity(cfg);
}

// One constant-field draw of ½ u^{(d-2)/2} Θ(u).
struct TripleSampler {
  const WeylConfig& cfg;
  std::shared_ptr<const LieAlgebraRep> algebra;
  RVector c_ref;
  double spin_norm;
  double lambda;
  double sigma;

  TripleSampler(const WeylConfig& c, double lam, double sig)
      : cfg(c),
        algebra(std::make_shared<LieAlgebraRep>(LieAlgebraRep::su(c.N))),
        c_ref(colour_reference(*algebra, c)),
        spin_norm(std::sqrt(c.c2_spin_value())),
        lambda(lam),
        sigma(sig) {}

  double operator()(CounterRng& rng) const {
    const double u0 = lambda * lambda;
    if (sigma == 0.0) return 0.5 * std::pow(u0, 0.5 * (cfg.d - 2));
    const RVector dir = uniform_on_sphere(rng, 3);
    const Vec3 s = spin_norm * Vec3(dir[0], dir[1], dir[2]);
    const RVector c = sample_colour_orbit(rng, *algebra, c_ref);
    double coupling = 0.0;
    for (int a = 0; a < c.size(); ++a) {
      for (int i = 0; i < 3; ++i) {
        const double e = sigma * rng.normal();
        const double b = sigma * rng.normal();
        coupling += s[i] * (e + b) * c[a];
      }
    }
    const double u = u0 + 2.0 * cfg.g * coupling;
    if (u <= 0.0) return 0.0;
    return 0.5 * std::pow(u, 0.5 * (cfg.d - 2));
  }
};

MeanEstimate scaled(MeanEstimate est, double factor) {
  est.value *= factor;
  est.std_error *= std::abs(factor);
  return est;
}

}  // namespace

double WeylConfig::c2_spin_value() const {
  if (c2_spin) return *c2_spin;
  const double h2 = hbar * hbar;
  return convention == CasimirConvention::Quantum ? h2 * spin * (spin + 1.0) : h2 * spin * spin;
}

double WeylConfig::c2_colour_value() const {
  if (c2_colour) return *c2_colour;
  const double h2 = hbar * hbar;
  const double n = N;
  return convention == CasimirConvention::Quantum ? h2 * (n * n - 1.0) / (2.0 * n)
                                                  : h2 * (n - 1.0) / (2.0 * n);
}

void WeylConfig::validate() const {
  std::ostringstream err;
  if (d < 2) err << "d must be >= 2; ";
  if (!(volume > 0.0)) err << "volume must be positive; ";
  if (J < 1) err << "J must be >= 1; ";
  if (!(spin >= 0.0)) err << "spin must be >= 0; ";
  if (!(hbar > 0.0)) err << "hbar must be positive; ";
  if (N < 2) err << "N must be >= 2; ";
  if (c2_spin && !(*c2_spin >= 0.0)) err << "c2_spin must be >= 0; ";
  if (c2_colour && !(*c2_colour >= 0.0)) err << "c2_colour must be >= 0; ";
  const std::string msg = err.str();
  if (!msg.empty()) throw ConfigError("invalid Weyl configuration: " + msg);
}

double sphere_area(int d) { return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d); }

double mean_density_free(double lambda, const WeylConfig& cfg) {
  if (lambda < 0.0) throw DomainError("mean_density_free: λ must be >= 0", lambda);
  return sphere_area(cfg.d) * multiplicity(cfg) * std::pow(lambda, cfg.d - 1);
}

RVector colour_reference(const LieAlgebraRep& algebra, const WeylConfig& cfg) {
  RVector c(algebra.size());
  for (int a = 0; a < algebra.size(); ++a) c[a] = 0.5 * cfg.hbar * algebra.generator(a)(0, 0).real();
  const double n = c.norm();
  const double target = std::sqrt(cfg.c2_colour_value());
  if (n > 0.0) c *= target / n;
  return c;
}

RVector sample_colour_orbit(CounterRng& rng, const LieAlgebraRep& algebra, const RVector& c_ref) {
  const CMatrix u = haar_su(rng, algebra.dim_rep());
  return algebra.components(u * algebra.combine(c_ref) * u.adjoint());
}

MeanEstimate mean_density_colour_limit(double lambda, const WeylConfig& cfg,
                                       const GaugeField& field, std::size_t samples,
                                       std::uint64_t seed, int threads) {
  if (samples == 0) throw ConfigError("mean_density_colour_limit: zero samples");
  if (!(lambda > 0.0)) throw DomainError("mean_density_colour_limit: λ must be positive", lambda);
  if (field.is_abelian() || !field.is_constant())
    throw UnsupportedError("mean_density_colour_limit needs a constant non-Abelian field");
  if (field.dim() != cfg.d)
    throw UnsupportedError("mean_density_colour_limit: field dimension differs from cfg.d");
  const LieAlgebraRep& alg = *field.algebra();
  const RVector c_ref = colour_reference(alg, cfg);
  const RMatrix a = field.potential(RVector::Zero(cfg.d));
  const double g = field.coupling();
  const int d = cfg.d;
  const double area = sphere_area(d);

  auto one = [&](CounterRng& rng, std::size_t) {
    const RVector c = sample_colour_orbit(rng, alg, c_ref);
    const RVector shift = g * a * c;
    const RVector w = uniform_on_sphere(rng, d);
    // Radii r > 0 with |rω - shift| = λ.
    const double b = w.dot(shift);
    const double disc = b * b - shift.squaredNorm() + lambda * lambda;
    if (disc < 0.0) return 0.0;
    const double root = std::sqrt(disc);
    double sum = 0.0;
    for (double r : {b + root, b - root}) {
      if (r <= 0.0) continue;
      const double slope = std::abs((r * w - shift).dot(w)) / lambda;
      if (slope == 0.0) continue;
      sum += std::pow(r, d - 1) / slope;
    }
    return area * sum;
  };
  return scaled(monte_carlo_mean(seed, samples, one, threads), multiplicity(cfg));
}

double phi_d(double lambda, double v, int d, const QuadratureOptions& opt) {
  if (lambda < 0.0) throw DomainError("phi_d: λ must be >= 0", lambda);
  if (v < 0.0) throw DomainError("phi_d: v must be >= 0", v);
  if (d < 1) throw UnsupportedError("phi_d: d must be >= 1");
  if (v == 0.0) return 0.5 * std::pow(lambda, d - 2);

  const double l2 = lambda * lambda;
  const double norm = 1.0 / std::sqrt(2.0 * kPi * v * v);
  auto f = [&](double p) {
    const double x = p * p - l2;
    return norm * std::exp(-x * x / (2.0 * v * v)) * std::pow(p, d - 1);
  };
  const double upper = lambda + 10.0 * std::sqrt(v) + 10.0;
  // Breakpoints bracket the peak |p² − λ²| ≲ v, which is narrow for v ≪ λ².
  std::vector<double> cuts{0.0};
  for (double c : {std::sqrt(std::max(0.0, l2 - 8.0 * v)), lambda, std::sqrt(l2 + 8.0 * v)})
    if (c > cuts.back() && c < upper) cuts.push_back(c);
  cuts.push_back(upper);
  // Boost's adaptive error output is not rescaled to the subinterval width, so
  // the error is estimated from two independent rules instead.
  using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;
  using GK31 = boost::math::quadrature::gauss_kronrod<double, 31>;
  double value = 0.0, coarse = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    coarse += GK15::integrate(f, cuts[i], cuts[i + 1], opt.max_depth, opt.rel_tol);
    value += GK31::integrate(f, cuts[i], cuts[i + 1], opt.max_depth, opt.rel_tol);
  }
  const double err_sum = std::abs(value - coarse);

  // Beyond `upper` the integrand decays faster than exp(-(upper²-λ²)(p²-λ²)/2v²).
  const double x_up = upper * upper - l2;
  const double rate = x_up * upper / (v * v);
  const double tail = f(upper) / rate * (1.0 + (d - 1) / (rate * upper));

  const double err = err_sum + tail;
  if (!(err <= std::max(1e-10, 100.0 * opt.rel_tol) * std::abs(value))) {
    std::ostringstream os;
    os << "phi_d: quadrature did not converge (λ = " << lambda << ", v = " << v
       << ", error estimate " << err << ")";
    throw IntegrationError(os.str(), 0.0);
  }
  return value;
}

double phi_4_closed(double lambda, double v) {
  const double l2 = lambda * lambda;
  if (v == 0.0) return 0.5 * l2;
  const double s = std::sqrt(2.0 * v * v);
  return s / (4.0 * std::sqrt(kPi)) * std::exp(-l2 * l2 / (2.0 * v * v)) +
         0.25 * l2 * (1.0 + std::erf(l2 / s));
}

double triple_v(double sigma, const WeylConfig& cfg) {
  return std::sqrt(8.0) * sigma * cfg.g * std::sqrt(cfg.c2_spin_value()) *
         std::sqrt(cfg.c2_colour_value());
}

double mean_density_triple(double lambda, double v, const WeylConfig& cfg) {
  if (lambda < 0.0) throw DomainError("mean_density_triple: λ must be >= 0", lambda);
  if (v == 0.0) return mean_density_free(lambda, cfg);
  const double phi = cfg.d == 4 ? phi_4_closed(lambda, v) : phi_d(lambda, v, cfg.d);
  return triple_prefactor(cfg) * lambda * phi;
}

double mean_density_triple_small_lambda(double lambda, double v, const WeylConfig& cfg) {
  if (!(v > 0.0)) throw DomainError("mean_density_triple_small_lambda: v must be positive", v);
  // Φ_d(0, v) = (2πv²)^{-1/2} (2v²)^{d/4} Γ(d/4) / 4
  const double phi0 = std::pow(2.0 * v * v, 0.25 * cfg.d) * std::tgamma(0.25 * cfg.d) /
                      (4.0 * std::sqrt(2.0 * kPi * v * v));
  const double l2 = lambda * lambda;
  return triple_prefactor(cfg) * lambda * phi0 * std::exp(-l2 * l2 / (2.0 * v * v));
}

double gaussian_phase_average(const Vec3& s, const RVector& C, double g, double sigma, double t) {
  return std::exp(-4.0 * sigma * sigma * g * g * s.squaredNorm() * C.squaredNorm() * t * t);
}

MeanEstimate gaussian_phase_average_mc(const Vec3& s, const RVector& C, double g, double sigma,
                                       double t, std::size_t samples, std::uint64_t seed) {
  auto one = [&](CounterRng& rng, std::size_t) {
    double x = 0.0;
    for (int a = 0; a < C.size(); ++a)
      for (int i = 0; i < 3; ++i) x += s[i] * sigma * (rng.normal() + rng.normal()) * C[a];
    return std::cos(2.0 * g * x * t);
  };
  return monte_carlo_mean(seed, samples, one);
}

MeanEstimate mc_density_triple(double lambda, double sigma, const WeylConfig& cfg,
                               std::size_t samples, std::uint64_t seed, int threads) {
  if (samples == 0) throw ConfigError("mc_density_triple: zero samples");
  if (lambda < 0.0) throw DomainError("mc_density_triple: λ must be >= 0", lambda);
  if (sigma < 0.0) throw DomainError("mc_density_triple: σ must be >= 0", sigma);
  cfg.validate();
  const TripleSampler sampler(cfg, lambda, sigma);
  auto one = [&](CounterRng& rng, std::size_t) { return sampler(rng); };
  return scaled(monte_carlo_mean(seed, samples, one, threads), triple_prefactor(cfg) * lambda);
}

MeanEstimate mc_density_triple_lattice(double lambda, double sigma, const WeylConfig& cfg,
                                       int sites, std::size_t samples, std::uint64_t seed,
                                       int threads) {
  if (samples == 0) throw ConfigError("mc_density_triple_lattice: zero samples");
  if (sites < 1) throw ConfigError("mc_density_triple_lattice: need at least one site");
  cfg.validate();
  const TripleSampler sampler(cfg, lambda, sigma);
  const auto n = static_cast<std::size_t>(sites);
  auto one = [&](CounterRng&, std::size_t i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      CounterRng site(seed, i * n + j);
      sum += sampler(site);
    }
    return sum / static_cast<double>(n);
  };
  return scaled(monte_carlo_mean(seed, samples, one, threads), triple_prefactor(cfg) * lambda);
}

double chiral_r(double zeta) {
  if (!(zeta > 0.0)) throw DomainError("chiral_r: ζ must be positive", zeta);
  return zeta * std::exp(-1.0 / (2.0 * zeta * zeta));
}

std::vector<ChiralCurvePoint> chiral_curve(const std::vector<double>& zeta_grid) {
  std::vector<ChiralCurvePoint> out;
  out.reserve(zeta_grid.size());
  for (double z : zeta_grid) out.push_back({z, chiral_r(z)});
  return out;
}

}  // namespace sqcd
