#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sqcd/weyl.hpp"
#include "test_helpers.hpp"

namespace sqcd {
namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(FreeDensity, DefaultConfigValue) {
  const WeylConfig cfg;
  EXPECT_NEAR(mean_density_free(1.0, cfg), 0.075990887731753328583, 1e-16);
  EXPECT_NEAR(mean_density_free(1.0, cfg), 3.0 / (4.0 * kPi * kPi), 1e-16);
  EXPECT_EQ(mean_density_free(0.0, cfg), 0.0);
}

TEST(FreeDensity, Homogeneity) {
  for (int d : {2, 3, 4, 5}) {
    WeylConfig cfg;
    cfg.d = d;
    for (double l : {0.3, 1.0, 2.7})
      EXPECT_NEAR(mean_density_free(2 * l, cfg), std::pow(2.0, d - 1) * mean_density_free(l, cfg),
                  1e-14 * mean_density_free(2 * l, cfg));
  }
}

TEST(FreeDensity, TwoDimensionalTorusForm) {
  WeylConfig cfg;
  cfg.d = 2;
  cfg.J = 2;
  cfg.spin = 0.0;
  cfg.volume = 3.0 * 5.0;
  cfg.hbar = 0.7;
  EXPECT_NEAR(mean_density_free(1.3, cfg), 15.0 * 1.3 / (kPi * 0.49), 1e-13);
}

TEST(SphereArea, KnownValues) {
  EXPECT_NEAR(sphere_area(2), 2 * kPi, 1e-15);
  EXPECT_NEAR(sphere_area(3), 4 * kPi, 1e-14);
  EXPECT_NEAR(sphere_area(4), 2 * kPi * kPi, 1e-14);
}

TEST(WeylConfig, CasimirConventions) {
  WeylConfig cfg;
  cfg.hbar = 2.0;
  EXPECT_DOUBLE_EQ(cfg.c2_spin_value(), 1.0);
  EXPECT_DOUBLE_EQ(cfg.c2_colour_value(), 4.0 / 3.0);
  cfg.convention = CasimirConvention::Quantum;
  EXPECT_DOUBLE_EQ(cfg.c2_spin_value(), 3.0);
  EXPECT_DOUBLE_EQ(cfg.c2_colour_value(), 16.0 / 3.0);
  cfg.c2_spin = 0.25;
  EXPECT_DOUBLE_EQ(cfg.c2_spin_value(), 0.25);
  cfg.volume = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(ColourOrbit, ReferenceAndSamplesKeepCasimirs) {
  WeylConfig cfg;
  const auto alg = LieAlgebraRep::su(3);
  const RVector c = colour_reference(alg, cfg);
  EXPECT_NEAR(c.squaredNorm(), 1.0 / 3.0, 1e-15);
  const double c3 = alg.cubic_casimir(c);
  CounterRng rng(7, 0);
  for (int i = 0; i < 20; ++i) {
    const RVector s = sample_colour_orbit(rng, alg, c);
    EXPECT_NEAR(s.squaredNorm(), c.squaredNorm(), 1e-14);
    EXPECT_NEAR(alg.cubic_casimir(s), c3, 1e-14);
  }
}

// Reference values from 30-digit quadrature.
TEST(PhiD, FrozenValues) {
  struct Row { double lambda, v; int d; double want; };
  const Row rows[] = {
      {0.0, 1.0, 4, 0.19947114020071633897}, {3.0, 1.0, 4, 4.5},
      {1.0, 1.0, 4, 0.54165773529384314919}, {0.5, 0.1, 4, 0.12510020685895641002},
      {1.0, 1.0, 3, 0.45030146563515815229}, {2.0, 0.5, 3, 0.99801699993359884843},
      {1.0, 1.0, 2, 0.42067237303427147429}, {0.7, 2.0, 6, 1.4548880095970752306},
  };
  for (const auto& r : rows) {
    EXPECT_LT(rel(phi_d(r.lambda, r.v, r.d), r.want), 1e-10) << r.lambda << " " << r.v << " " << r.d;
    if (r.d == 4) EXPECT_LT(rel(phi_4_closed(r.lambda, r.v), r.want), 1e-13);
  }
  EXPECT_NEAR(phi_4_closed(0.0, 1.0), std::sqrt(2.0) / (4.0 * std::sqrt(kPi)), 1e-16);
}

TEST(PhiD, ClosedFormMatchesQuadratureOnGrid) {
  for (double v : {0.1, 1.0, 10.0})
    for (double l = 0.0; l <= 5.0; l += 0.25)
      EXPECT_LT(rel(phi_d(l, v, 4), phi_4_closed(l, v)), 1e-10) << l << " " << v;
}

TEST(PhiD, FreeLimits) {
  EXPECT_EQ(phi_d(1.7, 0.0, 4), 0.5 * 1.7 * 1.7);
  EXPECT_NEAR(phi_4_closed(2.0, 1e-6), 2.0, 1e-12);
  for (int d : {3, 4, 5}) {
    const double l = 6.0;
    EXPECT_LT(rel(phi_d(l, 0.05, d), 0.5 * std::pow(l, d - 2)), 1e-4) << d;
  }
}

TEST(PhiD, RejectsNegativeArguments) {
  EXPECT_THROW(phi_d(-1.0, 1.0, 4), DomainError);
  EXPECT_THROW(phi_d(1.0, -1.0, 4), DomainError);
}

TEST(TripleDensity, ReducesToFreeAtZeroVariance) {
  for (int d : {3, 4}) {
    WeylConfig cfg;
    cfg.d = d;
    for (double l : {0.0, 0.5, 1.0, 2.5})
      EXPECT_NEAR(mean_density_triple(l, 0.0, cfg), mean_density_free(l, cfg),
                  1e-15 * (1.0 + mean_density_free(l, cfg)));
  }
}

TEST(TripleDensity, SmallLambdaApproximation) {
  const WeylConfig cfg;
  const double approx = mean_density_triple_small_lambda(0.5, 1.0, cfg);
  EXPECT_NEAR(approx, 3.0 / std::pow(2 * kPi, 2.5) * 0.5 * std::exp(-0.5 * 0.5 * 0.5 * 0.5 / 2.0),
              1e-15);
  EXPECT_NEAR(approx, 0.014692, 5e-6);
  // The relative correction grows like 1.2533 λ²/v.
  for (double l : {0.01, 0.02, 0.05})
    EXPECT_LT(rel(mean_density_triple(l, 1.0, cfg), mean_density_triple_small_lambda(l, 1.0, cfg)),
              1.3 * l * l)
        << l;
}

TEST(TripleDensity, NonNegativeAndMonotoneInV) {
  const WeylConfig cfg;
  for (double l : {0.05, 0.1, 0.2}) {
    double prev = mean_density_triple(l, 0.0, cfg);
    for (double v = 0.1; v <= 5.0; v += 0.1) {
      const double cur = mean_density_triple(l, v, cfg);
      EXPECT_GE(cur, 0.0);
      EXPECT_GT(cur, prev);
      prev = cur;
    }
  }
}

TEST(TripleDensity, GeneralDimensionUsesQuadrature) {
  WeylConfig cfg;
  cfg.d = 3;
  const double want = 2.0 * sphere_area(3) * 2.0 * 3.0 / std::pow(2 * kPi, 3) * 1.0 *
                      0.45030146563515815229;
  EXPECT_LT(rel(mean_density_triple(1.0, 1.0, cfg), want), 1e-10);
}

TEST(TripleV, Definition) {
  WeylConfig cfg;
  EXPECT_NEAR(triple_v(1.0, cfg), std::sqrt(8.0) * 0.5 * std::sqrt(1.0 / 3.0), 1e-15);
}

TEST(GaussianPhase, Limits) {
  const Vec3 s(0.1, 0.2, 0.3);
  const RVector c = RVector::Ones(8);
  EXPECT_EQ(gaussian_phase_average(s, c, 1.0, 0.5, 0.0), 1.0);
  EXPECT_EQ(gaussian_phase_average(s, c, 1.0, 0.0, 2.0), 1.0);
}

TEST(GaussianPhase, MonteCarloAgrees) {
  const Vec3 s(0.5, 0.0, 0.0);
  RVector c = RVector::Zero(8);
  c[2] = 0.4;
  c[7] = 0.3;
  for (double t : {0.5, 1.0, 2.0}) {
    const MeanEstimate mc = gaussian_phase_average_mc(s, c, 1.0, 0.8, t, 200000, 99);
    EXPECT_LT(std::abs(mc.value - gaussian_phase_average(s, c, 1.0, 0.8, t)),
              3.0 * mc.std_error + 1e-12)
        << t;
  }
}

TEST(MonteCarloTriple, ZeroVarianceIsExact) {
  const WeylConfig cfg;
  const MeanEstimate e = mc_density_triple(1.3, 0.0, cfg, 100, 1);
  EXPECT_NEAR(e.value, mean_density_free(1.3, cfg), 1e-15);
  EXPECT_EQ(e.std_error, 0.0);
}

TEST(MonteCarloTriple, AgreesWithClosedForm) {
  const WeylConfig cfg;
  const double sigma = 1.0 / triple_v(1.0, cfg);  // v = 1
  const MeanEstimate e = mc_density_triple(1.0, sigma, cfg, 200000, 5);
  EXPECT_LT(std::abs(e.value - mean_density_triple(1.0, 1.0, cfg)), 3.0 * e.std_error);
}

TEST(MonteCarloTriple, ThreadCountDoesNotChangeResult) {
  const WeylConfig cfg;
  const MeanEstimate a = mc_density_triple(0.7, 0.4, cfg, 20000, 3, 1);
  const MeanEstimate b = mc_density_triple(0.7, 0.4, cfg, 20000, 3, 4);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(MonteCarloTriple, UnbiasedOverRepetitions) {
  const WeylConfig cfg;
  const double sigma = 0.5 / triple_v(1.0, cfg);
  const double want = mean_density_triple(0.8, 0.5, cfg);
  int inside = 0;
  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    const MeanEstimate e = mc_density_triple(0.8, sigma, cfg, 2000, seed);
    if (std::abs(e.value - want) < 3.0 * e.std_error) ++inside;
  }
  EXPECT_GE(inside, 99);
}

TEST(MonteCarloTriple, LatticeSharesRandomNumbersWithConstantField) {
  const WeylConfig cfg;
  const double sigma = 0.6;
  const MeanEstimate lat = mc_density_triple_lattice(0.9, sigma, cfg, 4, 2500, 11);
  const MeanEstimate con = mc_density_triple(0.9, sigma, cfg, 10000, 11);
  EXPECT_LT(rel(lat.value, con.value), 1e-12);
  EXPECT_THROW(mc_density_triple_lattice(0.9, sigma, cfg, 0, 10, 1), ConfigError);
}

TEST(ColourLimit, FieldFreeIsExact) {
  const WeylConfig cfg;
  const GaugeField f = GaugeField::zero(4, testing::su(3));
  const MeanEstimate e = mean_density_colour_limit(1.2, cfg, f, 1000, 1);
  EXPECT_NEAR(e.value, mean_density_free(1.2, cfg), 1e-14);
  EXPECT_LT(e.std_error, 1e-14);
}

TEST(ColourLimit, ShiftInvariance) {
  std::mt19937_64 rng(21);
  for (int n : {2, 3}) {
    WeylConfig cfg;
    cfg.N = n;
    cfg.J = n;
    const GaugeField f =
        GaugeField::constant(testing::su(n), testing::random_matrix(rng, 4, n * n - 1), 1.0);
    const MeanEstimate e = mean_density_colour_limit(1.5, cfg, f, 20000, 3);
    EXPECT_LT(std::abs(e.value - mean_density_free(1.5, cfg)), 3.0 * e.std_error) << n;
  }
}

TEST(ColourLimit, Validation) {
  const WeylConfig cfg;
  EXPECT_THROW(mean_density_colour_limit(1.0, cfg, GaugeField::zero(4, testing::su(3)), 0, 1),
               ConfigError);
  EXPECT_THROW(mean_density_colour_limit(1.0, cfg, GaugeField::abelian_constant(RVector::Zero(4)),
                                         10, 1),
               UnsupportedError);
}

TEST(Chiral, CurveValues) {
  EXPECT_NEAR(chiral_r(1.0), 0.6065306597126334236, 1e-16);
  EXPECT_NEAR(chiral_r(2.0), 1.7649938051691908057, 1e-15);
  EXPECT_LT(chiral_r(0.1), 1e-21);
  const auto curve = chiral_curve({0.2, 0.5, 1.0, 2.0, 3.0});
  for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_GT(curve[i].r, curve[i - 1].r);
  EXPECT_NEAR(chiral_r(50.0) / 50.0, 1.0, 2e-4);
  EXPECT_THROW(chiral_r(0.0), DomainError);
}

}  // namespace
}  // namespace sqcd
