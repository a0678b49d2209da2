#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sqcd/algebra.hpp"
#include "test_helpers.hpp"

namespace sqcd {
namespace {

const Complex kI{0.0, 1.0};

TEST(Gamma, CliffordRelationsD4) {
  const GammaSet g = build_gamma(4);
  ASSERT_EQ(g.gamma.size(), 4u);
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const CMatrix ac = g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu];
      const CMatrix want = (mu == nu ? 2.0 : 0.0) * CMatrix::Identity(4, 4);
      EXPECT_LT((ac - want).cwiseAbs().maxCoeff(), 1e-14) << mu << nu;
    }
    EXPECT_LT((g.gamma[mu] - g.gamma[mu].adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Gamma, ChiralRepresentationLayout) {
  const GammaSet g = build_gamma(4);
  CMatrix g4 = CMatrix::Zero(4, 4);
  g4.topRightCorner(2, 2).setIdentity();
  g4.bottomLeftCorner(2, 2).setIdentity();
  EXPECT_LT((g.gamma[3] - g4).cwiseAbs().maxCoeff(), 1e-15);
  ASSERT_TRUE(g.gamma5.has_value());
  const Eigen::Vector4cd diag(1.0, 1.0, -1.0, -1.0);
  EXPECT_LT((*g.gamma5 - CMatrix(diag.asDiagonal())).cwiseAbs().maxCoeff(), 1e-15);
  const CMatrix ac = g.gamma[0] * g.gamma[1] + g.gamma[1] * g.gamma[0];
  EXPECT_LT(ac.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Gamma, TwoDimensional) {
  const GammaSet g = build_gamma(2);
  ASSERT_EQ(g.spinor_dim(), 2);
  EXPECT_FALSE(g.gamma5.has_value());
  for (const auto& m : g.gamma)
    EXPECT_LT((m * m - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Gamma, RejectsOtherDimensions) {
  EXPECT_THROW(build_gamma(3), UnsupportedError);
  EXPECT_THROW(build_gamma(0), UnsupportedError);
}

TEST(SuN, SU2IsPauli) {
  const auto alg = LieAlgebraRep::su(2);
  ASSERT_EQ(alg.size(), 3);
  const auto& s = pauli();
  for (int a = 0; a < 3; ++a)
    EXPECT_LT((alg.generator(a) - CMatrix(s[a])).cwiseAbs().maxCoeff(), 1e-15);
  // f = ε
  EXPECT_DOUBLE_EQ(alg.f(0, 1, 2), 1.0);
  EXPECT_DOUBLE_EQ(alg.f(1, 2, 0), 1.0);
  EXPECT_DOUBLE_EQ(alg.f(1, 0, 2), -1.0);
  EXPECT_DOUBLE_EQ(alg.f(0, 0, 2), 0.0);
  EXPECT_NEAR(alg.casimir2(), 3.0, 1e-15);
  EXPECT_NEAR(std::abs((alg.generator(0) * alg.generator(1)).trace()), 0.0, 1e-15);
}

TEST(SuN, SU3GellMannStructureConstants) {
  const auto alg = LieAlgebraRep::su(3);
  ASSERT_EQ(alg.size(), 8);
  EXPECT_NEAR(alg.casimir2(), 16.0 / 3.0, 1e-14);
  // Textbook values, 1-based (a,b,c) → 0-based indices.
  const double h = 0.5, r = std::sqrt(3.0) / 2.0;
  struct F { int a, b, c; double v; };
  const F table[] = {{1, 2, 3, 1.0}, {1, 4, 7, h},  {1, 5, 6, -h}, {2, 4, 6, h}, {2, 5, 7, h},
                     {3, 4, 5, h},   {3, 6, 7, -h}, {4, 5, 8, r},  {6, 7, 8, r}};
  for (const auto& t : table) {
    EXPECT_NEAR(alg.f(t.a - 1, t.b - 1, t.c - 1), t.v, 1e-15);
    EXPECT_NEAR(alg.f(t.b - 1, t.a - 1, t.c - 1), -t.v, 1e-15);
    EXPECT_NEAR(alg.f(t.b - 1, t.c - 1, t.a - 1), t.v, 1e-15);
  }
  EXPECT_NEAR(alg.d(0, 0, 7), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(alg.d(0, 3, 5), 0.5, 1e-15);
  EXPECT_NEAR(alg.d(7, 7, 7), -1.0 / std::sqrt(3.0), 1e-15);
}

TEST(SuN, NormalisationAndCommutators) {
  for (int n : {2, 3, 4}) {
    const auto alg = LieAlgebraRep::su(n);
    const int m = alg.size();
    ASSERT_EQ(m, n * n - 1);
    CMatrix cas = CMatrix::Zero(n, n);
    for (int a = 0; a < m; ++a) {
      const CMatrix& xa = alg.generator(a);
      EXPECT_LT(std::abs(xa.trace()), 1e-15);
      EXPECT_LT((xa - xa.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
      cas += xa * xa;
      for (int b = 0; b < m; ++b) {
        const CMatrix& xb = alg.generator(b);
        EXPECT_NEAR((xa * xb).trace().real(), a == b ? 2.0 : 0.0, 1e-14);
        CMatrix rhs = CMatrix::Zero(n, n);
        for (int c = 0; c < m; ++c) rhs += 2.0 * kI * alg.f(a, b, c) * alg.generator(c);
        EXPECT_LT((xa * xb - xb * xa - rhs).cwiseAbs().maxCoeff(), 1e-13);
      }
    }
    EXPECT_LT((cas - alg.casimir2() * CMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(SuN, JacobiIdentity) {
  const auto alg = LieAlgebraRep::su(3);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 7);
  auto comm = [](const CMatrix& x, const CMatrix& y) { CMatrix r = x * y - y * x; return r; };
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix& a = alg.generator(pick(rng));
    const CMatrix& b = alg.generator(pick(rng));
    const CMatrix& c = alg.generator(pick(rng));
    const CMatrix j = comm(comm(a, b), c) + comm(comm(b, c), a) + comm(comm(c, a), b);
    EXPECT_LT(j.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SuN, CombineAndComponentsRoundTrip) {
  const auto alg = LieAlgebraRep::su(3);
  std::mt19937_64 rng(3);
  const RVector c = testing::random_vector(rng, 8);
  EXPECT_LT((alg.components(alg.combine(c)) - c).norm(), 1e-14);
}

TEST(SuN, RejectsRankOne) { EXPECT_THROW(LieAlgebraRep::su(1), UnsupportedError); }

TEST(FieldStrength, CommutingConstantFieldVanishes) {
  const auto alg = testing::su(2);
  RMatrix a = RMatrix::Zero(4, 3);
  a.col(2) << 0.3, -1.2, 0.7, 2.0;  // only the σ3 component
  const GaugeField f = GaugeField::constant(alg, a, 1.3);
  const FieldStrength fs = field_strength(f, RVector::Zero(4));
  for (const auto& m : fs.F) EXPECT_LT(m.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(FieldStrength, SpecialTorusField) {
  const auto alg = testing::su(2);
  const double A = 0.8, g = 1.7;
  RMatrix a = RMatrix::Zero(2, 3);
  a(0, 0) = A;
  a(1, 1) = A;
  const GaugeField f = GaugeField::constant(alg, a, g);
  const FieldStrength fs = field_strength(f, RVector::Zero(2));
  EXPECT_NEAR(fs.F[2](0, 1), g * A * A, 1e-15);
  EXPECT_NEAR(fs.F[2](1, 0), -g * A * A, 1e-15);
  EXPECT_EQ(fs.F[0].cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(fs.F[1].cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(fs.E.size(), 0);
}

// F_μν = (i/g)[D_μ, D_ν] with D_μ = ∂_μ - igA_μ, A_μ = ½AᵃXᵃ, evaluated as
// matrices: ∂_μA_ν - ∂_νA_μ - ig[A_μ, A_ν] = ½ Fᵃ Xᵃ.
TEST(FieldStrength, MatchesMatrixCommutatorForm) {
  std::mt19937_64 rng(5);
  for (int n : {2, 3}) {
    const auto alg = testing::su(n);
    const int m = alg->size();
    const RMatrix a0 = testing::random_matrix(rng, 4, m);
    std::vector<RMatrix> lin;
    for (int c = 0; c < m; ++c) lin.push_back(testing::random_matrix(rng, 4, 4, 0.5));
    const double g = 0.9;
    const GaugeField f = testing::linear_field(alg, a0, lin, g);
    const RVector x = testing::random_vector(rng, 4);
    const FieldStrength fs = field_strength(f, x);
    const RMatrix a = f.potential(x);
    const auto da = f.gradient(x);
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        const CMatrix am = 0.5 * alg->combine(a.row(mu).transpose());
        const CMatrix an = 0.5 * alg->combine(a.row(nu).transpose());
        const CMatrix dmu_an = 0.5 * alg->combine(da[mu].row(nu).transpose());
        const CMatrix dnu_am = 0.5 * alg->combine(da[nu].row(mu).transpose());
        const CMatrix want = dmu_an - dnu_am - kI * g * (am * an - an * am);
        RVector comp(m);
        for (int c = 0; c < m; ++c) comp[c] = fs.F[c](mu, nu);
        EXPECT_LT((0.5 * alg->combine(comp) - want).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_EQ(fs.F[0](mu, nu), -fs.F[0](nu, mu));
      }
    }
  }
}

TEST(FieldStrength, ElectricMagneticLayout) {
  const auto alg = testing::su(2);
  std::mt19937_64 rng(8);
  const GaugeField f = GaugeField::constant(alg, testing::random_matrix(rng, 4, 3), 1.1);
  const FieldStrength fs = field_strength(f, RVector::Zero(4));
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 3; ++i) EXPECT_EQ(fs.E(i, c), fs.F[c](3, i));
    EXPECT_EQ(fs.B(0, c), fs.F[c](1, 2));
    EXPECT_EQ(fs.B(1, c), fs.F[c](2, 0));
    EXPECT_EQ(fs.B(2, c), fs.F[c](0, 1));
  }
}

TEST(FieldStrength, AbelianUniformStrength) {
  std::mt19937_64 rng(9);
  RMatrix f = testing::random_matrix(rng, 4, 4);
  f = f - RMatrix(f.transpose());
  const GaugeField field = GaugeField::abelian_uniform_strength(testing::random_vector(rng, 4), f);
  EXPECT_TRUE(field.is_abelian());
  const FieldStrength fs = field_strength(field, testing::random_vector(rng, 4));
  EXPECT_LT((fs.F[0] - f).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(GaugeField, ConstantFieldHasZeroGradient) {
  const GaugeField f = GaugeField::constant(testing::su(3), RMatrix::Ones(4, 8), 1.0);
  for (const auto& d : f.gradient(RVector::Zero(4))) EXPECT_EQ(d.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_TRUE(f.is_constant());
}

TEST(GaugeField, ShapeValidation) {
  EXPECT_THROW(GaugeField::constant(testing::su(2), RMatrix::Zero(4, 8), 1.0), UnsupportedError);
  EXPECT_THROW(GaugeField::analytic(4, testing::su(2), 1.0, nullptr, nullptr), UnsupportedError);
}

}  // namespace
}  // namespace sqcd
