#include "sqcd/algebra.hpp"

#include <cmath>
#include <string>

namespace sqcd {

namespace {

const Complex kI{0.0, 1.0};

CMatrix block2x2(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d) {
  const auto n = a.rows();
  CMatrix m(2 * n, 2 * n);
  m << a, b, c, d;
  return m;
}

// Generalised Gell-Mann basis: for each column k the symmetric and
// antisymmetric pairs (j, k), j < k, followed by the k-th diagonal element.
std::vector<CMatrix> gell_mann_basis(int n) {
  std::vector<CMatrix> out;
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      CMatrix sym = CMatrix::Zero(n, n);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      out.push_back(sym);
      CMatrix asym = CMatrix::Zero(n, n);
      asym(j, k) = -kI;
      asym(k, j) = kI;
      out.push_back(asym);
    }
    CMatrix diag = CMatrix::Zero(n, n);
    const double norm = std::sqrt(2.0 / (k * (k + 1.0)));
    for (int j = 0; j < k; ++j) diag(j, j) = norm;
    diag(k, k) = -k * norm;
    out.push_back(diag);
  }
  return out;
}

}  // namespace

const std::array<Eigen::Matrix2cd, 3>& pauli() {
  static const std::array<Eigen::Matrix2cd, 3> s = [] {
    std::array<Eigen::Matrix2cd, 3> m;
    m[0] << 0, 1, 1, 0;
    m[1] << 0, -kI, kI, 0;
    m[2] << 1, 0, 0, -1;
    return m;
  }();
  return s;
}

GammaSet build_gamma(int d) {
  GammaSet g;
  g.dim = d;
  const auto& s = pauli();
  if (d == 2) {
    g.gamma = {s[0], s[1]};
    return g;
  }
  if (d == 4) {
    const CMatrix zero = CMatrix::Zero(2, 2);
    const CMatrix one = CMatrix::Identity(2, 2);
    for (int j = 0; j < 3; ++j) {
      const CMatrix sj = s[j];
      g.gamma.push_back(block2x2(zero, -kI * sj, kI * sj, zero));
    }
    g.gamma.push_back(block2x2(zero, one, one, zero));
    g.gamma5 = g.gamma[0] * g.gamma[1] * g.gamma[2] * g.gamma[3];
    return g;
  }
  throw UnsupportedError("build_gamma: unsupported dimension " + std::to_string(d) +
                         " (expected 2 or 4)");
}

LieAlgebraRep LieAlgebraRep::su(int n) {
  if (n < 2) throw UnsupportedError("su(N) requires N >= 2, got " + std::to_string(n));
  return LieAlgebraRep(n, gell_mann_basis(n));
}

LieAlgebraRep::LieAlgebraRep(int n, std::vector<CMatrix> generators)
    : n_(n), generators_(std::move(generators)) {
  const int m = size();
  const auto m3 = static_cast<std::size_t>(m) * m * m;
  f_.assign(m3, 0.0);
  d_.assign(m3, 0.0);
  // tr([Xa,Xb] Xc) = 4i f_abc,  tr({Xa,Xb} Xc) = 4 d_abc
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const CMatrix ab = generators_[a] * generators_[b];
      const CMatrix ba = generators_[b] * generators_[a];
      for (int c = 0; c < m; ++c) {
        const Complex comm = ((ab - ba) * generators_[c]).trace();
        const Complex anti = ((ab + ba) * generators_[c]).trace();
        double fv = (comm / (4.0 * kI)).real();
        double dv = anti.real() / 4.0;
        if (std::abs(fv) < 1e-14) fv = 0.0;
        if (std::abs(dv) < 1e-14) dv = 0.0;
        f_[index(a, b, c)] = fv;
        d_[index(a, b, c)] = dv;
      }
    }
  }
  CMatrix cas = CMatrix::Zero(n, n);
  for (const auto& x : generators_) cas += x * x;
  casimir2_ = cas(0, 0).real();
}

double LieAlgebraRep::cubic_casimir(const RVector& c) const {
  const int m = size();
  double sum = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int k = 0; k < m; ++k) sum += d(a, b, k) * c[a] * c[b] * c[k];
  return sum;
}

CMatrix LieAlgebraRep::combine(const RVector& coeffs) const {
  CMatrix out = CMatrix::Zero(n_, n_);
  for (int a = 0; a < size(); ++a) out += coeffs[a] * generators_[a];
  return out;
}

RVector LieAlgebraRep::components(const CMatrix& m) const {
  RVector out(size());
  for (int a = 0; a < size(); ++a) out[a] = 0.5 * (generators_[a] * m).trace().real();
  return out;
}

RVector LieAlgebraRep::f_contract(const RVector& v, const RVector& w) const {
  const int m = size();
  RVector out = RVector::Zero(m);
  for (int a = 0; a < m; ++a) {
    double s = 0.0;
    for (int b = 0; b < m; ++b) {
      if (v[b] == 0.0) continue;
      for (int c = 0; c < m; ++c) s += f(a, b, c) * v[b] * w[c];
    }
    out[a] = s;
  }
  return out;
}

// ---------------------------------------------------------------------------

GaugeField GaugeField::constant(std::shared_ptr<const LieAlgebraRep> algebra, RMatrix a,
                                double g) {
  if (!algebra) throw UnsupportedError("GaugeField::constant: algebra required");
  if (a.cols() != algebra->size())
    throw UnsupportedError("GaugeField::constant: potential has " + std::to_string(a.cols()) +
                           " colour columns, algebra has " + std::to_string(algebra->size()));
  GaugeField f;
  f.dim_ = static_cast<int>(a.rows());
  f.kind_ = Kind::Constant;
  f.g_ = g;
  f.algebra_ = std::move(algebra);
  f.constant_ = std::move(a);
  return f;
}

GaugeField GaugeField::analytic(int dim, std::shared_ptr<const LieAlgebraRep> algebra, double g,
                                Potential potential, PotentialGradient gradient) {
  if (!algebra) throw UnsupportedError("GaugeField::analytic: algebra required");
  if (!potential || !gradient)
    throw UnsupportedError("GaugeField::analytic: potential and gradient are both required");
  GaugeField f;
  f.dim_ = dim;
  f.kind_ = Kind::Analytic;
  f.g_ = g;
  f.algebra_ = std::move(algebra);
  f.potential_ = std::move(potential);
  f.gradient_ = std::move(gradient);
  return f;
}

GaugeField GaugeField::zero(int dim, std::shared_ptr<const LieAlgebraRep> algebra, double g) {
  const int m = algebra ? algebra->size() : 1;
  if (!algebra) return abelian_constant(RVector::Zero(dim));
  return constant(std::move(algebra), RMatrix::Zero(dim, m), g);
}

GaugeField GaugeField::abelian_constant(RVector a) {
  GaugeField f;
  f.dim_ = static_cast<int>(a.size());
  f.kind_ = Kind::Constant;
  f.constant_ = a;
  return f;
}

GaugeField GaugeField::abelian_analytic(int dim, Potential potential,
                                        PotentialGradient gradient) {
  if (!potential || !gradient)
    throw UnsupportedError("GaugeField::abelian_analytic: potential and gradient are required");
  GaugeField f;
  f.dim_ = dim;
  f.kind_ = Kind::Analytic;
  f.potential_ = std::move(potential);
  f.gradient_ = std::move(gradient);
  return f;
}

GaugeField GaugeField::abelian_uniform_strength(RVector offset, const RMatrix& strength) {
  const auto dim = static_cast<int>(offset.size());
  if (strength.rows() != dim || strength.cols() != dim)
    throw UnsupportedError("abelian_uniform_strength: strength must be d×d");
  const RMatrix fs = 0.5 * (strength - strength.transpose());
  auto potential = [offset, fs](const RVector& x) -> RMatrix {
    RMatrix a(offset.size(), 1);
    a.col(0) = offset - 0.5 * fs * x;
    return a;
  };
  auto gradient = [fs, dim](const RVector&) {
    // ∂_ν A_μ = -½ F_μν
    std::vector<RMatrix> g(dim, RMatrix::Zero(dim, 1));
    for (int nu = 0; nu < dim; ++nu)
      for (int mu = 0; mu < dim; ++mu) g[nu](mu, 0) = -0.5 * fs(mu, nu);
    return g;
  };
  return abelian_analytic(dim, potential, gradient);
}

RMatrix GaugeField::potential(const RVector& x) const {
  if (kind_ == Kind::Constant) return constant_;
  RMatrix a = potential_(x);
  if (a.rows() != dim_ || a.cols() != components())
    throw UnsupportedError("GaugeField: potential callback returned wrong shape");
  return a;
}

std::vector<RMatrix> GaugeField::gradient(const RVector& x) const {
  if (kind_ == Kind::Constant)
    return std::vector<RMatrix>(dim_, RMatrix::Zero(dim_, components()));
  auto g = gradient_(x);
  if (static_cast<int>(g.size()) != dim_)
    throw UnsupportedError("GaugeField: gradient callback returned wrong number of directions");
  return g;
}

CMatrix GaugeField::potential_matrix(const RVector& x, int mu) const {
  const RMatrix a = potential(x);
  if (!algebra_) {
    CMatrix m(1, 1);
    m(0, 0) = a(mu, 0);
    return m;
  }
  return algebra_->combine(a.row(mu).transpose());
}

FieldStrength field_strength(const GaugeField& field, const RVector& x) {
  const int d = field.dim();
  const int m = field.components();
  const RMatrix a = field.potential(x);
  const auto da = field.gradient(x);
  const LieAlgebraRep* alg = field.algebra();
  const double g = field.coupling();

  FieldStrength fs;
  fs.dim = d;
  fs.F.assign(m, RMatrix::Zero(d, d));
  for (int c = 0; c < m; ++c) {
    for (int mu = 0; mu < d; ++mu) {
      for (int nu = mu + 1; nu < d; ++nu) {
        double v = da[mu](nu, c) - da[nu](mu, c);
        if (alg) {
          for (int b = 0; b < m; ++b)
            for (int e = 0; e < m; ++e) v += g * alg->f(c, b, e) * a(mu, b) * a(nu, e);
        }
        fs.F[c](mu, nu) = v;
        fs.F[c](nu, mu) = -v;
      }
    }
  }
  if (d == 4) {
    fs.E.resize(3, m);
    fs.B.resize(3, m);
    for (int c = 0; c < m; ++c) {
      const RMatrix& f = fs.F[c];
      for (int i = 0; i < 3; ++i) fs.E(i, c) = f(3, i);
      fs.B(0, c) = f(1, 2);
      fs.B(1, c) = f(2, 0);
      fs.B(2, c) = f(0, 1);
    }
  }
  return fs;
}

}  // namespace sqcd
