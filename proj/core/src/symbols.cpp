#include "sqcd/symbols.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace sqcd {

namespace {

const Complex kI{0.0, 1.0};

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

enum class Family { Free, Abelian, Wong, Pauli, Sqrt, Triple };

Family family_of(HamiltonianKind k) {
  switch (k) {
    case HamiltonianKind::FreePlus:
    case HamiltonianKind::FreeMinus: return Family::Free;
    case HamiltonianKind::AbelianPlus:
    case HamiltonianKind::AbelianMinus: return Family::Abelian;
    case HamiltonianKind::WongPlus:
    case HamiltonianKind::WongMinus: return Family::Wong;
    case HamiltonianKind::PauliPlus:
    case HamiltonianKind::PauliMinus: return Family::Pauli;
    case HamiltonianKind::SqrtPlus:
    case HamiltonianKind::SqrtMinus: return Family::Sqrt;
    case HamiltonianKind::TriplePlus:
    case HamiltonianKind::TripleMinus: return Family::Triple;
  }
  return Family::Free;
}

void require_dim(const RVector& v, int d, const char* what) {
  if (v.size() != d)
    throw UnsupportedError(std::string(what) + " has dimension " + std::to_string(v.size()) +
                           ", field has " + std::to_string(d));
}

void require_abelian(const GaugeField& f, HamiltonianKind k) {
  if (!f.is_abelian())
    throw UnsupportedError(kind_name(k) + " Hamiltonian needs an Abelian field");
}

void require_colour(const GaugeField& f, const RVector& c, HamiltonianKind k) {
  if (f.is_abelian())
    throw UnsupportedError(kind_name(k) + " Hamiltonian needs a non-Abelian field");
  if (c.size() != f.components())
    throw UnsupportedError(kind_name(k) + ": colour vector has " + std::to_string(c.size()) +
                           " components, algebra has " + std::to_string(f.components()));
}

void require_d4(const GaugeField& f, HamiltonianKind k) {
  if (f.dim() != 4) throw UnsupportedError(kind_name(k) + " Hamiltonian needs d = 4");
}

// Everything the Hamiltonians share at one phase-space point.
struct Local {
  RVector pi;
  RMatrix dpi;     // dpi(nu, mu) = ∂π_μ/∂x_ν
  RMatrix A;       // d × ncomp
  Vec3 w = Vec3::Zero();  // E ± B (Abelian) or (Eᵃ ± Bᵃ)Cᵃ
  RMatrix W;       // 3 × ncomp, Eᵃ ± Bᵃ (non-Abelian spin kinds)
  double radicand = 0.0;
};

Local evaluate_local(HamiltonianKind kind, const ClassicalState& st, const GaugeField& field,
                     const Couplings& c, bool need_dx) {
  const Family fam = family_of(kind);
  const int d = field.dim();
  require_dim(st.p, d, "momentum");
  Local L;
  if (fam == Family::Free) {
    L.pi = st.p;
    L.dpi = RMatrix::Zero(d, d);
    L.radicand = st.p.squaredNorm();
    return L;
  }
  require_dim(st.x, d, "position");
  const bool abelian_family =
      fam == Family::Abelian || fam == Family::Pauli || fam == Family::Sqrt;
  if (abelian_family) require_abelian(field, kind);
  else require_colour(field, st.C, kind);
  if (fam == Family::Pauli || fam == Family::Sqrt || fam == Family::Triple) require_d4(field, kind);

  L.A = field.potential(st.x);
  L.pi = kinetic_momentum(st.p, st.x, st.C, field, c);
  L.dpi = RMatrix::Zero(d, d);
  if (need_dx && !field.is_constant()) {
    const auto grad = field.gradient(st.x);
    for (int nu = 0; nu < d; ++nu) {
      if (abelian_family) L.dpi.row(nu) = -c.e * grad[nu].col(0).transpose();
      else L.dpi.row(nu) = -field.coupling() * (grad[nu] * st.C).transpose();
    }
  }
  L.radicand = L.pi.squaredNorm();

  if (fam == Family::Pauli || fam == Family::Sqrt || fam == Family::Triple) {
    const double sg = branch_sign(branch_of(kind));
    const FieldStrength fs = field_strength(field, st.x);
    L.W = fs.E + sg * fs.B;
    if (fam == Family::Triple) {
      L.w = L.W * st.C;
      L.radicand -= 2.0 * field.coupling() * st.s.dot(L.w);
    } else {
      L.w = L.W.col(0);
      if (fam == Family::Sqrt) L.radicand -= 2.0 * c.e * st.s.dot(L.w);
    }
  }
  return L;
}

}  // namespace

Branch branch_of(HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::FreePlus:
    case HamiltonianKind::AbelianPlus:
    case HamiltonianKind::WongPlus:
    case HamiltonianKind::PauliPlus:
    case HamiltonianKind::SqrtPlus:
    case HamiltonianKind::TriplePlus: return Branch::Plus;
    default: return Branch::Minus;
  }
}

std::string kind_name(HamiltonianKind kind) {
  static const std::array<const char*, 6> names = {"free", "abelian", "wong",
                                                   "pauli", "sqrt", "triple"};
  return std::string(names[static_cast<int>(family_of(kind))]) + branch_name(branch_of(kind));
}

HamiltonianKind parse_kind(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(HamiltonianKind::TripleMinus); ++k) {
    const auto kind = static_cast<HamiltonianKind>(k);
    if (kind_name(kind) == name) return kind;
  }
  throw ConfigError("unknown Hamiltonian kind '" + name + "'");
}

RVector kinetic_momentum(const RVector& p, const RVector& x, const RVector& colour,
                         const GaugeField& field, const Couplings& c) {
  const RMatrix a = field.potential(x);
  if (field.is_abelian()) return p - c.e * a.col(0);
  if (colour.size() != field.components())
    throw UnsupportedError("kinetic_momentum: colour vector does not match the algebra");
  return p - field.coupling() * a * colour;
}

CMatrix dirac_symbol(const RVector& p, const RVector& x, const GaugeField& field,
                     const Couplings& c) {
  const int d = field.dim();
  require_dim(p, d, "momentum");
  require_dim(x, d, "position");
  const GammaSet gs = build_gamma(d);
  const int j = field.is_abelian() ? 1 : field.algebra()->dim_rep();
  const RMatrix a = field.potential(x);
  const CMatrix id = CMatrix::Identity(j, j);
  CMatrix out = CMatrix::Zero(gs.spinor_dim() * j, gs.spinor_dim() * j);
  for (int mu = 0; mu < d; ++mu) {
    CMatrix cov;
    if (field.is_abelian()) {
      cov = (p[mu] - c.e * a(mu, 0)) * id;
    } else {
      cov = p[mu] * id -
            (0.5 * c.hbar * field.coupling()) * field.algebra()->combine(a.row(mu).transpose());
    }
    out += kron(gs.gamma[mu], cov);
  }
  return out;
}

CMatrix dirac_squared_symbol(const ClassicalState& st, const GaugeField& field,
                             const Couplings& c, SquaredSymbolMode mode) {
  if (field.dim() != 4) throw UnsupportedError("dirac_squared_symbol needs d = 4");
  require_dim(st.p, 4, "momentum");
  require_dim(st.x, 4, "position");
  const RMatrix a = field.potential(st.x);
  const FieldStrength fs = field_strength(field, st.x);
  const auto& sig = pauli();

  if (mode == SquaredSymbolMode::Triple) {
    if (field.is_abelian()) throw UnsupportedError("triple mode needs a non-Abelian field");
    if (st.C.size() != field.components())
      throw UnsupportedError("triple mode: colour vector does not match the algebra");
    const double g = field.coupling();
    const RVector pi = st.p - g * a * st.C;
    const Vec3 bc = fs.B * st.C;
    const Vec3 ec = fs.E * st.C;
    CMatrix out = CMatrix::Zero(2, 2);
    out(0, 0) = pi.squaredNorm() - 2.0 * g * st.s.dot(bc + ec);
    out(1, 1) = pi.squaredNorm() - 2.0 * g * st.s.dot(bc - ec);
    return out;
  }

  const int j = field.is_abelian() ? 1 : field.algebra()->dim_rep();
  const CMatrix id = CMatrix::Identity(j, j);
  CMatrix pi2 = CMatrix::Zero(j, j);
  for (int mu = 0; mu < 4; ++mu) {
    CMatrix cov;
    if (field.is_abelian())
      cov = (st.p[mu] - c.e * a(mu, 0)) * id;
    else
      cov = st.p[mu] * id - (0.5 * c.hbar * field.coupling()) *
                                field.algebra()->combine(a.row(mu).transpose());
    pi2 += cov * cov;
  }
  // Spin-field coupling: ħe σ·(B±E) (Abelian) or ħ²g σ·½(Bᵃ±Eᵃ)Xᵃ.
  auto colour_matrix = [&](const RVector& coeffs) -> CMatrix {
    if (field.is_abelian()) return coeffs[0] * id;
    return 0.5 * field.algebra()->combine(coeffs);
  };
  const double pref = field.is_abelian() ? c.hbar * c.e : c.hbar * c.hbar * field.coupling();
  CMatrix upper = CMatrix::Zero(2 * j, 2 * j);
  CMatrix lower = CMatrix::Zero(2 * j, 2 * j);
  for (int i = 0; i < 3; ++i) {
    const CMatrix si = sig[i];
    upper += kron(si, colour_matrix((fs.B.row(i) + fs.E.row(i)).transpose()));
    lower += kron(si, colour_matrix((fs.B.row(i) - fs.E.row(i)).transpose()));
  }
  CMatrix out = kron(CMatrix::Identity(4, 4), pi2);
  out.topLeftCorner(2 * j, 2 * j) -= pref * upper;
  out.bottomRightCorner(2 * j, 2 * j) -= pref * lower;
  return out;
}

namespace {

Eigen::Matrix2cd m_matrix(const RVector& pi) {
  const auto& s = pauli();
  Eigen::Matrix2cd m = pi[3] * Eigen::Matrix2cd::Identity();
  for (int i = 0; i < 3; ++i) m += kI * pi[i] * s[i];
  return m;
}

}  // namespace

EigenPair principal_eigen(const RVector& pi) {
  if (pi.size() != 4) throw UnsupportedError("principal_eigen needs a 4-vector");
  const double lam = pi.norm();
  if (lam == 0.0)
    throw SingularPointError("principal_eigen: eigenvector matrices undefined at p = 0");
  const Eigen::Matrix2cd m = m_matrix(pi);
  const double r = 1.0 / std::sqrt(2.0);
  EigenPair e;
  e.lambda_plus = lam;
  e.lambda_minus = -lam;
  e.V_plus.resize(4, 2);
  e.V_plus << Eigen::Matrix2cd::Identity(), m / lam;
  e.V_plus *= r;
  e.V_minus.resize(4, 2);
  e.V_minus << m.adjoint() / lam, -Eigen::Matrix2cd::Identity();
  e.V_minus *= r;
  return e;
}

double hamiltonian_radicand(HamiltonianKind kind, const ClassicalState& state,
                            const GaugeField& field, const Couplings& c) {
  return evaluate_local(kind, state, field, c, false).radicand;
}

double classical_hamiltonian(HamiltonianKind kind, const ClassicalState& state,
                             const GaugeField& field, const Couplings& c) {
  const Local L = evaluate_local(kind, state, field, c, false);
  const double sg = branch_sign(branch_of(kind));
  if (family_of(kind) == Family::Pauli) {
    const double lam = sg * L.pi.norm();
    if (lam == 0.0) throw SingularPointError("Pauli Hamiltonian singular at Λ = 0");
    return lam - (c.e / lam) * state.s.dot(L.w);
  }
  if (L.radicand < 0.0) throw DomainError(kind_name(kind) + ": negative radicand", L.radicand);
  return sg * std::sqrt(L.radicand);
}

HamiltonianGradient hamiltonian_gradient(HamiltonianKind kind, const ClassicalState& state,
                                         const GaugeField& field, const Couplings& c) {
  const Local L = evaluate_local(kind, state, field, c, true);
  const Family fam = family_of(kind);
  const double sg = branch_sign(branch_of(kind));
  const int d = field.dim();
  HamiltonianGradient g;
  g.dC = RVector::Zero(state.C.size());

  if (fam == Family::Pauli) {
    const double lam = sg * L.pi.norm();
    if (lam == 0.0) throw SingularPointError("Pauli Hamiltonian singular at Λ = 0");
    const double sw = state.s.dot(L.w);
    g.value = lam - (c.e / lam) * sw;
    const double scale = (1.0 + c.e * sw / (lam * lam)) / lam;
    g.dp = scale * L.pi;
    g.dx = L.dpi * g.dp;
    g.ds = -(c.e / lam) * L.w;
    return g;
  }

  if (L.radicand < 0.0) throw DomainError(kind_name(kind) + ": negative radicand", L.radicand);
  const double h = sg * std::sqrt(L.radicand);
  if (h == 0.0) throw SingularPointError(kind_name(kind) + ": gradient singular at Λ = 0");
  g.value = h;
  g.dp = L.pi / h;
  g.dx = (fam == Family::Free) ? RVector::Zero(d) : RVector(L.dpi * g.dp);
  const double gc = field.coupling();
  if (fam == Family::Wong || fam == Family::Triple) {
    // ∂(π²)/∂Cᵇ = -2g π_μ A_μᵇ
    g.dC = -gc * (L.A.transpose() * L.pi) / h;
  }
  if (fam == Family::Triple) {
    g.dC -= gc * (L.W.transpose() * state.s) / h;
    g.ds = -gc * L.w / h;
  }
  if (fam == Family::Sqrt) g.ds = -c.e * L.w / h;
  return g;
}

double ProjectedTransportReport::max_residual() const {
  return std::max({velocity_plus, velocity_minus, spin_plus, spin_minus, scalar_plus,
                   scalar_minus});
}

ProjectedTransportReport projected_transport_identities(const RVector& p, const RVector& x,
                                      const GaugeField& field, double e,
                                      const RMatrix& action_hessian) {
  if (!field.is_abelian() || field.dim() != 4)
    throw UnsupportedError("projected_transport_identities needs an Abelian field in d = 4");
  require_dim(p, 4, "momentum");
  require_dim(x, 4, "position");
  const RVector pi = p - e * field.potential(x).col(0);
  const double lam = pi.norm();
  if (lam == 0.0) throw SingularPointError("projected_transport_identities: Λ = 0");

  // dpi(mu, nu) = ∂_μ π_ν
  const auto grad = field.gradient(x);
  RMatrix dpi(4, 4);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) dpi(mu, nu) = action_hessian(mu, nu) - e * grad[mu](nu, 0);

  const GammaSet gs = build_gamma(4);
  const EigenPair ep = principal_eigen(pi);
  const auto& sig = pauli();
  const Eigen::Matrix2cd m = m_matrix(pi);
  const double r = 1.0 / std::sqrt(2.0);

  // ∂V/∂π_ν
  std::array<CMatrix, 4> dvp, dvm;
  for (int nu = 0; nu < 4; ++nu) {
    Eigen::Matrix2cd dm = (nu == 3) ? Eigen::Matrix2cd::Identity()
                                    : Eigen::Matrix2cd(kI * sig[nu]);
    const Eigen::Matrix2cd dq = dm / lam - m * (pi[nu] / (lam * lam * lam));
    dvp[nu] = CMatrix::Zero(4, 2);
    dvp[nu].bottomRows(2) = r * dq;
    dvm[nu] = CMatrix::Zero(4, 2);
    dvm[nu].topRows(2) = r * dq.adjoint();
  }

  const FieldStrength fs = field_strength(field, x);
  const Vec3 ef = fs.E.col(0);
  const Vec3 bf = fs.B.col(0);

  ProjectedTransportReport rep;
  for (int br = 0; br < 2; ++br) {
    const bool plus = br == 0;
    const CMatrix& v = plus ? ep.V_plus : ep.V_minus;
    const auto& dv = plus ? dvp : dvm;
    const double sgn = plus ? 1.0 : -1.0;

    double vel = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      const CMatrix proj = v.adjoint() * gs.gamma[mu] * v;
      const CMatrix want = CMatrix::Identity(2, 2) * (sgn * pi[mu] / lam);
      vel = std::max(vel, (proj - want).cwiseAbs().maxCoeff());
    }

    // Hamilton–Jacobi: ∂_tπ_μ = ∓(π_ν/Λ)∂_μπ_ν
    const RVector dt_pi = -sgn * (dpi * pi) / lam;
    CMatrix total = CMatrix::Zero(2, 2);
    for (int nu = 0; nu < 4; ++nu) {
      total += v.adjoint() * dv[nu] * dt_pi[nu];
      for (int mu = 0; mu < 4; ++mu)
        total += v.adjoint() * gs.gamma[mu] * dv[nu] * dpi(mu, nu);
    }
    const Complex a0 = 0.5 * total.trace();
    Eigen::Vector3cd avec;
    for (int i = 0; i < 3; ++i) avec[i] = 0.5 * (CMatrix(sig[i]) * total).trace();

    const Vec3 w = plus ? Vec3(bf + ef) : Vec3(ef - bf);
    const Eigen::Vector3cd want = (-kI * e / (2.0 * lam)) * w.cast<Complex>();
    const double spin = (avec - want).cwiseAbs().maxCoeff();
    const Vec3 found = (kI * 2.0 * lam * avec).real();

    const double scalar_want =
        pi.dot(dt_pi) / (2.0 * lam * lam) + sgn * dpi.trace() / (2.0 * lam);
    const double scalar = std::abs(a0 - Complex(scalar_want, 0.0));

    if (plus) {
      rep.velocity_plus = vel;
      rep.spin_plus = spin;
      rep.scalar_plus = scalar;
      rep.spin_field_plus = found;
    } else {
      rep.velocity_minus = vel;
      rep.spin_minus = spin;
      rep.scalar_minus = scalar;
      rep.spin_field_minus = found;
    }
  }
  return rep;
}

}  // namespace sqcd
