#include "sqcd/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace sqcd {

namespace {

const Complex kI{0.0, 1.0};

bool is_free(HamiltonianKind k) {
  return k == HamiltonianKind::FreePlus || k == HamiltonianKind::FreeMinus;
}
bool is_abelian_kind(HamiltonianKind k) {
  return k == HamiltonianKind::AbelianPlus || k == HamiltonianKind::AbelianMinus;
}
bool is_wong(HamiltonianKind k) {
  return k == HamiltonianKind::WongPlus || k == HamiltonianKind::WongMinus;
}
bool is_triple(HamiltonianKind k) {
  return k == HamiltonianKind::TriplePlus || k == HamiltonianKind::TripleMinus;
}
bool has_spin_term(HamiltonianKind k) {
  return is_triple(k) || k == HamiltonianKind::PauliPlus || k == HamiltonianKind::PauliMinus ||
         k == HamiltonianKind::SqrtPlus || k == HamiltonianKind::SqrtMinus;
}

struct Rates {
  RVector dx, dp, dC;
  Vec3 ds = Vec3::Zero();
  double energy = 0.0;
  // Effective ∂H/∂C and ∂H/∂s; they generate precession and transport.
  RVector colour_grad;
  Vec3 spin_grad = Vec3::Zero();
};

class FlowModel {
 public:
  FlowModel(HamiltonianKind kind, const GaugeField& field, const Couplings& c,
            const ClassicalState& s0)
      : kind_(kind), field_(field), c_(c) {
    colour_ = !field.is_abelian() && s0.C.size() == field.components() &&
              (is_free(kind) || is_wong(kind) || is_triple(kind));
    spin_ = field.dim() == 4 && (has_spin_term(kind) || (is_abelian_kind(kind) && field.is_abelian()));
    check_uniform_ = has_spin_term(kind) && !field.is_constant();
    if (check_uniform_) f0_ = field_strength(field, s0.x).F;
  }

  bool colour() const { return colour_; }
  bool spin() const { return spin_; }

  Rates operator()(const ClassicalState& st) const {
    const HamiltonianGradient g = hamiltonian_gradient(kind_, st, field_, c_);
    Rates r;
    r.energy = g.value;
    r.dx = g.dp;
    r.dp = -g.dx;
    r.dC = RVector::Zero(st.C.size());
    if (colour_) {
      if (is_free(kind_)) {
        const RMatrix a = field_.potential(st.x);
        r.colour_grad = -field_.coupling() * (a.transpose() * g.dp);
      } else {
        r.colour_grad = g.dC;
      }
      r.dC = field_.algebra()->f_contract(r.colour_grad, st.C);
    }
    if (spin_) {
      if (is_abelian_kind(kind_)) {
        const FieldStrength fs = field_strength(field_, st.x);
        const double sg = branch_sign(branch_of(kind_));
        r.spin_grad = -(c_.e / g.value) * Vec3(fs.E.col(0) + sg * fs.B.col(0));
      } else {
        r.spin_grad = g.ds;
      }
      r.ds = r.spin_grad.cross(st.s);
    }
    return r;
  }

  void check_field(const RVector& x, double t) const {
    if (!check_uniform_) return;
    const auto f = field_strength(field_, x).F;
    for (std::size_t a = 0; a < f.size(); ++a) {
      const double dev = (f[a] - f0_[a]).cwiseAbs().maxCoeff();
      if (dev > 1e-12 * (1.0 + f0_[a].cwiseAbs().maxCoeff())) {
        std::ostringstream os;
        os << kind_name(kind_) << " flow needs a uniform field strength; F changed by " << dev
           << " at t = " << t;
        throw UnsupportedError(os.str());
      }
    }
  }

 private:
  HamiltonianKind kind_;
  const GaugeField& field_;
  Couplings c_;
  bool colour_ = false;
  bool spin_ = false;
  bool check_uniform_ = false;
  std::vector<RMatrix> f0_;
};

ClassicalState advance(const ClassicalState& s, const Rates& r, double h) {
  ClassicalState out;
  out.x = s.x + h * r.dx;
  out.p = s.p + h * r.dp;
  out.C = s.C + h * r.dC;
  out.s = s.s + h * r.ds;
  return out;
}

CMatrix colour_generator(const LieAlgebraRep& alg, const RVector& grad) {
  return (-0.5) * alg.combine(grad);
}

CMatrix spin_generator(const Vec3& grad) {
  const auto& sig = pauli();
  CMatrix k = CMatrix::Zero(2, 2);
  for (int i = 0; i < 3; ++i) k += (-0.5 * grad[i]) * CMatrix(sig[i]);
  return k;
}

double unitarity_defect(const CMatrix& d) {
  return (d.adjoint() * d - CMatrix::Identity(d.rows(), d.cols())).cwiseAbs().maxCoeff();
}

double relative_change(double now, double ref) {
  const double diff = std::abs(now - ref);
  return std::abs(ref) > 0.0 ? diff / std::abs(ref) : diff;
}

}  // namespace

Vec3 spin_precession_rhs(const Vec3& s, const Vec3& E, const Vec3& B, double e, double lambda,
                         Branch branch) {
  if (lambda == 0.0) throw SingularPointError("spin_precession_rhs: Λ = 0");
  const double sg = branch_sign(branch);
  return s.cross((e / (sg * lambda)) * (E + sg * B));
}

RVector colour_precession_rhs(const LieAlgebraRep& algebra, const RVector& C, const RVector& p,
                              const RMatrix& A, double g, double lambda, Branch branch) {
  if (lambda == 0.0) throw SingularPointError("colour_precession_rhs: Λ = 0");
  const double lam = branch_sign(branch) * lambda;
  const RVector v = (A.transpose() * p) / lam;  // p_μ A_μᵇ / Λ
  return -g * algebra.f_contract(v, C);
}

Trajectory integrate_flow(const ClassicalState& state0, HamiltonianKind kind,
                          const GaugeField& field, const Couplings& couplings,
                          const FlowOptions& opt) {
  if (!(opt.dt > 0.0) || !(opt.t_final >= 0.0))
    throw UnsupportedError("integrate_flow: need dt > 0 and t_final >= 0");
  if (opt.stride < 1) throw UnsupportedError("integrate_flow: stride must be >= 1");

  FlowModel model(kind, field, couplings, state0);
  if (opt.colour_transport && !model.colour())
    throw UnsupportedError("colour transport needs a non-Abelian field, a colour vector and a "
                           "free, Wong or triple Hamiltonian");
  if (opt.spin_transport && !model.spin())
    throw UnsupportedError("spin transport needs d = 4 and an Abelian, Pauli, sqrt or triple "
                           "Hamiltonian");

  const long steps = std::max(1L, std::lround(opt.t_final / opt.dt));
  const double h = opt.t_final > 0.0 ? opt.t_final / static_cast<double>(steps) : 0.0;
  const long total = opt.t_final > 0.0 ? steps : 0;

  ClassicalState st = state0;
  const int j = field.is_abelian() ? 1 : field.algebra()->dim_rep();
  CMatrix dc = opt.colour_transport ? CMatrix::Identity(j, j) : CMatrix();
  CMatrix ds = opt.spin_transport ? CMatrix::Identity(2, 2) : CMatrix();

  Trajectory traj;
  traj.kind = kind;
  traj.dt = h;

  const double c2_0 = st.C.squaredNorm();
  const bool cubic = model.colour() && field.algebra()->rank() >= 3;
  const double c3_0 = cubic ? field.algebra()->cubic_casimir(st.C) : 0.0;
  const double s2_0 = st.s.squaredNorm();

  double t = 0.0;
  auto guarded = [&](const ClassicalState& s, double time) {
    try {
      return model(s);
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << "flow left the domain of the " << kind_name(kind)
         << " Hamiltonian at t = " << time << ": " << e.what();
      throw IntegrationError(os.str(), time);
    } catch (const SingularPointError& e) {
      std::ostringstream os;
      os << "flow reached Λ = 0 at t = " << time << ": " << e.what();
      throw IntegrationError(os.str(), time);
    }
  };

  Rates r1 = guarded(st, t);
  traj.energy = r1.energy;
  auto record = [&](double time, double energy) {
    TrajectorySample smp;
    smp.t = time;
    smp.state = st;
    smp.energy = energy;
    smp.d_colour = dc;
    smp.d_spin = ds;
    traj.samples.push_back(std::move(smp));
  };
  record(t, r1.energy);

  const LieAlgebraRep* alg = field.algebra();
  for (long n = 1; n <= total; ++n) {
    const ClassicalState y2 = advance(st, r1, 0.5 * h);
    const Rates r2 = guarded(y2, t + 0.5 * h);
    const ClassicalState y3 = advance(st, r2, 0.5 * h);
    const Rates r3 = guarded(y3, t + 0.5 * h);
    const ClassicalState y4 = advance(st, r3, h);
    const Rates r4 = guarded(y4, t + h);

    if (opt.colour_transport) {
      const CMatrix k1 = kI * colour_generator(*alg, r1.colour_grad) * dc;
      const CMatrix k2 = kI * colour_generator(*alg, r2.colour_grad) * (dc + 0.5 * h * k1);
      const CMatrix k3 = kI * colour_generator(*alg, r3.colour_grad) * (dc + 0.5 * h * k2);
      const CMatrix k4 = kI * colour_generator(*alg, r4.colour_grad) * (dc + h * k3);
      dc += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (opt.spin_transport) {
      const CMatrix k1 = kI * spin_generator(r1.spin_grad) * ds;
      const CMatrix k2 = kI * spin_generator(r2.spin_grad) * (ds + 0.5 * h * k1);
      const CMatrix k3 = kI * spin_generator(r3.spin_grad) * (ds + 0.5 * h * k2);
      const CMatrix k4 = kI * spin_generator(r4.spin_grad) * (ds + h * k3);
      ds += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    st.x += (h / 6.0) * (r1.dx + 2.0 * r2.dx + 2.0 * r3.dx + r4.dx);
    st.p += (h / 6.0) * (r1.dp + 2.0 * r2.dp + 2.0 * r3.dp + r4.dp);
    st.C += (h / 6.0) * (r1.dC + 2.0 * r2.dC + 2.0 * r3.dC + r4.dC);
    st.s += (h / 6.0) * (r1.ds + 2.0 * r2.ds + 2.0 * r3.ds + r4.ds);
    t = static_cast<double>(n) * h;

    model.check_field(st.x, t);
    r1 = guarded(st, t);

    traj.energy_drift = std::max(traj.energy_drift, relative_change(r1.energy, traj.energy));
    traj.casimir2_drift = std::max(traj.casimir2_drift, relative_change(st.C.squaredNorm(), c2_0));
    if (cubic)
      traj.casimir3_drift =
          std::max(traj.casimir3_drift, relative_change(alg->cubic_casimir(st.C), c3_0));
    traj.spin_drift = std::max(traj.spin_drift, relative_change(st.s.squaredNorm(), s2_0));
    for (const CMatrix* d : {&dc, &ds}) {
      if (d->size() == 0) continue;
      const double u = unitarity_defect(*d);
      traj.unitarity_drift = std::max(traj.unitarity_drift, u);
      if (u > opt.unitarity_tolerance) {
        std::ostringstream os;
        os << "transport matrix lost unitarity (" << u << ") at t = " << t
           << "; use a smaller dt";
        throw IntegrationError(os.str(), t);
      }
    }

    if (n % opt.stride == 0 || n == total) record(t, r1.energy);
  }
  return traj;
}

Trajectory integrate_wong(const ClassicalState& state0, const GaugeField& field,
                          const Couplings& couplings, double t_final, double dt,
                          HamiltonianKind kind, int stride) {
  if (!is_wong(kind) && !is_triple(kind))
    throw UnsupportedError("integrate_wong: kind must be wong or triple, got " + kind_name(kind));
  FlowOptions opt;
  opt.t_final = t_final;
  opt.dt = dt;
  opt.stride = stride;
  return integrate_flow(state0, kind, field, couplings, opt);
}

std::vector<TransportMatrix> integrate_transport(TransportKind kind, const TrajectorySpec& spec,
                                                 const GaugeField& field,
                                                 const Couplings& couplings, double dt) {
  FlowOptions opt;
  opt.t_final = spec.duration;
  opt.dt = dt;
  opt.stride = spec.stride;
  opt.colour_transport = kind == TransportKind::Colour;
  opt.spin_transport = kind == TransportKind::Spin;
  ClassicalState start = spec.start;
  if (kind == TransportKind::Colour && start.C.size() == 0 && !field.is_abelian())
    start.C = RVector::Zero(field.components());
  const Trajectory traj = integrate_flow(start, spec.kind, field, couplings, opt);
  std::vector<TransportMatrix> out;
  out.reserve(traj.samples.size());
  for (const auto& s : traj.samples)
    out.push_back({s.t, kind == TransportKind::Colour ? s.d_colour : s.d_spin});
  return out;
}

CMatrix torus_constant_field_d(const Eigen::Vector2d& p, double q, double g, double A,
                               double lambda) {
  if (!(lambda > 0.0)) throw SingularPointError("torus_constant_field_d: λ must be positive");
  const auto& sig = pauli();
  const double pn = p.norm();
  CMatrix d = CMatrix::Identity(2, 2);
  if (pn == 0.0) return d;
  const double theta = g * A * pn * q / (2.0 * lambda);
  const CMatrix n = (p[0] / pn) * CMatrix(sig[0]) + (p[1] / pn) * CMatrix(sig[1]);
  return std::cos(theta) * d + kI * std::sin(theta) * n;
}

Complex holonomy_trace(const CMatrix& d) { return d.trace(); }

double holonomy_character(const CMatrix& d) { return d.trace().real(); }

}  // namespace sqcd
