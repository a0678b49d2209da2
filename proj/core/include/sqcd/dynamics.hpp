#pragma once

#include <vector>

#include "sqcd/algebra.hpp"
#include "sqcd/symbols.hpp"
#include "sqcd/types.hpp"

namespace sqcd {

/// ṡ = s × (e/Λ±)(E ± B) with Λ± = ±lambda.
Vec3 spin_precession_rhs(const Vec3& s, const Vec3& E, const Vec3& B, double e, double lambda,
                         Branch branch);

/// Ċᵃ = -g (p_μ/Λ±) fᵃᵇᶜ A_μᵇ Cᶜ with Λ± = ±lambda.  A is d × (N²-1).
RVector colour_precession_rhs(const LieAlgebraRep& algebra, const RVector& C, const RVector& p,
                              const RMatrix& A, double g, double lambda, Branch branch);

enum class TransportKind { Spin, Colour };

struct TransportMatrix {
  double t = 0.0;
  CMatrix d;
};

struct FlowOptions {
  double t_final = 1.0;
  double dt = 1e-3;
  /// Keep every stride-th step (the final step is always kept).
  int stride = 1;
  bool colour_transport = false;
  bool spin_transport = false;
  /// Largest tolerated ‖d†d − 1‖_max before the integration is abandoned.
  double unitarity_tolerance = 1e-6;
};

struct TrajectorySample {
  double t = 0.0;
  ClassicalState state;
  double energy = 0.0;
  CMatrix d_colour;  // empty unless requested
  CMatrix d_spin;    // empty unless requested
};

struct Trajectory {
  HamiltonianKind kind = HamiltonianKind::FreePlus;
  double dt = 0.0;
  double energy = 0.0;  // value at t = 0
  std::vector<TrajectorySample> samples;

  // Largest deviations seen over all steps (relative where the reference is nonzero).
  double energy_drift = 0.0;
  double casimir2_drift = 0.0;
  double casimir3_drift = 0.0;
  double spin_drift = 0.0;
  double unitarity_drift = 0.0;
};

/// Fixed-step RK4 integration of Hamilton's equations for (x, p) together with
/// colour and spin precession.  Free kinds move C along the trajectory without
/// back-reaction (velocity p/Λ), Abelian kinds do the same for s.  The step is
/// t_final / round(t_final / dt).
///
/// Throws IntegrationError when a square-root radicand turns negative, Λ hits
/// zero, or a transport matrix drifts from unitarity beyond tolerance.
Trajectory integrate_flow(const ClassicalState& state0, HamiltonianKind kind,
                          const GaugeField& field, const Couplings& couplings,
                          const FlowOptions& options);

/// Coupled Wong flow; kind must be a Wong or Triple kind.
Trajectory integrate_wong(const ClassicalState& state0, const GaugeField& field,
                          const Couplings& couplings, double t_final, double dt,
                          HamiltonianKind kind = HamiltonianKind::WongPlus, int stride = 1);

struct TrajectorySpec {
  ClassicalState start;
  HamiltonianKind kind = HamiltonianKind::FreePlus;
  double duration = 1.0;
  int stride = 1;
};

/// Transport matrix d(t) with d(0) = 1 along the trajectory, ḋ = iK d.
/// Colour: K = (g/2)(∂Λ/∂p_μ)A_μᵃXᵃ.  Spin: K = (e/2Λ±)σ·(E±B).
std::vector<TransportMatrix> integrate_transport(TransportKind kind, const TrajectorySpec& spec,
                                                 const GaugeField& field,
                                                 const Couplings& couplings, double dt);

/// Closed-form colour transport along a straight torus orbit of length q in the
/// field A₁ = A ê₁, A₂ = A ê₂:  exp(i (gA/2λ) p_μσ_μ q).
CMatrix torus_constant_field_d(const Eigen::Vector2d& p, double q, double g, double A,
                               double lambda);

Complex holonomy_trace(const CMatrix& d);
/// Re tr d.
double holonomy_character(const CMatrix& d);

}  // namespace sqcd
