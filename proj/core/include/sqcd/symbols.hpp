#pragma once

#include <string>
#include <vector>

#include "sqcd/algebra.hpp"
#include "sqcd/types.hpp"

namespace sqcd {

/// Abelian charge e and Planck constant.  The non-Abelian coupling g is a
/// property of the GaugeField.
struct Couplings {
  double e = 1.0;
  double hbar = 1.0;
};

/// Phase-space point for translational, colour and spin degrees of freedom.
/// C has one entry per generator (empty for Abelian fields), s is in units
/// where symb[(ħ/2)σ] = s.
struct ClassicalState {
  RVector p;
  RVector x;
  RVector C;
  Vec3 s = Vec3::Zero();
};

enum class HamiltonianKind {
  FreePlus,
  FreeMinus,
  AbelianPlus,
  AbelianMinus,
  WongPlus,
  WongMinus,
  PauliPlus,
  PauliMinus,
  SqrtPlus,
  SqrtMinus,
  TriplePlus,
  TripleMinus,
};

Branch branch_of(HamiltonianKind kind);
std::string kind_name(HamiltonianKind kind);
/// Parses the names produced by kind_name ("wong+", "triple-", ...).
HamiltonianKind parse_kind(const std::string& name);

/// Kinetic momentum: p - eA (Abelian) or p - g Aᵃ Cᵃ (non-Abelian, needs C).
RVector kinetic_momentum(const RVector& p, const RVector& x, const RVector& colour,
                         const GaugeField& field, const Couplings& c);

/// D(p,x) = γ_μ(p_μ - (ħg/2)XᵃA_μᵃ), or γ_μ(p_μ - eA_μ) for an Abelian field.
/// Spinor index is the outer tensor factor.
CMatrix dirac_symbol(const RVector& p, const RVector& x, const GaugeField& field,
                     const Couplings& c);

enum class SquaredSymbolMode {
  /// Matrix-valued Wigner–Weyl symbol, size 4J.
  WeylHbar,
  /// Spin and colour replaced by classical s and C: diagonal 2×2.
  Triple,
};

/// Symbol of D².  The spinor blocks carry σ·(B+E) (upper) and σ·(B−E) (lower).
/// Triple mode reads C and s from the state; WeylHbar ignores them.
CMatrix dirac_squared_symbol(const ClassicalState& state, const GaugeField& field,
                             const Couplings& c, SquaredSymbolMode mode);

/// Eigen-decomposition of γ_μπ_μ (d = 4).
struct EigenPair {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  CMatrix V_plus;   // 4×2
  CMatrix V_minus;  // 4×2
};

/// Throws SingularPointError at π = 0.
EigenPair principal_eigen(const RVector& pi);

/// Value of a classical Hamiltonian.  Square-root kinds throw DomainError on a
/// negative radicand; spin kinds need d = 4.
double classical_hamiltonian(HamiltonianKind kind, const ClassicalState& state,
                             const GaugeField& field, const Couplings& c);

/// Argument of the square root for Sqrt and Triple kinds (π² for the
/// others).  Never throws on sign.
double hamiltonian_radicand(HamiltonianKind kind, const ClassicalState& state,
                            const GaugeField& field, const Couplings& c);

/// Partial derivatives of a Hamiltonian at a phase-space point.
struct HamiltonianGradient {
  double value = 0.0;
  RVector dp;
  RVector dx;
  RVector dC;
  Vec3 ds = Vec3::Zero();
};

/// Exact derivatives.  ∂/∂x of the field strength is taken to vanish, so for
/// Pauli, Sqrt and Triple kinds the field strength must be uniform (constant
/// fields, or abelian_uniform_strength); the flow integrator checks this.
HamiltonianGradient hamiltonian_gradient(HamiltonianKind kind, const ClassicalState& state,
                                         const GaugeField& field, const Couplings& c);

/// Residuals of the projected transport relations for an Abelian field, with
/// Λ = |π| > 0.  The action S enters only through its Hessian ∂_μ∂_νS at x.
/// spin_field_± is the w found when the non-scalar term for V± is written
/// −(i/2Λ)σ·w; the relations give w₊ = e(B+E) and w₋ = e(E−B).
struct ProjectedTransportReport {
  double velocity_plus = 0.0;    // ‖V₊†γ_μV₊ − (π_μ/Λ)1‖
  double velocity_minus = 0.0;   // ‖V₋†γ_μV₋ + (π_μ/Λ)1‖
  double spin_plus = 0.0;        // non-scalar part vs −(ie/2Λ)σ·(B+E)
  double spin_minus = 0.0;       // non-scalar part vs −(ie/2Λ)σ·(E−B)
  double scalar_plus = 0.0;      // scalar part vs π·∂_tπ/2Λ² + ∂_μπ_μ/2Λ
  double scalar_minus = 0.0;     // scalar part vs π·∂_tπ/2Λ² − ∂_μπ_μ/2Λ
  Vec3 spin_field_plus = Vec3::Zero();   // coefficient of σ found for V₊
  Vec3 spin_field_minus = Vec3::Zero();  // coefficient of σ found for V₋

  double max_residual() const;
};

ProjectedTransportReport projected_transport_identities(const RVector& p, const RVector& x,
                                      const GaugeField& field, double e,
                                      const RMatrix& action_hessian);

}  // namespace sqcd
