#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "sqcd/types.hpp"

namespace sqcd {

/// Massless Dirac fermions on T² = [0,L₁]×[0,L₂] (periodic) in a constant
/// SU(2) potential A_μ = ½ A⃗_μ·σ⃗.
struct TorusConfig {
  double L1 = 2.0 * std::numbers::pi;
  double L2 = 2.0 * std::numbers::pi;
  double hbar = 1.0;
  double g = 1.0;
  Vec3 A1 = Vec3::Zero();
  Vec3 A2 = Vec3::Zero();

  /// A⃗₁ = A ê₁, A⃗₂ = A ê₂.
  static TorusConfig special(double A, double L1, double L2, double hbar = 1.0, double g = 1.0);

  /// True when the potentials have the special form (including A = 0).
  bool is_special() const;
  /// A of the special form; throws UnsupportedError otherwise.
  double amplitude() const;
  /// a = ħgA.
  double a() const;
  /// Throws ConfigError on non-positive lengths or ħ.
  void validate() const;
};

struct SpectrumEntry {
  int n1 = 0;
  int n2 = 0;
  Branch branch = Branch::Plus;
  double lambda = 0.0;
  /// |closed form − brute-force diagonalisation|, NaN when not verified.
  double oracle_residual = 0.0;
};

struct SpectrumTable {
  std::vector<SpectrumEntry> entries;  // sorted by λ, then (n1, n2, branch)
  double max_oracle_residual = 0.0;
};

/// p_μ = 2πħ n_μ / L_μ.
Eigen::Vector2d torus_momentum(int n1, int n2, const TorusConfig& cfg);

/// Closed form for arbitrary constant A⃗₁, A⃗₂ (λ₊ ≥ λ₋ ≥ 0).
double general_eigenvalue(int n1, int n2, Branch branch, const TorusConfig& cfg);
/// √(p² + a²/4) ± a/2; throws UnsupportedError unless cfg.is_special().
double special_eigenvalue(int n1, int n2, Branch branch, const TorusConfig& cfg);

/// Non-negative eigenvalues of the 4×4 Dirac matrix at lattice point n,
/// ascending, by dense diagonalisation.  Also returns the full spectrum.
struct BruteForceEigen {
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  Eigen::Vector4d all = Eigen::Vector4d::Zero();
};
BruteForceEigen brute_force_eigenvalues(int n1, int n2, const TorusConfig& cfg);

/// All (n1, n2) with |n_μ| ≤ nmax, both branches.  With verify set every entry
/// is checked against brute_force_eigenvalues.
SpectrumTable exact_eigenvalues(const TorusConfig& cfg, int nmax, bool verify = true);

/// (L₁L₂/2πħ²)[Θ(λ−a)(λ−a/2) + (λ+a/2)], Θ(0) = ½.
double exact_mean_density(double lambda, const TorusConfig& cfg);

/// Lengths of the periodic orbits k ≠ 0, |k_μ| ≤ kmax, grouped by length.
struct OrbitGroup {
  double q = 0.0;
  int multiplicity = 0;
  int k1 = 0;  // representative with k1, k2 ≥ 0
  int k2 = 0;
};
std::vector<OrbitGroup> orbit_groups(const TorusConfig& cfg, int kmax);

/// Bessel-function orbit sum (exact oscillating part of the density).
double orbit_sum_exact(double lambda, const TorusConfig& cfg, int kmax);
/// Its ħ → 0 asymptotic form.
double orbit_sum_semiclassical(double lambda, const TorusConfig& cfg, int kmax);

/// Single-orbit contributions to the two sums above (no multiplicity).
double orbit_term_exact(double lambda, double q, const TorusConfig& cfg);
double orbit_term_semiclassical(double lambda, double q, const TorusConfig& cfg);

/// cos(qgA/2): colour weight of an orbit of length q.
double orbit_colour_weight(double q, const TorusConfig& cfg);

double bessel_j0(double x);

struct CompareRow {
  double lambda = 0.0;
  double exact_smoothed = 0.0;
  double weyl = 0.0;
  double weyl_plus_orbits = 0.0;
};

struct CompareOptions {
  /// Orbits whose Gaussian damping exp(−q²w²/2ħ²) falls below this are omitted.
  double damping_cutoff = 1e-20;
};

struct CompareResult {
  std::vector<CompareRow> rows;
  double max_relative_deviation = 0.0;
  int orbit_groups_used = 0;
  std::vector<std::string> warnings;  // truncation diagnostics
};

/// Gaussian-smoothed (standard deviation `width`) exact density against the
/// smoothed mean density plus Bessel orbit sum, on the given grid.
CompareResult smoothed_compare(const TorusConfig& cfg, const std::vector<double>& lambda_grid,
                               double width, int nmax, int kmax,
                               const CompareOptions& options = {});

}  // namespace sqcd
