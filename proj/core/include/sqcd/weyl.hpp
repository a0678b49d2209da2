#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sqcd/algebra.hpp"
#include "sqcd/random.hpp"
#include "sqcd/types.hpp"

namespace sqcd {

/// Classical values used for |s|² and CᵃCᵃ.
enum class CasimirConvention {
  /// Coadjoint orbit through the highest weight: |s|² = ħ²s², CᵃCᵃ = ħ²(N-1)/(2N).
  HighestWeight,
  /// Quantum Casimirs: ħ²s(s+1) and ħ²(N²-1)/(2N).
  Quantum,
};

struct WeylConfig {
  int d = 4;
  double volume = 1.0;
  int J = 3;          // colour multiplicity (dimension of the representation)
  double spin = 0.5;  // spin quantum number s
  double hbar = 1.0;
  double g = 1.0;
  int N = 3;  // gauge group SU(N)
  CasimirConvention convention = CasimirConvention::HighestWeight;
  std::optional<double> c2_spin;    // overrides the convention when set
  std::optional<double> c2_colour;  // overrides the convention when set

  double c2_spin_value() const;
  double c2_colour_value() const;
  /// Throws ConfigError on non-positive entries.
  void validate() const;
};

/// |S^{d-1}| = 2π^{d/2}/Γ(d/2).
double sphere_area(int d);

/// ρ̄(λ) = 2π^{d/2} J (2s+1) V λ^{d-1} / ((2πħ)^d Γ(d/2)).
double mean_density_free(double lambda, const WeylConfig& cfg);

/// Monte Carlo Weyl term for large colour: C sampled on the coadjoint orbit
/// (Haar conjugation of the reference element), momenta integrated on the
/// shell |p - gA_μᵃCᵃ| = λ by a ray estimator from p = 0.  The estimator has
/// finite variance while |gA_μᵃCᵃ| < λ.  Needs a constant non-Abelian field.
MeanEstimate mean_density_colour_limit(double lambda, const WeylConfig& cfg,
                                       const GaugeField& field, std::size_t samples,
                                       std::uint64_t seed, int threads = 1);

/// Reference colour vector (ħ/2)⟨e₁|Xᵃ|e₁⟩ rescaled to |C|² = cfg.c2_colour_value().
RVector colour_reference(const LieAlgebraRep& algebra, const WeylConfig& cfg);
/// Ad(U) C_ref for Haar-random U ∈ SU(N).
RVector sample_colour_orbit(CounterRng& rng, const LieAlgebraRep& algebra, const RVector& c_ref);

struct QuadratureOptions {
  double rel_tol = 1e-12;
  unsigned max_depth = 20;
};

/// Φ_d(λ, v) = (2πv²)^{-1/2} ∫₀^∞ exp(-(p²-λ²)²/2v²) p^{d-1} dp by adaptive
/// Gauss–Kronrod quadrature.  v = 0 returns the limit λ^{d-2}/2.
/// Throws IntegrationError if the error estimate misses the tolerance.
double phi_d(double lambda, double v, int d, const QuadratureOptions& opt = {});

/// Closed form for d = 4 in terms of erf.
double phi_4_closed(double lambda, double v);

/// v = √8 σ g |s| |C| with the configured Casimir values.
double triple_v(double sigma, const WeylConfig& cfg);

/// ⟨ρ̄(λ)⟩ = 4π^{d/2} V J (2s+1) λ Φ_d(λ, v) / ((2πħ)^d Γ(d/2)).
double mean_density_triple(double lambda, double v, const WeylConfig& cfg);

/// Leading small-λ form: prefactor · λ · Φ_d(0, v) · exp(-λ⁴/2v²).
double mean_density_triple_small_lambda(double lambda, double v, const WeylConfig& cfg);

/// exp(-4σ²g²|s|²CᵃCᵃt²).
double gaussian_phase_average(const Vec3& s, const RVector& C, double g, double sigma, double t);

/// Monte Carlo of Re⟨exp(-2ig s·(Eᵃ+Bᵃ)Cᵃ t)⟩ over Gaussian E, B.
MeanEstimate gaussian_phase_average_mc(const Vec3& s, const RVector& C, double g, double sigma,
                                       double t, std::size_t samples, std::uint64_t seed);

/// Averaged triple-limit density from constant Gaussian fields (σ per
/// component), random spin direction and colour orbit point:
/// Φ_d = ½ E[u^{(d-2)/2} Θ(u)],  u = λ² + 2g s·(Eᵃ+Bᵃ)Cᵃ.
MeanEstimate mc_density_triple(double lambda, double sigma, const WeylConfig& cfg,
                               std::size_t samples, std::uint64_t seed, int threads = 1);

/// Same average for a field that fluctuates independently on `sites` lattice
/// points of equal volume: each sample averages the local density over all
/// sites.  Site j of sample i draws from stream i·sites + j, so
/// lattice(M, sites) and the constant-field estimate with M·sites samples use
/// identical random numbers.
MeanEstimate mc_density_triple_lattice(double lambda, double sigma, const WeylConfig& cfg,
                                       int sites, std::size_t samples, std::uint64_t seed,
                                       int threads = 1);

struct ChiralCurvePoint {
  double zeta = 0.0;
  double r = 0.0;
};

/// r(ζ) = ζ exp(-1/(2ζ²)).
double chiral_r(double zeta);
std::vector<ChiralCurvePoint> chiral_curve(const std::vector<double>& zeta_grid);

}  // namespace sqcd
