#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "sqcd/types.hpp"

namespace sqcd {

/// Euclidean gamma matrices.  Index d-1 is the time direction (γ4 for d = 4).
/// d = 4 uses the chiral representation, d = 2 uses (σ1, σ2).
struct GammaSet {
  int dim = 0;
  std::vector<CMatrix> gamma;
  std::optional<CMatrix> gamma5;  // d = 4 only

  int spinor_dim() const { return static_cast<int>(gamma.front().rows()); }
};

GammaSet build_gamma(int d);

/// σ1, σ2, σ3.
const std::array<Eigen::Matrix2cd, 3>& pauli();

/// Fundamental representation of su(N) with tr(XᵃXᵇ) = 2δᵃᵇ and
/// [Xᵃ, Xᵇ] = 2i fᵃᵇᶜ Xᶜ (real f).  For N = 2 the generators are the Pauli
/// matrices, for N = 3 the Gell-Mann matrices in their standard order.
class LieAlgebraRep {
 public:
  static LieAlgebraRep su(int n);

  int rank() const { return n_; }
  int dim_rep() const { return n_; }
  int size() const { return static_cast<int>(generators_.size()); }

  const CMatrix& generator(int a) const { return generators_.at(a); }
  const std::vector<CMatrix>& generators() const { return generators_; }

  double f(int a, int b, int c) const { return f_[index(a, b, c)]; }
  double d(int a, int b, int c) const { return d_[index(a, b, c)]; }

  /// Eigenvalue of Σ XᵃXᵃ on this representation.
  double casimir2() const { return casimir2_; }

  /// Classical invariants of a colour vector C.
  double quadratic_casimir(const RVector& c) const { return c.squaredNorm(); }
  double cubic_casimir(const RVector& c) const;

  /// Σ cᵃ Xᵃ.
  CMatrix combine(const RVector& coeffs) const;
  /// Inverse of combine for traceless Hermitean input: ½ tr(Xᵃ M).
  RVector components(const CMatrix& m) const;

  /// (fᵃᵇᶜ vᵇ wᶜ)_a.
  RVector f_contract(const RVector& v, const RVector& w) const;

 private:
  explicit LieAlgebraRep(int n, std::vector<CMatrix> generators);
  std::size_t index(int a, int b, int c) const {
    const auto m = static_cast<std::size_t>(size());
    return (static_cast<std::size_t>(a) * m + static_cast<std::size_t>(b)) * m +
           static_cast<std::size_t>(c);
  }

  int n_;
  std::vector<CMatrix> generators_;
  std::vector<double> f_;
  std::vector<double> d_;
  double casimir2_ = 0.0;
};

/// Real potential coefficients A_μᵃ(x) (rows μ, columns a) for an SU(N) or
/// Abelian (single component) gauge field.  Derivatives ∂_ν A_μᵃ are supplied
/// analytically by the caller.
class GaugeField {
 public:
  using Potential = std::function<RMatrix(const RVector&)>;
  /// Returns one d×ncomp matrix per derivative direction ν.
  using PotentialGradient = std::function<std::vector<RMatrix>(const RVector&)>;

  enum class Kind { Constant, Analytic };

  static GaugeField constant(std::shared_ptr<const LieAlgebraRep> algebra, RMatrix a, double g);
  static GaugeField analytic(int dim, std::shared_ptr<const LieAlgebraRep> algebra, double g,
                             Potential potential, PotentialGradient gradient);
  static GaugeField zero(int dim, std::shared_ptr<const LieAlgebraRep> algebra, double g = 1.0);

  static GaugeField abelian_constant(RVector a);
  static GaugeField abelian_analytic(int dim, Potential potential, PotentialGradient gradient);
  /// Abelian potential A_μ(x) = a_μ - ½ F_μν x_ν with constant antisymmetric F.
  static GaugeField abelian_uniform_strength(RVector offset, const RMatrix& strength);

  int dim() const { return dim_; }
  int components() const { return algebra_ ? algebra_->size() : 1; }
  bool is_abelian() const { return !algebra_; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  Kind kind() const { return kind_; }
  double coupling() const { return g_; }

  const LieAlgebraRep* algebra() const { return algebra_.get(); }
  std::shared_ptr<const LieAlgebraRep> algebra_ptr() const { return algebra_; }

  RMatrix potential(const RVector& x) const;
  std::vector<RMatrix> gradient(const RVector& x) const;

  /// Σ_a A_μᵃ(x) Xᵃ; for an Abelian field the 1×1 matrix A_μ(x).
  CMatrix potential_matrix(const RVector& x, int mu) const;

 private:
  GaugeField() = default;

  int dim_ = 0;
  Kind kind_ = Kind::Constant;
  double g_ = 1.0;
  std::shared_ptr<const LieAlgebraRep> algebra_;
  RMatrix constant_;
  Potential potential_;
  PotentialGradient gradient_;
};

/// F_μνᵃ = ∂_μA_νᵃ - ∂_νA_μᵃ + g fᵃᵇᶜ A_μᵇ A_νᶜ, together with the electric and
/// magnetic split  E_i = F_4i,  B_i = ½ ε_ijk F_jk  (d = 4).
struct FieldStrength {
  int dim = 0;
  std::vector<RMatrix> F;  // F[a](mu, nu)
  RMatrix E;               // 3 × ncomp, empty unless d = 4
  RMatrix B;               // 3 × ncomp, empty unless d = 4

  int components() const { return static_cast<int>(F.size()); }
};

FieldStrength field_strength(const GaugeField& field, const RVector& x);

}  // namespace sqcd
