#pragma once

#include <cstdint>
#include <memory>
#include <random>

#include "sqcd/algebra.hpp"

namespace sqcd::testing {

inline RVector random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  RVector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

inline RMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  RMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

inline std::shared_ptr<const LieAlgebraRep> su(int n) {
  return std::make_shared<const LieAlgebraRep>(LieAlgebraRep::su(n));
}

/// Potential linear in x: A_μᵃ(x) = a0_μᵃ + Σ_ν lin[a](μ, ν) x_ν.
inline GaugeField linear_field(std::shared_ptr<const LieAlgebraRep> alg, const RMatrix& a0,
                               const std::vector<RMatrix>& lin, double g) {
  const int d = static_cast<int>(a0.rows());
  const int m = static_cast<int>(a0.cols());
  auto pot = [a0, lin, m](const RVector& x) {
    RMatrix a = a0;
    for (int c = 0; c < m; ++c) a.col(c) += lin[c] * x;
    return a;
  };
  auto grad = [lin, d, m](const RVector&) {
    std::vector<RMatrix> out(d, RMatrix::Zero(d, m));
    for (int nu = 0; nu < d; ++nu)
      for (int mu = 0; mu < d; ++mu)
        for (int c = 0; c < m; ++c) out[nu](mu, c) = lin[c](mu, nu);
    return out;
  };
  if (!alg) return GaugeField::abelian_analytic(d, pot, grad);
  return GaugeField::analytic(d, std::move(alg), g, pot, grad);
}

}  // namespace sqcd::testing
