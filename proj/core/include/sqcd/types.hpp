#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sqcd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

/// Sign of the classical Hamiltonian (positive or negative virtuality).
enum class Branch { Plus, Minus };

inline double branch_sign(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }
inline const char* branch_name(Branch b) { return b == Branch::Plus ? "+" : "-"; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for arguments outside the supported set (dimension, group rank, field kind).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Λ = 0: eigenvector matrices and 1/Λ prefactors are undefined.
class SingularPointError : public Error {
 public:
  using Error::Error;
};

/// A square-root Hamiltonian was evaluated with a negative radicand.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double radicand)
      : Error(what + " (radicand = " + std::to_string(radicand) + ")"), radicand_(radicand) {}
  double radicand() const { return radicand_; }

 private:
  double radicand_;
};

/// Numerical integration left its contract (unitarity drift, flow domain, quadrature).
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sqcd
