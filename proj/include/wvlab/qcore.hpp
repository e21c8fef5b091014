#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wvlab {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Shared tolerance for structural predicates (hermiticity, unitarity,
/// normality, normalization, orthonormality). One knob, overridable per call.
inline constexpr double kStructuralTol = 1e-10;

/// Overlaps with modulus at or below this are treated as orthogonal
/// selections; weak values diverge there.
inline constexpr double kOrthogonalTol = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Pre- and post-selection are (numerically) orthogonal; the requested
/// quantity is undefined.
class OrthogonalSelection : public Error {
 public:
  using Error::Error;
};

class NoFringe : public Error {
 public:
  using Error::Error;
};

/// A small-parameter expansion was requested outside its validity range.
class RegimeViolation : public Error {
 public:
  using Error::Error;
};

/// Pure state of a d-dimensional system. Immutable after construction;
/// amplitudes are validated to be finite.
class Ket {
 public:
  explicit Ket(Vector amplitudes);
  Ket(std::initializer_list<Complex> amplitudes);

  static Ket basis(int dim, int index);
  /// Rescales to unit norm.
  static Ket unit(Vector amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](int k) const { return amps_(k); }
  double norm() const { return amps_.norm(); }
  /// True when the norm was within tolerance of 1 at construction.
  bool normalized() const { return normalized_; }
  bool is_normalized(double tol = kStructuralTol) const;

 private:
  Vector amps_;
  bool normalized_;
};

/// Dense d x d complex operator with testable structure flags.
class Operator {
 public:
  explicit Operator(Matrix entries);

  static Operator identity(int dim);
  static Operator zero(int dim);
  static Operator projector(const Ket& k);
  static Operator pauli_x();
  static Operator pauli_y();
  static Operator pauli_z();
  /// z-spin of a spin-1/2 particle with hbar = 1: diag(1/2, -1/2).
  static Operator spin_z();

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }
  Operator adjoint() const { return Operator(m_.adjoint()); }

  bool is_hermitian(double tol = kStructuralTol) const;
  bool is_normal(double tol = kStructuralTol) const;
  bool is_unitary(double tol = kStructuralTol) const;

  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);

 private:
  Matrix m_;
};

/// Hermitian, unit-trace, positive-semidefinite (all within tolerance)
/// state of a d-dimensional system. Invariants checked at construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries, double tol = kStructuralTol);

  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }

 private:
  Matrix m_;
};

/// <a|b>.
Complex inner(const Ket& a, const Ket& b);

/// M|v>; the result is not renormalized.
Ket apply(const Operator& M, const Ket& v);

/// exp(s*M). Normal M goes through a unitary (Schur) eigendecomposition;
/// anything else falls back to scaling-and-squaring.
Operator matexp(const Operator& M, Complex s);

/// Tensor product, row-major convention: composite index = i1*d2 + i2.
Operator kron(const Operator& a, const Operator& b);
Ket kron(const Ket& a, const Ket& b);

/// |v><v| for normalized v.
DensityMatrix density_from_ket(const Ket& v);

}  // namespace wvlab
