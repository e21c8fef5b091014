#include "wvlab/qcore.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace wvlab {

namespace {

bool all_finite(const Matrix& m) {
  return m.array().isFinite().all();
}

bool all_finite(const Vector& v) {
  return v.array().isFinite().all();
}

double max_abs(const Matrix& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace

Ket::Ket(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1) throw InvalidArgument("Ket: dimension must be >= 1");
  if (!all_finite(amps_)) throw InvalidArgument("Ket: amplitudes must be finite");
  normalized_ = std::abs(amps_.norm() - 1.0) <= kStructuralTol;
}

Ket::Ket(std::initializer_list<Complex> amplitudes)
    : Ket(Vector(Eigen::Map<const Vector>(amplitudes.begin(),
                                          static_cast<Eigen::Index>(amplitudes.size())))) {}

Ket Ket::basis(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim)
    throw InvalidArgument("Ket::basis: index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return Ket(std::move(v));
}

Ket Ket::unit(Vector amplitudes) {
  double n = amplitudes.norm();
  if (n == 0.0) throw InvalidArgument("Ket::unit: zero vector");
  return Ket(Vector(amplitudes / n));
}

bool Ket::is_normalized(double tol) const {
  return std::abs(amps_.norm() - 1.0) <= tol;
}

Operator::Operator(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw InvalidArgument("Operator: entries must be a nonempty square matrix");
  if (!all_finite(m_)) throw InvalidArgument("Operator: entries must be finite");
}

Operator Operator::identity(int dim) { return Operator(Matrix::Identity(dim, dim)); }

Operator Operator::zero(int dim) { return Operator(Matrix::Zero(dim, dim)); }

Operator Operator::projector(const Ket& k) {
  return Operator(Matrix(k.amplitudes() * k.amplitudes().adjoint()));
}

Operator Operator::pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Operator(std::move(m));
}

Operator Operator::pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return Operator(std::move(m));
}

Operator Operator::pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return Operator(std::move(m));
}

Operator Operator::spin_z() {
  Matrix m(2, 2);
  m << 0.5, 0, 0, -0.5;
  return Operator(std::move(m));
}

bool Operator::is_hermitian(double tol) const {
  return max_abs(m_ - m_.adjoint()) <= tol;
}

bool Operator::is_normal(double tol) const {
  return max_abs(m_ * m_.adjoint() - m_.adjoint() * m_) <= tol;
}

bool Operator::is_unitary(double tol) const {
  return max_abs(m_ * m_.adjoint() - Matrix::Identity(m_.rows(), m_.cols())) <= tol;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("Operator product: dimension mismatch");
  return Operator(Matrix(a.m_ * b.m_));
}

Operator operator+(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("Operator sum: dimension mismatch");
  return Operator(Matrix(a.m_ + b.m_));
}

Operator operator-(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("Operator difference: dimension mismatch");
  return Operator(Matrix(a.m_ - b.m_));
}

Operator operator*(Complex s, const Operator& a) { return Operator(Matrix(s * a.m_)); }

DensityMatrix::DensityMatrix(Matrix entries, double tol) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw InvalidArgument("DensityMatrix: entries must be a nonempty square matrix");
  if (!all_finite(m_)) throw InvalidArgument("DensityMatrix: entries must be finite");
  if (max_abs(m_ - m_.adjoint()) > tol)
    throw InvalidArgument("DensityMatrix: not Hermitian within tolerance");
  if (std::abs(m_.trace().real() - 1.0) > tol || std::abs(m_.trace().imag()) > tol)
    throw InvalidArgument("DensityMatrix: trace must be 1 within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw InvalidArgument("DensityMatrix: negative eigenvalue beyond tolerance");
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(Matrix(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

Complex inner(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("inner: dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

Ket apply(const Operator& M, const Ket& v) {
  if (M.dim() != v.dim()) throw DimensionMismatch("apply: dimension mismatch");
  return Ket(Vector(M.entries() * v.amplitudes()));
}

Operator matexp(const Operator& M, Complex s) {
  const Matrix sm = s * M.entries();
  if (M.is_normal()) {
    // Schur form of a normal matrix is diagonal with a unitary basis change,
    // so exponentiate the eigenvalues directly.
    Eigen::ComplexSchur<Matrix> schur(sm);
    if (schur.info() == Eigen::Success) {
      const Matrix& t = schur.matrixT();
      const Matrix& u = schur.matrixU();
      Matrix off = t;
      off.diagonal().setZero();
      if (max_abs(off) <= 1e-12 * (1.0 + max_abs(t))) {
        Vector d = t.diagonal().array().exp();
        return Operator(Matrix(u * d.asDiagonal() * u.adjoint()));
      }
    }
    // Eigendecomposition failed or T did not come out diagonal; fall through.
  }
  return Operator(Matrix(sm.exp()));
}

Operator kron(const Operator& a, const Operator& b) {
  return Operator(Matrix(Eigen::kroneckerProduct(a.entries(), b.entries())));
}

Ket kron(const Ket& a, const Ket& b) {
  return Ket(Vector(Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes())));
}

DensityMatrix density_from_ket(const Ket& v) {
  if (!v.is_normalized())
    throw InvalidArgument("density_from_ket: ket must be normalized");
  return DensityMatrix(Matrix(v.amplitudes() * v.amplitudes().adjoint()));
}

}  // namespace wvlab
