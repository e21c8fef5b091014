#include "wvlab/transforms.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "wvlab/weakval.hpp"

namespace wvlab {

SmallTransform::SmallTransform(Family family, Operator gen,
                               std::function<Operator(double)> table)
    : family_(family), gen_(std::move(gen)), table_(std::move(table)) {}

SmallTransform SmallTransform::exponential_of(Operator generator) {
  return SmallTransform(Family::exponential, std::move(generator), {});
}

SmallTransform SmallTransform::linear_of(Operator generator) {
  return SmallTransform(Family::linear, std::move(generator), {});
}

SmallTransform SmallTransform::table_of(std::function<Operator(double)> family,
                                        Operator generator) {
  if (!family) throw InvalidArgument("table_of: family callable required");
  const int d = generator.dim();
  Operator at0 = family(0.0);
  if (at0.dim() != d) throw DimensionMismatch("table_of: family/generator dimension mismatch");
  if ((at0.entries() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidArgument("table_of: family(0) must be the identity");
  const double h = 1e-5;
  Matrix diff = (family(h).entries() - family(-h).entries()) / (2.0 * h);
  if ((diff - generator.entries()).cwiseAbs().maxCoeff() > 1e-6)
    throw InvalidArgument("table_of: generator disagrees with the family derivative at 0");
  return SmallTransform(Family::table, std::move(generator), std::move(family));
}

Operator SmallTransform::evaluate(double theta) const {
  switch (family_) {
    case Family::exponential:
      return matexp(gen_, theta);
    case Family::linear:
      return Operator(Matrix(Matrix::Identity(dim(), dim()) + theta * gen_.entries()));
    case Family::table:
      return table_(theta);
  }
  throw Error("SmallTransform: unknown family");
}

namespace {

void require_hermitian(const Operator& op, const char* what) {
  if (!op.is_hermitian())
    throw InvalidArgument(std::string(what) + ": operator must be Hermitian");
}

}  // namespace

SmallTransform unitary_of(const Operator& A, Exactness exactness) {
  require_hermitian(A, "unitary_of");
  Operator gen = Complex(0, 1) * A;
  return exactness == Exactness::exponential ? SmallTransform::exponential_of(std::move(gen))
                                             : SmallTransform::linear_of(std::move(gen));
}

SmallTransform attenuation_of(const Operator& B, Exactness exactness) {
  require_hermitian(B, "attenuation_of");
  return exactness == Exactness::exponential ? SmallTransform::exponential_of(B)
                                             : SmallTransform::linear_of(B);
}

Ket DilationResult::embed(const Ket& v) const {
  if (v.dim() != target_dim) throw DimensionMismatch("DilationResult::embed: wrong dimension");
  Vector out = Vector::Zero(total_dim);
  out.head(target_dim) = v.amplitudes();
  return Ket(std::move(out));
}

Ket DilationResult::project(const Ket& v) const {
  if (v.dim() != total_dim) throw DimensionMismatch("DilationResult::project: wrong dimension");
  return Ket(Vector(v.amplitudes().head(target_dim)));
}

DilationResult dilate_attenuation(const Operator& B, double theta) {
  require_hermitian(B, "dilate_attenuation");
  if (theta < 0.0) throw InvalidArgument("dilate_attenuation: theta must be >= 0");
  const int d = B.dim();
  Eigen::SelfAdjointEigenSolver<Matrix> es(B.entries());
  if (es.info() != Eigen::Success)
    throw Error("dilate_attenuation: eigendecomposition failed");
  const auto& evals = es.eigenvalues();
  if (evals.maxCoeff() > kStructuralTol)
    throw InvalidArgument(
        "dilate_attenuation: positive eigenvalue present; amplification needs ancilla_coupling");

  std::vector<int> attenuated;
  for (int j = 0; j < d; ++j)
    if (evals(j) < -kStructuralTol) attenuated.push_back(j);
  const int dp = static_cast<int>(attenuated.size());
  const int total = d + dp;

  // Rotation in the (eigenmode, ancilla) plane with cos = e^(theta*lambda).
  Matrix u_eig = Matrix::Identity(total, total);
  for (int m = 0; m < dp; ++m) {
    const int j = attenuated[m];
    const double c = std::exp(theta * evals(j));
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    u_eig(j, j) = c;
    u_eig(j, d + m) = s;
    u_eig(d + m, j) = -s;
    u_eig(d + m, d + m) = c;
  }

  Matrix w = Matrix::Identity(total, total);
  w.topLeftCorner(d, d) = es.eigenvectors();

  DilationResult result;
  result.target_dim = d;
  result.total_dim = total;
  result.unitary = Operator(Matrix(w * u_eig * w.adjoint()));
  return result;
}

AncillaCoupling ancilla_coupling(const Operator& A1, const Operator& A2,
                                 const Ket& phi_i, const Ket& phi_f, double theta) {
  require_hermitian(A1, "ancilla_coupling");
  require_hermitian(A2, "ancilla_coupling");
  if (A2.dim() != phi_i.dim() || A2.dim() != phi_f.dim())
    throw DimensionMismatch("ancilla_coupling: ancilla dimension mismatch");
  Complex prefactor = inner(phi_f, phi_i);
  if (std::abs(prefactor) <= kOrthogonalTol)
    throw OrthogonalSelection("ancilla_coupling: ancilla selection is orthogonal");

  // exp(i theta A1 x A2) block-diagonalizes over A2's eigenmodes:
  // <phi_f|...|phi_i> = sum_m <phi_f|m><m|phi_i> exp(i theta a_m A1).
  Eigen::SelfAdjointEigenSolver<Matrix> es(A2.entries());
  if (es.info() != Eigen::Success)
    throw Error("ancilla_coupling: eigendecomposition failed");
  const int d1 = A1.dim();
  Matrix eff = Matrix::Zero(d1, d1);
  for (int m = 0; m < A2.dim(); ++m) {
    Vector mode = es.eigenvectors().col(m);
    Complex coeff = phi_f.amplitudes().dot(mode) * mode.dot(phi_i.amplitudes());
    eff += coeff * matexp(A1, Complex(0, theta * es.eigenvalues()(m))).entries();
  }
  return AncillaCoupling{prefactor, Operator(Matrix(eff / prefactor))};
}

}  // namespace wvlab
