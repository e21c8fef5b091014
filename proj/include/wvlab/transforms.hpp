#pragma once

#include <functional>

#include "wvlab/qcore.hpp"

namespace wvlab {

enum class Exactness { exponential, linear };

/// A theta-parameterized family N(theta) with N(0) = identity and generator
/// C = dN/dtheta at 0. Exponential families evaluate exp(theta*C); linear
/// families evaluate 1 + theta*C exactly; table families wrap an arbitrary
/// closed form whose generator is verified at construction by central
/// difference.
class SmallTransform {
 public:
  enum class Family { exponential, linear, table };

  /// Documented evaluation envelope: |theta| beyond this is allowed but the
  /// first-order picture no longer applies; see exceeds_envelope().
  static constexpr double kThetaEnvelope = 1.0;

  static SmallTransform exponential_of(Operator generator);
  static SmallTransform linear_of(Operator generator);
  static SmallTransform table_of(std::function<Operator(double)> family,
                                 Operator generator);

  Operator evaluate(double theta) const;
  const Operator& generator() const { return gen_; }
  Family family() const { return family_; }
  int dim() const { return gen_.dim(); }
  static bool exceeds_envelope(double theta) {
    return std::abs(theta) > kThetaEnvelope;
  }

 private:
  SmallTransform(Family family, Operator gen,
                 std::function<Operator(double)> table);
  Family family_;
  Operator gen_;
  std::function<Operator(double)> table_;
};

/// Unitary family with generator i*A for Hermitian A. The exponential
/// variant is exactly unitary for all theta; the linear variant 1 + i*theta*A
/// is not, and is deliberately permitted.
SmallTransform unitary_of(const Operator& A, Exactness exactness);

/// Amplification/attenuation family with Hermitian generator B.
SmallTransform attenuation_of(const Operator& B, Exactness exactness);

/// Unitary on a dilated space realizing exp(theta*B) on the target space:
/// project(unitary * embed(v)) == exp(theta*B) v exactly. One ancilla level
/// per strictly negative eigenvalue of B.
struct DilationResult {
  int target_dim = 0;
  int total_dim = 0;
  Operator unitary{Matrix::Identity(1, 1)};

  /// Appends zero ancilla amplitudes.
  Ket embed(const Ket& v) const;
  /// Truncates to the first target_dim components.
  Ket project(const Ket& v) const;
};

/// B must be Hermitian with eigenvalues <= 0 and theta >= 0. Each eigenmode
/// with eigenvalue -b is coupled to its own ancilla level by a two-level
/// rotation with cosine e^(-theta*b).
DilationResult dilate_attenuation(const Operator& B, double theta);

struct AncillaCoupling {
  Complex prefactor;   // <phi_f|phi_i>
  Operator effective;  // <phi_f|exp(i theta A1 x A2)|phi_i> / <phi_f|phi_i>
};

/// Effective small transformation on system 1 induced by a von Neumann
/// coupling exp(i theta A1 x A2) with the ancilla pre/post-selected in
/// phi_i/phi_f. Evaluated exactly through the spectral decomposition of A2;
/// equals 1 + i theta <A2>_w A1 + O(theta^2).
AncillaCoupling ancilla_coupling(const Operator& A1, const Operator& A2,
                                 const Ket& phi_i, const Ket& phi_f,
                                 double theta);

}  // namespace wvlab
