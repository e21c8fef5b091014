#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wvlab/qcore.hpp"

namespace wvlab {

struct WeakValue {
  Complex value;
  std::string generator_label;
};

/// A pre/post-selection pair. Either side may be a pure ket or a density
/// matrix; the stored overlap is <f|i> for pure pairs and tr(rho_f rho_i)
/// otherwise. Orthogonality (|overlap| <= 1e-12) is checked where weak
/// values are computed, not at construction.
class Selection {
 public:
  static Selection pure(Ket pre, Ket post);
  static Selection mixed(DensityMatrix pre, DensityMatrix post);
  static Selection mixed(Ket pre, DensityMatrix post);
  static Selection mixed(DensityMatrix pre, Ket post);

  bool is_pure() const { return pre_ket_.has_value() && post_ket_.has_value(); }
  int dim() const;

  const Ket& pre_ket() const;
  const Ket& post_ket() const;
  DensityMatrix pre_density() const;
  DensityMatrix post_density() const;

  Complex overlap() const { return overlap_; }
  /// |<f|i>|^2 for pure pairs, tr(rho_f rho_i) otherwise: the baseline
  /// post-selection probability.
  double baseline_probability() const;

 private:
  Selection() = default;
  std::optional<Ket> pre_ket_, post_ket_;
  std::optional<DensityMatrix> pre_rho_, post_rho_;
  Complex overlap_{};
};

/// <f|C|i>/<f|i>. Accepts any finite C; throws OrthogonalSelection when the
/// overlap modulus is at or below 1e-12.
WeakValue weak_value(const Operator& C, const Selection& sel,
                     const std::string& label = "");

/// tr(rho_f C rho_i)/tr(rho_f rho_i); pure inputs are promoted.
WeakValue weak_value_mixed(const Operator& C, const Selection& sel,
                           const std::string& label = "");

/// <i|C|i> for normalized i.
Complex expectation(const Operator& C, const Ket& i);

/// Weak values of the projectors onto an orthonormal basis ("weak
/// probabilities"). Their sum is 1 for any complete basis.
std::vector<WeakValue> weak_probability_profile(const std::vector<Ket>& basis,
                                                const Selection& sel);

}  // namespace wvlab
