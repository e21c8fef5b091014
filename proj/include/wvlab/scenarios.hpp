#pragma once

#include <array>
#include <vector>

#include "wvlab/estimator.hpp"

namespace wvlab {

inline constexpr int kPathA = 0;
inline constexpr int kPathB = 1;
inline constexpr int kPathC = 2;

/// (|A> + |B> + |C>)/sqrt(3).
Ket three_box_pre();
/// (|A> + |B> - |C>)/sqrt(3).
Ket three_box_post();
Selection three_box_selection();

/// cos(chi/2)|0> + sin(chi/2)|1>.
Ket spin_pre(double chi);
/// cos(chi/2)|0> - sin(chi/2)|1>.
Ket spin_post(double chi);
Selection spin_selection(double chi);

/// Classical pre- and post-selected three-path system with a probabilistic
/// shutter (transmission e^(-2 theta)) on one path.
struct ClassicalThreeBox {
  std::array<double, 3> p_pre{};   // preparation probabilities, sum to 1
  std::array<double, 3> p_post{};  // detection probabilities, each in [0, 1]
  int shutter_path = kPathA;
  double theta = 0.0;  // >= 0
};

/// P(f|i,k,theta) = P(f|i) - (1 - e^(-2 theta)) p_pre[k] p_post[k].
double classical_detection(const ClassicalThreeBox& sc);

/// Slope of the normalized detection probability at theta = 0:
/// -2 p_pre[k] p_post[k] / P(f|i).
double classical_slope(const ClassicalThreeBox& sc);

/// Slope -2 |<k|i>|^2 of the pre-selected-only detection probability under
/// an attenuator on basis path k.
double quantum_pre_only_slope(const Ket& i, int path);

/// Slope -2 Re<|k><k|>_w of the normalized detection probability under an
/// attenuator on basis path k.
double weak_probability_slope(const Selection& sel, int path);

/// Spin-1/2 system in a z-directed field; the evolution strength theta
/// absorbs gyromagnetic ratio, field, and time.
struct SpinScenario {
  double chi = 0.0;  // Bloch polar angle in [0, pi]
  std::vector<double> theta_sweep;

  /// chi = pi/2 - detuning; small detuning makes the selection nearly
  /// orthogonal and the weak value huge.
  static SpinScenario from_detuning(double detuning, std::vector<double> theta_sweep);
};

struct PhasePoint {
  double theta;
  double phase;
};

struct SpinPhaseCurves {
  std::vector<PhasePoint> pre_only;       // arg <i|U(theta)|i>
  std::vector<PhasePoint> post_selected;  // arg(<f|U(theta)|i> / <f|i>)
};

SpinPhaseCurves spin_phase_curves(const SpinScenario& sc);

/// Analytic slopes of the two spin phase curves at theta = 0.
double spin_pre_only_phase_slope(double chi);
double spin_post_selected_phase_slope(double chi);

struct WvaScenarioResult {
  double ratio;          // exact composite probability ratio at theta
  double amplification;  // 2 Re(i <A1>_w <A2>_w)
};

/// Composite-system response under exp(i theta A1 x A2) with product
/// pre/post-selections.
WvaScenarioResult wva_scenario(const Operator& A1, const Operator& A2,
                               const Ket& i1, const Ket& f1,
                               const Ket& phi_i, const Ket& phi_f, double theta);

}  // namespace wvlab
