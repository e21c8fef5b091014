#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wvlab/transforms.hpp"
#include "wvlab/weakval.hpp"

namespace wvlab {

enum class DiffMethod { forward, symmetric };
enum class Part { re, im };

/// Default transformation strength for one-shot estimates.
inline constexpr double kDefaultTheta = 1e-3;

struct ProbePoint {
  double theta = 0.0;
  double probability = 0.0;
  /// Set when probability exceeds 1; only non-unitary linear families can do
  /// this, and the value is kept rather than clipped.
  bool over_unity = false;
};

struct Estimate {
  double value = 0.0;
  double theta_used = 0.0;
  DiffMethod method = DiffMethod::forward;
  std::optional<Complex> analytic_ref;
};

/// Relative phases sampled by the interferometer, plus the transform placed
/// in its upper arm. Phase extraction needs at least 3 samples.
struct InterferometerConfig {
  std::vector<double> delta_samples;
  SmallTransform arm_transform;

  static InterferometerConfig with_default_grid(SmallTransform arm, int samples = 16);
};

/// Post-selection probability: |<f|N(theta)|i>|^2 for pure selections,
/// tr[rho_f N(theta) rho_i N(theta)^dag] for mixed ones.
double post_selection_probability(const Selection& sel, const SmallTransform& T,
                                  double theta);

ProbePoint probe_point(const Selection& sel, const SmallTransform& T, double theta);

/// P(f|i,theta) / P(f|i,0); requires a nonvanishing baseline.
double probability_ratio(const Selection& sel, const SmallTransform& T, double theta);

/// Amplitude-level sensitivity ratio: <f|N(theta)|i>/<f|i> for pure
/// selections and tr[rho_f N(theta) rho_i]/tr(rho_f rho_i) for mixed ones.
/// Expands as 1 + <C>_w theta + O(theta^2).
Complex amplitude_ratio(const Selection& sel, const SmallTransform& T, double theta);

/// (ratio(theta) - 1) / (2 theta): Re<C>_w with O(theta) bias.
Estimate estimate_re_forward(const Selection& sel, const SmallTransform& T, double theta);

/// (ratio(theta) - ratio(-theta)) / (4 theta): Re<C>_w with O(theta^2) bias.
Estimate estimate_re_symmetric(const Selection& sel, const SmallTransform& T, double theta);

/// Detection probability of the interferometer at relative phase delta with
/// the arm transform at strength theta.
double fringe_probability(const Selection& sel, const InterferometerConfig& cfg,
                          double theta, double delta);

/// Phase of the first discrete Fourier coefficient of (delta, probability)
/// samples; exact for the single-harmonic fringe model on equally spaced
/// grids. Throws NoFringe for constant samples.
double fit_fringe_phase(const std::vector<std::pair<double, double>>& samples);

/// Im<C>_w from the fringe-phase shift; bias O(theta) forward,
/// O(theta^2) symmetric.
Estimate estimate_im(const Selection& sel, const InterferometerConfig& cfg,
                     double theta, DiffMethod method = DiffMethod::symmetric);

/// Pre-selection-only estimators: part re targets Re<i|C|i> through the norm
/// ratio of N(theta)|i>, part im targets Im<i|C|i> through the relative
/// phase arg<i|N(theta)|i>.
Estimate estimate_expectation_pre_only(const Ket& i, const SmallTransform& T,
                                       double theta, Part part,
                                       DiffMethod method = DiffMethod::symmetric);

/// Maps a phase difference into (-pi, pi] (nearest branch).
double wrap_phase(double phase);

}  // namespace wvlab
