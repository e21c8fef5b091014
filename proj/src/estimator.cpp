#include "wvlab/estimator.hpp"

#include <cmath>
#include <numbers>

namespace wvlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_nonzero_theta(double theta, const char* what) {
  if (theta == 0.0) throw InvalidArgument(std::string(what) + ": theta must be nonzero");
}

}  // namespace

InterferometerConfig InterferometerConfig::with_default_grid(SmallTransform arm,
                                                             int samples) {
  if (samples < 3)
    throw InvalidArgument("InterferometerConfig: phase extraction needs >= 3 samples");
  std::vector<double> deltas(samples);
  for (int k = 0; k < samples; ++k) deltas[k] = kTwoPi * k / samples;
  return InterferometerConfig{std::move(deltas), std::move(arm)};
}

double post_selection_probability(const Selection& sel, const SmallTransform& T,
                                  double theta) {
  if (T.dim() != sel.dim())
    throw DimensionMismatch("post_selection_probability: dimension mismatch");
  Operator n = T.evaluate(theta);
  if (sel.is_pure()) {
    Complex amp = inner(sel.post_ket(), apply(n, sel.pre_ket()));
    return std::norm(amp);
  }
  const Matrix rho_i = sel.pre_density().entries();
  const Matrix rho_f = sel.post_density().entries();
  return (rho_f * n.entries() * rho_i * n.entries().adjoint()).trace().real();
}

ProbePoint probe_point(const Selection& sel, const SmallTransform& T, double theta) {
  double p = post_selection_probability(sel, T, theta);
  return ProbePoint{theta, p, p > 1.0};
}

double probability_ratio(const Selection& sel, const SmallTransform& T, double theta) {
  double baseline = sel.baseline_probability();
  if (baseline <= 1e-24)
    throw OrthogonalSelection("probability_ratio: baseline probability vanishes");
  return post_selection_probability(sel, T, theta) / baseline;
}

Complex amplitude_ratio(const Selection& sel, const SmallTransform& T, double theta) {
  if (T.dim() != sel.dim()) throw DimensionMismatch("amplitude_ratio: dimension mismatch");
  if (std::abs(sel.overlap()) <= kOrthogonalTol)
    throw OrthogonalSelection("amplitude_ratio: selection is orthogonal");
  Operator n = T.evaluate(theta);
  if (sel.is_pure())
    return inner(sel.post_ket(), apply(n, sel.pre_ket())) / sel.overlap();
  const Matrix rho_i = sel.pre_density().entries();
  const Matrix rho_f = sel.post_density().entries();
  return (rho_f * n.entries() * rho_i).trace() / sel.overlap();
}

Estimate estimate_re_forward(const Selection& sel, const SmallTransform& T, double theta) {
  require_nonzero_theta(theta, "estimate_re_forward");
  double value = (probability_ratio(sel, T, theta) - 1.0) / (2.0 * theta);
  return Estimate{value, theta, DiffMethod::forward, std::nullopt};
}

Estimate estimate_re_symmetric(const Selection& sel, const SmallTransform& T, double theta) {
  require_nonzero_theta(theta, "estimate_re_symmetric");
  double value =
      (probability_ratio(sel, T, theta) - probability_ratio(sel, T, -theta)) / (4.0 * theta);
  return Estimate{value, theta, DiffMethod::symmetric, std::nullopt};
}

double fringe_probability(const Selection& sel, const InterferometerConfig& cfg,
                          double theta, double delta) {
  // The DC part carries the full probability ratio; the harmonic carries the
  // amplitude-level ratio. For pure selections both reduce to the same r.
  double baseline = sel.baseline_probability();
  double dc = probability_ratio(sel, cfg.arm_transform, theta);
  Complex q = amplitude_ratio(sel, cfg.arm_transform, theta);
  return baseline / 4.0 *
         (dc + 1.0 + 2.0 * std::abs(q) * std::cos(delta - std::arg(q)));
}

double fit_fringe_phase(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3)
    throw InvalidArgument("fit_fringe_phase: need at least 3 samples");
  for (size_t j = 1; j < samples.size(); ++j)
    for (size_t k = 0; k < j; ++k)
      if (samples[j].first == samples[k].first)
        throw InvalidArgument("fit_fringe_phase: delta values must be distinct");
  Complex c1 = 0.0;
  double scale = 0.0;
  for (const auto& [delta, p] : samples) {
    c1 += p * std::polar(1.0, delta);
    scale += std::abs(p);
  }
  if (std::abs(c1) <= 1e-12 * std::max(1.0, scale))
    throw NoFringe("fit_fringe_phase: samples carry no first harmonic");
  return std::arg(c1);
}

namespace {

double fringe_phase_at(const Selection& sel, const InterferometerConfig& cfg, double theta) {
  if (cfg.delta_samples.size() < 3)
    throw InvalidArgument("estimate_im: config needs >= 3 phase samples");
  std::vector<std::pair<double, double>> samples;
  samples.reserve(cfg.delta_samples.size());
  for (double delta : cfg.delta_samples)
    samples.emplace_back(delta, fringe_probability(sel, cfg, theta, delta));
  return fit_fringe_phase(samples);
}

}  // namespace

double wrap_phase(double phase) {
  double w = std::remainder(phase, kTwoPi);
  if (w <= -std::numbers::pi) w += kTwoPi;
  return w;
}

Estimate estimate_im(const Selection& sel, const InterferometerConfig& cfg,
                     double theta, DiffMethod method) {
  require_nonzero_theta(theta, "estimate_im");
  double phase_plus = fringe_phase_at(sel, cfg, theta);
  double value;
  if (method == DiffMethod::forward) {
    double phase_zero = fringe_phase_at(sel, cfg, 0.0);
    value = wrap_phase(phase_plus - phase_zero) / theta;
  } else {
    double phase_minus = fringe_phase_at(sel, cfg, -theta);
    value = wrap_phase(phase_plus - phase_minus) / (2.0 * theta);
  }
  return Estimate{value, theta, method, std::nullopt};
}

Estimate estimate_expectation_pre_only(const Ket& i, const SmallTransform& T,
                                       double theta, Part part, DiffMethod method) {
  require_nonzero_theta(theta, "estimate_expectation_pre_only");
  if (!i.is_normalized())
    throw InvalidArgument("estimate_expectation_pre_only: state must be normalized");
  if (T.dim() != i.dim())
    throw DimensionMismatch("estimate_expectation_pre_only: dimension mismatch");

  auto norm_at = [&](double t) { return apply(T.evaluate(t), i).norm(); };
  auto phase_at = [&](double t) { return std::arg(inner(i, apply(T.evaluate(t), i))); };

  double value;
  if (part == Part::re) {
    value = (method == DiffMethod::forward)
                ? (norm_at(theta) - 1.0) / theta
                : (norm_at(theta) - norm_at(-theta)) / (2.0 * theta);
  } else {
    value = (method == DiffMethod::forward)
                ? wrap_phase(phase_at(theta)) / theta
                : wrap_phase(phase_at(theta) - phase_at(-theta)) / (2.0 * theta);
  }
  return Estimate{value, theta, method, std::nullopt};
}

}  // namespace wvlab
