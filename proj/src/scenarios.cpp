#include "wvlab/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace wvlab {

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

void validate_classical(const ClassicalThreeBox& sc) {
  double sum = 0.0;
  for (double p : sc.p_pre) {
    if (p < 0.0 || p > 1.0) throw InvalidArgument("ClassicalThreeBox: p_pre out of range");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidArgument("ClassicalThreeBox: p_pre must sum to 1");
  for (double p : sc.p_post)
    if (p < 0.0 || p > 1.0) throw InvalidArgument("ClassicalThreeBox: p_post out of range");
  if (sc.shutter_path < 0 || sc.shutter_path > 2)
    throw InvalidArgument("ClassicalThreeBox: shutter path out of range");
  if (sc.theta < 0.0) throw InvalidArgument("ClassicalThreeBox: theta must be >= 0");
}

double classical_baseline(const ClassicalThreeBox& sc) {
  return sc.p_pre[0] * sc.p_post[0] + sc.p_pre[1] * sc.p_post[1] + sc.p_pre[2] * sc.p_post[2];
}

void check_path(int path, int dim) {
  if (path < 0 || path >= dim) throw InvalidArgument("path index out of range");
}

}  // namespace

Ket three_box_pre() { return Ket{kInvSqrt3, kInvSqrt3, kInvSqrt3}; }

Ket three_box_post() { return Ket{kInvSqrt3, kInvSqrt3, -kInvSqrt3}; }

Selection three_box_selection() {
  return Selection::pure(three_box_pre(), three_box_post());
}

Ket spin_pre(double chi) { return Ket{std::cos(chi / 2.0), std::sin(chi / 2.0)}; }

Ket spin_post(double chi) { return Ket{std::cos(chi / 2.0), -std::sin(chi / 2.0)}; }

Selection spin_selection(double chi) {
  return Selection::pure(spin_pre(chi), spin_post(chi));
}

double classical_detection(const ClassicalThreeBox& sc) {
  validate_classical(sc);
  return classical_baseline(sc) -
         (1.0 - std::exp(-2.0 * sc.theta)) * sc.p_pre[sc.shutter_path] * sc.p_post[sc.shutter_path];
}

double classical_slope(const ClassicalThreeBox& sc) {
  validate_classical(sc);
  double baseline = classical_baseline(sc);
  if (baseline <= 0.0) throw InvalidArgument("classical_slope: zero baseline probability");
  return -2.0 * sc.p_pre[sc.shutter_path] * sc.p_post[sc.shutter_path] / baseline;
}

double quantum_pre_only_slope(const Ket& i, int path) {
  if (!i.is_normalized()) throw InvalidArgument("quantum_pre_only_slope: unnormalized state");
  check_path(path, i.dim());
  return -2.0 * std::norm(i[path]);
}

double weak_probability_slope(const Selection& sel, int path) {
  check_path(path, sel.dim());
  Operator proj = Operator::projector(Ket::basis(sel.dim(), path));
  Complex wv = sel.is_pure() ? weak_value(proj, sel).value : weak_value_mixed(proj, sel).value;
  return -2.0 * wv.real();
}

SpinScenario SpinScenario::from_detuning(double detuning, std::vector<double> theta_sweep) {
  return SpinScenario{std::numbers::pi / 2.0 - detuning, std::move(theta_sweep)};
}

SpinPhaseCurves spin_phase_curves(const SpinScenario& sc) {
  if (sc.chi < 0.0 || sc.chi > std::numbers::pi)
    throw InvalidArgument("SpinScenario: chi must lie in [0, pi]");
  Ket i = spin_pre(sc.chi);
  Ket f = spin_post(sc.chi);
  Complex overlap = inner(f, i);
  if (std::abs(overlap) <= kOrthogonalTol)
    throw OrthogonalSelection("spin_phase_curves: cos(chi) = 0 makes the selection orthogonal");
  SmallTransform evolution = unitary_of(Operator::spin_z(), Exactness::exponential);

  SpinPhaseCurves curves;
  curves.pre_only.reserve(sc.theta_sweep.size());
  curves.post_selected.reserve(sc.theta_sweep.size());
  for (double theta : sc.theta_sweep) {
    Operator u = evolution.evaluate(theta);
    curves.pre_only.push_back({theta, std::arg(inner(i, apply(u, i)))});
    curves.post_selected.push_back({theta, std::arg(inner(f, apply(u, i)) / overlap)});
  }
  return curves;
}

double spin_pre_only_phase_slope(double chi) { return std::cos(chi) / 2.0; }

double spin_post_selected_phase_slope(double chi) {
  double c = std::cos(chi);
  if (std::abs(c) <= kOrthogonalTol)
    throw OrthogonalSelection("spin_post_selected_phase_slope: cos(chi) = 0");
  return 1.0 / (2.0 * c);
}

WvaScenarioResult wva_scenario(const Operator& A1, const Operator& A2,
                               const Ket& i1, const Ket& f1,
                               const Ket& phi_i, const Ket& phi_f, double theta) {
  Selection sel1 = Selection::pure(i1, f1);
  Selection sel2 = Selection::pure(phi_i, phi_f);
  Complex w1 = weak_value(A1, sel1).value;
  Complex w2 = weak_value(A2, sel2).value;

  Selection composite = Selection::pure(kron(i1, phi_i), kron(f1, phi_f));
  SmallTransform coupling = unitary_of(kron(A1, A2), Exactness::exponential);
  double ratio = probability_ratio(composite, coupling, theta);
  double amplification = 2.0 * (Complex(0, 1) * w1 * w2).real();
  return WvaScenarioResult{ratio, amplification};
}

}  // namespace wvlab
