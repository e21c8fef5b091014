#include "wvlab/sampling.hpp"

#include <cmath>
#include <random>

namespace wvlab {

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over seed ^ (index+1)*phi64.
  std::uint64_t z = seed ^ ((index + 1) * 0x9E3779B97F4A7C15ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

long long simulate_detections(double p, long long n, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidArgument("simulate_detections: p must lie in [0, 1]");
  if (n < 0) throw InvalidArgument("simulate_detections: n must be >= 0");
  if (p == 0.0) return 0;
  if (p == 1.0) return n;
  std::mt19937_64 gen(seed);
  std::binomial_distribution<long long> dist(n, p);
  return dist(gen);
}

ClassicalFisher classical_fisher_re(const Selection& sel, const SmallTransform& T,
                                    double theta) {
  Complex wv = sel.is_pure() ? weak_value(T.generator(), sel).value
                             : weak_value_mixed(T.generator(), sel).value;
  double p0 = sel.baseline_probability();
  double re = wv.real();
  double im = wv.imag();
  // Parametric model P(w) = p0 [(1 + w theta)^2 + (im theta)^2].
  double p = p0 * (std::pow(1.0 + re * theta, 2) + im * im * theta * theta);
  if (p <= 0.0 || p >= 1.0)
    throw InvalidArgument("classical_fisher_re: model probability is degenerate");
  double dp = p0 * 2.0 * theta * (1.0 + re * theta);
  double exact = dp * dp / (p * (1.0 - p));
  double leading = 4.0 * p0 * theta * theta / (1.0 - p0);
  return ClassicalFisher{exact, leading};
}

namespace {

// d/dtheta of the family operator, exact where the family allows it.
Matrix family_derivative(const SmallTransform& T, double theta) {
  switch (T.family()) {
    case SmallTransform::Family::exponential:
      return T.generator().entries() * T.evaluate(theta).entries();
    case SmallTransform::Family::linear:
      return T.generator().entries();
    case SmallTransform::Family::table: {
      const double h = 1e-6 * std::max(1.0, std::abs(theta));
      return (T.evaluate(theta + h).entries() - T.evaluate(theta - h).entries()) / (2.0 * h);
    }
  }
  throw Error("family_derivative: unknown family");
}

}  // namespace

double binary_fisher_theta(const Selection& sel, const SmallTransform& T, double theta) {
  double p = post_selection_probability(sel, T, theta);
  if (p <= 0.0 || p >= 1.0)
    throw InvalidArgument("binary_fisher_theta: probability is degenerate");
  double dp;
  Matrix nprime = family_derivative(T, theta);
  if (sel.is_pure()) {
    Complex g = inner(sel.post_ket(), apply(T.evaluate(theta), sel.pre_ket()));
    Complex gprime = sel.post_ket().amplitudes().dot(nprime * sel.pre_ket().amplitudes());
    dp = 2.0 * (std::conj(g) * gprime).real();
  } else {
    const Matrix rho_i = sel.pre_density().entries();
    const Matrix rho_f = sel.post_density().entries();
    Matrix n = T.evaluate(theta).entries();
    dp = 2.0 * (rho_f * nprime * rho_i * n.adjoint()).trace().real();
  }
  return dp * dp / (p * (1.0 - p));
}

double quantum_fisher_theta(const Ket& i, const Operator& C) {
  if (!i.is_normalized())
    throw InvalidArgument("quantum_fisher_theta: state must be normalized");
  Complex mean = expectation(C, i);
  Complex second = inner(apply(C, i), apply(C, i));
  return 4.0 * (second.real() - std::norm(mean));
}

Ket optimal_postselection(const Ket& i, const Operator& C) {
  if (!i.is_normalized())
    throw InvalidArgument("optimal_postselection: state must be normalized");
  if (!(Complex(0, 1) * C).is_hermitian())
    throw InvalidArgument("optimal_postselection: generator must be anti-Hermitian");
  Vector ci = C.entries() * i.amplitudes();
  Vector transverse = ci - i.amplitudes() * i.amplitudes().dot(ci);
  double norm = transverse.norm();
  if (norm <= 1e-12)
    throw InvalidArgument("optimal_postselection: C|i> is parallel to |i>; optimal f undefined");
  return Ket(Vector((i.amplitudes() + transverse / norm) / std::sqrt(2.0)));
}

FisherReport fisher_report(const Selection& sel, const SmallTransform& T,
                           double theta, long long n) {
  if (n < 1) throw InvalidArgument("fisher_report: n must be >= 1");
  FisherReport report;
  report.classical_F = binary_fisher_theta(sel, T, theta);
  const Ket& pre = sel.pre_ket();
  report.quantum_FQ = quantum_fisher_theta(pre, T.generator());
  report.cr_bound = 1.0 / std::sqrt(static_cast<double>(n) * report.classical_F);
  report.leading_order_F = classical_fisher_re(sel, T, theta).leading_order;
  report.trials = n;
  if ((Complex(0, 1) * T.generator()).is_hermitian() &&
      report.classical_F > report.quantum_FQ + 1e-8)
    throw Error("fisher_report: classical Fisher exceeds the quantum bound");
  return report;
}

WvaEstimate wva_estimate_theta(const Selection& sel1, const Selection& sel2,
                               const Operator& A1, const Operator& A2,
                               long long counts_theta, long long counts_zero,
                               long long n) {
  Complex w1 = weak_value(A1, sel1).value;
  Complex w2 = weak_value(A2, sel2).value;
  double amplification = 2.0 * (Complex(0, 1) * w1 * w2).real();
  if (std::abs(amplification) <= 1e-12)
    throw InvalidArgument("wva_estimate_theta: amplification factor vanishes");
  if (counts_zero <= 0)
    throw InvalidArgument("wva_estimate_theta: zero baseline counts");
  double ratio = static_cast<double>(counts_theta) / static_cast<double>(counts_zero);
  double theta_hat = (ratio - 1.0) / amplification;
  // Binomial error propagation through the count ratio.
  double pt = static_cast<double>(counts_theta) / static_cast<double>(n);
  double p0 = static_cast<double>(counts_zero) / static_cast<double>(n);
  double var_ratio = 0.0;
  if (counts_theta > 0)
    var_ratio += ratio * ratio * (1.0 - pt) / (static_cast<double>(n) * pt);
  var_ratio += ratio * ratio * (1.0 - p0) / (static_cast<double>(n) * p0);
  return WvaEstimate{theta_hat, std::sqrt(var_ratio) / std::abs(amplification),
                     amplification};
}

double empirical_mse(const TrialPlan& plan, const EstimatorSpec& spec, int replicas) {
  if (plan.n < 1) throw InvalidArgument("empirical_mse: plan.n must be >= 1");
  if (replicas < 1) throw InvalidArgument("empirical_mse: replicas must be >= 1");
  Complex wv = spec.sel.is_pure() ? weak_value(spec.T.generator(), spec.sel).value
                                  : weak_value_mixed(spec.T.generator(), spec.sel).value;
  double target = wv.real();
  double p_plus = post_selection_probability(spec.sel, spec.T, spec.theta);
  double p_zero = spec.sel.baseline_probability();
  double p_minus = spec.method == DiffMethod::symmetric
                       ? post_selection_probability(spec.sel, spec.T, -spec.theta)
                       : 0.0;
  if (spec.exact_probabilities) {
    double est = spec.method == DiffMethod::forward
                     ? (p_plus / p_zero - 1.0) / (2.0 * spec.theta)
                     : (p_plus - p_minus) / p_zero / (4.0 * spec.theta);
    return (est - target) * (est - target);
  }
  double sum_sq = 0.0;
  int used = 0;
  for (int r = 0; r < replicas; ++r) {
    long long c_zero = simulate_detections(p_zero, plan.n, derive_stream(plan.seed, 3 * r));
    if (c_zero == 0) continue;  // degenerate replica; cannot form the ratio
    long long c_plus = simulate_detections(p_plus, plan.n, derive_stream(plan.seed, 3 * r + 1));
    double est;
    if (spec.method == DiffMethod::forward) {
      est = (static_cast<double>(c_plus) / c_zero - 1.0) / (2.0 * spec.theta);
    } else {
      long long c_minus =
          simulate_detections(p_minus, plan.n, derive_stream(plan.seed, 3 * r + 2));
      est = static_cast<double>(c_plus - c_minus) / c_zero / (4.0 * spec.theta);
    }
    sum_sq += (est - target) * (est - target);
    ++used;
  }
  if (used == 0) throw Error("empirical_mse: all replicas had zero baseline counts");
  return sum_sq / used;
}

}  // namespace wvlab
