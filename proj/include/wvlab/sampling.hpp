#pragma once

#include <cstdint>
#include <vector>

#include "wvlab/estimator.hpp"

namespace wvlab {

/// Trial budget for Monte-Carlo runs. Replica streams are derived from the
/// base seed with derive_stream.
struct TrialPlan {
  long long n = 1;
  std::uint64_t seed = 0;
  std::vector<double> theta_points;
};

/// Splittable stream derivation: splitmix64 applied to
/// seed XOR (index+1)*golden-ratio. Identical (seed, index) pairs always
/// yield the same stream.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);

/// Binomially distributed detection count for n trials at probability p,
/// deterministic for a fixed seed.
long long simulate_detections(double p, long long n, std::uint64_t seed);

struct ClassicalFisher {
  /// F = (dP/dRe<C>_w)^2 / [P(1-P)] on the second-order probability model
  /// P = |<f|i>|^2 |1 + <C>_w theta|^2.
  double exact = 0.0;
  /// 4|<f|i>|^2 theta^2 / (1 - |<f|i>|^2).
  double leading_order = 0.0;
};

/// Fisher information of the binary detection distribution for estimating
/// Re<C>_w at known theta.
ClassicalFisher classical_fisher_re(const Selection& sel, const SmallTransform& T,
                                    double theta);

/// Fisher information of the binary detection distribution for estimating
/// theta itself, from the exact probability P(f|i,theta).
double binary_fisher_theta(const Selection& sel, const SmallTransform& T, double theta);

/// Quantum Fisher information of the family N(theta)|i> for estimating theta,
/// at theta -> 0: 4(<C^dag C> - |<C>|^2).
double quantum_fisher_theta(const Ket& i, const Operator& C);

/// Post-selection saturating the quantum Cramer-Rao bound for anti-Hermitian
/// C: (|i> + orthogonal component of C|i>, normalized)/sqrt(2).
Ket optimal_postselection(const Ket& i, const Operator& C);

struct FisherReport {
  double classical_F = 0.0;      // binary Fisher for theta
  double quantum_FQ = 0.0;       // 4(<C^dag C> - |<C>|^2)
  double cr_bound = 0.0;         // 1/sqrt(n * classical_F)
  double leading_order_F = 0.0;  // closed form for the Re<C>_w task
  long long trials = 0;
};

/// Bundles the Fisher quantities at one (selection, transform, theta, n).
/// For anti-Hermitian generators the constructor enforces
/// classical_F <= quantum_FQ + 1e-8.
FisherReport fisher_report(const Selection& sel, const SmallTransform& T,
                           double theta, long long n);

struct WvaEstimate {
  double theta_hat = 0.0;
  double std_error = 0.0;
  /// 2 Re(i <A1>_w <A2>_w): slope of the probability ratio in theta.
  double amplification = 0.0;
};

/// Inverts the composite-system probability-ratio response to estimate the
/// coupling theta from detection counts at theta and at 0 (n trials each).
WvaEstimate wva_estimate_theta(const Selection& sel1, const Selection& sel2,
                               const Operator& A1, const Operator& A2,
                               long long counts_theta, long long counts_zero,
                               long long n);

struct EstimatorSpec {
  Selection sel;
  SmallTransform T;
  double theta = kDefaultTheta;
  DiffMethod method = DiffMethod::symmetric;
  /// When set, counts are replaced by exact probabilities (infinite-n proxy),
  /// so the result is the squared bias.
  bool exact_probabilities = false;
};

/// Mean squared error of the probability-ratio Re estimator against the
/// analytic weak value, over seeded replicas.
double empirical_mse(const TrialPlan& plan, const EstimatorSpec& spec,
                     int replicas = 100);

}  // namespace wvlab
