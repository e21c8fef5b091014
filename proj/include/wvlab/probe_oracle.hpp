#pragma once

#include <optional>
#include <vector>

#include "wvlab/weakval.hpp"

namespace wvlab {

struct ProbeGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  int num_points = 0;
};

/// Gaussian pointer phi(x) = pi^(-1/4) sigma^(-1/2) exp(-x^2 / (2 sigma^2)).
/// When no grid is given, distributions use
/// [-10 sigma + theta*lambda_min, 10 sigma + theta*lambda_max], 4096 points.
struct GaussianProbe {
  double sigma = 1.0;
  std::optional<ProbeGrid> grid;
};

struct PointerDistribution {
  std::vector<double> x;
  std::vector<double> density;  // normalized on the grid
  /// Integral before normalization. For the exact distribution this is the
  /// post-selection probability.
  double normalization = 0.0;
  /// Mass removed where the truncated expansion dipped negative (expanded
  /// distributions only).
  double clipped_mass = 0.0;
};

/// Exact pointer distribution after post-selection, computed through the
/// spectral decomposition of A as a finite sum of shifted Gaussians; no
/// small-theta truncation.
PointerDistribution pointer_distribution_exact(const Ket& i, const Ket& f,
                                               const Operator& A, double theta,
                                               const GaussianProbe& probe);

/// Second-order expansion of the pointer distribution in theta/sigma,
/// clipped at zero where the truncation goes negative. Requires
/// theta*||A|| <= sigma/10.
PointerDistribution pointer_distribution_expanded(const Ket& i, const Ket& f,
                                                  const Operator& A, double theta,
                                                  const GaussianProbe& probe);

/// Trapezoid-rule mean of the distribution.
double mean_pointer_shift(const PointerDistribution& dist);

struct GaussianFisher {
  /// Per-source-trial Fisher information for Re<A>_w, numerically integrated
  /// over the expanded parametric family weighted by the post-selection
  /// probability.
  double numeric = 0.0;
  /// |<f|i>|^2 (theta/sigma)^2.
  double leading_order = 0.0;
};

GaussianFisher fisher_gaussian(const Ket& i, const Ket& f, const Operator& A,
                               double theta, const GaussianProbe& probe);

}  // namespace wvlab
