#include "wvlab/probe_oracle.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace wvlab {

namespace {

struct EvalGrid {
  std::vector<double> x;
  double dx;
};

double spectral_radius(const Eigen::VectorXd& evals) {
  return std::max(std::abs(evals.minCoeff()), std::abs(evals.maxCoeff()));
}

EvalGrid make_grid(const GaussianProbe& probe, double theta,
                   const Eigen::VectorXd& evals) {
  double lo, hi;
  int n;
  if (probe.grid) {
    lo = probe.grid->x_min;
    hi = probe.grid->x_max;
    n = probe.grid->num_points;
    if (n < 2048) throw InvalidArgument("GaussianProbe: grid needs >= 2048 points");
    double need_lo = std::min(0.0, theta * evals.minCoeff()) - 8.0 * probe.sigma;
    double need_hi = std::max(0.0, theta * evals.maxCoeff()) + 8.0 * probe.sigma;
    if (lo > need_lo || hi < need_hi)
      throw InvalidArgument("GaussianProbe: grid does not span 8 sigma around the shifted pointer");
  } else {
    lo = -10.0 * probe.sigma + theta * evals.minCoeff();
    hi = 10.0 * probe.sigma + theta * evals.maxCoeff();
    n = 4096;
  }
  EvalGrid g;
  g.x.resize(n);
  g.dx = (hi - lo) / (n - 1);
  for (int k = 0; k < n; ++k) g.x[k] = lo + k * g.dx;
  return g;
}

double trapezoid(const std::vector<double>& f, double dx) {
  double sum = 0.0;
  for (size_t k = 0; k + 1 < f.size(); ++k) sum += 0.5 * (f[k] + f[k + 1]);
  return sum * dx;
}

double pointer_amp(double x, double sigma) {
  return std::exp(-x * x / (2.0 * sigma * sigma)) /
         (std::pow(std::numbers::pi, 0.25) * std::sqrt(sigma));
}

void validate_probe(const GaussianProbe& probe) {
  if (!(probe.sigma > 0.0)) throw InvalidArgument("GaussianProbe: sigma must be positive");
}

void validate_selection(const Ket& i, const Ket& f, const Operator& A) {
  if (A.dim() != i.dim() || A.dim() != f.dim())
    throw DimensionMismatch("pointer distribution: dimension mismatch");
  if (!A.is_hermitian())
    throw InvalidArgument("pointer distribution: observable must be Hermitian");
  if (std::abs(inner(f, i)) <= kOrthogonalTol)
    throw OrthogonalSelection("pointer distribution: post-selection never fires");
}

}  // namespace

PointerDistribution pointer_distribution_exact(const Ket& i, const Ket& f,
                                               const Operator& A, double theta,
                                               const GaussianProbe& probe) {
  validate_probe(probe);
  validate_selection(i, f, A);
  Eigen::SelfAdjointEigenSolver<Matrix> es(A.entries());
  if (es.info() != Eigen::Success)
    throw Error("pointer_distribution_exact: eigendecomposition failed");
  EvalGrid grid = make_grid(probe, theta, es.eigenvalues());

  std::vector<Complex> coeff(A.dim());
  for (int a = 0; a < A.dim(); ++a) {
    Vector mode = es.eigenvectors().col(a);
    coeff[a] = f.amplitudes().dot(mode) * mode.dot(i.amplitudes());
  }

  std::vector<double> q(grid.x.size());
  for (size_t k = 0; k < grid.x.size(); ++k) {
    Complex amp = 0.0;
    for (int a = 0; a < A.dim(); ++a)
      amp += coeff[a] * pointer_amp(grid.x[k] - theta * es.eigenvalues()(a), probe.sigma);
    q[k] = std::norm(amp);
  }

  double total = trapezoid(q, grid.dx);
  if (total <= 0.0) throw Error("pointer_distribution_exact: zero total mass");
  if ((q.front() + q.back()) * grid.dx > 1e-6 * total)
    throw InvalidArgument("pointer_distribution_exact: grid too narrow (mass at edges)");

  PointerDistribution dist;
  dist.x = std::move(grid.x);
  dist.density.resize(q.size());
  for (size_t k = 0; k < q.size(); ++k) dist.density[k] = q[k] / total;
  dist.normalization = total;
  return dist;
}

namespace {

struct ExpansionInputs {
  double w;   // Re<A>_w
  double s2;  // |<A>_w|^2 + Re<A^2>_w
  double p0;  // |<f|i>|^2
};

ExpansionInputs expansion_inputs(const Ket& i, const Ket& f, const Operator& A) {
  Selection sel = Selection::pure(i, f);
  Complex aw = weak_value(A, sel).value;
  Complex a2w = weak_value(A * A, sel).value;
  return ExpansionInputs{aw.real(), std::norm(aw) + a2w.real(),
                         sel.baseline_probability()};
}

void require_expansion_regime(const Operator& A, double theta, double sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A.entries(), Eigen::EigenvaluesOnly);
  if (std::abs(theta) * spectral_radius(es.eigenvalues()) > sigma / 10.0)
    throw RegimeViolation("expansion regime violated: theta*||A|| must be <= sigma/10");
}

// Second-order bracket of the normalized expanded density:
// 1 + 2 w x theta / sigma^2 + theta^2 s2 (x^2/sigma^4 - 1/(2 sigma^2)).
double expansion_bracket(double x, double theta, double sigma, const ExpansionInputs& in) {
  double s2t = sigma * sigma;
  return 1.0 + 2.0 * in.w * x * theta / s2t +
         theta * theta * in.s2 * (x * x / (s2t * s2t) - 0.5 / s2t);
}

}  // namespace

PointerDistribution pointer_distribution_expanded(const Ket& i, const Ket& f,
                                                  const Operator& A, double theta,
                                                  const GaussianProbe& probe) {
  validate_probe(probe);
  validate_selection(i, f, A);
  require_expansion_regime(A, theta, probe.sigma);
  Eigen::SelfAdjointEigenSolver<Matrix> es(A.entries(), Eigen::EigenvaluesOnly);
  EvalGrid grid = make_grid(probe, theta, es.eigenvalues());
  ExpansionInputs in = expansion_inputs(i, f, A);

  std::vector<double> q(grid.x.size());
  double clipped = 0.0;
  for (size_t k = 0; k < grid.x.size(); ++k) {
    double phi = pointer_amp(grid.x[k], probe.sigma);
    double value = phi * phi * expansion_bracket(grid.x[k], theta, probe.sigma, in);
    if (value < 0.0) {
      clipped -= value;
      value = 0.0;
    }
    q[k] = value;
  }
  double total = trapezoid(q, grid.dx);
  if (total <= 0.0) throw Error("pointer_distribution_expanded: zero total mass");

  PointerDistribution dist;
  dist.x = std::move(grid.x);
  dist.density.resize(q.size());
  for (size_t k = 0; k < q.size(); ++k) dist.density[k] = q[k] / total;
  dist.normalization = total;
  dist.clipped_mass = clipped * grid.dx;
  return dist;
}

double mean_pointer_shift(const PointerDistribution& dist) {
  if (dist.x.size() < 2) throw InvalidArgument("mean_pointer_shift: empty distribution");
  double dx = dist.x[1] - dist.x[0];
  std::vector<double> xf(dist.x.size());
  for (size_t k = 0; k < dist.x.size(); ++k) xf[k] = dist.x[k] * dist.density[k];
  double sum = 0.0;
  for (size_t k = 0; k + 1 < xf.size(); ++k) sum += 0.5 * (xf[k] + xf[k + 1]);
  return sum * dx;
}

GaussianFisher fisher_gaussian(const Ket& i, const Ket& f, const Operator& A,
                               double theta, const GaussianProbe& probe) {
  validate_probe(probe);
  validate_selection(i, f, A);
  require_expansion_regime(A, theta, probe.sigma);
  Eigen::SelfAdjointEigenSolver<Matrix> es(A.entries(), Eigen::EigenvaluesOnly);
  EvalGrid grid = make_grid(probe, theta, es.eigenvalues());
  ExpansionInputs in = expansion_inputs(i, f, A);

  // Per source trial: detection happens with probability p0 and yields x
  // distributed by the expanded density; the detection probability itself
  // does not depend on Re<A>_w at this order.
  const double s2 = probe.sigma * probe.sigma;
  std::vector<double> integrand(grid.x.size(), 0.0);
  for (size_t k = 0; k < grid.x.size(); ++k) {
    double x = grid.x[k];
    double phi = pointer_amp(x, probe.sigma);
    double p = phi * phi * expansion_bracket(x, theta, probe.sigma, in);
    if (p <= 0.0) continue;  // clipped tail carries no outcomes
    double dp = phi * phi *
                (2.0 * x * theta / s2 +
                 2.0 * in.w * theta * theta * (x * x / (s2 * s2) - 0.5 / s2));
    integrand[k] = dp * dp / p;
  }
  double dx = grid.x[1] - grid.x[0];
  double j_cond = trapezoid(integrand, dx);

  GaussianFisher out;
  out.numeric = in.p0 * j_cond;
  out.leading_order = in.p0 * (theta / probe.sigma) * (theta / probe.sigma);
  return out;
}

}  // namespace wvlab
