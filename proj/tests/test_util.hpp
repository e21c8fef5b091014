#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "wvlab/weakval.hpp"

namespace wvtest {

// Least-squares slope of log(err) vs log(theta). Residuals at or below the
// noise floor are dropped; if fewer than 3 usable points remain the decay is
// faster than measurable and +inf is returned. Difference quotients carry
// rounding noise of order eps/theta, hence the theta-dependent floor term.
inline double loglog_slope(const std::vector<double>& thetas,
                           const std::vector<double>& errs,
                           double floor = 1e-13, double eps_over_theta = 0.0) {
  std::vector<double> xs, ys;
  for (size_t k = 0; k < thetas.size(); ++k) {
    if (errs[k] > std::max(floor, eps_over_theta / thetas[k])) {
      xs.push_back(std::log(thetas[k]));
      ys.push_back(std::log(errs[k]));
    }
  }
  if (xs.size() < 3) return std::numeric_limits<double>::infinity();
  double mx = 0, my = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    num += (xs[k] - mx) * (ys[k] - my);
    den += (xs[k] - mx) * (xs[k] - mx);
  }
  return num / den;
}

inline wvlab::Complex random_unit_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

inline wvlab::Matrix random_matrix(std::mt19937_64& rng, int d) {
  wvlab::Matrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = random_unit_complex(rng);
  return m;
}

inline wvlab::Operator random_operator(std::mt19937_64& rng, int d) {
  return wvlab::Operator(random_matrix(rng, d));
}

inline wvlab::Operator random_hermitian(std::mt19937_64& rng, int d) {
  wvlab::Matrix m = random_matrix(rng, d);
  return wvlab::Operator(wvlab::Matrix((m + m.adjoint()) / 2.0));
}

// Random normal operator scaled to unit spectral radius-ish size.
inline wvlab::Operator random_normal(std::mt19937_64& rng, int d) {
  wvlab::Operator h = random_hermitian(rng, d);
  Eigen::SelfAdjointEigenSolver<wvlab::Matrix> es(h.entries());
  wvlab::Vector evals(d);
  for (int k = 0; k < d; ++k) evals(k) = random_unit_complex(rng);
  wvlab::Matrix m = es.eigenvectors() * evals.asDiagonal() * es.eigenvectors().adjoint();
  return wvlab::Operator(wvlab::Matrix(m / std::max(1.0, m.norm())));
}

inline wvlab::Ket random_ket(std::mt19937_64& rng, int d) {
  wvlab::Vector v(d);
  for (int k = 0; k < d; ++k) v(k) = random_unit_complex(rng);
  return wvlab::Ket::unit(std::move(v));
}

inline wvlab::DensityMatrix random_density(std::mt19937_64& rng, int d) {
  wvlab::Matrix g = random_matrix(rng, d);
  wvlab::Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return wvlab::DensityMatrix(std::move(rho));
}

// Pure selection with overlap modulus at least min_overlap, so weak values
// stay moderate.
inline wvlab::Selection random_pure_selection(std::mt19937_64& rng, int d,
                                              double min_overlap = 0.2) {
  for (;;) {
    wvlab::Ket i = random_ket(rng, d);
    wvlab::Ket f = random_ket(rng, d);
    if (std::abs(wvlab::inner(f, i)) >= min_overlap)
      return wvlab::Selection::pure(std::move(i), std::move(f));
  }
}

inline std::vector<wvlab::Ket> random_orthonormal_basis(std::mt19937_64& rng, int d) {
  Eigen::HouseholderQR<wvlab::Matrix> qr(random_matrix(rng, d));
  wvlab::Matrix q = qr.householderQ();
  std::vector<wvlab::Ket> basis;
  basis.reserve(d);
  for (int k = 0; k < d; ++k) basis.emplace_back(wvlab::Vector(q.col(k)));
  return basis;
}

}  // namespace wvtest
