#include "wvlab/weakval.hpp"

#include <cmath>

namespace wvlab {

namespace {

Complex mixed_overlap(const DensityMatrix& pre, const DensityMatrix& post) {
  return (post.entries() * pre.entries()).trace();
}

void check_dims(int a, int b, const char* what) {
  if (a != b) throw DimensionMismatch(std::string(what) + ": dimension mismatch");
}

}  // namespace

Selection Selection::pure(Ket pre, Ket post) {
  check_dims(pre.dim(), post.dim(), "Selection");
  Selection s;
  s.overlap_ = inner(post, pre);
  s.pre_ket_ = std::move(pre);
  s.post_ket_ = std::move(post);
  return s;
}

Selection Selection::mixed(DensityMatrix pre, DensityMatrix post) {
  check_dims(pre.dim(), post.dim(), "Selection");
  Selection s;
  s.overlap_ = mixed_overlap(pre, post);
  s.pre_rho_ = std::move(pre);
  s.post_rho_ = std::move(post);
  return s;
}

Selection Selection::mixed(Ket pre, DensityMatrix post) {
  Selection s = mixed(density_from_ket(pre), std::move(post));
  s.pre_ket_ = std::move(pre);
  return s;
}

Selection Selection::mixed(DensityMatrix pre, Ket post) {
  Selection s = mixed(std::move(pre), density_from_ket(post));
  s.post_ket_ = std::move(post);
  return s;
}

int Selection::dim() const {
  if (pre_ket_) return pre_ket_->dim();
  return pre_rho_->dim();
}

const Ket& Selection::pre_ket() const {
  if (!pre_ket_) throw InvalidArgument("Selection: pre-selection is not a pure ket");
  return *pre_ket_;
}

const Ket& Selection::post_ket() const {
  if (!post_ket_) throw InvalidArgument("Selection: post-selection is not a pure ket");
  return *post_ket_;
}

DensityMatrix Selection::pre_density() const {
  if (pre_rho_) return *pre_rho_;
  return density_from_ket(*pre_ket_);
}

DensityMatrix Selection::post_density() const {
  if (post_rho_) return *post_rho_;
  return density_from_ket(*post_ket_);
}

double Selection::baseline_probability() const {
  if (is_pure()) return std::norm(overlap_);
  return overlap_.real();
}

namespace {

void check_overlap(const Selection& sel) {
  if (std::abs(sel.overlap()) <= kOrthogonalTol)
    throw OrthogonalSelection("weak value undefined: pre- and post-selection are orthogonal");
}

}  // namespace

WeakValue weak_value(const Operator& C, const Selection& sel, const std::string& label) {
  if (!sel.is_pure())
    throw InvalidArgument("weak_value: selection must be pure on both sides");
  check_dims(C.dim(), sel.dim(), "weak_value");
  check_overlap(sel);
  Complex num = inner(sel.post_ket(), apply(C, sel.pre_ket()));
  return WeakValue{num / sel.overlap(), label};
}

WeakValue weak_value_mixed(const Operator& C, const Selection& sel, const std::string& label) {
  check_dims(C.dim(), sel.dim(), "weak_value_mixed");
  check_overlap(sel);
  const Matrix rho_i = sel.pre_density().entries();
  const Matrix rho_f = sel.post_density().entries();
  Complex num = (rho_f * C.entries() * rho_i).trace();
  Complex den = (rho_f * rho_i).trace();
  return WeakValue{num / den, label};
}

Complex expectation(const Operator& C, const Ket& i) {
  check_dims(C.dim(), i.dim(), "expectation");
  if (!i.is_normalized()) throw InvalidArgument("expectation: state must be normalized");
  return inner(i, apply(C, i));
}

std::vector<WeakValue> weak_probability_profile(const std::vector<Ket>& basis,
                                                const Selection& sel) {
  const int d = sel.dim();
  if (static_cast<int>(basis.size()) != d)
    throw InvalidArgument("weak_probability_profile: basis must have d elements");
  for (int j = 0; j < d; ++j) {
    check_dims(basis[j].dim(), d, "weak_probability_profile");
    for (int k = 0; k <= j; ++k) {
      Complex g = inner(basis[j], basis[k]);
      double want = (j == k) ? 1.0 : 0.0;
      if (std::abs(g - want) > kStructuralTol)
        throw InvalidArgument("weak_probability_profile: basis is not orthonormal");
    }
  }
  check_overlap(sel);
  std::vector<WeakValue> profile;
  profile.reserve(basis.size());
  for (size_t k = 0; k < basis.size(); ++k) {
    Operator proj = Operator::projector(basis[k]);
    std::string label = "path-" + std::to_string(k);
    profile.push_back(sel.is_pure() ? weak_value(proj, sel, label)
                                    : weak_value_mixed(proj, sel, label));
  }
  return profile;
}

}  // namespace wvlab
