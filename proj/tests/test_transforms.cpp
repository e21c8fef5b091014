#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "wvlab/scenarios.hpp"
#include "wvlab/transforms.hpp"

using namespace wvlab;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Operator minus_projector(int dim, int path) {
  return Complex(-1.0, 0.0) * Operator::projector(Ket::basis(dim, path));
}

}  // namespace

TEST_CASE("families evaluate to identity at theta = 0") {
  std::mt19937_64 rng(201);
  Operator c = wvtest::random_operator(rng, 3);
  CHECK(max_abs_diff(SmallTransform::exponential_of(c).evaluate(0.0).entries(),
                     Matrix::Identity(3, 3)) < 1e-15);
  CHECK(max_abs_diff(SmallTransform::linear_of(c).evaluate(0.0).entries(),
                     Matrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("exponential spin family") {
  SmallTransform u = unitary_of(Operator::spin_z(), Exactness::exponential);
  double theta = 0.4;
  Matrix m = u.evaluate(theta).entries();
  CHECK(std::abs(m(0, 0) - std::polar(1.0, theta / 2)) < 1e-15);
  CHECK(std::abs(m(1, 1) - std::polar(1.0, -theta / 2)) < 1e-15);
  CHECK(u.evaluate(0.9).is_unitary(1e-12));
}

TEST_CASE("linear attenuation family") {
  SmallTransform t = attenuation_of(minus_projector(3, kPathC), Exactness::linear);
  Matrix got = t.evaluate(0.1).entries();
  Matrix want = Matrix::Identity(3, 3);
  want(2, 2) = 0.9;
  CHECK(max_abs_diff(got, want) < 1e-15);
  // Linear unitary families drift from unitarity at second order.
  SmallTransform lu = unitary_of(Operator::spin_z(), Exactness::linear);
  CHECK_FALSE(lu.evaluate(0.5).is_unitary(1e-4));
}

TEST_CASE("generator accessors and hermiticity guards") {
  CHECK(max_abs_diff(unitary_of(Operator::pauli_z(), Exactness::exponential).generator().entries(),
                     (Complex(0, 1) * Operator::pauli_z()).entries()) == 0.0);
  CHECK(max_abs_diff(attenuation_of(Operator::zero(2), Exactness::exponential)
                         .evaluate(0.7)
                         .entries(),
                     Matrix::Identity(2, 2)) == 0.0);
  Matrix skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK_THROWS_AS(unitary_of(Operator(skew), Exactness::exponential), InvalidArgument);
  CHECK_THROWS_AS(attenuation_of(Operator(skew), Exactness::linear), InvalidArgument);
}

TEST_CASE("amplification grows the targeted amplitude") {
  SmallTransform amp =
      attenuation_of(Operator::projector(Ket::basis(3, kPathA)), Exactness::exponential);
  for (double theta : {0.1, 0.5, 1.0}) {
    Ket out = apply(amp.evaluate(theta), Ket::basis(3, kPathA));
    CHECK(std::abs(out.norm() - std::exp(theta)) < 1e-12);
  }
}

TEST_CASE("generator equals the numerical derivative at 0") {
  std::mt19937_64 rng(203);
  const double h = 1e-5;
  for (int trial = 0; trial < 6; ++trial) {
    Operator c = wvtest::random_operator(rng, 3);
    for (auto t : {SmallTransform::exponential_of(c), SmallTransform::linear_of(c)}) {
      Matrix diff = (t.evaluate(h).entries() - t.evaluate(-h).entries()) / (2 * h);
      CHECK(max_abs_diff(diff, t.generator().entries()) < 1e-6);
    }
  }
}

TEST_CASE("table families validate the claimed generator") {
  Operator gen = Complex(0, 1) * Operator::spin_z();
  auto family = [](double theta) { return matexp(Operator::spin_z(), Complex(0, theta)); };
  SmallTransform t = SmallTransform::table_of(family, gen);
  CHECK(max_abs_diff(t.evaluate(0.3).entries(), family(0.3).entries()) == 0.0);

  CHECK_THROWS_AS(SmallTransform::table_of(family, Operator::pauli_x()), InvalidArgument);
  auto shifted = [](double theta) {
    return Operator(Matrix(matexp(Operator::spin_z(), Complex(0, theta)).entries() +
                           0.1 * Matrix::Identity(2, 2)));
  };
  CHECK_THROWS_AS(SmallTransform::table_of(shifted, gen), InvalidArgument);
}

TEST_CASE("amplitude response signs match the transform type") {
  // Unitary: modulus responds to -Im<A>_w, argument to Re<A>_w.
  // Attenuation: modulus responds to +Re<B>_w, argument to Im<B>_w.
  std::mt19937_64 rng(207);
  std::vector<double> thetas = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  for (int trial = 0; trial < 8; ++trial) {
    int d = 2 + trial % 3;
    Selection sel = wvtest::random_pure_selection(rng, d);
    Operator herm = wvtest::random_hermitian(rng, d);
    Complex overlap = sel.overlap();
    Complex wv = weak_value(herm, sel).value;

    auto amplitude = [&](const SmallTransform& t, double theta) {
      return inner(sel.post_ket(), apply(t.evaluate(theta), sel.pre_ket()));
    };

    SmallTransform u = unitary_of(herm, Exactness::exponential);
    SmallTransform att = attenuation_of(herm, Exactness::exponential);
    std::vector<double> mod_err_u, arg_err_u, mod_err_a, arg_err_a;
    for (double theta : thetas) {
      Complex au = amplitude(u, theta);
      mod_err_u.push_back(std::abs((std::abs(au) - std::abs(overlap)) -
                                   (-std::abs(overlap) * wv.imag() * theta)));
      arg_err_u.push_back(std::abs(std::arg(au / overlap) - wv.real() * theta));
      Complex aa = amplitude(att, theta);
      mod_err_a.push_back(std::abs((std::abs(aa) - std::abs(overlap)) -
                                   std::abs(overlap) * wv.real() * theta));
      arg_err_a.push_back(std::abs(std::arg(aa / overlap) - wv.imag() * theta));
    }
    CHECK(wvtest::loglog_slope(thetas, mod_err_u) >= 1.9);
    CHECK(wvtest::loglog_slope(thetas, arg_err_u) >= 1.9);
    CHECK(wvtest::loglog_slope(thetas, mod_err_a) >= 1.9);
    CHECK(wvtest::loglog_slope(thetas, arg_err_a) >= 1.9);
  }
}

TEST_CASE("dilation of the zero generator is trivial") {
  DilationResult r = dilate_attenuation(Operator::zero(3), 0.5);
  CHECK(r.total_dim == 3);
  CHECK(max_abs_diff(r.unitary.entries(), Matrix::Identity(3, 3)) < 1e-14);
}

TEST_CASE("dilated attenuator reproduces exp(theta B) exactly") {
  Operator b = minus_projector(3, kPathC);
  for (double theta : {0.01, 0.1, 0.2, 1.0}) {
    DilationResult r = dilate_attenuation(b, theta);
    CHECK(r.total_dim == 4);
    CHECK(r.unitary.is_unitary(1e-10));

    Ket in = three_box_pre();
    Ket out = r.project(apply(r.unitary, r.embed(in)));
    Ket direct = apply(matexp(b, theta), in);
    CHECK((out.amplitudes() - direct.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
  }
  // theta = 0.2 path-C amplitudes explicitly.
  DilationResult r = dilate_attenuation(b, 0.2);
  Ket out = r.project(apply(r.unitary, r.embed(three_box_pre())));
  double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(out[0] - inv_sqrt3) < 1e-12);
  CHECK(std::abs(out[1] - inv_sqrt3) < 1e-12);
  CHECK(std::abs(out[2] - std::exp(-0.2) * inv_sqrt3) < 1e-12);
}

TEST_CASE("dilation of random attenuators") {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 6; ++trial) {
    // Hermitian with nonpositive spectrum.
    Operator h = wvtest::random_hermitian(rng, 4);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries());
    Eigen::VectorXd lam = es.eigenvalues();
    for (int k = 0; k < 4; ++k) lam(k) = -std::abs(lam(k));
    lam(trial % 4) = 0.0;
    Matrix bm = es.eigenvectors() * lam.asDiagonal().toDenseMatrix().cast<Complex>() *
                es.eigenvectors().adjoint();
    Operator b((bm + bm.adjoint()) / 2.0);

    double theta = 0.3;
    DilationResult r = dilate_attenuation(b, theta);
    CHECK(r.unitary.is_unitary(1e-10));
    Ket in = wvtest::random_ket(rng, 4);
    Ket out = r.project(apply(r.unitary, r.embed(in)));
    Ket direct = apply(matexp(b, theta), in);
    CHECK((out.amplitudes() - direct.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);

    // embed then project is the identity on the target space.
    Ket round = r.project(r.embed(in));
    CHECK((round.amplitudes() - in.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("dilation first-order structure") {
  Operator b = minus_projector(3, kPathC);
  for (double theta : {1e-1, 1e-2, 1e-3}) {
    DilationResult r = dilate_attenuation(b, theta);
    Matrix restricted = r.unitary.entries().topLeftCorner(3, 3);
    Matrix linear = Matrix::Identity(3, 3) + theta * b.entries();
    double norm_b = b.entries().norm();
    CHECK((restricted - linear).norm() <= norm_b * norm_b * theta * theta);
  }
}

TEST_CASE("dilation rejects amplification") {
  CHECK_THROWS_AS(dilate_attenuation(Operator::projector(Ket::basis(2, 0)), 0.1),
                  InvalidArgument);
  CHECK_THROWS_AS(dilate_attenuation(minus_projector(2, 0), -0.1), InvalidArgument);
}

TEST_CASE("ancilla coupling with vanishing ancilla weak value") {
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Ket plus{inv_sqrt2, inv_sqrt2};
  auto [prefactor, eff] =
      ancilla_coupling(Operator::pauli_x(), Operator::pauli_z(), plus, plus, 0.01);
  CHECK(std::abs(prefactor - 1.0) < 1e-14);
  CHECK(max_abs_diff(eff.entries(), Matrix::Identity(2, 2)) < 1e-3);
}

TEST_CASE("ancilla coupling first-order generator") {
  std::mt19937_64 rng(223);
  for (int trial = 0; trial < 6; ++trial) {
    Operator a1 = wvtest::random_hermitian(rng, 3);
    Operator a2 = wvtest::random_hermitian(rng, 2);
    Selection anc = wvtest::random_pure_selection(rng, 2);
    Complex w2 = weak_value(a2, anc).value;

    std::vector<double> thetas = {1e-4, 1e-3, 1e-2, 1e-1};
    std::vector<double> errs;
    for (double theta : thetas) {
      auto [prefactor, eff] =
          ancilla_coupling(a1, a2, anc.pre_ket(), anc.post_ket(), theta);
      CHECK(std::abs(prefactor - anc.overlap()) < 1e-14);
      Matrix first_order = (eff.entries() - Matrix::Identity(3, 3)) / theta;
      errs.push_back(
          (first_order - Complex(0, 1) * w2 * a1.entries()).cwiseAbs().maxCoeff());
    }
    CHECK(wvtest::loglog_slope(thetas, errs) >= 0.9);

    // Weak value of the extracted generator under an independent selection.
    Selection sys = wvtest::random_pure_selection(rng, 3);
    Complex w1 = weak_value(a1, sys).value;
    double theta = 1e-5;
    auto [pref, eff] = ancilla_coupling(a1, a2, anc.pre_ket(), anc.post_ket(), theta);
    Operator extracted(Matrix((eff.entries() - Matrix::Identity(3, 3)) / theta));
    CHECK(std::abs(weak_value(extracted, sys).value - Complex(0, 1) * w2 * w1) < 1e-3);
  }
}

TEST_CASE("ancilla weak value phase selects the transform type") {
  Operator a1 = Operator::pauli_x();
  Operator a2 = Operator::pauli_z();
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // Real <A2>_w: z-basis states.
  Ket zi = Ket::unit(Vector(Vector::Unit(2, 0) * 2.0 + Vector::Unit(2, 1)));
  Ket zf = Ket::unit(Vector(Vector::Unit(2, 0) + Vector::Unit(2, 1)));
  Complex w_real = weak_value(a2, Selection::pure(zi, zf)).value;
  CHECK(std::abs(w_real.imag()) < 1e-14);
  auto [p1, eff_real] = ancilla_coupling(a1, a2, zi, zf, 1e-3);
  CHECK(std::abs(p1 - inner(zf, zi)) < 1e-14);
  Matrix gen_real = (eff_real.entries() - Matrix::Identity(2, 2)) / 1e-3;
  // Anti-Hermitian first order: gen + gen^dag ~ O(theta).
  CHECK((gen_real + gen_real.adjoint()).cwiseAbs().maxCoeff() < 1e-2);

  // Purely imaginary <A2>_w: |+> against a phase-split pair.
  Ket plus{inv_sqrt2, inv_sqrt2};
  Ket split{std::polar(inv_sqrt2, 0.6), std::polar(inv_sqrt2, -0.6)};
  Complex w_imag = weak_value(a2, Selection::pure(plus, split)).value;
  CHECK(std::abs(w_imag.real()) < 1e-14);
  auto [p2, eff_imag] = ancilla_coupling(a1, a2, plus, split, 1e-3);
  CHECK(std::abs(p2 - inner(split, plus)) < 1e-14);
  Matrix gen_imag = (eff_imag.entries() - Matrix::Identity(2, 2)) / 1e-3;
  CHECK((gen_imag - gen_imag.adjoint()).cwiseAbs().maxCoeff() < 1e-2);

  Ket minus{inv_sqrt2, -inv_sqrt2};
  CHECK_THROWS_AS(ancilla_coupling(a1, a2, plus, minus, 0.1), OrthogonalSelection);
}
