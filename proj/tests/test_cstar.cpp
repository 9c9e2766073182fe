#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "essmod/algebra/cstar.hpp"
#include "essmod/error.hpp"
#include "essmod/harness/generate.hpp"
#include "essmod/numeric/linalg.hpp"

using namespace essmod;
using namespace essmod::algebra;
using numeric::CMatrix;
using numeric::Complex;

namespace {

AlgebraElement diag(std::vector<double> values) {
  const AlgebraShape shape({values.size()});
  return AlgebraElement(shape, {CMatrix::diagonal(values)});
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::SchemaError;
}

// Rank from Eigen's SVD, independent of the Jacobi solver under test.
std::size_t svd_rank(const AlgebraElement& x) {
  std::size_t r = 0;
  for (const auto& b : x.blocks()) {
    Eigen::MatrixXcd m(b.rows(), b.cols());
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) = b(i, j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    const double cutoff = 1e-9 * std::max(1.0, s.size() ? s(0) : 0.0);
    for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cutoff ? 1 : 0;
  }
  return r;
}

std::size_t total_rank(const AlgebraElement& p) {
  std::size_t r = 0;
  for (const auto& b : p.blocks()) r += numeric::rank(b);
  return r;
}

}  // namespace

TEST_CASE("shape and element basics") {
  const AlgebraShape shape({2, 3});
  CHECK(shape.dimension() == 13);
  CHECK(AlgebraElement::basis(shape).size() == 13);
  CHECK(shape.amplified(2).block_dims() == std::vector<std::size_t>{4, 6});
  CHECK(code_of([] { AlgebraShape bad(std::vector<std::size_t>{}); }) == ErrorCode::ShapeMismatch);
  const auto e = AlgebraElement::matrix_unit(shape, 1, 0, 2);
  CHECK(e.adjoint().block(1)(2, 0) == Complex(1.0));
  CHECK((AlgebraElement::identity(shape) * e).block(1) == e.block(1));
}

TEST_CASE("calculus examples") {
  const auto root = calculus(diag({0.0, 1.0, 4.0}), {[](double t) { return std::sqrt(t); }, 0.0});
  CHECK(max_abs_diff(root, diag({0.0, 1.0, 2.0})) < 1e-12);

  essmod::harness::CounterRng rng(1);
  const auto a = essmod::harness::random_hermitian(AlgebraShape({3, 4}), rng);
  const auto one = calculus(a, {[](double) { return 1.0; }});
  CHECK(max_abs_diff(one, AlgebraElement::identity(a.shape())) < 1e-12);
  const auto cube = calculus(a, {[](double t) { return t * t * t; }});
  CHECK(max_abs_diff(cube, a * a * a) < 1e-9);
  const auto ident = calculus(a, {[](double t) { return t; }});
  CHECK(max_abs_diff(ident, a) < 1e-12);
}

TEST_CASE("calculus errors") {
  CHECK(code_of([] { (void)calculus(diag({-1.0, 1.0}), {[](double t) { return std::sqrt(t); }, 0.0}); }) ==
        ErrorCode::DomainError);
  const AlgebraShape shape({2});
  const auto e12 = AlgebraElement::matrix_unit(shape, 0, 0, 1);
  CHECK(code_of([&] { (void)calculus(e12, {[](double t) { return t; }}); }) == ErrorCode::NotHermitian);
}

TEST_CASE("spectral projection examples") {
  CHECK(max_abs_diff(spectral_projection(diag({0.5, 2.0}), 1.0), diag({0.0, 1.0})) < 1e-12);
  CHECK(spectral_projection(diag({0.0, 0.0}), 1.0).norm() == 0.0);
  CHECK(code_of([] { (void)spectral_projection(diag({1.0, 3.0}), 1.0); }) == ErrorCode::EigenvalueAtThreshold);

  essmod::harness::CounterRng rng(2);
  int checked = 0;
  while (checked < 10) {
    const auto a = essmod::harness::random_hermitian(AlgebraShape({2, 4}), rng);
    const double eps = a.norm() / 2.0;
    bool clear = true;
    for (const auto& block : spectrum(a)) {
      for (double l : block) clear = clear && std::abs(l - eps) > 1e-4;
    }
    if (!clear) continue;
    ++checked;
    const auto p = spectral_projection(a, eps);
    CHECK(max_abs_diff(p * p, p) < 1e-12);
    CHECK(max_abs_diff(p * a, a * p) < 1e-12);
    CHECK(max_abs_diff(lower_approximant(a, eps, 1e6), p) < 1e-8);
  }
}

TEST_CASE("lower approximants") {
  CHECK(max_abs_diff(lower_approximant(diag({2.0}), 1.0, 1.0), diag({1.0})) == 0.0);
  CHECK(lower_approximant(diag({0.25}), 0.5, 7.0).norm() == 0.0);
  essmod::harness::CounterRng rng(3);
  const auto a = essmod::harness::random_hermitian(AlgebraShape({3, 3}), rng);
  const double eps = 0.1;
  auto previous = lower_approximant(a, eps, 1.0);
  for (int n = 2; n <= 50; ++n) {
    const auto g = lower_approximant(a, eps, n);
    const auto step = g - previous;
    for (const auto& b : step.blocks()) CHECK(numeric::is_psd(b, 1e-12));
    previous = g;
  }
}

TEST_CASE("shifted positive part") {
  CHECK(max_abs_diff(shifted_positive_part(diag({3.0, 1.0}), 2.0), diag({1.0, 0.0})) < 1e-12);
  CHECK(shifted_positive_part(diag({3.0, -1.0}), 3.0).norm() == 0.0);

  essmod::harness::CounterRng rng(4);
  for (int i = 0; i < 5; ++i) {
    const auto x = essmod::harness::random_element(AlgebraShape({2, 3}), rng);
    const auto a = x * x.adjoint();
    const double eps = 0.37 * a.norm();
    const auto pos = shifted_positive_part(a, eps);
    for (const auto& b : pos.blocks()) CHECK(numeric::is_psd(b));
    const auto other = (a - AlgebraElement::identity(a.shape()) * Complex(eps)) * spectral_projection(a, eps);
    CHECK(max_abs_diff(pos, other) < 1e-10);
  }
}

TEST_CASE("ideal_from_projection") {
  const AlgebraShape m2({2});
  const auto full = ideal_from_projection(AlgebraElement::identity(m2));
  essmod::harness::CounterRng rng(5);
  CHECK(full.contains(essmod::harness::random_element(m2, rng)));
  const auto zero = ideal_from_projection(AlgebraElement::zero(m2));
  CHECK(zero.is_zero());
  CHECK_FALSE(zero.contains(AlgebraElement::identity(m2)));

  const auto e11 = ideal_from_projection(AlgebraElement::matrix_unit(m2, 0, 0, 0));
  CHECK(e11.contains(AlgebraElement::matrix_unit(m2, 0, 0, 1)));
  CHECK(e11.contains(AlgebraElement::matrix_unit(m2, 0, 0, 0) * Complex(2.0, 1.0)));
  CHECK_FALSE(e11.contains(AlgebraElement::matrix_unit(m2, 0, 1, 0)));
  CHECK_FALSE(e11.contains(AlgebraElement::identity(m2)));

  CHECK(code_of([&] { (void)ideal_from_projection(AlgebraElement::matrix_unit(m2, 0, 0, 1)); }) ==
        ErrorCode::NotProjection);
}

TEST_CASE("ideal_support_projection") {
  const AlgebraShape m2({2});
  const AlgebraElement ones[] = {AlgebraElement::identity(m2)};
  CHECK(max_abs_diff(ideal_support_projection(ones).support_projection(), AlgebraElement::identity(m2)) < 1e-12);

  // x = u v* has range span(u).
  CMatrix x(2, 2);
  const Complex u0(1.0, 0.0), u1(0.0, 2.0);
  x(0, 0) = u0 * 0.5;
  x(0, 1) = u0 * -1.0;
  x(1, 0) = u1 * 0.5;
  x(1, 1) = u1 * -1.0;
  const AlgebraElement gens[] = {AlgebraElement(m2, {x})};
  const auto p = ideal_support_projection(gens).support_projection().block(0);
  const double n2 = std::norm(u0) + std::norm(u1);
  CHECK(std::abs(p(0, 0) - std::norm(u0) / n2) < 1e-12);
  CHECK(std::abs(p(1, 0) - u1 * std::conj(u0) / n2) < 1e-12);

  const AlgebraShape two({2, 3});
  std::vector<CMatrix> blocks{CMatrix::identity(2), CMatrix(3, 3)};
  const AlgebraElement g[] = {AlgebraElement(two, blocks)};
  const auto ideal = ideal_support_projection(g);
  CHECK(ideal.block_ranks() == std::vector<std::size_t>{2, 0});
}

TEST_CASE("closed_subideal on e11") {
  const AlgebraShape m2({2});
  const auto x = AlgebraElement::matrix_unit(m2, 0, 0, 0);
  const auto w = closed_subideal(x);
  CHECK(max_abs_diff(w.a, x) < 1e-12);
  CHECK(w.eps == doctest::Approx(0.5));
  CHECK(max_abs_diff(w.p, x) < 1e-12);
  CHECK(w.K.block_ranks() == std::vector<std::size_t>{1});
  CHECK(w.fa_p_ok);
  CHECK(w.probes_ok);
  for (const auto& b : w.K.spanning_set()) CHECK(max_abs_diff(w.fa * w.p * b, b) < 1e-12);
}

TEST_CASE("closed_subideal on a unitary gives the whole algebra") {
  const AlgebraShape m2({2});
  CMatrix u(2, 2);
  u(0, 1) = Complex(0.0, 1.0);
  u(1, 0) = 1.0;
  const auto w = closed_subideal(AlgebraElement(m2, {u}));
  CHECK(max_abs_diff(w.p, AlgebraElement::identity(m2)) < 1e-12);
  CHECK(w.K.block_ranks() == std::vector<std::size_t>{2});
}

TEST_CASE("closed_subideal rank matches an SVD oracle") {
  essmod::harness::CounterRng rng(6);
  for (int i = 0; i < 30; ++i) {
    const auto shape = essmod::harness::random_shape(rng, 3, 5);
    const auto x = essmod::harness::random_low_rank(shape, rng);
    const auto w = closed_subideal(x);
    CHECK(total_rank(w.p) == svd_rank(x));
    CHECK(w.fa_p_ok);
    CHECK(w.probes_ok);
  }
  CHECK(code_of([] { (void)closed_subideal(AlgebraElement::zero(AlgebraShape({2}))); }) == ErrorCode::ZeroInput);
}

TEST_CASE("subideal bridge is continuous") {
  const double eps = 0.4;
  CHECK(subideal_bridge(0.19, eps) == 0.0);
  CHECK(subideal_bridge(eps / 2.0, eps) == doctest::Approx(0.0));
  CHECK(subideal_bridge(eps - 1e-12, eps) == doctest::Approx(1.0 / eps));
  CHECK(subideal_bridge(1.0, eps) == doctest::Approx(1.0));
}

TEST_CASE("essential right ideals") {
  const AlgebraShape m2({2});
  CHECK(is_essential_right_ideal(ideal_from_projection(AlgebraElement::identity(m2))).essential);

  const auto res = is_essential_right_ideal(ideal_from_projection(AlgebraElement::matrix_unit(m2, 0, 0, 0)));
  REQUIRE_FALSE(res.essential);
  REQUIRE(res.certificate);
  CHECK(std::abs(res.certificate->v[0]) < 1e-12);
  CHECK(std::abs(res.certificate->v[1]) == doctest::Approx(1.0));
  CHECK(res.certificate->intersection_dim == 0);

  // Brute-force oracle: pA cap qA is the set of matrices whose columns lie in range p cap range q.
  const RightIdeal q(m2, res.certificate->q);
  CHECK(intersection_dimension(ideal_from_projection(AlgebraElement::matrix_unit(m2, 0, 0, 0)), q) == 0);
  CHECK(intersection_dimension(ideal_from_projection(AlgebraElement::identity(m2)), q) == 2);

  const AlgebraShape mixed({1, 3});
  const auto zero = is_essential_right_ideal(ideal_from_projection(AlgebraElement::zero(mixed)));
  CHECK_FALSE(zero.essential);
  CHECK(zero.certificate);
}
