#include "doctest.h"
#include "powerlim/oracle.hpp"
#include "powerlim/random.hpp"
#include "powerlim/yamamoto.hpp"
#include "support.hpp"

#include <cmath>

using namespace powerlim;
using namespace testing;

TEST_CASE("check_weyl_perturbation") {
  Rng rng(127);
  const HermitianMatrix h = random_hermitian(rng, 4);
  const CheckResult same = check_weyl_perturbation(h, h);
  CHECK(same.passed);
  CHECK(same.slack == 0.0);

  const ComplexMatrix g = gaussian_matrix(rng, 4, 4);
  const HermitianMatrix psd(g.adjoint() * g);
  const double eps = 1e-3;
  const CheckResult shift =
      check_weyl_perturbation(psd, HermitianMatrix(psd.matrix() + eps * ComplexMatrix::Identity(4, 4)));
  CHECK(shift.passed);
  CHECK(std::abs(shift.lhs - shift.rhs) <= 1e-12);

  CHECK(check_weyl_perturbation(random_hermitian(rng, 5), random_hermitian(rng, 5)).passed);
  CHECK_THROWS_AS(check_weyl_perturbation(random_hermitian(rng, 2), random_hermitian(rng, 3)), DomainError);
}

TEST_CASE("check_eig_trace_dominance") {
  Rng rng(131);
  const ComplexMatrix u = random_unitary(rng, 3);
  const ComplexMatrix normal = u * diag({2, Complex(0, -1), 0.5}) * u.adjoint();
  const CheckResult eq = check_eig_trace_dominance(normal, 1.5);
  CHECK(eq.passed);
  CHECK(std::abs(eq.slack) <= 1e-12 * eq.rhs);

  const CheckResult nil = check_eig_trace_dominance(mat({{0, 1}, {0, 0}}), 1.0);
  CHECK(nil.lhs == 0.0);
  CHECK(nil.rhs == doctest::Approx(1.0));
  for (double p : {0.5, 1.0, 2.0}) CHECK(check_eig_trace_dominance(gaussian_matrix(rng, 5, 5), p).passed);
}

TEST_CASE("check_holder_trace") {
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  const CheckResult eq = check_holder_trace({id, id}, {2.0, 2.0}, 1.0);
  CHECK(eq.lhs == doctest::Approx(3.0));
  CHECK(eq.rhs == doctest::Approx(3.0));
  CHECK(eq.passed);

  Rng rng(137);
  CHECK(check_holder_trace({gaussian_matrix(rng, 4, 4), gaussian_matrix(rng, 4, 4)}, {2.0, 2.0}, 1.0).passed);
  CHECK(check_holder_trace({gaussian_matrix(rng, 4, 4), gaussian_matrix(rng, 4, 4), gaussian_matrix(rng, 4, 4)},
                           {3.0, 3.0, 3.0}, 1.0)
            .passed);
  CHECK_THROWS_AS(check_holder_trace({id, id}, {2.0, 3.0}, 1.0), DomainError);
}

TEST_CASE("check_three_factor") {
  Rng rng(139);
  const ComplexMatrix b = gaussian_matrix(rng, 3, 3);
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  const CheckResult eq = check_three_factor(id, b, id, 1.3);
  CHECK(eq.passed);
  CHECK(std::abs(eq.slack) <= 1e-12 * eq.rhs);
  const CheckResult uni = check_three_factor(random_unitary(rng, 3), b, random_unitary(rng, 3), 2.0);
  CHECK(uni.passed);
  CHECK(std::abs(uni.slack) <= 1e-10 * uni.rhs);
  CHECK(check_three_factor(gaussian_matrix(rng, 4, 4), gaussian_matrix(rng, 4, 4), gaussian_matrix(rng, 4, 4), 2.0)
            .passed);
}

TEST_CASE("check_power_trace_monotone") {
  Rng rng(149);
  const CheckResult uni = check_power_trace_monotone(random_unitary(rng, 3), 2.0, 4);
  CHECK(uni.lhs == doctest::Approx(3.0));
  CHECK(uni.rhs == doctest::Approx(3.0));
  const ComplexMatrix a = gaussian_matrix(rng, 4, 4);
  const CheckResult one = check_power_trace_monotone(a, 1.0, 1);
  CHECK(std::abs(one.slack) <= 1e-12 * one.rhs);

  const ComplexMatrix j = mat({{1, 1}, {0, 1}});
  double previous = 3.0 + 1e-12;
  for (std::uint64_t n : {2u, 4u, 8u}) {
    const CheckResult r = check_power_trace_monotone(j, 2.0, n);
    CHECK(r.passed);
    CHECK(r.rhs == doctest::Approx(3.0));
    CHECK(r.lhs < previous);
    // Independent value: singular values of [[1,n],[0,1]] satisfy s1 s2 = 1, s1^2 + s2^2 = n^2 + 2.
    const double nn = static_cast<double>(n);
    const double s1 = (nn + std::sqrt(nn * nn + 4.0)) / 2.0;
    CHECK(r.lhs == doctest::Approx(std::pow(s1, 2.0 / nn) + std::pow(s1, -2.0 / nn)).epsilon(1e-12));
    previous = r.lhs;
  }
}

TEST_CASE("check_jensen_vector") {
  Rng rng(151);
  const ComplexMatrix a = gaussian_matrix(rng, 4, 4);
  const ComplexVector x = random_unit_vector(rng, 4);
  const CheckResult one = check_jensen_vector(a, x, 1.0, 3);
  CHECK(one.passed);
  CHECK(std::abs(one.slack) <= 1e-10 * one.rhs);
  const CheckResult zero = check_jensen_vector(a, x, 0.0, 3);
  CHECK(zero.lhs == doctest::Approx(1.0));
  CHECK(zero.rhs == 1.0);
  CHECK(check_jensen_vector(a, x, 0.5, 4).passed);
  CHECK_THROWS_AS(check_jensen_vector(a, 2.0 * x, 0.5, 4), DomainError);
}

TEST_CASE("graded_conjugation") {
  CHECK(dist(graded_conjugation(mat({{1, 1}, {0, 2}}), 10.0), mat({{1, 0.1}, {0, 2}})) <= 1e-16);
  const ComplexMatrix d = diag({1, Complex(0, 2), -3});
  CHECK(graded_conjugation(d, 7.0) == d);

  Rng rng(157);
  ComplexMatrix t = gaussian_matrix(rng, 4, 4);
  t.triangularView<Eigen::StrictlyLower>().setZero();
  const ComplexMatrix g = graded_conjugation(t, 1000.0);
  CHECK(g.diagonal() == t.diagonal());
  ComplexMatrix off = g;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() <= op_norm(t) / 1000.0);

  // Non-triangular input goes through its Schur triangle: the diagonal is the spectrum.
  const ComplexMatrix a = gaussian_matrix(rng, 3, 3);
  const ComplexMatrix ga = graded_conjugation(a, 5.0);
  CHECK(ga.triangularView<Eigen::StrictlyLower>().toDenseMatrix().isZero(0.0));
  CHECK(ga.diagonal() == schur(a).triangular.diagonal());
}

TEST_CASE("brute_force_limit") {
  Rng rng(163);
  const ComplexMatrix a = gaussian_matrix(rng, 3, 3);
  CHECK(dist(brute_force_limit(a, 1).matrix(), abs_psd(a).matrix()) <= 1e-14);
  CHECK(dist(brute_force_limit(random_unitary(rng, 3), 50).matrix(), ComplexMatrix::Identity(3, 3)) <= 1e-12);
  const ComplexMatrix j = mat({{1, 1}, {0, 1}});
  CHECK(dist(brute_force_limit(j, 64).matrix(), iterate_limit(j, 6).matrix()) <= 1e-9);
  CHECK_THROWS_AS(brute_force_limit(100.0 * a, 200), RangeError);
  CHECK_THROWS_AS(brute_force_limit(a, 513), DomainError);
}

TEST_CASE("brute force and iterative pipelines agree on prescaled matrices") {
  Rng rng(167);
  for (int trial = 0; trial < 10; ++trial) {
    // Unit spectral radius with all moduli near 1: A^n and its smallest singular values stay
    // representable, which the plain-multiplication oracle needs.
    const ConstructedMatrix c = conjugated_triangular(rng, unit_radius_spectrum(rng, 4), 10.0, 0.3);
    const ComplexMatrix& a = c.a;
    for (unsigned k : {4u, 6u, 8u}) {
      const ComplexMatrix brute = brute_force_limit(a, std::uint64_t{1} << k).matrix();
      CHECK(dist(brute, iterate_limit(a, k).matrix()) <= 1e-8 * op_norm(brute));
    }
  }
}

TEST_CASE("trace of powers of the iterate approaches the eigenvalue power sum") {
  Rng rng(173);
  for (int trial = 0; trial < 5; ++trial) {
    const ConstructedMatrix c = conjugated_triangular(rng, separated_moduli(rng, 5, 1.45), 50.0);
    const PsdMatrix it = iterate_limit(c.a, 20);
    for (double p : {0.5, 1.0, 2.0}) {
      double expected = 0.0;
      for (Complex z : c.eigenvalues) expected += std::pow(std::abs(z), p);
      CHECK(std::abs(psd_power(it, p).trace() - expected) <= 1e-2);
    }
  }
}

TEST_CASE("inequality suite") {
  SuiteConfig cfg;
  cfg.instances = 30;
  const SuiteResult r = run_inequality_suite(cfg);
  CHECK(r.all_passed());
  CHECK(r.results.size() == 30 * (1 + 3 + 1 + 1 + 3 + 9 + 4));

  // Same seed, same instances; a different seed changes them.
  const SuiteResult again = run_inequality_suite(cfg);
  REQUIRE(again.results.size() == r.results.size());
  for (std::size_t i = 0; i < r.results.size(); ++i) CHECK(again.results[i].lhs == r.results[i].lhs);
  cfg.seed = 43;
  CHECK(run_inequality_suite(cfg).results[0].lhs != r.results[0].lhs);

  cfg.inject_violation = true;
  const SuiteResult bad = run_inequality_suite(cfg);
  CHECK(bad.failures == 1);
  CHECK(bad.results.back().name == "injected_violation");
}

TEST_CASE("make_check slack scaling") {
  CHECK(make_check("x", 1.0 + 5e-10, 1.0, "").passed);
  CHECK(!make_check("x", 1.0 + 5e-9, 1.0, "").passed);
  CHECK(make_check("x", 1e6 + 5e-4, 1e6, "").passed);  // relative to |rhs|
  CHECK(!make_check("x", std::nan(""), 1.0, "").passed);
}
