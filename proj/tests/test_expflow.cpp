#include "doctest.h"
#include "powerlim/expflow.hpp"
#include "powerlim/random.hpp"
#include "powerlim/yamamoto.hpp"
#include "support.hpp"

#include <cmath>

using namespace powerlim;
using namespace testing;

namespace {

const ComplexMatrix kFlow = mat({{1, 1}, {0, -1}});  // (A + I) v = 0 for v = (1, -2)

ComplexMatrix f1_of_flow() { return mat({{1, -2}, {-2, 4}}) / 5.0; }

}  // namespace

TEST_CASE("expm examples") {
  CHECK(dist(expm(diag({0.3, -2})), diag({std::exp(0.3), std::exp(-2.0)})) <= 1e-15);
  const ComplexMatrix n = mat({{0, 1}, {0, 0}});
  CHECK(dist(expm(n), ComplexMatrix::Identity(2, 2) + n) <= 1e-15);
  Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = gaussian_matrix(rng, 4, 4);
    CHECK(dist(expm(a) * expm(-a), ComplexMatrix::Identity(4, 4)) <= 1e-10);
  }
}

TEST_CASE("expm on triangular-conjugated matrices with a known exponential") {
  // exp of an upper triangular 2x2 block: [[a, b],[0, c]] -> [[e^a, b (e^a - e^c)/(a - c)],[0, e^c]].
  Rng rng(89);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex a(0.5 * trial - 2.0, 0.3), c(-1.0, -0.7), b(1.5, -0.5);
    const ComplexMatrix t = mat({{a, b}, {0, c}});
    const ComplexMatrix et = mat({{std::exp(a), b * (std::exp(a) - std::exp(c)) / (a - c)}, {0, std::exp(c)}});
    const ComplexMatrix s = random_conditioned(rng, 2, 10.0);
    const ComplexMatrix expected = s * et * s.inverse();
    CHECK(dist(expm(s * t * s.inverse()), expected) <= 1e-10 * op_norm(expected));
  }
}

TEST_CASE("expm semigroup") {
  Rng rng(97);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix a = gaussian_matrix(rng, 4, 4);
    a *= 2.0 / op_norm(a);
    const ComplexMatrix twice = expm(2.0 * a);
    CHECK(dist(expm(a) * expm(a), twice) <= 1e-9 * op_norm(twice));
  }
}

TEST_CASE("realpart_flag examples") {
  SUBCASE("diag(-1, 7i, 2)") {
    const RealPartFlag f = realpart_flag(diag({-1, Complex(0, 7), 2}));
    REQUIRE(f.size() == 3);
    CHECK(f.realparts()[0] == doctest::Approx(-1.0));
    CHECK(f.realparts()[1] == doctest::Approx(0.0));
    CHECK(f.realparts()[2] == doctest::Approx(2.0));
    CHECK(dist(f.projections[0].matrix(), diag({1, 0, 0})) <= 1e-14);
    CHECK(dist(f.projections[1].matrix(), diag({1, 1, 0})) <= 1e-14);
    CHECK(dist(f.projections[2].matrix(), ComplexMatrix::Identity(3, 3)) <= 1e-14);
  }
  SUBCASE("one vertical line") {
    Rng rng(101);
    const ConstructedMatrix c = conjugated_triangular(rng, {Complex(0.5, 1), Complex(0.5, -3), Complex(0.5, 0)}, 5.0);
    const RealPartFlag f = realpart_flag(c.a);
    CHECK(f.size() == 1);
    CHECK(dist(f.projections[0].matrix(), ComplexMatrix::Identity(3, 3)) <= 1e-12);
  }
  SUBCASE("[[1,1],[0,-1]]") {
    const RealPartFlag f = realpart_flag(kFlow);
    REQUIRE(f.size() == 2);
    CHECK(f.realparts()[0] == doctest::Approx(-1.0));
    CHECK(dist(f.projections[0].matrix(), f1_of_flow()) <= 1e-14);
    const ModulusFlag g = modulus_flag(expm(kFlow));
    CHECK(projection_distance(g.projections[0].matrix(), f.projections[0].matrix()) <= 1e-12);
  }
}

TEST_CASE("exp_limit_matrix examples") {
  const double e = std::exp(1.0);
  CHECK(dist(exp_limit_matrix(diag({1, -1})).matrix(), diag({e, 1.0 / e})) <= 1e-14);
  CHECK(dist(exp_limit_matrix(mat({{0, -1}, {1, 0}})).matrix(), ComplexMatrix::Identity(2, 2)) <= 1e-14);
  const ComplexMatrix expected = f1_of_flow() / e + e * (ComplexMatrix::Identity(2, 2) - f1_of_flow());
  const PsdMatrix closed = exp_limit_matrix(kFlow);
  CHECK(dist(closed.matrix(), expected) <= 1e-13);
  CHECK(dist(exp_iterate_limit(kFlow, 20).matrix(), expected) <= 1e-2 * op_norm(expected));
}

TEST_CASE("exp_iterate_limit examples") {
  Rng rng(103);
  const ComplexMatrix g = gaussian_matrix(rng, 3, 3);
  const ComplexMatrix skew = g - g.adjoint();
  CHECK(dist(exp_iterate_limit(skew, 20).matrix(), ComplexMatrix::Identity(3, 3)) <= 1e-10);
  const double e = std::exp(1.0);
  CHECK(dist(exp_iterate_limit(diag({1, -1}), 20).matrix(), diag({e, 1.0 / e})) <= 1e-12);
}

TEST_CASE("trajectory_growth examples") {
  const TrajectoryReport a = trajectory_growth(diag({1, -1}), vec({0, 1}));
  CHECK(a.shell_index == 1);
  CHECK(a.growth_base == doctest::Approx(std::exp(-1.0)));
  CHECK(a.witness.holds);
  const TrajectoryReport b = trajectory_growth(diag({1, -1}), vec({1, 1}));
  CHECK(b.shell_index == 2);
  CHECK(b.growth_base == doctest::Approx(std::exp(1.0)));
  CHECK(b.witness.holds);
  CHECK(b.witness.rho < b.realpart);
  CHECK(b.realpart < b.witness.omega);
  const TrajectoryReport c = trajectory_growth(kFlow, vec({1, -2}) / std::sqrt(5.0));
  CHECK(c.shell_index == 1);
  CHECK(c.growth_base == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(trajectory_growth(kFlow, vec({0, 0})), DomainError);
}

TEST_CASE("trajectory bounds hold for top-shell vectors") {
  Rng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    const ConstructedMatrix c = conjugated_triangular(rng, separated_realparts(rng, 4, 0.3), 20.0);
    const TrajectoryReport r = trajectory_growth(c.a, random_unit_vector(rng, 4));
    CHECK(r.shell_index == 4);
    CHECK(r.witness.holds);
    for (const auto& s : r.witness.samples) {
      if (s.t >= 64.0) CHECK(std::abs(s.rate - r.realpart) < 0.1);
    }
  }
}

TEST_CASE("trajectory_shell_invariance examples") {
  const FlowInvarianceTrace eig = trajectory_shell_invariance(kFlow, vec({1, 0}), {0.5, 1.0, 3.0});
  CHECK(eig.invariant);
  const FlowInvarianceTrace diag_flow = trajectory_shell_invariance(diag({1, -1}), vec({1, 1}), {0.5, 1, 2, 4});
  CHECK(diag_flow.invariant);
  for (const auto& s : diag_flow.steps) CHECK(s.shell == 2);
  const FlowInvarianceTrace e1 = trajectory_shell_invariance(kFlow, vec({1, 0}), {1, 2, 3});
  CHECK(e1.initial_shell == 2);
  CHECK(e1.invariant);
  CHECK_THROWS_AS(trajectory_shell_invariance(kFlow, vec({1, 0}), {-1.0}), DomainError);
}

TEST_CASE("flag transfer between A and e^A") {
  Rng rng(109);
  for (int trial = 0; trial < 10; ++trial) {
    const ConstructedMatrix c = conjugated_triangular(rng, separated_realparts(rng, 5, 0.3), 20.0);
    const RealPartFlag f = realpart_flag(c.a);
    const ModulusFlag g = modulus_flag(expm(c.a));
    REQUIRE(f.size() == g.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      CHECK(std::abs(std::exp(f.realparts()[j]) - g.moduli()[j]) <= 1e-8 * g.moduli()[j]);
      CHECK(projection_distance(f.projections[j].matrix(), g.projections[j].matrix()) <= 1e-6);
    }
  }
}

TEST_CASE("integer and shifted times obey the interpolation bounds") {
  Rng rng(113);
  for (int trial = 0; trial < 5; ++trial) {
    const ConstructedMatrix c = conjugated_triangular(rng, separated_realparts(rng, 4, 0.3), 10.0);
    const InterpolationConstants k = interpolation_constants(c.a);
    CHECK(k.lower <= 1.0);
    CHECK(k.upper >= 1.0);
    for (unsigned kk : {2u, 4u, 6u}) {
      for (double alpha : {0.25, 0.5}) {
        const InterpolationCheck chk = check_interpolation(c.a, kk, alpha, k);
        CHECK(chk.passed);
      }
    }
  }
}
