#include "doctest.h"
#include "powerlim/jordan.hpp"
#include "powerlim/random.hpp"
#include "support.hpp"

#include <cmath>

using namespace powerlim;
using namespace testing;

TEST_CASE("cluster_eigenvalues") {
  SUBCASE("exact repeats") {
    const auto c = cluster_eigenvalues(std::vector<Complex>{1, 1, 2}, 1e-8);
    REQUIRE(c.size() == 2);
    CHECK(c[0].multiplicity() == 2);
    CHECK(c[1].multiplicity() == 1);
  }
  SUBCASE("near repeat is merged at the mean") {
    const double eps = 1e-10;
    const auto c = cluster_eigenvalues(std::vector<Complex>{1, 1 + eps, 2}, 1e-8);
    REQUIRE(c.size() == 2);
    CHECK(std::abs(c[0].center - (1.0 + eps / 2)) < 1e-15);
  }
  SUBCASE("single linkage chains") {
    const auto c = cluster_eigenvalues(std::vector<Complex>{0, 0.6, 1.2}, 0.7);
    REQUIRE(c.size() == 1);
    CHECK(c[0].multiplicity() == 3);
  }
  SUBCASE("ordering by modulus then argument") {
    const auto c = cluster_eigenvalues(std::vector<Complex>{Complex(0, 1), 3, -1, 0.5}, 1e-8);
    REQUIRE(c.size() == 4);
    CHECK(c[0].center == Complex(0.5));
    CHECK(c[1].center == Complex(0, 1));  // arg pi/2 < arg pi
    CHECK(c[2].center == Complex(-1));
    CHECK(c[3].center == Complex(3));
  }
  CHECK_THROWS_AS(cluster_eigenvalues(std::vector<Complex>{}, 1e-8), DomainError);
}

TEST_CASE("spectral_projector for [[2,5],[0,1]] and cluster {2}") {
  // Hand-solved: 2x - x = 5 gives P = [[1,5],[0,0]].
  const ComplexMatrix a = mat({{2, 5}, {0, 1}});
  const SchurForm f = schur(a);
  const auto clusters = cluster_eigenvalues(f.eigenvalues(), 1e-8);
  REQUIRE(clusters.size() == 2);
  const ComplexMatrix p = spectral_projector(f, clusters[1]);
  CHECK(dist(p, mat({{1, 5}, {0, 0}})) <= 1e-12);
  CHECK(dist(p * p, p) <= 1e-12);
  CHECK(dist(p * a, a * p) <= 1e-12);
}

TEST_CASE("spectral_projector of a normal matrix is orthogonal") {
  Rng rng(43);
  const ComplexMatrix u = random_unitary(rng, 3);
  const ComplexMatrix a = u * diag({1, 2, 3}) * u.adjoint();
  const SchurForm f = schur(a);
  for (const auto& c : cluster_eigenvalues(f.eigenvalues(), 1e-8)) {
    const ComplexMatrix p = spectral_projector(f, c);
    CHECK(dist(p, p.adjoint()) <= 1e-12);
    const Index k = std::lround(c.center.real()) - 1;
    CHECK(dist(p, u.col(k) * u.col(k).adjoint()) <= 1e-12);
  }
}

TEST_CASE("spectral_projector of the whole spectrum is I") {
  const ComplexMatrix a = mat({{1, 1}, {0, 1}});
  const auto c = cluster_eigenvalues(schur(a).eigenvalues(), 1e-8);
  CHECK(dist(spectral_projector(a, c[0]), ComplexMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("spectral_projector rejects clusters that do not belong to A") {
  const ComplexMatrix a = mat({{2, 5}, {0, 1}});
  EigCluster bogus;
  bogus.center = 7.0;
  bogus.members.push_back({7.0, 0});
  CHECK_THROWS_AS(spectral_projector(a, bogus), DomainError);
}

TEST_CASE("jordan_chevalley examples") {
  SUBCASE("single Jordan block") {
    const JCDecomp jc = jordan_chevalley(mat({{1, 1}, {0, 1}}));
    CHECK(dist(jc.d, ComplexMatrix::Identity(2, 2)) <= 1e-14);
    CHECK(dist(jc.n, mat({{0, 1}, {0, 0}})) <= 1e-14);
  }
  SUBCASE("distinct eigenvalues") {
    const ComplexMatrix a = mat({{2, 1}, {0, 1}});
    const JCDecomp jc = jordan_chevalley(a);
    CHECK(dist(jc.d, a) <= 1e-13);
    CHECK(op_norm(jc.n) <= 1e-13);
  }
  SUBCASE("3I plus strictly upper part") {
    Rng rng(47);
    ComplexMatrix upper = gaussian_matrix(rng, 2, 2);
    upper.triangularView<Eigen::Lower>().setZero();
    const ComplexMatrix a = 3.0 * ComplexMatrix::Identity(2, 2) + upper;
    const JCDecomp jc = jordan_chevalley(a);
    CHECK(dist(jc.d, 3.0 * ComplexMatrix::Identity(2, 2)) <= 1e-13);
    CHECK(dist(jc.n, upper) <= 1e-13);
    CHECK(op_norm(jc.n * jc.n) <= 1e-13);
    CHECK(jc.commutator_residual() <= 1e-13);
  }
}

TEST_CASE("jordan_chevalley on random diagonalizable matrices") {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const auto eigs = separated_moduli(rng, 5, 1.5);
    const ConstructedMatrix c = conjugated_triangular(rng, eigs, 100.0);
    const double an = op_norm(c.a);
    const JCDecomp jc = jordan_chevalley(c.a);
    CHECK(op_norm(jc.n) <= 1e-8 * an);
    CHECK(dist(jc.d, c.a) <= 1e-8 * an);
    CHECK(jc.partition_residual() <= 1e-8);
    CHECK(jc.idempotency_residual() <= 1e-8);
    for (std::size_t i = 0; i < jc.projectors.size(); ++i) {
      CHECK(dist(jc.projectors[i] * c.a, c.a * jc.projectors[i]) <= 1e-8 * an);
      for (std::size_t j = 0; j < jc.projectors.size(); ++j) {
        if (i != j) CHECK(op_norm(jc.projectors[i] * jc.projectors[j]) <= 1e-8);
      }
    }
    CHECK(diagonalizability_residual(jc) <= 1e-12);
  }
}

TEST_CASE("jordan_chevalley on constructed Jordan structures") {
  Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const JordanStructure js = jordan_structure_matrix(rng, 8, 3, 10.0);
    const ComplexMatrix& a = js.built.a;
    const double an = op_norm(a);
    const auto m = static_cast<double>(a.rows());
    const JCDecomp jc = jordan_chevalley(a, 1e-3 * an);
    CHECK((a - jc.d - jc.n).isZero(0.0));
    CHECK(jc.commutator_residual() <= 1e-8 * an * an);
    CHECK(jc.nilpotency_residual() <= 1e-8 * std::pow(an, m));
    CHECK(jc.partition_residual() <= 1e-8);
    // Spectrum of D equals that of A with multiplicity.
    const auto expected = cluster_eigenvalues(js.built.eigenvalues, 1e-3 * an);
    REQUIRE(expected.size() == jc.clusters.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(expected[i].multiplicity() == jc.clusters[i].multiplicity());
      CHECK(std::abs(expected[i].center - jc.clusters[i].center) <= 1e-3 * an);
    }
  }
}

TEST_CASE("jordan_chevalley is idempotent on its diagonalizable part") {
  Rng rng(61);
  const JordanStructure js = jordan_structure_matrix(rng, 6, 3, 10.0);
  const double tol = 1e-3 * op_norm(js.built.a);
  const JCDecomp jc = jordan_chevalley(js.built.a, tol);
  const JCDecomp again = jordan_chevalley(jc.d, tol);
  CHECK(dist(again.d, jc.d) <= 1e-8 * op_norm(jc.d));
  CHECK(op_norm(again.n) <= 1e-8 * op_norm(jc.d));
}

TEST_CASE("diagonalizability_residual") {
  CHECK(diagonalizability_residual(jordan_chevalley(ComplexMatrix::Identity(3, 3))) == 0.0);
  CHECK(diagonalizability_residual(jordan_chevalley(diag({1, 2, 3}))) <= 1e-12);

  // Nearly defective: eigenvalues 1 and 1 + 1e-12 below a tiny cluster tolerance.
  const ComplexMatrix a = mat({{1, 1}, {0, 1 + 1e-12}});
  CHECK_THROWS_AS(jordan_chevalley(a, 1e-14), IllConditionedCluster);
  // In triangular form every step happens to be exact; a mild conjugation exposes the
  // 1e-12 split to rounding and the forced decomposition degrades.
  Rng rng(1);
  for (int trial = 0; trial < 3; ++trial) {
    const ComplexMatrix s = random_conditioned(rng, 2, 10.0);
    const JCDecomp forced = jordan_chevalley(s * a * s.inverse(), JordanOptions{1e-14, 0.0});
    CHECK(forced.clusters.size() == 2);
    CHECK(op_norm(forced.projectors[0]) > 1e6);
    CHECK(diagonalizability_residual(forced) > 1e-3);
    CHECK(forced.idempotency_residual() > 1e-2);
  }
  // A cluster tolerance above the split merges them and gives a clean answer.
  const JCDecomp merged = jordan_chevalley(a, 1e-8);
  CHECK(merged.clusters.size() == 1);
  CHECK(diagonalizability_residual(merged) <= 1e-12);
}
