#pragma once

// Spectrum clustering, oblique spectral projectors and the Jordan-Chevalley split
// A = D + N (D diagonalizable, N nilpotent, DN = ND).

#include <vector>

#include "powerlim/matcore.hpp"

namespace powerlim {

namespace tol {
inline constexpr double kJordan = 1e-8;
}

struct ClusterMember {
  Complex value;
  Index position;  // index in the eigenvalue list the cluster was built from
};

struct EigCluster {
  Complex center;  // arithmetic mean of the members
  std::vector<ClusterMember> members;
  std::size_t multiplicity() const noexcept { return members.size(); }
};

/// 1e-8 * max(1, ||A||).
double default_cluster_tol(const ComplexMatrix& a);

/// Single-linkage clustering in the complex plane: two eigenvalues share a cluster iff
/// a chain of steps of length <= cluster_tol connects them. Clusters are ordered by
/// ascending |center|, ties by ascending arg.
std::vector<EigCluster> cluster_eigenvalues(const std::vector<Complex>& eigs, double cluster_tol);
std::vector<EigCluster> cluster_eigenvalues(const ComplexVector& eigs, double cluster_tol);

/// Oblique projector onto the generalized eigenspace of `cluster` along the other
/// generalized eigenspaces. Member positions refer to the diagonal of `form`.
ComplexMatrix spectral_projector(const SchurForm& form, const EigCluster& cluster,
                                 double sep_rel = tol::kSeparation);

/// As above; member positions refer to the diagonal of schur(a).
ComplexMatrix spectral_projector(const ComplexMatrix& a, const EigCluster& cluster,
                                 double sep_rel = tol::kSeparation);

struct JCDecomp {
  ComplexMatrix d;  // diagonalizable part
  ComplexMatrix n;  // nilpotent part, exactly A - D
  std::vector<EigCluster> clusters;
  std::vector<ComplexMatrix> projectors;  // one per cluster, same order

  /// ||DN - ND|| (operator norm).
  double commutator_residual() const;
  /// ||N^m||.
  double nilpotency_residual() const;
  /// ||sum_c P_c - I||.
  double partition_residual() const;
  /// max_c ||P_c^2 - P_c||.
  double idempotency_residual() const;
};

struct JordanOptions {
  double cluster_tol = -1.0;  // negative: default_cluster_tol(a)
  double sep_rel = tol::kSeparation;
};

/// D = sum_c center(c) P_c and N = A - D. Separation failures surface as
/// IllConditionedCluster.
JCDecomp jordan_chevalley(const ComplexMatrix& a, const JordanOptions& options = {});
JCDecomp jordan_chevalley(const ComplexMatrix& a, double cluster_tol);

/// max_c ||(D - center_c I) P_c|| / ||D||; zero iff D acts as the scalar center_c on every
/// cluster range.
double diagonalizability_residual(const JCDecomp& jc);

}  // namespace powerlim
