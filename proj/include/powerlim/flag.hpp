#pragma once

#include <functional>
#include <vector>

#include "powerlim/matcore.hpp"

namespace powerlim {

namespace tol {
inline constexpr double kFlag = 1e-8;
inline constexpr double kMembership = 1e-6;
}  // namespace tol

/// A chain of orthogonal projections P_1 <= ... <= P_k = I indexed by ascending real
/// levels (eigenvalue moduli, real parts, ...). P_0 = 0 is implicit.
struct NestedFlag {
  std::vector<double> levels;
  std::vector<std::size_t> multiplicities;
  std::vector<PsdMatrix> projections;
  /// Unitary whose leading rank(j) columns span ran(P_j) for every j.
  ComplexMatrix basis;

  std::size_t size() const noexcept { return levels.size(); }
  Index dim() const noexcept { return basis.rows(); }

  /// sum_{i <= j} m_i for the 1-based level index j (rank(0) = 0).
  std::size_t rank(std::size_t j) const;

  /// Smallest 1-based j with ||P_j x - x|| <= mem_tol ||x||.
  std::size_t shell_of(const ComplexVector& x, double mem_tol = tol::kMembership) const;

  /// sum_j f(level_j) (P_j - P_{j-1}).
  PsdMatrix weighted_sum(const std::function<double(double)>& f) const;

  /// The levels repeated by multiplicity, descending.
  std::vector<double> levels_descending() const;
};

struct LevelCluster {
  double center;
  std::vector<Index> positions;
};

/// Single-linkage clustering on the real line (chain steps <= tol); ascending centers.
std::vector<LevelCluster> cluster_levels(const std::vector<double>& values, double tol);

/// Clusters key(lambda) over the Schur diagonal and reorders the Schur form so that the
/// eigenvalues of level cluster 1 come first, then cluster 2, and so on.
NestedFlag build_flag(const SchurForm& form, const std::function<double(Complex)>& key,
                      double cluster_tol);

}  // namespace powerlim
