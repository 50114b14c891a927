#include "powerlim/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace powerlim {

double default_cluster_tol(const ComplexMatrix& a) {
  return 1e-8 * std::max(1.0, op_norm(a));
}

std::vector<EigCluster> cluster_eigenvalues(const std::vector<Complex>& eigs, double cluster_tol) {
  if (eigs.empty()) throw DomainError("cluster_eigenvalues: empty eigenvalue list");
  if (!(cluster_tol >= 0.0)) throw DomainError("cluster_eigenvalues: tolerance must be >= 0");

  const std::size_t m = eigs.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (std::abs(eigs[i] - eigs[j]) <= cluster_tol) parent[find(j)] = find(i);
    }
  }

  std::vector<EigCluster> clusters;
  std::vector<std::size_t> slot(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == m) {
      slot[root] = clusters.size();
      clusters.emplace_back();
    }
    clusters[slot[root]].members.push_back({eigs[i], static_cast<Index>(i)});
  }
  for (auto& c : clusters) {
    Complex sum{0.0, 0.0};
    for (const auto& mem : c.members) sum += mem.value;
    c.center = sum / static_cast<double>(c.members.size());
  }
  std::stable_sort(clusters.begin(), clusters.end(), [](const EigCluster& x, const EigCluster& y) {
    const double ax = std::abs(x.center);
    const double ay = std::abs(y.center);
    if (ax != ay) return ax < ay;
    return std::arg(x.center) < std::arg(y.center);
  });
  return clusters;
}

std::vector<EigCluster> cluster_eigenvalues(const ComplexVector& eigs, double cluster_tol) {
  return cluster_eigenvalues(std::vector<Complex>(eigs.data(), eigs.data() + eigs.size()),
                             cluster_tol);
}

ComplexMatrix spectral_projector(const SchurForm& form, const EigCluster& cluster, double sep_rel) {
  const Index m = form.triangular.rows();
  std::vector<int> keys(static_cast<std::size_t>(m), 1);
  for (const auto& mem : cluster.members) {
    if (mem.position < 0 || mem.position >= m) {
      throw DomainError("spectral_projector: cluster member position out of range");
    }
    keys[static_cast<std::size_t>(mem.position)] = 0;
  }
  const auto r = static_cast<Index>(cluster.members.size());
  if (r == m) return ComplexMatrix::Identity(m, m);

  const SchurForm ordered = reorder_schur(form, keys);
  const ComplexMatrix& t = ordered.triangular;
  ComplexMatrix x;
  try {
    x = sylvester_solve(t.topLeftCorner(r, r), t.bottomRightCorner(m - r, m - r),
                        t.topRightCorner(r, m - r), sep_rel);
  } catch (const SeparationError& e) {
    throw IllConditionedCluster(cluster.center, e);
  }
  ComplexMatrix block = ComplexMatrix::Zero(m, m);
  block.topLeftCorner(r, r).setIdentity();
  block.topRightCorner(r, m - r) = x;
  return ordered.unitary * block * ordered.unitary.adjoint();
}

ComplexMatrix spectral_projector(const ComplexMatrix& a, const EigCluster& cluster, double sep_rel) {
  const SchurForm form = schur(a);
  const double slack = 1e-12 * std::max(1.0, op_norm(a));
  for (const auto& mem : cluster.members) {
    if (mem.position >= form.triangular.rows() ||
        std::abs(form.triangular(mem.position, mem.position) - mem.value) > slack) {
      throw DomainError("spectral_projector: cluster does not match the Schur diagonal of A");
    }
  }
  return spectral_projector(form, cluster, sep_rel);
}

namespace {

ComplexMatrix matrix_power(const ComplexMatrix& a, Index k) {
  ComplexMatrix out = ComplexMatrix::Identity(a.rows(), a.cols());
  for (Index i = 0; i < k; ++i) out = out * a;
  return out;
}

}  // namespace

double JCDecomp::commutator_residual() const { return op_norm(d * n - n * d); }

double JCDecomp::nilpotency_residual() const { return op_norm(matrix_power(n, n.rows())); }

double JCDecomp::partition_residual() const {
  ComplexMatrix sum = ComplexMatrix::Zero(d.rows(), d.cols());
  for (const auto& p : projectors) sum += p;
  return op_norm(sum - ComplexMatrix::Identity(d.rows(), d.cols()));
}

double JCDecomp::idempotency_residual() const {
  double worst = 0.0;
  for (const auto& p : projectors) worst = std::max(worst, op_norm(p * p - p));
  return worst;
}

JCDecomp jordan_chevalley(const ComplexMatrix& a, const JordanOptions& options) {
  require_square_finite(a, "jordan_chevalley");
  const double cluster_tol = options.cluster_tol < 0.0 ? default_cluster_tol(a) : options.cluster_tol;
  const SchurForm form = schur(a);
  JCDecomp jc;
  jc.clusters = cluster_eigenvalues(form.eigenvalues(), cluster_tol);
  jc.d = ComplexMatrix::Zero(a.rows(), a.cols());
  for (const auto& c : jc.clusters) {
    jc.projectors.push_back(spectral_projector(form, c, options.sep_rel));
    jc.d += c.center * jc.projectors.back();
  }
  jc.n = a - jc.d;
  return jc;
}

JCDecomp jordan_chevalley(const ComplexMatrix& a, double cluster_tol) {
  return jordan_chevalley(a, JordanOptions{cluster_tol, tol::kSeparation});
}

double diagonalizability_residual(const JCDecomp& jc) {
  const double dn = op_norm(jc.d);
  if (dn == 0.0) return 0.0;
  const Index m = jc.d.rows();
  double worst = 0.0;
  for (std::size_t c = 0; c < jc.clusters.size(); ++c) {
    const ComplexMatrix shifted = jc.d - jc.clusters[c].center * ComplexMatrix::Identity(m, m);
    worst = std::max(worst, op_norm(shifted * jc.projectors[c]));
  }
  return worst / dn;
}

}  // namespace powerlim
