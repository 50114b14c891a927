#include "powerlim/flag.hpp"

#include <algorithm>
#include <numeric>

namespace powerlim {

std::size_t NestedFlag::rank(std::size_t j) const {
  if (j > multiplicities.size()) throw DomainError("NestedFlag::rank: level index out of range");
  return std::accumulate(multiplicities.begin(), multiplicities.begin() + static_cast<long>(j),
                         std::size_t{0});
}

std::size_t NestedFlag::shell_of(const ComplexVector& x, double mem_tol) const {
  require_nonzero_vector(x, "shell_of");
  if (x.size() != dim()) throw DomainError("shell_of: vector dimension mismatch");
  const double xn = x.norm();
  for (std::size_t j = 0; j < projections.size(); ++j) {
    if ((projections[j].matrix() * x - x).norm() <= mem_tol * xn) return j + 1;
  }
  return projections.size();
}

PsdMatrix NestedFlag::weighted_sum(const std::function<double(double)>& f) const {
  RealVector values(dim());
  Index col = 0;
  for (std::size_t j = 0; j < size(); ++j) {
    const double v = f(levels[j]);
    for (std::size_t c = 0; c < multiplicities[j]; ++c) values(col++) = v;
  }
  return PsdMatrix::from_spectrum(basis, values);
}

std::vector<double> NestedFlag::levels_descending() const {
  std::vector<double> out;
  for (std::size_t j = size(); j-- > 0;) out.insert(out.end(), multiplicities[j], levels[j]);
  return out;
}

std::vector<LevelCluster> cluster_levels(const std::vector<double>& values, double tol) {
  if (values.empty()) throw DomainError("cluster_levels: empty input");
  std::vector<Index> order(values.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
  });

  std::vector<LevelCluster> out;
  double prev = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double v = values[static_cast<std::size_t>(order[i])];
    if (i == 0 || v - prev > tol) {
      if (i > 0) out.back().center = sum / static_cast<double>(out.back().positions.size());
      out.push_back({0.0, {}});
      sum = 0.0;
    }
    out.back().positions.push_back(order[i]);
    sum += v;
    prev = v;
  }
  out.back().center = sum / static_cast<double>(out.back().positions.size());
  return out;
}

NestedFlag build_flag(const SchurForm& form, const std::function<double(Complex)>& key,
                      double cluster_tol) {
  const Index m = form.triangular.rows();
  std::vector<double> values(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) values[static_cast<std::size_t>(i)] = key(form.triangular(i, i));
  const std::vector<LevelCluster> clusters = cluster_levels(values, cluster_tol);

  std::vector<int> keys(static_cast<std::size_t>(m));
  NestedFlag flag;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (Index pos : clusters[c].positions) keys[static_cast<std::size_t>(pos)] = static_cast<int>(c);
    flag.levels.push_back(clusters[c].center);
    flag.multiplicities.push_back(clusters[c].positions.size());
  }
  SchurForm ordered = reorder_schur(form, keys);
  flag.basis = std::move(ordered.unitary);

  for (std::size_t j = 1; j <= clusters.size(); ++j) {
    const auto r = static_cast<Index>(flag.rank(j));
    RealVector ones = RealVector::Zero(m);
    ones.head(r).setOnes();
    flag.projections.push_back(PsdMatrix::from_spectrum(flag.basis, ones));
  }
  return flag;
}

}  // namespace powerlim
