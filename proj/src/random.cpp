#include "powerlim/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace powerlim {

ComplexMatrix gaussian_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

ComplexVector gaussian_vector(Rng& rng, Index size) { return gaussian_matrix(rng, size, 1).col(0); }

ComplexVector random_unit_vector(Rng& rng, Index size) {
  ComplexVector x = gaussian_vector(rng, size);
  while (x.norm() == 0.0) x = gaussian_vector(rng, size);
  return x / x.norm();
}

ComplexMatrix random_unitary(Rng& rng, Index m) {
  const Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(rng, m, m));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < m; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

HermitianMatrix random_hermitian(Rng& rng, Index m) {
  const ComplexMatrix g = gaussian_matrix(rng, m, m);
  return HermitianMatrix((g + g.adjoint()) / 2.0);
}

ComplexMatrix random_conditioned(Rng& rng, Index m, double cond) {
  if (!(cond >= 1.0)) throw DomainError("random_conditioned: cond must be >= 1");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealVector sigma(m);
  for (Index i = 0; i < m; ++i) sigma(i) = std::pow(cond, unit(rng));
  sigma(0) = 1.0;
  if (m > 1) sigma(m - 1) = cond;
  const ComplexMatrix u = random_unitary(rng, m);
  const ComplexMatrix v = random_unitary(rng, m);
  return u * sigma.cast<Complex>().asDiagonal() * v.adjoint();
}

ConstructedMatrix conjugated_triangular(Rng& rng, const std::vector<Complex>& eigenvalues,
                                        double cond, double offdiag) {
  const auto m = static_cast<Index>(eigenvalues.size());
  if (m == 0) throw DomainError("conjugated_triangular: empty spectrum");
  ComplexMatrix t = gaussian_matrix(rng, m, m) * offdiag;
  t.triangularView<Eigen::StrictlyLower>().setZero();
  for (Index i = 0; i < m; ++i) t(i, i) = eigenvalues[static_cast<std::size_t>(i)];
  const ComplexMatrix s = random_conditioned(rng, m, cond);
  ConstructedMatrix out;
  out.a = s * t * s.inverse();
  out.conjugator = s;
  out.triangular = std::move(t);
  out.eigenvalues = eigenvalues;
  return out;
}

std::vector<Complex> separated_moduli(Rng& rng, Index m, double min_ratio, double smallest) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> out;
  double modulus = smallest * (1.0 + 0.5 * unit(rng));
  for (Index i = 0; i < m; ++i) {
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    out.push_back(std::polar(modulus, phase));
    modulus *= min_ratio * (1.0 + 0.3 * unit(rng));
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

std::vector<Complex> unit_radius_spectrum(Rng& rng, Index m, double smallest) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> out;
  for (Index i = 0; i < m; ++i) {
    const double modulus = i == 0 ? 1.0 : smallest + (1.0 - smallest) * unit(rng);
    out.push_back(std::polar(modulus, 2.0 * std::numbers::pi * unit(rng)));
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

std::vector<Complex> separated_realparts(Rng& rng, Index m, double min_gap) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> out;
  double re = -0.5 * min_gap * static_cast<double>(m) - unit(rng);
  for (Index i = 0; i < m; ++i) {
    out.emplace_back(re, 4.0 * unit(rng) - 2.0);
    re += min_gap * (1.0 + 0.5 * unit(rng));
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

JordanStructure jordan_structure_matrix(Rng& rng, Index max_dim, Index max_block, double cond) {
  std::uniform_int_distribution<Index> block(1, max_block);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  JordanStructure out;
  Index used = 0;
  while (used < max_dim) {
    const Index size = std::min(block(rng), max_dim - used);
    out.block_sizes.push_back(size);
    used += size;
  }
  // Block eigenvalues on a ring of well separated points.
  const auto blocks = static_cast<Index>(out.block_sizes.size());
  const double offset = 2.0 * std::numbers::pi * unit(rng);
  std::vector<Complex> centers;
  for (Index b = 0; b < blocks; ++b) {
    const double angle = offset + 2.0 * std::numbers::pi * static_cast<double>(b) / static_cast<double>(blocks);
    centers.push_back(std::polar(0.5 + 0.5 * unit(rng) + 0.5 * static_cast<double>(b), angle));
  }

  ComplexMatrix j = ComplexMatrix::Zero(used, used);
  std::vector<Complex> eigs;
  Index at = 0;
  for (Index b = 0; b < blocks; ++b) {
    const Index size = out.block_sizes[static_cast<std::size_t>(b)];
    for (Index i = 0; i < size; ++i) {
      j(at + i, at + i) = centers[static_cast<std::size_t>(b)];
      if (i + 1 < size) j(at + i, at + i + 1) = 1.0;
      eigs.push_back(centers[static_cast<std::size_t>(b)]);
    }
    at += size;
  }
  const ComplexMatrix s = random_conditioned(rng, used, cond);
  out.built.a = s * j * s.inverse();
  out.built.conjugator = s;
  out.built.triangular = std::move(j);
  out.built.eigenvalues = std::move(eigs);
  return out;
}

Rng substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace powerlim
