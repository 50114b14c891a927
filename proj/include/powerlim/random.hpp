#pragma once

// Seeded generators for test matrices with prescribed spectral structure.

#include <cstdint>
#include <random>
#include <vector>

#include "powerlim/matcore.hpp"

namespace powerlim {

using Rng = std::mt19937_64;

/// Entrywise standard complex Gaussian: real and imaginary parts N(0, 1/2).
ComplexMatrix gaussian_matrix(Rng& rng, Index rows, Index cols);
ComplexVector gaussian_vector(Rng& rng, Index size);
ComplexVector random_unit_vector(Rng& rng, Index size);

/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
ComplexMatrix random_unitary(Rng& rng, Index m);

HermitianMatrix random_hermitian(Rng& rng, Index m);

/// U diag(sigma) V* with singular values spread over [1, cond].
ComplexMatrix random_conditioned(Rng& rng, Index m, double cond);

struct ConstructedMatrix {
  ComplexMatrix a;
  ComplexMatrix conjugator;            // S
  ComplexMatrix triangular;            // A = S T S^{-1}
  std::vector<Complex> eigenvalues;    // diagonal of T, with multiplicity
};

/// S T S^{-1} with T upper triangular, diagonal `eigenvalues`, Gaussian strict upper part
/// scaled by `offdiag`, and cond(S) <= cond.
ConstructedMatrix conjugated_triangular(Rng& rng, const std::vector<Complex>& eigenvalues,
                                        double cond, double offdiag = 1.0);

/// Eigenvalue moduli with consecutive ratios >= min_ratio (relative gap), random phases.
std::vector<Complex> separated_moduli(Rng& rng, Index m, double min_ratio, double smallest = 0.2);

/// Moduli drawn from [smallest, 1] with the largest equal to 1, random phases. Powers of
/// such matrices up to n = 256 keep every singular value far above rounding level.
std::vector<Complex> unit_radius_spectrum(Rng& rng, Index m, double smallest = 0.95);

/// Distinct real parts with consecutive gaps >= min_gap, random imaginary parts.
std::vector<Complex> separated_realparts(Rng& rng, Index m, double min_gap);

struct JordanStructure {
  ConstructedMatrix built;
  std::vector<Index> block_sizes;
};

/// Direct sum of Jordan blocks (sizes 1..max_block) for distinct, well separated
/// eigenvalues, conjugated by S with cond(S) <= cond.
JordanStructure jordan_structure_matrix(Rng& rng, Index max_dim, Index max_block, double cond);

/// Child generator for substream `index` of a suite seeded with `seed`.
Rng substream(std::uint64_t seed, std::uint64_t index);

}  // namespace powerlim
