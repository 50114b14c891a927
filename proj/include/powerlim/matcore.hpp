#pragma once

// Dense complex-matrix foundation: Schur forms (plain and reordered), Hermitian
// eigendecomposition, SVD, the operator absolute value |A| = sqrt(A*A), PSD powers,
// overflow-safe repeated squaring and the triangular Sylvester solver used to
// build spectral projectors.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "powerlim/errors.hpp"

namespace powerlim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tol {
// All tolerances are relative to the norm of the operand they guard.
inline constexpr double kFactorization = 1e-12;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPsd = 1e-10;
inline constexpr double kSeparation = 1e-8;
inline constexpr long kSweepsPerRow = 30;
}  // namespace tol

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Throws DomainError unless `a` is non-empty, square and finite.
void require_square_finite(const ComplexMatrix& a, std::string_view op);

/// Throws DomainError if x is empty, non-finite or exactly zero.
void require_nonzero_vector(const ComplexVector& x, std::string_view op);

/// Hermitian matrix; the stored form is exactly (M + M*)/2.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m, double herm_tol = tol::kHermitian);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// Positive-semidefinite matrix carried together with its spectral decomposition.
/// Eigenvalues are ascending and clamped at zero in the canonical form.
class PsdMatrix {
 public:
  /// Certifies smallest eigenvalue >= -psd_tol * ||H|| (Frobenius).
  static PsdMatrix certify(const HermitianMatrix& h, double psd_tol = tol::kPsd);

  /// Builds V diag(max(values, 0)) V*; `vectors` must be unitary.
  static PsdMatrix from_spectrum(const ComplexMatrix& vectors, const RealVector& values);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  const RealVector& eigenvalues() const noexcept { return values_; }
  const ComplexMatrix& eigenvectors() const noexcept { return vectors_; }
  Index dim() const noexcept { return m_.rows(); }
  double trace() const { return values_.sum(); }

 private:
  PsdMatrix(ComplexMatrix m, RealVector values, ComplexMatrix vectors)
      : m_(std::move(m)), values_(std::move(values)), vectors_(std::move(vectors)) {}

  ComplexMatrix m_;
  RealVector values_;
  ComplexMatrix vectors_;
};

struct SchurForm {
  ComplexMatrix unitary;     // Q
  ComplexMatrix triangular;  // T, A = Q T Q*
  ComplexVector eigenvalues() const { return triangular.diagonal(); }
};

/// Complex Schur decomposition. At most 30*m QR sweeps; FactorizationError otherwise.
SchurForm schur(const ComplexMatrix& a);

struct OrderedSchur {
  ComplexMatrix unitary;
  ComplexMatrix triangular;
  Index selected = 0;  // r: leading diagonal entries that satisfy the predicate
};

/// Schur form whose leading r diagonal entries are exactly the eigenvalues accepted by
/// `select`. Columns 0..r-1 of the unitary factor span the corresponding invariant subspace.
OrderedSchur ordered_schur(const ComplexMatrix& a, const std::function<bool(Complex)>& select);

/// Stable sort of the diagonal of an existing Schur form by integer keys (one per
/// diagonal position), using adjacent Givens swaps only. `keys` is permuted alongside.
SchurForm reorder_schur(SchurForm form, std::vector<int>& keys);

/// Swaps diagonal entries k and k+1 of an upper-triangular T, updating Q so that Q T Q*
/// is preserved.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& q, Index k);

struct HermEig {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // unitary
};

HermEig herm_eig(const HermitianMatrix& h);

struct Svd {
  ComplexMatrix u;
  RealVector s;  // descending
  ComplexMatrix v;
};

Svd svd(const ComplexMatrix& a);

/// |A| = sqrt(A* A) = V diag(s) V*.
PsdMatrix abs_psd(const ComplexMatrix& a);

/// H^p for p > 0.
PsdMatrix psd_power(const PsdMatrix& h, double p);

/// Largest singular value.
double op_norm(const ComplexMatrix& a);

/// A^n = exp(log_scale) * base with n = 2^K and ||base|| = 1, or the zero sentinel.
struct ScaledPower {
  ComplexMatrix base;
  double log_scale = 0.0;
  std::uint64_t exponent = 1;

  bool is_zero() const noexcept { return log_scale == kNegInf; }
  /// exp(log_scale) * base; overflows for large log_scale.
  ComplexMatrix value() const;
};

/// Repeated squaring with renormalization after every step.
ScaledPower scaled_power(const ComplexMatrix& a, unsigned k);

/// Solves T11 X - X T22 = C for upper-triangular T11, T22 by back-substitution.
/// A divisor |T11(i,i) - T22(j,j)| <= sep_rel * (||T11|| + ||T22||) raises SeparationError.
ComplexMatrix sylvester_solve(const ComplexMatrix& t11, const ComplexMatrix& t22,
                              const ComplexMatrix& c, double sep_rel = tol::kSeparation);

/// ||P1 - P2||, the sine of the largest principal angle between the ranges of two
/// orthogonal projections of equal rank.
double projection_distance(const ComplexMatrix& p1, const ComplexMatrix& p2);

}  // namespace powerlim
