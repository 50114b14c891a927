#pragma once

// Log-domain carrier for large matrix powers.
//
// A normalized power exp(l) * B keeps only the dominant singular directions of A^n: every
// singular value below eps * s_1(A^n) is rounding noise in B. Limits such as
// |A^n|^{1/n} at n = 2^20 need all singular values, whose ratios reach exp(1e5) and more.
// GradedPower stores
//
//     A^n = left * diag(exp(log_scales)) * right
//
// with `left` unitary, `right` row-normalized and well conditioned, and the scales kept
// as logarithms. Products are refactored with Gaussian elimination under complete
// pivoting applied to the implicitly scaled matrix, which cancels the scales exactly
// from every Schur-complement update.

#include <cstdint>

#include "powerlim/matcore.hpp"

namespace powerlim {

struct GradedPower {
  ComplexMatrix left;     // unitary
  RealVector log_scales;  // natural log; kNegInf marks an exactly zero row
  ComplexMatrix right;
  std::uint64_t exponent = 1;

  Index dim() const noexcept { return left.rows(); }
};

/// Factors A itself (exponent 1).
GradedPower graded_factor(const ComplexMatrix& a);

/// x * y; exponents add.
GradedPower graded_multiply(const GradedPower& x, const GradedPower& y);

GradedPower graded_square(const GradedPower& x);

/// A^n for n = 2^k by k squarings.
GradedPower graded_power(const ComplexMatrix& a, unsigned k);

/// A^n for arbitrary n >= 1 by binary powering.
GradedPower graded_power_n(const ComplexMatrix& a, std::uint64_t n);

/// B * (carried matrix); the exponent is left unchanged.
GradedPower graded_premultiply(const ComplexMatrix& b, const GradedPower& g);

/// Dense value; only meaningful when the scales fit in double range.
ComplexMatrix graded_value(const GradedPower& g);

struct GradedSvd {
  RealVector log_singular_values;  // descending, kNegInf for zero singular values
  ComplexMatrix right_vectors;     // columns match log_singular_values
};

/// Singular values (as logarithms) and right singular vectors of the carried matrix.
/// Rows whose scales differ by more than exp(40) are decoupled; within a band the SVD
/// is computed directly.
GradedSvd graded_svd(const GradedPower& g);

/// ln ||M x|| for the carried matrix M.
double graded_log_norm(const GradedPower& g, const ComplexVector& x);

/// |M|^q = V diag(s^q) V* from a graded SVD (q > 0).
PsdMatrix graded_abs_power(const GradedSvd& d, double q);

}  // namespace powerlim
