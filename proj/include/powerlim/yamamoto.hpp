#pragma once

// Asymptotics of |A^n|^{1/n}.
//
// Closed form: with 0 <= a_1 < ... < a_k the distinct eigenvalue moduli of A and E_j the
// orthogonal projection onto the sum of generalized eigenspaces of eigenvalues with
// |lambda| <= a_j,
//
//     lim_n |A^n|^{1/n} = H = sum_j a_j (E_j - E_{j-1}),
//
// and a nonzero x grows like a_j (lim ||A^n x||^{1/n} = a_j) exactly when x lies in
// ran(E_j) but not in ran(E_{j-1}). The iterative side evaluates the sequence itself at
// n = 2^K through the log-domain carrier in graded.hpp.

#include <cstdint>
#include <optional>
#include <vector>

#include "powerlim/flag.hpp"
#include "powerlim/matcore.hpp"

namespace powerlim {

/// Flag of a matrix ordered by eigenvalue modulus; levels are the moduli a_j.
struct ModulusFlag : NestedFlag {
  const std::vector<double>& moduli() const noexcept { return levels; }
};

ModulusFlag modulus_flag(const ComplexMatrix& a, double cluster_tol);
ModulusFlag modulus_flag(const ComplexMatrix& a);

struct AsymptoticLimit {
  PsdMatrix h;
  ModulusFlag flag;
};

AsymptoticLimit limit_matrix(const ComplexMatrix& a, double cluster_tol);
AsymptoticLimit limit_matrix(const ComplexMatrix& a);

/// |A^n|^{1/n} at n = 2^K.
PsdMatrix iterate_limit(const ComplexMatrix& a, unsigned k);

struct SeriesPoint {
  unsigned k;      // n = 2^k
  double n;
  double value;
};

struct GrowthReport {
  ComplexVector vector;
  std::size_t shell_index = 0;  // 1-based
  double exponent = 0.0;        // moduli[shell_index - 1]
  std::vector<SeriesPoint> series;  // ||A^n x||^{1/n}, filled by growth_report
};

/// Shell membership: the smallest j with ||E_j x - x|| <= mem_tol ||x||.
GrowthReport growth_exponent_exact(const ModulusFlag& flag, const ComplexVector& x,
                                   double mem_tol = tol::kMembership);

struct IterativeGrowth {
  double value = 0.0;               // ||A^n x||^{1/n} at n = 2^K
  std::vector<SeriesPoint> series;  // K' = 1..K
};

IterativeGrowth growth_exponent_iterative(const ComplexMatrix& a, const ComplexVector& x,
                                          unsigned k);

/// Exact shell plus the finite-n series up to 2^K.
GrowthReport growth_report(const ComplexMatrix& a, const ModulusFlag& flag, const ComplexVector& x,
                           unsigned k, double mem_tol = tol::kMembership);

struct InvarianceStep {
  std::size_t step;
  double log_norm;                   // ln ||A^i x||; -inf once the orbit vanished
  std::optional<std::size_t> shell;  // nullopt: A^i x = 0
};

struct InvarianceTrace {
  std::size_t initial_shell = 0;
  bool invariant = true;   // every non-degenerate iterate stayed in the initial shell
  bool degenerate = false;  // the orbit reached zero
  std::vector<InvarianceStep> steps;
};

/// Follows A^i x for i = 1..steps and compares shell indices with that of x.
InvarianceTrace shell_invariance_check(const ComplexMatrix& a, const NestedFlag& flag,
                                       const ComplexVector& x, std::size_t steps,
                                       double mem_tol = tol::kMembership);

struct SingularValueLimits {
  std::vector<double> limits;                     // |lambda_j|(A), descending
  std::vector<std::vector<SeriesPoint>> series;   // series[j]: s_j(A^n)^{1/n}, K' = 1..K
};

SingularValueLimits singular_value_limits(const ComplexMatrix& a, double cluster_tol, unsigned k);

/// tr(|A^n|^{p/n}) for n = 2^K', K' = 0..K.
std::vector<SeriesPoint> trace_convergence(const ComplexMatrix& a, double p, unsigned k);

}  // namespace powerlim
