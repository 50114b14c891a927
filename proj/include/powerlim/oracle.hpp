#pragma once

// Brute-force references and inequality checkers.
//
// Each check_* evaluates both sides of a trace or norm inequality directly and reports
// lhs <= rhs + check_tol * max(1, |rhs|).

#include <cstdint>
#include <string>
#include <vector>

#include "powerlim/matcore.hpp"

namespace powerlim {

namespace tol {
inline constexpr double kCheck = 1e-9;
}  // namespace tol

struct CheckResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool passed = false;
  std::string context;
  double scale = 1.0;  // max(1, |rhs|)
};

CheckResult make_check(std::string name, double lhs, double rhs, std::string context,
                       double check_tol = tol::kCheck);

/// max_j |s_j(H1) - s_j(H2)| <= ||H1 - H2||.
CheckResult check_weyl_perturbation(const HermitianMatrix& h1, const HermitianMatrix& h2);

/// sum |lambda_i(A)|^p <= tr(|A|^p).
CheckResult check_eig_trace_dominance(const ComplexMatrix& a, double p);

/// tr(|A_1 ... A_k|^r)^{1/r} <= prod_i tr(|A_i|^{p_i})^{1/p_i} with sum 1/p_i = 1/r.
CheckResult check_holder_trace(const std::vector<ComplexMatrix>& factors,
                               const std::vector<double>& exponents, double r);

/// tr(|ABC|^p) <= ||A||^p ||C||^p tr(|B|^p).
CheckResult check_three_factor(const ComplexMatrix& a, const ComplexMatrix& b,
                               const ComplexMatrix& c, double p);

/// tr(|A^n|^{p/n}) <= tr(|A|^p).
CheckResult check_power_trace_monotone(const ComplexMatrix& a, double p, std::uint64_t n);

/// || |A^n|^alpha x || <= ||A^n x||^alpha for unit x and alpha in [0,1].
CheckResult check_jensen_vector(const ComplexMatrix& a, const ComplexVector& x, double alpha,
                                std::uint64_t n);

/// W_n T W_n^{-1} with W_n = diag(1, n, ..., n^{m-1}); entry (i,j) becomes T(i,j) / n^{j-i}.
/// Non-triangular input is replaced by its Schur triangle first.
ComplexMatrix graded_conjugation(const ComplexMatrix& a, double n);

/// |A^n|^{1/n} from n - 1 plain multiplications. Entries above 1e150 raise RangeError.
PsdMatrix brute_force_limit(const ComplexMatrix& a, std::uint64_t n);

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t instances = 200;
  Index min_dim = 2;
  Index max_dim = 8;
  std::vector<double> p_values{0.5, 1.0, 2.0};
  bool inject_violation = false;  // appends a deliberately false check
};

struct SuiteResult {
  std::vector<CheckResult> results;  // every evaluated check, in a fixed order
  std::size_t failures = 0;
  bool all_passed() const noexcept { return failures == 0; }
};

/// All inequality checks over seeded random instances. Check family f, instance i uses
/// substream(seed, f * 2^32 + i), so results do not depend on evaluation order.
SuiteResult run_inequality_suite(const SuiteConfig& config);

}  // namespace powerlim
