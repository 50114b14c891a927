#include "powerlim/yamamoto.hpp"

#include <cmath>

#include "powerlim/graded.hpp"
#include "powerlim/jordan.hpp"

namespace powerlim {

namespace {

double power_of_two(unsigned k) { return std::ldexp(1.0, static_cast<int>(k)); }

double log_sum_exp_scaled(const RealVector& logs, double scale) {
  // sum_i exp(scale * logs_i); logs may contain -inf
  double acc = 0.0;
  for (Index i = 0; i < logs.size(); ++i) {
    if (logs(i) != kNegInf) acc += std::exp(scale * logs(i));
  }
  return acc;
}

}  // namespace

ModulusFlag modulus_flag(const ComplexMatrix& a, double cluster_tol) {
  require_square_finite(a, "modulus_flag");
  ModulusFlag flag;
  static_cast<NestedFlag&>(flag) =
      build_flag(schur(a), [](Complex z) { return std::abs(z); }, cluster_tol);
  return flag;
}

ModulusFlag modulus_flag(const ComplexMatrix& a) {
  return modulus_flag(a, default_cluster_tol(a));
}

AsymptoticLimit limit_matrix(const ComplexMatrix& a, double cluster_tol) {
  ModulusFlag flag = modulus_flag(a, cluster_tol);
  PsdMatrix h = flag.weighted_sum([](double level) { return level; });
  return {std::move(h), std::move(flag)};
}

AsymptoticLimit limit_matrix(const ComplexMatrix& a) {
  return limit_matrix(a, default_cluster_tol(a));
}

PsdMatrix iterate_limit(const ComplexMatrix& a, unsigned k) {
  require_square_finite(a, "iterate_limit");
  const GradedSvd d = graded_svd(graded_power(a, k));
  return graded_abs_power(d, 1.0 / power_of_two(k));
}

GrowthReport growth_exponent_exact(const ModulusFlag& flag, const ComplexVector& x, double mem_tol) {
  require_nonzero_vector(x, "growth_exponent_exact");
  GrowthReport report;
  report.vector = x;
  report.shell_index = flag.shell_of(x, mem_tol);
  report.exponent = flag.moduli()[report.shell_index - 1];
  return report;
}

IterativeGrowth growth_exponent_iterative(const ComplexMatrix& a, const ComplexVector& x,
                                          unsigned k) {
  require_square_finite(a, "growth_exponent_iterative");
  require_nonzero_vector(x, "growth_exponent_iterative");
  if (k < 1) throw DomainError("growth_exponent_iterative: K must be at least 1");
  if (x.size() != a.rows()) throw DomainError("growth_exponent_iterative: dimension mismatch");

  IterativeGrowth out;
  const double log_x = std::log(x.norm());
  GradedPower g = graded_factor(a);
  for (unsigned kk = 1; kk <= k; ++kk) {
    g = graded_square(g);
    const double n = power_of_two(kk);
    const double ln = graded_log_norm(g, x);
    const double value = ln == kNegInf ? 0.0 : std::exp((ln - log_x) / n);
    out.series.push_back({kk, n, value});
  }
  out.value = out.series.back().value;
  return out;
}

GrowthReport growth_report(const ComplexMatrix& a, const ModulusFlag& flag, const ComplexVector& x,
                           unsigned k, double mem_tol) {
  GrowthReport report = growth_exponent_exact(flag, x, mem_tol);
  report.series = growth_exponent_iterative(a, x, k).series;
  return report;
}

InvarianceTrace shell_invariance_check(const ComplexMatrix& a, const NestedFlag& flag,
                                       const ComplexVector& x, std::size_t steps, double mem_tol) {
  require_square_finite(a, "shell_invariance_check");
  require_nonzero_vector(x, "shell_invariance_check");
  InvarianceTrace trace;
  trace.initial_shell = flag.shell_of(x, mem_tol);

  const double a_norm = op_norm(a);
  ComplexVector y = x / x.norm();
  double log_norm = std::log(x.norm());
  for (std::size_t i = 1; i <= steps; ++i) {
    const ComplexVector next = a * y;
    const double nn = next.norm();
    // Relative to ||A|| the image of a unit vector is zero up to rounding.
    if (nn <= 1e-14 * a_norm || nn == 0.0) {
      trace.degenerate = true;
      trace.steps.push_back({i, kNegInf, std::nullopt});
      break;
    }
    y = next / nn;
    log_norm += std::log(nn);
    const std::size_t shell = flag.shell_of(y, mem_tol);
    if (shell != trace.initial_shell) trace.invariant = false;
    trace.steps.push_back({i, log_norm, shell});
  }
  return trace;
}

SingularValueLimits singular_value_limits(const ComplexMatrix& a, double cluster_tol, unsigned k) {
  require_square_finite(a, "singular_value_limits");
  SingularValueLimits out;
  out.limits = modulus_flag(a, cluster_tol).levels_descending();
  const Index m = a.rows();
  out.series.assign(static_cast<std::size_t>(m), {});
  GradedPower g = graded_factor(a);
  for (unsigned kk = 1; kk <= k; ++kk) {
    g = graded_square(g);
    const double n = power_of_two(kk);
    const GradedSvd d = graded_svd(g);
    for (Index j = 0; j < m; ++j) {
      const double l = d.log_singular_values(j);
      out.series[static_cast<std::size_t>(j)].push_back({kk, n, l == kNegInf ? 0.0 : std::exp(l / n)});
    }
  }
  return out;
}

std::vector<SeriesPoint> trace_convergence(const ComplexMatrix& a, double p, unsigned k) {
  require_square_finite(a, "trace_convergence");
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("trace_convergence: p must be positive");
  std::vector<SeriesPoint> out;
  GradedPower g = graded_factor(a);
  for (unsigned kk = 0; kk <= k; ++kk) {
    if (kk > 0) g = graded_square(g);
    const double n = power_of_two(kk);
    const GradedSvd d = graded_svd(g);
    out.push_back({kk, n, log_sum_exp_scaled(d.log_singular_values, p / n)});
  }
  return out;
}

}  // namespace powerlim
