#include "powerlim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "powerlim/graded.hpp"
#include "powerlim/random.hpp"

namespace powerlim {

namespace {

double trace_power(const RealVector& s, double p) {
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > 0.0) acc += std::pow(s(i), p);
  }
  return acc;
}

void require_positive(double p, const char* op) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError(std::string(op) + ": exponent must be positive");
}

ComplexMatrix plain_power(const ComplexMatrix& a, std::uint64_t n) {
  ComplexMatrix out = a;
  for (std::uint64_t i = 1; i < n; ++i) out = out * a;
  return out;
}

std::string describe(const char* what, Index dim, double param) {
  std::ostringstream os;
  os << what << " m=" << dim << " param=" << param;
  return os.str();
}

}  // namespace

CheckResult make_check(std::string name, double lhs, double rhs, std::string context,
                       double check_tol) {
  CheckResult r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.scale = std::max(1.0, std::abs(rhs));
  r.passed = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + check_tol * r.scale;
  r.context = std::move(context);
  return r;
}

CheckResult check_weyl_perturbation(const HermitianMatrix& h1, const HermitianMatrix& h2) {
  if (h1.dim() != h2.dim()) throw DomainError("check_weyl_perturbation: dimension mismatch");
  const RealVector s1 = svd(h1.matrix()).s;
  const RealVector s2 = svd(h2.matrix()).s;
  const double lhs = (s1 - s2).cwiseAbs().maxCoeff();
  const double rhs = op_norm(h1.matrix() - h2.matrix());
  return make_check("weyl_perturbation", lhs, rhs, describe("hermitian pair", h1.dim(), 0.0));
}

CheckResult check_eig_trace_dominance(const ComplexMatrix& a, double p) {
  require_square_finite(a, "check_eig_trace_dominance");
  require_positive(p, "check_eig_trace_dominance");
  const ComplexVector eigs = schur(a).eigenvalues();
  double lhs = 0.0;
  for (Index i = 0; i < eigs.size(); ++i) {
    const double mod = std::abs(eigs(i));
    if (mod > 0.0) lhs += std::pow(mod, p);
  }
  const double rhs = trace_power(svd(a).s, p);
  return make_check("eig_trace_dominance", lhs, rhs, describe("A", a.rows(), p));
}

CheckResult check_holder_trace(const std::vector<ComplexMatrix>& factors,
                               const std::vector<double>& exponents, double r) {
  if (factors.empty() || factors.size() != exponents.size()) {
    throw DomainError("check_holder_trace: need one exponent per factor");
  }
  require_positive(r, "check_holder_trace");
  double inv_sum = 0.0;
  for (double p : exponents) {
    require_positive(p, "check_holder_trace");
    inv_sum += 1.0 / p;
  }
  if (std::abs(inv_sum - 1.0 / r) > 1e-12 * std::max(1.0, 1.0 / r)) {
    throw DomainError("check_holder_trace: sum of 1/p_i must equal 1/r");
  }
  ComplexMatrix product = factors.front();
  double rhs = 1.0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    require_square_finite(factors[i], "check_holder_trace");
    if (i > 0) product = product * factors[i];
    rhs *= std::pow(trace_power(svd(factors[i]).s, exponents[i]), 1.0 / exponents[i]);
  }
  const double lhs = std::pow(trace_power(svd(product).s, r), 1.0 / r);
  return make_check("holder_trace_k" + std::to_string(factors.size()), lhs, rhs,
                    describe("factors", product.rows(), r));
}

CheckResult check_three_factor(const ComplexMatrix& a, const ComplexMatrix& b,
                               const ComplexMatrix& c, double p) {
  require_positive(p, "check_three_factor");
  const double lhs = trace_power(svd(a * b * c).s, p);
  const double rhs = std::pow(op_norm(a), p) * std::pow(op_norm(c), p) * trace_power(svd(b).s, p);
  return make_check("three_factor", lhs, rhs, describe("A,B,C", a.rows(), p));
}

CheckResult check_power_trace_monotone(const ComplexMatrix& a, double p, std::uint64_t n) {
  require_square_finite(a, "check_power_trace_monotone");
  require_positive(p, "check_power_trace_monotone");
  if (n < 1) throw DomainError("check_power_trace_monotone: n must be >= 1");
  const GradedSvd d = graded_svd(graded_power_n(a, n));
  double lhs = 0.0;
  const double q = p / static_cast<double>(n);
  for (Index i = 0; i < d.log_singular_values.size(); ++i) {
    const double l = d.log_singular_values(i);
    if (l != kNegInf) lhs += std::exp(q * l);
  }
  const double rhs = trace_power(svd(a).s, p);
  return make_check("power_trace_monotone_n" + std::to_string(n), lhs, rhs,
                    describe("A", a.rows(), p));
}

CheckResult check_jensen_vector(const ComplexMatrix& a, const ComplexVector& x, double alpha,
                                std::uint64_t n) {
  require_square_finite(a, "check_jensen_vector");
  if (std::abs(x.norm() - 1.0) > 1e-12) throw DomainError("check_jensen_vector: x must be a unit vector");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("check_jensen_vector: alpha must lie in [0,1]");
  if (n < 1) throw DomainError("check_jensen_vector: n must be >= 1");
  const ComplexMatrix an = plain_power(a, n);
  // H^0 is read as the identity.
  const double lhs = alpha == 0.0 ? x.norm() : (psd_power(abs_psd(an), alpha).matrix() * x).norm();
  const double rhs = std::pow((an * x).norm(), alpha);
  return make_check("jensen_vector", lhs, rhs, describe("A,x", a.rows(), alpha));
}

ComplexMatrix graded_conjugation(const ComplexMatrix& a, double n) {
  require_square_finite(a, "graded_conjugation");
  if (!(n >= 1.0)) throw DomainError("graded_conjugation: n must be >= 1");
  const bool triangular = a.triangularView<Eigen::StrictlyLower>().toDenseMatrix().isZero(0.0);
  ComplexMatrix t = triangular ? a : schur(a).triangular;
  const Index m = t.rows();
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < j; ++i) t(i, j) /= std::pow(n, static_cast<double>(j - i));
  }
  return t;
}

PsdMatrix brute_force_limit(const ComplexMatrix& a, std::uint64_t n) {
  require_square_finite(a, "brute_force_limit");
  if (n < 1 || n > 512) throw DomainError("brute_force_limit: n must lie in [1, 512]");
  ComplexMatrix p = a;
  for (std::uint64_t i = 1; i < n; ++i) {
    p = p * a;
    if (p.cwiseAbs().maxCoeff() > 1e150) {
      throw RangeError("brute_force_limit: A^n left double range; prescale A to unit spectral radius");
    }
  }
  return psd_power(abs_psd(p), 1.0 / static_cast<double>(n));
}

SuiteResult run_inequality_suite(const SuiteConfig& config) {
  if (config.min_dim < 1 || config.max_dim < config.min_dim) {
    throw DomainError("run_inequality_suite: invalid dimension range");
  }
  for (double p : config.p_values) require_positive(p, "run_inequality_suite");

  SuiteResult out;
  auto record = [&](CheckResult r) {
    if (!r.passed) ++out.failures;
    out.results.push_back(std::move(r));
  };
  auto stream = [&](std::uint64_t family, std::uint64_t i) {
    return substream(config.seed, (family << 32) + i);
  };
  auto pick_dim = [&](Rng& rng) {
    return std::uniform_int_distribution<Index>(config.min_dim, config.max_dim)(rng);
  };

  for (std::size_t i = 0; i < config.instances; ++i) {
    Rng rng = stream(0, i);
    const Index m = pick_dim(rng);
    record(check_weyl_perturbation(random_hermitian(rng, m), random_hermitian(rng, m)));
  }
  for (std::size_t i = 0; i < config.instances; ++i) {
    Rng rng = stream(1, i);
    const Index m = pick_dim(rng);
    const ComplexMatrix a = gaussian_matrix(rng, m, m);
    for (double p : config.p_values) record(check_eig_trace_dominance(a, p));
  }
  for (std::size_t k : {std::size_t{2}, std::size_t{3}}) {
    for (std::size_t i = 0; i < config.instances; ++i) {
      Rng rng = stream(k, i);  // families 2 and 3
      const Index m = pick_dim(rng);
      std::uniform_real_distribution<double> weight(0.2, 1.0);
      const double r = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
      std::vector<double> w(k);
      double total = 0.0;
      for (auto& v : w) total += (v = weight(rng));
      std::vector<double> exponents;
      std::vector<ComplexMatrix> factors;
      for (std::size_t f = 0; f < k; ++f) {
        exponents.push_back(r * total / w[f]);
        factors.push_back(gaussian_matrix(rng, m, m));
      }
      record(check_holder_trace(factors, exponents, r));
    }
  }
  for (std::size_t i = 0; i < config.instances; ++i) {
    Rng rng = stream(4, i);
    const Index m = pick_dim(rng);
    const ComplexMatrix a = gaussian_matrix(rng, m, m);
    const ComplexMatrix b = gaussian_matrix(rng, m, m);
    const ComplexMatrix c = gaussian_matrix(rng, m, m);
    for (double p : config.p_values) record(check_three_factor(a, b, c, p));
  }
  for (std::size_t i = 0; i < config.instances; ++i) {
    Rng rng = stream(5, i);
    const Index m = pick_dim(rng);
    const ComplexMatrix a = gaussian_matrix(rng, m, m);
    for (std::uint64_t n : {2u, 4u, 8u}) {
      for (double p : config.p_values) record(check_power_trace_monotone(a, p, n));
    }
  }
  for (std::size_t i = 0; i < config.instances; ++i) {
    Rng rng = stream(6, i);
    const Index m = pick_dim(rng);
    const ComplexMatrix a = gaussian_matrix(rng, m, m);
    const ComplexVector x = random_unit_vector(rng, m);
    const auto n = std::uniform_int_distribution<std::uint64_t>(1, 4)(rng);
    for (double alpha : {0.0, 0.3, 0.7, 1.0}) record(check_jensen_vector(a, x, alpha, n));
  }
  if (config.inject_violation) {
    record(make_check("injected_violation", 1.0, 0.0, "deliberate failure"));
  }
  return out;
}

}  // namespace powerlim
