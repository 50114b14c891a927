#include "powerlim/expflow.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "powerlim/graded.hpp"
#include "powerlim/jordan.hpp"
#include "powerlim/yamamoto.hpp"

namespace powerlim {

namespace {

constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

double resolve_tol(const ComplexMatrix& a, double cluster_tol) {
  return cluster_tol < 0.0 ? default_cluster_tol(a) : cluster_tol;
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& a) {
  require_square_finite(a, "expm");
  const Index m = a.rows();
  const double norm = op_norm(a);
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix x = a / std::ldexp(1.0, s);

  const ComplexMatrix id = ComplexMatrix::Identity(m, m);
  const ComplexMatrix x2 = x * x;
  const ComplexMatrix x4 = x2 * x2;
  const ComplexMatrix x6 = x4 * x2;
  const auto& b = kPade13;
  const ComplexMatrix u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 +
                                b[5] * x4 + b[3] * x2 + b[1] * id;
  const ComplexMatrix u = x * u_inner;
  const ComplexMatrix v =
      x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

  Eigen::PartialPivLU<ComplexMatrix> lu(v - u);
  ComplexMatrix r = lu.solve(v + u);
  if (!r.allFinite()) throw InternalError("expm: singular Pade denominator");
  for (int i = 0; i < s; ++i) r = r * r;
  return r;
}

RealPartFlag realpart_flag(const ComplexMatrix& a, double cluster_tol) {
  require_square_finite(a, "realpart_flag");
  RealPartFlag flag;
  static_cast<NestedFlag&>(flag) =
      build_flag(schur(a), [](Complex z) { return z.real(); }, cluster_tol);
  return flag;
}

RealPartFlag realpart_flag(const ComplexMatrix& a) {
  return realpart_flag(a, default_cluster_tol(a));
}

PsdMatrix exp_limit_matrix(const ComplexMatrix& a, double cluster_tol) {
  return realpart_flag(a, cluster_tol).weighted_sum([](double h) { return std::exp(h); });
}

PsdMatrix exp_limit_matrix(const ComplexMatrix& a) {
  return exp_limit_matrix(a, default_cluster_tol(a));
}

PsdMatrix exp_iterate_limit(const ComplexMatrix& a, unsigned k) {
  return iterate_limit(expm(a), k);
}

TrajectoryReport trajectory_growth(const ComplexMatrix& a, const ComplexVector& x0,
                                   const TrajectoryOptions& options) {
  require_square_finite(a, "trajectory_growth");
  require_nonzero_vector(x0, "trajectory_growth");
  if (x0.size() != a.rows()) throw DomainError("trajectory_growth: dimension mismatch");

  const RealPartFlag flag = realpart_flag(a, resolve_tol(a, options.cluster_tol));
  TrajectoryReport report;
  report.initial = x0;
  report.shell_index = flag.shell_of(x0, options.mem_tol);
  report.realpart = flag.realparts()[report.shell_index - 1];
  report.growth_base = std::exp(report.realpart);

  const double spread = flag.realparts().back() - flag.realparts().front();
  const double margin = 0.1 * std::max(1.0, spread);
  BoundWitness& w = report.witness;
  w.rho = report.realpart - margin;
  w.omega = report.realpart + margin;
  w.check_from = options.check_from;

  const double log_x = std::log(x0.norm());
  GradedPower g = graded_factor(expm(a));
  for (unsigned i = 0; i <= options.grid_k; ++i) {
    if (i > 0) g = graded_square(g);
    const double t = std::ldexp(1.0, static_cast<int>(i));
    const double ln = graded_log_norm(g, x0);
    const double rate = (ln - log_x) / t;
    w.samples.push_back({t, ln, rate});
    if (t >= w.check_from && !(w.rho < rate && rate < w.omega)) w.holds = false;
  }
  return report;
}

FlowInvarianceTrace trajectory_shell_invariance(const ComplexMatrix& a, const ComplexVector& x0,
                                                const std::vector<double>& s_grid,
                                                double cluster_tol, double mem_tol) {
  require_square_finite(a, "trajectory_shell_invariance");
  require_nonzero_vector(x0, "trajectory_shell_invariance");
  const RealPartFlag flag = realpart_flag(a, resolve_tol(a, cluster_tol));
  FlowInvarianceTrace trace;
  trace.initial_shell = flag.shell_of(x0, mem_tol);
  for (double s : s_grid) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw DomainError("trajectory_shell_invariance: grid times must be finite and >= 0");
    }
    const ComplexVector y = expm(s * a) * x0;
    const std::size_t shell = flag.shell_of(y, mem_tol);
    if (shell != trace.initial_shell) trace.invariant = false;
    trace.steps.push_back({s, shell});
  }
  return trace;
}

InterpolationConstants interpolation_constants(const ComplexMatrix& a, int samples) {
  require_square_finite(a, "interpolation_constants");
  if (samples < 1) throw DomainError("interpolation_constants: need at least one sample");
  InterpolationConstants out{1.0, 1.0};  // t = 0 gives ||I|| = 1 for both
  for (int i = 1; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    out.lower = std::min(out.lower, 1.0 / op_norm(expm(-t * a)));
    out.upper = std::max(out.upper, op_norm(expm(t * a)));
  }
  return out;
}

InterpolationCheck check_interpolation(const ComplexMatrix& a, unsigned k, double alpha,
                                       const InterpolationConstants& constants, double rel_tol) {
  require_square_finite(a, "check_interpolation");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("check_interpolation: alpha must lie in [0,1]");
  const double n = std::ldexp(1.0, static_cast<int>(k));
  const GradedPower base = graded_power(expm(a), k);
  const PsdMatrix x = graded_abs_power(graded_svd(base), 1.0 / n);
  const PsdMatrix y =
      graded_abs_power(graded_svd(graded_premultiply(expm(alpha * a), base)), 1.0 / n);

  const double lo = std::pow(constants.lower, 1.0 / n);
  const double hi = std::pow(constants.upper, 1.0 / n);
  auto min_eig = [](const ComplexMatrix& m) {
    return herm_eig(HermitianMatrix(m, 1.0)).values(0);
  };
  InterpolationCheck out;
  out.scale = x.eigenvalues().maxCoeff();
  out.lower_margin = min_eig(y.matrix() - lo * x.matrix());
  out.upper_margin = min_eig(hi * x.matrix() - y.matrix());
  const double slack = rel_tol * std::max(1.0, out.scale);
  out.passed = out.lower_margin >= -slack && out.upper_margin >= -slack;
  return out;
}

}  // namespace powerlim
