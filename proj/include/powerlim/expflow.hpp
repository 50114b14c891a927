#pragma once

// Exponential flows t -> e^{tA}.
//
// With h_1 < ... < h_k the distinct real parts of the eigenvalues of A and F_j the
// orthogonal projection onto the generalized eigenspaces with Re(lambda) <= h_j,
//
//     lim_{t -> inf} |e^{tA}|^{1/t} = sum_j e^{h_j} (F_j - F_{j-1}),
//
// and ||e^{tA} x||^{1/t} -> e^{h_j} exactly for x in ran(F_j) \ ran(F_{j-1}).
// Limits are evaluated at integer t = 2^K.

#include <vector>

#include "powerlim/flag.hpp"
#include "powerlim/matcore.hpp"

namespace powerlim {

/// e^A by scaling and squaring with the degree-13 diagonal Pade approximant.
ComplexMatrix expm(const ComplexMatrix& a);

struct RealPartFlag : NestedFlag {
  const std::vector<double>& realparts() const noexcept { return levels; }
};

RealPartFlag realpart_flag(const ComplexMatrix& a, double cluster_tol);
RealPartFlag realpart_flag(const ComplexMatrix& a);

PsdMatrix exp_limit_matrix(const ComplexMatrix& a, double cluster_tol);
PsdMatrix exp_limit_matrix(const ComplexMatrix& a);

/// |e^{nA}|^{1/n} at n = 2^K.
PsdMatrix exp_iterate_limit(const ComplexMatrix& a, unsigned k);

struct TrajectorySample {
  double t;
  double log_norm;  // ln ||e^{tA} x0||
  double rate;      // (log_norm - ln ||x0||) / t
};

struct BoundWitness {
  double rho = 0.0;
  double omega = 0.0;
  std::vector<TrajectorySample> samples;  // t = 1, 2, 4, ..., 2^K
  double check_from = 64.0;
  bool holds = true;  // rho < rate < omega for every sample with t >= check_from
};

struct TrajectoryReport {
  ComplexVector initial;
  std::size_t shell_index = 0;  // 1-based
  double realpart = 0.0;        // h_j
  double growth_base = 0.0;     // e^{h_j}
  BoundWitness witness;
};

struct TrajectoryOptions {
  double cluster_tol = -1.0;  // negative: default_cluster_tol(a)
  double mem_tol = tol::kMembership;
  unsigned grid_k = 10;       // largest sample time 2^grid_k
  double check_from = 64.0;
};

TrajectoryReport trajectory_growth(const ComplexMatrix& a, const ComplexVector& x0,
                                   const TrajectoryOptions& options = {});

struct FlowInvarianceStep {
  double s;
  std::size_t shell;
};

struct FlowInvarianceTrace {
  std::size_t initial_shell = 0;
  bool invariant = true;
  std::vector<FlowInvarianceStep> steps;
};

FlowInvarianceTrace trajectory_shell_invariance(const ComplexMatrix& a, const ComplexVector& x0,
                                                const std::vector<double>& s_grid,
                                                double cluster_tol = -1.0,
                                                double mem_tol = tol::kMembership);

/// c = min_{[0,1]} ||e^{-tA}||^{-1} and C = max_{[0,1]} ||e^{tA}||, sampled on a uniform grid.
struct InterpolationConstants {
  double lower = 0.0;  // c
  double upper = 0.0;  // C
};

InterpolationConstants interpolation_constants(const ComplexMatrix& a, int samples = 100);

struct InterpolationCheck {
  double lower_margin = 0.0;  // min eig(|e^{(n+alpha)A}|^{1/n} - c^{1/n} |e^{nA}|^{1/n})
  double upper_margin = 0.0;  // min eig(C^{1/n} |e^{nA}|^{1/n} - |e^{(n+alpha)A}|^{1/n})
  double scale = 0.0;         // || |e^{nA}|^{1/n} ||
  bool passed = false;
};

/// Two-sided Loewner bound between integer and shifted times at n = 2^K.
InterpolationCheck check_interpolation(const ComplexMatrix& a, unsigned k, double alpha,
                                       const InterpolationConstants& constants,
                                       double rel_tol = 1e-9);

}  // namespace powerlim
