#include "powerlim/graded.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

namespace powerlim {

namespace {

// Bands of log-scales further apart than this are treated as decoupled.
constexpr double kBandGap = 40.0;

double log_abs(Complex z) {
  const double r = std::abs(z);
  return r > 0.0 ? std::log(r) : kNegInf;
}

Complex unit_phase(Complex z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : Complex{1.0, 0.0};
}

// exp(a - b) under the conventions of a non-increasing scale sequence:
// both -inf -> 1, only a -inf -> 0.
double scale_ratio(double a, double b) {
  if (b == kNegInf) return a == kNegInf ? 1.0 : 0.0;
  if (a == kNegInf) return 0.0;
  return std::exp(a - b);
}

// Rescales the tail of row i of w to unit max-modulus, folding the factor into row_log.
void normalize_row_tail(ComplexMatrix& w, RealVector& row_log, Index i, Index from) {
  const Index len = w.cols() - from;
  if (len <= 0 || row_log(i) == kNegInf) return;
  const double mx = w.row(i).tail(len).cwiseAbs().maxCoeff();
  if (mx == 0.0) {
    row_log(i) = kNegInf;
    return;
  }
  w.row(i).tail(len) /= mx;
  row_log(i) += std::log(mx);
}

struct Refactored {
  ComplexMatrix q;
  RealVector log_scales;
  ComplexMatrix t;
};

// diag(exp(row_log)) * w * diag(exp(col_log)) = q * diag(exp(log_scales)) * t
Refactored refactor(ComplexMatrix w, RealVector row_log, RealVector col_log) {
  const Index m = w.rows();
  std::vector<Index> rperm(static_cast<std::size_t>(m));
  std::vector<Index> cperm(static_cast<std::size_t>(m));
  std::iota(rperm.begin(), rperm.end(), Index{0});
  std::iota(cperm.begin(), cperm.end(), Index{0});

  ComplexMatrix lower = ComplexMatrix::Identity(m, m);
  ComplexMatrix upper = ComplexMatrix::Identity(m, m);
  RealVector piv_log = RealVector::Constant(m, kNegInf);
  ComplexVector piv_phase = ComplexVector::Ones(m);

  for (Index i = 0; i < m; ++i) normalize_row_tail(w, row_log, i, 0);

  for (Index k = 0; k < m; ++k) {
    double best = kNegInf;
    Index bi = k;
    Index bj = k;
    for (Index i = k; i < m; ++i) {
      if (row_log(i) == kNegInf) continue;
      for (Index j = k; j < m; ++j) {
        const double s = log_abs(w(i, j)) + row_log(i) + col_log(j);
        if (s > best) {
          best = s;
          bi = i;
          bj = j;
        }
      }
    }
    if (best == kNegInf) break;  // remaining scaled block is exactly zero

    if (bi != k) {
      w.row(k).swap(w.row(bi));
      if (k > 0) lower.row(k).head(k).swap(lower.row(bi).head(k));
      std::swap(row_log(k), row_log(bi));
      std::swap(rperm[static_cast<std::size_t>(k)], rperm[static_cast<std::size_t>(bi)]);
    }
    if (bj != k) {
      w.col(k).swap(w.col(bj));
      if (k > 0) upper.col(k).head(k).swap(upper.col(bj).head(k));
      std::swap(col_log(k), col_log(bj));
      std::swap(cperm[static_cast<std::size_t>(k)], cperm[static_cast<std::size_t>(bj)]);
    }

    const Complex pivot = w(k, k);
    const double lp = log_abs(pivot);
    const Complex pp = unit_phase(pivot);
    piv_log(k) = best;
    piv_phase(k) = pp;

    for (Index j = k + 1; j < m; ++j) {
      if (w(k, j) == 0.0 || col_log(j) == kNegInf) {
        upper(k, j) = 0.0;
        continue;
      }
      upper(k, j) = unit_phase(w(k, j)) / pp * std::exp(log_abs(w(k, j)) - lp + col_log(j) - col_log(k));
    }

    for (Index i = k + 1; i < m; ++i) {
      if (w(i, k) == 0.0 || row_log(i) == kNegInf) {
        lower(i, k) = 0.0;
        w(i, k) = 0.0;
        continue;
      }
      const double lw = log_abs(w(i, k));
      const Complex ph = unit_phase(w(i, k)) / pp;
      lower(i, k) = ph * std::exp(lw - lp + row_log(i) - row_log(k));
      const Index len = m - k - 1;
      const double g = lw - lp;  // log of the unscaled multiplier
      if (len > 0) {
        if (g > 0.0) {
          // Rescale row i first so the multiplier applied to row k has unit modulus.
          w.row(i).tail(len) = w.row(i).tail(len) * std::exp(-g) - ph * w.row(k).tail(len);
          row_log(i) += g;
        } else {
          w.row(i).tail(len) -= (ph * std::exp(g)) * w.row(k).tail(len);
        }
      }
      w(i, k) = 0.0;
      normalize_row_tail(w, row_log, i, k + 1);
    }
  }

  // Undo the permutations: M = lp * diag(pivots) * up.
  ComplexMatrix lp_mat(m, m);
  ComplexMatrix up_mat(m, m);
  for (Index a = 0; a < m; ++a) {
    lp_mat.row(rperm[static_cast<std::size_t>(a)]) = lower.row(a);
    up_mat.col(cperm[static_cast<std::size_t>(a)]) = upper.col(a);
  }

  Eigen::HouseholderQR<ComplexMatrix> qr(lp_mat);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();

  // R diag(phase) |Delta| = |Delta| * (|Delta|^{-1} R diag(phase) |Delta|)
  ComplexMatrix scaled_r = ComplexMatrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = i; j < m; ++j) {
      scaled_r(i, j) = r(i, j) * piv_phase(j) * scale_ratio(piv_log(j), piv_log(i));
    }
  }
  return {std::move(q), std::move(piv_log), scaled_r * up_mat};
}

// Moves row norms of `right` into the log-scales.
void normalize_rows(GradedPower& g) {
  for (Index i = 0; i < g.right.rows(); ++i) {
    const double nrm = g.right.row(i).norm();
    if (nrm == 0.0) {
      g.log_scales(i) = kNegInf;
      continue;
    }
    g.right.row(i) /= nrm;
    if (g.log_scales(i) != kNegInf) g.log_scales(i) += std::log(nrm);
  }
}

}  // namespace

GradedPower graded_factor(const ComplexMatrix& a) {
  require_square_finite(a, "graded_factor");
  const Index m = a.rows();
  Refactored f = refactor(a, RealVector::Zero(m), RealVector::Zero(m));
  GradedPower g{std::move(f.q), std::move(f.log_scales), std::move(f.t), 1};
  normalize_rows(g);
  return g;
}

GradedPower graded_multiply(const GradedPower& x, const GradedPower& y) {
  if (x.dim() != y.dim()) throw DomainError("graded_multiply: dimension mismatch");
  Refactored f = refactor(x.right * y.left, x.log_scales, y.log_scales);
  GradedPower g{x.left * f.q, std::move(f.log_scales), f.t * y.right, x.exponent + y.exponent};
  normalize_rows(g);
  return g;
}

GradedPower graded_square(const GradedPower& x) { return graded_multiply(x, x); }

GradedPower graded_power(const ComplexMatrix& a, unsigned k) {
  if (k >= 63) throw DomainError("graded_power: K must be below 63");
  GradedPower g = graded_factor(a);
  for (unsigned i = 0; i < k; ++i) g = graded_square(g);
  return g;
}

GradedPower graded_power_n(const ComplexMatrix& a, std::uint64_t n) {
  if (n == 0) throw DomainError("graded_power_n: exponent must be at least 1");
  GradedPower base = graded_factor(a);
  std::optional<GradedPower> acc;
  while (true) {
    if (n & 1U) acc = acc ? graded_multiply(*acc, base) : base;
    n >>= 1U;
    if (n == 0) break;
    base = graded_square(base);
  }
  return *acc;
}

GradedPower graded_premultiply(const ComplexMatrix& b, const GradedPower& g) {
  if (b.rows() != g.dim() || b.cols() != g.dim()) {
    throw DomainError("graded_premultiply: dimension mismatch");
  }
  const Index m = g.dim();
  Refactored f = refactor(b * g.left, RealVector::Zero(m), g.log_scales);
  GradedPower out{std::move(f.q), std::move(f.log_scales), f.t * g.right, g.exponent};
  normalize_rows(out);
  return out;
}

ComplexMatrix graded_value(const GradedPower& g) {
  const RealVector scales = g.log_scales.unaryExpr([](double l) { return std::exp(l); });
  return g.left * scales.cast<Complex>().asDiagonal() * g.right;
}

GradedSvd graded_svd(const GradedPower& g) {
  const Index m = g.dim();
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return g.log_scales(a) > g.log_scales(b);
  });

  ComplexMatrix t(m, m);
  RealVector ls(m);
  for (Index a = 0; a < m; ++a) {
    t.row(a) = g.right.row(order[static_cast<std::size_t>(a)]);
    ls(a) = g.log_scales(order[static_cast<std::size_t>(a)]);
  }

  // T = L Q* with L lower triangular, so diag(exp(ls)) T = diag(exp(ls)) L Q*.
  Eigen::HouseholderQR<ComplexMatrix> qr(t.adjoint());
  const ComplexMatrix q = qr.householderQ();
  const ComplexMatrix lower = qr.matrixQR().triangularView<Eigen::Upper>().toDenseMatrix().adjoint();

  RealVector log_sv(m);
  ComplexMatrix blocks = ComplexMatrix::Identity(m, m);
  Index a = 0;
  while (a < m) {
    Index b = a + 1;
    if (ls(a) != kNegInf) {
      while (b < m && ls(b) != kNegInf && ls(b - 1) - ls(b) <= kBandGap) ++b;
    } else {
      b = m;
    }
    const Index len = b - a;
    if (ls(a) == kNegInf) {
      log_sv.segment(a, len).setConstant(kNegInf);
    } else {
      ComplexMatrix band(len, len);
      for (Index r = 0; r < len; ++r) {
        const double scale = std::exp(ls(a + r) - ls(a));
        for (Index c = 0; c < len; ++c) {
          band(r, c) = c <= r ? scale * lower(a + r, a + c) : Complex{0.0, 0.0};
        }
      }
      Eigen::JacobiSVD<ComplexMatrix> solver(band, Eigen::ComputeFullV);
      for (Index r = 0; r < len; ++r) {
        const double s = solver.singularValues()(r);
        log_sv(a + r) = s > 0.0 ? ls(a) + std::log(s) : kNegInf;
      }
      blocks.block(a, a, len, len) = solver.matrixV();
    }
    a = b;
  }

  const ComplexMatrix vectors = q * blocks;
  std::vector<Index> by_value(static_cast<std::size_t>(m));
  std::iota(by_value.begin(), by_value.end(), Index{0});
  std::stable_sort(by_value.begin(), by_value.end(),
                   [&](Index x, Index y) { return log_sv(x) > log_sv(y); });
  GradedSvd out{RealVector(m), ComplexMatrix(m, m)};
  for (Index i = 0; i < m; ++i) {
    out.log_singular_values(i) = log_sv(by_value[static_cast<std::size_t>(i)]);
    out.right_vectors.col(i) = vectors.col(by_value[static_cast<std::size_t>(i)]);
  }
  return out;
}

double graded_log_norm(const GradedPower& g, const ComplexVector& x) {
  if (x.size() != g.dim()) throw DomainError("graded_log_norm: dimension mismatch");
  const ComplexVector y = g.right * x;
  double top = kNegInf;
  for (Index i = 0; i < y.size(); ++i) top = std::max(top, g.log_scales(i) + log_abs(y(i)));
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (Index i = 0; i < y.size(); ++i) {
    const double term = g.log_scales(i) + log_abs(y(i));
    if (term != kNegInf) acc += std::exp(2.0 * (term - top));
  }
  return top + 0.5 * std::log(acc);
}

PsdMatrix graded_abs_power(const GradedSvd& d, double q) {
  if (!(q > 0.0)) throw DomainError("graded_abs_power: exponent must be positive");
  const RealVector values = d.log_singular_values.unaryExpr([q](double l) {
    return l == kNegInf ? 0.0 : std::exp(q * l);
  });
  return PsdMatrix::from_spectrum(d.right_vectors, values);
}

}  // namespace powerlim
