#include "powerlim/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace powerlim {

namespace {

std::string format_complex(Complex z) {
  std::ostringstream out;
  out.precision(17);
  out << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return out.str();
}

}  // namespace

SeparationError::SeparationError(Complex first, Complex second, double threshold)
    : Error("eigenvalues " + format_complex(first) + " and " + format_complex(second) +
            " are closer than the separation threshold " + std::to_string(threshold)),
      first_(first),
      second_(second) {}

IllConditionedCluster::IllConditionedCluster(Complex center, const SeparationError& cause)
    : Error("ill-conditioned cluster at " + format_complex(center) + " (" + cause.what() +
            "); retry with a larger cluster tolerance"),
      center_(center) {}

void require_square_finite(const ComplexMatrix& a, std::string_view op) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw DomainError(std::string(op) + ": matrix must be square and non-empty, got " +
                      std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) throw DomainError(std::string(op) + ": matrix has non-finite entries");
}

void require_nonzero_vector(const ComplexVector& x, std::string_view op) {
  if (x.size() == 0 || !x.allFinite()) {
    throw DomainError(std::string(op) + ": vector must be non-empty and finite");
  }
  if (x.squaredNorm() == 0.0) throw DomainError(std::string(op) + ": vector must be non-zero");
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double herm_tol) {
  require_square_finite(m, "HermitianMatrix");
  const double skew = (m - m.adjoint()).norm();
  if (skew > herm_tol * m.norm()) {
    throw DomainError("HermitianMatrix: ||M - M*|| = " + std::to_string(skew) +
                      " exceeds tolerance");
  }
  m_ = (m + m.adjoint()) / 2.0;
}

PsdMatrix PsdMatrix::certify(const HermitianMatrix& h, double psd_tol) {
  const HermEig eig = herm_eig(h);
  const double floor = -psd_tol * h.matrix().norm();
  if (eig.values(0) < floor) {
    throw DomainError("PsdMatrix: smallest eigenvalue " + std::to_string(eig.values(0)) +
                      " is negative beyond tolerance");
  }
  return from_spectrum(eig.vectors, eig.values);
}

PsdMatrix PsdMatrix::from_spectrum(const ComplexMatrix& vectors, const RealVector& values) {
  const Index m = values.size();
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return values(a) < values(b); });

  RealVector sorted(m);
  ComplexMatrix vecs(vectors.rows(), m);
  for (Index i = 0; i < m; ++i) {
    sorted(i) = std::max(values(order[static_cast<std::size_t>(i)]), 0.0);
    vecs.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);
  }
  ComplexMatrix mat = vecs * sorted.cast<Complex>().asDiagonal() * vecs.adjoint();
  mat = ((mat + mat.adjoint()) / 2.0).eval();
  return PsdMatrix(std::move(mat), std::move(sorted), std::move(vecs));
}

SchurForm schur(const ComplexMatrix& a) {
  require_square_finite(a, "schur");
  const Index m = a.rows();
  Eigen::ComplexSchur<ComplexMatrix> solver(m);
  solver.setMaxIterations(tol::kSweepsPerRow * m);
  solver.compute(a, true);
  if (solver.info() != Eigen::Success) throw FactorizationError("schur", solver.getMaxIterations());

  SchurForm form{solver.matrixU(), solver.matrixT()};
  form.triangular.triangularView<Eigen::StrictlyLower>().setZero();
  return form;
}

namespace {

// Complex plane rotation [c s; -conj(s) c] with real c that annihilates g in (f, g).
struct Rotation {
  double c = 1.0;
  Complex s{0.0, 0.0};
};

Rotation make_rotation(Complex f, Complex g) {
  const double fa = std::abs(f);
  const double ga = std::abs(g);
  if (ga == 0.0) return {};
  if (fa == 0.0) return {0.0, std::conj(g) / ga};
  const double norm = std::hypot(fa, ga);
  return {fa / norm, (f / fa) * std::conj(g) / norm};
}

// x <- c x + s y ; y <- c y - conj(s) x
template <typename X, typename Y>
void apply_rotation(X&& x, Y&& y, double c, Complex s) {
  for (Index i = 0; i < x.size(); ++i) {
    const Complex xi = x(i);
    const Complex yi = y(i);
    x(i) = c * xi + s * yi;
    y(i) = c * yi - std::conj(s) * xi;
  }
}

}  // namespace

void swap_adjacent(ComplexMatrix& t, ComplexMatrix& q, Index k) {
  const Index n = t.rows();
  const Complex t11 = t(k, k);
  const Complex t22 = t(k + 1, k + 1);
  const Rotation rot = make_rotation(t(k, k + 1), t22 - t11);
  if (k + 2 < n) {
    apply_rotation(t.row(k).tail(n - k - 2).transpose(), t.row(k + 1).tail(n - k - 2).transpose(),
                   rot.c, rot.s);
  }
  if (k > 0) apply_rotation(t.col(k).head(k), t.col(k + 1).head(k), rot.c, std::conj(rot.s));
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
  apply_rotation(q.col(k), q.col(k + 1), rot.c, std::conj(rot.s));
}

SchurForm reorder_schur(SchurForm form, std::vector<int>& keys) {
  const Index m = form.triangular.rows();
  if (static_cast<Index>(keys.size()) != m) throw DomainError("reorder_schur: key count mismatch");
  // Bubble sort: only strictly out-of-order neighbours are swapped, so equal keys keep order.
  for (Index pass = 0; pass < m; ++pass) {
    bool swapped = false;
    for (Index k = 0; k + 1 < m - pass; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      if (keys[uk] > keys[uk + 1]) {
        swap_adjacent(form.triangular, form.unitary, k);
        std::swap(keys[uk], keys[uk + 1]);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  return form;
}

OrderedSchur ordered_schur(const ComplexMatrix& a, const std::function<bool(Complex)>& select) {
  SchurForm form = schur(a);
  const Index m = a.rows();
  std::vector<int> keys(static_cast<std::size_t>(m));
  Index selected = 0;
  for (Index i = 0; i < m; ++i) {
    const bool take = select(form.triangular(i, i));
    keys[static_cast<std::size_t>(i)] = take ? 0 : 1;
    selected += take ? 1 : 0;
  }
  form = reorder_schur(std::move(form), keys);
  return {std::move(form.unitary), std::move(form.triangular), selected};
}

HermEig herm_eig(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw FactorizationError("herm_eig", tol::kSweepsPerRow * h.dim());
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Svd svd(const ComplexMatrix& a) {
  if (!a.allFinite()) throw DomainError("svd: matrix has non-finite entries");
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) {
    throw FactorizationError("svd", tol::kSweepsPerRow * std::max(a.rows(), a.cols()));
  }
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

PsdMatrix abs_psd(const ComplexMatrix& a) {
  const Svd d = svd(a);
  return PsdMatrix::from_spectrum(d.v, d.s);
}

PsdMatrix psd_power(const PsdMatrix& h, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("psd_power: exponent must be positive");
  const RealVector powered = h.eigenvalues().unaryExpr([p](double v) {
    return v > 0.0 ? std::pow(v, p) : 0.0;
  });
  return PsdMatrix::from_spectrum(h.eigenvectors(), powered);
}

double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> solver(a);
  return solver.singularValues()(0);
}

ComplexMatrix ScaledPower::value() const {
  if (is_zero()) return ComplexMatrix::Zero(base.rows(), base.cols());
  return std::exp(log_scale) * base;
}

ScaledPower scaled_power(const ComplexMatrix& a, unsigned k) {
  require_square_finite(a, "scaled_power");
  if (k >= 64) throw DomainError("scaled_power: K must be below 64");
  const std::uint64_t n = std::uint64_t{1} << k;
  const Index m = a.rows();
  const double norm = op_norm(a);
  if (norm == 0.0) return {ComplexMatrix::Zero(m, m), kNegInf, n};

  ComplexMatrix base = a / norm;
  double log_scale = std::log(norm);
  for (unsigned i = 0; i < k; ++i) {
    ComplexMatrix sq = base * base;
    const double sq_norm = op_norm(sq);
    if (sq_norm == 0.0) return {ComplexMatrix::Zero(m, m), kNegInf, n};
    base = sq / sq_norm;
    log_scale = 2.0 * log_scale + std::log(sq_norm);
  }
  return {std::move(base), log_scale, n};
}

ComplexMatrix sylvester_solve(const ComplexMatrix& t11, const ComplexMatrix& t22,
                              const ComplexMatrix& c, double sep_rel) {
  const Index p = t11.rows();
  const Index q = t22.rows();
  if (t11.cols() != p || t22.cols() != q || c.rows() != p || c.cols() != q) {
    throw DomainError("sylvester_solve: dimension mismatch");
  }
  const double sep = sep_rel * (op_norm(t11) + op_norm(t22));
  ComplexMatrix x = ComplexMatrix::Zero(p, q);
  for (Index j = 0; j < q; ++j) {
    ComplexVector rhs = c.col(j);
    if (j > 0) rhs += x.leftCols(j) * t22.col(j).head(j);
    for (Index i = p - 1; i >= 0; --i) {
      Complex s = rhs(i);
      if (i + 1 < p) {
        s -= (t11.row(i).tail(p - i - 1).transpose().array() * x.col(j).tail(p - i - 1).array()).sum();
      }
      const Complex d = t11(i, i) - t22(j, j);
      if (std::abs(d) <= sep) throw SeparationError(t11(i, i), t22(j, j), sep);
      x(i, j) = s / d;
    }
  }
  return x;
}

double projection_distance(const ComplexMatrix& p1, const ComplexMatrix& p2) {
  return op_norm(p1 - p2);
}

}  // namespace powerlim
