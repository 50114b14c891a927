#pragma once

#include <initializer_list>

#include "powerlim/matcore.hpp"

namespace testing {

using powerlim::Complex;
using powerlim::ComplexMatrix;
using powerlim::ComplexVector;

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline ComplexVector vec(std::initializer_list<Complex> v) {
  ComplexVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const auto& e : v) x(i++) = e;
  return x;
}

inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) { return powerlim::op_norm(a - b); }

inline ComplexMatrix diag(std::initializer_list<Complex> v) {
  const ComplexVector d = vec(v);
  return d.asDiagonal();
}

}  // namespace testing
