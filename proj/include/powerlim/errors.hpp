#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace powerlim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (p <= 0, zero vector, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative factorization did not converge within its sweep budget.
class FactorizationError : public Error {
 public:
  FactorizationError(const std::string& what, long iterations)
      : Error(what + ": no convergence after " + std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}
  long iterations() const noexcept { return iterations_; }

 private:
  long iterations_;
};

/// Two eigenvalues that must be separated for a Sylvester solve are too close.
class SeparationError : public Error {
 public:
  SeparationError(std::complex<double> first, std::complex<double> second, double threshold);
  std::complex<double> first() const noexcept { return first_; }
  std::complex<double> second() const noexcept { return second_; }

 private:
  std::complex<double> first_;
  std::complex<double> second_;
};

/// A spectral cluster cannot be split off stably; a larger cluster tolerance is needed.
class IllConditionedCluster : public Error {
 public:
  IllConditionedCluster(std::complex<double> center, const SeparationError& cause);
  std::complex<double> center() const noexcept { return center_; }

 private:
  std::complex<double> center_;
};

/// Intermediate values left double range (brute-force powering without prescaling).
class RangeError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace powerlim
