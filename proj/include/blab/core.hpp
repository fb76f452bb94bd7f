#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace blab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// A point of R^{2n} (n = 1 or 2) stored as (x1, y1, x2, y2).
struct Point {
  std::array<double, 4> x{};
  int dim = 2;

  Point() = default;
  explicit Point(Complex z) : x{z.real(), z.imag(), 0.0, 0.0}, dim(2) {}
  Point(Complex z1, Complex z2)
      : x{z1.real(), z1.imag(), z2.real(), z2.imag()}, dim(4) {}

  int n() const { return dim / 2; }
  Complex z(int j) const { return {x[2 * j], x[2 * j + 1]}; }
  double operator[](int i) const { return x[i]; }
  double& operator[](int i) { return x[i]; }

  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += x[i] * x[i];
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

  Point operator+(const Point& o) const {
    Point p = *this;
    for (int i = 0; i < dim; ++i) p.x[i] += o.x[i];
    return p;
  }
  Point operator-(const Point& o) const {
    Point p = *this;
    for (int i = 0; i < dim; ++i) p.x[i] -= o.x[i];
    return p;
  }
  Point operator*(double a) const {
    Point p = *this;
    for (int i = 0; i < dim; ++i) p.x[i] *= a;
    return p;
  }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};
// Point outside the closure of the domain.
class DomainError : public Error {
 public:
  using Error::Error;
};
// Mismatched domains, grids, or dimensions.
class ContractError : public Error {
 public:
  using Error::Error;
};
// Grid too coarse for the requested operation.
class ResolutionError : public Error {
 public:
  using Error::Error;
};
class FlowEscapeError : public Error {
 public:
  using Error::Error;
};
class NotInCollarError : public Error {
 public:
  using Error::Error;
};
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};
class ConditioningError : public Error {
 public:
  using Error::Error;
};
class NearSingularError : public Error {
 public:
  using Error::Error;
};
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace blab
