#pragma once

#include <functional>

#include "blab/core.hpp"

namespace blab::numerics {

using RealField = std::function<Point(const Point&)>;

inline Point rk4_step(const RealField& f, const Point& x, double h) {
  const Point k1 = f(x);
  const Point k2 = f(x + k1 * (0.5 * h));
  const Point k3 = f(x + k2 * (0.5 * h));
  const Point k4 = f(x + k3 * h);
  return x + (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0);
}

/// Classical RK4 over time t in a fixed number of equal steps.
inline Point rk4(const RealField& f, const Point& x, double t, int steps) {
  Point y = x;
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) y = rk4_step(f, y, h);
  return y;
}

}  // namespace blab::numerics
