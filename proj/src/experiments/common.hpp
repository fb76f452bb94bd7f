#pragma once

// Shared helpers for the scenario runners.

#include <chrono>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "blab/bergman/holomorphic.hpp"
#include "blab/experiments/scenarios.hpp"
#include "blab/flow/chart.hpp"

namespace blab::experiments::detail {

/// Generator for member `i` of a seeded family.
inline std::mt19937_64 member_rng(std::uint64_t seed, int i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i)};
  return std::mt19937_64(seq);
}

/// Complex polynomial in (x, y) of total degree <= `degree`.
inline flow::PointFn smooth_poly(std::uint64_t seed, int i, int degree = 3) {
  auto rng = member_rng(seed, i);
  std::normal_distribution<double> nd;
  std::vector<std::tuple<int, int, Complex>> terms;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) terms.emplace_back(a, b, Complex(nd(rng), nd(rng)));
  return [terms](const Point& p) {
    Complex s = 0.0;
    for (const auto& [a, b, c] : terms) s += c * std::pow(p[0], a) * std::pow(p[1], b);
    return s;
  };
}

/// sum_{m = lo}^{hi} c_m z^m with c_m ~ N(0, 1) q^{|m|}.
inline bergman::HolomorphicFunction band_limited(std::uint64_t seed, int i, int lo, int hi,
                                                 double q, const std::string& prefix) {
  auto rng = member_rng(seed, i);
  std::normal_distribution<double> nd;
  std::map<int, Complex> c;
  for (int m = lo; m <= hi; ++m) c[m] = Complex(nd(rng), nd(rng)) * std::pow(q, std::abs(m));
  return bergman::laurent_polynomial(prefix + std::to_string(i), c);
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline std::string leq(double v, double tol) { return sci(v) + " <= " + sci(tol); }

ReportBundle start(const ScenarioConfig& c);

}  // namespace blab::experiments::detail
