// Small one-dimensional search helpers shared by the solvers.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace locus {

/// Golden-section search for a minimizer of a unimodal f on [a, b].
/// Returns (argmin, value).
inline std::pair<double, double> golden_section(const std::function<double(double)>& f, double a, double b,
                                                int iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int k = 0; k < iterations && std::abs(b - a) > 1e-15 * (1.0 + std::abs(a)); ++k) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double x = (a + b) / 2;
  double fx = f(x);
  if (fc < fx) {
    x = c;
    fx = fc;
  }
  if (fd < fx) {
    x = d;
    fx = fd;
  }
  return {x, fx};
}

/// Local minima of a 2π-periodic f: uniform sampling, then golden-section
/// refinement around every discrete local minimum. Returns (angle, value).
inline std::vector<std::pair<double, double>> periodic_minima(const std::function<double(double)>& f,
                                                              int samples = 2048) {
  const double step = 2 * std::numbers::pi / samples;
  std::vector<double> v(samples);
  for (int k = 0; k < samples; ++k) v[k] = f(k * step);
  std::vector<std::pair<double, double>> out;
  for (int k = 0; k < samples; ++k) {
    const double prev = v[(k + samples - 1) % samples];
    const double next = v[(k + 1) % samples];
    // strict on one side so a flat run yields one representative
    if (v[k] < prev && v[k] <= next) out.push_back(golden_section(f, (k - 1) * step, (k + 1) * step));
  }
  return out;
}

}  // namespace locus
