#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sagnac/error.hpp"

namespace sagnac::quad {

struct Tolerance {
  double absolute = 1e-10;
  std::size_t max_intervals = 4000;
};

template <class Value>
struct Estimate {
  Value value{};
  double error = 0.0;
};

namespace detail {

template <class Value>
struct Segment {
  double a;
  double b;
  Value value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class Value, class F>
Segment<Value> kronrod_segment(F& f, double a, double b) {
  double error = 0.0;
  // max_depth = 0: a single 15-point Kronrod rule with its embedded 7-point
  // Gauss error estimate; subdivision is handled by the caller.
  Value value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 0, 0.0, &error);
  // A non-finite sample poisons the estimate; rank the segment first so it is
  // subdivided until the budget check reports it.
  if (!std::isfinite(error) || !std::isfinite(std::abs(value))) {
    error = std::numeric_limits<double>::infinity();
  }
  return {a, b, value, error};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// The interval is first split at every breakpoint inside (a, b); the segment
/// with the largest error estimate is bisected until the summed estimate is
/// below `tol.absolute`. Throws QuadratureNonConvergence when the interval
/// budget runs out first.
template <class Value, class F>
Estimate<Value> integrate(F&& f, double a, double b,
                          std::span<const double> breakpoints = {},
                          Tolerance tol = {}) {
  if (a == b) return {};
  const double sign = b > a ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);

  std::vector<double> edges{lo};
  for (double p : breakpoints) {
    if (p > lo && p < hi) edges.push_back(p);
  }
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<detail::Segment<Value>> heap;
  Value total{};
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    auto s = detail::kronrod_segment<Value>(f, edges[i], edges[i + 1]);
    total += s.value;
    error += s.error;
    heap.push(s);
  }

  std::size_t count = heap.size();
  // Negated so that a NaN estimate keeps refining and ends in an error.
  while (!(error <= tol.absolute)) {
    if (count >= tol.max_intervals) {
      throw Error(ErrorCode::QuadratureNonConvergence,
                  "error estimate " + std::to_string(error) +
                      " above tolerance " + std::to_string(tol.absolute) +
                      " after " + std::to_string(count) + " intervals",
                  error);
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw Error(ErrorCode::QuadratureNonConvergence,
                  "interval cannot be bisected further", error);
    }
    auto left = detail::kronrod_segment<Value>(f, worst.a, mid);
    auto right = detail::kronrod_segment<Value>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  // Re-sum to shed the drift accumulated by the incremental updates.
  Value resummed{};
  double err_sum = 0.0;
  while (!heap.empty()) {
    resummed += heap.top().value;
    err_sum += heap.top().error;
    heap.pop();
  }
  return {sign * resummed, err_sum};
}

template <class F>
double integrate_real(F&& f, double a, double b,
                      std::span<const double> breakpoints = {},
                      Tolerance tol = {}) {
  return integrate<double>(std::forward<F>(f), a, b, breakpoints, tol).value;
}

template <class F>
std::complex<double> integrate_complex(F&& f, double a, double b,
                                       std::span<const double> breakpoints = {},
                                       Tolerance tol = {}) {
  return integrate<std::complex<double>>(std::forward<F>(f), a, b, breakpoints,
                                         tol)
      .value;
}

/// Fixed-order Gauss-Legendre rule mapped onto arbitrary intervals.
template <unsigned Order>
class GaussLegendre {
 public:
  static constexpr unsigned order = Order;

  GaussLegendre() {
    using rule = boost::math::quadrature::gauss<double, Order>;
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    std::size_t k = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        nodes_[k] = 0.0;
        weights_[k++] = w[i];
      } else {
        nodes_[k] = -x[i];
        weights_[k++] = w[i];
        nodes_[k] = x[i];
        weights_[k++] = w[i];
      }
    }
  }

  /// Node i mapped to [a, b].
  double node(std::size_t i, double a, double b) const {
    return 0.5 * (a + b) + 0.5 * (b - a) * nodes_[i];
  }
  double weight(std::size_t i, double a, double b) const {
    return 0.5 * (b - a) * weights_[i];
  }

  template <class Value, class F>
  Value integrate(F&& f, double a, double b) const {
    Value sum{};
    for (std::size_t i = 0; i < Order; ++i) {
      sum += weight(i, a, b) * f(node(i, a, b));
    }
    return sum;
  }

 private:
  std::array<double, Order> nodes_{};
  std::array<double, Order> weights_{};
};

}  // namespace sagnac::quad
