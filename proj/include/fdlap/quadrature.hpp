#pragma once

// Globally adaptive Gauss-Kronrod (10/21 point) quadrature on finite intervals.
// The interval with the largest error estimate is bisected until the total
// error satisfies max(abs_tol, rel_tol * |result|).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "fdlap/errors.hpp"

namespace fdlap {

struct QuadratureControl {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

namespace detail {

// QUADPACK qk21 abscissae (descending, last is the centre) and weights.
inline constexpr std::array<double, 11> kXgk21 = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk21 = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg10 = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk21(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double resk = kWgk21[10] * fc;
  double resg = 0.0;
  double resabs = std::abs(resk);
  std::array<double, 10> fv1{}, fv2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk21[j];
    fv1[j] = f(centre - dx);
    fv2[j] = f(centre + dx);
    const double sum = fv1[j] + fv2[j];
    resk += kWgk21[j] * sum;
    resabs += kWgk21[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg10[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk21[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk21[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  const double value = resk * half;
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return {a, b, value, err};
}

}  // namespace detail

/// Integrates f over [a, b]. Throws QuadratureError when max_intervals is hit.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureControl& ctl = {}) {
  QuadratureResult out;
  if (a == b) return out;
  std::priority_queue<detail::Segment> heap;
  auto first = detail::gk21(f, a, b);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  out.evaluations = 21;

  auto satisfied = [&] {
    return total_err <= std::max(ctl.abs_tol, ctl.rel_tol * std::abs(total));
  };

  while (!satisfied()) {
    if (static_cast<int>(heap.size()) >= ctl.max_intervals) {
      throw QuadratureError("adaptive quadrature did not converge", total, total_err);
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval can no longer be bisected in floating point
      throw QuadratureError("quadrature interval underflow", total, total_err);
    }
    auto left = detail::gk21(f, worst.a, mid);
    auto right = detail::gk21(f, mid, worst.b);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // re-sum to shed the drift of the running updates
  double sum = 0.0, err = 0.0;
  out.intervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.abs_error = err;
  return out;
}

/// Integrates over a list of breakpoints, sharing one relative tolerance.
template <class F>
QuadratureResult integrate_pieces(F&& f, const std::vector<double>& breaks,
                                  const QuadratureControl& ctl = {}) {
  QuadratureResult out;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    auto r = integrate(f, breaks[i], breaks[i + 1], ctl);
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.evaluations += r.evaluations;
    out.intervals += r.intervals;
  }
  return out;
}

}  // namespace fdlap
