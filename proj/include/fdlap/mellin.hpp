#pragma once

// Mellin moments of the lattice heat kernel,
//   M(m, p) = int_0^inf prod_i G(m_i, t) t^{p-1} dt,   G(k, t) = e^{-2t} I_k(2t),
// by adaptive quadrature in u = ln t on [L, ln T] plus a closed tail on
// [T, inf) integrated term by term from the large-t Bessel expansion.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "fdlap/errors.hpp"
#include "fdlap/quadrature.hpp"
#include "fdlap/specfun.hpp"

namespace fdlap {

/// G(m, t) = e^{-2t} I_m(2t).
inline double heat_kernel(int m, double t) { return bessel_i_scaled(m, 2.0 * t); }

namespace detail {

inline constexpr int kMellinTailTerms = 10;

// Coefficients b_j with e^{-2t} I_k(2t) ~ (4 pi t)^{-1/2} sum_j b_j t^{-j}.
inline std::array<double, kMellinTailTerms> heat_asymptotic_coefficients(int k) {
  std::array<double, kMellinTailTerms> b{};
  const double mu = 4.0 * k * static_cast<double>(k);
  double a = 1.0;
  b[0] = 1.0;
  for (int j = 1; j < kMellinTailTerms; ++j) {
    const double odd = 2.0 * j - 1.0;
    a *= -(mu - odd * odd) / (8.0 * j);
    b[j] = a / std::pow(2.0, j);
  }
  return b;
}

// int_T^inf prod_i G(m_i, t) t^{p-1} dt from the product of the large-t expansions.
template <std::size_t D>
double heat_mellin_tail(const std::array<int, D>& m, double p, double big_t) {
  constexpr double half_d = 0.5 * static_cast<double>(D);
  std::array<double, kMellinTailTerms> coef{};
  coef[0] = 1.0;
  for (int v : m) {
    const auto b = heat_asymptotic_coefficients(v);
    std::array<double, kMellinTailTerms> next{};
    for (int i = 0; i < kMellinTailTerms; ++i)
      for (int j = 0; i + j < kMellinTailTerms; ++j) next[i + j] += coef[i] * b[j];
    coef = next;
  }
  double tail = 0.0;
  for (int j = 0; j < kMellinTailTerms; ++j) {
    const double q = j + half_d - p;
    tail += coef[j] * std::pow(big_t, -q) / q;
  }
  return tail * std::pow(4.0 * std::numbers::pi, -half_d);
}

}  // namespace detail

/// M(m, p) for one or two lattice directions. Requires -sum|m_i| < p < d/2.
template <std::size_t D>
double heat_kernel_mellin(const std::array<int, D>& m, double p,
                          const QuadratureControl& ctl = {}) {
  static_assert(D == 1 || D == 2);
  constexpr double half_d = 0.5 * static_cast<double>(D);
  int msum = 0, mmax = 0;
  for (int v : m) {
    msum += std::abs(v);
    mmax = std::max(mmax, std::abs(v));
  }
  if (!(p + msum > 0.0) || !(p < half_d))
    throw DomainError("heat_kernel_mellin: exponent outside the convergence strip");

  const double big_t = 200.0 * (static_cast<double>(mmax) * mmax + 1.0);
  const double upper = std::log(big_t);
  const double lower = std::min(-1.0, -45.0 / (p + msum));

  auto integrand = [&](double u) {
    const double t = std::exp(u);
    double g = 1.0;
    for (int v : m) g *= heat_kernel(v, t);
    return g * std::exp(p * u);
  };
  std::vector<double> breaks{lower, 0.0};
  if (mmax > 1) breaks.push_back(std::log(0.25 * mmax * mmax));
  breaks.push_back(upper);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const double body = integrate_pieces(integrand, breaks, ctl).value;

  return body + detail::heat_mellin_tail(m, p, big_t);
}

/// int_0^inf (1 - prod_i G(0, t)) t^{-1-s} dt, the total mass of the d-dimensional
/// Laplacian kernel up to the factor s / Gamma(1 - s).
template <std::size_t D>
double heat_kernel_defect_moment(double s, const QuadratureControl& ctl = {}) {
  static_assert(D == 1 || D == 2);
  if (!(s > 0.0 && s < 1.0)) throw DomainError("heat_kernel_defect_moment: s must lie in (0, 1)");
  constexpr double big_t = 200.0;
  auto defect = [](double t) {
    // 1 - G(0,t) = 2 sum_{k >= 1} G(k,t) avoids cancellation for small t
    double one_minus = 0.0;
    if (t > 1.0) {
      one_minus = 1.0 - heat_kernel(0, t);
    } else {
      const auto g = bessel_i_scaled_sequence(40, 2.0 * t);
      for (int k = 40; k >= 1; --k) one_minus += 2.0 * g[k];
    }
    if constexpr (D == 1) return one_minus;
    else return one_minus * (2.0 - one_minus);
  };
  auto integrand = [&](double u) { return defect(std::exp(u)) * std::exp(-s * u); };
  const double lower = -45.0 / (1.0 - s);
  const double body = integrate_pieces(integrand, {lower, -5.0, 0.0, std::log(big_t)}, ctl).value;
  std::array<int, D> zero{};
  return body + std::pow(big_t, -s) / s - detail::heat_mellin_tail(zero, -s, big_t);
}

}  // namespace fdlap
