#pragma once

// Special functions used by the lattice kernels and the reference solutions:
// log-Gamma and Gamma ratios, exponentially scaled modified Bessel functions
// of integer order, Gauss 2F1 on [0,1], 3F2 at unit argument, Hurwitz zeta.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fdlap/errors.hpp"
#include "fdlap/quadrature.hpp"

namespace fdlap {

struct SeriesControl {
  int max_terms = 200000;
  double rel_tol = 1e-16;

  void validate() const {
    if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
      throw DomainError("SeriesControl: rel_tol must lie in (0, 1)");
  }
};

inline double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive");
  return std::lgamma(x);
}

/// 1/Gamma(x) for any real x, zero at the poles 0, -1, -2, ...
inline double rgamma(double x) {
  if (x <= 0.0 && x == std::nearbyint(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

namespace detail {

// Stirling correction ln Gamma(x) - [(x-1/2) ln x - x + ln(2 pi)/2], x >= 10.
inline double stirling_correction(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  return r * (1.0 / 12.0 +
              r2 * (-1.0 / 360.0 +
                    r2 * (1.0 / 1260.0 +
                          r2 * (-1.0 / 1680.0 +
                                r2 * (1.0 / 1188.0 +
                                      r2 * (-691.0 / 360360.0 + r2 * (1.0 / 156.0)))))));
}

}  // namespace detail

/// ln Gamma(a) - ln Gamma(b) without cancellation when a and b are both large.
inline double log_gamma_ratio(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("log_gamma_ratio: arguments must be positive");
  if (a == b) return 0.0;
  if (std::min(a, b) < 10.0) return std::lgamma(a) - std::lgamma(b);
  const double d = a - b;
  return (a - 0.5) * std::log1p(d / b) + d * std::log(b) - d +
         detail::stirling_correction(a) - detail::stirling_correction(b);
}

/// ln Gamma(x + a) - ln Gamma(x + b) with the shift kept separate from x,
/// so that it stays exact when x is so large that x + a rounds to x + b.
inline double log_gamma_ratio_shifted(double x, double a, double b) {
  if (!(x + a > 0.0) || !(x + b > 0.0))
    throw DomainError("log_gamma_ratio_shifted: arguments must be positive");
  if (x + std::min(a, b) < 10.0 || x < 2.0 * std::max(std::abs(a), std::abs(b)))
    return log_gamma_ratio(x + a, x + b);
  const double lx = std::log(x);
  return (a - b) * lx + (x + a - 0.5) * std::log1p(a / x) - (x + b - 0.5) * std::log1p(b / x) -
         (a - b) + detail::stirling_correction(x + a) - detail::stirling_correction(x + b);
}

/// Gamma(a) / Gamma(b) for positive a, b without overflow.
inline double gamma_ratio(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("gamma_ratio: arguments must be positive");
  if (a == b) return 1.0;
  if (std::max(a, b) < 150.0 && std::min(a, b) > 1e-300) return std::tgamma(a) / std::tgamma(b);
  return std::exp(log_gamma_ratio(a, b));
}

/// Digamma for x > 0 (recurrence up to x >= 10, then the asymptotic series).
inline double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r2 = 1.0 / (x * x);
  return acc + std::log(x) - 0.5 / x -
         r2 * (1.0 / 12.0 - r2 * (1.0 / 120.0 - r2 * (1.0 / 252.0 - r2 * (1.0 / 240.0 - r2 / 132.0))));
}

// ---------------------------------------------------------------------------
// Modified Bessel functions I_k, scaled by e^{-t}.

namespace detail {

inline double bessel_series_scaled(int k, double t) {
  const double log_first = k * std::log(0.5 * t) - std::lgamma(k + 1.0) - t;
  const double q = 0.25 * t * t;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 100000; ++m) {
    term *= q / (static_cast<double>(m) * (m + k));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(log_first) * sum;
}

// Large-argument expansion, valid for t >= max(40, 2 k^2).
inline double bessel_asymptotic_scaled(int k, double t) {
  const double mu = 4.0 * k * static_cast<double>(k);
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < 200; ++j) {
    const double odd = 2.0 * j - 1.0;
    const double next = -term * (mu - odd * odd) / (j * 8.0 * t);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * t);
}

inline int miller_start(int kmax, double t) {
  return kmax + 20 + static_cast<int>(std::ceil(std::sqrt(80.0 * t + double(kmax) * kmax)));
}

// Backward recurrence I_{n-1} = I_{n+1} + (2n/t) I_n, normalised by
// I_0 + 2 sum_{n>=1} I_n = e^t. Returns e^{-t} I_n(t), n = 0..kmax.
inline std::vector<double> bessel_miller_scaled(int kmax, double t) {
  const int start = miller_start(kmax, t);
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  double above = 0.0, cur = 1e-280, norm = 0.0;
  for (int n = start; n >= 1; --n) {
    if (n <= kmax) out[n] = cur;
    norm += 2.0 * cur;
    const double below = above + (2.0 * n / t) * cur;
    above = cur;
    cur = below;
    if (cur > 1e200) {
      constexpr double scale = 1e-200;
      cur *= scale;
      above *= scale;
      norm *= scale;
      for (int i = n; i <= kmax; ++i) out[i] *= scale;
    }
  }
  out[0] = cur;
  norm += cur;
  for (auto& v : out) v /= norm;
  return out;
}

}  // namespace detail

/// e^{-t} I_k(t) for integer k and t >= 0.
inline double bessel_i_scaled(int k, double t) {
  if (!(t >= 0.0)) throw DomainError("bessel_i_scaled: t must be nonnegative");
  k = std::abs(k);
  if (t == 0.0) return k == 0 ? 1.0 : 0.0;
  if (t < std::max(10.0, 0.5 * k)) return detail::bessel_series_scaled(k, t);
  if (t >= std::max(40.0, 2.0 * k * static_cast<double>(k)))
    return detail::bessel_asymptotic_scaled(k, t);
  return detail::bessel_miller_scaled(k, t)[k];
}

/// e^{-t} I_k(t) for k = 0..kmax in one pass.
inline std::vector<double> bessel_i_scaled_sequence(int kmax, double t) {
  if (!(t >= 0.0)) throw DomainError("bessel_i_scaled_sequence: t must be nonnegative");
  if (kmax < 0) throw DomainError("bessel_i_scaled_sequence: kmax must be nonnegative");
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (t == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (t < 10.0 || t >= std::max(40.0, 2.0 * kmax * static_cast<double>(kmax))) {
    for (int k = 0; k <= kmax; ++k) out[k] = bessel_i_scaled(k, t);
    return out;
  }
  return detail::bessel_miller_scaled(kmax, t);
}

// ---------------------------------------------------------------------------
// Hypergeometric functions.

namespace detail {

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

inline double series_2f1(double a, double b, double c, double z, const SeriesControl& ctl) {
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum) && n > 2) return sum;
  }
  throw ConvergenceError("gauss_2f1: series did not converge within max_terms");
}

// Connection formula about z = 1; requires c - a - b not an integer.
inline double connection_2f1(double a, double b, double c, double z, const SeriesControl& ctl) {
  const double d = c - a - b;
  const double w = 1.0 - z;
  double first = 0.0, second = 0.0;
  const double g1 = std::tgamma(c) * std::tgamma(d) * rgamma(c - a) * rgamma(c - b);
  if (g1 != 0.0) first = g1 * series_2f1(a, b, 1.0 - d, w, ctl);
  const double g2 = std::tgamma(c) * std::tgamma(-d) * rgamma(a) * rgamma(b);
  if (g2 != 0.0) second = g2 * std::pow(w, d) * series_2f1(c - a, c - b, d + 1.0, w, ctl);
  return first + second;
}

}  // namespace detail

/// Gauss hypergeometric 2F1(a, b; c; z) for z in [0, 1]. z = 1 requires c - a - b > 0.
inline double gauss_2f1(double a, double b, double c, double z, const SeriesControl& ctl = {}) {
  ctl.validate();
  if (detail::is_nonpositive_integer(c))
    throw DomainError("gauss_2f1: c must not be a nonpositive integer");
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("gauss_2f1: z must lie in [0, 1]");
  if (z == 0.0) return 1.0;
  // terminating series: a polynomial in z, exact for every z
  if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b))
    return detail::series_2f1(a, b, c, z, ctl);
  const double d = c - a - b;
  if (z == 1.0) {
    if (!(d > 0.0)) throw DomainError("gauss_2f1: z = 1 requires c - a - b > 0");
    return std::tgamma(c) * std::tgamma(d) * rgamma(c - a) * rgamma(c - b);
  }
  if (z <= 0.5) return detail::series_2f1(a, b, c, z, ctl);
  if (std::abs(d - std::nearbyint(d)) < 1e-8) {
    if (z <= 0.97) return detail::series_2f1(a, b, c, z, ctl);
    throw DomainError("gauss_2f1: c - a - b is an integer; connection formula unavailable near z = 1");
  }
  return detail::connection_2f1(a, b, c, z, ctl);
}

/// Confluent 1F1(a; b; z) by its power series (moderate |z|).
inline double confluent_1f1(double a, double b, double z, const SeriesControl& ctl = {}) {
  ctl.validate();
  if (detail::is_nonpositive_integer(b))
    throw DomainError("confluent_1f1: b must not be a nonpositive integer");
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= (a + n) / ((b + n) * (n + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum) && n > std::abs(z)) return sum;
  }
  throw ConvergenceError("confluent_1f1: series did not converge");
}

/// Hurwitz zeta  sum_{k>=0} (q + k)^{-p}  for p > 1, q > 0 (Euler-Maclaurin).
inline double hurwitz_zeta(double p, double q) {
  if (!(p > 1.0)) throw DomainError("hurwitz_zeta: p must exceed 1");
  if (!(q > 0.0)) throw DomainError("hurwitz_zeta: q must be positive");
  double head = 0.0;
  while (q < 10.0) {
    head += std::pow(q, -p);
    q += 1.0;
  }
  // B_{2j} / (2j)!
  static constexpr double b2j[] = {1.0 / 12.0,        -1.0 / 720.0,
                                   1.0 / 30240.0,     -1.0 / 1209600.0,
                                   1.0 / 47900160.0,  -691.0 / 1307674368000.0,
                                   1.0 / 74724249600.0};
  double tail = std::pow(q, 1.0 - p) / (p - 1.0) + 0.5 * std::pow(q, -p);
  double rising = p;  // p (p+1) ... (p + 2j - 2)
  double qpow = std::pow(q, -p - 1.0);
  for (int j = 0; j < 7; ++j) {
    tail += b2j[j] * rising * qpow;
    rising *= (p + 2.0 * j + 1.0) * (p + 2.0 * j + 2.0);
    qpow /= q * q;
  }
  return head + tail;
}

/// 3F2(a1, a2, a3; b1, b2; 1). Requires b1 + b2 - a1 - a2 - a3 > 0.
/// Direct partial sum followed by an Euler-Maclaurin tail on the
/// continuous extension of the term sequence.
inline double hyp_3f2_unit(double a1, double a2, double a3, double b1, double b2,
                           const SeriesControl& ctl = {}) {
  ctl.validate();
  const double excess = b1 + b2 - a1 - a2 - a3;
  if (!(excess > 0.0))
    throw ConvergenceError("hyp_3f2_unit: series diverges at z = 1 (b1 + b2 - a1 - a2 - a3 <= 0)");
  if (detail::is_nonpositive_integer(b1) || detail::is_nonpositive_integer(b2))
    throw DomainError("hyp_3f2_unit: lower parameters must not be nonpositive integers");

  const bool terminates = detail::is_nonpositive_integer(a1) ||
                          detail::is_nonpositive_integer(a2) ||
                          detail::is_nonpositive_integer(a3);
  constexpr int head_terms = 2000;
  double term = 1.0;
  double sum = 1.0, comp = 0.0;
  int n = 0;
  for (; n < head_terms; ++n) {
    term *= (a1 + n) * (a2 + n) * (a3 + n) / ((b1 + n) * (b2 + n) * (n + 1.0));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (term == 0.0) return sum;
  }
  if (terminates) return sum;
  if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) return sum;

  // term now holds t_N with N = head_terms; the tail is sum_{n > N} t_n.
  const double base = static_cast<double>(n);
  auto log_ratio = [&](double x) {
    return log_gamma_ratio_shifted(x, a1, b1) + log_gamma_ratio_shifted(x, a2, b2) +
           log_gamma_ratio_shifted(x, a3, 1.0);
  };
  const double log_base = log_ratio(base);
  auto term_at = [&](double x) { return term * std::exp(log_ratio(x) - log_base); };
  auto dlog = [&](double x) {
    return digamma(a1 + x) + digamma(a2 + x) + digamma(a3 + x) - digamma(b1 + x) -
           digamma(b2 + x) - digamma(1.0 + x);
  };
  // sum_{n >= N} f(n) = int_N^inf f + f(N)/2 - f'(N)/12 + ...
  const double upper = std::min(600.0, 45.0 / excess);
  QuadratureControl qc;
  qc.rel_tol = 1e-11;
  auto integrand = [&](double u) {
    const double x = base * std::exp(u);
    return term_at(x) * x;
  };
  const double integral = integrate(integrand, 0.0, upper, qc).value;
  const double tail_from_base = integral + 0.5 * term - term * dlog(base) / 12.0;
  // exclude n = N itself, which is already in the head sum
  return sum + (tail_from_base - term);
}

}  // namespace fdlap
