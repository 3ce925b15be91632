#pragma once

// Continuous pairs (u, f = (-Delta)^s u) with closed forms, used as ground truth.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fdlap/errors.hpp"
#include "fdlap/kernels1d.hpp"
#include "fdlap/lattice.hpp"
#include "fdlap/quadrature.hpp"
#include "fdlap/specfun.hpp"

namespace fdlap {

struct SolutionPair {
  std::string name;
  int dim = 1;
  double s = 0.5;
  /// 1D callables (dim == 1); df = f' where available.
  std::function<double(double)> u, f, df;
  /// 2D callables (dim == 2).
  std::function<double(double, double)> u2, f2;
  /// Support radius of u and f in x (0: unbounded) and algebraic decay exponents (0: none known).
  double u_support = 0.0, f_support = 0.0;
  double u_decay = 0.0, f_decay = 0.0;
  /// Hoelder exponent of u (informative) and the points where u or f fail to be smooth.
  double beta = 1.0;
  std::vector<double> kinks;
  /// u is the constant u_constant_value (f = 0).
  bool u_constant = false;
  double u_constant_value = 0.0;
};

/// Lattice hint for a function with continuous support radius r (0: none) and decay p (0: none).
inline SupportHint lattice_hint(double support, double decay, double h) {
  if (support > 0.0) return SupportHint::compact(support_radius_in_cells(support, h));
  if (decay > 0.0) return SupportHint::algebraic(decay);
  return {};
}

/// Lattice hints for r_h u and r_h f of a pair.
inline SupportHint u_hint(const SolutionPair& p, double h) {
  if (p.u_constant) return SupportHint::compact(0, p.u_constant_value);
  return lattice_hint(p.u_support, p.u_decay, h);
}

inline SupportHint f_hint(const SolutionPair& p, double h) {
  if (p.u_constant) return SupportHint::compact(0);
  return lattice_hint(p.f_support, p.f_decay, h);
}

/// (-Delta)^s e^{-x^2} at x = 0.
inline double gaussian_frlap_at_zero(double s) {
  detail::require_laplacian_s(s, "gaussian_frlap_at_zero");
  return std::pow(4.0, s) * std::tgamma(0.5 + s) / std::sqrt(std::numbers::pi);
}

namespace detail {

// 1F1(a; b; -z) for z >= 0: Kummer's transformation for moderate z,
// the algebraic expansion Gamma(b)/Gamma(b-a) z^{-a} 2F0(a, a-b+1;; 1/z) for large z.
inline double kummer_negative(double a, double b, double z) {
  if (z <= 40.0) return std::exp(-z) * confluent_1f1(b - a, b, z);
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double next = term * (a + k) * (a - b + 1.0 + k) / ((k + 1.0) * z);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::tgamma(b) * rgamma(b - a) * std::pow(z, -a) * sum;
}

}  // namespace detail

/// u = e^{-x^2}, f = 4^s Gamma(1/2+s)/sqrt(pi) 1F1(1/2+s; 1/2; -x^2).
inline SolutionPair pair_gaussian(double s) {
  detail::require_laplacian_s(s, "pair_gaussian");
  SolutionPair p;
  p.name = "gaussian";
  p.s = s;
  const double k = gaussian_frlap_at_zero(s);
  p.u = [](double x) { return std::exp(-x * x); };
  p.f = [k, s](double x) { return k * detail::kummer_negative(0.5 + s, 0.5, x * x); };
  p.df = [k, s](double x) {
    return -2.0 * x * k * (0.5 + s) / 0.5 * detail::kummer_negative(1.5 + s, 1.5, x * x);
  };
  p.f_decay = 1.0 + 2.0 * s;
  p.beta = 1.0;
  return p;
}

/// u = (1+x^2)^{-(1/2-s)}, f = 4^s Gamma(1/2+s)/Gamma(1/2-s) (1+x^2)^{-(1/2+s)}.
inline SolutionPair pair_algebraic(double s) {
  if (!(s > 0.0 && s < 0.5)) throw DomainError("pair_algebraic: s must lie in (0, 1/2)");
  SolutionPair p;
  p.name = "algebraic";
  p.s = s;
  const double k = std::pow(4.0, s) * std::tgamma(0.5 + s) / std::tgamma(0.5 - s);
  p.u = [s](double x) { return std::pow(1.0 + x * x, s - 0.5); };
  p.f = [k, s](double x) { return k * std::pow(1.0 + x * x, -0.5 - s); };
  p.df = [k, s](double x) { return -k * (1.0 + 2.0 * s) * x * std::pow(1.0 + x * x, -1.5 - s); };
  p.u_decay = 1.0 - 2.0 * s;
  p.f_decay = 1.0 + 2.0 * s;
  p.beta = 1.0;
  return p;
}

inline double ball_inside_constant(double gamma, double s, int n) {
  return std::pow(2.0, -2.0 * s) * std::tgamma(0.5 * (n - 2.0 * s)) * std::tgamma(0.5 * gamma + 1.0) /
         (std::tgamma(0.5 * (2.0 * s + gamma) + 1.0) * std::tgamma(0.5 * n));
}

inline double ball_outside_constant(double gamma, double s, int n) {
  return std::pow(2.0, -2.0 * s) * std::tgamma(0.5 * (n - 2.0 * s)) * std::tgamma(0.5 * gamma + 1.0) /
         (std::tgamma(0.5 * (n + gamma) + 1.0) * std::tgamma(s));
}

enum class BallBranch { automatic, inside, outside };

/// u = (-Delta)^{-s} (1 - |x|^2)_+^{gamma/2} at radius r = |x|, n in {1, 2}, 2s < n.
inline double inv_frlap_ball(double gamma, double s, int n, double r,
                             BallBranch branch = BallBranch::automatic) {
  if (!(gamma > 0.0)) throw DomainError("inv_frlap_ball: gamma must be positive");
  if (n != 1 && n != 2) throw DomainError("inv_frlap_ball: dimension must be 1 or 2");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("inv_frlap_ball: s must lie in (0, 1)");
  if (!(2.0 * s < n)) throw DomainError("inv_frlap_ball: needs 2s < n for a decaying solution");
  r = std::abs(r);
  const bool inside = branch == BallBranch::inside || (branch == BallBranch::automatic && r <= 1.0);
  if (inside) {
    return ball_inside_constant(gamma, s, n) *
           gauss_2f1(0.5 * (n - 2.0 * s), -0.5 * (gamma + 2.0 * s), 0.5 * n, std::min(r * r, 1.0));
  }
  return ball_outside_constant(gamma, s, n) * std::pow(r, 2.0 * s - n) *
         gauss_2f1(0.5 * (n - 2.0 * s), 1.0 - s, 0.5 * (n + gamma) + 1.0, std::min(1.0 / (r * r), 1.0));
}

enum class BallExponent { one_minus_s, two_minus_s };

inline double ball_gamma(BallExponent e, double s) {
  return e == BallExponent::one_minus_s ? 2.0 * (1.0 - s) : 2.0 * (2.0 - s);
}

/// f = (1 - |x|^2)_+^{gamma/2} with gamma = 2(1-s) or 2(2-s); u from inv_frlap_ball.
inline SolutionPair pair_ball(BallExponent e, double s, int n) {
  const double gamma = ball_gamma(e, s);
  inv_frlap_ball(gamma, s, n, 0.0);  // parameter validation
  SolutionPair p;
  p.name = e == BallExponent::one_minus_s ? "ball-1s" : "ball-2s";
  p.dim = n;
  p.s = s;
  const double half = 0.5 * gamma;
  auto f_r = [half](double r2) { return r2 < 1.0 ? std::pow(1.0 - r2, half) : 0.0; };
  if (n == 1) {
    p.u = [gamma, s](double x) { return inv_frlap_ball(gamma, s, 1, x); };
    p.f = [f_r](double x) { return f_r(x * x); };
    p.df = [half](double x) {
      return std::abs(x) < 1.0 ? -2.0 * half * x * std::pow(1.0 - x * x, half - 1.0) : 0.0;
    };
  } else {
    p.u2 = [gamma, s](double x, double y) { return inv_frlap_ball(gamma, s, 2, std::hypot(x, y)); };
    p.f2 = [f_r](double x, double y) { return f_r(x * x + y * y); };
  }
  p.f_support = 1.0;
  p.u_decay = n - 2.0 * s;
  p.beta = 1.0;
  p.kinks = {-1.0, 1.0};
  return p;
}

/// u = |x|^{-alpha} in 2D, f = 2^{2s} Gamma(a/2+s) Gamma(1-a/2) / (Gamma(1-a/2-s) Gamma(a/2)) |x|^{-a-2s}.
inline double riesz_constant(double alpha, double s) {
  return std::pow(2.0, 2.0 * s) * std::tgamma(0.5 * alpha + s) * std::tgamma(1.0 - 0.5 * alpha) /
         (std::tgamma(1.0 - 0.5 * alpha - s) * std::tgamma(0.5 * alpha));
}

inline SolutionPair pair_riesz_2d(double alpha, double s) {
  detail::require_laplacian_s(s, "pair_riesz_2d");
  if (!(alpha > 0.0 && alpha < 2.0 - 2.0 * s))
    throw DomainError("pair_riesz_2d: needs 0 < alpha < 2 - 2s");
  SolutionPair p;
  p.name = "riesz2d";
  p.dim = 2;
  p.s = s;
  const double k = riesz_constant(alpha, s);
  p.u2 = [alpha](double x, double y) { return std::pow(std::hypot(x, y), -alpha); };
  p.f2 = [k, alpha, s](double x, double y) { return k * std::pow(std::hypot(x, y), -alpha - 2.0 * s); };
  p.u_decay = alpha;
  p.f_decay = alpha + 2.0 * s;
  p.beta = 0.0;
  return p;
}

/// u = 1, f = 0.
inline SolutionPair pair_constant(double s) {
  detail::require_laplacian_s(s, "pair_constant");
  SolutionPair p;
  p.name = "constant";
  p.s = s;
  p.u = [](double) { return 1.0; };
  p.f = [](double) { return 0.0; };
  p.df = [](double) { return 0.0; };
  p.beta = 1.0;
  p.u_constant = true;
  p.u_constant_value = 1.0;
  return p;
}

/// Names accepted by make_pair.
inline std::vector<std::string> pair_names() {
  return {"gaussian", "algebraic", "ball-1s", "ball-2s", "riesz2d", "constant"};
}

inline SolutionPair make_pair(const std::string& name, double s, int dim = 1, double alpha = 0.5) {
  if (name == "gaussian") return pair_gaussian(s);
  if (name == "algebraic") return pair_algebraic(s);
  if (name == "ball-1s") return pair_ball(BallExponent::one_minus_s, s, dim);
  if (name == "ball-2s") return pair_ball(BallExponent::two_minus_s, s, dim);
  if (name == "riesz2d") return pair_riesz_2d(alpha, s);
  if (name == "constant") return pair_constant(s);
  throw ConfigError("unknown pair '" + name + "'");
}

/// c_{1,s} int_0^inf (2u(x) - u(x+z) - u(x-z)) z^{-1-2s} dz by quadrature in ln z on [z0, Z];
/// second-order Taylor closure below z0 and a power-law closure above Z.
inline double pv_frlap_1d(const SolutionPair& p, double x,
                          const QuadratureControl& ctl = {1e-10, 1e-13, 20000}) {
  if (p.dim != 1) throw ConfigError("pv_frlap_1d: one-dimensional pairs only");
  const double s = p.s;
  const double ux = p.u(x);
  auto second = [&](double z) { return 2.0 * ux - p.u(x + z) - p.u(x - z); };
  auto integrand = [&](double v) { return second(std::exp(v)) * std::exp(-2.0 * s * v); };
  double z0 = 1e-3;
  for (double k : p.kinks)
    if (const double d = std::abs(x - k); d > 0.0) z0 = std::min(z0, 0.1 * d);
  const double big_z = 1e8 * (1.0 + std::abs(x));
  std::vector<double> breaks{std::log(z0), 0.0, std::log(big_z)};
  for (double k : p.kinks)
    if (const double d = std::abs(x - k); d > z0) breaks.push_back(std::log(d));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double integral = integrate_pieces(integrand, breaks, ctl).value;
  integral += second(z0) * std::pow(z0, -2.0 * s) / (2.0 - 2.0 * s);
  integral += 2.0 * ux * std::pow(big_z, -2.0 * s) / (2.0 * s);
  if (p.u_decay > 0.0)
    integral -= (p.u(x + big_z) + p.u(x - big_z)) * std::pow(big_z, -2.0 * s) / (p.u_decay + 2.0 * s);
  const double c1s = std::pow(4.0, s) * std::tgamma(0.5 + s) / (std::sqrt(std::numbers::pi) * std::abs(std::tgamma(-s)));
  return c1s * integral;
}

}  // namespace fdlap
