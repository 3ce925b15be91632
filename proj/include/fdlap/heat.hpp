#pragma once

// Semidiscrete heat semigroup e^{t Delta_h} and the semigroup definition of
// (-Delta_h)^s evaluated by quadrature in t.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "fdlap/errors.hpp"
#include "fdlap/lattice.hpp"
#include "fdlap/mellin.hpp"
#include "fdlap/quadrature.hpp"
#include "fdlap/specfun.hpp"
#include "fdlap/summation.hpp"

namespace fdlap {

struct HeatConfig {
  double t = 0.0;
  /// Kernel truncation |m| <= K per axis; 0 selects the default.
  long K = 0;
  double tol = 1e-16;

  void validate() const {
    if (!(t >= 0.0)) throw ConfigError("HeatConfig: t must be nonnegative");
    if (K < 0) throw ConfigError("HeatConfig: K must be positive (or 0 for the default)");
    if (!(tol > 0.0)) throw ConfigError("HeatConfig: tol must be positive");
  }
};

/// Bound on the heat kernel mass beyond order K at argument tau = 2t/h^2.
inline double heat_truncation_bound(double tau, long K) {
  if (tau == 0.0) return 0.0;
  const double k = static_cast<double>(K);
  return std::exp(k * std::log(std::numbers::e * tau / k)) / std::sqrt(2.0 * std::numbers::pi * k);
}

/// Smallest K with (e tau / K)^K / sqrt(2 pi K) < tol.
inline long heat_default_truncation(double tau, double tol = 1e-16) {
  long K = 1;
  while (heat_truncation_bound(tau, K) >= tol) ++K;
  return K;
}

namespace detail {

inline long heat_truncation(const HeatConfig& hc, double h) {
  const double tau = 2.0 * hc.t / (h * h);
  if (hc.K == 0) return heat_default_truncation(tau, hc.tol);
  if (heat_truncation_bound(tau, hc.K) >= hc.tol)
    throw ConfigError("heat_apply: truncation K = " + std::to_string(hc.K) +
                      " leaves a kernel tail above tolerance; need K >= " +
                      std::to_string(heat_default_truncation(tau, hc.tol)));
  return hc.K;
}

}  // namespace detail

/// e^{t Delta_h} u on a window: sum_m G(m, t/h^2) u_{j-m} (product kernel in 2D).
template <std::size_t D>
GridValues<D> heat_apply(const LatticeSampler<D>& u, const GridWindow<D>& w, const HeatConfig& hc) {
  static_assert(D == 1 || D == 2);
  hc.validate();
  w.validate();
  GridValues<D> out(w);
  if (hc.t == 0.0) return materialize(u, w);
  const long K = detail::heat_truncation(hc, w.h);
  const auto g = bessel_i_scaled_sequence(static_cast<int>(K), 2.0 * hc.t / (w.h * w.h));
  auto G = [&](long m) { return g[static_cast<std::size_t>(std::labs(m))]; };
  const auto npts = static_cast<long>(w.size());
#pragma omp parallel for schedule(static)
  for (long p = 0; p < npts; ++p) {
    const auto j = w.index(static_cast<std::size_t>(p));
    CompensatedSum acc;
    if constexpr (D == 1) {
      for (long m = -K; m <= K; ++m) acc += G(m) * u(j[0] - m);
    } else {
      for (long a = -K; a <= K; ++a) {
        CompensatedSum row;
        for (long b = -K; b <= K; ++b) row += G(b) * u(Index<2>{j[0] - a, j[1] - b});
        acc += G(a) * row.value();
      }
    }
    out.values[static_cast<std::size_t>(p)] = acc.value();
  }
  return out;
}

/// (-Delta_h)^s u_j = (1/Gamma(-s)) int_0^inf (e^{t Delta_h} u_j - u_j) dt / t^{1+s}
/// for u constant outside a bounded set (compact support hint).
template <std::size_t D>
double frlap_semigroup_oracle(const LatticeSampler<D>& u, const Index<D>& j, double s, double h,
                              const QuadratureControl& ctl = {}) {
  static_assert(D == 1 || D == 2);
  if (!(s > 0.0 && s < 1.0)) throw DomainError("frlap_semigroup_oracle: s must lie in (0, 1)");
  if (!(h > 0.0)) throw ConfigError("frlap_semigroup_oracle: h must be positive");
  const auto& hint = u.hint();
  if (!hint.is_compact()) throw ConfigError("frlap_semigroup_oracle: needs a compact support hint");
  long jmax = 0;
  for (long v : j) jmax = std::max(jmax, std::labs(v));
  const long L = jmax + hint.radius;
  const double c = hint.outside;
  const double uj = u(j);

  // differences d(m) = u_{j-m} - c over the box |m_i| <= L
  const long n = 2 * L + 1;
  std::vector<double> diff(D == 1 ? n : n * n);
  if constexpr (D == 1) {
    for (long m = -L; m <= L; ++m) diff[m + L] = u(Index<1>{j[0] - m}) - c;
  } else {
    for (long a = -L; a <= L; ++a)
      for (long b = -L; b <= L; ++b) diff[(a + L) * n + (b + L)] = u(Index<2>{j[0] - a, j[1] - b}) - c;
  }

  // e^{tau Delta} u_j - u_j = sum_{box} G(m)(u_{j-m} - u_j) + (c - u_j) * mass outside the box
  auto defect = [&](double tau) {
    const bool small = tau < 25.0 + L;
    const long kmax = small ? L + 40 + static_cast<long>(std::ceil(4.0 * std::sqrt(tau))) : L;
    const auto g = bessel_i_scaled_sequence(static_cast<int>(kmax), 2.0 * tau);
    double outside_1d;  // sum_{|m| > L} G(m)
    if (small) {
      CompensatedSum o;
      for (long m = kmax; m > L; --m) o += 2.0 * g[m];
      outside_1d = o.value();
    } else {
      CompensatedSum in;
      in += g[0];
      for (long m = 1; m <= L; ++m) in += 2.0 * g[m];
      outside_1d = 1.0 - in.value();
    }
    CompensatedSum acc;
    if constexpr (D == 1) {
      for (long m = -L; m <= L; ++m)
        if (m != 0) acc += g[std::labs(m)] * (diff[m + L] + c - uj);
      acc += (c - uj) * outside_1d;
    } else {
      for (long a = -L; a <= L; ++a)
        for (long b = -L; b <= L; ++b)
          if (a != 0 || b != 0) acc += g[std::labs(a)] * g[std::labs(b)] * (diff[(a + L) * n + (b + L)] + c - uj);
      // 1 - (1 - o)^2 = o (2 - o)
      acc += (c - uj) * outside_1d * (2.0 - outside_1d);
    }
    return acc.value();
  };

  const double big_t = 200.0 * (static_cast<double>(L) * L + 1.0);
  auto integrand = [&](double v) { return defect(std::exp(v)) * std::exp(-s * v); };
  const double lower = -45.0 / (1.0 - s);
  std::vector<double> breaks{lower, -5.0, 0.0};
  if (L > 1) breaks.push_back(std::log(0.25 * double(L) * L));
  breaks.push_back(std::log(big_t));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double integral = integrate_pieces(integrand, breaks, ctl).value;

  // tau > T: defect = (c - u_j) + sum_box G(m) (u_{j-m} - c)
  integral += (c - uj) * std::pow(big_t, -s) / s;
  if constexpr (D == 1) {
    for (long m = -L; m <= L; ++m)
      if (diff[m + L] != 0.0)
        integral += diff[m + L] * detail::heat_mellin_tail(std::array<int, 1>{int(m)}, -s, big_t);
  } else {
    for (long a = -L; a <= L; ++a)
      for (long b = -L; b <= L; ++b)
        if (const double d = diff[(a + L) * n + (b + L)]; d != 0.0)
          integral += d * detail::heat_mellin_tail(std::array<int, 2>{int(a), int(b)}, -s, big_t);
  }
  return -s / std::tgamma(1.0 - s) * std::pow(h, -2.0 * s) * integral;
}

}  // namespace fdlap
