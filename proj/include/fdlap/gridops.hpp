#pragma once

// Truncated application of (-Delta_h)^{s} and (-Delta_h)^{-s} to lattice functions.
//
// Laplacian, output point j:
//   h^{-2s} [ sum_{0<|m|<=N} (u_j - u_{j-m}) K(m) + u_j T_N - F3(j) ],
//   T_N = sum_{|m|>N} K(m),  F3(j) = sum_{|m|>N} u_{j-m} K(m).
// Integral:  h^{2s} [ sum_{|m|<=N} f_{j-m} K_{-s}(m) + U2(j) ].
// The far sums F3 / U2 are exact (zero), dropped (ignore) or extended to
// radius M with a power-law extrapolation beyond it (sampled).

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "fdlap/errors.hpp"
#include "fdlap/kernels1d.hpp"
#include "fdlap/kernels2d.hpp"
#include "fdlap/lattice.hpp"
#include "fdlap/specfun.hpp"
#include "fdlap/summation.hpp"

namespace fdlap {

enum class TailMode { zero, ignore, sampled };

inline const char* to_string(TailMode t) {
  switch (t) {
    case TailMode::zero: return "zero";
    case TailMode::ignore: return "ignore";
    case TailMode::sampled: return "sampled";
  }
  return "?";
}

struct OperatorConfig {
  SignedOrder order = SignedOrder(0.5);
  long N = 100;
  TailMode tail = TailMode::zero;
  long M = 0;
  KernelSource source = KernelSource::closed_form;
  long crossover = 12;

  void validate() const {
    if (N < 1) throw ConfigError("OperatorConfig: N must be >= 1");
    if (tail == TailMode::sampled && M <= N)
      throw ConfigError("OperatorConfig: sampled tail radius M must exceed N");
    if (source == KernelSource::hybrid && crossover < 1)
      throw ConfigError("OperatorConfig: hybrid crossover must be >= 1");
  }
};

namespace detail {

// u sampled on [lo, hi] for fast repeated access.
struct Dense1D {
  long lo = 0;
  std::vector<double> v;
  Dense1D(const LatticeSampler<1>& u, long lo_, long hi_) : lo(lo_), v(static_cast<std::size_t>(hi_ - lo_ + 1)) {
#pragma omp parallel for schedule(static)
    for (long i = lo_; i <= hi_; ++i) v[i - lo_] = u(i);
  }
  double operator()(long i) const { return v[static_cast<std::size_t>(i - lo)]; }
};

struct Dense2D {
  long lo = 0, n = 0;
  std::vector<double> v;
  Dense2D(const LatticeSampler<2>& u, long lo_, long hi_) : lo(lo_), n(hi_ - lo_ + 1) {
    v.resize(static_cast<std::size_t>(n * n));
#pragma omp parallel for schedule(static)
    for (long a = lo_; a <= hi_; ++a)
      for (long b = lo_; b <= hi_; ++b) v[(a - lo) * n + (b - lo)] = u(Index<2>{a, b});
  }
  double operator()(long a, long b) const { return v[static_cast<std::size_t>((a - lo) * n + (b - lo))]; }
};

inline std::shared_ptr<const KernelTable> table_1d(const OperatorConfig& cfg, long radius) {
  if (cfg.source == KernelSource::hybrid)
    return std::make_shared<const KernelTable>(cfg.order, radius, cfg.source, cfg.crossover);
  return kernel_table(cfg.order, radius, cfg.source);
}

inline KernelSource source_2d(const OperatorConfig& cfg) {
  return cfg.source == KernelSource::closed_form ? KernelSource::hybrid : cfg.source;
}

template <std::size_t D>
void check_zero_tail(const LatticeSampler<D>& u, const GridWindow<D>& w, long N, bool integral) {
  const auto& hint = u.hint();
  if (!hint.is_compact())
    throw ConfigError("tail mode 'zero' needs a compact support hint on the input");
  if (integral && hint.outside != 0.0)
    throw ConfigError("the integral operator needs data that vanish outside a bounded set");
  if (w.max_abs_index() + hint.radius > N)
    throw ConfigError("tail mode 'zero' needs N >= max|j| + support radius (" +
                      std::to_string(w.max_abs_index() + hint.radius) + "), got N = " + std::to_string(N));
}

// Far field sum_{m > M} v_{j - sigma m} c m^{-q} for data v_i ~ A |i|^{-p}, with A fixed
// by the last sampled value v_{j - sigma M}; first order in j/m.
inline double far_field(double anchor, long j, int sigma, long M, double p, double q, double c) {
  const double amp = anchor * std::pow(std::abs(static_cast<double>(j - sigma * M)), p);
  const double lead = hurwitz_zeta(p + q, M + 1.0);
  const double corr = sigma * p * static_cast<double>(j) * hurwitz_zeta(p + q + 1.0, M + 1.0);
  return c * amp * (lead + corr);
}

}  // namespace detail

/// (-Delta_h)^s u on a 1D window.
inline GridValues<1> apply_frlap_1d(const LatticeSampler<1>& u, const GridWindow<1>& w,
                                    const OperatorConfig& cfg) {
  cfg.validate();
  w.validate();
  if (cfg.order.integral()) throw DomainError("apply_frlap_1d: order must be positive (s in (0,1))");
  const double s = cfg.order.s();
  const long N = cfg.N;
  const bool sampled = cfg.tail == TailMode::sampled;
  if (cfg.tail == TailMode::zero) detail::check_zero_tail(u, w, N, false);
  const long R = sampled ? cfg.M : N;
  const auto near = detail::table_1d(cfg, N);
  const auto far = sampled ? kernel_table(cfg.order, cfg.M) : near;
  const detail::Dense1D ud(u, w.lo[0] - R, w.hi[0] + R);
  const auto& hint = u.hint();
  const double scale = std::pow(w.h, -2.0 * s);

  GridValues<1> out(w);
#pragma omp parallel for schedule(static)
  for (long j = w.lo[0]; j <= w.hi[0]; ++j) {
    const double uj = ud(j);
    CompensatedSum acc;
    for (long m = N; m >= 1; --m) acc += (*near)[m] * ((uj - ud(j - m)) + (uj - ud(j + m)));
    acc += uj * near->tail_sum();
    if (cfg.tail == TailMode::zero) {
      acc += -hint.outside * near->tail_sum();
    } else if (sampled) {
      CompensatedSum f3;
      for (long m = cfg.M; m > N; --m) f3 += (*far)[m] * (ud(j - m) + ud(j + m));
      if (hint.is_compact()) {
        f3 += hint.outside * far->tail_sum();
      } else if (hint.kind == SupportHint::Kind::algebraic) {
        for (int sigma : {1, -1})
          f3 += detail::far_field(ud(j - sigma * cfg.M), j, sigma, cfg.M, hint.decay, 1.0 + 2.0 * s, c_s(s));
      }
      acc += -f3.value();
    }
    out.at(j) = scale * acc.value();
  }
  return out;
}

/// (-Delta_h)^{-s} f on a 1D window, s in (0, 1/2).
inline GridValues<1> apply_frint_1d(const LatticeSampler<1>& f, const GridWindow<1>& w,
                                    const OperatorConfig& cfg) {
  cfg.validate();
  w.validate();
  if (!cfg.order.integral()) throw DomainError("apply_frint_1d: order must be negative (integral power)");
  const double s = cfg.order.s();
  const long N = cfg.N;
  const bool sampled = cfg.tail == TailMode::sampled;
  if (cfg.tail == TailMode::zero) detail::check_zero_tail(f, w, N, true);
  const auto& hint = f.hint();
  if (hint.is_compact() && hint.outside != 0.0)
    throw ConfigError("the integral operator needs data that vanish outside a bounded set");
  if (sampled && hint.kind == SupportHint::Kind::algebraic && !(hint.decay > 2.0 * s))
    throw ConfigError("the integral of data decaying like |x|^{-p} diverges unless p > 2s");
  const long R = sampled ? cfg.M : N;
  const auto near = detail::table_1d(cfg, N);
  const auto far = sampled ? kernel_table(cfg.order, cfg.M) : near;
  const detail::Dense1D fd(f, w.lo[0] - R, w.hi[0] + R);
  const double scale = std::pow(w.h, 2.0 * s);

  GridValues<1> out(w);
#pragma omp parallel for schedule(static)
  for (long j = w.lo[0]; j <= w.hi[0]; ++j) {
    CompensatedSum acc;
    for (long m = N; m >= 1; --m) acc += (*near)[m] * (fd(j - m) + fd(j + m));
    acc += (*near)[0] * fd(j);
    if (sampled) {
      for (long m = cfg.M; m > N; --m) acc += (*far)[m] * (fd(j - m) + fd(j + m));
      if (hint.kind == SupportHint::Kind::algebraic)
        for (int sigma : {1, -1})
          acc += detail::far_field(fd(j - sigma * cfg.M), j, sigma, cfg.M, hint.decay, 1.0 - 2.0 * s,
                                   c_minus_s(s));
    }
    out.at(j) = scale * acc.value();
  }
  return out;
}

namespace detail {

// Full (2R+1)^2 kernel array: table entries up to the table radius, power law beyond.
inline std::vector<double> dense_kernel_2d(const Kernel2DTable& table, long R) {
  const long n = 2 * R + 1;
  std::vector<double> k(static_cast<std::size_t>(n * n), 0.0);
  for (long a = -R; a <= R; ++a)
    for (long b = -R; b <= R; ++b) {
      if (a == 0 && b == 0 && !table.order().integral()) continue;
      const bool inside = std::max(std::labs(a), std::labs(b)) <= table.radius();
      k[(a + R) * n + (b + R)] = inside ? table(a, b) : kernel2d_asymptotic(table.order(), a, b);
    }
  return k;
}

inline long dense_range_2d(const GridWindow<2>& w, long R) { return w.max_abs_index() + R; }

}  // namespace detail

/// (-Delta_h)^s u on a 2D window. Near kernel from a Kernel2DTable
/// (closed_form maps to hybrid), far kernel c_{2,s}/|m|^{2+2s}.
inline GridValues<2> apply_frlap_2d(const LatticeSampler<2>& u, const GridWindow<2>& w,
                                    const OperatorConfig& cfg) {
  cfg.validate();
  w.validate();
  if (cfg.order.integral()) throw DomainError("apply_frlap_2d: order must be positive (s in (0,1))");
  const double s = cfg.order.s();
  const long N = cfg.N;
  const bool sampled = cfg.tail == TailMode::sampled;
  if (cfg.tail == TailMode::zero) detail::check_zero_tail(u, w, N, false);
  const long R = sampled ? cfg.M : N;
  const auto table = kernel2d_table(cfg.order, N, detail::source_2d(cfg), std::min(cfg.crossover, N));
  const double tail_n = sigma_2s(s) - table->full_sum();
  const auto kern = detail::dense_kernel_2d(*table, R);
  const long kn = 2 * R + 1;
  double ring_sum = 0.0;  // sum of the power law over N < max|m| <= M
  if (sampled) {
    CompensatedSum acc;
    for (long a = -R; a <= R; ++a)
      for (long b = -R; b <= R; ++b)
        if (std::max(std::labs(a), std::labs(b)) > N) acc += kern[(a + R) * kn + (b + R)];
    ring_sum = acc.value();
  }
  const long L = detail::dense_range_2d(w, R);
  const detail::Dense2D ud(u, -L, L);
  const auto& hint = u.hint();
  const double scale = std::pow(w.h, -2.0 * s);

  GridValues<2> out(w);
  const auto npts = static_cast<long>(w.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long p = 0; p < npts; ++p) {
    const auto j = w.index(static_cast<std::size_t>(p));
    const double uj = ud(j[0], j[1]);
    CompensatedSum acc;
    CompensatedSum f3;
    for (long a = -R; a <= R; ++a) {
      const double* krow = &kern[(a + R) * kn + R];
      const bool far_row = std::labs(a) > N;
      for (long b = -R; b <= R; ++b) {
        const double v = ud(j[0] - a, j[1] - b);
        if (far_row || std::labs(b) > N)
          f3 += krow[b] * v;
        else
          acc += krow[b] * (uj - v);
      }
    }
    acc += uj * tail_n;
    if (cfg.tail == TailMode::zero) acc += -hint.outside * tail_n;
    if (sampled) {
      if (hint.is_compact()) f3 += hint.outside * (tail_n - ring_sum);
      acc += -f3.value();
    }
    out[j] = scale * acc.value();
  }
  return out;
}

/// (-Delta_h)^{-s} f on a 2D window, s in (0, 1/2). The centre weight is the 3F2 value.
inline GridValues<2> apply_frint_2d(const LatticeSampler<2>& f, const GridWindow<2>& w,
                                    const OperatorConfig& cfg) {
  cfg.validate();
  w.validate();
  if (!cfg.order.integral()) throw DomainError("apply_frint_2d: order must be negative (integral power)");
  const double s = cfg.order.s();
  const long N = cfg.N;
  const bool sampled = cfg.tail == TailMode::sampled;
  if (cfg.tail == TailMode::zero) detail::check_zero_tail(f, w, N, true);
  if (f.hint().is_compact() && f.hint().outside != 0.0)
    throw ConfigError("the integral operator needs data that vanish outside a bounded set");
  const long R = sampled ? cfg.M : N;
  const auto table = kernel2d_table(cfg.order, N, detail::source_2d(cfg), std::min(cfg.crossover, N));
  const auto kern = detail::dense_kernel_2d(*table, R);
  const long kn = 2 * R + 1;
  const long L = detail::dense_range_2d(w, R);
  const detail::Dense2D fd(f, -L, L);
  const double scale = std::pow(w.h, 2.0 * s);

  GridValues<2> out(w);
  const auto npts = static_cast<long>(w.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long p = 0; p < npts; ++p) {
    const auto j = w.index(static_cast<std::size_t>(p));
    CompensatedSum acc;
    for (long a = -R; a <= R; ++a) {
      const double* krow = &kern[(a + R) * kn + R];
      for (long b = -R; b <= R; ++b) acc += krow[b] * fd(j[0] - a, j[1] - b);
    }
    out[j] = scale * acc.value();
  }
  return out;
}

}  // namespace fdlap
