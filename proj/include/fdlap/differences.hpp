#pragma once

// First-order divided differences and discrete Hoelder seminorms in 1D.

#include <algorithm>
#include <cmath>

#include "fdlap/errors.hpp"
#include "fdlap/lattice.hpp"

namespace fdlap {

namespace detail {

inline SupportHint differenced_hint(const SupportHint& h) {
  switch (h.kind) {
    case SupportHint::Kind::compact: return SupportHint::compact(h.radius + 1, 0.0);
    case SupportHint::Kind::algebraic: return SupportHint::algebraic(h.decay + 1.0);
    default: return {};
  }
}

}  // namespace detail

/// (D+ u)_j = (u_{j+1} - u_j) / h as a new lattice function.
inline LatticeSampler<1> d_plus(const LatticeSampler<1>& u, double h) {
  if (!(h > 0.0)) throw ConfigError("d_plus: h must be positive");
  return sampler_1d([u, h](long j) { return (u(j + 1) - u(j)) / h; }, detail::differenced_hint(u.hint()));
}

/// (D- u)_j = (u_j - u_{j-1}) / h as a new lattice function.
inline LatticeSampler<1> d_minus(const LatticeSampler<1>& u, double h) {
  if (!(h > 0.0)) throw ConfigError("d_minus: h must be positive");
  return sampler_1d([u, h](long j) { return (u(j) - u(j - 1)) / h; }, detail::differenced_hint(u.hint()));
}

inline GridValues<1> d_plus(const LatticeSampler<1>& u, const GridWindow<1>& w) {
  return materialize(d_plus(u, w.h), w);
}

inline GridValues<1> d_minus(const LatticeSampler<1>& u, const GridWindow<1>& w) {
  return materialize(d_minus(u, w.h), w);
}

/// D+ of grid values; the result lives on [lo, hi - 1].
inline GridValues<1> d_plus(const GridValues<1>& v) {
  const auto& w = v.window;
  if (w.extent(0) < 2) throw ConfigError("d_plus: window needs at least two points");
  GridValues<1> out(GridWindow<1>{w.h, {w.lo[0]}, {w.hi[0] - 1}, w.half_offset});
  for (long j = w.lo[0]; j < w.hi[0]; ++j) out.at(j) = (v.at(j + 1) - v.at(j)) / w.h;
  return out;
}

/// D- of grid values; the result lives on [lo + 1, hi].
inline GridValues<1> d_minus(const GridValues<1>& v) {
  const auto& w = v.window;
  if (w.extent(0) < 2) throw ConfigError("d_minus: window needs at least two points");
  GridValues<1> out(GridWindow<1>{w.h, {w.lo[0] + 1}, {w.hi[0]}, w.half_offset});
  for (long j = w.lo[0] + 1; j <= w.hi[0]; ++j) out.at(j) = (v.at(j) - v.at(j - 1)) / w.h;
  return out;
}

/// [u]_{C_h^{k,beta}}: sup over pairs i != j of |v_i - v_j| / (h |i - j|)^beta,
/// with v = u (k = 0) or v = D+ u (k = 1).
inline double holder_seminorm(const GridValues<1>& u, double beta, int k) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("holder_seminorm: beta must lie in (0, 1]");
  if (k != 0 && k != 1) throw DomainError("holder_seminorm: k must be 0 or 1");
  if (u.window.extent(0) < 2) throw ConfigError("holder_seminorm: window needs at least two points");
  if (k == 1) return holder_seminorm(d_plus(u), beta, 0);
  const auto& v = u.values;
  const double h = u.window.h;
  const auto n = static_cast<long>(v.size());
  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(dynamic, 16)
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      best = std::max(best, std::abs(v[i] - v[j]) / std::pow(h * double(j - i), beta));
  return best;
}

/// ||u||_{C_h^{k,beta}} = sum_{l <= k} sup |D+^l u| + [u]_{C_h^{k,beta}}.
inline double holder_norm(const GridValues<1>& u, double beta, int k) {
  auto sup = [](const GridValues<1>& g) {
    double m = 0.0;
    for (double x : g.values) m = std::max(m, std::abs(x));
    return m;
  };
  double total = sup(u) + holder_seminorm(u, beta, k);
  if (k == 1) total += sup(d_plus(u));
  return total;
}

}  // namespace fdlap
