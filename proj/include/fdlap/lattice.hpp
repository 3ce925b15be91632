#pragma once

// Lattice functions on Z^D (D = 1, 2), finite output windows, and restriction
// of continuous functions to the mesh hZ^D.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fdlap/errors.hpp"

namespace fdlap {

template <std::size_t D>
using Index = std::array<long, D>;

/// What is known about a lattice function away from the origin.
struct SupportHint {
  enum class Kind { none, compact, algebraic };
  Kind kind = Kind::none;
  /// compact: value(i) == outside whenever max|i_k| > radius.
  long radius = 0;
  double outside = 0.0;
  /// algebraic: |value(i)| ~ A |i|^{-decay} for large |i|.
  double decay = 0.0;

  static SupportHint none() { return {}; }
  static SupportHint compact(long radius, double outside = 0.0) {
    if (radius < 0) throw ConfigError("SupportHint: compact radius must be nonnegative");
    return {Kind::compact, radius, outside, 0.0};
  }
  static SupportHint algebraic(double decay) {
    if (!(decay > 0.0)) throw ConfigError("SupportHint: decay exponent must be positive");
    return {Kind::algebraic, 0, 0.0, decay};
  }
  bool is_compact() const noexcept { return kind == Kind::compact; }
};

/// A total function Z^D -> R with a support hint. Must be safe for concurrent reads.
template <std::size_t D>
class LatticeSampler {
 public:
  using Fn = std::function<double(const Index<D>&)>;

  LatticeSampler(Fn fn, SupportHint hint = {}) : fn_(std::move(fn)), hint_(hint) {}

  double operator()(const Index<D>& i) const {
    if (hint_.is_compact()) {
      for (long v : i)
        if (std::abs(v) > hint_.radius) return hint_.outside;
    }
    return fn_(i);
  }
  double operator()(long i) const
    requires(D == 1)
  {
    return (*this)(Index<1>{i});
  }
  const SupportHint& hint() const noexcept { return hint_; }

 private:
  Fn fn_;
  SupportHint hint_;
};

/// 1D convenience constructor from a function of one index.
inline LatticeSampler<1> sampler_1d(std::function<double(long)> f, SupportHint hint = {}) {
  return LatticeSampler<1>([f = std::move(f)](const Index<1>& i) { return f(i[0]); }, hint);
}

inline LatticeSampler<2> sampler_2d(std::function<double(long, long)> f, SupportHint hint = {}) {
  return LatticeSampler<2>([f = std::move(f)](const Index<2>& i) { return f(i[0], i[1]); }, hint);
}

/// Unit impulse at the origin.
template <std::size_t D>
LatticeSampler<D> impulse() {
  return LatticeSampler<D>(
      [](const Index<D>& i) {
        for (long v : i)
          if (v != 0) return 0.0;
        return 1.0;
      },
      SupportHint::compact(0));
}

/// Inclusive rectangular index window with mesh size h; x_k = h (j_k + offset_k / 2).
template <std::size_t D>
struct GridWindow {
  double h = 0.1;
  Index<D> lo{};
  Index<D> hi{};
  std::array<bool, D> half_offset{};

  void validate() const {
    if (!(h > 0.0)) throw ConfigError("GridWindow: h must be positive");
    for (std::size_t k = 0; k < D; ++k)
      if (hi[k] < lo[k]) throw ConfigError("GridWindow: empty index range");
  }
  long extent(std::size_t axis) const { return hi[axis] - lo[axis] + 1; }
  std::size_t size() const {
    std::size_t n = 1;
    for (std::size_t k = 0; k < D; ++k) n *= static_cast<std::size_t>(extent(k));
    return n;
  }
  double coordinate(std::size_t axis, long j) const {
    return h * (static_cast<double>(j) + (half_offset[axis] ? 0.5 : 0.0));
  }
  std::array<double, D> point(const Index<D>& j) const {
    std::array<double, D> x{};
    for (std::size_t k = 0; k < D; ++k) x[k] = coordinate(k, j[k]);
    return x;
  }
  /// Row-major position of j (first axis slowest).
  std::size_t offset(const Index<D>& j) const {
    std::size_t pos = 0;
    for (std::size_t k = 0; k < D; ++k) pos = pos * extent(k) + static_cast<std::size_t>(j[k] - lo[k]);
    return pos;
  }
  Index<D> index(std::size_t pos) const {
    Index<D> j{};
    for (std::size_t k = D; k-- > 0;) {
      const auto e = static_cast<std::size_t>(extent(k));
      j[k] = lo[k] + static_cast<long>(pos % e);
      pos /= e;
    }
    return j;
  }
  bool contains(const Index<D>& j) const {
    for (std::size_t k = 0; k < D; ++k)
      if (j[k] < lo[k] || j[k] > hi[k]) return false;
    return true;
  }
  long max_abs_index() const {
    long r = 0;
    for (std::size_t k = 0; k < D; ++k) r = std::max({r, std::abs(lo[k]), std::abs(hi[k])});
    return r;
  }
};

inline GridWindow<1> window_1d(double h, long lo, long hi, bool half_offset = false) {
  GridWindow<1> w{h, {lo}, {hi}, {half_offset}};
  w.validate();
  return w;
}

inline GridWindow<2> window_2d(double h, long lo, long hi, bool half_offset = false) {
  GridWindow<2> w{h, {lo, lo}, {hi, hi}, {half_offset, half_offset}};
  w.validate();
  return w;
}

/// Values materialized on a window, row-major.
template <std::size_t D>
struct GridValues {
  GridWindow<D> window;
  std::vector<double> values;

  explicit GridValues(const GridWindow<D>& w) : window(w), values(w.size(), 0.0) {}
  double& operator[](const Index<D>& j) { return values[window.offset(j)]; }
  double operator[](const Index<D>& j) const { return values[window.offset(j)]; }
  double& at(long j)
    requires(D == 1)
  {
    return values[static_cast<std::size_t>(j - window.lo[0])];
  }
  double at(long j) const
    requires(D == 1)
  {
    return values[static_cast<std::size_t>(j - window.lo[0])];
  }
};

/// Samples a sampler on a window.
template <std::size_t D>
GridValues<D> materialize(const LatticeSampler<D>& u, const GridWindow<D>& w) {
  GridValues<D> out(w);
  for (std::size_t p = 0; p < out.values.size(); ++p) out.values[p] = u(w.index(p));
  return out;
}

/// (r_h u)_j = u(x_j), with the half-cell offset of the window.
template <std::size_t D>
LatticeSampler<D> restrict_to_mesh(std::function<double(const std::array<double, D>&)> u,
                                   const GridWindow<D>& w, SupportHint hint = {}) {
  return LatticeSampler<D>([u = std::move(u), w](const Index<D>& j) { return u(w.point(j)); }, hint);
}

inline LatticeSampler<1> restrict_1d(std::function<double(double)> u, const GridWindow<1>& w,
                                     SupportHint hint = {}) {
  return restrict_to_mesh<1>([u = std::move(u)](const std::array<double, 1>& x) { return u(x[0]); }, w,
                             hint);
}

inline LatticeSampler<2> restrict_2d(std::function<double(double, double)> u, const GridWindow<2>& w,
                                     SupportHint hint = {}) {
  return restrict_to_mesh<2>(
      [u = std::move(u)](const std::array<double, 2>& x) { return u(x[0], x[1]); }, w, hint);
}

/// Mesh radius (in index units) covering the continuous support radius r:
/// every |j| beyond it has |h j| > r, with or without the half-cell offset.
inline long support_radius_in_cells(double r, double h) {
  return static_cast<long>(std::ceil(r / h * (1.0 - 1e-12)));
}

}  // namespace fdlap
