#pragma once

// Two-dimensional kernels: quadrature of the product heat-kernel representation,
// the leading power laws, and a symmetry-reduced hybrid table.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "fdlap/errors.hpp"
#include "fdlap/kernels1d.hpp"
#include "fdlap/mellin.hpp"
#include "fdlap/specfun.hpp"
#include "fdlap/summation.hpp"

namespace fdlap {

inline double c_2s(double s) {
  detail::require_laplacian_s(s, "c_2s");
  return s * std::pow(4.0, s) * std::tgamma(1.0 + s) / (std::numbers::pi * std::tgamma(1.0 - s));
}

inline double c_2minus_s(double s) {
  detail::require_integral_s(s, "c_2minus_s");
  return std::pow(4.0, -s) * std::tgamma(1.0 - s) / (std::numbers::pi * std::tgamma(s));
}

inline double kernel2d_ks_oracle(double s, long m1, long m2, const QuadratureControl& ctl = {}) {
  detail::require_laplacian_s(s, "kernel2d_ks_oracle");
  if (m1 == 0 && m2 == 0) throw DomainError("kernel2d_ks_oracle: m must be nonzero");
  const std::array<int, 2> idx{static_cast<int>(m1), static_cast<int>(m2)};
  return heat_kernel_mellin(idx, -s, ctl) * s / std::tgamma(1.0 - s);
}

inline double kernel2d_kminus_oracle(double s, long m1, long m2, const QuadratureControl& ctl = {}) {
  detail::require_integral_s(s, "kernel2d_kminus_oracle");
  const std::array<int, 2> idx{static_cast<int>(m1), static_cast<int>(m2)};
  return heat_kernel_mellin(idx, s, ctl) / std::tgamma(s);
}

/// K_{-s}(0, 0) = 4^{-s} 3F2(1/2, (1+s)/2, s/2; 1, 1; 1).
inline double kernel2d_kminus_center(double s) {
  detail::require_integral_s(s, "kernel2d_kminus_center");
  return std::pow(4.0, -s) * hyp_3f2_unit(0.5, 0.5 * (1.0 + s), 0.5 * s, 1.0, 1.0);
}

/// c_{2,s}/|m|^{2+2s} or c_{2,-s}/|m|^{2-2s}.
inline double kernel2d_asymptotic(SignedOrder order, long m1, long m2) {
  if (m1 == 0 && m2 == 0) throw DomainError("kernel2d_asymptotic: m must be nonzero");
  const double r2 = double(m1) * double(m1) + double(m2) * double(m2);
  const double s = order.s();
  if (order.integral()) return c_2minus_s(s) * std::pow(r2, s - 1.0);
  return c_2s(s) * std::pow(r2, -1.0 - s);
}

/// Sum of K_s(m) over m in Z^2 \ {0}.
inline double sigma_2s(double s) {
  detail::require_laplacian_s(s, "sigma_2s");
  return heat_kernel_defect_moment<2>(s) * s / std::tgamma(1.0 - s);
}

enum class EntrySource { quadrature, asymptotic, hypergeometric, zero };

inline const char* to_string(EntrySource e) {
  switch (e) {
    case EntrySource::quadrature: return "quadrature";
    case EntrySource::asymptotic: return "asymptotic";
    case EntrySource::hypergeometric: return "hypergeometric";
    case EntrySource::zero: return "zero";
  }
  return "?";
}

/// Kernel values on the octant 0 <= m2 <= m1 <= R; other indices by symmetry.
class Kernel2DTable {
 public:
  /// source: quadrature, asymptotic or hybrid (quadrature for max|m_i| <= crossover).
  Kernel2DTable(SignedOrder order, long radius, KernelSource source, long crossover = 12)
      : order_(order), radius_(radius), source_(source), crossover_(crossover) {
    if (radius < 1) throw ConfigError("Kernel2DTable: radius must be >= 1");
    if (source == KernelSource::closed_form)
      throw ConfigError("Kernel2DTable: no closed form exists in two dimensions");
    if (source == KernelSource::hybrid && !(crossover >= 1 && crossover <= radius))
      throw ConfigError("Kernel2DTable: hybrid crossover must satisfy 1 <= crossover <= radius");
    if (source == KernelSource::quadrature) crossover_ = radius;
    if (source == KernelSource::asymptotic) crossover_ = 0;
    const std::size_t n = index(radius, radius) + 1;
    values_.resize(n);
    tags_.resize(n);
    const double s = order.s();
    const bool neg = order.integral();
#pragma omp parallel for schedule(dynamic, 8)
    for (long a = 0; a <= radius; ++a) {
      for (long b = 0; b <= a; ++b) {
        const std::size_t k = index(a, b);
        if (a == 0) {
          values_[k] = neg ? kernel2d_kminus_center(s) : 0.0;
          tags_[k] = neg ? EntrySource::hypergeometric : EntrySource::zero;
        } else if (a <= crossover_) {
          values_[k] = neg ? kernel2d_kminus_oracle(s, a, b) : kernel2d_ks_oracle(s, a, b);
          tags_[k] = EntrySource::quadrature;
        } else {
          values_[k] = kernel2d_asymptotic(order, a, b);
          tags_[k] = EntrySource::asymptotic;
        }
      }
    }
  }

  SignedOrder order() const noexcept { return order_; }
  long radius() const noexcept { return radius_; }
  long crossover() const noexcept { return crossover_; }
  KernelSource source() const noexcept { return source_; }
  double h_exponent() const noexcept { return order_.integral() ? 2.0 * order_.s() : -2.0 * order_.s(); }

  double operator()(long m1, long m2) const { return values_.at(checked(m1, m2)); }
  EntrySource tag(long m1, long m2) const { return tags_.at(checked(m1, m2)); }

  /// Sum of the table over 0 < max(|m1|, |m2|) <= R, all eight octants.
  double full_sum() const {
    CompensatedSum acc;
    for (long a = radius_; a >= 1; --a)
      for (long b = 0; b <= a; ++b) {
        const double mult = (b == 0 || b == a) ? 4.0 : 8.0;
        acc += mult * values_[index(a, b)];
      }
    return acc.value();
  }

 private:
  static std::size_t index(long a, long b) {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(a + 1) / 2 + static_cast<std::size_t>(b);
  }
  std::size_t checked(long m1, long m2) const {
    long a = std::labs(m1), b = std::labs(m2);
    if (b > a) std::swap(a, b);
    if (a > radius_) throw ConfigError("Kernel2DTable: index outside the table radius");
    return index(a, b);
  }

  SignedOrder order_;
  long radius_;
  KernelSource source_;
  long crossover_;
  std::vector<double> values_;
  std::vector<EntrySource> tags_;
};

inline Kernel2DTable build_hybrid_table(SignedOrder order, long radius, long crossover) {
  if (crossover < 1) throw ConfigError("build_hybrid_table: crossover must be >= 1");
  return Kernel2DTable(order, radius, KernelSource::hybrid, crossover);
}

/// Shared immutable 2D table per (order, radius, source, crossover); thread safe.
inline std::shared_ptr<const Kernel2DTable> kernel2d_table(SignedOrder order, long radius,
                                                           KernelSource source, long crossover = 12) {
  using Key = std::tuple<double, long, int, long>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const Kernel2DTable>> cache;
  const Key key{order.value(), radius, static_cast<int>(source),
                source == KernelSource::hybrid ? crossover : 0};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const Kernel2DTable>(order, radius, source, crossover);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(table)).first->second;
}

}  // namespace fdlap
