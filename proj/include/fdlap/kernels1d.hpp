#pragma once

// One-dimensional kernels of (-Delta_h)^{s} and (-Delta_h)^{-s}.

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
#include "fdlap/mellin.hpp"
#include "fdlap/specfun.hpp"
#include "fdlap/summation.hpp"

namespace fdlap {

/// Signed order: value > 0 is the Laplacian power s, value < 0 the integral power -s.
class SignedOrder {
 public:
  explicit SignedOrder(double value) : value_(value) {
    if (value > 0.0 && value < 1.0) return;
    if (value < 0.0 && value > -0.5) return;
    if (value <= -0.5 && value > -1.0)
      throw DomainError("integral order requires s in (0, 1/2); got s = " + std::to_string(-value));
    throw DomainError("order s must lie in (0, 1) (negative values select the integral in (0, 1/2))");
  }
  double value() const noexcept { return value_; }
  double s() const noexcept { return std::abs(value_); }
  bool integral() const noexcept { return value_ < 0.0; }
  auto operator<=>(const SignedOrder&) const = default;

 private:
  double value_;
};

namespace detail {

inline void require_laplacian_s(double s, const char* who) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError(std::string(who) + ": s must lie in (0, 1)");
}
inline void require_integral_s(double s, const char* who) {
  if (!(s > 0.0 && s < 0.5)) throw DomainError(std::string(who) + ": s must lie in (0, 1/2)");
}

}  // namespace detail

/// c_s = 4^s Gamma(1/2 + s) / (sqrt(pi) |Gamma(-s)|),  |Gamma(-s)| = Gamma(1 - s) / s.
inline double c_s(double s) {
  detail::require_laplacian_s(s, "c_s");
  return s * std::pow(4.0, s) * std::tgamma(0.5 + s) /
         (std::sqrt(std::numbers::pi) * std::tgamma(1.0 - s));
}

/// Constant of the power law K_{-s}(m) ~ c_{-s} / |m|^{1-2s}.
inline double c_minus_s(double s) {
  detail::require_integral_s(s, "c_minus_s");
  return std::pow(4.0, -s) * std::tgamma(0.5 - s) / (std::sqrt(std::numbers::pi) * std::tgamma(s));
}

inline double kernel_ks(double s, long m) {
  detail::require_laplacian_s(s, "kernel_ks");
  const double a = static_cast<double>(std::labs(m));
  if (a == 0.0) return 0.0;
  return c_s(s) * gamma_ratio(a - s, a + 1.0 + s);
}

inline double kernel_kminus(double s, long m) {
  detail::require_integral_s(s, "kernel_kminus");
  const double a = static_cast<double>(std::labs(m));
  const double front = std::pow(4.0, -s) * std::tgamma(0.5 - s) / std::sqrt(std::numbers::pi);
  if (a == 0.0) return front / std::tgamma(1.0 - s);
  return c_minus_s(s) * gamma_ratio(a + s, a + 1.0 - s);
}

/// Sum over m != 0 of K_s(m).
inline double sigma_s(double s) {
  detail::require_laplacian_s(s, "sigma_s");
  return std::pow(4.0, s) * std::tgamma(0.5 + s) /
         (std::sqrt(std::numbers::pi) * std::tgamma(1.0 + s));
}

/// Sum over |m| > n of K_s(m), from the telescoping identity
/// Gamma(m-s)/Gamma(m+1+s) = [Gamma(m-s)/Gamma(m+s) - Gamma(m+1-s)/Gamma(m+1+s)] / (2s).
inline double kernel_ks_tail(double s, long n) {
  detail::require_laplacian_s(s, "kernel_ks_tail");
  if (n < 0) throw DomainError("kernel_ks_tail: radius must be nonnegative");
  const double a = static_cast<double>(n) + 1.0;
  return c_s(s) / s * gamma_ratio(a - s, a + s);
}

/// Kernel from the semigroup representation (independent of the closed form).
inline double kernel_ks_oracle(double s, long m, const QuadratureControl& ctl = {}) {
  detail::require_laplacian_s(s, "kernel_ks_oracle");
  if (m == 0) throw DomainError("kernel_ks_oracle: m must be nonzero");
  const std::array<int, 1> idx{static_cast<int>(m)};
  return heat_kernel_mellin(idx, -s, ctl) * s / std::tgamma(1.0 - s);
}

inline double kernel_kminus_oracle(double s, long m, const QuadratureControl& ctl = {}) {
  detail::require_integral_s(s, "kernel_kminus_oracle");
  const std::array<int, 1> idx{static_cast<int>(m)};
  return heat_kernel_mellin(idx, s, ctl) / std::tgamma(s);
}

/// Leading power law c_s/|m|^{1+2s} (or c_{-s}/|m|^{1-2s}); m != 0.
inline double kernel1d_asymptotic(SignedOrder order, long m) {
  if (m == 0) throw DomainError("kernel1d_asymptotic: m must be nonzero");
  const double a = static_cast<double>(std::labs(m));
  const double s = order.s();
  if (order.integral()) return c_minus_s(s) * std::pow(a, 2.0 * s - 1.0);
  return c_s(s) * std::pow(a, -1.0 - 2.0 * s);
}

/// C_s with K_s(m) <= C_s / |m|^{1+2s} for all m != 0.
inline double kernel_bound_constant(double s) { return std::max(kernel_ks(s, 1), c_s(s)); }

enum class KernelSource { closed_form, quadrature, asymptotic, hybrid };

inline const char* to_string(KernelSource k) {
  switch (k) {
    case KernelSource::closed_form: return "closed";
    case KernelSource::quadrature: return "quadrature";
    case KernelSource::asymptotic: return "asymptotic";
    case KernelSource::hybrid: return "hybrid";
  }
  return "?";
}

/// Immutable kernel values K(m), m = 0..radius (the kernel is even in m).
class KernelTable {
 public:
  KernelTable(SignedOrder order, long radius, KernelSource source = KernelSource::closed_form,
              long crossover = 12)
      : order_(order), radius_(radius), source_(source) {
    if (radius < 1) throw ConfigError("KernelTable: radius must be >= 1");
    if (source == KernelSource::hybrid && crossover < 1)
      throw ConfigError("KernelTable: hybrid crossover must be >= 1");
    const double s = order.s();
    values_.resize(static_cast<std::size_t>(radius) + 1);
#pragma omp parallel for schedule(dynamic, 16)
    for (long m = 0; m <= radius; ++m) values_[m] = entry(s, m, crossover);
    if (!order.integral()) tail_ = kernel_ks_tail(s, radius);
  }

  SignedOrder order() const noexcept { return order_; }
  long radius() const noexcept { return radius_; }
  KernelSource source() const noexcept { return source_; }
  double operator[](long m) const { return values_.at(static_cast<std::size_t>(std::labs(m))); }
  const std::vector<double>& values() const noexcept { return values_; }
  /// Power of h multiplying the lattice sum: -2s for the Laplacian, +2s for the integral.
  double h_exponent() const noexcept { return order_.integral() ? 2.0 * order_.s() : -2.0 * order_.s(); }
  /// Sum over |m| > radius of the exact kernel (Laplacian order only, zero otherwise).
  double tail_sum() const noexcept { return tail_; }

 private:
  double entry(double s, long m, long crossover) const {
    const bool neg = order_.integral();
    auto closed = [&] { return neg ? kernel_kminus(s, m) : kernel_ks(s, m); };
    if (m == 0) return closed();
    switch (source_) {
      case KernelSource::closed_form: return closed();
      case KernelSource::asymptotic: return kernel1d_asymptotic(order_, m);
      case KernelSource::hybrid:
        if (m > crossover) return closed();
        [[fallthrough]];
      case KernelSource::quadrature:
        return neg ? kernel_kminus_oracle(s, m) : kernel_ks_oracle(s, m);
    }
    return closed();
  }

  SignedOrder order_;
  long radius_;
  KernelSource source_;
  std::vector<double> values_;
  double tail_ = 0.0;
};

/// Shared immutable table per (order, radius, source); thread safe.
inline std::shared_ptr<const KernelTable> kernel_table(SignedOrder order, long radius,
                                                       KernelSource source = KernelSource::closed_form) {
  using Key = std::tuple<double, long, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const KernelTable>> cache;
  const Key key{order.value(), radius, static_cast<int>(source)};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const KernelTable>(order, radius, source);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(table)).first->second;
}

}  // namespace fdlap
