#pragma once

// h-refinement studies: consistency errors against reference pairs, fitted
// log-log slopes, and h-uniformity of the discrete Hoelder mapping constants.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "fdlap/differences.hpp"
#include "fdlap/errors.hpp"
#include "fdlap/gridops.hpp"
#include "fdlap/lattice.hpp"
#include "fdlap/reference.hpp"

namespace fdlap {

/// Physical lengths of a refinement study; index radii scale like 1/h.
struct StudySetup {
  double window = 2.0;  ///< output window [-window, window]
  double near = 10.0;   ///< N h
  double far = 0.0;     ///< M h (sampled tail only)
  TailMode tail = TailMode::sampled;
  KernelSource source = KernelSource::closed_form;
  bool origin_only = false;  ///< measure the error at j = 0 only
  bool half_offset = false;

  void validate() const {
    if (!(window > 0.0 && near > 0.0)) throw ConfigError("StudySetup: window and near radius must be positive");
    if (tail == TailMode::sampled && !(far > near))
      throw ConfigError("StudySetup: sampled tail needs far > near");
  }
  long index(double length, double h) const { return std::max(1L, std::lround(length / h)); }
  OperatorConfig config(double s, double h) const {
    OperatorConfig c;
    c.order = SignedOrder(s);
    c.N = index(near, h);
    c.tail = tail;
    c.M = tail == TailMode::sampled ? index(far, h) : 0;
    c.source = source;
    return c;
  }
};

namespace detail {

template <std::size_t D>
double central_sup(const GridValues<D>& got, const std::function<double(const Index<D>&)>& want, long half) {
  double err = 0.0;
  for (std::size_t p = 0; p < got.values.size(); ++p) {
    const auto j = got.window.index(p);
    bool inner = true;
    for (long v : j) inner = inner && std::labs(v) <= half;
    if (inner) err = std::max(err, std::abs(got.values[p] - want(j)));
  }
  return err;
}

}  // namespace detail

/// sup over the central half of the window of |D+^l (-Delta_h)^s r_h u - r_h f^{(l)}|, l in {0, 1}.
inline double consistency_error(const SolutionPair& pair, double h, const StudySetup& setup, int l = 0) {
  setup.validate();
  if (l != 0 && l != 1) throw DomainError("consistency_error: derivative level must be 0 or 1");
  if (l == 1 && (pair.dim != 1 || !pair.df))
    throw ConfigError("consistency_error: pair '" + pair.name + "' has no analytic derivative of f");
  const auto cfg = setup.config(pair.s, h);
  const long J = setup.origin_only ? 0 : setup.index(setup.window, h);
  const long half = J / 2;
  if (pair.dim == 1) {
    const auto w = window_1d(h, -J, J + l, setup.half_offset);
    const auto u = restrict_1d(pair.u, w, u_hint(pair, h));
    auto out = apply_frlap_1d(u, w, cfg);
    if (l == 1) out = d_plus(out);
    const auto& g = l == 1 ? pair.df : pair.f;
    return detail::central_sup<1>(out, [&](const Index<1>& j) { return g(w.coordinate(0, j[0])); }, half);
  }
  const auto w = window_2d(h, -J, J, setup.half_offset);
  const auto u = restrict_2d(pair.u2, w, u_hint(pair, h));
  const auto out = apply_frlap_2d(u, w, cfg);
  return detail::central_sup<2>(
      out, [&](const Index<2>& j) { return pair.f2(w.coordinate(0, j[0]), w.coordinate(1, j[1])); }, half);
}

struct ConvergenceReport {
  std::string pair;
  int dim = 1;
  double s = 0.0;
  int level = 0;
  std::vector<double> h;
  std::vector<double> error;
  double slope = 0.0;
  double exponent = 0.0;
  double slack = 0.15;
  bool pass = false;
  bool degenerate = false;
  bool descriptive = false;  ///< no pass threshold (2D)
  std::string tail;
  double near = 0.0, far = 0.0;
  std::string note;
};

/// Least-squares slope of log e against log h.
inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& e) {
  if (h.size() != e.size() || h.size() < 2) throw ConfigError("loglog_slope: need at least two points");
  double mx = 0, my = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    mx += std::log(h[i]) / n;
    my += std::log(e[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(e[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

/// Predicted rate beta + k - 2s - l for u in C^{k,beta}.
inline double theoretical_rate(double beta, int k, double s, int l) { return beta + k - 2.0 * s - l; }

inline void require_refinement(const std::vector<double>& h) {
  if (h.size() < 3) throw ConfigError("refinement study needs at least three mesh sizes");
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0)) throw ConfigError("mesh sizes must be positive");
    if (i > 0 && !(h[i] < h[i - 1])) throw ConfigError("mesh sizes must be strictly decreasing");
  }
}

/// Consistency errors over h_list, fitted slope and pass flag slope >= exponent - slack.
inline ConvergenceReport rate_study(const SolutionPair& pair, int l, const std::vector<double>& h_list,
                                    const StudySetup& setup, double exponent, double slack = 0.15) {
  require_refinement(h_list);
  ConvergenceReport r;
  r.pair = pair.name;
  r.dim = pair.dim;
  r.s = pair.s;
  r.level = l;
  r.h = h_list;
  r.exponent = exponent;
  r.slack = slack;
  r.tail = to_string(setup.tail);
  r.near = setup.near;
  r.far = setup.far;
  r.descriptive = pair.dim == 2;
  for (double h : h_list) r.error.push_back(consistency_error(pair, h, setup, l));
  if (std::all_of(r.error.begin(), r.error.end(), [](double e) { return e == 0.0; })) {
    r.degenerate = true;
    r.note = "all errors vanish; no slope fitted";
    return r;
  }
  if (std::any_of(r.error.begin(), r.error.end(), [](double e) { return !(e > 0.0); })) {
    r.degenerate = true;
    r.note = "some errors vanish; slope undefined";
    return r;
  }
  r.slope = loglog_slope(r.h, r.error);
  if (!r.descriptive) r.pass = r.slope >= exponent - slack;
  return r;
}

enum class HolderMode { zero_order, first_order };

struct HolderReport {
  HolderMode mode = HolderMode::zero_order;
  double beta = 0.0, s = 0.0, out_exponent = 0.0, band = 3.0;
  std::vector<double> h, input_norm, output_seminorm, ratio;
  bool pass = false;
  bool degenerate = false;
};

/// Ratios [(-Delta_h)^s u]_{C^{0,gamma}} / ||u||_{C^{k,beta}} with gamma = beta - 2s (zero_order,
/// k = 0) or beta - 2s + 1 (first_order, k = 1) for u supported in [-support, support].
/// Passes when every ratio lies within a factor band of the coarsest one.
inline HolderReport holder_mapping_study(const std::function<double(double)>& u, double support, HolderMode mode,
                                         double beta, double s, const std::vector<double>& h_list,
                                         double window, double band = 3.0) {
  require_refinement(h_list);
  HolderReport r;
  r.mode = mode;
  r.beta = beta;
  r.s = s;
  r.band = band;
  r.h = h_list;
  const int k = mode == HolderMode::first_order ? 1 : 0;
  r.out_exponent = beta - 2.0 * s + k;
  if (mode == HolderMode::zero_order && !(2.0 * s < beta))
    throw DomainError("holder_mapping_study: zero-order mode needs 2s < beta");
  if (mode == HolderMode::first_order && !(2.0 * s > beta))
    throw DomainError("holder_mapping_study: first-order mode needs 2s > beta");
  if (!(r.out_exponent > 0.0 && r.out_exponent <= 1.0))
    throw DomainError("holder_mapping_study: output exponent must lie in (0, 1]");
  if (!(window > support)) throw ConfigError("holder_mapping_study: window must contain the support");
  for (double h : h_list) {
    const long J = std::lround(window / h);
    const auto w = window_1d(h, -J, J);
    const auto us = restrict_1d(u, w, SupportHint::compact(support_radius_in_cells(support, h)));
    OperatorConfig cfg;
    cfg.order = SignedOrder(s);
    cfg.N = J + us.hint().radius;
    cfg.tail = TailMode::zero;
    const auto out = apply_frlap_1d(us, w, cfg);
    r.input_norm.push_back(holder_norm(materialize(us, w), beta, k));
    r.output_seminorm.push_back(holder_seminorm(out, r.out_exponent, 0));
    r.ratio.push_back(r.input_norm.back() > 0.0 ? r.output_seminorm.back() / r.input_norm.back() : 0.0);
  }
  if (r.ratio.front() == 0.0) {
    r.degenerate = true;
    return r;
  }
  r.pass = std::all_of(r.ratio.begin(), r.ratio.end(), [&](double q) {
    return q <= band * r.ratio.front() && q >= r.ratio.front() / band;
  });
  return r;
}

}  // namespace fdlap
