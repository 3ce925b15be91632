// Solves (-Delta_h)^s u = f on hZ for the ball datum f = (1 - x^2)_+^{1-s} and compares
// with the exact solution for a sequence of mesh sizes.

#include <cmath>
#include <cstdio>

#include "fdlap.hpp"

using namespace fdlap;

int main() {
  const double s = 0.25;
  const auto p = pair_ball(BallExponent::one_minus_s, s, 1);
  std::printf("Poisson solve, s = %.2f, window |x| <= 2\n", s);
  std::printf("%8s %8s %14s %14s\n", "h", "N", "sup error", "relative");
  for (double h : {0.2, 0.1, 0.05, 0.025}) {
    const long J = std::lround(2.0 / h);
    const auto w = window_1d(h, -J, J);
    const auto f = restrict_1d(p.f, w, f_hint(p, h));
    OperatorConfig cfg;
    cfg.order = SignedOrder(-s);
    cfg.tail = TailMode::zero;
    cfg.N = J + f.hint().radius;
    const auto u = apply_frint_1d(f, w, cfg);
    double err = 0.0, ref = 0.0;
    for (long j = -J; j <= J; ++j) {
      err = std::max(err, std::abs(u.at(j) - p.u(h * j)));
      ref = std::max(ref, std::abs(p.u(h * j)));
    }
    std::printf("%8.3f %8ld %14.6e %14.6e\n", h, cfg.N, err, err / ref);
  }
  return 0;
}
