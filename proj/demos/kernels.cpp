// Prints the first kernel coefficients of (-Delta_h)^s and (-Delta_h)^{-s} in 1D and 2D
// next to their power-law main terms.

#include <cstdio>

#include "fdlap.hpp"

using namespace fdlap;

int main() {
  const double s = 0.25;
  std::printf("1D, s = %.2f: Sigma_s = %.12f\n", s, sigma_s(s));
  std::printf("%4s %18s %18s %18s\n", "m", "K_s(m)", "main term", "K_{-s}(m)");
  for (long m : {1L, 2L, 4L, 8L, 16L, 64L, 256L, 1024L})
    std::printf("%4ld %18.10e %18.10e %18.10e\n", m, kernel_ks(s, m), kernel1d_asymptotic(SignedOrder(s), m),
                kernel_kminus(s, m));

  std::printf("\n2D, s = %.2f: Sigma_2,s = %.12f, K_{-s}(0,0) = %.12f\n", s, sigma_2s(s), kernel2d_kminus_center(s));
  const Kernel2DTable t(SignedOrder(s), 16, KernelSource::hybrid, 6);
  std::printf("%4s %4s %18s %18s %14s\n", "m1", "m2", "K_s(m)", "main term", "entry");
  for (auto [a, b] : {std::pair{1L, 0L}, {1L, 1L}, {3L, 2L}, {6L, 6L}, {10L, 3L}, {16L, 16L}})
    std::printf("%4ld %4ld %18.10e %18.10e %14s\n", a, b, t(a, b), kernel2d_asymptotic(SignedOrder(s), a, b),
                to_string(t.tag(a, b)));
  return 0;
}
