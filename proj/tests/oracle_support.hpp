#pragma once

// Reference implementations used only by the test suite. Everything here is
// deliberately independent of the library code paths it checks: long double
// erfc for tail probabilities, plain adaptive Simpson for integrals, and
// centered differences for derivatives.

#include <cmath>
#include <functional>
#include <vector>

namespace reference {

inline long double upper_tail_ld(long double x) {
  return erfcl(x * 0.70710678118654752440L) / 2.0L;
}

inline long double phi_ld(long double x) {
  return 0.39894228040143267794L * expl(-0.5L * x * x);
}

// Adaptive Simpson on [a, b]; fn must be smooth inside the interval, so
// callers split at kinks themselves.
inline double simpson(const std::function<double(double)>& fn, double a, double b,
                      double tol, int depth = 24) {
  struct Rec {
    static double run(const std::function<double(double)>& f, double a, double m,
                      double b, double fa, double fm, double fb, double whole,
                      double tol, int depth) {
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
      }
      return run(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
             run(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
    }
  };
  const double m = 0.5 * (a + b);
  const double fa = fn(a), fm = fn(m), fb = fn(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Rec::run(fn, a, m, b, fa, fm, fb, whole, tol, depth);
}

// Five-point centered first difference.
inline double diff5(const std::function<double(double)>& fn, double x, double h) {
  return (fn(x - 2 * h) - 8.0 * fn(x - h) + 8.0 * fn(x + h) - fn(x + 2 * h)) /
         (12.0 * h);
}

// Log-spaced grid between a and b inclusive.
inline std::vector<double> log_grid(double a, double b, int count) {
  std::vector<double> g(count);
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < count; ++i) {
    g[i] = std::exp(la + (lb - la) * i / (count - 1));
  }
  return g;
}

}  // namespace reference
