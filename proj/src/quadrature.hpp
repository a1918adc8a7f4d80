#pragma once

#include <cmath>
#include <functional>

#include "errors.hpp"

namespace pskit::quadrature {

namespace detail {

template <typename F>
double simpson_step(F&& f, double a, double m, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction.
template <typename F>
double adaptive(F&& f, double a, double b, double tol = 1e-10, int max_depth = 40) {
  if (!(a < b)) fail(errc::invalid_argument, "quadrature needs a < b");
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace pskit::quadrature
