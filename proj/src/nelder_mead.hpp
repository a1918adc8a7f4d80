#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "errors.hpp"

namespace pskit::optim {

struct NelderMeadOptions {
  int max_evals = 1000;
  double init_step = 0.05;
  double shrink_tol = 1e-12;  // stop when the simplex collapses
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
};

/// Plain downhill simplex; bounded solely through the objective (callers
/// return a large penalty outside their feasible set).
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, const NelderMeadOptions& opt = {}) {
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  std::size_t n = x0.size();
  if (n == 0) fail(errc::invalid_argument, "empty start point");

  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.init_step;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  auto centroid_except = [&](std::size_t skip) {
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == skip) continue;
      for (std::size_t j = 0; j < n; ++j) c[j] += pts[i][j];
    }
    for (double& v : c) v /= static_cast<double>(n);
    return c;
  };
  auto blend = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = a[j] + t * (b[j] - a[j]);
    return r;
  };

  while (evals < opt.max_evals) {
    std::vector<std::size_t> order(n + 1);
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    std::size_t best = order[0], worst = order[n], second = order[n - 1];

    double spread = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      spread = std::max(spread, std::abs(pts[worst][j] - pts[best][j]));
    if (spread < opt.shrink_tol) break;

    auto c = centroid_except(worst);
    auto refl = blend(c, pts[worst], -alpha);
    double frefl = eval(refl);
    if (frefl < vals[best]) {
      auto exp_pt = blend(c, pts[worst], -gamma);
      double fexp = eval(exp_pt);
      if (fexp < frefl) {
        pts[worst] = std::move(exp_pt);
        vals[worst] = fexp;
      } else {
        pts[worst] = std::move(refl);
        vals[worst] = frefl;
      }
    } else if (frefl < vals[second]) {
      pts[worst] = std::move(refl);
      vals[worst] = frefl;
    } else {
      auto con = blend(c, pts[worst], rho);
      double fcon = eval(con);
      if (fcon < vals[worst]) {
        pts[worst] = std::move(con);
        vals[worst] = fcon;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          pts[i] = blend(pts[best], pts[i], sigma);
          vals[i] = eval(pts[i]);
          if (evals >= opt.max_evals) break;
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (vals[i] < vals[best]) best = i;
  return {pts[best], vals[best], evals};
}

}  // namespace pskit::optim
