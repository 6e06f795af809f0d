#pragma once

// One-dimensional numerical kernel. Every routine is deterministic: identical
// inputs give bit-identical outputs.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>

#include "specalloc/errors.hpp"

namespace specalloc::numerics {

template <typename F>
concept ScalarFunction = std::invocable<F&, double> &&
                         std::convertible_to<std::invoke_result_t<F&, double>, double>;

struct MinimizeResult {
  double x_min = 0.0;
  double f_min = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Golden-section iterations allowed before minimize_bracketed gives up.
inline constexpr int kMaxIterations = 200;
/// Grid size used to seed bracketed refinement.
inline constexpr std::size_t kSeedGridPoints = 4096;

enum class DifferenceOrder { First = 1, Second = 2 };

namespace detail {

[[noreturn]] void throw_non_finite(double x, double fx);
[[noreturn]] void throw_bad_interval(const char* op, double lo, double hi);
[[noreturn]] void throw_no_convergence(const char* op, double width, double tol);

template <ScalarFunction F>
double evaluate(F& f, double x) {
  const double fx = static_cast<double>(f(x));
  if (!std::isfinite(fx)) throw_non_finite(x, fx);
  return fx;
}

// Keeps the lower value; ties go to the smaller abscissa.
inline void keep_better(MinimizeResult& best, double x, double fx) {
  if (fx < best.f_min || (fx == best.f_min && x < best.x_min)) {
    best.x_min = x;
    best.f_min = fx;
  }
}

// Replaces an interior estimate by the vertex of the parabola through x - h,
// x, x + h, with h doubled until the second difference stands well clear of
// rounding noise. The vertex is kept only if f there is no worse than f(x)
// up to that noise.
template <ScalarFunction F>
void refine_vertex(F& f, double lo, double hi, double h, MinimizeResult& best) {
  constexpr double eps = 2.220446049250313e-16;
  const double x = best.x_min;
  const double f0 = best.f_min;
  for (int step = 0; step < 64 && lo <= x - h && x + h <= hi; ++step, h *= 2.0) {
    const double fp = evaluate(f, x + h);
    const double fm = evaluate(f, x - h);
    best.evaluations += 2;
    const double d2 = fp - 2.0 * f0 + fm;
    const double noise = eps * std::fmax(std::fabs(f0), std::fmax(std::fabs(fp), std::fabs(fm)));
    if (!(d2 > 1e4 * noise)) continue;
    const double v = x - h * (fp - fm) / (2.0 * d2);
    if (!(std::fabs(v - x) <= h)) return;
    const double fv = evaluate(f, v);
    ++best.evaluations;
    if (fv <= f0 + 4.0 * noise) {
      best.x_min = v;
      best.f_min = fv;
    }
    return;
  }
}

}  // namespace detail

/// Golden-section reduction of [lo, hi] until its width is at most x_tol.
///
/// The endpoints are evaluated too, so a minimum pinned at either end is
/// reported exactly. An interior result is finished with a single parabolic
/// vertex step, which resolves flat minima below the square-root-of-epsilon
/// limit of value comparisons. Throws SolverError if the bracket stops shrinking or the
/// iteration budget runs out, and DomainError on an empty interval.
template <ScalarFunction F>
MinimizeResult minimize_bracketed(F&& f, double lo, double hi, double x_tol,
                                  int max_iterations = kMaxIterations) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    detail::throw_bad_interval("minimize_bracketed", lo, hi);
  }
  if (!(x_tol > 0.0)) throw DomainError("minimize_bracketed: x_tol must be positive");

  constexpr double inv_phi = 0.6180339887498948482;
  MinimizeResult best{lo, detail::evaluate(f, lo), 1, false};
  detail::keep_better(best, hi, detail::evaluate(f, hi));
  best.evaluations = 2;

  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = detail::evaluate(f, c);
  double fd = detail::evaluate(f, d);
  best.evaluations += 2;

  for (int iter = 0; b - a > x_tol; ++iter) {
    if (iter == max_iterations) {
      detail::throw_no_convergence("minimize_bracketed", b - a, x_tol);
    }
    const double width = b - a;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = detail::evaluate(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = detail::evaluate(f, d);
    }
    ++best.evaluations;
    if (!(b - a < width) || !(c < d)) {
      detail::throw_no_convergence("minimize_bracketed", b - a, x_tol);
    }
  }

  detail::keep_better(best, c, fc);
  detail::keep_better(best, d, fd);
  if (lo < best.x_min && best.x_min < hi) detail::refine_vertex(f, lo, hi, x_tol, best);
  best.converged = true;
  return best;
}

/// Brute-force scan of n equally spaced points lo + i (hi - lo)/(n - 1).
/// Ties go to the smaller x.
template <ScalarFunction F>
MinimizeResult grid_minimum(F&& f, double lo, double hi, std::size_t n) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    detail::throw_bad_interval("grid_minimum", lo, hi);
  }
  if (n < 2) throw DomainError("grid_minimum: need at least 2 points, got " + std::to_string(n));

  const double step = (hi - lo) / static_cast<double>(n - 1);
  MinimizeResult best{lo, detail::evaluate(f, lo), n, true};
  for (std::size_t i = 1; i < n; ++i) {
    const double x = (i + 1 == n) ? hi : lo + static_cast<double>(i) * step;
    const double fx = detail::evaluate(f, x);
    if (fx < best.f_min) {
      best.x_min = x;
      best.f_min = fx;
    }
  }
  return best;
}

/// Global minimum without assuming unimodality: a grid scan picks the best
/// cell pair, then golden-section refinement runs inside it.
template <ScalarFunction F>
MinimizeResult seeded_minimum(F&& f, double lo, double hi, double x_tol,
                              std::size_t grid_points = kSeedGridPoints) {
  const MinimizeResult coarse = grid_minimum(f, lo, hi, grid_points);
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  const double left = std::fmax(lo, coarse.x_min - step);
  const double right = std::fmin(hi, coarse.x_min + step);
  MinimizeResult fine = minimize_bracketed(f, left, right, x_tol);
  fine.evaluations += coarse.evaluations;
  detail::keep_better(fine, coarse.x_min, coarse.f_min);
  return fine;
}

/// Central finite difference of the given order with step h.
template <ScalarFunction F>
double central_difference(F&& f, double x, double h, DifferenceOrder order) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("central_difference: h must be positive");
  const double forward = detail::evaluate(f, x + h);
  const double backward = detail::evaluate(f, x - h);
  if (order == DifferenceOrder::First) return (forward - backward) / (2.0 * h);
  const double centre = detail::evaluate(f, x);
  return (forward - 2.0 * centre + backward) / (h * h);
}

/// Bisection on a sign change; returns the midpoint of the final bracket.
template <ScalarFunction F>
double bisect_root(F&& f, double lo, double hi, double tol) {
  if (!(lo < hi)) detail::throw_bad_interval("bisect_root", lo, hi);
  if (!(tol > 0.0)) throw DomainError("bisect_root: tol must be positive");
  double f_lo = detail::evaluate(f, lo);
  const double f_hi = detail::evaluate(f, hi);
  if (!(f_lo * f_hi < 0.0)) {
    throw DomainError("bisect_root: no sign change on [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  for (int iter = 0; hi - lo > tol; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi || iter == 4 * kMaxIterations) {
      detail::throw_no_convergence("bisect_root", hi - lo, tol);
    }
    const double f_mid = detail::evaluate(f, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace specalloc::numerics
