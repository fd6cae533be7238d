/**
 * @file quad.hpp
 * @brief Quadrature and summation engines: panelled Gauss--Legendre with
 *        doubling refinement, midpoint contour rules, and certified
 *        truncation for one-sided and bilateral infinite sums.
 */

#ifndef QASKEY_QUAD_HPP
#define QASKEY_QUAD_HPP

#include <functional>

#include "qaskey/qcore.hpp"

namespace qaskey {

namespace quad {

/// 16-point Gauss--Legendre nodes/weights on [-1, 1].
template <typename R>
struct GL16 {
  static constexpr int N = 16;
  static const std::array<R, 8>& nodes() {
    static const std::array<R, 8> x = {
        R(0.0950125098376374401853193L), R(0.2816035507792589132304605L),
        R(0.4580167776572273863424194L), R(0.6178762444026437484466718L),
        R(0.7554044083550030338951012L), R(0.8656312023878317438804679L),
        R(0.9445750230732325760779884L), R(0.9894009349916499325961542L)};
    return x;
  }
  static const std::array<R, 8>& weights() {
    static const std::array<R, 8> w = {
        R(0.1894506104550684962853967L), R(0.1826034150449235888667637L),
        R(0.1691565193950025381893121L), R(0.1495959888165767320815017L),
        R(0.1246289712555338720524763L), R(0.0951585116824927848099251L),
        R(0.0622535239386478928628438L), R(0.0271524594117540948517806L)};
    return w;
  }
};

/// Fixed Gauss--Legendre pass with `panels` equal subintervals of [a, b].
template <typename R, typename F>
Complex<R> gl_fixed(F&& f, R a, R b, int panels) {
  const auto& xs = GL16<R>::nodes();
  const auto& ws = GL16<R>::weights();
  Complex<R> total(R(0));
  const R h = (b - a) / R(panels);
  for (int p = 0; p < panels; ++p) {
    const R mid = a + h * (R(p) + R(0.5));
    const R half = h / R(2);
    Complex<R> acc(R(0));
    for (int i = 0; i < 8; ++i) {
      acc += ws[i] * (f(mid + half * xs[i]) + f(mid - half * xs[i]));
    }
    total += acc * half;
  }
  return total;
}

/// Adaptive (doubling) Gauss--Legendre integration over [a, b].
template <typename R, typename F>
Complex<R> integrate(F&& f, R a, R b, R tol = R(1e-12),
                     int start_panels = 4, int max_panels = 1024) {
  Complex<R> prev = gl_fixed(f, a, b, start_panels);
  for (int panels = 2 * start_panels; panels <= max_panels; panels *= 2) {
    const Complex<R> cur = gl_fixed(f, a, b, panels);
    if (std::abs(cur - prev) <= tol * (R(1) + std::abs(cur))) return cur;
    prev = cur;
  }
  throw QuadratureError("panel refinement stalled before tolerance");
}

/// Midpoint rule with doubling, for analytic integrands whose endpoints are
/// best avoided (contour integrals with endpoint poles nearby).
template <typename R, typename F>
Complex<R> midpoint(F&& f, R a, R b, R tol = R(1e-11), int start = 32,
                    int cap = 8192) {
  auto pass = [&](int m) {
    Complex<R> s(R(0));
    const R h = (b - a) / R(m);
    for (int j = 0; j < m; ++j) s += f(a + h * (R(j) + R(0.5)));
    return s * h;
  };
  Complex<R> prev = pass(start);
  for (int m = 2 * start; m <= cap; m *= 2) {
    const Complex<R> cur = pass(m);
    if (std::abs(cur - prev) <= tol * (R(1) + std::abs(cur))) return cur;
    prev = cur;
  }
  throw QuadratureError("midpoint refinement stalled before tolerance");
}

/// One-sided infinite sum with certified truncation.  Terms are expected to
/// decay (super-)geometrically after an initial transient; in fixed
/// precision the computed terms of ill-conditioned summands eventually hit a
/// roundoff floor and grow again, so the rule also truncates at the smallest
/// term once substantial decay has been observed (classical smallest-term
/// truncation).
template <typename R, typename F>
Complex<R> sum_terms(F&& term, long long cap = 400, R rel_eps = R(1e-14)) {
  Complex<R> s(R(0));
  int small_run = 0;
  R prev_mag = R(0), peak = R(0);
  bool decayed = false;
  for (long long m = 0; m < cap; ++m) {
    const Complex<R> t = term(m);
    const R mag = std::abs(t);
    peak = std::max(peak, mag);
    if (m > 0 && peak > R(0) && prev_mag < peak * R(1e-6)) decayed = true;
    if (decayed && m > 2 && mag > prev_mag && prev_mag > R(0)) {
      // Noise floor reached: drop the growing term and stop.
      return s;
    }
    s += t;
    if (mag <= rel_eps * (std::abs(s) + R(1e-300))) {
      if (++small_run >= 3) return s;
    } else {
      small_run = 0;
    }
    prev_mag = mag;
  }
  throw ConvergenceError("series truncation failed within the index cap");
}

/// Bilateral sum: independent certified one-sided pieces for k >= 0 and
/// k < 0 (absolute convergence lets the two halves be summed separately).
template <typename R, typename F>
Complex<R> sum_bilateral(F&& term, long long cap = 400,
                         R rel_eps = R(1e-14)) {
  const Complex<R> plus =
      sum_terms<R>([&](long long m) { return term(m); }, cap, rel_eps);
  const Complex<R> minus =
      sum_terms<R>([&](long long m) { return term(-1 - m); }, cap, rel_eps);
  return plus + minus;
}

}  // namespace quad

}  // namespace qaskey

#endif  // QASKEY_QUAD_HPP
