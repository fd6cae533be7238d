/**
 * @file qcore.hpp
 * @brief q-shifted factorials (all index regimes), q-binomial coefficients,
 *        the modified Jacobi theta function and the Jackson q-integral.
 *
 * Conventions:
 *   (a;q)_n     = (1-a)(1-qa)...(1-q^{n-1}a),  (a;q)_0 = 1,
 *   (a;q)_{-n}  = 1 / prod_{k=1..n} (1 - a q^{-k}),
 *   (a;q)_inf   = prod_{k>=0} (1 - a q^k),
 *   theta(z;q)  = (z;q)_inf (q/z;q)_inf,
 *   qint(f,a,b) = (1-q) sum_{k>=0} q^k [ b f(q^k b) - a f(q^k a) ].
 *
 * Infinite products/sums are truncated under a certified geometric tail bound
 * (see eps_trunc below).
 */

#ifndef QASKEY_QCORE_HPP
#define QASKEY_QCORE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <vector>

#include "qaskey/errors.hpp"
#include "qaskey/types.hpp"

namespace qaskey {

/// Library-wide truncation threshold for infinite sums/products.
template <typename R>
constexpr R eps_trunc() {
  return R(1e-18);
}

/// Iteration cap for all defensive loops.
inline constexpr int kIterCap = 100000;

/// (a;q)_n for any integer n (negative included).
template <typename R>
Complex<R> qpoch(Complex<R> a, const BaseQ<R>& base, long long n) {
  const Complex<R> q = base.q;
  Complex<R> r(R(1));
  if (n >= 0) {
    Complex<R> qk(R(1));
    for (long long k = 0; k < n; ++k) {
      r *= Complex<R>(R(1)) - a * qk;
      qk *= q;
    }
    return r;
  }
  Complex<R> qmk(R(1));
  for (long long k = 1; k <= -n; ++k) {
    qmk /= q;  // q^{-k}
    const Complex<R> f = Complex<R>(R(1)) - a * qmk;
    if (f == Complex<R>(R(0)))
      throw DomainError("qpoch: vanishing factor in negative-index product");
    r /= f;
  }
  return r;
}

/// Product of (a;q)_n over a list of parameters a.
template <typename R>
Complex<R> qpoch_many(std::initializer_list<Complex<R>> as,
                      const BaseQ<R>& base, long long n) {
  Complex<R> r(R(1));
  for (const auto& a : as) r *= qpoch(a, base, n);
  return r;
}

template <typename R>
Complex<R> qpoch_many(const std::vector<Complex<R>>& as, const BaseQ<R>& base,
                      long long n) {
  Complex<R> r(R(1));
  for (const auto& a : as) r *= qpoch(a, base, n);
  return r;
}

/// (a;q)_inf, |q| < 1, truncated once |a q^N| < eps_trunc and the partial
/// product has stabilized.
template <typename R>
Complex<R> qpoch_inf(Complex<R> a, const BaseQ<R>& base) {
  const Complex<R> q = base.q;
  const R aq = std::abs(q);
  if (!(aq < R(1)))
    throw DomainError("qpoch_inf: requires |q| < 1 (disk regime)");
  if (a == Complex<R>(R(0))) return Complex<R>(R(1));
  Complex<R> r(R(1));
  Complex<R> aqk = a;  // a q^k
  for (int k = 0; k < kIterCap; ++k) {
    r *= Complex<R>(R(1)) - aqk;
    aqk *= q;
    if (std::abs(aqk) < eps_trunc<R>()) return r;
  }
  throw ConvergenceError("qpoch_inf: iteration cap exceeded");
}

template <typename R>
Complex<R> qpoch_inf_many(std::initializer_list<Complex<R>> as,
                          const BaseQ<R>& base) {
  Complex<R> r(R(1));
  for (const auto& a : as) r *= qpoch_inf(a, base);
  return r;
}

template <typename R>
Complex<R> qpoch_inf_many(const std::vector<Complex<R>>& as,
                          const BaseQ<R>& base) {
  Complex<R> r(R(1));
  for (const auto& a : as) r *= qpoch_inf(a, base);
  return r;
}

/// q-binomial coefficient [n k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}).
template <typename R>
Complex<R> qbinom(long long n, long long k, const BaseQ<R>& base) {
  if (n < 0 || k < 0 || k > n)
    throw DomainError("qbinom: requires 0 <= k <= n");
  const Complex<R> q = base.q;
  return qpoch(q, base, n) / (qpoch(q, base, k) * qpoch(q, base, n - k));
}

/// Modified Jacobi theta function theta(z;q) = (z;q)_inf (q/z;q)_inf.
template <typename R>
Complex<R> theta(Complex<R> z, const BaseQ<R>& base) {
  if (z == Complex<R>(R(0))) throw DomainError("theta: requires z != 0");
  return qpoch_inf(z, base) * qpoch_inf(base.q / z, base);
}

/// Bilateral-sum form of the theta function via Jacobi's triple product:
///   (q;q)_inf theta(z;q) = sum_{k in Z} (-1)^k q^{binom(k,2)} z^k.
/// Returns theta(z;q) computed from the truncated bilateral sum; used as a
/// cross-check of the product form.
template <typename R>
Complex<R> theta_bilateral(Complex<R> z, const BaseQ<R>& base) {
  if (z == Complex<R>(R(0))) throw DomainError("theta: requires z != 0");
  const Complex<R> q = base.q;
  Complex<R> s(R(1));  // k = 0 term
  // Positive k: term_k = (-1)^k q^{C(k,2)} z^k.
  Complex<R> t(R(1));
  for (int k = 1; k < kIterCap; ++k) {
    t *= -z * ipow(q, k - 1);
    s += t;
    if (std::abs(t) < eps_trunc<R>() * (R(1) + std::abs(s))) break;
  }
  // Negative k: term_{-k} = (-1)^k q^{C(k+1,2)} z^{-k}.
  t = Complex<R>(R(1));
  for (int k = 1; k < kIterCap; ++k) {
    t *= -ipow(q, k) / z;
    s += t;
    if (std::abs(t) < eps_trunc<R>() * (R(1) + std::abs(s))) break;
  }
  return s / qpoch_inf(q, base);
}

/// Jackson q-integral of f over [a, b] with tail tolerance tol.
template <typename R>
Complex<R> jackson_qintegral(const std::function<Complex<R>(Complex<R>)>& f,
                             Complex<R> a, Complex<R> b, const BaseQ<R>& base,
                             R tol = R(1e-15)) {
  const Complex<R> q = base.q;
  if (!(std::abs(q) < R(1)))
    throw DomainError("jackson_qintegral: requires |q| < 1");
  auto one_sided = [&](Complex<R> end) -> Complex<R> {
    if (end == Complex<R>(R(0))) return Complex<R>(R(0));
    Complex<R> s(R(0));
    Complex<R> qk(R(1));
    int small = 0;
    for (int k = 0; k < kIterCap; ++k) {
      const Complex<R> term = qk * end * f(end * qk);
      s += term;
      if (std::abs(term) < tol * (R(1) + std::abs(s))) {
        if (++small >= 3) return s;
      } else {
        small = 0;
      }
      qk *= q;
    }
    throw ConvergenceError("jackson_qintegral: terms failed to decay");
  };
  return (Complex<R>(R(1)) - q) * (one_sided(b) - one_sided(a));
}

/// Residual of the binomial-coefficient addition identities
///   binom(n+k,2) = binom(n,2) + binom(k,2) + nk          (integer)
///   binom(mu,2)  = mu(mu-1)/2                            (general degree)
/// Returns the max absolute residual; exactly 0 in integer cases.
template <typename R>
R binom_identities_check(long long n, long long k, Complex<R> mu) {
  const R r1 =
      std::abs(static_cast<R>(c2(n + k)) -
               static_cast<R>(c2(n) + c2(k) + k * n));
  // The complex extension evaluated two ways.
  const Complex<R> lhs = c2(mu + Complex<R>(R(1))) - c2(mu);
  const R r2 = std::abs(lhs - mu);  // C(mu+1,2) - C(mu,2) = mu
  return std::max(r1, r2);
}

}  // namespace qaskey

#endif  // QASKEY_QCORE_HPP
