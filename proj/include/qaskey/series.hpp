/**
 * @file series.hpp
 * @brief Terminating and nonterminating basic hypergeometric series
 *        (including zero-padded van de Bult--Rains forms), closed-form
 *        summation theorems, transformations and limit transitions.
 *
 * Core definition: for numerator parameters a_1..a_r, denominator parameters
 * b_1..b_s and offset m (zero padding resolved into the exponent),
 *
 *   phi = sum_k  (a_1..a_r;q)_k / ((q,b_1..b_s;q)_k)
 *                * ((-1)^k q^{binom(k,2)})^{1+s-r+m} * z^k,
 *
 * entire in z if s-r+m > 0, convergent for |z| < 1 if s-r+m = 0, divergent
 * unless terminating if s-r+m < 0.  Zero parameters contribute (0;q)_k = 1
 * but count toward r and s.
 */

#ifndef QASKEY_SERIES_HPP
#define QASKEY_SERIES_HPP

#include <optional>
#include <utility>
#include <vector>

#include "qaskey/qcore.hpp"

namespace qaskey {

enum class SeriesClass { terminating, convergent, divergent_rejected };

/// Shape of a basic hypergeometric series.
///
/// For transformation routines the parameter ORDER is significant: when
/// `termination` is set, numer[0] must be q^{-n}; the remaining numerator
/// and denominator parameters are matched positionally.
template <typename R>
struct SeriesSpec {
  std::vector<Complex<R>> numer;
  std::vector<Complex<R>> denom;
  BaseQ<R> base;
  Complex<R> arg{};
  int vdbr_offset = 0;  ///< m in the offset notation; 0 = plain series
  std::optional<long long> termination;

  /// Exponent e = 1 + s - r + m applied to (-1)^k q^{binom(k,2)}.
  int sign_power() const {
    return 1 + static_cast<int>(denom.size()) -
           static_cast<int>(numer.size()) + vdbr_offset;
  }

  /// Convergence index: with the leading numerator parameter counted
  /// separately (the r+1 phi s labeling), this is s - r + m, which equals
  /// the sign power.  Entire if > 0; needs |arg| < 1 if 0; divergent unless
  /// terminating if < 0.
  int convergence_index() const { return sign_power(); }

  /// Validate structural invariants; throws on violation.
  void validate() const {
    base.validate();
    const long long cap = termination ? *termination : -1;
    for (const auto& b : denom) {
      if (b == Complex<R>(R(0))) continue;  // explicit padded zero
      // b must avoid q^{-k}, k = 0..cap-1 (terminating) or all k >= 0.
      Complex<R> qmk(R(1));
      for (long long k = 0; k < kIterCap; ++k) {
        if (termination && k >= cap) break;
        if (!termination && std::abs(qmk) > R(4) * std::abs(b) + R(16)) break;
        if (std::abs(b - qmk) <= R(1e-12) * std::abs(qmk))
          throw DomainError("series: denominator parameter on the q^{-k} grid");
        qmk /= base.q;
      }
    }
    if (termination) {
      if (*termination < 0) throw ShapeError("series: negative termination degree");
      const Complex<R> target = ipow(Complex<R>(base.q), -*termination);
      bool found = false;
      for (const auto& a : numer)
        if (std::abs(a - target) <= R(1e-9) * std::abs(target)) found = true;
      if (!found)
        throw ShapeError("series: termination set but q^{-n} not a numerator parameter");
    }
  }
};

/// Result of a series evaluation.
template <typename R>
struct SeriesValue {
  Complex<R> value{};
  long long terms_used = 0;
  R tail_bound = R(0);
  SeriesClass cls = SeriesClass::convergent;
};

/// Evaluate the series described by `spec`.
template <typename R>
SeriesValue<R> eval_phi(const SeriesSpec<R>& spec) {
  spec.validate();
  const Complex<R> q = spec.base.q;
  const int e = spec.sign_power();
  SeriesValue<R> out;

  if (spec.termination) {
    const long long n = *spec.termination;
    out.cls = SeriesClass::terminating;
    Complex<R> term(R(1));
    Complex<R> sum(R(1));
    Complex<R> qk(R(1));  // q^k
    for (long long k = 0; k < n; ++k) {
      Complex<R> ratio = spec.arg;
      for (const auto& a : spec.numer) ratio *= Complex<R>(R(1)) - a * qk;
      Complex<R> den = Complex<R>(R(1)) - q * qk;  // (q;q) factor
      for (const auto& b : spec.denom) den *= Complex<R>(R(1)) - b * qk;
      if (den == Complex<R>(R(0)))
        throw DomainError("series: vanishing denominator factor");
      ratio /= den;
      if (e != 0) {
        Complex<R> sgn = -qk;  // (-1) q^k
        ratio *= (e > 0) ? ipow(sgn, e) : Complex<R>(R(1)) / ipow(sgn, -e);
      }
      term *= ratio;
      sum += term;
      qk *= q;
    }
    out.value = sum;
    out.terms_used = n + 1;
    return out;
  }

  const int ci = spec.convergence_index();
  if (ci < 0)
    throw DivergenceError("series: nonterminating with s - r + m < 0");
  if (ci == 0 && !(std::abs(spec.arg) < R(1)))
    throw ConvergenceError("series: |arg| >= 1 in the balanced-count case");

  Complex<R> term(R(1));
  Complex<R> sum(R(1));
  Complex<R> qk(R(1));
  int small = 0;
  for (long long k = 0; k < kIterCap; ++k) {
    Complex<R> ratio = spec.arg;
    for (const auto& a : spec.numer) ratio *= Complex<R>(R(1)) - a * qk;
    Complex<R> den = Complex<R>(R(1)) - q * qk;
    for (const auto& b : spec.denom) den *= Complex<R>(R(1)) - b * qk;
    if (den == Complex<R>(R(0)))
      throw DomainError("series: vanishing denominator factor");
    ratio /= den;
    if (e != 0) ratio *= ipow(Complex<R>(-qk), e);
    term *= ratio;
    sum += term;
    qk *= q;
    const R rho = std::abs(ratio);
    if (std::abs(term) < eps_trunc<R>() * std::abs(sum) && rho < R(1)) {
      if (++small >= 3) {
        out.value = sum;
        out.terms_used = k + 2;
        out.tail_bound = std::abs(term) * rho / (R(1) - rho);
        return out;
      }
    } else {
      small = 0;
    }
  }
  throw ConvergenceError("series: iteration cap exceeded");
}

/// Convenience evaluation returning just the value.
template <typename R>
Complex<R> phi(std::vector<Complex<R>> numer, std::vector<Complex<R>> denom,
               const BaseQ<R>& base, Complex<R> arg,
               std::optional<long long> termination = std::nullopt,
               int vdbr_offset = 0) {
  SeriesSpec<R> s;
  s.numer = std::move(numer);
  s.denom = std::move(denom);
  s.base = base;
  s.arg = arg;
  s.vdbr_offset = vdbr_offset;
  s.termination = termination;
  return eval_phi(s).value;
}

// ---------------------------------------------------------------------------
// Closed-form summation theorems.
// ---------------------------------------------------------------------------

enum class SummationId {
  qbinomial_theorem,  ///< 1phi0(a;-;q,z) = (az;q)_inf/(z;q)_inf
  euler_small_e,      ///< 1phi0(0;-;q,z) = 1/(z;q)_inf
  euler_big_e,        ///< 0phi0(-;-;q,-z) = (-z;q)_inf
  q_gauss,            ///< 2phi1(a,b;c;q,c/(ab)) product form
  terminating_qbinomial,  ///< 1phi0(q^{-n};-;q,z) = (q^{-n}z;q)_n
  q_chu_vandermonde,      ///< 2phi1(q^{-n},a;b;q,q)
  q_chu_vandermonde_reversed,  ///< 2phi1(q^{-n},a;b;q,q^n b/a)
  limit_q_chu             ///< 2phi1(q^{-n},0;a;q,q)
};

template <typename R>
struct SummationParams {
  std::optional<Complex<R>> a, b, c;
  Complex<R> z{};
  std::optional<long long> n;
  BaseQ<R> base;
};

/// Evaluate both sides of a summation theorem; the caller asserts agreement.
template <typename R>
std::pair<Complex<R>, Complex<R>> eval_summation(SummationId id,
                                                 const SummationParams<R>& p) {
  const BaseQ<R>& Q = p.base;
  const Complex<R> q = Q.q;
  auto need = [](const std::optional<Complex<R>>& v,
                 const char* what) -> Complex<R> {
    if (!v) throw DomainError(std::string("summation: missing parameter ") + what);
    return *v;
  };
  auto needn = [&]() -> long long {
    if (!p.n) throw DomainError("summation: missing degree n");
    if (*p.n < 0) throw DomainError("summation: degree n must be >= 0");
    return *p.n;
  };
  switch (id) {
    case SummationId::qbinomial_theorem: {
      const Complex<R> a = need(p.a, "a");
      if (!(std::abs(p.z) < R(1)))
        throw DomainError("q-binomial theorem requires |z| < 1");
      const Complex<R> lhs = phi<R>({a}, {}, Q, p.z);
      return {lhs, qpoch_inf(a * p.z, Q) / qpoch_inf(p.z, Q)};
    }
    case SummationId::euler_small_e: {
      if (!(std::abs(p.z) < R(1)))
        throw DomainError("Euler e_q requires |z| < 1");
      const Complex<R> lhs = phi<R>({}, {}, Q, p.z, std::nullopt, -1);
      return {lhs, Complex<R>(R(1)) / qpoch_inf(p.z, Q)};
    }
    case SummationId::euler_big_e: {
      const Complex<R> lhs = phi<R>({}, {}, Q, -p.z);
      return {lhs, qpoch_inf(-p.z, Q)};
    }
    case SummationId::q_gauss: {
      const Complex<R> a = need(p.a, "a"), b = need(p.b, "b"),
                       c = need(p.c, "c");
      if (!(std::abs(c) < std::abs(a * b)))
        throw DomainError("q-Gauss requires |c| < |ab|");
      const Complex<R> lhs = phi<R>({a, b}, {c}, Q, c / (a * b));
      const Complex<R> rhs =
          qpoch_inf_many<R>({c / a, c / b}, Q) /
          qpoch_inf_many<R>({c, c / (a * b)}, Q);
      return {lhs, rhs};
    }
    case SummationId::terminating_qbinomial: {
      const long long n = needn();
      const Complex<R> qmn = ipow(q, -n);
      const Complex<R> lhs = phi<R>({qmn}, {}, Q, p.z, n);
      return {lhs, qpoch(qmn * p.z, Q, n)};
    }
    case SummationId::q_chu_vandermonde: {
      const long long n = needn();
      const Complex<R> a = need(p.a, "a"), b = need(p.b, "b");
      const Complex<R> lhs = phi<R>({ipow(q, -n), a}, {b}, Q, q, n);
      return {lhs, ipow(a, n) * qpoch(b / a, Q, n) / qpoch(b, Q, n)};
    }
    case SummationId::q_chu_vandermonde_reversed: {
      const long long n = needn();
      const Complex<R> a = need(p.a, "a"), b = need(p.b, "b");
      const Complex<R> lhs =
          phi<R>({ipow(q, -n), a}, {b}, Q, ipow(q, n) * b / a, n);
      return {lhs, qpoch(b / a, Q, n) / qpoch(b, Q, n)};
    }
    case SummationId::limit_q_chu: {
      const long long n = needn();
      const Complex<R> a = need(p.a, "a");
      const Complex<R> lhs =
          phi<R>({ipow(q, -n), Complex<R>(R(0))}, {a}, Q, q, n);
      return {lhs, ipow(q, c2(n)) * ipow(-a, n) / qpoch(a, Q, n)};
    }
  }
  throw ConfigError("summation: unknown identity id");
}

// ---------------------------------------------------------------------------
// Transformations.
// ---------------------------------------------------------------------------

enum class TransformId {
  none,
  inversion,          ///< terminating-series inversion (general offset form)
  base_inversion,     ///< base q -> base 1/q rewrite of a terminating series
  trans_1phi0_to_0phi1_a,  ///< 1phi0^1(a;-;q,z) = (a,z;q)_inf 0phi1^{-2}(-;z;q,a)
  trans_1phi0_to_0phi1_b,  ///< 1phi0^1(a;-;q,z) = (z;q)_inf 0phi1(-;z;q,az)
  trans_1phi1_to_1phi2,    ///< 1phi1(a;b;q,z) = (z;q)_inf 1phi2(b/a;b,z;q,az)
  trans_2phi2_to_2phi1,    ///< 2phi2(a,b;c,abz/c;q,z) product-weighted 2phi1
  term_3phi2_first,        ///< argument-q 3phi2 parameter exchange
  term_3phi2_second        ///< argument q^n cd/(ab) 3phi2 exchange
};

template <typename R>
struct TransformResult {
  SeriesSpec<R> spec;        ///< transformed series
  Complex<R> prefactor{R(1)};  ///< prefactor * eval(spec) == eval(input)
};

namespace detail {

/// Split a terminating spec into (n, a-parameters); numer[0] must be q^{-n}.
template <typename R>
std::pair<long long, std::vector<Complex<R>>> split_terminating(
    const SeriesSpec<R>& s) {
  if (!s.termination)
    throw ShapeError("transform: requires a terminating series");
  const long long n = *s.termination;
  const Complex<R> target = ipow(Complex<R>(s.base.q), -n);
  if (s.numer.empty() ||
      std::abs(s.numer[0] - target) > R(1e-9) * std::abs(target))
    throw ShapeError("transform: numer[0] must be q^{-n}");
  return {n, std::vector<Complex<R>>(s.numer.begin() + 1, s.numer.end())};
}

template <typename R>
Complex<R> prod(const std::vector<Complex<R>>& v) {
  Complex<R> r(R(1));
  for (const auto& x : v) r *= x;
  return r;
}

template <typename R>
void require_nonzero(const std::vector<Complex<R>>& v, const char* what) {
  for (const auto& x : v)
    if (x == Complex<R>(R(0)))
      throw ShapeError(std::string("transform: zero parameter in ") + what);
}

}  // namespace detail

/// Apply a named transformation; returns the new spec and prefactor with
/// prefactor * eval_phi(result.spec) == eval_phi(spec).
template <typename R>
TransformResult<R> apply_transform(TransformId id, const SeriesSpec<R>& s) {
  using detail::prod;
  const BaseQ<R>& Q = s.base;
  const Complex<R> q = Q.q;
  TransformResult<R> out;
  out.spec = s;
  switch (id) {
    case TransformId::none:
      return out;

    case TransformId::inversion: {
      // phi^p(q^{-n}, a; b; q, z)
      //   = (a;q)_n/(b;q)_n (z/q)^n ((-1)^n q^{C(n,2)})^{s-r+p-1}
      //     * phi^{s-r+p}(q^{-n}, q^{1-n}/b; q^{1-n}/a;
      //                   q, (prod b/prod a) q^{(1-p)n+p+1}/z)
      auto [n, as] = detail::split_terminating(s);
      detail::require_nonzero(as, "numerator");
      detail::require_nonzero(s.denom, "denominator");
      if (s.arg == Complex<R>(R(0)))
        throw ShapeError("transform: inversion needs nonzero argument");
      const int r = static_cast<int>(as.size());
      const int sc = static_cast<int>(s.denom.size());
      const int p = s.vdbr_offset;
      const int epow = sc - r + p - 1;
      const Complex<R> qshift = ipow(q, 1 - n);
      SeriesSpec<R> t;
      t.base = Q;
      t.termination = n;
      t.numer.push_back(ipow(q, -n));
      for (const auto& b : s.denom) t.numer.push_back(qshift / b);
      for (const auto& a : as) t.denom.push_back(qshift / a);
      t.vdbr_offset = sc - r + p;
      t.arg = prod(s.denom) / prod(as) * ipow(q, (1 - p) * n + p + 1) / s.arg;
      Complex<R> pre = qpoch_many(as, Q, n) / qpoch_many(s.denom, Q, n) *
                       ipow(s.arg / q, n);
      const Complex<R> sgnq =
          Complex<R>(n % 2 ? R(-1) : R(1)) * ipow(q, c2(n));
      pre *= (epow >= 0) ? ipow(sgnq, epow)
                         : Complex<R>(R(1)) / ipow(sgnq, -epow);
      out.spec = t;
      out.prefactor = pre;
      return out;
    }

    case TransformId::base_inversion: {
      // phi(q^{-n}, a; b; q, z)
      //   = phi(q^n, 1/a; 1/b; 1/q, (prod a/prod b) z/q^{n+1}),
      // restricted to the plain r+1 phi r shape.
      auto [n, as] = detail::split_terminating(s);
      detail::require_nonzero(as, "numerator");
      detail::require_nonzero(s.denom, "denominator");
      if (as.size() != s.denom.size() || s.vdbr_offset != 0)
        throw ShapeError("transform: base inversion needs plain r+1 phi r");
      SeriesSpec<R> t;
      t.base = BaseQ<R>(Complex<R>(R(1)) / q, QRegime::off_circle);
      t.termination = n;
      t.numer.push_back(ipow(Complex<R>(R(1)) / q, -n));  // (1/q)^{-n} = q^n
      for (const auto& a : as) t.numer.push_back(Complex<R>(R(1)) / a);
      for (const auto& b : s.denom) t.denom.push_back(Complex<R>(R(1)) / b);
      t.arg = prod(as) / prod(s.denom) * s.arg / ipow(q, n + 1);
      out.spec = t;
      out.prefactor = Complex<R>(R(1));
      return out;
    }

    case TransformId::trans_1phi0_to_0phi1_a: {
      // 1phi0^1(a;-;q,z) = (a,z;q)_inf 0phi1^{-2}(-;z;q,a)
      if (s.numer.size() != 1 || !s.denom.empty() || s.vdbr_offset != 1 ||
          s.termination)
        throw ShapeError("transform: expects nonterminating 1phi0^1");
      const Complex<R> a = s.numer[0];
      SeriesSpec<R> t;
      t.base = Q;
      t.denom = {s.arg};
      t.arg = a;
      t.vdbr_offset = -2;
      out.spec = t;
      out.prefactor = qpoch_inf_many<R>({a, s.arg}, Q);
      return out;
    }

    case TransformId::trans_1phi0_to_0phi1_b: {
      // 1phi0^1(a;-;q,z) = (z;q)_inf 0phi1(-;z;q,az)
      if (s.numer.size() != 1 || !s.denom.empty() || s.vdbr_offset != 1 ||
          s.termination)
        throw ShapeError("transform: expects nonterminating 1phi0^1");
      const Complex<R> a = s.numer[0];
      SeriesSpec<R> t;
      t.base = Q;
      t.denom = {s.arg};
      t.arg = a * s.arg;
      out.spec = t;
      out.prefactor = qpoch_inf(s.arg, Q);
      return out;
    }

    case TransformId::trans_1phi1_to_1phi2: {
      // 1phi1(a;b;q,z) = (z;q)_inf 1phi2(b/a; b, z; q, az)
      if (s.numer.size() != 1 || s.denom.size() != 1 || s.vdbr_offset != 0 ||
          s.termination)
        throw ShapeError("transform: expects nonterminating 1phi1");
      const Complex<R> a = s.numer[0], b = s.denom[0];
      if (a == Complex<R>(R(0)))
        throw ShapeError("transform: 1phi1 parameter a must be nonzero");
      SeriesSpec<R> t;
      t.base = Q;
      t.numer = {b / a};
      t.denom = {b, s.arg};
      t.arg = a * s.arg;
      out.spec = t;
      out.prefactor = qpoch_inf(s.arg, Q);
      return out;
    }

    case TransformId::trans_2phi2_to_2phi1: {
      // 2phi2(a,b;c,abz/c;q,z)
      //   = ((bz/c;q)_inf/(abz/c;q)_inf) 2phi1(a, c/b; c; q, bz/c)
      if (s.numer.size() != 2 || s.denom.size() != 2 || s.vdbr_offset != 0 ||
          s.termination)
        throw ShapeError("transform: expects nonterminating 2phi2");
      const Complex<R> a = s.numer[0], b = s.numer[1], c = s.denom[0];
      const Complex<R> linked = a * b * s.arg / c;
      if (std::abs(s.denom[1] - linked) >
          R(1e-9) * (R(1) + std::abs(linked)))
        throw ShapeError("transform: second denominator must equal abz/c");
      SeriesSpec<R> t;
      t.base = Q;
      t.numer = {a, c / b};
      t.denom = {c};
      t.arg = b * s.arg / c;
      out.spec = t;
      out.prefactor =
          qpoch_inf(b * s.arg / c, Q) / qpoch_inf(a * b * s.arg / c, Q);
      return out;
    }

    case TransformId::term_3phi2_first: {
      // 3phi2(q^{-n},a,b;c,d;q,q)
      //   = (ab/c)^n (cd/ab;q)_n/(d;q)_n 3phi2(q^{-n},c/a,c/b;c,cd/ab;q,q)
      auto [n, as] = detail::split_terminating(s);
      if (as.size() != 2 || s.denom.size() != 2 || s.vdbr_offset != 0)
        throw ShapeError("transform: expects terminating 3phi2");
      if (std::abs(s.arg - q) > R(1e-12) * std::abs(q))
        throw ShapeError("transform: expects argument q");
      const Complex<R> a = as[0], b = as[1], c = s.denom[0], d = s.denom[1];
      detail::require_nonzero(as, "numerator");
      detail::require_nonzero(s.denom, "denominator");
      SeriesSpec<R> t;
      t.base = Q;
      t.termination = n;
      t.numer = {ipow(q, -n), c / a, c / b};
      t.denom = {c, c * d / (a * b)};
      t.arg = q;
      out.spec = t;
      out.prefactor = ipow(a * b / c, n) * qpoch(c * d / (a * b), Q, n) /
                      qpoch(d, Q, n);
      return out;
    }

    case TransformId::term_3phi2_second: {
      // 3phi2(q^{-n},a,b;c,d;q,q^n cd/(ab))
      //   = (d/b;q)_n/(d;q)_n 3phi2(q^{-n},b,c/a;c,q^{1-n}b/d;q,q)
      auto [n, as] = detail::split_terminating(s);
      if (as.size() != 2 || s.denom.size() != 2 || s.vdbr_offset != 0)
        throw ShapeError("transform: expects terminating 3phi2");
      const Complex<R> a = as[0], b = as[1], c = s.denom[0], d = s.denom[1];
      detail::require_nonzero(as, "numerator");
      detail::require_nonzero(s.denom, "denominator");
      const Complex<R> want = ipow(q, n) * c * d / (a * b);
      if (std::abs(s.arg - want) > R(1e-9) * std::abs(want))
        throw ShapeError("transform: expects argument q^n cd/(ab)");
      SeriesSpec<R> t;
      t.base = Q;
      t.termination = n;
      t.numer = {ipow(q, -n), b, c / a};
      t.denom = {c, ipow(q, 1 - n) * b / d};
      t.arg = q;
      out.spec = t;
      out.prefactor = qpoch(d / b, Q, n) / qpoch(d, Q, n);
      return out;
    }
  }
  throw ConfigError("transform: unknown id");
}

// ---------------------------------------------------------------------------
// Limit transitions.
// ---------------------------------------------------------------------------

/// Which limit transition pattern to probe (1, 2 or 3).
enum class LimitKind { k1 = 1, k2 = 2, k3 = 3 };

/// Residuals of a limit transition over the lambda grid.
///
/// The input spec is the PRE-limit template (without lambda inserted):
///  kind 1: numer = {a_1..a_{r-1}, a_r}, lambda multiplies a_r and divides z;
///          limit = series without a_r at argument a_r z.
///  kind 2: denom = {b_1..b_{s-1}, b_s}, lambda multiplies b_s and z;
///          limit = series without b_s at argument z/b_s.
///  kind 3: lambda multiplies both a_r and b_s, argument fixed;
///          limit = series without either at argument (a_r/b_s) z.
template <typename R>
std::vector<R> verify_limit_transition(
    LimitKind kind, const SeriesSpec<R>& spec,
    const std::vector<R>& lambdas = {R(1e2), R(1e4), R(1e6)}) {
  SeriesSpec<R> limit = spec;
  switch (kind) {
    case LimitKind::k1: {
      if (spec.numer.empty())
        throw ShapeError("limit transition 1 needs a numerator parameter");
      const Complex<R> ar = spec.numer.back();
      limit.numer.pop_back();
      limit.arg = ar * spec.arg;
      break;
    }
    case LimitKind::k2: {
      if (spec.denom.empty())
        throw ShapeError("limit transition 2 needs a denominator parameter");
      const Complex<R> bs = spec.denom.back();
      if (bs == Complex<R>(R(0)))
        throw ShapeError("limit transition 2 needs nonzero b_s");
      limit.denom.pop_back();
      limit.arg = spec.arg / bs;
      break;
    }
    case LimitKind::k3: {
      if (spec.numer.empty() || spec.denom.empty())
        throw ShapeError("limit transition 3 needs parameters on both rows");
      const Complex<R> ar = spec.numer.back();
      const Complex<R> bs = spec.denom.back();
      if (bs == Complex<R>(R(0)))
        throw ShapeError("limit transition 3 needs nonzero b_s");
      limit.numer.pop_back();
      limit.denom.pop_back();
      limit.arg = ar / bs * spec.arg;
      break;
    }
  }
  const Complex<R> limit_value = eval_phi(limit).value;
  const R scale = std::max(R(1), std::abs(limit_value));
  std::vector<R> residuals;
  residuals.reserve(lambdas.size());
  for (const R lam : lambdas) {
    SeriesSpec<R> at = spec;
    switch (kind) {
      case LimitKind::k1:
        at.numer.back() *= lam;
        at.arg /= lam;
        break;
      case LimitKind::k2:
        at.denom.back() *= lam;
        at.arg *= lam;
        break;
      case LimitKind::k3:
        at.numer.back() *= lam;
        at.denom.back() *= lam;
        break;
    }
    residuals.push_back(std::abs(eval_phi(at).value - limit_value) / scale);
  }
  return residuals;
}

// ---------------------------------------------------------------------------
// The derivative-type entire series E'_q.
// ---------------------------------------------------------------------------

/// E'_q(t) = sum_{k>=1} q^{binom(k,2)} k t^{k-1} / (q;q)_k.
template <typename R>
Complex<R> eprime_q(Complex<R> t, const BaseQ<R>& base) {
  const Complex<R> q = base.q;
  if (!(std::abs(q) < R(1))) throw DomainError("eprime_q: requires |q| < 1");
  Complex<R> sum(R(0));
  Complex<R> qc2 = Complex<R>(R(1));   // q^{binom(k,2)}
  Complex<R> tp = Complex<R>(R(1));    // t^{k-1}
  Complex<R> poch = Complex<R>(R(1));  // (q;q)_k
  int small = 0;
  for (long long k = 1; k < kIterCap; ++k) {
    qc2 *= ipow(q, k - 1);  // binom(k,2) - binom(k-1,2) = k-1
    poch *= Complex<R>(R(1)) - ipow(q, k);
    const Complex<R> term = qc2 * Complex<R>(R(k)) * tp / poch;
    sum += term;
    if (std::abs(term) < eps_trunc<R>() * (R(1) + std::abs(sum))) {
      if (++small >= 3) return sum;
    } else {
      small = 0;
    }
    tp *= t;
  }
  throw ConvergenceError("eprime_q: iteration cap exceeded");
}

}  // namespace qaskey

#endif  // QASKEY_SERIES_HPP
