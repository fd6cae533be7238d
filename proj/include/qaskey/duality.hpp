/**
 * @file duality.hpp
 * @brief Duality relations between the (q, q^{-1})-symmetric spectral
 *        families and the big/little q-Jacobi and q-Bessel families, in both
 *        directions, including the function-level (arbitrary degree) forms.
 *
 * Each relation is verified by evaluating both sides independently and
 * returning the normalized residual |lhs - rhs| / max(|lhs|, |rhs|, floor).
 */

#ifndef QASKEY_DUALITY_HPP
#define QASKEY_DUALITY_HPP

#include "qaskey/families.hpp"

namespace qaskey {

enum class DualityId {
  CDqH_BigJ,       ///< spectral lattice z = q^m a_p, six (p,r,t) selectors
  CDqiH_BigJ,      ///< spectral lattice z = q^m / a_p, six selectors
  BigJ_CDqiH_A,    ///< big q-Jacobi at x = q^{n+1} a against CDqiH
  BigJ_CDqiH_C,    ///< big q-Jacobi at x = q^{n+1} c against CDqiH
  CDqH_BigJFn,     ///< function-level, variants 1 (forward) and 2 (inverse)
  ASC_LittleJ,     ///< four displays, variants 1..4
  ASC_LittleJFn,   ///< function-level, variants 1 (forward) and 2 (inverse)
  CBqH_QiBesselFn, ///< variants 1 (forward) and 2 (inverse)
  CBqiH_QBessel    ///< variants 1 (forward) and 2 (inverse)
};

namespace detail {

template <typename R>
R dual_resid(Complex<R> lhs, Complex<R> rhs) {
  const R floor = R(1e-300);
  return std::abs(lhs - rhs) /
         std::max({std::abs(lhs), std::abs(rhs), floor});
}

/// Decode a (p,r,t) permutation selector in 0..5 for three parameters.
inline std::array<int, 3> prt(int selector) {
  if (selector < 0 || selector > 5)
    throw ConfigError("permutation selector must lie in 0..5");
  const int p = selector / 2;
  int r = (p + 1) % 3, t = (p + 2) % 3;
  if (selector % 2) std::swap(r, t);
  return {p, r, t};
}

}  // namespace detail

/// Verify a polynomial-degree duality relation; `variant` selects the
/// (p,r,t) permutation (0..5) for the spectral-lattice relations or the
/// display number for the multi-display theorems.
template <typename R>
R verify_duality(DualityId did, int variant, long long m, long long n,
                 const ParamSet<R>& P) {
  using C = Complex<R>;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  switch (did) {
    case DualityId::CDqH_BigJ: {
      const std::array<C, 3> par = {P.req('a'), P.req('b'), P.req('c')};
      const auto [p, r, t] = detail::prt(variant);
      const C ap = par[p], ar = par[r], at = par[t];
      const C lhs =
          fam::cdqh1(ipow(q, m) * ap, n, par[0], par[1], par[2], Q);
      const C rhs = qpoch_many<R>({ap * ar, ap * at}, Q, n) / ipow(ap, n) *
                    fam::bqj1(ipow(q, -n), m, ap * ar / q, ap / ar,
                              ap * at / q, Q);
      return detail::dual_resid(lhs, rhs);
    }
    case DualityId::CDqiH_BigJ: {
      const std::array<C, 3> par = {P.req('a'), P.req('b'), P.req('c')};
      const auto [p, r, t] = detail::prt(variant);
      const C ap = par[p], ar = par[r], at = par[t];
      const C lhs =
          fam::cdqih1(ipow(q, m) / ap, n, par[0], par[1], par[2], Q);
      const C rhs =
          ipow(q, -2 * c2(n) - c2(m)) * ipow(par[0] * par[1] * par[2], n) *
          ipow(-ap / (q * at), m) *
          qpoch_many<R>({C(R(1)) / (ap * ar), C(R(1)) / (ap * at)}, Q, n) *
          qpoch(q * at / ap, Q, m) / qpoch(C(R(1)) / (ap * at), Q, m) *
          fam::bqj1(ipow(q, n) / (ap * ar), m, C(R(1)) / (q * ap * ar),
                    ar / ap, at / ap, Q);
      return detail::dual_resid(lhs, rhs);
    }
    case DualityId::BigJ_CDqiH_A: {
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      const C lhs = fam::bqj1(ipow(q, n + 1) * a, m, a, b, c, Q);
      const C sab = std::sqrt(a * b);
      const C rhs =
          ipow(q, 2 * c2(n)) * ipow(q, c2(m)) *
          ipow(std::sqrt(q * q * q * a * a * a * b) / c, n) *
          ipow(-q * c, m) * qpoch(q * a * b / c, Q, m) /
          (qpoch_many<R>({q * a, q * a * b / c}, Q, n) *
           qpoch(q * c, Q, m)) *
          fam::cdqih1(cpow(q, C(R(m)) + C(R(0.5))) * sab, n,
                      C(R(1)) / std::sqrt(q * a * b),
                      std::sqrt(b / (q * a)), c / std::sqrt(q * a * b), Q);
      return detail::dual_resid(lhs, rhs);
    }
    case DualityId::BigJ_CDqiH_C: {
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      const C lhs = fam::bqj1(ipow(q, n + 1) * c, m, a, b, c, Q);
      const C sab = std::sqrt(a * b);
      const C rhs =
          ipow(q, 2 * c2(n)) * ipow(q, c2(m)) *
          ipow(c * std::sqrt(q * q * q * b) / std::sqrt(a), n) *
          ipow(-q * a, m) * qpoch(q * b, Q, m) /
          (qpoch_many<R>({q * b, q * c}, Q, n) * qpoch(q * a, Q, m)) *
          fam::cdqih1(cpow(q, C(R(m)) + C(R(0.5))) * sab, n,
                      C(R(1)) / std::sqrt(q * a * b),
                      std::sqrt(a / (q * b)), std::sqrt(a * b / q) / c, Q);
      return detail::dual_resid(lhs, rhs);
    }
    case DualityId::ASC_LittleJ: {
      const C a = P.req('a'), b = P.req('b');
      C lhs, rhs;
      switch (variant) {
        case 1:
          lhs = fam::asc1(ipow(q, -m) / a, n, a, b, Q);
          rhs = ipow(q, c2(m)) * ipow(-a * b, m) / ipow(a, n) *
                qpoch(a * b, Q, n) * qpoch(q * a / b, Q, m) /
                qpoch(a * b, Q, m) *
                fam::lqj1(ipow(q, -n) / (a * b), m, a / b, a * b / q, Q);
          break;
        case 2:
          lhs = fam::asc1(ipow(q, m) * b, n, a, b, Q);
          rhs = ipow(q, c2(m)) * ipow(-a * b, m) / ipow(b, n) *
                qpoch(a * b, Q, n) * qpoch(q * b / a, Q, m) /
                qpoch(a * b, Q, m) *
                fam::lqj1(ipow(q, -n) / (a * b), m, b / a, a * b / q, Q);
          break;
        case 3:
          lhs = fam::qiasc1(ipow(q, m) / a, n, a, b, Q);
          rhs = ipow(q, -c2(n) - c2(m)) * ipow(-b, n) *
                ipow(-a / (q * b), m) * qpoch(C(R(1)) / (a * b), Q, n) *
                qpoch(q * b / a, Q, m) / qpoch(C(R(1)) / (a * b), Q, m) *
                fam::lqj1(ipow(q, n), m, b / a, C(R(1)) / (q * a * b), Q);
          break;
        case 4:
          lhs = fam::qiasc1(ipow(q, m) / b, n, a, b, Q);
          rhs = ipow(q, -c2(n) - c2(m)) * ipow(-a, n) *
                ipow(-b / (q * a), m) * qpoch(C(R(1)) / (a * b), Q, n) *
                qpoch(q * a / b, Q, m) / qpoch(C(R(1)) / (a * b), Q, m) *
                fam::lqj1(ipow(q, n), m, a / b, C(R(1)) / (q * a * b), Q);
          break;
        default:
          throw ConfigError("ASC_LittleJ has displays 1..4");
      }
      return detail::dual_resid(lhs, rhs);
    }
    case DualityId::CBqiH_QBessel: {
      const C a = P.req('a');
      C lhs, rhs;
      switch (variant) {
        case 1:
          lhs = fam::cbqih1(ipow(q, -m) * a, n, a, Q);
          rhs = ipow(q, -2 * c2(m)) * ipow(a, -n) * ipow(a * a / q, m) *
                fam::qbes1(ipow(q, n), m, -C(R(1)) / (a * a), Q);
          break;
        case 2: {
          // Inverse direction: a plays the role of the (negative) Bessel
          // parameter; sqrt(-a) must be real, so require a < 0 on input.
          lhs = fam::qbes1(ipow(q, n), m, a, Q);
          const C s = std::sqrt(-a);
          rhs = ipow(q, 2 * c2(m)) * ipow(-q * a, m) / cpow(-a, C(R(n) / 2)) *
                fam::cbqih1(ipow(q, -m) / s, n, C(R(1)) / s, Q);
          break;
        }
        default:
          throw ConfigError("CBqiH_QBessel has variants 1..2");
      }
      return detail::dual_resid(lhs, rhs);
    }
    default:
      throw ConfigError(
          "this duality relation takes a complex degree; use the mu overload");
  }
}

/// Verify a function-level duality relation at arbitrary complex degree mu.
template <typename R>
R verify_duality_mu(DualityId did, int variant, Complex<R> mu, long long n,
                    const ParamSet<R>& P) {
  using C = Complex<R>;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  switch (did) {
    case DualityId::CDqH_BigJFn: {
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      if (variant == 1) {
        const C lhs = fam::cdqh1(cpow(q, -mu) / a, n, a, b, c, Q);
        const C rhs = qpoch_many<R>({a * b, a * c}, Q, n) / ipow(a, n) *
                      fam::bqjf(ipow(q, -n), mu, a * b / q, a / b,
                                a * c / q, Q);
        return detail::dual_resid(lhs, rhs);
      }
      if (variant == 2) {
        const C lhs = fam::bqjf(ipow(q, -n), mu, a, b, c, Q);
        const C rhs = cpow(q * a * b, C(R(n) / 2)) /
                      qpoch_many<R>({q * a, q * c}, Q, n) *
                      fam::cdqh1(cpow(q, mu + C(R(0.5))) * std::sqrt(a * b),
                                 n, std::sqrt(q * a * b),
                                 std::sqrt(q * a / b),
                                 std::sqrt(q) * c / std::sqrt(a * b), Q);
        return detail::dual_resid(lhs, rhs);
      }
      throw ConfigError("CDqH_BigJFn has variants 1..2");
    }
    case DualityId::ASC_LittleJFn: {
      const C a = P.req('a'), b = P.req('b');
      if (variant == 1) {
        // Requires |q^{1-n}/(ab)| < 1 for the little function's argument.
        const C lhs = fam::asc1(cpow(q, -mu) / a, n, a, b, Q);
        const C rhs =
            qpoch(a * b, Q, n) / ipow(a, n) *
            qpoch_inf_many<R>({q * a / b, q / (a * b)}, Q) /
            qpoch_inf_many<R>({cpow(q, mu + C(R(1))) * a / b,
                               cpow(q, C(R(1)) - mu) / (a * b)},
                              Q) *
            fam::lqjf(ipow(q, -n) / (a * b), mu, a / b, a * b / q, Q);
        return detail::dual_resid(lhs, rhs);
      }
      if (variant == 2) {
        const C lhs = fam::lqjf(ipow(q, -1 - n) / b, mu, a, b, Q);
        const C rhs =
            cpow(q * a * b, C(R(n) / 2)) / qpoch(q * b, Q, n) *
            qpoch_inf_many<R>({cpow(q, mu + C(R(1))) * a, cpow(q, -mu) / b},
                              Q) /
            qpoch_inf_many<R>({q * a, C(R(1)) / b}, Q) *
            fam::asc1(cpow(q, mu + C(R(0.5))) * std::sqrt(a * b), n,
                      std::sqrt(q * a * b), std::sqrt(q * b / a), Q);
        return detail::dual_resid(lhs, rhs);
      }
      throw ConfigError("ASC_LittleJFn has variants 1..2");
    }
    case DualityId::CBqH_QiBesselFn: {
      const C a = P.req('a');
      if (variant == 1) {
        const C lhs = fam::cbqh1(cpow(q, mu) * a, n, a, Q);
        const C rhs = cpow(q, C(R(2)) * c2(mu)) * ipow(a, -n) *
                      cpow(q * a * a, mu) *
                      fam::qibesf(ipow(q, -n), mu, -C(R(1)) / (a * a), Q);
        return detail::dual_resid(lhs, rhs);
      }
      if (variant == 2) {
        // a is the (negative) Bessel parameter; sqrt(-a) must be real.
        const C lhs = fam::qibesf(ipow(q, -n), mu, a, Q);
        const C s = std::sqrt(-a);
        const C rhs = cpow(q, C(R(-2)) * c2(mu)) *
                      cpow(-a, C(R(-n) / 2)) * cpow(-a / q, mu) *
                      fam::cbqh1(cpow(q, mu) / s, n, C(R(1)) / s, Q);
        return detail::dual_resid(lhs, rhs);
      }
      throw ConfigError("CBqH_QiBesselFn has variants 1..2");
    }
    default:
      throw ConfigError(
          "this duality relation takes integer degrees; use the m overload");
  }
}

/// Residual between the two lattice evaluations z = q^m a and z = q^{-m}/a
/// of the same spectral polynomial (x-symmetry through the raw series forms,
/// bypassing the canonicalizing PointZ constructor).
template <typename R>
R dual_point_equivalence(FamilyId fid, long long m, long long n,
                         const ParamSet<R>& P) {
  using C = Complex<R>;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  const C a = P.req('a');
  const C z1 = ipow(q, m) * a;
  const C z2 = ipow(q, -m) / a;
  C v1, v2;
  switch (fid) {
    case FamilyId::CDqH:
      v1 = fam::cdqh1(z1, n, a, P.req('b'), P.req('c'), Q);
      v2 = fam::cdqh1(z2, n, a, P.req('b'), P.req('c'), Q);
      break;
    case FamilyId::CDqiH:
      v1 = fam::cdqih1(z1, n, a, P.req('b'), P.req('c'), Q);
      v2 = fam::cdqih1(z2, n, a, P.req('b'), P.req('c'), Q);
      break;
    case FamilyId::ASC:
      v1 = fam::asc1(z1, n, a, P.req('b'), Q);
      v2 = fam::asc1(z2, n, a, P.req('b'), Q);
      break;
    case FamilyId::qiASC:
      v1 = fam::qiasc1(z1, n, a, P.req('b'), Q);
      v2 = fam::qiasc1(z2, n, a, P.req('b'), Q);
      break;
    case FamilyId::CBqH:
      v1 = fam::cbqh1(z1, n, a, Q);
      v2 = fam::cbqh1(z2, n, a, Q);
      break;
    case FamilyId::CBqiH:
      v1 = fam::cbqih1(z1, n, a, Q);
      v2 = fam::cbqih1(z2, n, a, Q);
      break;
    default:
      throw ConfigError("dual point equivalence applies to spectral families");
  }
  return detail::dual_resid(v1, v2);
}

}  // namespace qaskey

#endif  // QASKEY_DUALITY_HPP
