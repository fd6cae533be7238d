/**
 * @file genfun.hpp
 * @brief Generating functions for the q^{-1}-families: closed-form product
 *        sides, series partial sums, and contour-based coefficient
 *        extraction verified against direct polynomial evaluation.
 */

#ifndef QASKEY_GENFUN_HPP
#define QASKEY_GENFUN_HPP

#include "qaskey/families.hpp"

namespace qaskey {

enum class GFId {
  cdqih_G,            ///< continuous dual q^{-1}-Hahn GF
  master_gamma_delta, ///< two-free-parameter master GF for qiASC
  cor_gamma0,         ///< gamma -> 0 corollary
  cor_delta0,         ///< delta -> 0 corollary
  cor_delta_ab,       ///< delta = 1/(ab), gamma = 0 corollary
  cor_delta_gamma,    ///< delta = gamma corollary (pure product)
  cbqih_I,            ///< continuous big q^{-1}-Hermite GF
  ismail_corrected_V  ///< corrected V-notation GF (imaginary-parameter form)
};

/// Family parameters plus the two free GF parameters gamma and delta.
template <typename R>
struct GFParams {
  ParamSet<R> fam;
  Complex<R> gamma{R(0)};
  Complex<R> delta{R(0)};
};

namespace detail {

template <typename R>
void gf_domain_check(Complex<R> t, const GFParams<R>& G) {
  if (std::abs(t) >= R(1))
    throw DomainError("generating-function variable requires |t| < 1");
  if (std::abs(G.gamma) >= R(1))
    throw DomainError("gamma must lie in the open unit disk");
}

}  // namespace detail

/// Closed-form (product/series) side of the generating function.
template <typename R>
Complex<R> eval_gf(GFId gid, Complex<R> t, const PointZ<R>& pt,
                   const GFParams<R>& G) {
  using C = Complex<R>;
  detail::gf_domain_check(t, G);
  const ParamSet<R>& P = G.fam;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  const C z = pt.z;
  switch (gid) {
    case GFId::cdqih_G: {
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      return qpoch_inf(b * t, Q) / qpoch_inf(a * b * c * t, Q) *
             phi<R>(fam::zpm(C(R(1)) / a, z), {C(R(1)) / (a * b), b * t}, Q,
                    a * t);
    }
    case GFId::master_gamma_delta: {
      const C a = P.req('a'), b = P.req('b');
      const C g = G.gamma, d = G.delta;
      if (std::abs(g) == R(0))
        throw DomainError("master GF requires gamma != 0; use cor_gamma0");
      return qpoch_inf(g, Q) * qpoch_inf_many(fam::zpm(-t, z), Q) /
             (qpoch_inf(d, Q) * qpoch_inf_many<R>({-a * t, -b * t}, Q)) *
             phi<R>({d / g, -a * t, -b * t}, fam::zpm(-t, z), Q, g);
    }
    case GFId::cor_gamma0: {
      const C a = P.req('a'), b = P.req('b');
      const C d = G.delta;
      return qpoch_inf_many(fam::zpm(-t, z), Q) /
             (qpoch_inf(d, Q) * qpoch_inf_many<R>({-a * t, -b * t}, Q)) *
             phi<R>({-a * t, -b * t}, fam::zpm(-t, z), Q, d);
    }
    case GFId::cor_delta0: {
      const C a = P.req('a'), b = P.req('b');
      const C g = G.gamma;
      return qpoch_inf(g, Q) * qpoch_inf_many(fam::zpm(-t, z), Q) /
             qpoch_inf_many<R>({-a * t, -b * t}, Q) *
             phi<R>({-a * t, -b * t, C(R(0))}, fam::zpm(-t, z), Q, g);
    }
    case GFId::cor_delta_ab: {
      const C a = P.req('a'), b = P.req('b');
      return C(R(1)) / qpoch_inf(-b * t, Q) *
             phi<R>(fam::zpm(C(R(1)) / a, z), {C(R(1)) / (a * b)}, Q,
                    -a * t);
    }
    case GFId::cor_delta_gamma: {
      const C a = P.req('a'), b = P.req('b');
      return qpoch_inf_many(fam::zpm(-t, z), Q) /
             qpoch_inf_many<R>({-a * t, -b * t}, Q);
    }
    case GFId::cbqih_I: {
      const C a = P.req('a');
      return qpoch_inf_many(fam::zpm(-t, z), Q) / qpoch_inf(-t * a, Q);
    }
    case GFId::ismail_corrected_V: {
      const C i(R(0), R(1));
      const C t1 = q * P.req('a') / i, t3 = q * P.req('c') / i;
      const C t2 = q * P.req('b') / i;
      return qpoch_inf(-t / z, Q) / qpoch_inf(t * t2 / q, Q) *
             phi<R>({q * z / t1, q * z / t3}, {-q * q / (t1 * t3)}, Q,
                    -t / z);
    }
  }
  throw ConfigError("unknown generating function id");
}

/// Coefficient of t^n in the series side, via direct polynomial evaluation.
template <typename R>
Complex<R> gf_coefficient_direct(GFId gid, long long n, const PointZ<R>& pt,
                                 const GFParams<R>& G) {
  using C = Complex<R>;
  const ParamSet<R>& P = G.fam;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  const C z = pt.z;
  switch (gid) {
    case GFId::cdqih_G: {
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      return ipow(q, 2 * c2(n)) * fam::cdqih1(z, n, a, b, c, Q) /
             qpoch_many<R>({q, C(R(1)) / (a * b)}, Q, n);
    }
    case GFId::master_gamma_delta:
    case GFId::cor_gamma0:
    case GFId::cor_delta0:
    case GFId::cor_delta_ab:
    case GFId::cor_delta_gamma: {
      const C a = P.req('a'), b = P.req('b');
      C g = G.gamma, d = G.delta;
      if (gid == GFId::cor_gamma0) g = C(R(0));
      if (gid == GFId::cor_delta0) d = C(R(0));
      if (gid == GFId::cor_delta_ab) {
        g = C(R(0));
        d = C(R(1)) / (a * b);
      }
      if (gid == GFId::cor_delta_gamma) {
        g = C(R(0));
        d = C(R(0));
      }
      return ipow(q, c2(n)) * qpoch(g, Q, n) /
             qpoch_many<R>({q, d}, Q, n) * fam::qiasc1(z, n, a, b, Q);
    }
    case GFId::cbqih_I: {
      const C a = P.req('a');
      return ipow(q, c2(n)) / qpoch(q, Q, n) * fam::cbqih1(z, n, a, Q);
    }
    case GFId::ismail_corrected_V: {
      const C i(R(0), R(1));
      const C t1 = q * P.req('a') / i, t2 = q * P.req('b') / i,
              t3 = q * P.req('c') / i;
      const C Vn = ipow(q, 2 * c2(n)) * ipow(-q * q / (t2 * t3), n) *
                   ipow(i, -n) /
                   qpoch_many<R>({-q * q / (t1 * t2), -q * q / (t2 * t3)},
                                 Q, n) *
                   fam::cdqih1(i * z, n, t1 * i / q, t2 * i / q, t3 * i / q,
                               Q);
      return qpoch_many<R>({-q * q / (t1 * t2), -q * q / (t2 * t3)}, Q, n) /
             qpoch_many<R>({q, -q * q / (t1 * t3)}, Q, n) * Vn *
             ipow(t2 / t1, n);
    }
  }
  throw ConfigError("unknown generating function id");
}

/// Partial sum of the series side through N terms.
template <typename R>
Complex<R> gf_series(GFId gid, Complex<R> t, const PointZ<R>& pt,
                     const GFParams<R>& G, long long N = 80) {
  Complex<R> s(R(0));
  const long long cap =
      std::min<long long>(N, degree_cap<R>());
  for (long long n = 0; n <= cap; ++n)
    s += gf_coefficient_direct(gid, n, pt, G) * ipow(t, n);
  return s;
}

/// Normalized residual between the series partial sum and the closed form.
template <typename R>
R verify_gf(GFId gid, Complex<R> t, const PointZ<R>& pt,
            const GFParams<R>& G, long long N = 20) {
  const Complex<R> lhs = gf_series(gid, t, pt, G, N);
  const Complex<R> rhs = eval_gf(gid, t, pt, G);
  return std::abs(lhs - rhs) / std::max(R(1), std::abs(rhs));
}

/// Contour-extracted coefficients of the closed form on |t| = radius, with
/// a doubling self-consistency check.
template <typename R>
std::vector<Complex<R>> gf_coefficients_contour(GFId gid, long long N,
                                                const PointZ<R>& pt,
                                                const GFParams<R>& G,
                                                R radius = R(0.2),
                                                int M = 64) {
  using C = Complex<R>;
  auto average = [&](int m) {
    std::vector<C> coeff(static_cast<size_t>(N + 1), C(R(0)));
    const R two_pi = R(2) * std::acos(R(-1));
    for (int j = 0; j < m; ++j) {
      const R th = two_pi * R(j) / R(m);
      const C t = radius * C(std::cos(th), std::sin(th));
      const C f = eval_gf(gid, t, pt, G);
      for (long long n = 0; n <= N; ++n) {
        const R phi_n = -th * R(n);
        coeff[static_cast<size_t>(n)] +=
            f * C(std::cos(phi_n), std::sin(phi_n)) /
            (R(m) * std::pow(radius, R(n)));
      }
    }
    return coeff;
  };
  const auto c1 = average(M);
  const auto c2v = average(2 * M);
  for (size_t k = 0; k < c1.size(); ++k) {
    if (std::abs(c1[k] - c2v[k]) >
        R(1e-10) * std::max(R(1), std::abs(c2v[k])))
      throw ConvergenceError(
          "contour coefficient extraction failed its doubling self-check");
  }
  return c2v;
}

/// Residual vector: contour coefficients vs direct polynomial coefficients.
template <typename R>
std::vector<R> verify_gf_coefficients(GFId gid, long long N,
                                      const PointZ<R>& pt,
                                      const GFParams<R>& G) {
  const auto contour = gf_coefficients_contour(gid, N, pt, G);
  std::vector<R> out;
  out.reserve(static_cast<size_t>(N + 1));
  for (long long n = 0; n <= N; ++n) {
    const Complex<R> direct = gf_coefficient_direct(gid, n, pt, G);
    out.push_back(std::abs(contour[static_cast<size_t>(n)] - direct) /
                  std::max(R(1), std::abs(direct)));
  }
  return out;
}

}  // namespace qaskey

#endif  // QASKEY_GENFUN_HPP
