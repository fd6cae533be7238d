/**
 * @file ortho.hpp
 * @brief Orthogonality relations: continuous (theta-interval, imaginary-axis,
 *        real-line), discrete, bilateral, q-integral, and index-transform
 *        relations, plus total-mass identities, discrete closures, and
 *        three-term recurrence extraction with norm verification.
 */

#ifndef QASKEY_ORTHO_HPP
#define QASKEY_ORTHO_HPP

#include <string>

#include "qaskey/families.hpp"
#include "qaskey/quad.hpp"

namespace qaskey {

/// Identifiers for the verified orthogonality relations.
enum class OrthoRelation {
  // continuous, theta-interval weight on [0, pi]
  AWO,
  cdqHO,
  ASCO,
  cbqHO,
  cqHO,
  // continuous, imaginary-axis weight (z = i e^u)
  theo33,
  corr311,
  corr318,
  corr326,
  // continuous, real-line weights for cqiH
  w2,
  w3,
  // discrete
  AKporth,
  ASCorthi,
  cbqHorthi,
  DcdqiHO,
  idqiASCO,
  qBesselcbqiHO,
  lqJO,
  thm314,
  thm316,
  thm368,
  thm248,
  // bilateral
  eq189,
  thm420,
  cbqiH_bilateral,
  ismail_masson,
  // q-integral
  bqJO,
  // index transforms (continuous degree)
  cobqJ,
  colqJ,
  COqiBf
};

inline const std::vector<OrthoRelation>& all_ortho_relations() {
  static const std::vector<OrthoRelation> v = {
      OrthoRelation::AWO,           OrthoRelation::cdqHO,
      OrthoRelation::ASCO,          OrthoRelation::cbqHO,
      OrthoRelation::cqHO,          OrthoRelation::theo33,
      OrthoRelation::corr311,       OrthoRelation::corr318,
      OrthoRelation::corr326,       OrthoRelation::w2,
      OrthoRelation::w3,            OrthoRelation::AKporth,
      OrthoRelation::ASCorthi,      OrthoRelation::cbqHorthi,
      OrthoRelation::DcdqiHO,       OrthoRelation::idqiASCO,
      OrthoRelation::qBesselcbqiHO, OrthoRelation::lqJO,
      OrthoRelation::thm314,        OrthoRelation::thm316,
      OrthoRelation::thm368,        OrthoRelation::thm248,
      OrthoRelation::eq189,         OrthoRelation::thm420,
      OrthoRelation::cbqiH_bilateral, OrthoRelation::ismail_masson,
      OrthoRelation::bqJO,          OrthoRelation::cobqJ,
      OrthoRelation::colqJ,         OrthoRelation::COqiBf};
  return v;
}

inline std::string ortho_relation_name(OrthoRelation r) {
  switch (r) {
    case OrthoRelation::AWO: return "AWO";
    case OrthoRelation::cdqHO: return "cdqHO";
    case OrthoRelation::ASCO: return "ASCO";
    case OrthoRelation::cbqHO: return "cbqHO";
    case OrthoRelation::cqHO: return "cqHO";
    case OrthoRelation::theo33: return "theo33";
    case OrthoRelation::corr311: return "corr311";
    case OrthoRelation::corr318: return "corr318";
    case OrthoRelation::corr326: return "corr326";
    case OrthoRelation::w2: return "w2";
    case OrthoRelation::w3: return "w3";
    case OrthoRelation::AKporth: return "AKporth";
    case OrthoRelation::ASCorthi: return "ASCorthi";
    case OrthoRelation::cbqHorthi: return "cbqHorthi";
    case OrthoRelation::DcdqiHO: return "DcdqiHO";
    case OrthoRelation::idqiASCO: return "idqiASCO";
    case OrthoRelation::qBesselcbqiHO: return "qBesselcbqiHO";
    case OrthoRelation::lqJO: return "lqJO";
    case OrthoRelation::thm314: return "thm314";
    case OrthoRelation::thm316: return "thm316";
    case OrthoRelation::thm368: return "thm368";
    case OrthoRelation::thm248: return "thm248";
    case OrthoRelation::eq189: return "eq189";
    case OrthoRelation::thm420: return "thm420";
    case OrthoRelation::cbqiH_bilateral: return "cbqiH-bilateral";
    case OrthoRelation::ismail_masson: return "ismail-masson";
    case OrthoRelation::bqJO: return "bqJO";
    case OrthoRelation::cobqJ: return "cobqJ";
    case OrthoRelation::colqJ: return "colqJ";
    case OrthoRelation::COqiBf: return "COqiBf";
  }
  throw ConfigError("unknown orthogonality relation id");
}

inline OrthoRelation ortho_relation_from_string(const std::string& s) {
  for (OrthoRelation r : all_ortho_relations())
    if (ortho_relation_name(r) == s) return r;
  throw ConfigError("unknown orthogonality relation: " + s);
}

/// Family parameters plus the lattice offset alpha (bilateral relations and
/// the w3 weight) and a second free parameter beta (Ismail--Masson q-beta).
template <typename R>
struct OrthoParams {
  ParamSet<R> fam;
  Complex<R> alpha{R(0)};
  Complex<R> beta{R(0)};
};

/// Gram matrix of a verified relation together with the predicted norms and
/// the normalized residuals |G[n][m] - delta_{nm} h_n| / sqrt(|h_n h_m|).
template <typename R>
struct GramReport {
  std::vector<long long> degrees;
  std::vector<std::vector<Complex<R>>> gram;
  std::vector<Complex<R>> hn;
  std::vector<std::vector<R>> normalized_residuals;
  std::string diagnostics;

  R max_residual() const {
    R worst(0);
    for (const auto& row : normalized_residuals)
      for (R v : row) worst = std::max(worst, v);
    return worst;
  }
};

namespace detail {

template <typename R>
void require_domain(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

/// Assemble the report from a pair functional and a norm functional; the
/// Gram matrix is symmetric, so only the upper triangle is computed.
template <typename R, typename FG, typename FH>
GramReport<R> make_report(long long nmax, FG&& gram_fn, FH&& h_fn,
                          std::string diag) {
  if (nmax < 0) throw DomainError("Gram report needs nmax >= 0");
  GramReport<R> rep;
  rep.diagnostics = std::move(diag);
  const size_t N = static_cast<size_t>(nmax) + 1;
  rep.degrees.resize(N);
  rep.gram.assign(N, std::vector<Complex<R>>(N, Complex<R>(R(0))));
  rep.hn.resize(N);
  rep.normalized_residuals.assign(N, std::vector<R>(N, R(0)));
  for (size_t n = 0; n < N; ++n) {
    rep.degrees[n] = static_cast<long long>(n);
    rep.hn[n] = h_fn(static_cast<long long>(n));
  }
  for (size_t n = 0; n < N; ++n) {
    for (size_t m = n; m < N; ++m) {
      const Complex<R> g =
          gram_fn(static_cast<long long>(n), static_cast<long long>(m));
      rep.gram[n][m] = g;
      rep.gram[m][n] = g;
      const Complex<R> expect = (n == m) ? rep.hn[n] : Complex<R>(R(0));
      const R scale = std::sqrt(std::abs(rep.hn[n]) * std::abs(rep.hn[m]));
      const R r = std::abs(g - expect) / std::max(scale, R(1e-300));
      rep.normalized_residuals[n][m] = r;
      rep.normalized_residuals[m][n] = r;
    }
  }
  return rep;
}

/// Integral of f(z) dz along z = i e^u, u in [-U, U] (the weight decays like
/// exp(-(log|z|)^2 / (2 log(1/q))), so the truncation tail is negligible at
/// the default U for moderate degrees and q near 1/2).
template <typename R, typename F>
Complex<R> quad_imag(F&& f, R U = R(13.5), R tol = R(1e-9)) {
  const Complex<R> i(R(0), R(1));
  return quad::integrate<R>(
      [&](R u) {
        // dz/du = i e^u = z along the contour z = i e^u.
        const Complex<R> z = i * std::exp(u);
        return f(z) * z;
      },
      -U, U, tol, 8, 512);
}

// --- numerically stable lattice evaluations via the dual families ----------
//
// The plain hypergeometric representations of the Jacobi/Bessel polynomials
// lose all significant digits when the degree is large and the argument sits
// on the orthogonality lattice (individual series terms grow like
// q^{-C(m,2)} while the value stays bounded).  The dual spectral families
// evaluate the same quantity through a terminating series of fixed length n,
// which is well conditioned uniformly in the lattice index m.

/// lqJ(q^n; m) for little q-Jacobi parameters (a, b), via q^{-1}-ASC duality.
template <typename R>
Complex<R> lqj_lattice(long long n, long long m, Complex<R> a, Complex<R> b,
                       const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(q, c2(m)) * ipow(-q * a, m) * qpoch(q * b, Q, m) /
         qpoch(q * a, Q, m) *
         phi<R>({ipow(q, -n), ipow(q, m + 1) * a * b, ipow(q, -m)},
                {q * b}, Q, ipow(q, n) / a, n);
}

/// bqJ(q^{n+1} a; m) for big q-Jacobi parameters (a, b, c), via CDqiH duality.
template <typename R>
Complex<R> bqj_lattice(long long n, long long m, Complex<R> a, Complex<R> b,
                       Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(q, c2(m)) * ipow(-q * c, m) * qpoch(q * a * b / c, Q, m) /
         qpoch(q * c, Q, m) *
         phi<R>({ipow(q, -n), ipow(q, m + 1) * a * b, ipow(q, -m)},
                {q * a, q * a * b / c}, Q, ipow(q, n + 1) * a / c, n);
}

/// qBes(q^n; m) for q-Bessel parameter a, via continuous big q^{-1}-Hermite
/// duality (branch factors cancel exactly, leaving a real formula).
template <typename R>
Complex<R> qbes_lattice(long long n, long long m, Complex<R> a,
                        const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(q, 2 * c2(m)) * ipow(-q * a, m) *
         phi<R>({ipow(q, -n), ipow(q, -m), -a * ipow(q, m)}, {}, Q,
                -ipow(q, n) / a, n);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Continuous theta-interval relations (AW chain on |z| = 1).
// ---------------------------------------------------------------------------

/// Theta-interval orthogonality for AWO / cdqHO / ASCO / cbqHO / cqHO.  The
/// weight is the AW weight with the absent parameters removed; the norms
/// degenerate accordingly (products over the remaining parameter pairs).
template <typename R>
GramReport<R> verify_continuous_theta(OrthoRelation rid, long long nmax,
                                      const OrthoParams<R>& OP) {
  using C = Complex<R>;
  const ParamSet<R>& P = OP.fam;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  std::vector<C> params;
  switch (rid) {
    case OrthoRelation::AWO:
      params = {P.req('a'), P.req('b'), P.req('c'), P.req('d')};
      break;
    case OrthoRelation::cdqHO:
      params = {P.req('a'), P.req('b'), P.req('c')};
      break;
    case OrthoRelation::ASCO:
      params = {P.req('a'), P.req('b')};
      break;
    case OrthoRelation::cbqHO:
      params = {P.req('a')};
      break;
    case OrthoRelation::cqHO:
      break;
    default:
      throw ConfigError("not a theta-interval relation");
  }
  for (const C& p : params)
    detail::require_domain<R>(std::abs(p) < R(1),
                              "theta-interval weight needs |params| < 1");
  auto poly = [&](C z, long long n) -> C {
    switch (rid) {
      case OrthoRelation::AWO:
        return fam::aw1(z, n, params[0], params[1], params[2], params[3], Q);
      case OrthoRelation::cdqHO:
        return fam::cdqh1(z, n, params[0], params[1], params[2], Q);
      case OrthoRelation::ASCO:
        return fam::asc1(z, n, params[0], params[1], Q);
      case OrthoRelation::cbqHO:
        return fam::cbqh1(z, n, params[0], Q);
      default:
        return fam::cqh(z, n, Q);
    }
  };
  auto weight = [&](C z) -> C {
    C den(R(1));
    for (const C& p : params) den *= qpoch_inf_many(fam::zpm(p, z), Q);
    return qpoch_inf_many(fam::zpm(C(R(1)), z * z), Q) / den;
  };
  const R pi = std::acos(R(-1));
  auto gram = [&](long long n, long long m) -> C {
    return quad::integrate<R>(
        [&](R th) {
          const C z(std::cos(th), std::sin(th));
          return poly(z, n) * poly(z, m) * weight(z);
        },
        // 1e-9: higher-degree integrands reach an absolute roundoff
        // plateau near 5e-11, so demanding more would stall the doubling.
        R(0), pi, R(1e-9), 8, 512);
  };
  auto hfun = [&](long long n) -> C {
    C pairs(R(1));
    for (size_t i = 0; i < params.size(); ++i)
      for (size_t j = i + 1; j < params.size(); ++j)
        pairs *= qpoch_inf(ipow(q, n) * params[i] * params[j], Q);
    C top(R(1));
    if (params.size() == 4) {
      const C prod = params[0] * params[1] * params[2] * params[3];
      top = qpoch(ipow(q, n - 1) * prod, Q, n) *
            qpoch_inf(ipow(q, 2 * n) * prod, Q);
    }
    return R(2) * pi * top / (qpoch_inf(ipow(q, n + 1), Q) * pairs);
  };
  return detail::make_report<R>(nmax, gram, hfun,
                                "theta-interval quadrature on [0, pi]");
}

// ---------------------------------------------------------------------------
// Continuous imaginary-axis relations (q^{-1}-chain).
// ---------------------------------------------------------------------------

/// Imaginary-axis orthogonality for theo33 / corr311 / corr318 / corr326,
/// via the substitution z = i e^u with Gaussian-type weight decay.
template <typename R>
GramReport<R> verify_continuous_imag(OrthoRelation rid, long long nmax,
                                     const OrthoParams<R>& OP) {
  using C = Complex<R>;
  const ParamSet<R>& P = OP.fam;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  std::vector<C> params;
  switch (rid) {
    case OrthoRelation::theo33:
      params = {P.req('a'), P.req('b'), P.req('c')};
      break;
    case OrthoRelation::corr311:
      params = {P.req('a'), P.req('b')};
      break;
    case OrthoRelation::corr318:
      params = {P.req('a')};
      break;
    case OrthoRelation::corr326:
      break;
    default:
      throw ConfigError("not an imaginary-axis relation");
  }
  auto poly = [&](C z, long long n) -> C {
    switch (rid) {
      case OrthoRelation::theo33:
        return fam::cdqih1(z, n, params[0], params[1], params[2], Q);
      case OrthoRelation::corr311:
        return fam::qiasc1(z, n, params[0], params[1], Q);
      case OrthoRelation::corr318:
        return fam::cbqih1(z, n, params[0], Q);
      default:
        return fam::cqih(z, n, Q);
    }
  };
  auto weight = [&](C z) -> C {
    C num(R(1));
    for (const C& p : params) num *= qpoch_inf_many(fam::zpm(q * p, z), Q);
    return num / (z * qpoch_inf_many(fam::zpm(q, z * z), Q));
  };
  auto gram = [&](long long n, long long m) -> C {
    return detail::quad_imag<R>(
        [&](C z) { return poly(z, n) * poly(z, m) * weight(z); });
  };
  const R logq1 = std::log(R(1) / std::abs(q));
  auto hfun = [&](long long n) -> C {
    switch (rid) {
      case OrthoRelation::theo33: {
        const C a = params[0], b = params[1], c = params[2];
        return ipow(q, -4 * c2(n)) *
               qpoch_inf_many<R>({q, q * a * b, q * a * c, q * b * c}, Q) *
               qpoch_many<R>({q, C(R(1)) / (a * b), C(R(1)) / (a * c),
                              C(R(1)) / (b * c)},
                             Q, n) *
               ipow(a * a * b * b * c * c / q, n) * logq1;
      }
      case OrthoRelation::corr311: {
        const C a = params[0], b = params[1];
        return ipow(q, -2 * c2(n)) *
               qpoch_inf_many<R>({q, q * a * b}, Q) *
               qpoch_many<R>({q, C(R(1)) / (a * b)}, Q, n) *
               ipow(a * b / q, n) * logq1;
      }
      default:
        // corr318 and corr326 share the same norm.
        return ipow(q, -c2(n)) * qpoch_inf(q, Q) * qpoch(q, Q, n) *
               ipow(-C(R(1)) / q, n) * logq1;
    }
  };
  return detail::make_report<R>(nmax, gram, hfun,
                                "imaginary-axis quadrature, z = i e^u");
}

// ---------------------------------------------------------------------------
// Real-line relations for cqiH (w2, w3).
// ---------------------------------------------------------------------------

/// Real-line orthogonality for the continuous q^{-1}-Hermite family: the
/// extremal Gaussian-type weight (w2) and the theta-quotient weight (w3),
/// both over z in (0, inf) embedded as z = e^v, with norm 2 h_n (the
/// half-line form fails for odd n + m, where the off-diagonal entries are
/// purely imaginary but nonzero).
template <typename R>
GramReport<R> verify_w2_w3(OrthoRelation rid, long long nmax,
                           const OrthoParams<R>& OP) {
  using C = Complex<R>;
  const BaseQ<R>& Q = OP.fam.base;
  const C q = Q.q;
  const C i(R(0), R(1));
  const R logq1 = std::log(R(1) / std::abs(q));
  const R pi = std::acos(R(-1));
  if (rid == OrthoRelation::w2) {
    auto gram = [&](long long n, long long m) -> C {
      return quad::integrate<R>(
          [&](R v) {
            const C z(std::exp(v));
            return fam::cqih(i * z, n, Q) * fam::cqih(i * z, m, Q) *
                   (C(R(1)) + C(R(1)) / (z * z)) *
                   std::exp(-R(2) * v * v / logq1) * z;
          },
          R(-12), R(12), R(1e-11), 8, 512);
    };
    auto hfun = [&](long long n) -> C {
      return R(2) * ipow(-q, -n) *
             cpow(q, C(R(-0.125) - R(c2(n)))) * qpoch(q, Q, n) *
             std::sqrt(pi * logq1 / R(2));
    };
    return detail::make_report<R>(nmax, gram, hfun,
                                  "extremal weight, full line, 2 h_n");
  }
  if (rid != OrthoRelation::w3)
    throw ConfigError("not a real-line relation");
  const C al = OP.alpha;
  detail::require_domain<R>(std::abs(al) > R(0),
                            "w3 needs a nonzero alpha parameter");
  const C alb = std::conj(al);
  auto gram = [&](long long n, long long m) -> C {
    return quad::integrate<R>(
        [&](R v) {
          const C z(std::exp(v));
          const C den = qpoch_inf_many<R>(
              {al * z, alb * z, -q * z / al, -q * z / alb, -al / z,
               -alb / z, q / (al * z), q / (alb * z)},
              Q);
          return fam::cqih(i * z, n, Q) * fam::cqih(i * z, m, Q) *
                 (C(R(1)) + C(R(1)) / (z * z)) / den * z;
        },
        R(-12), R(12), R(1e-11), 8, 512);
  };
  auto hfun = [&](long long n) -> C {
    return R(2) * ipow(q, -c2(n)) * pi * i * qpoch(q, Q, n) /
           (al * ipow(-q, n) * qpoch_inf(q, Q) * theta(-al * alb, Q) *
            theta(alb / al, Q));
  };
  return detail::make_report<R>(nmax, gram, hfun,
                                "theta-quotient weight, full line, 2 h_n");
}

// ---------------------------------------------------------------------------
// Discrete relations.
// ---------------------------------------------------------------------------

/// Discrete orthogonality.  Relations summing over the spectral lattice
/// produce a Gram matrix indexed by the polynomial degree; the dual
/// relations (idqiASCO, qBesselcbqiHO, thm368, DcdqiHO) sum over the degree
/// and index the Gram matrix by the lattice point instead.
template <typename R>
GramReport<R> verify_discrete(OrthoRelation rid, long long nmax,
                              const OrthoParams<R>& OP) {
  using C = Complex<R>;
  const ParamSet<R>& P = OP.fam;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  const C one(R(1));
  switch (rid) {
    case OrthoRelation::AKporth: {
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      detail::require_domain<R>(std::abs(a) > R(1),
                                "AKporth needs |a| > 1");
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_terms<R>(
            [&](long long m) {
              const C w = ipow(q, c2(m)) * ipow(-q * b * c, m) *
                          qpoch(q / (a * a), Q, 2 * m) *
                          qpoch_many<R>({one / (a * b), one / (a * c),
                                         one / (a * a)},
                                        Q, m) /
                          (qpoch(one / (a * a), Q, 2 * m) *
                           qpoch_many<R>({q, q * b / a, q * c / a}, Q, m));
              const C z = ipow(q, -m) * a;
              return w * fam::cdqih1(z, n, a, b, c, Q) *
                     fam::cdqih1(z, np, a, b, c, Q);
            },
            200);
      };
      auto hfun = [&](long long n) -> C {
        return ipow(q, -4 * c2(n)) * ipow(a * a * b * b * c * c / q, n) *
               qpoch_inf_many<R>({q / (a * a), q * b * c}, Q) *
               qpoch_many<R>({q, one / (a * b), one / (a * c),
                              one / (b * c)},
                             Q, n) /
               qpoch_inf_many<R>({q * b / a, q * c / a}, Q);
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "lattice sum z = q^{-m} a");
    }
    case OrthoRelation::ASCorthi: {
      const C a = P.req('a'), b = P.req('b');
      detail::require_domain<R>(std::abs(a) > R(1),
                                "ASCorthi needs |a| > 1");
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_terms<R>(
            [&](long long m) {
              const C w = ipow(q, 2 * c2(m)) * ipow(q * b / a, m) *
                          qpoch(q / (a * a), Q, 2 * m) *
                          qpoch_many<R>({one / (a * a), one / (a * b)}, Q,
                                        m) /
                          (qpoch(one / (a * a), Q, 2 * m) *
                           qpoch_many<R>({q, q * b / a}, Q, m));
              const C z = ipow(q, -m) * a;
              return w * fam::qiasc1(z, n, a, b, Q) *
                     fam::qiasc1(z, np, a, b, Q);
            },
            200);
      };
      auto hfun = [&](long long n) -> C {
        return ipow(q, -2 * c2(n)) * ipow(a * b / q, n) *
               qpoch_inf(q / (a * a), Q) *
               qpoch_many<R>({q, one / (a * b)}, Q, n) /
               qpoch_inf(q * b / a, Q);
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "lattice sum z = q^{-m} a");
    }
    case OrthoRelation::cbqHorthi: {
      const C a = P.req('a');
      detail::require_domain<R>(std::abs(a) > R(1),
                                "cbqHorthi needs |a| > 1");
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_terms<R>(
            [&](long long m) {
              const C w = ipow(q, 3 * c2(m)) * ipow(-q / (a * a), m) *
                          qpoch(q / (a * a), Q, 2 * m) *
                          qpoch(one / (a * a), Q, m) /
                          (qpoch(one / (a * a), Q, 2 * m) *
                           qpoch(q, Q, m));
              const C z = ipow(q, -m) * a;
              return w * fam::cbqih1(z, n, a, Q) * fam::cbqih1(z, np, a, Q);
            },
            200);
      };
      auto hfun = [&](long long n) -> C {
        return ipow(q, -c2(n)) / ipow(-q, n) * qpoch_inf(q / (a * a), Q) *
               qpoch(q, Q, n);
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "lattice sum z = q^{-m} a");
    }
    case OrthoRelation::idqiASCO: {
      // Dual orientation: sum over the degree, Gram indexed by the lattice.
      const C a = P.req('a'), b = P.req('b');
      detail::require_domain<R>(std::abs(a) > R(1),
                                "idqiASCO needs |a| > 1");
      // The weight q^{C(n,2)}-type prefactors of the dual polynomials are
      // folded into the summand so every term stays bounded.
      auto gram = [&](long long m, long long mp) -> C {
        return quad::sum_terms<R>(
            [&](long long n) {
              const C f1 =
                  phi<R>({ipow(q, -n), ipow(q, -m), ipow(q, m) / (a * a)},
                         {one / (a * b)}, Q, ipow(q, n) * a / b, n);
              const C f2 =
                  phi<R>({ipow(q, -n), ipow(q, -mp), ipow(q, mp) / (a * a)},
                         {one / (a * b)}, Q, ipow(q, n) * a / b, n);
              return ipow(q * b / a, n) * qpoch(one / (a * b), Q, n) * f1 *
                     f2 / qpoch(q, Q, n);
            },
            300);
      };
      auto hfun = [&](long long m) -> C {
        return ipow(q, -2 * c2(m)) * ipow(a / (q * b), m) *
               qpoch_inf(q / (a * a), Q) / qpoch_inf(q * b / a, Q) *
               qpoch(one / (a * a), Q, 2 * m) *
               qpoch_many<R>({q, q * b / a}, Q, m) /
               (qpoch(q / (a * a), Q, 2 * m) *
                qpoch_many<R>({one / (a * a), one / (a * b)}, Q, m));
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "dual sum over the degree");
    }
    case OrthoRelation::qBesselcbqiHO: {
      const C a = P.req('a');
      detail::require_domain<R>(std::abs(a) > R(1),
                                "qBesselcbqiHO needs |a| > 1");
      auto gram = [&](long long m, long long mp) -> C {
        return quad::sum_terms<R>(
            [&](long long n) {
              // cbqih1 = a^{-n} phi(...); the weight q^{C(n,2)} (-q)^n/(q)_n
              // keeps every term bounded.
              const C f1 =
                  phi<R>({ipow(q, -n), ipow(q, -m), ipow(q, m) / (a * a)},
                         {}, Q, ipow(q, n) * a * a, n);
              const C f2 =
                  phi<R>({ipow(q, -n), ipow(q, -mp), ipow(q, mp) / (a * a)},
                         {}, Q, ipow(q, n) * a * a, n);
              return ipow(q, c2(n)) * ipow(-q, n) / ipow(a, 2 * n) * f1 *
                     f2 / qpoch(q, Q, n);
            },
            300);
      };
      auto hfun = [&](long long m) -> C {
        return ipow(q, -3 * c2(m)) * qpoch_inf(q / (a * a), Q) *
               ipow(-a * a / q, m) * qpoch(one / (a * a), Q, 2 * m) *
               qpoch(q, Q, m) /
               (qpoch(q / (a * a), Q, 2 * m) * qpoch(one / (a * a), Q, m));
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "dual sum over the degree");
    }
    case OrthoRelation::DcdqiHO: {
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      detail::require_domain<R>(std::abs(a) > R(1),
                                "DcdqiHO needs |a| > 1");
      auto part1 = [&](long long m, long long mp) -> C {
        const C pre = qpoch_inf(one / (q * b * c), Q) /
                      qpoch_inf_many<R>({one / (a * b), one / (a * c)}, Q) *
                      ipow(b / a, m + mp) * qpoch(one / (a * b), Q, m) *
                      qpoch(one / (a * b), Q, mp) /
                      (qpoch(q * b / a, Q, m) * qpoch(q * b / a, Q, mp));
        return pre * quad::sum_terms<R>(
                         [&](long long n) {
                           auto f = [&](long long mm) {
                             return phi<R>({ipow(q, -n),
                                            ipow(q, mm) / (a * a),
                                            ipow(q, -mm)},
                                           {one / (a * b), one / (a * c)},
                                           Q, ipow(q, n) / (b * c), n);
                           };
                           return ipow(q, n) *
                                  qpoch_many<R>({one / (a * b),
                                                 one / (a * c)},
                                                Q, n) *
                                  f(m) * f(mp) /
                                  qpoch_many<R>({q, one / (b * c)}, Q, n);
                         },
                         300);
      };
      auto part2 = [&](long long m, long long mp) -> C {
        const C pre = qpoch_inf(q * b * c, Q) /
                      qpoch_inf_many<R>({q * b / a, q * c / a}, Q) *
                      ipow(one / (q * a * c), m + mp) *
                      qpoch(q * c / a, Q, m) * qpoch(q * c / a, Q, mp) /
                      (qpoch(one / (a * c), Q, m) *
                       qpoch(one / (a * c), Q, mp));
        return pre * quad::sum_terms<R>(
                         [&](long long n) {
                           auto f = [&](long long mm) {
                             return phi<R>({ipow(q, -n),
                                            ipow(q, mm) / (a * a),
                                            ipow(q, -mm)},
                                           {q * b / a, q * c / a}, Q,
                                           ipow(q, n + 2) * b * c, n);
                           };
                           return ipow(q, n) *
                                  qpoch_many<R>({q * b / a, q * c / a}, Q,
                                                n) *
                                  f(m) * f(mp) /
                                  qpoch_many<R>({q, q * q * b * c}, Q, n);
                         },
                         300);
      };
      auto gram = [&](long long m, long long mp) -> C {
        return part1(m, mp) + part2(m, mp);
      };
      auto hfun = [&](long long m) -> C {
        return ipow(q, -c2(m)) * ipow(-b / (q * a * a * c), m) *
               qpoch_inf_many<R>({q / (a * a), q * b * c,
                                  one / (q * b * c)},
                                 Q) /
               qpoch_inf_many<R>({one / (a * b), one / (a * c), q * b / a,
                                  q * c / a},
                                 Q) *
               qpoch(one / (a * a), Q, 2 * m) *
               qpoch_many<R>({q, one / (a * b), q * c / a}, Q, m) /
               (qpoch(q / (a * a), Q, 2 * m) *
                qpoch_many<R>({one / (a * a), one / (a * c), q * b / a}, Q,
                              m));
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "two-component dual sum (x = q^m / a)");
    }
    case OrthoRelation::lqJO: {
      const C a = P.req('a'), b = P.req('b');
      detail::require_domain<R>(std::abs(q * a) < R(1),
                                "lqJO needs |qa| < 1");
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_terms<R>(
            [&](long long m) {
              return ipow(q * a, m) * qpoch(q * b, Q, m) / qpoch(q, Q, m) *
                     fam::lqj1(ipow(q, m), n, a, b, Q) *
                     fam::lqj1(ipow(q, m), np, a, b, Q);
            },
            300);
      };
      auto hfun = [&](long long n) -> C {
        return ipow(q * a, n) * qpoch_inf(q * q * a * b, Q) /
               qpoch_inf(q * a, Q) * qpoch(q * a * b, Q, 2 * n) *
               qpoch_many<R>({q, q * b}, Q, n) /
               (qpoch(q * q * a * b, Q, 2 * n) *
                qpoch_many<R>({q * a, q * a * b}, Q, n));
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "lattice sum x = q^m");
    }
    case OrthoRelation::thm314: {
      const C a = P.req('a'), b = P.req('b');
      detail::require_domain<R>(std::abs(a * b) > R(1) &&
                                    std::abs(q * b) < std::abs(a),
                                "thm314 needs |ab| > 1 and |qb| < |a|");
      const C s1 = std::sqrt(q * a * b), s3 = std::sqrt(q * q * q * a * b);
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_terms<R>(
            [&](long long m) {
              const C w = ipow(one / (q * a), m) *
                          qpoch_many<R>({q * a, q * a * b, s3, -s3}, Q, m) /
                          qpoch_many<R>({q, q * b, s1, -s1}, Q, m);
              return w * detail::lqj_lattice(n, m, a, b, Q) *
                     detail::lqj_lattice(np, m, a, b, Q);
            },
            200);
      };
      auto hfun = [&](long long n) -> C {
        return ipow(one / (q * a), n) * qpoch_inf(q * q * a * b, Q) *
               qpoch(q, Q, n) / (qpoch_inf(q * a, Q) * qpoch(q * b, Q, n));
      };
      return detail::make_report<R>(
          nmax, gram, hfun, "dual-indexed sum over the degree lattice");
    }
    case OrthoRelation::thm316: {
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      detail::require_domain<R>(std::abs(a * b) > R(1),
                                "thm316 needs |ab| > 1");
      const C s1 = std::sqrt(q * a * b), s3 = std::sqrt(q * q * q * a * b);
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_terms<R>(
            [&](long long m) {
              const C w =
                  ipow(q, -c2(m)) / ipow(-q * q * a * c, m) *
                  qpoch_many<R>({q * a, q * c, q * a * b, s3, -s3}, Q, m) /
                  qpoch_many<R>({q, q * b, q * a * b / c, s1, -s1}, Q, m);
              return w * detail::bqj_lattice(n, m, a, b, c, Q) *
                     detail::bqj_lattice(np, m, a, b, c, Q);
            },
            200);
      };
      auto hfun = [&](long long n) -> C {
        return ipow(q, -n) *
               qpoch_inf_many<R>({q * q * a * b, c / a}, Q) *
               qpoch_many<R>({q, q * a / c}, Q, n) /
               (qpoch_inf_many<R>({q * b, q * c}, Q) *
                qpoch_many<R>({q * a, q * a * b / c}, Q, n));
      };
      return detail::make_report<R>(
          nmax, gram, hfun, "dual-indexed sum over the degree lattice");
    }
    case OrthoRelation::thm368: {
      const C a = P.req('a');
      auto gram = [&](long long m, long long mp) -> C {
        return quad::sum_terms<R>(
            [&](long long n) {
              return ipow(q, c2(n)) * ipow(q * a, n) / qpoch(q, Q, n) *
                     fam::qbes1(ipow(q, n), m, a, Q) *
                     fam::qbes1(ipow(q, n), mp, a, Q);
            },
            300);
      };
      auto hfun = [&](long long m) -> C {
        return ipow(q, c2(m)) * ipow(q * a, m) * qpoch_inf(-q * a, Q) *
               qpoch(-a, Q, 2 * m) * qpoch(q, Q, m) /
               (qpoch(-q * a, Q, 2 * m) * qpoch(-a, Q, m));
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "dual sum over the argument lattice");
    }
    case OrthoRelation::thm248: {
      const C a = P.req('a');
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_terms<R>(
            [&](long long m) {
              const C w = ipow(q, -c2(m)) / ipow(q * a, m) *
                          qpoch(-q * a, Q, 2 * m) * qpoch(-a, Q, m) /
                          (qpoch(-a, Q, 2 * m) * qpoch(q, Q, m));
              return w * detail::qbes_lattice(n, m, a, Q) *
                     detail::qbes_lattice(np, m, a, Q);
            },
            200);
      };
      auto hfun = [&](long long n) -> C {
        return ipow(q, -c2(n)) / ipow(q * a, n) * qpoch_inf(-q * a, Q) *
               qpoch(q, Q, n);
      };
      return detail::make_report<R>(
          nmax, gram, hfun, "dual-indexed sum over the degree lattice");
    }
    default:
      throw ConfigError("not a discrete relation");
  }
}

// ---------------------------------------------------------------------------
// Bilateral relations (lattice z = q^{-k} / alpha, k over all integers).
// ---------------------------------------------------------------------------

template <typename R>
GramReport<R> verify_bilateral(OrthoRelation rid, long long nmax,
                               const OrthoParams<R>& OP) {
  using C = Complex<R>;
  const ParamSet<R>& P = OP.fam;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  const C al = OP.alpha;
  const C one(R(1));
  detail::require_domain<R>(std::abs(al) > R(0),
                            "bilateral relations need alpha != 0");
  auto zk = [&](long long k) { return ipow(q, -k) / al; };
  switch (rid) {
    case OrthoRelation::eq189: {
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_bilateral<R>([&](long long k) {
          const C w = qpoch_many<R>({al / a, al / b, al / c}, Q, k) /
                      qpoch_many<R>({q * al * a, q * al * b, q * al * c}, Q,
                                    k) *
                      ipow(q, c2(k)) * ipow(-q * al * a * b * c, k) *
                      (one - ipow(q, 2 * k) * al * al);
          return w * fam::cdqih1(zk(k), n, a, b, c, Q) *
                 fam::cdqih1(zk(k), np, a, b, c, Q);
        });
      };
      auto hfun = [&](long long n) -> C {
        std::vector<C> den = fam::zpm(q * a, al);
        for (const C& v : fam::zpm(q * b, al)) den.push_back(v);
        for (const C& v : fam::zpm(q * c, al)) den.push_back(v);
        return ipow(q, -4 * c2(n)) *
               qpoch_inf_many<R>({q, al * al, q / (al * al), q * a * b,
                                  q * a * c, q * b * c},
                                 Q) /
               qpoch_inf_many(den, Q) *
               ipow(a * a * b * b * c * c / q, n) *
               qpoch_many<R>({q, one / (a * b), one / (a * c),
                              one / (b * c)},
                             Q, n);
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "bilateral lattice z = q^{-k}/alpha");
    }
    case OrthoRelation::thm420: {
      const C a = P.req('a'), b = P.req('b');
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_bilateral<R>([&](long long k) {
          const C w = qpoch_many<R>({al / a, al / b}, Q, k) /
                      qpoch_many<R>({q * al * a, q * al * b}, Q, k) *
                      ipow(q, 2 * c2(k)) * ipow(q * al * al * a * b, k) *
                      (one - ipow(q, 2 * k) * al * al);
          return w * fam::qiasc1(zk(k), n, a, b, Q) *
                 fam::qiasc1(zk(k), np, a, b, Q);
        });
      };
      auto hfun = [&](long long n) -> C {
        std::vector<C> den = fam::zpm(q * a, al);
        for (const C& v : fam::zpm(q * b, al)) den.push_back(v);
        return ipow(q, -2 * c2(n)) *
               qpoch_inf_many<R>({q, al * al, q / (al * al), q * a * b},
                                 Q) /
               qpoch_inf_many(den, Q) * ipow(a * b / q, n) *
               qpoch_many<R>({q, one / (a * b)}, Q, n);
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "bilateral lattice z = q^{-k}/alpha");
    }
    case OrthoRelation::cbqiH_bilateral: {
      const C a = P.req('a');
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_bilateral<R>([&](long long k) {
          const C w = qpoch(al / a, Q, k) / qpoch(q * al * a, Q, k) *
                      ipow(q, 3 * c2(k)) * ipow(-q * al * al * al * a, k) *
                      (one - ipow(q, 2 * k) * al * al);
          return w * fam::cbqih1(zk(k), n, a, Q) *
                 fam::cbqih1(zk(k), np, a, Q);
        });
      };
      auto hfun = [&](long long n) -> C {
        return ipow(q, -c2(n)) *
               qpoch_inf_many<R>({q, al * al, q / (al * al)}, Q) /
               qpoch_inf_many(fam::zpm(q * a, al), Q) *
               ipow(-one / q, n) * qpoch(q, Q, n);
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "bilateral lattice z = q^{-k}/alpha");
    }
    case OrthoRelation::ismail_masson: {
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_bilateral<R>([&](long long k) {
          const C w = ipow(q, 4 * c2(k)) * ipow(q * al * al * al * al, k) *
                      (one - ipow(q, 2 * k) * al * al);
          return w * fam::cqih(zk(k), n, Q) * fam::cqih(zk(k), np, Q);
        });
      };
      auto hfun = [&](long long n) -> C {
        return qpoch_inf_many<R>({q, al * al, q / (al * al)}, Q) *
               ipow(q, -c2(n)) / ipow(-q, n) * qpoch(q, Q, n);
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "bilateral lattice z = q^{-k}/alpha");
    }
    default:
      throw ConfigError("not a bilateral relation");
  }
}

// ---------------------------------------------------------------------------
// q-integral relation for big q-Jacobi.
// ---------------------------------------------------------------------------

template <typename R>
GramReport<R> verify_qintegral_bqJ(long long nmax, const OrthoParams<R>& OP) {
  using C = Complex<R>;
  const ParamSet<R>& P = OP.fam;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  const C a = P.req('a'), b = P.req('b'), c = P.req('c');
  detail::require_domain<R>(std::abs(q * a) < R(1) && c.real() < R(0),
                            "bqJO needs |qa| < 1 and c < 0");
  auto gram = [&](long long n, long long m) -> C {
    std::function<C(C)> f = [&](C x) -> C {
      const C w = qpoch_inf_many<R>({x / a, x / c}, Q) /
                  qpoch_inf_many<R>({x, b * x / c}, Q);
      return fam::bqj1(x, n, a, b, c, Q) * fam::bqj1(x, m, a, b, c, Q) * w;
    };
    return jackson_qintegral<R>(f, q * c, q * a, Q);
  };
  auto hfun = [&](long long m) -> C {
    return ipow(q, c2(m) + 1) * a * (C(R(1)) - q) *
           ipow(-q * q * a * c, m) *
           qpoch_inf_many<R>({q, q * q * a * b, c / a, q * a / c}, Q) /
           qpoch_inf_many<R>({q * a, q * b, q * c, q * a * b / c}, Q) *
           qpoch(q * a * b, Q, 2 * m) *
           qpoch_many<R>({q, q * b, q * a * b / c}, Q, m) /
           (qpoch(q * q * a * b, Q, 2 * m) *
            qpoch_many<R>({q * a, q * c, q * a * b}, Q, m));
  };
  return detail::make_report<R>(nmax, gram, hfun,
                                "Jackson q-integral on [qc, qa]");
}

// ---------------------------------------------------------------------------
// Index transforms (continuous degree mu on a vertical segment).
// ---------------------------------------------------------------------------

/// Orthogonality in the degree variable: integrals over one period of the
/// q^mu lattice, with nodes offset half a step from the segment endpoints
/// and doubled until stable.
template <typename R>
GramReport<R> verify_index_transform(OrthoRelation rid, long long nmax,
                                     const OrthoParams<R>& OP) {
  using C = Complex<R>;
  const ParamSet<R>& P = OP.fam;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  const C i(R(0), R(1));
  const R L = std::log(std::abs(q));  // negative
  const R T = std::acos(R(-1)) / (-L);
  const R pi = std::acos(R(-1));
  auto qp = [&](C e) { return cpow(q, e); };
  switch (rid) {
    case OrthoRelation::cobqJ: {
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      detail::require_domain<R>(std::abs(q * a * b) < R(1),
                                "cobqJ needs |qab| < 1");
      const C A0 = C(-std::log(std::abs(q * a * b)) / (2 * L));
      auto W = [&](C mu) -> C {
        return qpoch_inf_many<R>(
                   {qp(C(R(-1)) - C(R(2)) * mu) / (a * b),
                    qp(C(R(1)) + C(R(2)) * mu) * a * b},
                   Q) /
               qpoch_inf_many<R>(
                   {qp(-mu), qp(-mu) / b, qp(-mu) * c / (a * b),
                    qp(mu + C(R(1))) * a, qp(mu + C(R(1))) * c,
                    qp(mu + C(R(1))) * a * b},
                   Q);
      };
      auto gram = [&](long long n, long long np) -> C {
        return quad::midpoint<R>(
            [&](R t) {
              const C mu = A0 + i * C(t);
              return fam::bqjf(ipow(q, -n), mu, a, b, c, Q) *
                     fam::bqjf(ipow(q, -np), mu, a, b, c, Q) * W(mu) * i;
            },
            R(0), T);
      };
      auto hfun = [&](long long n) -> C {
        return -C(R(2)) * pi * i /
               (C(L) *
                qpoch_inf_many<R>({q, q * a, q * c, q * c / b}, Q)) *
               ipow(q * a * b, n) * qpoch_many<R>({q, q * c / b}, Q, n) /
               qpoch_many<R>({q * a, q * c}, Q, n);
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "contour mu = A + it, one period");
    }
    case OrthoRelation::colqJ: {
      const C a = P.req('a'), b = P.req('b');
      detail::require_domain<R>(std::abs(q * a * b) < R(1) &&
                                    std::abs(q * b / a) < R(1),
                                "colqJ needs |qab| < 1 and |qb/a| < 1");
      const C A0 = C(-std::log(std::abs(q * a * b)) / (2 * L));
      // On the lattice x = q^{-n} the second term of the two-term function
      // representation vanishes, leaving one terminating series.
      auto flat = [&](long long n, C mu) -> C {
        const C pre =
            qpoch_inf_many<R>({qp(mu + C(R(1))) * a, qp(-mu) / b}, Q) /
            qpoch_inf_many<R>({q * a, C(R(1)) / b}, Q);
        return pre * phi<R>({qp(-mu), qp(mu + C(R(1))) * a * b,
                             ipow(q, -n)},
                            {q * b, C(R(0))}, Q, q, n);
      };
      auto W = [&](C mu) -> C {
        return qpoch_inf_many<R>(
                   {qp(C(R(-1)) - C(R(2)) * mu) / (a * b),
                    qp(C(R(1)) + C(R(2)) * mu) * a * b},
                   Q) /
               qpoch_inf_many<R>(
                   {qp(-mu), qp(-mu) / a, qp(-mu) / b, qp(-mu) / b,
                    qp(mu + C(R(1))) * a, qp(mu + C(R(1))) * a,
                    qp(mu + C(R(1))) * b, qp(mu + C(R(1))) * a * b},
                   Q);
      };
      auto gram = [&](long long n, long long np) -> C {
        return quad::midpoint<R>(
            [&](R t) {
              const C mu = A0 + i * C(t);
              return flat(n, mu) * flat(np, mu) * W(mu) * i;
            },
            R(0), T, R(1e-9));
      };
      auto hfun = [&](long long n) -> C {
        return -C(R(2)) * pi * i /
               (C(L) * qpoch_inf_many<R>({q, q * a, q * a, q * b,
                                          C(R(1)) / b, C(R(1)) / b},
                                         Q)) *
               ipow(q * a * b, n) * qpoch(q, Q, n) / qpoch(q * b, Q, n);
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "contour mu = A + it, one period");
    }
    case OrthoRelation::COqiBf: {
      const C a = P.req('a');
      detail::require_domain<R>(a.imag() == R(0) && a.real() < R(-1),
                                "COqiBf needs a < -1");
      const C B0 = C(std::log(-a.real()) / (2 * L));
      const R lr = std::log(-(q / a).real());  // real branch of (q/a)^{2mu}
      auto gram = [&](long long n, long long np) -> C {
        return quad::midpoint<R>(
            [&](R t) {
              const C mu = B0 - i * C(t);  // downward, one period
              const C w =
                  qpoch_inf_many<R>(
                      {-qp(C(R(-2)) * mu) * a, -qp(C(R(2)) * mu) / a}, Q) /
                  qpoch_inf_many<R>({qp(-mu), -qp(mu) / a}, Q) *
                  cpow(q, C(R(4)) * c2(mu)) *
                  std::exp(C(R(2)) * mu * C(lr));
              return fam::qibesf(ipow(q, -n), mu, a, Q) *
                     fam::qibesf(ipow(q, -np), mu, a, Q) * w * (-i);
            },
            R(0), T);
      };
      auto hfun = [&](long long n) -> C {
        return C(R(2)) * pi * i * qpoch(q, Q, n) /
               (ipow(-a, n) * qpoch_inf(q, Q) * C(L));
      };
      return detail::make_report<R>(nmax, gram, hfun,
                                    "contour mu = B - it, one period");
    }
    default:
      throw ConfigError("not an index-transform relation");
  }
}

// ---------------------------------------------------------------------------
// Umbrella dispatch.
// ---------------------------------------------------------------------------

template <typename R>
GramReport<R> verify_ortho(OrthoRelation rid, long long nmax,
                           const OrthoParams<R>& OP) {
  switch (rid) {
    case OrthoRelation::AWO:
    case OrthoRelation::cdqHO:
    case OrthoRelation::ASCO:
    case OrthoRelation::cbqHO:
    case OrthoRelation::cqHO:
      return verify_continuous_theta(rid, nmax, OP);
    case OrthoRelation::theo33:
    case OrthoRelation::corr311:
    case OrthoRelation::corr318:
    case OrthoRelation::corr326:
      return verify_continuous_imag(rid, nmax, OP);
    case OrthoRelation::w2:
    case OrthoRelation::w3:
      return verify_w2_w3(rid, nmax, OP);
    case OrthoRelation::AKporth:
    case OrthoRelation::ASCorthi:
    case OrthoRelation::cbqHorthi:
    case OrthoRelation::DcdqiHO:
    case OrthoRelation::idqiASCO:
    case OrthoRelation::qBesselcbqiHO:
    case OrthoRelation::lqJO:
    case OrthoRelation::thm314:
    case OrthoRelation::thm316:
    case OrthoRelation::thm368:
    case OrthoRelation::thm248:
      return verify_discrete(rid, nmax, OP);
    case OrthoRelation::eq189:
    case OrthoRelation::thm420:
    case OrthoRelation::cbqiH_bilateral:
    case OrthoRelation::ismail_masson:
      return verify_bilateral(rid, nmax, OP);
    case OrthoRelation::bqJO:
      return verify_qintegral_bqJ(nmax, OP);
    case OrthoRelation::cobqJ:
    case OrthoRelation::colqJ:
    case OrthoRelation::COqiBf:
      return verify_index_transform(rid, nmax, OP);
  }
  throw ConfigError("unknown orthogonality relation id");
}

// ---------------------------------------------------------------------------
// Total-mass identities.
// ---------------------------------------------------------------------------

enum class TotalMassId { askey_qbeta, ismail_masson_qbeta, blabcd };

/// Normalized residual between the evaluated total mass and its product form.
template <typename R>
R verify_total_mass(TotalMassId id, const OrthoParams<R>& OP) {
  using C = Complex<R>;
  const ParamSet<R>& P = OP.fam;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  const C a = P.req('a'), b = P.req('b'), c = P.req('c'), d = P.req('d');
  switch (id) {
    case TotalMassId::askey_qbeta: {
      const C lhs = detail::quad_imag<R>([&](C z) -> C {
        std::vector<C> num;
        for (C p : {a, b, c, d})
          for (const C& v : fam::zpm(-p, z)) num.push_back(v);
        return qpoch_inf_many(num, Q) /
               (z * qpoch_inf_many(fam::zpm(q, z * z), Q));
      });
      const C rhs =
          qpoch_inf_many<R>({q, a * b / q, a * c / q, a * d / q, b * c / q,
                             b * d / q, c * d / q},
                            Q) /
          qpoch_inf(a * b * c * d / (q * q * q), Q) *
          std::log(R(1) / std::abs(q));
      return std::abs(lhs - rhs) / std::abs(rhs);
    }
    case TotalMassId::ismail_masson_qbeta: {
      const C f = OP.alpha, g = OP.beta;
      detail::require_domain<R>(
          std::arg(f) > R(0) && std::arg(g) < R(0),
          "Ismail-Masson q-beta needs arg f in (0,pi), arg g in (-pi,0)");
      const C i(R(0), R(1));
      const C lhs = quad::integrate<R>(
          [&](R v) -> C {
            const C z(std::exp(v));
            std::vector<C> num;
            for (C p : {a, b, c, d}) {
              num.push_back(i * p * z);
              num.push_back(-i * p / z);
            }
            const C den = qpoch_inf_many<R>(
                {f * z, g * z, -q * z / f, -q * z / g, -f / z, -g / z,
                 q / (f * z), q / (g * z)},
                Q);
            return qpoch_inf_many(num, Q) / den *
                   (C(R(1)) + C(R(1)) / (z * z)) * z;
          },
          R(-12), R(12), R(1e-11), 8, 512);
      const R pi = std::acos(R(-1));
      const C rhs =
          C(R(2)) * pi * i / f *
          qpoch_inf_many<R>({a * b / q, a * c / q, a * d / q, b * c / q,
                             b * d / q, c * d / q},
                            Q) /
          qpoch_inf_many<R>({q, g / f, q * f / g, -f * g, -q / (f * g),
                             a * b * c * d / (q * q * q)},
                            Q);
      return std::abs(lhs - rhs) / std::abs(rhs);
    }
    case TotalMassId::blabcd: {
      const C al = OP.alpha;
      detail::require_domain<R>(std::abs(al) > R(0),
                                "blabcd needs alpha != 0");
      const C lhs = quad::sum_bilateral<R>([&](long long k) -> C {
        const C z = ipow(q, -k) / al;
        std::vector<C> num;
        for (C p : {a, b, c, d}) {
          num.push_back(-q * p * z);
          num.push_back(q * p / z);
        }
        return ipow(q, 4 * c2(k)) * ipow(q * al * al * al * al, k) *
               (C(R(1)) + ipow(q, 2 * k) * al * al) * qpoch_inf_many(num, Q);
      });
      const C rhs =
          qpoch_inf_many<R>({q, -al * al, -q / (al * al), -q * a * b,
                             -q * a * c, -q * a * d, -q * b * c, -q * b * d,
                             -q * c * d},
                            Q) /
          qpoch_inf(q * a * b * c * d, Q);
      return std::abs(lhs - rhs) / std::abs(rhs);
    }
  }
  throw ConfigError("unknown total-mass id");
}

// ---------------------------------------------------------------------------
// Discrete closure (dual orthogonality of a discrete relation).
// ---------------------------------------------------------------------------

/// For a discrete relation sum_m w_m psi(m,n) psi(m,n') = h_n delta, the
/// closure is sum_n psi(m,n) psi(m',n) / h_n = delta_{mm'} / w_m.  Supported
/// for the relations whose closures are themselves catalogued (cbqHorthi,
/// thm368, thm248).
template <typename R>
GramReport<R> verify_discrete_closure(OrthoRelation rid, long long mmax,
                                      const OrthoParams<R>& OP) {
  using C = Complex<R>;
  const ParamSet<R>& P = OP.fam;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  const C one(R(1));
  switch (rid) {
    case OrthoRelation::cbqHorthi: {
      const C a = P.req('a');
      // 1/h_n = q^{C(n,2)} (-q)^n / ((q/a^2)_inf (q)_n); the dual sum is
      // the qBesselcbqiHO relation divided by (q/a^2)_inf.
      const C scale = qpoch_inf(q / (a * a), Q);
      auto gram = [&](long long m, long long mp) -> C {
        return quad::sum_terms<R>(
                   [&](long long n) {
                     const C f1 = phi<R>({ipow(q, -n), ipow(q, -m),
                                          ipow(q, m) / (a * a)},
                                         {}, Q, ipow(q, n) * a * a, n);
                     const C f2 = phi<R>({ipow(q, -n), ipow(q, -mp),
                                          ipow(q, mp) / (a * a)},
                                         {}, Q, ipow(q, n) * a * a, n);
                     return ipow(q, c2(n)) * ipow(-q, n) /
                            ipow(a, 2 * n) * f1 * f2 / qpoch(q, Q, n);
                   },
                   300) /
               scale;
      };
      auto hfun = [&](long long m) -> C {
        // 1 / w_m of the primal relation.
        return ipow(q, -3 * c2(m)) * ipow(-a * a / q, m) *
               qpoch(one / (a * a), Q, 2 * m) * qpoch(q, Q, m) /
               (qpoch(q / (a * a), Q, 2 * m) * qpoch(one / (a * a), Q, m));
      };
      return detail::make_report<R>(mmax, gram, hfun,
                                    "closure of the lattice relation");
    }
    case OrthoRelation::thm368: {
      const C a = P.req('a');
      const C scale = qpoch_inf(-q * a, Q);
      auto gram = [&](long long n, long long np) -> C {
        return quad::sum_terms<R>(
                   [&](long long m) {
                     const C w = ipow(q, -c2(m)) / ipow(q * a, m) *
                                 qpoch(-q * a, Q, 2 * m) *
                                 qpoch(-a, Q, m) /
                                 (qpoch(-a, Q, 2 * m) * qpoch(q, Q, m));
                     return w * detail::qbes_lattice(n, m, a, Q) *
                            detail::qbes_lattice(np, m, a, Q);
                   },
                   200) /
               scale;
      };
      auto hfun = [&](long long n) -> C {
        return ipow(q, -c2(n)) / ipow(q * a, n) * qpoch(q, Q, n);
      };
      return detail::make_report<R>(mmax, gram, hfun,
                                    "closure of the argument-lattice sum");
    }
    case OrthoRelation::thm248: {
      const C a = P.req('a');
      const C scale = qpoch_inf(-q * a, Q);
      auto gram = [&](long long m, long long mp) -> C {
        return quad::sum_terms<R>(
                   [&](long long n) {
                     return ipow(q, c2(n)) * ipow(q * a, n) /
                            qpoch(q, Q, n) * fam::qbes1(ipow(q, n), m, a, Q) *
                            fam::qbes1(ipow(q, n), mp, a, Q);
                   },
                   300) /
               scale;
      };
      auto hfun = [&](long long m) -> C {
        return ipow(q, c2(m)) * ipow(q * a, m) * qpoch(-a, Q, 2 * m) *
               qpoch(q, Q, m) /
               (qpoch(-q * a, Q, 2 * m) * qpoch(-a, Q, m));
      };
      return detail::make_report<R>(mmax, gram, hfun,
                                    "closure of the degree-lattice sum");
    }
    default:
      throw ConfigError("no catalogued closure for this relation");
  }
}

// ---------------------------------------------------------------------------
// Three-term recurrence extraction and norm verification.
// ---------------------------------------------------------------------------

/// Recurrence coefficients of p_{n+1}(x) = (A_n x + B_n) p_n(x)
/// - C_n p_{n-1}(x), extracted from a three-point linear solve.
template <typename R>
struct TTRRCoefficients {
  std::vector<Complex<R>> A, B, C;
};

template <typename R>
TTRRCoefficients<R> extract_ttrr(
    FamilyId fid, long long nmax, const ParamSet<R>& P,
    std::vector<R> thetas = {R(0.5), R(1.2), R(2.1)}) {
  using C = Complex<R>;
  const BaseQ<R>& Q = P.base;
  if (thetas.size() != 3)
    throw ConfigError("TTRR extraction needs exactly three sample points");
  auto poly = [&](C z, long long n) -> C {
    switch (fid) {
      case FamilyId::CqH:
        return fam::cqh(z, n, Q);
      case FamilyId::ASC:
        return fam::asc1(z, n, P.req('a'), P.req('b'), Q);
      case FamilyId::CDqH:
        return fam::cdqh1(z, n, P.req('a'), P.req('b'), P.req('c'), Q);
      default:
        throw ConfigError("TTRR extraction supports CqH, ASC, CDqH");
    }
  };
  std::array<C, 3> z, x;
  for (int j = 0; j < 3; ++j) {
    z[j] = C(std::cos(thetas[static_cast<size_t>(j)]),
             std::sin(thetas[static_cast<size_t>(j)]));
    x[j] = (z[j] + C(R(1)) / z[j]) / C(R(2));
  }
  TTRRCoefficients<R> out;
  for (long long n = 0; n <= nmax; ++n) {
    std::array<C, 3> pn, pn1, pm1;
    for (int j = 0; j < 3; ++j) {
      pn[j] = poly(z[j], n);
      pn1[j] = poly(z[j], n + 1);
      pm1[j] = (n == 0) ? C(R(0)) : poly(z[j], n - 1);
    }
    // Rows: [x_j p_n, p_n, -p_{n-1}] [A B C]^T = p_{n+1}; for n = 0 the
    // third column vanishes, so pad it with an identity row.
    std::array<std::array<C, 3>, 3> M;
    std::array<C, 3> rhs;
    for (int j = 0; j < 3; ++j) {
      M[j] = {x[j] * pn[j], pn[j], -pm1[j]};
      rhs[j] = pn1[j];
    }
    if (n == 0) {
      M[2] = {C(R(0)), C(R(0)), C(R(1))};
      rhs[2] = C(R(0));
    }
    auto det3 = [](const std::array<std::array<C, 3>, 3>& m) -> C {
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const C det = det3(M);
    R scale(0);
    for (const auto& row : M)
      for (const C& v : row) scale = std::max(scale, std::abs(v));
    if (std::abs(det) <= R(1e-10) * std::max(R(1), scale * scale * scale))
      throw SingularSystemError(
          "TTRR sample points produced a degenerate linear system");
    std::array<C, 3> sol;
    for (int col = 0; col < 3; ++col) {
      auto Mc = M;
      for (int j = 0; j < 3; ++j) Mc[j][static_cast<size_t>(col)] = rhs[j];
      sol[col] = det3(Mc) / det;
    }
    out.A.push_back(sol[0]);
    out.B.push_back(sol[1]);
    out.C.push_back(sol[2]);
  }
  return out;
}

/// Verify the quadrature norms against the recurrence product formula
/// h_n = W (A_0 / A_n) prod_{k<=n} C_k, with W the measured total mass.
/// Returns the per-degree normalized residuals.
template <typename R>
std::vector<R> extract_ttrr_and_verify_norm(FamilyId fid, long long nmax,
                                            const OrthoParams<R>& OP) {
  using C = Complex<R>;
  OrthoRelation rid;
  switch (fid) {
    case FamilyId::CqH: rid = OrthoRelation::cqHO; break;
    case FamilyId::ASC: rid = OrthoRelation::ASCO; break;
    case FamilyId::CDqH: rid = OrthoRelation::cdqHO; break;
    default:
      throw ConfigError("TTRR norm verification supports CqH, ASC, CDqH");
  }
  const GramReport<R> rep = verify_continuous_theta(rid, nmax, OP);
  const TTRRCoefficients<R> ttrr = extract_ttrr(fid, nmax, OP.fam);
  std::vector<R> out;
  C prodC(R(1));
  for (long long n = 0; n <= nmax; ++n) {
    if (n > 0) prodC *= ttrr.C[static_cast<size_t>(n)];
    const C predicted =
        rep.gram[0][0] * (ttrr.A[0] / ttrr.A[static_cast<size_t>(n)]) *
        prodC;
    const C measured = rep.gram[static_cast<size_t>(n)][static_cast<size_t>(n)];
    out.push_back(std::abs(predicted - measured) / std::abs(measured));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalogued parameter points (all inside the verified constraints).
// ---------------------------------------------------------------------------

/// Verified parameter points for each relation; `point` 0 is the primary
/// point and 1 a second point inside the same constraints.
template <typename R>
OrthoParams<R> ortho_default_params(OrthoRelation rid, int point = 0) {
  using C = Complex<R>;
  OrthoParams<R> OP;
  OP.fam.base = BaseQ<R>(point == 0 ? R(0.5) : R(0.45));
  auto setp = [&](R a, R b = R(0), R c = R(0), R d = R(0), int count = 4) {
    if (count >= 1) OP.fam.a = C(a);
    if (count >= 2) OP.fam.b = C(b);
    if (count >= 3) OP.fam.c = C(c);
    if (count >= 4) OP.fam.d = C(d);
  };
  const bool alt = (point != 0);
  switch (rid) {
    case OrthoRelation::AWO:
      alt ? setp(R(0.6), R(0.45), R(0.25), R(-0.3))
          : setp(R(0.7), R(0.4), R(0.3), R(-0.2));
      break;
    case OrthoRelation::cdqHO:
      alt ? setp(R(0.6), R(0.45), R(0.25), R(0), 3)
          : setp(R(0.7), R(0.4), R(0.3), R(0), 3);
      break;
    case OrthoRelation::ASCO:
      alt ? setp(R(0.6), R(0.45), R(0), R(0), 2)
          : setp(R(0.7), R(0.4), R(0), R(0), 2);
      break;
    case OrthoRelation::cbqHO:
      alt ? setp(R(0.6), R(0), R(0), R(0), 1)
          : setp(R(0.7), R(0), R(0), R(0), 1);
      break;
    case OrthoRelation::cqHO:
    case OrthoRelation::corr326:
    case OrthoRelation::w2:
      break;
    case OrthoRelation::theo33:
      alt ? setp(R(0.8), R(0.65), R(0.55), R(0), 3)
          : setp(R(0.9), R(0.7), R(0.5), R(0), 3);
      break;
    case OrthoRelation::corr311:
      alt ? setp(R(0.8), R(0.65), R(0), R(0), 2)
          : setp(R(0.9), R(0.7), R(0), R(0), 2);
      break;
    case OrthoRelation::corr318:
      alt ? setp(R(0.8), R(0), R(0), R(0), 1)
          : setp(R(0.9), R(0), R(0), R(0), 1);
      break;
    case OrthoRelation::w3:
      OP.alpha = alt ? C(R(0.35), R(0.45)) : C(R(0.3), R(0.4));
      break;
    case OrthoRelation::AKporth:
      // The alternate point keeps bc away from integer powers of q.
      alt ? setp(R(1.2), R(0.7), R(0.55), R(0), 3)
          : setp(R(1.15), R(0.8), R(0.65), R(0), 3);
      break;
    case OrthoRelation::ASCorthi:
      alt ? setp(R(1.2), R(0.75), R(0), R(0), 2)
          : setp(R(1.15), R(0.8), R(0), R(0), 2);
      break;
    case OrthoRelation::cbqHorthi:
      alt ? setp(R(1.2), R(0), R(0), R(0), 1)
          : setp(R(1.15), R(0), R(0), R(0), 1);
      break;
    case OrthoRelation::DcdqiHO:
      alt ? setp(R(1.55), R(0.85), R(0.7), R(0), 3)
          : setp(R(1.6), R(0.9), R(0.75), R(0), 3);
      break;
    case OrthoRelation::idqiASCO:
      alt ? setp(R(1.35), R(0.55), R(0), R(0), 2)
          : setp(R(1.3), R(0.5), R(0), R(0), 2);
      break;
    case OrthoRelation::qBesselcbqiHO:
      alt ? setp(R(1.35), R(0), R(0), R(0), 1)
          : setp(R(1.3), R(0), R(0), R(0), 1);
      break;
    case OrthoRelation::lqJO:
      alt ? setp(R(0.55), R(0.5), R(0), R(0), 2)
          : setp(R(0.6), R(0.45), R(0), R(0), 2);
      break;
    case OrthoRelation::thm314:
      alt ? setp(R(2.0), R(0.75), R(0), R(0), 2)
          : setp(R(2.2), R(0.7), R(0), R(0), 2);
      break;
    case OrthoRelation::thm316:
      alt ? setp(R(2.0), R(0.75), R(-1.4), R(0), 3)
          : setp(R(2.2), R(0.7), R(-1.5), R(0), 3);
      break;
    case OrthoRelation::thm368:
    case OrthoRelation::thm248:
      alt ? setp(R(0.75), R(0), R(0), R(0), 1)
          : setp(R(0.8), R(0), R(0), R(0), 1);
      break;
    case OrthoRelation::eq189:
      alt ? setp(R(1.2), R(0.7), R(0.55), R(0), 3)
          : setp(R(1.15), R(0.8), R(0.65), R(0), 3);
      OP.alpha = C(R(0.9));
      break;
    case OrthoRelation::thm420:
      alt ? setp(R(1.2), R(0.75), R(0), R(0), 2)
          : setp(R(1.15), R(0.8), R(0), R(0), 2);
      OP.alpha = C(R(0.9));
      break;
    case OrthoRelation::cbqiH_bilateral:
      alt ? setp(R(1.2), R(0), R(0), R(0), 1)
          : setp(R(1.15), R(0), R(0), R(0), 1);
      OP.alpha = C(R(0.9));
      break;
    case OrthoRelation::ismail_masson:
      OP.alpha = alt ? C(R(0.85)) : C(R(0.9));
      break;
    case OrthoRelation::bqJO:
      alt ? setp(R(0.75), R(0.55), R(-0.65), R(0), 3)
          : setp(R(0.8), R(0.5), R(-0.7), R(0), 3);
      break;
    case OrthoRelation::cobqJ:
      alt ? setp(R(0.75), R(0.65), R(0.5), R(0), 3)
          : setp(R(0.8), R(0.6), R(0.55), R(0), 3);
      break;
    case OrthoRelation::colqJ:
      alt ? setp(R(0.85), R(0.5), R(0), R(0), 2)
          : setp(R(0.9), R(0.45), R(0), R(0), 2);
      break;
    case OrthoRelation::COqiBf:
      alt ? setp(R(-2.2), R(0), R(0), R(0), 1)
          : setp(R(-2.5), R(0), R(0), R(0), 1);
      break;
  }
  return OP;
}

}  // namespace qaskey

#endif  // QASKEY_ORTHO_HPP
