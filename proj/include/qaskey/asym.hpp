/**
 * @file asym.hpp
 * @brief Large-degree and large-lattice asymptotics: evaluation and
 *        verification of every asymptotic lemma (Darboux-method results),
 *        including the four-case Al-Salam--Chihara lemma with the critical
 *        a = b correction term, and numerical Darboux extraction from the
 *        generating functions.
 */

#ifndef QASKEY_ASYM_HPP
#define QASKEY_ASYM_HPP

#include <cmath>
#include <string>

#include "qaskey/genfun.hpp"

namespace qaskey {

/// Identifiers for the asymptotic lemmas.
enum class AsymLemma {
  lem346,   ///< CDqiH on the lattice, m -> inf
  lem46,    ///< CDqiH, n -> inf (2phi2 limit function)
  lem47a,   ///< CDqiH lattice variant, n -> inf
  lem47b,   ///< CDqiH lattice variant with inverted parameters
  lem410,   ///< qiASC on the lattice, m -> inf
  lem413,   ///< qiASC, n -> inf (four cases)
  lem414,   ///< qiASC at a lattice point, n -> inf
  lem416,   ///< CBqiH on the lattice, m -> inf
  lem418,   ///< CBqiH, n -> inf
  lem420,   ///< CBqiH at a lattice point, n -> inf
  lem4_10   ///< CDqiH on the bilateral lattice, k -> +-inf
};

/// Case selector for the four-case qiASC lemma.
enum class Lem413Case {
  less,           ///< |a| < |b|
  greater,        ///< |a| > |b|
  equal_modulus,  ///< |a| = |b|, a != b (two-term prediction)
  critical        ///< a = b (correction term lambda(z; a; q))
};

inline const std::vector<AsymLemma>& all_asym_lemmas() {
  static const std::vector<AsymLemma> v = {
      AsymLemma::lem346, AsymLemma::lem46,  AsymLemma::lem47a,
      AsymLemma::lem47b, AsymLemma::lem410, AsymLemma::lem413,
      AsymLemma::lem414, AsymLemma::lem416, AsymLemma::lem418,
      AsymLemma::lem420, AsymLemma::lem4_10};
  return v;
}

inline std::string asym_lemma_name(AsymLemma id) {
  switch (id) {
    case AsymLemma::lem346: return "lem346";
    case AsymLemma::lem46: return "lem46";
    case AsymLemma::lem47a: return "lem47a";
    case AsymLemma::lem47b: return "lem47b";
    case AsymLemma::lem410: return "lem410";
    case AsymLemma::lem413: return "lem413";
    case AsymLemma::lem414: return "lem414";
    case AsymLemma::lem416: return "lem416";
    case AsymLemma::lem418: return "lem418";
    case AsymLemma::lem420: return "lem420";
    case AsymLemma::lem4_10: return "lem4.10";
  }
  throw ConfigError("unknown asymptotic lemma id");
}

inline AsymLemma asym_lemma_from_string(const std::string& s) {
  for (AsymLemma id : all_asym_lemmas())
    if (asym_lemma_name(id) == s) return id;
  throw ConfigError("unknown asymptotic lemma: " + s);
}

inline std::string lem413_case_name(Lem413Case c) {
  switch (c) {
    case Lem413Case::less: return "less";
    case Lem413Case::greater: return "greater";
    case Lem413Case::equal_modulus: return "equal-modulus";
    case Lem413Case::critical: return "critical";
  }
  throw ConfigError("unknown lem413 case");
}

/// Parameters for an asymptotic verification: the family parameters, the
/// evaluation point z for the n -> inf lemmas, the fixed secondary index
/// (the degree for lattice lemmas, the lattice point for the n -> inf
/// lattice variants), the bilateral offset alpha, and the lem413 case.
template <typename R>
struct AsymParams {
  ParamSet<R> fam;
  Complex<R> z{R(1.45)};
  long long fixed{3};
  Complex<R> alpha{R(0.9)};
  std::optional<Lem413Case> case413;
};

/// Verification report.  Exact and predicted values are stored relative to
/// the lemma's dominant growth factor (q^{-binom}-type), so they remain
/// representable in binary64; the ratios are unaffected by the common scale.
template <typename R>
struct AsymReport {
  std::vector<long long> grid;
  std::vector<Complex<R>> exact;
  std::vector<Complex<R>> predicted;
  std::vector<R> ratios;  ///< |exact / predicted|
  R fitted_error_order;   ///< log-log slope of |ratio - 1|; NaN if unfittable
};

namespace detail {

/// Exponent budget for materializing the dominant growth factor: throws
/// once the scale would overflow binary64 with headroom.
template <typename R>
void asym_budget(R log10_scale) {
  if (log10_scale > R(280))
    throw PrecisionError(
        "requested index exceeds the binary64 exactness budget");
}

/// lambda(z; a; q) correction for the critical a = b case.
template <typename R>
Complex<R> lem413_lambda(Complex<R> z, Complex<R> a, const BaseQ<R>& Q) {
  using C = Complex<R>;
  const C q = Q.q;
  return z * eprime_q(-z / a, Q) / (a * qpoch_inf(z / a, Q)) +
         eprime_q(-C(R(1)) / (a * z), Q) /
             (z * a * qpoch_inf(C(R(1)) / (a * z), Q)) -
         R(2) * q * eprime_q(-q, Q) / qpoch_inf(q, Q);
}

/// Scaled (exact, predicted) pair at running index k.  Both entries are the
/// true values divided by the lemma's dominant growth factor.
template <typename R>
std::pair<Complex<R>, Complex<R>> asym_pair(AsymLemma id, long long k,
                                            const AsymParams<R>& AP) {
  using C = Complex<R>;
  const ParamSet<R>& P = AP.fam;
  const BaseQ<R>& Q = P.base;
  const C q = Q.q;
  const C z = AP.z;
  const C one(R(1));
  const R l10q = -std::log10(std::abs(q));  // log10(1/|q|) > 0
  switch (id) {
    case AsymLemma::lem346: {
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      const long long n = AP.fixed;
      asym_budget<R>(R(n * k) * l10q);
      const C s = ipow(q, -n * k);
      return {fam::cdqih1(ipow(q, -k) * a, n, a, b, c, Q) / s, ipow(a, n)};
    }
    case AsymLemma::lem410: {
      const C a = P.req('a'), b = P.req('b');
      const long long n = AP.fixed;
      asym_budget<R>(R(n * k) * l10q);
      const C s = ipow(q, -n * k);
      return {fam::qiasc1(ipow(q, -k) * a, n, a, b, Q) / s, ipow(a, n)};
    }
    case AsymLemma::lem416: {
      const C a = P.req('a');
      const long long n = AP.fixed;
      asym_budget<R>(R(n * k) * l10q);
      const C s = ipow(q, -n * k);
      return {fam::cbqih1(ipow(q, -k) * a, n, a, Q) / s, ipow(a, n)};
    }
    case AsymLemma::lem46:
    case AsymLemma::lem47a: {
      // Scale q^{-2 binom(k,2)} (abc)^k is folded away analytically; the
      // scaled exact value is the terminating series with its bounded
      // prefactors, never the raw polynomial.
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      const C zz = (id == AsymLemma::lem46) ? z : ipow(q, -AP.fixed) * a;
      const C ex =
          qpoch_many<R>({one / (a * b), one / (a * c)}, Q, k) *
          phi<R>({ipow(q, -k), zz / a, one / (a * zz)},
                 {one / (a * b), one / (a * c)}, Q, ipow(q, k) / (b * c), k);
      C pr;
      if (id == AsymLemma::lem46) {
        pr = qpoch_inf_many<R>({one / (a * b), one / (a * c)}, Q) *
             phi<R>(fam::zpm(one / a, z), {one / (a * b), one / (a * c)}, Q,
                    one / (b * c));
      } else {
        const long long m = AP.fixed;
        pr = qpoch_inf_many<R>({one / (a * b), one / (a * c)}, Q) *
             phi<R>({ipow(q, -m), ipow(q, m) / (a * a)},
                    {one / (a * b), one / (a * c)}, Q, one / (b * c), m);
      }
      return {ex, pr};
    }
    case AsymLemma::lem47b: {
      // Inverted parameters (a, 1/(qb), 1/(qc)); dominant factor
      // q^{-2 binom(k,2)} (a/(q^2 bc))^k folded away analytically.
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      const long long m = AP.fixed;
      const C zz = ipow(q, -m) * a;
      const C ex =
          qpoch_many<R>({q * b / a, q * c / a}, Q, k) *
          phi<R>({ipow(q, -k), zz / a, one / (a * zz)},
                 {q * b / a, q * c / a}, Q, ipow(q, k + 2) * b * c, k);
      const C pr = qpoch_inf_many<R>({q * b / a, q * c / a}, Q) *
                   phi<R>({ipow(q, -m), ipow(q, m) / (a * a)},
                          {q * b / a, q * c / a}, Q, q * q * b * c, m);
      return {ex, pr};
    }
    case AsymLemma::lem413: {
      const C a = P.req('a'), b = P.req('b');
      if (!AP.case413)
        throw ConfigError("lem413 requires an explicit case selector");
      const Lem413Case cs = *AP.case413;
      // Case/parameter consistency.
      const R ma = std::abs(a), mb = std::abs(b);
      switch (cs) {
        case Lem413Case::less:
          if (!(ma < mb)) throw DomainError("lem413 'less' needs |a| < |b|");
          break;
        case Lem413Case::greater:
          if (!(ma > mb))
            throw DomainError("lem413 'greater' needs |a| > |b|");
          break;
        case Lem413Case::equal_modulus:
          if (std::abs(ma - mb) > R(1e-12) * ma || a == b)
            throw DomainError(
                "lem413 'equal-modulus' needs |a| = |b| with a != b");
          break;
        case Lem413Case::critical:
          if (a != b) throw DomainError("lem413 'critical' needs a = b");
          break;
      }
      asym_budget<R>(R(c2(k)) * l10q);
      const C s = ipow(q, -c2(k));
      const C ex = fam::qiasc1(z, k, a, b, Q) / s;
      auto single = [&](C dom, C sub) {
        return ipow(-dom, k) * qpoch_inf_many(fam::zpm(one / dom, z), Q) /
               qpoch_inf(sub / dom, Q);
      };
      C pr;
      switch (cs) {
        case Lem413Case::less: pr = single(b, a); break;
        case Lem413Case::greater: pr = single(a, b); break;
        case Lem413Case::equal_modulus:
          pr = single(a, b) + single(b, a);
          break;
        case Lem413Case::critical:
          pr = (C(R(k + 1)) + lem413_lambda(z, a, Q)) * ipow(-a, k) *
               qpoch_inf_many(fam::zpm(one / a, z), Q) / qpoch_inf(q, Q);
          break;
      }
      return {ex, pr};
    }
    case AsymLemma::lem414: {
      const C a = P.req('a'), b = P.req('b');
      const long long m = AP.fixed;
      asym_budget<R>(R(c2(k)) * l10q);
      const C s = ipow(q, -c2(k));
      const C ex = fam::qiasc1(ipow(q, -m) * a, k, a, b, Q) / s;
      const C pr = ipow(q, -c2(m)) * ipow(-a / (q * b), m) *
                   qpoch_inf(one / (a * b), Q) * qpoch(q * b / a, Q, m) /
                   qpoch(one / (a * b), Q, m) * ipow(-b, k);
      return {ex, pr};
    }
    case AsymLemma::lem418: {
      // Proof-consistent dominant exponent q^{-binom(n,2)} (the printed
      // display overstates it as q^{-2 binom(n,2)}).
      const C a = P.req('a');
      asym_budget<R>(R(c2(k)) * l10q);
      const C s = ipow(q, -c2(k));
      const C ex = fam::cbqih1(z, k, a, Q) / s;
      const C pr =
          ipow(-a, k) * qpoch_inf_many(fam::zpm(one / a, z), Q);
      return {ex, pr};
    }
    case AsymLemma::lem420: {
      const C a = P.req('a');
      const long long m = AP.fixed;
      // The lattice value decays like a^{-n}; scale by it.
      const C ex = fam::cbqih1(ipow(q, -m) * a, k, a, Q) * ipow(a, k);
      const C pr = ipow(q, -2 * c2(m)) * ipow(a * a / q, m);
      return {ex, pr};
    }
    case AsymLemma::lem4_10: {
      // Signed lattice index: k > 0 probes z = q^{-k}/alpha -> inf,
      // k < 0 probes z -> 0; the dominant factor is q^{-n |k|}.
      const C a = P.req('a'), b = P.req('b'), c = P.req('c');
      const long long n = AP.fixed;
      const long long ak = std::llabs(k);
      asym_budget<R>(R(n * ak) * l10q);
      const C s = ipow(q, -n * ak);
      const C ex =
          fam::cdqih1(ipow(q, -k) / AP.alpha, n, a, b, c, Q) / s;
      const C pr = (k >= 0) ? ipow(AP.alpha, -n) : ipow(AP.alpha, n);
      return {ex, pr};
    }
  }
  throw ConfigError("unknown asymptotic lemma id");
}

}  // namespace detail

/// Predicted asymptotic value at the given index (unscaled).  Throws
/// PrecisionError when the dominant factor exceeds the binary64 budget.
template <typename R>
Complex<R> eval_asym(AsymLemma id, long long k, const AsymParams<R>& AP) {
  using C = Complex<R>;
  const C q = AP.fam.base.q;
  const auto [ex, pr] = detail::asym_pair(id, k, AP);
  (void)ex;
  C scale(R(1));
  switch (id) {
    case AsymLemma::lem346:
    case AsymLemma::lem410:
    case AsymLemma::lem416:
      scale = ipow(q, -AP.fixed * k);
      break;
    case AsymLemma::lem46:
    case AsymLemma::lem47a: {
      const C abc = AP.fam.req('a') * AP.fam.req('b') * AP.fam.req('c');
      detail::asym_budget<R>(R(2 * c2(k)) * -std::log10(std::abs(q)) +
                             R(k) * std::log10(std::abs(abc)));
      scale = ipow(q, -2 * c2(k)) * ipow(abc, k);
      break;
    }
    case AsymLemma::lem47b: {
      const C f = AP.fam.req('a') /
                  (q * q * AP.fam.req('b') * AP.fam.req('c'));
      scale = ipow(q, -2 * c2(k)) * ipow(f, k);
      break;
    }
    case AsymLemma::lem413:
    case AsymLemma::lem414:
    case AsymLemma::lem418:
      scale = ipow(q, -c2(k));
      break;
    case AsymLemma::lem420:
      scale = ipow(AP.fam.req('a'), -k);
      break;
    case AsymLemma::lem4_10:
      scale = ipow(q, -AP.fixed * std::llabs(k));
      break;
  }
  return pr * scale;
}

/// Exact family value at the given index, scaled like eval_asym.
template <typename R>
Complex<R> exact_asym(AsymLemma id, long long k, const AsymParams<R>& AP) {
  return detail::asym_pair(id, k, AP).first;
}

/// Verify a lemma over an index grid: ratios |exact/predicted| and the
/// log-log error-order fit over the last half of the grid.
template <typename R>
AsymReport<R> verify_asym(AsymLemma id, const std::vector<long long>& grid,
                          const AsymParams<R>& AP) {
  AsymReport<R> rep;
  rep.grid = grid;
  for (long long k : grid) {
    const auto [ex, pr] = detail::asym_pair(id, k, AP);
    rep.exact.push_back(ex);
    rep.predicted.push_back(pr);
    rep.ratios.push_back(std::abs(ex / pr));
  }
  // Slope fit on the last ceil(half) of the grid, avoiding pre-asymptotic
  // bias; indices enter through |k| so bilateral grids fit too.
  rep.fitted_error_order = std::numeric_limits<R>::quiet_NaN();
  const size_t n = grid.size();
  const size_t lo = n - (n + 1) / 2;
  std::vector<R> xs, ys;
  for (size_t i = lo; i < n; ++i) {
    const R err = std::max(std::abs(rep.ratios[i] - R(1)), R(1e-16));
    xs.push_back(std::log(R(std::llabs(grid[i]))));
    ys.push_back(std::log(err));
  }
  if (xs.size() >= 2) {
    R sx(0), sy(0), sxx(0), sxy(0);
    for (size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const R m = R(xs.size());
    const R den = m * sxx - sx * sx;
    if (std::abs(den) > R(0))
      rep.fitted_error_order = (m * sxy - sx * sy) / den;
  }
  return rep;
}

/// Default verification grid for each lemma (inside the binary64 budget).
inline std::vector<long long> asym_default_grid(AsymLemma id) {
  switch (id) {
    case AsymLemma::lem346:
    case AsymLemma::lem410:
    case AsymLemma::lem416:
      return {6, 8, 10, 12, 14, 16};
    case AsymLemma::lem4_10:
      return {6, 8, 10, 12, 14, 16};  // negate for the k -> -inf regime
    default:
      return {8, 12, 16, 20, 24, 28, 32};
  }
}

/// Catalogued in-domain parameter point for each lemma (and lem413 case).
template <typename R>
AsymParams<R> asym_default_params(
    AsymLemma id, std::optional<Lem413Case> c413 = std::nullopt) {
  using C = Complex<R>;
  AsymParams<R> AP;
  AP.fam.base = BaseQ<R>(R(0.5));
  AP.fam.a = C(R(1.15));
  AP.fam.b = C(R(0.8));
  AP.fam.c = C(R(0.65));
  AP.z = C(R(1.45));
  AP.fixed = 3;
  switch (id) {
    case AsymLemma::lem47a:
    case AsymLemma::lem47b:
    case AsymLemma::lem420:
      AP.fixed = 2;
      break;
    case AsymLemma::lem414:
      AP.fam.a = C(R(1.3));
      AP.fam.b = C(R(0.5));
      AP.fixed = 2;
      break;
    case AsymLemma::lem413: {
      AP.case413 = c413.value_or(Lem413Case::less);
      switch (*AP.case413) {
        case Lem413Case::less:
          AP.fam.a = C(R(0.7));
          AP.fam.b = C(R(1.1));
          break;
        case Lem413Case::greater:
          AP.fam.a = C(R(1.1));
          AP.fam.b = C(R(0.7));
          break;
        case Lem413Case::equal_modulus:
          AP.fam.a = C(R(0.9));
          AP.fam.b = C(R(-0.9));
          break;
        case Lem413Case::critical:
          AP.fam.a = C(R(0.9));
          AP.fam.b = C(R(0.9));
          break;
      }
      break;
    }
    default:
      break;
  }
  return AP;
}

// ---------------------------------------------------------------------------
// Numerical Darboux extraction from the generating functions.
// ---------------------------------------------------------------------------

/// Extract lim_{t -> t0} (1 - t/t0)^order G(t) by a Richardson-accelerated
/// approach sequence.  Throws PoleOrderError when the limit fails to
/// stabilize (wrong pole order, or no pole at t0).
template <typename R>
Complex<R> darboux_extract(GFId gid, Complex<R> t0, int order,
                           const PointZ<R>& pt, const GFParams<R>& G) {
  using C = Complex<R>;
  if (order < 1 || order > 2)
    throw ConfigError("darboux_extract supports pole orders 1 and 2");
  auto probe = [&](R h) -> C {
    const C t = t0 * (C(R(1)) - C(h));
    C v = eval_gf(gid, t, pt, G);
    for (int j = 0; j < order; ++j) v *= C(h);
    return v;
  };
  C prev_acc(R(0));
  R prev_diff = std::numeric_limits<R>::infinity();
  for (int j = 6; j <= 18; ++j) {
    const R h = std::pow(R(2), R(-j));
    // Richardson: the probe has an O(h) error term.
    const C acc = R(2) * probe(h / R(2)) - probe(h);
    const R diff = std::abs(acc - prev_acc);
    if (j > 7 && diff <= R(1e-8) * (R(1) + std::abs(acc)) &&
        std::abs(acc) > R(1e-8))
      return acc;
    if (j > 10 && diff > prev_diff * R(4))
      break;  // diverging: pole order higher than requested
    prev_acc = acc;
    prev_diff = diff;
  }
  throw PoleOrderError(
      "(1 - t/t0)^order scaling limit failed to stabilize at the "
      "requested order");
}

/// Darboux coefficient asymptotics from a dominant pole: predicted
/// coefficients K t0^{-n} (simple pole) or K (n+1) t0^{-n} (double pole)
/// compared against direct polynomial coefficients over the grid.
template <typename R>
AsymReport<R> darboux_from_gf(GFId gid, Complex<R> t0, int order,
                              const std::vector<long long>& grid,
                              const PointZ<R>& pt, const GFParams<R>& G) {
  using C = Complex<R>;
  const C K = darboux_extract(gid, t0, order, pt, G);
  AsymReport<R> rep;
  rep.grid = grid;
  for (long long n : grid) {
    // Both sides carry the same t0^{-n} growth; store them scaled by it.
    const C ex = gf_coefficient_direct(gid, n, pt, G) * ipow(t0, n);
    const C pr = (order == 1) ? K : K * C(R(n + 1));
    rep.exact.push_back(ex);
    rep.predicted.push_back(pr);
    rep.ratios.push_back(std::abs(ex / pr));
  }
  rep.fitted_error_order = std::numeric_limits<R>::quiet_NaN();
  return rep;
}

}  // namespace qaskey

#endif  // QASKEY_ASYM_HPP
