/**
 * @file acceptance.cpp
 * @brief Acceptance gate: one pass/fail line per criterion.
 *
 * Usage: acceptance <source-dir>
 * The source directory is used to locate the grid registry; the CLI binary
 * is expected next to this executable (the shared build directory).
 *
 * Criteria:
 *  1. q-series kernel identities over 200 pseudo-random points each (1e-10).
 *  2. pairwise representation agreement, n <= 8 (1e-10), plus a constructed
 *     singular fallback case per family.
 *  3. duality relations for m, n <= 6 (1e-8); integer-degree degeneration of
 *     the function-level dualities (1e-10).
 *  4. all 30 orthogonality relations: Gram degrees <= 4 at two parameter
 *     points (1e-6); total-mass identities (1e-7); discrete closures (1e-6).
 *  5. generating-function coefficient extraction, n <= 6 (1e-7), and the
 *     corollary lattice of the master formula.
 *  6. asymptotic lemmas: |ratio - 1| <= 5e-2 at the largest index, fitted
 *     error order at least the stated rate; all four two-parameter cases.
 *  7. three-term-recurrence norm product formula, n <= 6 (1e-7).
 *  8. CLI end-to-end: smoke-grid verification exits 0 with a deterministic
 *     report; an out-of-domain configuration exits 2.
 */

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qaskey/asym.hpp"
#include "qaskey/duality.hpp"
#include "qaskey/genfun.hpp"
#include "qaskey/ortho.hpp"
#include "qaskey/series.hpp"

using namespace qaskey;
using C = Complex<double>;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass,
            const std::string& detail) {
  std::cout << "criterion " << criterion << " (" << what << "): "
            << (pass ? "PASS" : "FAIL") << " [" << detail << "]\n";
  if (!pass) ++g_failures;
}

double rel(C got, C want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double urand(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

double urand(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * urand(rng);
}

// ---------------------------------------------------------------------------
// Criterion 1: kernel identities, 200 pseudo-random points each.
// ---------------------------------------------------------------------------

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Identity {
    const char* name;
    std::function<double(std::mt19937_64&)> residual;
  };
  auto rand_base = [](std::mt19937_64& rng) {
    return BaseQ<double>(urand(rng, 0.35, 0.75));
  };
  auto rand_a = [](std::mt19937_64& rng) {
    return C(urand(rng, -1.6, 1.6), urand(rng, 0.15, 0.9));
  };
  const std::vector<Identity> identities = {
      {"qpoch negative-index closed form",
       [&](std::mt19937_64& rng) {
         const auto base = rand_base(rng);
         const C q = base.q, a = rand_a(rng);
         const long long n = 1 + (long long)(rng() % 6);
         return rel(qpoch(a, base, -n),
                    ipow(q, c2(n)) * ipow(-q / a, n) /
                        qpoch(q / a, base, n));
       }},
      {"qpoch index addition",
       [&](std::mt19937_64& rng) {
         const auto base = rand_base(rng);
         const C a = rand_a(rng);
         const long long n = (long long)(rng() % 9) - 4;
         const long long k = (long long)(rng() % 9) - 4;
         return rel(qpoch(a, base, n + k),
                    qpoch(a, base, n) *
                        qpoch(a * ipow(C(base.q), n), base, k));
       }},
      {"qpoch q^{-n} lattice identity",
       [&](std::mt19937_64& rng) {
         const auto base = rand_base(rng);
         const C q = base.q;
         const long long n = (long long)(rng() % 9);
         const long long k = (long long)(rng() % (n + 1));
         return rel(qpoch(ipow(q, -n), base, k),
                    qpoch(q, base, n) / qpoch(q, base, n - k) *
                        C(k % 2 ? -1.0 : 1.0) * ipow(q, c2(k) - n * k));
       }},
      {"qpoch infinite splitting",
       [&](std::mt19937_64& rng) {
         const auto base = rand_base(rng);
         const C a = rand_a(rng);
         const long long n = 1 + (long long)(rng() % 10);
         return rel(qpoch_inf(a, base),
                    qpoch(a, base, n) *
                        qpoch_inf(a * ipow(C(base.q), n), base));
       }},
      {"qpoch base-squared factorization",
       [&](std::mt19937_64& rng) {
         const auto base = rand_base(rng);
         const BaseQ<double> base2(base.q * base.q);
         const C a = rand_a(rng);
         return rel(qpoch_inf(a, base),
                    qpoch_inf(a, base2) * qpoch_inf(a * base.q, base2));
       }},
      {"theta inversion and quasi-periodicity",
       [&](std::mt19937_64& rng) {
         const auto base = rand_base(rng);
         const C q = base.q;
         C z(urand(rng, -1.5, 1.5), urand(rng, -1.5, 1.5));
         if (std::abs(z) < 0.25) z += C(0.6, 0.6);
         const C th = theta(z, base);
         double worst = rel(theta(q / z, base), th);
         worst = std::max(worst, rel(theta(C(1.0) / z, base), -th / z));
         const long long n = (long long)(rng() % 7) - 3;
         worst = std::max(
             worst, rel(theta(ipow(q, n) * z, base),
                        ipow(-C(1.0) / z, n) * ipow(q, -c2(n)) * th));
         return worst;
       }},
      {"theta bilateral sum equals product",
       [&](std::mt19937_64& rng) {
         const auto base = rand_base(rng);
         C z(urand(rng, -1.5, 1.5), urand(rng, -1.5, 1.5));
         if (std::abs(z) < 0.25) z += C(0.6, 0.6);
         return rel(theta_bilateral(z, base), theta(z, base));
       }},
      {"q-binomial Pascal and symmetry",
       [&](std::mt19937_64& rng) {
         const auto base = rand_base(rng);
         const C q = base.q;
         const long long n = 2 + (long long)(rng() % 9);
         const long long k = 1 + (long long)(rng() % (n - 1));
         double worst =
             rel(qbinom(n, k, base),
                 qbinom(n - 1, k, base) +
                     ipow(q, n - k) * qbinom(n - 1, k - 1, base));
         worst = std::max(worst, rel(qbinom(n, k, base),
                                     qbinom(n, n - k, base)));
         return worst;
       }},
      {"binomial-coefficient identities (integer and complex)",
       [&](std::mt19937_64& rng) {
         return binom_identities_check(
             (long long)(rng() % 31) - 15, (long long)(rng() % 31) - 15,
             C(urand(rng, -3, 3), urand(rng, -3, 3)));
       }},
      {"Jackson q-integral additivity and monomials",
       [&](std::mt19937_64& rng) {
         const auto base = rand_base(rng);
         const C q = base.q;
         const C b(urand(rng, 0.3, 1.0), urand(rng, -0.4, 0.4));
         const int m = (int)(rng() % 6);
         std::function<C(C)> f = [m](C x) { return ipow(x, m); };
         double worst =
             rel(jackson_qintegral(f, C(0.0), b, base),
                 jackson_qintegral(f, C(0.0), q * b, base) +
                     (C(1.0) - q) * b * f(b));
         std::function<C(C)> g = [m](C x) { return ipow(x, m); };
         worst = std::max(
             worst, rel(jackson_qintegral(g, C(0.0), C(1.0), base),
                        (C(1.0) - q) / (C(1.0) - ipow(q, m + 1))));
         return worst;
       }},
      {"q-binomial theorem and Euler products",
       [&](std::mt19937_64& rng) {
         SummationParams<double> p;
         p.base = rand_base(rng);
         p.a = rand_a(rng);
         p.z = C(urand(rng, -0.6, 0.6), urand(rng, -0.3, 0.3));
         double worst = 0;
         for (SummationId id :
              {SummationId::qbinomial_theorem, SummationId::euler_small_e,
               SummationId::euler_big_e}) {
           auto [l, r] = eval_summation(id, p);
           worst = std::max(worst, rel(l, r));
         }
         return worst;
       }},
      {"q-Gauss summation",
       [&](std::mt19937_64& rng) {
         SummationParams<double> p;
         p.base = rand_base(rng);
         p.a = C(urand(rng, 0.7, 1.2), urand(rng, 0.1, 0.3));
         p.b = C(urand(rng, 0.7, 1.2), urand(rng, -0.3, -0.1));
         p.c = *p.a * *p.b * C(urand(rng, 0.3, 0.7), 0.1);
         auto [l, r] = eval_summation(SummationId::q_gauss, p);
         return rel(l, r);
       }},
      {"terminating summations (q-binomial, Chu-Vandermonde, limit)",
       [&](std::mt19937_64& rng) {
         SummationParams<double> p;
         p.base = BaseQ<double>(urand(rng, 0.4, 0.6));
         p.n = 1 + (long long)(rng() % 4);
         p.a = C(urand(rng, 0.4, 1.2), urand(rng, 0.3, 0.6));
         p.b = C(urand(rng, 0.4, 1.2), urand(rng, 0.3, 0.6));
         p.z = C(urand(rng, 0.4, 1.2), -0.2 * urand(rng));
         double worst = 0;
         for (SummationId id :
              {SummationId::terminating_qbinomial,
               SummationId::q_chu_vandermonde,
               SummationId::q_chu_vandermonde_reversed,
               SummationId::limit_q_chu}) {
           auto [l, r] = eval_summation(id, p);
           worst = std::max(worst, rel(l, r));
         }
         return worst;
       }},
      {"terminating-series inversion (with round trip)",
       [&](std::mt19937_64& rng) {
         const BaseQ<double> base(urand(rng, 0.4, 0.65));
         const C q = base.q;
         const long long n = 1 + (long long)(rng() % 4);
         SeriesSpec<double> s;
         s.base = base;
         s.numer = {ipow(q, -n), C(urand(rng, 0.4, 1.2), 0.15),
                    C(urand(rng, 0.4, 1.2), -0.1)};
         s.denom = {C(urand(rng, 0.9, 1.6)), C(urand(rng, 0.9, 1.6))};
         s.arg = C(urand(rng, 0.3, 1.0), 0.1);
         s.termination = n;
         const C before = eval_phi(s).value;
         const auto t1 = apply_transform(TransformId::inversion, s);
         double worst = rel(t1.prefactor * eval_phi(t1.spec).value, before);
         const auto t2 = apply_transform(TransformId::inversion, t1.spec);
         worst = std::max(
             worst, rel(t1.prefactor * t2.prefactor *
                            eval_phi(t2.spec).value,
                        before));
         const auto tb = apply_transform(TransformId::base_inversion, s);
         worst = std::max(
             worst, rel(tb.prefactor * eval_phi(tb.spec).value, before));
         return worst;
       }},
      {"nonterminating series rewrites",
       [&](std::mt19937_64& rng) {
         const BaseQ<double> base(urand(rng, 0.4, 0.65));
         double worst = 0;
         auto check = [&](TransformId id, const SeriesSpec<double>& s) {
           const C before = eval_phi(s).value;
           const auto t = apply_transform(id, s);
           worst = std::max(
               worst, rel(t.prefactor * eval_phi(t.spec).value, before));
         };
         SeriesSpec<double> u;
         u.base = base;
         u.numer = {C(urand(rng, -0.5, 0.5), 0.1)};
         u.arg = C(urand(rng, -0.5, 0.5), -0.15);
         u.vdbr_offset = 1;
         check(TransformId::trans_1phi0_to_0phi1_a, u);
         check(TransformId::trans_1phi0_to_0phi1_b, u);
         SeriesSpec<double> v;
         v.base = base;
         v.numer = {C(urand(rng, 0.4, 0.9))};
         v.denom = {C(urand(rng, 0.3, 0.6), 0.1)};
         v.arg = C(urand(rng, 0.3, 0.9), 0.2);
         check(TransformId::trans_1phi1_to_1phi2, v);
         const C a(urand(rng, 0.3, 0.7)), b(urand(rng, 0.3, 0.7)),
             cc(urand(rng, 0.6, 0.9), 0.05), z(urand(rng, 0.3, 0.6), 0.1);
         SeriesSpec<double> w;
         w.base = base;
         w.numer = {a, b};
         w.denom = {cc, a * b * z / cc};
         w.arg = z;
         check(TransformId::trans_2phi2_to_2phi1, w);
         return worst;
       }},
      {"terminating 3phi2 parameter exchanges",
       [&](std::mt19937_64& rng) {
         const BaseQ<double> base(urand(rng, 0.4, 0.65));
         const C q = base.q;
         const long long n = 1 + (long long)(rng() % 4);
         const C a(urand(rng, 0.5, 1.2), 0.1), b(urand(rng, 0.5, 1.2), -0.1),
             cc(urand(rng, 0.9, 1.5)), d(urand(rng, 0.9, 1.5));
         double worst = 0;
         auto check = [&](TransformId id, const SeriesSpec<double>& s) {
           const C before = eval_phi(s).value;
           const auto t = apply_transform(id, s);
           worst = std::max(
               worst, rel(t.prefactor * eval_phi(t.spec).value, before));
         };
         SeriesSpec<double> s1;
         s1.base = base;
         s1.numer = {ipow(q, -n), a, b};
         s1.denom = {cc, d};
         s1.arg = q;
         s1.termination = n;
         check(TransformId::term_3phi2_first, s1);
         SeriesSpec<double> s2 = s1;
         s2.arg = ipow(q, n) * cc * d / (a * b);
         check(TransformId::term_3phi2_second, s2);
         return worst;
       }},
  };

  bool pass = true;
  double worst = 0;
  std::string worst_name;
  for (const auto& ident : identities) {
    std::mt19937_64 rng(0x5eedULL ^ std::hash<std::string>{}(ident.name));
    for (int point = 0; point < 200; ++point) {
      const double r = ident.residual(rng);
      if (r > worst) {
        worst = r;
        worst_name = ident.name;
      }
      if (r > 1e-10) pass = false;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::ostringstream d;
  d << identities.size() << " identities x 200 points, worst " << worst
    << " (" << worst_name << "), " << secs << " s";
  report(1, "q-series kernel identities", pass && secs < 60.0, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 2: representation agreement and singular fallback.
// ---------------------------------------------------------------------------

void criterion2() {
  using R = long double;
  using CW = Complex<R>;
  bool pass = true;
  R worst = 0;
  // Pairwise agreement on the wide backend where no representation is
  // conditioning-limited at n = 8.
  for (double zr : {1.45, 1.6}) {
    qaskey::ParamSet<R> P;
    P.base = BaseQ<R>(0.8L);
    P.a = CW(1.15L);
    P.b = CW(0.8L);
    P.c = CW(0.65L);
    P.d = CW(0.5L);
    const PointZ<R> pt(CW((R)zr, 0.35L));
    const CW x(0.6L, 0.45L);
    auto agree = [&](FamilyId f, bool spectral) {
      for (long long n = 0; n <= 8; ++n) {
        std::vector<CW> vals;
        for (int rp = 1; rp <= rep_count(f); ++rp) {
          try {
            vals.push_back(spectral ? eval_family(f, rp, n, pt, P)
                                    : eval_family(f, rp, n, x, P));
          } catch (const SingularRepresentationError&) {
          }
        }
        if (vals.size() < 2 && rep_count(f) >= 2) pass = false;
        for (size_t i = 1; i < vals.size(); ++i) {
          const R r = std::abs(vals[i] - vals[0]) /
                      std::max(std::abs(vals[0]), std::abs(vals[i]));
          worst = std::max(worst, r);
          if (r > 1e-10L) pass = false;
        }
      }
    };
    for (FamilyId f : {FamilyId::AW, FamilyId::CDqH, FamilyId::CDqiH,
                       FamilyId::ASC, FamilyId::qiASC, FamilyId::CBqH,
                       FamilyId::CBqiH})
      agree(f, true);
    for (FamilyId f :
         {FamilyId::BigQJacobiPoly, FamilyId::LittleQJacobiPoly,
          FamilyId::QBessel, FamilyId::QiBessel})
      agree(f, false);
  }

  // Constructed singular case per multi-representation family: at least one
  // representation must detect the singularity and the automatic fallback
  // must still return a finite value.
  const double q = 0.55;
  const long long n = 4;
  BaseQ<double> Q(q);
  int fallbacks = 0;
  auto singular_case = [&](FamilyId f, ParamSet<double> P, C z_or_x,
                           bool spectral) {
    int thrown = 0;
    for (int rp = 1; rp <= rep_count(f); ++rp) {
      try {
        if (spectral)
          eval_family(f, rp, n, PointZ<double>(z_or_x), P);
        else
          eval_family(f, rp, n, z_or_x, P);
      } catch (const SingularRepresentationError&) {
        ++thrown;
      }
    }
    bool auto_ok = false;
    try {
      const C v = spectral
                      ? eval_family_auto(f, n, PointZ<double>(z_or_x), P)
                      : eval_family_auto(f, n, z_or_x, P);
      auto_ok = is_finite(v);
    } catch (const Error&) {
    }
    if (thrown >= 1 && auto_ok) ++fallbacks;
    else pass = false;
  };
  ParamSet<double> P0;
  P0.base = Q;
  P0.a = C(1.15);
  P0.b = C(0.8);
  P0.c = C(0.65);
  P0.d = C(0.5);
  {
    auto P = P0;
    P.b = C(1.0 / (1.15 * q * q));  // a*b = q^{-2}
    singular_case(FamilyId::AW, P, C(1.45), true);
    singular_case(FamilyId::CDqH, P, C(1.45), true);
    singular_case(FamilyId::ASC, P, C(1.45), true);
  }
  {
    auto P = P0;
    P.b = C(q * q / 1.15);  // 1/(a*b) = q^{-2}
    singular_case(FamilyId::CDqiH, P, C(1.45), true);
    singular_case(FamilyId::qiASC, P, C(1.45), true);
  }
  singular_case(FamilyId::CBqH, P0, C(std::pow(q, 1.0 - n) / 1.15), true);
  singular_case(FamilyId::CBqiH, P0, C(std::pow(q, 1.0 - n) * 1.15), true);
  singular_case(FamilyId::BigQJacobiPoly, P0,
                C(std::pow(q, 1.0 - n) * 0.65 / 0.8), false);
  singular_case(FamilyId::LittleQJacobiPoly, P0,
                C(std::pow(q, -(double)n) / 0.8), false);
  singular_case(FamilyId::QBessel, P0, C(std::pow(q, (double)n - 1.0)),
                false);
  singular_case(FamilyId::QiBessel, P0, C(std::pow(q, 1.0 - (double)n)),
                false);

  std::ostringstream d;
  d << "worst pairwise " << (double)worst << ", " << fallbacks
    << "/11 singular fallbacks";
  report(2, "representation agreement", pass, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 3: duality relations for m, n <= 6.
// ---------------------------------------------------------------------------

void criterion3() {
  using R = long double;
  using CW = Complex<R>;
  bool pass = true;
  R worst = 0;
  // The base 0.7 keeps the q^{-2*binom(m,2)} roundoff amplification of the
  // inverse-family sides below the 1e-8 budget at m = 6.
  qaskey::ParamSet<R> P;
  P.base = BaseQ<R>(0.70L);
  P.a = CW(1.15L);
  P.b = CW(0.8L);
  P.c = CW(0.65L);
  auto chk = [&](R r, R tol) {
    worst = std::max(worst, r);
    if (r > tol) pass = false;
  };
  for (long long m = 0; m <= 6; ++m) {
    for (long long n = 0; n <= 6; ++n) {
      for (int sel = 0; sel < 6; ++sel) {
        chk(verify_duality(DualityId::CDqH_BigJ, sel, m, n, P), 1e-8L);
        chk(verify_duality(DualityId::CDqiH_BigJ, sel, m, n, P), 1e-8L);
      }
      chk(verify_duality(DualityId::BigJ_CDqiH_A, 1, m, n, P), 1e-8L);
      chk(verify_duality(DualityId::BigJ_CDqiH_C, 1, m, n, P), 1e-8L);
      for (int v = 1; v <= 4; ++v)
        chk(verify_duality(DualityId::ASC_LittleJ, v, m, n, P), 1e-8L);
      chk(verify_duality(DualityId::CBqiH_QBessel, 1, m, n, P), 1e-8L);
    }
  }
  qaskey::ParamSet<R> PN;
  PN.base = P.base;
  PN.a = CW(-0.6L);
  for (long long m = 0; m <= 6; ++m)
    for (long long n = 0; n <= 6; ++n)
      chk(verify_duality(DualityId::CBqiH_QBessel, 2, m, n, PN), 1e-8L);
  // Function-level relations at generic complex degree.
  for (long long n = 0; n <= 3; ++n) {
    for (CW mu : {CW(0.37L), CW(1.21L)}) {
      chk(verify_duality_mu(DualityId::CDqH_BigJFn, 1, mu, n, P), 1e-8L);
      chk(verify_duality_mu(DualityId::CDqH_BigJFn, 2, mu, n, P), 1e-8L);
      chk(verify_duality_mu(DualityId::CBqH_QiBesselFn, 1, mu, n, P), 1e-8L);
      chk(verify_duality_mu(DualityId::CBqH_QiBesselFn, 2, mu, n, PN),
          1e-8L);
    }
  }
  qaskey::ParamSet<R> PL;
  PL.base = P.base;
  PL.a = CW(2.5L);
  PL.b = CW(2.0L);
  qaskey::ParamSet<R> PL2;
  PL2.base = P.base;
  PL2.a = CW(0.3L);
  PL2.b = CW(9.0L);
  for (long long n = 0; n <= 2; ++n) {
    for (CW mu : {CW(0.37L), CW(1.21L)}) {
      chk(verify_duality_mu(DualityId::ASC_LittleJFn, 1, mu, n, PL), 1e-8L);
      chk(verify_duality_mu(DualityId::ASC_LittleJFn, 2, mu, n, PL2), 1e-8L);
    }
  }
  // Integer-degree degeneration of function-level duality.
  R worst_int = 0;
  for (long long n = 0; n <= 3; ++n)
    for (CW mu : {CW(0.0L), CW(1.0L), CW(3.0L)})
      worst_int = std::max(
          worst_int,
          verify_duality_mu(DualityId::CBqH_QiBesselFn, 1, mu, n, P));
  for (long long n = 0; n <= 3; ++n) {
    for (long long m = 0; m <= 3; ++m) {
      const CW fnside =
          fam::bqjf(ipow(CW(0.70L), -n), CW((R)m), *P.a * *P.b / CW(0.70L),
                    *P.a / *P.b, *P.a * *P.c / CW(0.70L), P.base);
      const CW polyside =
          fam::bqj1(ipow(CW(0.70L), -n), m, *P.a * *P.b / CW(0.70L),
                    *P.a / *P.b, *P.a * *P.c / CW(0.70L), P.base);
      worst_int = std::max(worst_int, (R)(std::abs(fnside - polyside) /
                                          std::max((R)1, std::abs(polyside))));
    }
  }
  if (worst_int > 1e-10L) pass = false;
  std::ostringstream d;
  d << "worst " << (double)worst << ", integer-degree degeneration "
    << (double)worst_int;
  report(3, "duality relations m,n <= 6", pass, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 4: orthogonality suite.
// ---------------------------------------------------------------------------

void criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  double worst = 0;
  std::string worst_rel;
  for (OrthoRelation rid : all_ortho_relations()) {
    for (int point = 0; point < 2; ++point) {
      const auto OP = ortho_default_params<double>(rid, point);
      const auto rep = verify_ortho(rid, 4, OP);
      const double r = rep.max_residual();
      if (r > worst) {
        worst = r;
        worst_rel = ortho_relation_name(rid) + "#" + std::to_string(point);
      }
      if (r > 1e-6) pass = false;
    }
  }
  // Total-mass identities.
  OrthoParams<double> OM;
  OM.fam.base = BaseQ<double>(0.5);
  OM.fam.a = C(0.3);
  OM.fam.b = C(0.25);
  OM.fam.c = C(0.2);
  OM.fam.d = C(0.15);
  OM.alpha = C(0.4, 0.3);
  OM.beta = C(0.2, -0.5);
  double worst_mass =
      std::max(verify_total_mass(TotalMassId::askey_qbeta, OM),
               verify_total_mass(TotalMassId::ismail_masson_qbeta, OM));
  OM.alpha = C(0.9);
  worst_mass = std::max(worst_mass,
                        verify_total_mass(TotalMassId::blabcd, OM));
  if (worst_mass > 1e-7) pass = false;
  // Discrete closures.
  double worst_closure = 0;
  for (OrthoRelation rid : {OrthoRelation::cbqHorthi, OrthoRelation::thm368,
                            OrthoRelation::thm248}) {
    const auto OP = ortho_default_params<double>(rid);
    worst_closure = std::max(worst_closure,
                             verify_discrete_closure(rid, 4, OP)
                                 .max_residual());
  }
  if (worst_closure > 1e-6) pass = false;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (secs >= 600.0) pass = false;
  std::ostringstream d;
  d << "30 relations x 2 points, worst " << worst << " (" << worst_rel
    << "), mass " << worst_mass << ", closure " << worst_closure << ", "
    << secs << " s";
  report(4, "orthogonality suite", pass, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 5: generating functions.
// ---------------------------------------------------------------------------

void criterion5() {
  bool pass = true;
  GFParams<double> G;
  G.fam.base = BaseQ<double>(0.55);
  G.fam.a = C(1.4);
  G.fam.b = C(1.5);
  G.fam.c = C(1.6);
  G.gamma = C(0.42);
  G.delta = C(0.27);
  const PointZ<double> pt(C(1.45));
  double worst = 0;
  for (GFId id :
       {GFId::cdqih_G, GFId::master_gamma_delta, GFId::cor_gamma0,
        GFId::cor_delta0, GFId::cor_delta_ab, GFId::cor_delta_gamma,
        GFId::cbqih_I, GFId::ismail_corrected_V}) {
    for (double r : verify_gf_coefficients(id, 6, pt, G))
      worst = std::max(worst, r);
  }
  if (worst > 1e-7) pass = false;
  // Corollary lattice of the two-free-parameter master formula.
  GFParams<double> GM;
  GM.fam.base = BaseQ<double>(0.55);
  GM.fam.a = C(1.15);
  GM.fam.b = C(0.8);
  GM.fam.c = C(0.65);
  GM.gamma = C(0.42);
  GM.delta = C(0.27);
  double worst_cor = 0;
  auto compare = [&](GFParams<double> master, GFId cor) {
    for (long long n = 0; n <= 6; ++n)
      worst_cor = std::max(
          worst_cor,
          std::abs(gf_coefficient_direct(GFId::master_gamma_delta, n, pt,
                                         master) -
                   gf_coefficient_direct(cor, n, pt, GM)));
  };
  GFParams<double> G0 = GM;
  G0.gamma = C(0.0);
  compare(G0, GFId::cor_gamma0);
  GFParams<double> Gd = GM;
  Gd.delta = C(0.0);
  compare(Gd, GFId::cor_delta0);
  GFParams<double> Gab = GM;
  Gab.gamma = C(0.0);
  Gab.delta = C(1.0) / (*GM.fam.a * *GM.fam.b);
  compare(Gab, GFId::cor_delta_ab);
  GFParams<double> Geq = GM;
  Geq.delta = GM.gamma;
  worst_cor = std::max(
      worst_cor,
      std::abs(eval_gf(GFId::master_gamma_delta, C(0.13), pt, Geq) -
               eval_gf(GFId::cor_delta_gamma, C(0.13), pt, GM)));
  if (worst_cor > 1e-10) pass = false;
  std::ostringstream d;
  d << "8 ids, worst coefficient residual " << worst
    << ", corollary lattice " << worst_cor;
  report(5, "generating functions", pass, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 6: asymptotics.
// ---------------------------------------------------------------------------

void criterion6() {
  bool pass = true;
  double worst_ratio = 0, worst_slope = -1e9;
  std::string worst_id;
  auto check = [&](AsymLemma id, std::optional<Lem413Case> cs) {
    const auto AP = asym_default_params<double>(id, cs);
    const auto grid = asym_default_grid(id);
    const auto rep = verify_asym(id, grid, AP);
    const double r = std::abs(rep.ratios.back() - 1.0);
    if (r > worst_ratio) {
      worst_ratio = r;
      worst_id = asym_lemma_name(id);
      if (cs) worst_id += "." + lem413_case_name(*cs);
    }
    worst_slope = std::max(worst_slope, (double)rep.fitted_error_order);
    if (r > 5e-2) pass = false;
    // Fitted decay at least as fast as the stated 1/index order, within
    // the slope tolerance 0.3.
    if (!(rep.fitted_error_order <= -0.7)) pass = false;
  };
  for (AsymLemma id : all_asym_lemmas()) {
    if (id == AsymLemma::lem413) continue;
    check(id, std::nullopt);
  }
  for (Lem413Case cs : {Lem413Case::less, Lem413Case::greater,
                        Lem413Case::equal_modulus, Lem413Case::critical})
    check(AsymLemma::lem413, cs);
  std::ostringstream d;
  d << "worst |ratio-1| " << worst_ratio << " (" << worst_id
    << "), worst fitted order " << worst_slope;
  report(6, "asymptotic lemmas", pass, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 7: TTRR norm product formula.
// ---------------------------------------------------------------------------

void criterion7() {
  bool pass = true;
  double worst = 0;
  for (auto [fid, rid] :
       {std::pair{FamilyId::CqH, OrthoRelation::cqHO},
        std::pair{FamilyId::ASC, OrthoRelation::ASCO},
        std::pair{FamilyId::CDqH, OrthoRelation::cdqHO}}) {
    const auto OP = ortho_default_params<double>(rid);
    for (double v : extract_ttrr_and_verify_norm(fid, 6, OP))
      worst = std::max(worst, v);
  }
  if (worst > 1e-7) pass = false;
  std::ostringstream d;
  d << "cqH/ASC/cdqH n <= 6, worst " << worst;
  report(7, "three-term recurrence norms", pass, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 8: CLI end to end.
// ---------------------------------------------------------------------------

int run_cmd(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

std::string read_without_wall_time(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("wall_seconds") == std::string::npos) out << line << "\n";
  return out.str();
}

void criterion8(const std::string& srcdir, const std::string& bindir) {
  const std::string cli = bindir + "/qaskey";
  const std::string env =
      "QASKEY_GRIDS=" + srcdir + "/configs/grids.json ";
  bool pass = true;
  std::ostringstream d;
  {
    std::ifstream probe(cli);
    if (!probe) {
      report(8, "CLI end to end", false,
             "CLI binary not found at " + cli);
      return;
    }
  }
  const int rc1 = run_cmd(env + cli +
                          " verify --suite all --grid smoke --out "
                          "acceptance-r1.json 2>/dev/null >/dev/null");
  const int rc2 = run_cmd(env + cli +
                          " verify --suite all --grid smoke --out "
                          "acceptance-r2.json 2>/dev/null >/dev/null");
  if (rc1 != 0 || rc2 != 0) {
    pass = false;
    d << "smoke verification exit codes " << rc1 << "/" << rc2 << "; ";
  }
  const std::string b1 = read_without_wall_time("acceptance-r1.json");
  const std::string b2 = read_without_wall_time("acceptance-r2.json");
  if (b1.empty() || b1 != b2) {
    pass = false;
    d << "report bodies not deterministic; ";
  }
  const int rc3 = run_cmd(env + cli +
                          " verify --suite ortho.theta.aw --grid smoke "
                          "--q 1.5 2>/dev/null >/dev/null");
  if (rc3 != 2) {
    pass = false;
    d << "out-of-domain q exited " << rc3 << " (want 2); ";
  }
  const int rc4 = run_cmd(env + cli +
                          " verify --suite all --grid empty "
                          "2>/dev/null >/dev/null");
  if (rc4 != 2) {
    pass = false;
    d << "empty grid exited " << rc4 << " (want 2); ";
  }
  d << "exits " << rc1 << "/" << rc2 << "/" << rc3 << "/" << rc4
    << ", deterministic=" << (b1 == b2 && !b1.empty() ? "yes" : "no");
  report(8, "CLI end to end", pass, d.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <source-dir>\n";
    return 2;
  }
  const std::string srcdir = argv[1];
  std::string bindir = ".";
  const std::string self = argv[0];
  const size_t slash = self.find_last_of('/');
  if (slash != std::string::npos) bindir = self.substr(0, slash);

  const auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8(srcdir, bindir);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                : "FAILURES PRESENT")
            << " (" << secs << " s total)\n";
  return g_failures == 0 ? 0 : 1;
}
