/**
 * @file qaskey.cpp
 * @brief Command-line front end: evaluate any family, run named verification
 *        suites over parameter grids, and emit machine-readable reports and
 *        delimited tables.
 *
 * Subcommands: eval, verify, table, list.  Exit codes: 0 on success, 1 when
 * a verification case fails its tolerance, 2 on configuration or domain
 * errors (one-line reason on stderr).
 */

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qaskey/asym.hpp"
#include "qaskey/duality.hpp"
#include "qaskey/genfun.hpp"
#include "qaskey/ortho.hpp"
#include "qaskey/report.hpp"
#include "qaskey/series.hpp"

namespace qk = qaskey;
using C = qk::Complex<double>;

namespace {

// ---------------------------------------------------------------------------
// Small utilities.
// ---------------------------------------------------------------------------

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double rel(C got, C want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(c));
  return s;
}

/// Per-case execution context: the resolved grid, the point index, and a
/// deterministic RNG seeded from (seed, leaf id, point).
struct Ctx {
  const qk::GridSpec* grid = nullptr;
  std::optional<double> q_cli;   // --q override
  long long nmax = 4;
  int point = 0;
  std::mt19937_64 rng;

  double urand() { return double(rng() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double urand(double lo, double hi) { return lo + (hi - lo) * urand(); }

  /// Multiplicative jitter factor within the grid's perturbation budget.
  double jit() { return 1.0 + grid->jitter * (2.0 * urand() - 1.0); }

  C jitc(C v) { return v * jit(); }

  /// Base |q| for this case: CLI override, then the grid sweep, then the
  /// suite's curated value.
  double pick_q(double curated) {
    if (q_cli) return *q_cli;
    if (!grid->qs.empty()) return grid->qs[size_t(point) % grid->qs.size()];
    return curated;
  }
};

/// A registered verification leaf: a dotted suite id, its pinned default
/// tolerance, and the case runner.
struct Leaf {
  std::string id;
  double tol;
  std::function<qk::CaseRecord(Ctx&)> run;
};

qk::CaseRecord make_case(const Ctx& cx, const std::string& leaf_id,
                         double value, nlohmann::json inputs,
                         std::string diag = {},
                         std::string metric = "residual") {
  qk::CaseRecord rec;
  std::ostringstream key;
  key << leaf_id << "#" << cx.point;
  rec.key = key.str();
  rec.inputs = std::move(inputs);
  rec.metric = std::move(metric);
  rec.value = value;
  rec.diagnostics = std::move(diag);
  return rec;
}

// ---------------------------------------------------------------------------
// Leaf runners.
// ---------------------------------------------------------------------------

qk::CaseRecord run_qcore_identities(Ctx& cx) {
  const double qv = cx.pick_q(0.55);
  const qk::BaseQ<double> base(qv);
  const C q(qv);
  double worst = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const C a(cx.urand(-1.6, 1.6), cx.urand(0.15, 0.9));
    // Negative-index closed form.
    for (long long n = 1; n <= 6; ++n) {
      const C closed = qk::ipow(q, qk::c2(n)) * qk::ipow(-q / a, n) /
                       qk::qpoch(q / a, base, n);
      worst = std::max(worst, rel(qk::qpoch(a, base, -n), closed));
    }
    // Index addition.
    for (long long n = -4; n <= 4; ++n)
      for (long long k = -4; k <= 4; ++k)
        worst = std::max(
            worst, rel(qk::qpoch(a, base, n + k),
                       qk::qpoch(a, base, n) *
                           qk::qpoch(a * qk::ipow(q, n), base, k)));
    // Infinite-product splitting and base-squared factorization.
    const C whole = qk::qpoch_inf(a, base);
    for (long long n : {1ll, 4ll, 9ll})
      worst = std::max(
          worst, rel(whole, qk::qpoch(a, base, n) *
                                qk::qpoch_inf(a * qk::ipow(q, n), base)));
    const qk::BaseQ<double> base2(qv * qv);
    worst = std::max(worst, rel(whole, qk::qpoch_inf(a, base2) *
                                           qk::qpoch_inf(a * q, base2)));
    // Theta inversion, quasi-periodicity and the bilateral sum.
    C z(cx.urand(-1.5, 1.5), cx.urand(-1.5, 1.5));
    if (std::abs(z) < 0.25) z += C(0.5, 0.5);
    const C th = qk::theta(z, base);
    worst = std::max(worst, rel(qk::theta(q / z, base), th));
    worst = std::max(worst, rel(qk::theta(C(1.0) / z, base), -th / z));
    for (long long n = -3; n <= 3; ++n)
      worst = std::max(
          worst, rel(qk::theta(qk::ipow(q, n) * z, base),
                     qk::ipow(-C(1.0) / z, n) * qk::ipow(q, -qk::c2(n)) * th));
    worst = std::max(worst, rel(qk::theta_bilateral(z, base), th));
    // q-binomial Pascal recurrences and binomial-coefficient identities.
    const long long nn = 2 + (long long)(cx.rng() % 9);
    const long long kk = 1 + (long long)(cx.rng() % (nn - 1));
    worst = std::max(
        worst,
        rel(qk::qbinom(nn, kk, base),
            qk::qbinom(nn - 1, kk, base) +
                qk::ipow(q, nn - kk) * qk::qbinom(nn - 1, kk - 1, base)));
    worst = std::max(worst, rel(qk::qbinom(nn, kk, base),
                                qk::qbinom(nn, nn - kk, base)));
    worst = std::max(
        worst, (double)qk::binom_identities_check(
                   (long long)(cx.rng() % 31) - 15,
                   (long long)(cx.rng() % 31) - 15,
                   C(cx.urand(-3, 3), cx.urand(-3, 3))));
    // Jackson q-integral additivity over q-linked endpoints.
    const C b(cx.urand(0.3, 1.0), cx.urand(-0.4, 0.4));
    std::function<C(C)> f = [a](C x) { return C(1.0) / (C(1.0) - a * x / 4.0); };
    worst = std::max(
        worst, rel(qk::jackson_qintegral(f, C(0.0), b, base),
                   qk::jackson_qintegral(f, C(0.0), q * b, base) +
                       (C(1.0) - q) * b * f(b)));
  }
  return make_case(cx, "qcore.identities", worst, {{"q", qv}, {"trials", 25}});
}

qk::CaseRecord run_series_summations(Ctx& cx) {
  const double qv = cx.pick_q(0.5);
  double worst = 0;
  for (int trial = 0; trial < 25; ++trial) {
    qk::SummationParams<double> p;
    p.base = qk::BaseQ<double>(qv);
    // Nonterminating identities.
    p.a = C(cx.urand(-1.4, 1.4), cx.urand(0.1, 0.6));
    p.z = C(cx.urand(-0.6, 0.6), cx.urand(-0.3, 0.3));
    for (qk::SummationId id :
         {qk::SummationId::qbinomial_theorem, qk::SummationId::euler_small_e,
          qk::SummationId::euler_big_e}) {
      auto [l, r] = qk::eval_summation(id, p);
      worst = std::max(worst, rel(l, r));
    }
    qk::SummationParams<double> g;
    g.base = p.base;
    g.a = C(cx.urand(0.7, 1.2), cx.urand(0.1, 0.3));
    g.b = C(cx.urand(0.7, 1.2), cx.urand(-0.3, -0.1));
    g.c = *g.a * *g.b * C(cx.urand(0.3, 0.7), 0.1);
    {
      auto [l, r] = qk::eval_summation(qk::SummationId::q_gauss, g);
      worst = std::max(worst, rel(l, r));
    }
    // Terminating identities on well-conditioned (n, q) samples.
    qk::SummationParams<double> t;
    t.base = p.base;
    t.n = 1 + (long long)(cx.rng() % 4);
    t.a = C(cx.urand(0.4, 1.2), cx.urand(0.3, 0.6));
    t.b = C(cx.urand(0.4, 1.2), cx.urand(0.3, 0.6));
    t.z = C(cx.urand(0.4, 1.2), -0.2 * cx.urand());
    for (qk::SummationId id :
         {qk::SummationId::terminating_qbinomial,
          qk::SummationId::q_chu_vandermonde,
          qk::SummationId::q_chu_vandermonde_reversed,
          qk::SummationId::limit_q_chu}) {
      auto [l, r] = qk::eval_summation(id, t);
      worst = std::max(worst, rel(l, r));
    }
  }
  return make_case(cx, "series.summations", worst,
                   {{"q", qv}, {"trials", 25}});
}

qk::CaseRecord run_series_transforms(Ctx& cx) {
  const double qv = cx.pick_q(0.5);
  const qk::BaseQ<double> base(qv);
  const C q(qv);
  double worst = 0;
  auto check = [&](qk::TransformId id, const qk::SeriesSpec<double>& s) {
    const C before = qk::eval_phi(s).value;
    const auto t = qk::apply_transform(id, s);
    worst = std::max(worst,
                     rel(t.prefactor * qk::eval_phi(t.spec).value, before));
  };
  for (int trial = 0; trial < 12; ++trial) {
    const long long n = 1 + (long long)(cx.rng() % 4);
    qk::SeriesSpec<double> s;
    s.base = base;
    s.numer = {qk::ipow(q, -n), C(cx.urand(0.4, 1.2), 0.15),
               C(cx.urand(0.4, 1.2), -0.1)};
    s.denom = {C(cx.urand(0.9, 1.6)), C(cx.urand(0.9, 1.6))};
    s.arg = C(cx.urand(0.3, 1.0), 0.1);
    s.termination = n;
    check(qk::TransformId::inversion, s);
    check(qk::TransformId::base_inversion, s);
    qk::SeriesSpec<double> s3 = s;
    s3.arg = q;
    check(qk::TransformId::term_3phi2_first, s3);
    s3.arg = qk::ipow(q, n) * s.denom[0] * s.denom[1] /
             (s.numer[1] * s.numer[2]);
    check(qk::TransformId::term_3phi2_second, s3);
    // Nonterminating rewrites.
    qk::SeriesSpec<double> u;
    u.base = base;
    u.numer = {C(cx.urand(-0.5, 0.5), 0.1)};
    u.arg = C(cx.urand(-0.5, 0.5), -0.15);
    u.vdbr_offset = 1;
    check(qk::TransformId::trans_1phi0_to_0phi1_a, u);
    check(qk::TransformId::trans_1phi0_to_0phi1_b, u);
    qk::SeriesSpec<double> v;
    v.base = base;
    v.numer = {C(cx.urand(0.4, 0.9))};
    v.denom = {C(cx.urand(0.3, 0.6), 0.1)};
    v.arg = C(cx.urand(0.3, 0.9), 0.2);
    check(qk::TransformId::trans_1phi1_to_1phi2, v);
    const C a(cx.urand(0.3, 0.7)), bb(cx.urand(0.3, 0.7)),
        cc(cx.urand(0.6, 0.9), 0.05), z(cx.urand(0.3, 0.6), 0.1);
    qk::SeriesSpec<double> w;
    w.base = base;
    w.numer = {a, bb};
    w.denom = {cc, a * bb * z / cc};
    w.arg = z;
    check(qk::TransformId::trans_2phi2_to_2phi1, w);
  }
  return make_case(cx, "series.transforms", worst,
                   {{"q", qv}, {"trials", 12}});
}

/// Largest degree (capped at `cap`) whose q^{-2 binom(n,2)} representation
/// spread stays within `budget` decimal digits: beyond it, pairwise
/// representation agreement is limited by cancellation, not by correctness.
long long conditioning_cap(double qv, double budget, long long cap) {
  long long n = 0;
  while (n < cap &&
         2.0 * double(qk::c2(n + 1)) * std::log10(1.0 / qv) <= budget)
    ++n;
  return n;
}

qk::CaseRecord run_families_reps(Ctx& cx) {
  using R = long double;
  using CW = qk::Complex<R>;
  const double qv = cx.pick_q(0.8);
  const long long ncap = conditioning_cap(qv, 9.5, 8);
  qk::ParamSet<R> P;
  P.base = qk::BaseQ<R>((R)qv);
  P.a = CW((R)(1.15 * cx.jit()));
  P.b = CW((R)(0.8 * cx.jit()));
  P.c = CW((R)(0.65 * cx.jit()));
  P.d = CW((R)(0.5 * cx.jit()));
  const qk::PointZ<R> pt(CW((R)(1.45 * cx.jit()), (R)(0.35 * cx.jit())));
  const CW x((R)(0.6 * cx.jit()), (R)(0.45 * cx.jit()));
  R worst = 0;
  auto agree = [&](qk::FamilyId f, bool spectral) {
    for (long long n = 0; n <= ncap; ++n) {
      std::vector<CW> vals;
      for (int rp = 1; rp <= qk::rep_count(f); ++rp) {
        try {
          vals.push_back(spectral ? qk::eval_family(f, rp, n, pt, P)
                                  : qk::eval_family(f, rp, n, x, P));
        } catch (const qk::SingularRepresentationError&) {
        }
      }
      for (size_t i = 1; i < vals.size(); ++i)
        worst = std::max(worst,
                         std::abs(vals[i] - vals[0]) /
                             std::max(std::abs(vals[0]), std::abs(vals[i])));
    }
  };
  for (qk::FamilyId f :
       {qk::FamilyId::AW, qk::FamilyId::CDqH, qk::FamilyId::CDqiH,
        qk::FamilyId::ASC, qk::FamilyId::qiASC, qk::FamilyId::CBqH,
        qk::FamilyId::CBqiH})
    agree(f, true);
  for (qk::FamilyId f :
       {qk::FamilyId::BigQJacobiPoly, qk::FamilyId::LittleQJacobiPoly,
        qk::FamilyId::QBessel, qk::FamilyId::QiBessel})
    agree(f, false);
  return make_case(cx, "families.reps", (double)worst,
                   {{"q", qv}, {"backend", "wide"}, {"ncap", ncap}});
}

qk::CaseRecord run_families_symmetry(Ctx& cx) {
  const double qv = cx.pick_q(0.55);
  qk::ParamSet<double> P;
  P.base = qk::BaseQ<double>(qv);
  P.a = cx.jitc(C(1.15, 0.1));
  P.b = cx.jitc(C(0.8, -0.2));
  P.c = cx.jitc(C(0.65, 0.05));
  P.d = cx.jitc(C(0.5, 0.15));
  const C z = cx.jitc(C(1.45, 0.35));
  double worst = 0;
  for (auto [f, n] : {std::pair{qk::FamilyId::AW, 4ll},
                      {qk::FamilyId::CDqH, 4ll},
                      {qk::FamilyId::CDqiH, 4ll},
                      {qk::FamilyId::ASC, 5ll},
                      {qk::FamilyId::qiASC, 5ll},
                      {qk::FamilyId::CBqH, 5ll},
                      {qk::FamilyId::CBqiH, 5ll},
                      {qk::FamilyId::CqH, 6ll},
                      {qk::FamilyId::CqiH, 6ll}})
    worst = std::max(worst, qk::verify_symmetries(f, n, z, P));
  worst = std::max(worst, qk::verify_symmetries(qk::FamilyId::BigQJacobiPoly,
                                                4, cx.jitc(C(0.35, 0.2)), P));
  return make_case(cx, "families.symmetry", worst, {{"q", qv}});
}

qk::CaseRecord run_families_limits(Ctx& cx) {
  const double qv = cx.pick_q(0.55);
  qk::ParamSet<double> P;
  P.base = qk::BaseQ<double>(qv);
  P.a = C(1.15 * cx.jit());
  P.b = C(0.8 * cx.jit());
  P.c = C(0.65 * cx.jit());
  P.d = C(0.5 * cx.jit());
  const C z = cx.jitc(C(1.45, 0.3));
  const C x(0.35 * cx.jit());
  double worst = 0;
  auto edge = [&](qk::LimitEdge e, C arg, std::vector<double> lam) {
    const auto r = qk::verify_limit_chain(e, 4, arg, P, lam);
    worst = std::max(worst, r.back());
  };
  const std::vector<double> lam1 = {1e-2, 1e-4, 1e-6};
  const std::vector<double> lam2 = {1e-3, 1e-6, 1e-9};
  edge(qk::LimitEdge::AW_to_CDqH, z, lam1);
  edge(qk::LimitEdge::CDqH_to_ASC, z, lam1);
  edge(qk::LimitEdge::ASC_to_CBqH, z, lam1);
  edge(qk::LimitEdge::CBqH_to_CqH, z, lam1);
  edge(qk::LimitEdge::AW_to_CDqiH, z, lam1);
  edge(qk::LimitEdge::CDqiH_to_qiASC, z, lam1);
  edge(qk::LimitEdge::qiASC_to_CBqiH, z, lam1);
  edge(qk::LimitEdge::CBqiH_to_CqiH, z, lam1);
  edge(qk::LimitEdge::BigQJ_to_LittleQJ, x, lam1);
  edge(qk::LimitEdge::LittleQJ_to_QBessel, x, lam2);
  edge(qk::LimitEdge::LittleQJ_to_QiBessel, x, lam2);
  return make_case(cx, "families.limits", worst, {{"q", qv}});
}

qk::CaseRecord run_duality(Ctx& cx, const std::string& leaf,
                           qk::DualityId did) {
  // Wide backend: the q^{-1}-family relations amplify roundoff by
  // q^{-2 binom(n,2)}-type factors, which at |q| = 0.4 exceeds what the
  // 1e-8 tolerance leaves in binary64.
  using R = long double;
  using CW = qk::Complex<R>;
  const double qv = cx.pick_q(0.55);
  qk::ParamSet<R> P;
  P.base = qk::BaseQ<R>((R)qv);
  P.a = CW((R)(1.15 * cx.jit()));
  P.b = CW((R)(0.8 * cx.jit()));
  P.c = CW((R)(0.65 * cx.jit()));
  const long long cap = std::min<long long>(cx.nmax, 4);
  R worst = 0;
  auto sweep = [&](int variant, const qk::ParamSet<R>& PP) {
    for (long long m = 0; m <= cap; ++m)
      for (long long n = 0; n <= cap; ++n)
        worst = std::max(worst, qk::verify_duality(did, variant, m, n, PP));
  };
  auto sweep_mu = [&](int variant, const qk::ParamSet<R>& PP,
                      std::initializer_list<CW> mus) {
    for (long long n = 0; n <= std::min<long long>(cap, 2); ++n)
      for (CW mu : mus)
        worst =
            std::max(worst, qk::verify_duality_mu(did, variant, mu, n, PP));
  };
  switch (did) {
    case qk::DualityId::CDqH_BigJ:
    case qk::DualityId::CDqiH_BigJ:
      for (int sel = 0; sel < 6; ++sel) sweep(sel, P);
      break;
    case qk::DualityId::BigJ_CDqiH_A:
    case qk::DualityId::BigJ_CDqiH_C:
      sweep(1, P);
      break;
    case qk::DualityId::ASC_LittleJ:
      for (int v = 1; v <= 4; ++v) sweep(v, P);
      break;
    case qk::DualityId::CBqiH_QBessel: {
      sweep(1, P);
      qk::ParamSet<R> PN;
      PN.base = P.base;
      PN.a = CW((R)(-0.6 * cx.jit()));
      sweep(2, PN);
      break;
    }
    case qk::DualityId::CDqH_BigJFn:
      sweep_mu(1, P, {CW(0.37L), CW(1.21L), CW(0.5L, 0.4L)});
      sweep_mu(2, P, {CW(0.37L), CW(1.21L)});
      break;
    case qk::DualityId::ASC_LittleJFn: {
      qk::ParamSet<R> PL;
      PL.base = P.base;
      PL.a = CW((R)(2.5 * cx.jit()));
      PL.b = CW((R)(2.0 * cx.jit()));
      sweep_mu(1, PL, {CW(0.37L), CW(1.21L)});
      // The inverse form needs |q^{1-n}/(ab)| < 1 up to n = 2; ab = 2.7
      // keeps that satisfied down to q = 0.4.
      qk::ParamSet<R> PL2;
      PL2.base = P.base;
      PL2.a = CW((R)(0.3 * cx.jit()));
      PL2.b = CW((R)(9.0 * cx.jit()));
      sweep_mu(2, PL2, {CW(0.37L), CW(1.21L)});
      break;
    }
    case qk::DualityId::CBqH_QiBesselFn: {
      sweep_mu(1, P, {CW(0.37L), CW(1.21L), CW(2.0L)});
      qk::ParamSet<R> PB;
      PB.base = P.base;
      PB.a = CW((R)(-0.6 * cx.jit()));
      sweep_mu(2, PB, {CW(0.37L), CW(1.21L), CW(2.0L)});
      break;
    }
  }
  return make_case(cx, leaf, (double)worst, {{"q", qv}, {"cap", cap}});
}

qk::CaseRecord run_genfun_coefficients(Ctx& cx) {
  const double qv = cx.pick_q(0.55);
  qk::GFParams<double> G;
  G.fam.base = qk::BaseQ<double>(qv);
  G.fam.a = C(1.4 * cx.jit());
  G.fam.b = C(1.5 * cx.jit());
  G.fam.c = C(1.6 * cx.jit());
  G.gamma = C(0.42 * cx.jit());
  G.delta = C(0.27 * cx.jit());
  const qk::PointZ<double> pt(C(1.45 * cx.jit()));
  const long long cap = std::min<long long>(cx.nmax, 6);
  double worst = 0;
  for (qk::GFId id :
       {qk::GFId::cdqih_G, qk::GFId::master_gamma_delta, qk::GFId::cor_gamma0,
        qk::GFId::cor_delta0, qk::GFId::cor_delta_ab,
        qk::GFId::cor_delta_gamma, qk::GFId::cbqih_I,
        qk::GFId::ismail_corrected_V}) {
    for (double r : qk::verify_gf_coefficients(id, cap, pt, G))
      worst = std::max(worst, r);
  }
  return make_case(cx, "genfun.coefficients", worst, {{"q", qv}});
}

qk::CaseRecord run_genfun_corollaries(Ctx& cx) {
  const double qv = cx.pick_q(0.55);
  qk::GFParams<double> G;
  G.fam.base = qk::BaseQ<double>(qv);
  G.fam.a = C(1.15 * cx.jit());
  G.fam.b = C(0.8 * cx.jit());
  G.fam.c = C(0.65 * cx.jit());
  G.gamma = C(0.42 * cx.jit());
  G.delta = C(0.27 * cx.jit());
  const qk::PointZ<double> pt(C(1.45 * cx.jit()));
  double worst = 0;
  auto compare = [&](qk::GFParams<double> master, qk::GFId cor) {
    for (long long n = 0; n <= 6; ++n)
      worst = std::max(
          worst, std::abs(qk::gf_coefficient_direct(
                              qk::GFId::master_gamma_delta, n, pt, master) -
                          qk::gf_coefficient_direct(cor, n, pt, G)));
  };
  qk::GFParams<double> G0 = G;
  G0.gamma = C(0.0);
  compare(G0, qk::GFId::cor_gamma0);
  qk::GFParams<double> Gd = G;
  Gd.delta = C(0.0);
  compare(Gd, qk::GFId::cor_delta0);
  qk::GFParams<double> Gab = G;
  Gab.gamma = C(0.0);
  Gab.delta = C(1.0) / (*G.fam.a * *G.fam.b);
  compare(Gab, qk::GFId::cor_delta_ab);
  qk::GFParams<double> Geq = G;
  Geq.delta = G.gamma;
  worst = std::max(
      worst,
      std::abs(qk::eval_gf(qk::GFId::master_gamma_delta, C(0.13), pt, Geq) -
               qk::eval_gf(qk::GFId::cor_delta_gamma, C(0.13), pt, G)));
  return make_case(cx, "genfun.corollaries", worst, {{"q", qv}});
}

qk::OrthoParams<double> ortho_params_for(Ctx& cx, qk::OrthoRelation rid) {
  // The orthogonality relations alternate between the two curated parameter
  // points and keep their curated base q: the quadrature/truncation budgets
  // of several weights (bilateral masses, lattice tails) are tuned to it.
  // The grid contributes the parameter jitter and an explicit --q still
  // overrides.
  auto OP = qk::ortho_default_params<double>(rid, cx.point % 2);
  if (cx.q_cli) OP.fam.base = qk::BaseQ<double>(*cx.q_cli);
  auto jit_opt = [&](std::optional<C>& v) {
    if (v) v = cx.jitc(*v);
  };
  jit_opt(OP.fam.a);
  jit_opt(OP.fam.b);
  jit_opt(OP.fam.c);
  jit_opt(OP.fam.d);
  if (OP.alpha != C(0.0)) OP.alpha = cx.jitc(OP.alpha);
  if (OP.beta != C(0.0)) OP.beta = cx.jitc(OP.beta);
  return OP;
}

qk::CaseRecord run_ortho(Ctx& cx, const std::string& leaf,
                         qk::OrthoRelation rid) {
  const auto OP = ortho_params_for(cx, rid);
  const long long cap = std::min<long long>(cx.nmax, 4);
  const auto rep = qk::verify_ortho(rid, cap, OP);
  return make_case(cx, leaf, rep.max_residual(),
                   {{"relation", qk::ortho_relation_name(rid)},
                    {"q", OP.fam.base.q.real()},
                    {"nmax", cap}},
                   rep.diagnostics);
}

qk::CaseRecord run_ortho_mass(Ctx& cx, const std::string& leaf,
                              qk::TotalMassId id) {
  const double qv = cx.pick_q(0.5);
  qk::OrthoParams<double> OP;
  OP.fam.base = qk::BaseQ<double>(qv);
  OP.fam.a = C(0.3 * cx.jit());
  OP.fam.b = C(0.25 * cx.jit());
  OP.fam.c = C(0.2 * cx.jit());
  OP.fam.d = C(0.15 * cx.jit());
  if (id == qk::TotalMassId::blabcd) {
    OP.alpha = C(0.9 * cx.jit());
  } else {
    OP.alpha = cx.jitc(C(0.4, 0.3));
    OP.beta = cx.jitc(C(0.2, -0.5));
  }
  return make_case(cx, leaf, qk::verify_total_mass(id, OP), {{"q", qv}});
}

qk::CaseRecord run_ortho_closure(Ctx& cx, const std::string& leaf,
                                 qk::OrthoRelation rid) {
  const auto OP = ortho_params_for(cx, rid);
  const long long cap = std::min<long long>(cx.nmax, 4);
  const auto rep = qk::verify_discrete_closure(rid, cap, OP);
  return make_case(cx, leaf, rep.max_residual(),
                   {{"relation", qk::ortho_relation_name(rid)},
                    {"q", OP.fam.base.q.real()},
                    {"mmax", cap}});
}

qk::CaseRecord run_ortho_ttrr(Ctx& cx, const std::string& leaf,
                              qk::FamilyId fid, qk::OrthoRelation rid) {
  const auto OP = ortho_params_for(cx, rid);
  const long long cap = std::min<long long>(cx.nmax, 6);
  double worst = 0;
  for (double v : qk::extract_ttrr_and_verify_norm(fid, cap, OP))
    worst = std::max(worst, v);
  return make_case(cx, leaf, worst,
                   {{"family", qk::family_name(fid)},
                    {"q", OP.fam.base.q.real()},
                    {"nmax", cap}});
}

qk::CaseRecord run_asym(Ctx& cx, const std::string& leaf, qk::AsymLemma id,
                        std::optional<qk::Lem413Case> c413) {
  // Asymptotic lemmas keep their curated base q: the default index grids
  // and error-order windows are tuned to it.  The grid's jitter is applied
  // to the evaluation point (and uniformly to (a, b) so that the lem413
  // case classification is preserved).
  auto AP = qk::asym_default_params<double>(id, c413);
  AP.z = AP.z * cx.jit();
  if (c413) {
    const double f = cx.jit();
    AP.fam.a = *AP.fam.a * f;
    AP.fam.b = *AP.fam.b * f;
  }
  const auto grid = qk::asym_default_grid(id);
  const auto rep = qk::verify_asym(id, grid, AP);
  double value = std::abs(rep.ratios.back() - 1.0);
  std::ostringstream diag;
  diag << "fitted_error_order=" << rep.fitted_error_order;
  if (!(rep.fitted_error_order <= -0.7)) {
    diag << " (decay slower than the stated order)";
    value = std::max(value, 1.0);
  }
  nlohmann::json inputs = {{"lemma", qk::asym_lemma_name(id)},
                           {"q", AP.fam.base.q.real()},
                           {"largest_index", grid.back()}};
  if (c413) inputs["case"] = qk::lem413_case_name(*c413);
  return make_case(cx, leaf, value, std::move(inputs), diag.str(),
                   "ratio-error");
}

qk::CaseRecord run_asym_darboux(Ctx& cx) {
  const qk::BaseQ<double> Q(0.5);
  const C z(1.45 * cx.jit());
  const qk::PointZ<double> pt(z);
  qk::GFParams<double> G;
  G.fam.base = Q;
  const C a(0.7 * cx.jit()), b(1.1 * cx.jit());
  G.fam.a = a;
  G.fam.b = b;
  const C K =
      qk::darboux_extract(qk::GFId::cor_delta_gamma, -C(1.0) / b, 1, pt, G);
  const C H1 = qk::qpoch_inf_many(qk::fam::zpm(C(1.0) / b, z), Q) /
               (qk::qpoch_inf(C(0.5), Q) * qk::qpoch_inf(a / b, Q));
  double worst = rel(K, H1);
  const auto rep = qk::darboux_from_gf(qk::GFId::cor_delta_gamma,
                                       -C(1.0) / b, 1, {8, 12, 16, 20, 24},
                                       pt, G);
  worst = std::max(worst, std::abs(rep.ratios.back() - 1.0));
  return make_case(cx, "asym.darboux", worst, {{"q", 0.5}}, "",
                   "ratio-error");
}

// ---------------------------------------------------------------------------
// Suite registry.
// ---------------------------------------------------------------------------

const std::vector<Leaf>& registry() {
  static const std::vector<Leaf> leaves = [] {
    std::vector<Leaf> v;
    v.push_back({"qcore.identities", 1e-10, run_qcore_identities});
    v.push_back({"series.summations", 1e-10, run_series_summations});
    v.push_back({"series.transforms", 1e-10, run_series_transforms});
    v.push_back({"families.reps", 1e-10, run_families_reps});
    v.push_back({"families.symmetry", 1e-9, run_families_symmetry});
    v.push_back({"families.limits", 1e-3, run_families_limits});
    const std::vector<std::pair<std::string, qk::DualityId>> duals = {
        {"duality.cdqh-bigj", qk::DualityId::CDqH_BigJ},
        {"duality.cdqih-bigj", qk::DualityId::CDqiH_BigJ},
        {"duality.bigj-cdqih-a", qk::DualityId::BigJ_CDqiH_A},
        {"duality.bigj-cdqih-c", qk::DualityId::BigJ_CDqiH_C},
        {"duality.cdqh-bigjfn", qk::DualityId::CDqH_BigJFn},
        {"duality.asc-littlej", qk::DualityId::ASC_LittleJ},
        {"duality.asc-littlejfn", qk::DualityId::ASC_LittleJFn},
        {"duality.cbqh-qibesselfn", qk::DualityId::CBqH_QiBesselFn},
        {"duality.cbqih-qbessel", qk::DualityId::CBqiH_QBessel}};
    for (const auto& [id, did] : duals)
      v.push_back({id, 1e-8, [id = id, did](Ctx& cx) {
                     return run_duality(cx, id, did);
                   }});
    v.push_back({"genfun.coefficients", 1e-7, run_genfun_coefficients});
    v.push_back({"genfun.corollaries", 1e-10, run_genfun_corollaries});
    const std::vector<std::pair<std::string, qk::OrthoRelation>> orthos = {
        {"ortho.theta.aw", qk::OrthoRelation::AWO},
        {"ortho.theta.cdqh", qk::OrthoRelation::cdqHO},
        {"ortho.theta.asc", qk::OrthoRelation::ASCO},
        {"ortho.theta.cbqh", qk::OrthoRelation::cbqHO},
        {"ortho.theta.cqh", qk::OrthoRelation::cqHO},
        {"ortho.imag.theo33", qk::OrthoRelation::theo33},
        {"ortho.imag.corr311", qk::OrthoRelation::corr311},
        {"ortho.imag.corr318", qk::OrthoRelation::corr318},
        {"ortho.imag.corr326", qk::OrthoRelation::corr326},
        {"ortho.weight.w2", qk::OrthoRelation::w2},
        {"ortho.weight.w3", qk::OrthoRelation::w3},
        {"ortho.discrete.akporth", qk::OrthoRelation::AKporth},
        {"ortho.discrete.ascorthi", qk::OrthoRelation::ASCorthi},
        {"ortho.discrete.cbqhorthi", qk::OrthoRelation::cbqHorthi},
        {"ortho.discrete.dcdqiho", qk::OrthoRelation::DcdqiHO},
        {"ortho.discrete.idqiasco", qk::OrthoRelation::idqiASCO},
        {"ortho.discrete.qbesselcbqiho", qk::OrthoRelation::qBesselcbqiHO},
        {"ortho.discrete.lqjo", qk::OrthoRelation::lqJO},
        {"ortho.discrete.thm314", qk::OrthoRelation::thm314},
        {"ortho.discrete.thm316", qk::OrthoRelation::thm316},
        {"ortho.discrete.thm368", qk::OrthoRelation::thm368},
        {"ortho.discrete.thm248", qk::OrthoRelation::thm248},
        {"ortho.bilateral.eq189", qk::OrthoRelation::eq189},
        {"ortho.bilateral.thm420", qk::OrthoRelation::thm420},
        {"ortho.bilateral.cbqih", qk::OrthoRelation::cbqiH_bilateral},
        {"ortho.bilateral.ismail-masson", qk::OrthoRelation::ismail_masson},
        {"ortho.qintegral.bqjo", qk::OrthoRelation::bqJO},
        {"ortho.index.cobqj", qk::OrthoRelation::cobqJ},
        {"ortho.index.colqj", qk::OrthoRelation::colqJ},
        {"ortho.index.coqibf", qk::OrthoRelation::COqiBf}};
    for (const auto& [id, rid] : orthos)
      v.push_back({id, 1e-6, [id = id, rid](Ctx& cx) {
                     return run_ortho(cx, id, rid);
                   }});
    v.push_back({"ortho.mass.askey", 1e-7, [](Ctx& cx) {
                   return run_ortho_mass(cx, "ortho.mass.askey",
                                         qk::TotalMassId::askey_qbeta);
                 }});
    v.push_back({"ortho.mass.ismail-masson", 1e-7, [](Ctx& cx) {
                   return run_ortho_mass(cx, "ortho.mass.ismail-masson",
                                         qk::TotalMassId::ismail_masson_qbeta);
                 }});
    v.push_back({"ortho.mass.blabcd", 1e-7, [](Ctx& cx) {
                   return run_ortho_mass(cx, "ortho.mass.blabcd",
                                         qk::TotalMassId::blabcd);
                 }});
    const std::vector<std::pair<std::string, qk::OrthoRelation>> closures = {
        {"ortho.closure.cbqhorthi", qk::OrthoRelation::cbqHorthi},
        {"ortho.closure.thm368", qk::OrthoRelation::thm368},
        {"ortho.closure.thm248", qk::OrthoRelation::thm248}};
    for (const auto& [id, rid] : closures)
      v.push_back({id, 1e-6, [id = id, rid](Ctx& cx) {
                     return run_ortho_closure(cx, id, rid);
                   }});
    v.push_back({"ortho.ttrr.cqh", 1e-7, [](Ctx& cx) {
                   return run_ortho_ttrr(cx, "ortho.ttrr.cqh",
                                         qk::FamilyId::CqH,
                                         qk::OrthoRelation::cqHO);
                 }});
    v.push_back({"ortho.ttrr.asc", 1e-7, [](Ctx& cx) {
                   return run_ortho_ttrr(cx, "ortho.ttrr.asc",
                                         qk::FamilyId::ASC,
                                         qk::OrthoRelation::ASCO);
                 }});
    v.push_back({"ortho.ttrr.cdqh", 1e-7, [](Ctx& cx) {
                   return run_ortho_ttrr(cx, "ortho.ttrr.cdqh",
                                         qk::FamilyId::CDqH,
                                         qk::OrthoRelation::cdqHO);
                 }});
    for (qk::AsymLemma id : qk::all_asym_lemmas()) {
      if (id == qk::AsymLemma::lem413) continue;
      const std::string leaf = "asym." + qk::asym_lemma_name(id);
      v.push_back({leaf, 5e-2, [leaf, id](Ctx& cx) {
                     return run_asym(cx, leaf, id, std::nullopt);
                   }});
    }
    for (qk::Lem413Case cs :
         {qk::Lem413Case::less, qk::Lem413Case::greater,
          qk::Lem413Case::equal_modulus, qk::Lem413Case::critical}) {
      const std::string leaf =
          std::string("asym.lem413.") + qk::lem413_case_name(cs);
      v.push_back({leaf, 5e-2, [leaf, cs](Ctx& cx) {
                     return run_asym(cx, leaf, qk::AsymLemma::lem413, cs);
                   }});
    }
    v.push_back({"asym.darboux", 1e-4, run_asym_darboux});
    return v;
  }();
  return leaves;
}

std::vector<const Leaf*> match_suite(const std::string& suite) {
  std::string want = suite;
  if (want == "all") want.clear();
  if (want.size() > 4 && want.substr(want.size() - 4) == ".all")
    want = want.substr(0, want.size() - 4);
  std::vector<const Leaf*> out;
  for (const Leaf& l : registry()) {
    if (want.empty() || l.id == want ||
        (l.id.size() > want.size() && l.id.compare(0, want.size(), want) == 0 &&
         l.id[want.size()] == '.'))
      out.push_back(&l);
  }
  if (out.empty()) throw qk::ConfigError("unknown suite '" + suite + "'");
  return out;
}

// ---------------------------------------------------------------------------
// Suite execution (bounded worker pool, deterministic assembly).
// ---------------------------------------------------------------------------

qk::Report run_suite(const qk::SuiteConfig& cfg, const qk::GridSpec& grid,
                     std::optional<double> q_cli, bool tol_explicit,
                     bool nmax_explicit) {
  cfg.validate();
  grid.validate();
  if (q_cli && !(*q_cli > 0 && *q_cli < 1))
    throw qk::DomainError("--q must lie in (0, 1)");
  const auto leaves = match_suite(cfg.suite);
  const long long nmax = nmax_explicit ? cfg.nmax : grid.nmax;

  struct Task {
    const Leaf* leaf;
    int point;
    double tol;
  };
  std::vector<Task> tasks;
  for (const Leaf* l : leaves)
    for (int p = 0; p < grid.points; ++p)
      tasks.push_back({l, p, tol_explicit ? cfg.tol : l->tol});

  std::vector<qk::CaseRecord> records(tasks.size());
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(tasks.size());
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      Ctx cx;
      cx.grid = &grid;
      cx.q_cli = q_cli;
      cx.nmax = nmax;
      cx.point = t.point;
      cx.rng.seed(fnv1a(t.leaf->id) ^
                  (cfg.seed * 0x9e3779b97f4a7c15ull) ^
                  (std::uint64_t)t.point);
      try {
        records[i] = t.leaf->run(cx);
        records[i].pass = records[i].value <= t.tol;
      } catch (const qk::ConfigError&) {
        errors[i] = std::current_exception();
        return;
      } catch (const qk::DomainError&) {
        errors[i] = std::current_exception();
        return;
      } catch (const qk::Error& e) {
        // Numerical failures are reported as failed cases, not crashes.
        records[i].key = t.leaf->id + "#" + std::to_string(t.point);
        records[i].value = std::numeric_limits<double>::infinity();
        records[i].pass = false;
        records[i].diagnostics = e.what();
      }
    }
  };
  const unsigned nthreads =
      std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& ep : errors)
    if (ep) std::rethrow_exception(ep);

  qk::Report rep;
  rep.suite = cfg.suite;
  rep.config = {{"suite", cfg.suite},
                {"grid", grid.name},
                {"qs", grid.qs},
                {"points", grid.points},
                {"jitter", grid.jitter},
                {"nmax", nmax},
                {"tol", tol_explicit ? nlohmann::json(cfg.tol)
                                     : nlohmann::json("per-leaf")},
                {"seed", cfg.seed},
                {"precision",
                 cfg.precision == qk::Precision::wide ? "wide" : "standard"},
                {"q", q_cli ? nlohmann::json(*q_cli) : nlohmann::json()}};
  rep.cases = std::move(records);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

// ---------------------------------------------------------------------------
// Grid registry resolution.
// ---------------------------------------------------------------------------

std::string find_grid_file(const std::string& argv0) {
  if (const char* env = std::getenv("QASKEY_GRIDS")) return env;
  std::vector<std::string> candidates = {"configs/grids.json",
                                         "../configs/grids.json"};
  const size_t slash = argv0.find_last_of('/');
  if (slash != std::string::npos) {
    const std::string dir = argv0.substr(0, slash);
    candidates.push_back(dir + "/configs/grids.json");
    candidates.push_back(dir + "/../configs/grids.json");
  }
  for (const std::string& c : candidates) {
    std::ifstream f(c);
    if (f) return c;
  }
  throw qk::ConfigError(
      "grid registry not found (set QASKEY_GRIDS or run from the source "
      "tree)");
}

// ---------------------------------------------------------------------------
// eval.
// ---------------------------------------------------------------------------

qk::ParamSet<double> parse_params(const std::string& spec, double qv) {
  qk::ParamSet<double> P;
  P.base = qk::BaseQ<double>(qv);
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw qk::ConfigError("malformed --params entry '" + item +
                            "' (want name=value)");
    const std::string name = item.substr(0, eq);
    const C val = qk::parse_complex(item.substr(eq + 1));
    if (name == "a") P.a = val;
    else if (name == "b") P.b = val;
    else if (name == "c") P.c = val;
    else if (name == "d") P.d = val;
    else
      throw qk::ConfigError("unknown parameter '" + name +
                            "' (want a, b, c or d)");
  }
  return P;
}

bool is_spectral(qk::FamilyId f) {
  switch (f) {
    case qk::FamilyId::AW:
    case qk::FamilyId::CDqH:
    case qk::FamilyId::CDqiH:
    case qk::FamilyId::ASC:
    case qk::FamilyId::qiASC:
    case qk::FamilyId::CBqH:
    case qk::FamilyId::CBqiH:
    case qk::FamilyId::CqH:
    case qk::FamilyId::CqiH:
      return true;
    default:
      return false;
  }
}

qk::FamilyId family_from_cli(const std::string& s) {
  const std::string want = lower(s);
  for (qk::FamilyId f :
       {qk::FamilyId::AW, qk::FamilyId::CDqH, qk::FamilyId::CDqiH,
        qk::FamilyId::ASC, qk::FamilyId::qiASC, qk::FamilyId::CBqH,
        qk::FamilyId::CBqiH, qk::FamilyId::CqH, qk::FamilyId::CqiH,
        qk::FamilyId::BigQJacobiPoly, qk::FamilyId::BigQJacobiFn,
        qk::FamilyId::LittleQJacobiPoly, qk::FamilyId::LittleQJacobiFn,
        qk::FamilyId::QBessel, qk::FamilyId::QiBessel,
        qk::FamilyId::QiBesselFn})
    if (lower(qk::family_name(f)) == want) return f;
  throw qk::ConfigError("unknown family '" + s + "'");
}

int cmd_eval(const std::string& family, int rp, long long n,
             const std::string& zlit, double qv, const std::string& params,
             qk::Precision prec) {
  const qk::FamilyId fid = family_from_cli(family);
  const C z = qk::parse_complex(zlit);
  C value;
  if (prec == qk::Precision::wide) {
    using R = long double;
    using CW = qk::Complex<R>;
    qk::ParamSet<R> P;
    P.base = qk::BaseQ<R>((R)qv);
    const auto Pd = parse_params(params, qv);
    auto widen = [](std::optional<C> v) -> std::optional<CW> {
      if (!v) return std::nullopt;
      return CW((R)v->real(), (R)v->imag());
    };
    P.a = widen(Pd.a);
    P.b = widen(Pd.b);
    P.c = widen(Pd.c);
    P.d = widen(Pd.d);
    const CW zz((R)z.real(), (R)z.imag());
    const CW v = is_spectral(fid)
                     ? qk::eval_family(fid, rp, n, qk::PointZ<R>(zz), P)
                     : qk::eval_family(fid, rp, n, zz, P);
    value = C((double)v.real(), (double)v.imag());
  } else {
    const auto P = parse_params(params, qv);
    value = is_spectral(fid)
                ? qk::eval_family(fid, rp, n, qk::PointZ<double>(z), P)
                : qk::eval_family(fid, rp, n, z, P);
  }
  const double eps = prec == qk::Precision::wide ? 1.1e-19 : 2.3e-16;
  const double est = std::abs(value) * eps * 8.0 * double(n + 2);
  std::cout << qk::format_complex(value) << "\n";
  std::cout << "error estimate <= " << est << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// table.
// ---------------------------------------------------------------------------

void emit_row(const std::vector<std::string>& cols, char delim) {
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) std::cout << delim;
    std::cout << cols[i];
  }
  std::cout << "\n";
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

int cmd_table(const std::string& suite, std::optional<long long> from,
              std::optional<long long> to, const std::string& format) {
  const char delim = format == "tsv" ? '\t' : ',';
  if (format != "csv" && format != "tsv")
    throw qk::ConfigError("unknown --format '" + format + "' (want csv|tsv)");
  // asym.<lemma>[.<case>] tables: one row per index.
  if (suite.rfind("asym.", 0) == 0) {
    const std::string rest = suite.substr(5);
    std::optional<qk::Lem413Case> c413;
    std::string lemma = rest;
    if (rest.rfind("lem413.", 0) == 0) {
      lemma = "lem413";
      const std::string cs = rest.substr(7);
      for (qk::Lem413Case c :
           {qk::Lem413Case::less, qk::Lem413Case::greater,
            qk::Lem413Case::equal_modulus, qk::Lem413Case::critical})
        if (qk::lem413_case_name(c) == cs) c413 = c;
      if (!c413) throw qk::ConfigError("unknown lem413 case '" + cs + "'");
    }
    const qk::AsymLemma id = qk::asym_lemma_from_string(lemma);
    const auto AP = qk::asym_default_params<double>(id, c413);
    std::vector<long long> grid;
    if (from && to) {
      if (*to < *from) throw qk::ConfigError("--nmax must be >= --n");
      for (long long k = *from; k <= *to; ++k) grid.push_back(k);
    } else {
      grid = qk::asym_default_grid(id);
    }
    const auto rep = qk::verify_asym(id, grid, AP);
    emit_row({"index", "exact", "predicted", "ratio", "ratio_error"}, delim);
    for (size_t i = 0; i < grid.size(); ++i)
      emit_row({std::to_string(grid[i]), qk::format_complex(rep.exact[i]),
                qk::format_complex(rep.predicted[i]), fmt(rep.ratios[i]),
                fmt(std::abs(rep.ratios[i] - 1.0))},
               delim);
    return 0;
  }
  // ortho.<category>.<leaf> tables: one row per Gram entry.
  for (const Leaf& l : registry()) {
    if (l.id != suite) continue;
    if (suite.rfind("ortho.", 0) != 0) break;
    // Recover the relation id from the leaf by rerunning its default point.
    for (const auto& [lid, rid] :
         std::vector<std::pair<std::string, qk::OrthoRelation>>{
             {"ortho.theta.aw", qk::OrthoRelation::AWO},
             {"ortho.theta.cdqh", qk::OrthoRelation::cdqHO},
             {"ortho.theta.asc", qk::OrthoRelation::ASCO},
             {"ortho.theta.cbqh", qk::OrthoRelation::cbqHO},
             {"ortho.theta.cqh", qk::OrthoRelation::cqHO},
             {"ortho.imag.theo33", qk::OrthoRelation::theo33},
             {"ortho.imag.corr311", qk::OrthoRelation::corr311},
             {"ortho.imag.corr318", qk::OrthoRelation::corr318},
             {"ortho.imag.corr326", qk::OrthoRelation::corr326},
             {"ortho.weight.w2", qk::OrthoRelation::w2},
             {"ortho.weight.w3", qk::OrthoRelation::w3},
             {"ortho.discrete.akporth", qk::OrthoRelation::AKporth},
             {"ortho.discrete.ascorthi", qk::OrthoRelation::ASCorthi},
             {"ortho.discrete.cbqhorthi", qk::OrthoRelation::cbqHorthi},
             {"ortho.discrete.dcdqiho", qk::OrthoRelation::DcdqiHO},
             {"ortho.discrete.idqiasco", qk::OrthoRelation::idqiASCO},
             {"ortho.discrete.qbesselcbqiho",
              qk::OrthoRelation::qBesselcbqiHO},
             {"ortho.discrete.lqjo", qk::OrthoRelation::lqJO},
             {"ortho.discrete.thm314", qk::OrthoRelation::thm314},
             {"ortho.discrete.thm316", qk::OrthoRelation::thm316},
             {"ortho.discrete.thm368", qk::OrthoRelation::thm368},
             {"ortho.discrete.thm248", qk::OrthoRelation::thm248},
             {"ortho.bilateral.eq189", qk::OrthoRelation::eq189},
             {"ortho.bilateral.thm420", qk::OrthoRelation::thm420},
             {"ortho.bilateral.cbqih", qk::OrthoRelation::cbqiH_bilateral},
             {"ortho.bilateral.ismail-masson",
              qk::OrthoRelation::ismail_masson},
             {"ortho.qintegral.bqjo", qk::OrthoRelation::bqJO},
             {"ortho.index.cobqj", qk::OrthoRelation::cobqJ},
             {"ortho.index.colqj", qk::OrthoRelation::colqJ},
             {"ortho.index.coqibf", qk::OrthoRelation::COqiBf}}) {
      if (lid != suite) continue;
      const long long cap =
          to ? std::min<long long>(*to, 4) : (from ? *from : 3);
      const auto OP = qk::ortho_default_params<double>(rid);
      const auto rep = qk::verify_ortho(rid, cap, OP);
      emit_row({"n", "m", "gram", "hn", "residual"}, delim);
      for (size_t nn = 0; nn < rep.gram.size(); ++nn)
        for (size_t mm = 0; mm < rep.gram.size(); ++mm)
          emit_row({std::to_string(nn), std::to_string(mm),
                    qk::format_complex(rep.gram[nn][mm]),
                    qk::format_complex(rep.hn[nn]),
                    fmt(rep.normalized_residuals[nn][mm])},
                   delim);
      return 0;
    }
  }
  throw qk::ConfigError("no table backend for id '" + suite + "'");
}

int cmd_list(const std::string& argv0) {
  std::cout << "families:\n";
  for (qk::FamilyId f :
       {qk::FamilyId::AW, qk::FamilyId::CDqH, qk::FamilyId::CDqiH,
        qk::FamilyId::ASC, qk::FamilyId::qiASC, qk::FamilyId::CBqH,
        qk::FamilyId::CBqiH, qk::FamilyId::CqH, qk::FamilyId::CqiH,
        qk::FamilyId::BigQJacobiPoly, qk::FamilyId::BigQJacobiFn,
        qk::FamilyId::LittleQJacobiPoly, qk::FamilyId::LittleQJacobiFn,
        qk::FamilyId::QBessel, qk::FamilyId::QiBessel,
        qk::FamilyId::QiBesselFn})
    std::cout << "  " << qk::family_name(f) << " (" << qk::rep_count(f)
              << " representations)\n";
  std::cout << "suites:\n  all\n";
  for (const Leaf& l : registry()) std::cout << "  " << l.id << "\n";
  try {
    const std::string path = find_grid_file(argv0);
    std::ifstream in(path);
    nlohmann::json j;
    in >> j;
    std::cout << "grids (" << path << "):\n";
    for (const auto& [name, g] : j["grids"].items())
      std::cout << "  " << name << "\n";
  } catch (const qk::ConfigError&) {
    std::cout << "grids: (no registry found)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-Askey scheme verification toolkit"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a family member");
  std::string e_family, e_z = "2", e_params;
  int e_rep = 1;
  long long e_n = 0;
  double e_q = 0.5;
  std::string e_prec;
  eval->add_option("--family", e_family, "family id (case-insensitive)")
      ->required();
  eval->add_option("--rep", e_rep, "series representation (1-based)");
  eval->add_option("--n", e_n, "degree");
  eval->add_option("--z", e_z, "spectral point z (or x), re+imi literal");
  eval->add_option("--q", e_q, "base q");
  eval->add_option("--params", e_params, "a=..,b=..,c=..,d=.. (re+imi)");
  eval->add_option("--precision", e_prec, "standard|wide");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  qk::SuiteConfig cfg;
  std::string v_grid = "smoke", v_out, v_prec;
  double v_q = 0;
  auto* vq = verify->add_option("--q", v_q, "override base q for all cases");
  verify->add_option("--suite", cfg.suite, "suite id (dotted path or 'all')");
  verify->add_option("--grid", v_grid, "named grid from the registry");
  auto* vtol = verify->add_option("--tol", cfg.tol, "tolerance override");
  auto* vnmax = verify->add_option("--nmax", cfg.nmax, "degree cap override");
  verify->add_option("--seed", cfg.seed, "pseudo-random seed");
  verify->add_option("--precision", v_prec, "standard|wide");
  verify->add_option("--out", v_out, "report file path (default: stdout)");

  // table
  auto* table = app.add_subcommand("table", "emit a delimited table");
  std::string t_suite, t_format = "csv";
  long long t_from = 0, t_to = 0;
  table->add_option("--suite", t_suite, "relation/lemma id")->required();
  auto* tfrom = table->add_option("--n", t_from, "first index");
  auto* tto = table->add_option("--nmax", t_to, "last index");
  table->add_option("--format", t_format, "csv|tsv");

  // list
  auto* list = app.add_subcommand("list", "enumerate suites and families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (eval->parsed()) {
      const qk::Precision prec =
          e_prec.empty() ? qk::default_precision()
                         : qk::precision_from_string(e_prec);
      return cmd_eval(e_family, e_rep, e_n, e_z, e_q, e_params, prec);
    }
    if (verify->parsed()) {
      cfg.grid = v_grid;
      cfg.precision = v_prec.empty() ? qk::default_precision()
                                     : qk::precision_from_string(v_prec);
      const std::string grid_file = find_grid_file(argv[0]);
      const qk::GridSpec grid = qk::load_grid(grid_file, v_grid);
      std::optional<double> q_cli;
      if (!vq->empty()) q_cli = v_q;
      const qk::Report rep = run_suite(cfg, grid, q_cli, !vtol->empty(),
                                       !vnmax->empty());
      if (v_out.empty())
        std::cout << rep.serialize();
      else
        rep.write(v_out);
      std::cerr << "suite " << cfg.suite << ": " << rep.pass_count()
                << " passed, " << rep.fail_count() << " failed (worst "
                << rep.worst_value() << ")\n";
      return rep.all_pass() ? 0 : 1;
    }
    if (table->parsed()) {
      std::optional<long long> from, to;
      if (!tfrom->empty()) from = t_from;
      if (!tto->empty()) to = t_to;
      return cmd_table(t_suite, from, to, t_format);
    }
    if (list->parsed()) return cmd_list(argv[0]);
  } catch (const qk::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qk::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
