/**
 * @file test_asym.cpp
 * @brief Tests for the asymptotics module: ratio convergence for every
 *        lemma, the four-case Al-Salam--Chihara lemma with its critical
 *        correction, error-order fits, and Darboux extraction from the
 *        generating functions.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qaskey/asym.hpp"

using namespace qaskey;
using C = Complex<double>;

namespace {

const std::vector<Lem413Case> kAllCases = {
    Lem413Case::less, Lem413Case::greater, Lem413Case::equal_modulus,
    Lem413Case::critical};

void check_lemma(AsymLemma id, std::optional<Lem413Case> c413 = {}) {
  const auto AP = asym_default_params<double>(id, c413);
  const auto grid = asym_default_grid(id);
  const auto rep = verify_asym(id, grid, AP);
  REQUIRE(rep.ratios.size() == grid.size());
  // Ratio reaches 1 at the largest index and the error decays at least as
  // fast as the stated 1/index order (slope <= -0.7).
  CHECK(std::abs(rep.ratios.back() - 1.0) <= 5e-2);
  CHECK(rep.fitted_error_order <= -0.7);
  // |ratio - 1| is eventually monotone decreasing over the grid.
  const size_t n = grid.size();
  for (size_t i = n / 2; i + 1 < n; ++i)
    CHECK(std::abs(rep.ratios[i + 1] - 1.0) <=
          std::abs(rep.ratios[i] - 1.0) + 1e-15);
}

}  // namespace

TEST_CASE("every lemma converges with at least the stated error order") {
  for (AsymLemma id : all_asym_lemmas()) {
    CAPTURE(asym_lemma_name(id));
    if (id == AsymLemma::lem413) continue;
    check_lemma(id);
  }
}

TEST_CASE("lem413: all four cases including the critical correction") {
  for (Lem413Case cs : kAllCases) {
    CAPTURE(lem413_case_name(cs));
    check_lemma(AsymLemma::lem413, cs);
  }
}

TEST_CASE("lem413 case mismatches raise") {
  auto AP = asym_default_params<double>(AsymLemma::lem413, Lem413Case::less);
  AP.case413 = Lem413Case::greater;  // params have |a| < |b|
  CHECK_THROWS_AS(exact_asym(AsymLemma::lem413, 8, AP), DomainError);
  AP.case413 = Lem413Case::critical;  // a != b
  CHECK_THROWS_AS(exact_asym(AsymLemma::lem413, 8, AP), DomainError);
  AP.case413.reset();
  CHECK_THROWS_AS(exact_asym(AsymLemma::lem413, 8, AP), ConfigError);
}

TEST_CASE("lem413 two-term prediction beats either single term") {
  auto AP = asym_default_params<double>(AsymLemma::lem413,
                                        Lem413Case::equal_modulus);
  const BaseQ<double>& Q = AP.fam.base;
  const C a = *AP.fam.a, b = *AP.fam.b, z = AP.z;
  auto single = [&](C dom, C sub, long long n) {
    return ipow(-dom, n) * qpoch_inf_many(fam::zpm(C(1.0) / dom, z), Q) /
           qpoch_inf(sub / dom, Q);
  };
  for (long long n : {10LL, 14LL, 18LL}) {
    const auto pair = detail::asym_pair(AsymLemma::lem413, n, AP);
    const double two = std::abs(pair.first / pair.second - C(1.0));
    const double one_a = std::abs(pair.first / single(a, b, n) - C(1.0));
    const double one_b = std::abs(pair.first / single(b, a, n) - C(1.0));
    CHECK(two < one_a);
    CHECK(two < one_b);
  }
}

TEST_CASE("lem413 prediction is invariant under the (a, b) swap") {
  auto APl = asym_default_params<double>(AsymLemma::lem413,
                                         Lem413Case::less);
  auto APg = APl;
  std::swap(APg.fam.a, APg.fam.b);
  APg.case413 = Lem413Case::greater;
  for (long long n : {8LL, 16LL, 24LL}) {
    const C pl = detail::asym_pair(AsymLemma::lem413, n, APl).second;
    const C pg = detail::asym_pair(AsymLemma::lem413, n, APg).second;
    CHECK(std::abs(pl - pg) / std::abs(pl) < 1e-14);
  }
}

TEST_CASE("lem4.10 verifies in both lattice directions") {
  const auto AP = asym_default_params<double>(AsymLemma::lem4_10);
  auto grid = asym_default_grid(AsymLemma::lem4_10);
  const auto plus = verify_asym(AsymLemma::lem4_10, grid, AP);
  for (auto& k : grid) k = -k;
  const auto minus = verify_asym(AsymLemma::lem4_10, grid, AP);
  CHECK(std::abs(plus.ratios.back() - 1.0) < 1e-3);
  CHECK(std::abs(minus.ratios.back() - 1.0) < 1e-3);
}

TEST_CASE("predicted plug-in values") {
  // Lattice lemma prediction q^{-nm} a^n at m = 20, n = 2, a = 0.5.
  AsymParams<double> AP;
  AP.fam.base = BaseQ<double>(0.5);
  AP.fam.a = C(0.5);
  AP.fam.b = C(0.8);
  AP.fam.c = C(0.65);
  AP.fixed = 2;
  const C v = eval_asym(AsymLemma::lem346, 20, AP);
  CHECK(std::abs(v - ipow(C(0.5), -40) * C(0.25)) /
            std::abs(v) < 1e-13);
  // Critical-case prediction carries the leading (n + 1) factor.
  auto APc = asym_default_params<double>(AsymLemma::lem413,
                                         Lem413Case::critical);
  const C lam = detail::lem413_lambda(APc.z, C(0.9), APc.fam.base);
  const C p10 = detail::asym_pair(AsymLemma::lem413, 10, APc).second;
  const C p40 = detail::asym_pair(AsymLemma::lem413, 40, APc).second;
  const C g10 = p10 / ((C(11.0) + lam) * ipow(-C(0.9), 10));
  const C g40 = p40 / ((C(41.0) + lam) * ipow(-C(0.9), 40));
  CHECK(std::abs(g10 - g40) / std::abs(g10) < 1e-10);
}

TEST_CASE("exactness budget raises PrecisionError") {
  const auto AP = asym_default_params<double>(AsymLemma::lem46);
  CHECK_THROWS_AS(eval_asym(AsymLemma::lem46, 80, AP), PrecisionError);
  const auto APl = asym_default_params<double>(AsymLemma::lem413,
                                               Lem413Case::less);
  CHECK_THROWS_AS(exact_asym(AsymLemma::lem413, 200, APl), PrecisionError);
}

TEST_CASE("degenerate grid of length one: ratios only, no fit") {
  const auto AP = asym_default_params<double>(AsymLemma::lem416);
  const auto rep = verify_asym(AsymLemma::lem416, {12}, AP);
  REQUIRE(rep.ratios.size() == 1);
  CHECK(std::isnan(rep.fitted_error_order));
}

TEST_CASE("Darboux extraction from the Al-Salam--Chihara-type GF") {
  const BaseQ<double> Q(0.5);
  const C q(0.5), z(1.45);
  const PointZ<double> pt(z);
  // Simple pole at t = -1/b when |a| < |b|.
  GFParams<double> G;
  G.fam.base = Q;
  G.fam.a = C(0.7);
  G.fam.b = C(1.1);
  const C a(0.7), b(1.1);
  const C K = darboux_extract(GFId::cor_delta_gamma, -C(1.0) / b, 1, pt, G);
  const C H1 = qpoch_inf_many(fam::zpm(C(1.0) / b, z), Q) /
               (qpoch_inf(q, Q) * qpoch_inf(a / b, Q));
  CHECK(std::abs(K - H1) / std::abs(H1) < 1e-6);
  // Double pole at a = b.
  GFParams<double> G2;
  G2.fam.base = Q;
  G2.fam.a = C(1.2);
  G2.fam.b = C(1.2);
  const C a2(1.2);
  const C K2 =
      darboux_extract(GFId::cor_delta_gamma, -C(1.0) / a2, 2, pt, G2);
  const C cl2 = qpoch_inf_many(fam::zpm(C(1.0) / a2, z), Q) /
                (qpoch_inf(q, Q) * qpoch_inf(q, Q));
  CHECK(std::abs(K2 - cl2) / std::abs(cl2) < 1e-6);
  // Coefficient asymptotics: simple pole gives c_n ~ K t0^{-n}.
  const auto rep = darboux_from_gf(GFId::cor_delta_gamma, -C(1.0) / b, 1,
                                   {8, 12, 16, 20, 24}, pt, G);
  CHECK(std::abs(rep.ratios.back() - 1.0) < 1e-5);
  // Double pole gives c_n ~ K (n + 1) t0^{-n}; the residual simple-pole
  // component makes the relative error genuinely O(1/n) here.
  const auto rep2 = darboux_from_gf(GFId::cor_delta_gamma, -C(1.0) / a2, 2,
                                    {8, 12, 16, 20, 24, 32, 40}, pt, G2);
  CHECK(std::abs(rep2.ratios.back() - 1.0) < 0.15);
  for (size_t i = 0; i + 1 < rep2.ratios.size(); ++i)
    CHECK(std::abs(rep2.ratios[i + 1] - 1.0) <
          std::abs(rep2.ratios[i] - 1.0));
  // Pole-order probes that cannot stabilize.
  CHECK_THROWS_AS(
      darboux_extract(GFId::cor_delta_gamma, -C(1.0) / b, 2, pt, G),
      PoleOrderError);
  CHECK_THROWS_AS(darboux_extract(GFId::cor_delta_gamma, C(-0.4), 1, pt, G),
                  PoleOrderError);
  CHECK_THROWS_AS(
      darboux_extract(GFId::cor_delta_gamma, -C(1.0) / a2, 1, pt, G2),
      PoleOrderError);
}

TEST_CASE("lemma name round trip") {
  for (AsymLemma id : all_asym_lemmas())
    CHECK(asym_lemma_from_string(asym_lemma_name(id)) == id);
  CHECK_THROWS_AS(asym_lemma_from_string("lem999"), ConfigError);
}
