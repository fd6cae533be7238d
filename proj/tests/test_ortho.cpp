/**
 * @file test_ortho.cpp
 * @brief Tests for the orthogonality module: Gram matrices for the
 *        continuous, discrete, bilateral, q-integral, and index-transform
 *        relations, total-mass identities, discrete closures, and
 *        three-term-recurrence norm verification.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qaskey/ortho.hpp"

using namespace qaskey;
using C = Complex<double>;

namespace {

void check_report(const GramReport<double>& rep, double tol) {
  REQUIRE(rep.gram.size() == rep.hn.size());
  CHECK(rep.max_residual() < tol);
}

}  // namespace

TEST_CASE("stable lattice evaluators agree with direct evaluation") {
  const BaseQ<double> Q(0.5);
  const C q(0.5);
  const C A(2.2), B(0.7), Cc(-1.5), Ab(0.8);
  for (long long n = 0; n <= 4; ++n) {
    for (long long m = 0; m <= 5; ++m) {
      const C l1 = detail::lqj_lattice(n, m, A, B, Q);
      const C l2 = fam::lqj1(ipow(q, n), m, A, B, Q);
      CHECK(std::abs(l1 - l2) / std::max(1.0, std::abs(l1)) < 1e-9);
      const C b1 = detail::bqj_lattice(n, m, A, B, Cc, Q);
      const C b2 = fam::bqj1(ipow(q, n + 1) * A, m, A, B, Cc, Q);
      CHECK(std::abs(b1 - b2) / std::max(1.0, std::abs(b1)) < 1e-9);
      const C j1 = detail::qbes_lattice(n, m, Ab, Q);
      const C j2 = fam::qbes1(ipow(q, n), m, Ab, Q);
      CHECK(std::abs(j1 - j2) / std::max(1.0, std::abs(j1)) < 1e-9);
    }
  }
}

TEST_CASE("theta-interval relations (AW chain)") {
  for (OrthoRelation rid :
       {OrthoRelation::AWO, OrthoRelation::cdqHO, OrthoRelation::ASCO,
        OrthoRelation::cbqHO, OrthoRelation::cqHO}) {
    const auto OP = ortho_default_params<double>(rid);
    check_report(verify_ortho(rid, 3, OP), 1e-8);
  }
}

TEST_CASE("imaginary-axis relations") {
  for (OrthoRelation rid :
       {OrthoRelation::theo33, OrthoRelation::corr311,
        OrthoRelation::corr318, OrthoRelation::corr326}) {
    const auto OP = ortho_default_params<double>(rid);
    check_report(verify_ortho(rid, 3, OP), 1e-8);
  }
}

TEST_CASE("real-line weights for the q^{-1}-Hermite family") {
  check_report(
      verify_ortho(OrthoRelation::w2, 3,
                   ortho_default_params<double>(OrthoRelation::w2)),
      1e-8);
  check_report(
      verify_ortho(OrthoRelation::w3, 3,
                   ortho_default_params<double>(OrthoRelation::w3)),
      1e-8);
}

TEST_CASE("discrete relations") {
  for (OrthoRelation rid :
       {OrthoRelation::AKporth, OrthoRelation::ASCorthi,
        OrthoRelation::cbqHorthi, OrthoRelation::DcdqiHO,
        OrthoRelation::idqiASCO, OrthoRelation::qBesselcbqiHO,
        OrthoRelation::lqJO, OrthoRelation::thm314, OrthoRelation::thm316,
        OrthoRelation::thm368, OrthoRelation::thm248}) {
    CAPTURE(ortho_relation_name(rid));
    const auto OP = ortho_default_params<double>(rid);
    check_report(verify_ortho(rid, 4, OP), 1e-8);
  }
}

TEST_CASE("bilateral relations") {
  for (OrthoRelation rid :
       {OrthoRelation::eq189, OrthoRelation::thm420,
        OrthoRelation::cbqiH_bilateral, OrthoRelation::ismail_masson}) {
    CAPTURE(ortho_relation_name(rid));
    const auto OP = ortho_default_params<double>(rid);
    check_report(verify_ortho(rid, 3, OP), 1e-8);
  }
}

TEST_CASE("q-integral relation for big q-Jacobi") {
  const auto OP = ortho_default_params<double>(OrthoRelation::bqJO);
  check_report(verify_ortho(OrthoRelation::bqJO, 3, OP), 1e-8);
}

TEST_CASE("index transforms") {
  for (OrthoRelation rid : {OrthoRelation::cobqJ, OrthoRelation::colqJ,
                            OrthoRelation::COqiBf}) {
    CAPTURE(ortho_relation_name(rid));
    const auto OP = ortho_default_params<double>(rid);
    check_report(verify_ortho(rid, 2, OP), 1e-7);
  }
}

TEST_CASE("second parameter point inside the constraints") {
  for (OrthoRelation rid :
       {OrthoRelation::AWO, OrthoRelation::theo33, OrthoRelation::AKporth,
        OrthoRelation::thm316, OrthoRelation::eq189, OrthoRelation::bqJO,
        OrthoRelation::cobqJ}) {
    CAPTURE(ortho_relation_name(rid));
    const auto OP = ortho_default_params<double>(rid, 1);
    check_report(verify_ortho(rid, 2, OP), 1e-7);
  }
}

TEST_CASE("total-mass identities") {
  OrthoParams<double> OP;
  OP.fam.base = BaseQ<double>(0.5);
  OP.fam.a = C(0.3);
  OP.fam.b = C(0.25);
  OP.fam.c = C(0.2);
  OP.fam.d = C(0.15);
  OP.alpha = C(0.4, 0.3);   // f
  OP.beta = C(0.2, -0.5);   // g
  CHECK(verify_total_mass(TotalMassId::askey_qbeta, OP) < 1e-9);
  CHECK(verify_total_mass(TotalMassId::ismail_masson_qbeta, OP) < 1e-9);
  OP.alpha = C(0.9);
  CHECK(verify_total_mass(TotalMassId::blabcd, OP) < 1e-10);
}

TEST_CASE("discrete closures") {
  for (OrthoRelation rid : {OrthoRelation::cbqHorthi, OrthoRelation::thm368,
                            OrthoRelation::thm248}) {
    CAPTURE(ortho_relation_name(rid));
    const auto OP = ortho_default_params<double>(rid);
    check_report(verify_discrete_closure(rid, 4, OP), 1e-8);
  }
  CHECK_THROWS_AS(
      verify_discrete_closure(OrthoRelation::lqJO, 2,
                              ortho_default_params<double>(
                                  OrthoRelation::lqJO)),
      ConfigError);
}

TEST_CASE("three-term recurrence: extraction and norm product formula") {
  for (auto [fid, rid] :
       {std::pair{FamilyId::CqH, OrthoRelation::cqHO},
        std::pair{FamilyId::ASC, OrthoRelation::ASCO},
        std::pair{FamilyId::CDqH, OrthoRelation::cdqHO}}) {
    const auto OP = ortho_default_params<double>(rid);
    const auto res = extract_ttrr_and_verify_norm(fid, 6, OP);
    REQUIRE(res.size() == 7);
    for (double v : res) CHECK(v < 1e-7);
  }
  // Duplicated sample points give a singular linear system.
  ParamSet<double> P;
  P.base = BaseQ<double>(0.5);
  CHECK_THROWS_AS(
      extract_ttrr(FamilyId::CqH, 2, P, {0.5, 0.5, 2.1}),
      SingularSystemError);
}

TEST_CASE("Gram matrices are symmetric with matching degrees") {
  const auto OP = ortho_default_params<double>(OrthoRelation::ASCO);
  const auto rep = verify_ortho(OrthoRelation::ASCO, 3, OP);
  for (size_t n = 0; n < rep.gram.size(); ++n) {
    CHECK(rep.degrees[n] == static_cast<long long>(n));
    for (size_t m = 0; m < rep.gram.size(); ++m)
      CHECK(std::abs(rep.gram[n][m] - rep.gram[m][n]) == 0.0);
  }
}

TEST_CASE("domain violations raise") {
  auto OP = ortho_default_params<double>(OrthoRelation::AWO);
  OP.fam.a = C(1.2);  // theta-interval weight needs |a| < 1
  CHECK_THROWS_AS(verify_ortho(OrthoRelation::AWO, 2, OP), DomainError);
  auto OP2 = ortho_default_params<double>(OrthoRelation::AKporth);
  OP2.fam.a = C(0.9);  // lattice relations need |a| > 1
  CHECK_THROWS_AS(verify_ortho(OrthoRelation::AKporth, 2, OP2), DomainError);
  auto OP3 = ortho_default_params<double>(OrthoRelation::thm314);
  OP3.fam.a = C(0.9);
  OP3.fam.b = C(0.7);  // needs |ab| > 1
  CHECK_THROWS_AS(verify_ortho(OrthoRelation::thm314, 2, OP3), DomainError);
  auto OP4 = ortho_default_params<double>(OrthoRelation::COqiBf);
  OP4.fam.a = C(-0.5);  // needs a < -1
  CHECK_THROWS_AS(verify_ortho(OrthoRelation::COqiBf, 2, OP4), DomainError);
  auto OP5 = ortho_default_params<double>(OrthoRelation::colqJ);
  OP5.fam.a = C(0.9);
  OP5.fam.b = C(3.0);  // violates |qab| < 1
  CHECK_THROWS_AS(verify_ortho(OrthoRelation::colqJ, 2, OP5), DomainError);
}

TEST_CASE("relation name round trip") {
  for (OrthoRelation r : all_ortho_relations())
    CHECK(ortho_relation_from_string(ortho_relation_name(r)) == r);
  CHECK(all_ortho_relations().size() == 30);
  CHECK_THROWS_AS(ortho_relation_from_string("nope"), ConfigError);
}
