/**
 * @file test_duality.cpp
 * @brief Tests for the duality relations between the spectral families and
 *        the Jacobi/Bessel families, both polynomial- and function-level.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qaskey/duality.hpp"

using namespace qaskey;
using C = Complex<double>;

namespace {

ParamSet<double> base_params() {
  ParamSet<double> P;
  P.base = BaseQ<double>(0.55);
  P.a = C(1.15);
  P.b = C(0.8);
  P.c = C(0.65);
  return P;
}

}  // namespace

TEST_CASE("spectral-lattice dualities, all permutation selectors") {
  const auto P = base_params();
  for (int sel = 0; sel < 6; ++sel) {
    for (long long n = 0; n <= 3; ++n) {
      for (long long m = 0; m <= 3; ++m) {
        CHECK(verify_duality(DualityId::CDqH_BigJ, sel, m, n, P) < 1e-10);
        CHECK(verify_duality(DualityId::CDqiH_BigJ, sel, m, n, P) < 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(verify_duality(DualityId::CDqH_BigJ, 6, 1, 1, P),
                  ConfigError);
}

TEST_CASE("big q-Jacobi at spectral points of the dual family") {
  const auto P = base_params();
  for (long long n = 0; n <= 3; ++n) {
    for (long long m = 0; m <= 3; ++m) {
      CHECK(verify_duality(DualityId::BigJ_CDqiH_A, 1, m, n, P) < 1e-10);
      CHECK(verify_duality(DualityId::BigJ_CDqiH_C, 1, m, n, P) < 1e-10);
    }
  }
}

TEST_CASE("little q-Jacobi dualities, all four displays") {
  const auto P = base_params();
  for (int v = 1; v <= 4; ++v)
    for (long long n = 0; n <= 3; ++n)
      for (long long m = 0; m <= 3; ++m)
        CHECK(verify_duality(DualityId::ASC_LittleJ, v, m, n, P) < 1e-10);
  CHECK_THROWS_AS(verify_duality(DualityId::ASC_LittleJ, 5, 1, 1, P),
                  ConfigError);
}

TEST_CASE("Hermite--Bessel dualities") {
  const auto P = base_params();
  ParamSet<double> PN;  // negative Bessel parameter for the inverse form
  PN.base = P.base;
  PN.a = C(-0.6);
  for (long long n = 0; n <= 3; ++n) {
    for (long long m = 0; m <= 3; ++m) {
      CHECK(verify_duality(DualityId::CBqiH_QBessel, 1, m, n, P) < 1e-10);
      CHECK(verify_duality(DualityId::CBqiH_QBessel, 2, m, n, PN) < 1e-10);
    }
  }
}

TEST_CASE("function-level dualities at generic complex degree") {
  const auto P = base_params();
  const std::vector<C> mus = {C(0.37), C(1.21), C(0.5, 0.4)};
  for (long long n = 0; n <= 3; ++n) {
    for (const C& mu : mus) {
      CHECK(verify_duality_mu(DualityId::CDqH_BigJFn, 1, mu, n, P) < 1e-10);
      if (mu.imag() == 0.0)
        CHECK(verify_duality_mu(DualityId::CDqH_BigJFn, 2, mu, n, P) <
              1e-10);
    }
  }
  // Al-Salam--Chihara <-> little function duality has the argument
  // constraint |q^{1-n}/(ab)| < 1; use parameter points satisfying it.
  ParamSet<double> PL;
  PL.base = P.base;
  PL.a = C(2.5);
  PL.b = C(2.0);
  ParamSet<double> PL2;
  PL2.base = P.base;
  PL2.a = C(0.3);
  PL2.b = C(6.0);
  for (long long n = 0; n <= 2; ++n) {
    for (const C mu : {C(0.37), C(1.21)}) {
      CHECK(verify_duality_mu(DualityId::ASC_LittleJFn, 1, mu, n, PL) <
            1e-10);
      CHECK(verify_duality_mu(DualityId::ASC_LittleJFn, 2, mu, n, PL2) <
            1e-10);
    }
  }
  ParamSet<double> PB;
  PB.base = P.base;
  PB.a = C(-0.6);
  for (long long n = 0; n <= 3; ++n) {
    for (const C mu : {C(0.37), C(1.21), C(2.0)}) {
      CHECK(verify_duality_mu(DualityId::CBqH_QiBesselFn, 1, mu, n, P) <
            1e-10);
      CHECK(verify_duality_mu(DualityId::CBqH_QiBesselFn, 2, mu, n, PB) <
            1e-10);
    }
  }
}

TEST_CASE("function duality degenerates to polynomial duality at integer "
          "degree") {
  const auto P = base_params();
  // CBqH <-> Bessel: integer mu reproduces the polynomial-lattice relation.
  for (long long n = 0; n <= 3; ++n)
    for (const C mu : {C(0.0), C(1.0), C(3.0)})
      CHECK(verify_duality_mu(DualityId::CBqH_QiBesselFn, 1, mu, n, P) <
            1e-10);
  // CDqH <-> big function at integer mu agrees with the terminating lattice
  // relation evaluated through the polynomial family.
  const BaseQ<double>& Q = P.base;
  const double q = 0.55;
  const C a = C(1.15), b = C(0.8), c = C(0.65);
  for (long long n = 0; n <= 3; ++n) {
    for (long long m = 0; m <= 3; ++m) {
      const C fnside = fam::bqjf(ipow(C(q), -n), C(double(m)), a * b / q,
                                 a / b, a * c / q, Q);
      const C polyside = fam::bqj1(ipow(C(q), -n), m, a * b / q, a / b,
                                   a * c / q, Q);
      CHECK(std::abs(fnside - polyside) /
                std::max(1.0, std::abs(polyside)) < 1e-10);
    }
  }
}

TEST_CASE("dual point equivalence across the spectral lattice") {
  const auto P = base_params();
  for (FamilyId f : {FamilyId::CDqH, FamilyId::CDqiH, FamilyId::ASC,
                     FamilyId::qiASC, FamilyId::CBqH, FamilyId::CBqiH}) {
    for (long long m = 0; m <= 3; ++m)
      for (long long n = 0; n <= 4; ++n)
        CHECK(dual_point_equivalence(f, m, n, P) < 1e-11);
  }
  CHECK_THROWS_AS(dual_point_equivalence(FamilyId::QBessel, 1, 1, P),
                  ConfigError);
}

TEST_CASE("degree-zero collapses") {
  // At m = 0 the dual side collapses to the explicit prefactor.
  const auto P = base_params();
  const BaseQ<double>& Q = P.base;
  const C a = C(1.15), b = C(0.8);
  for (long long n = 0; n <= 4; ++n) {
    const C lhs = fam::asc1(C(1.0) / a, n, a, b, Q);  // z = q^0 / a
    const C rhs = qpoch(a * b, Q, n) / ipow(a, n);
    CHECK(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)) < 1e-12);
    const C lhsH = fam::cbqh1(a, n, a, Q);  // z = q^0 a
    const C rhsH = ipow(a, -n);
    CHECK(std::abs(lhsH - rhsH) / std::max(1.0, std::abs(rhsH)) < 1e-12);
  }
}
