/**
 * @file families.hpp
 * @brief Terminating basic hypergeometric representations of the q and
 *        q^{-1} symmetric polynomial families (Askey--Wilson subchain), the
 *        big/little q-Jacobi polynomials and functions, and the q and q^{-1}
 *        Bessel polynomials and functions, together with limit-chain,
 *        q-inversion, symmetry and connection-relation checks.
 *
 * Spectral families are evaluated on the symmetrized point x = (z+1/z)/2 via
 * PointZ; Jacobi/Bessel families take the argument x directly.  Each family
 * exposes every listed representation; eval_family_auto falls back to another
 * representation when a denominator parameter approaches the q^{-k} grid.
 */

#ifndef QASKEY_FAMILIES_HPP
#define QASKEY_FAMILIES_HPP

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "qaskey/series.hpp"

namespace qaskey {

enum class FamilyId {
  AW,
  CDqH,
  CDqiH,
  ASC,
  qiASC,
  CBqH,
  CBqiH,
  CqH,
  CqiH,
  BigQJacobiPoly,
  BigQJacobiFn,
  LittleQJacobiPoly,
  LittleQJacobiFn,
  QBessel,
  QiBessel,
  QiBesselFn
};

/// Number of listed series representations for a family.
inline int rep_count(FamilyId f) {
  switch (f) {
    case FamilyId::AW: return 3;
    case FamilyId::CDqH: return 4;
    case FamilyId::CDqiH: return 4;
    case FamilyId::ASC: return 5;
    case FamilyId::qiASC: return 5;
    case FamilyId::CBqH: return 4;
    case FamilyId::CBqiH: return 4;
    case FamilyId::CqH: return 1;
    case FamilyId::CqiH: return 1;
    case FamilyId::BigQJacobiPoly: return 3;
    case FamilyId::BigQJacobiFn: return 1;
    case FamilyId::LittleQJacobiPoly: return 3;
    case FamilyId::LittleQJacobiFn: return 1;
    case FamilyId::QBessel: return 5;
    case FamilyId::QiBessel: return 5;
    case FamilyId::QiBesselFn: return 1;
  }
  throw ConfigError("unknown family id");
}

inline FamilyId family_from_string(const std::string& s) {
  if (s == "AW") return FamilyId::AW;
  if (s == "CDqH") return FamilyId::CDqH;
  if (s == "CDqiH") return FamilyId::CDqiH;
  if (s == "ASC") return FamilyId::ASC;
  if (s == "qiASC") return FamilyId::qiASC;
  if (s == "CBqH") return FamilyId::CBqH;
  if (s == "CBqiH") return FamilyId::CBqiH;
  if (s == "CqH") return FamilyId::CqH;
  if (s == "CqiH") return FamilyId::CqiH;
  if (s == "BigQJacobiPoly") return FamilyId::BigQJacobiPoly;
  if (s == "BigQJacobiFn") return FamilyId::BigQJacobiFn;
  if (s == "LittleQJacobiPoly") return FamilyId::LittleQJacobiPoly;
  if (s == "LittleQJacobiFn") return FamilyId::LittleQJacobiFn;
  if (s == "QBessel") return FamilyId::QBessel;
  if (s == "QiBessel") return FamilyId::QiBessel;
  if (s == "QiBesselFn") return FamilyId::QiBesselFn;
  throw ConfigError("unknown family '" + s + "'");
}

inline const char* family_name(FamilyId f) {
  switch (f) {
    case FamilyId::AW: return "AW";
    case FamilyId::CDqH: return "CDqH";
    case FamilyId::CDqiH: return "CDqiH";
    case FamilyId::ASC: return "ASC";
    case FamilyId::qiASC: return "qiASC";
    case FamilyId::CBqH: return "CBqH";
    case FamilyId::CBqiH: return "CBqiH";
    case FamilyId::CqH: return "CqH";
    case FamilyId::CqiH: return "CqiH";
    case FamilyId::BigQJacobiPoly: return "BigQJacobiPoly";
    case FamilyId::BigQJacobiFn: return "BigQJacobiFn";
    case FamilyId::LittleQJacobiPoly: return "LittleQJacobiPoly";
    case FamilyId::LittleQJacobiFn: return "LittleQJacobiFn";
    case FamilyId::QBessel: return "QBessel";
    case FamilyId::QiBessel: return "QiBessel";
    case FamilyId::QiBesselFn: return "QiBesselFn";
  }
  return "?";
}

/// Degree cap beyond which q^{-2 binom(n,2)} growth exhausts the real type.
template <typename R>
constexpr long long degree_cap() {
  return (std::numeric_limits<R>::max_exponent10 > 400) ? 40 : 20;
}

/// Proximity threshold for singular-representation detection.
template <typename R>
constexpr R delta_sing() {
  return R(1e-9);
}

namespace fam {

/// Throw SingularRepresentationError if any parameter lies within delta_sing
/// of the forbidden grid {q^{-k} : 0 <= k <= n-1} (these appear either as
/// series denominator parameters or inside divided q-Pochhammer prefactors).
template <typename R>
void guard(const std::vector<Complex<R>>& params, const BaseQ<R>& base,
           long long n) {
  const Complex<R> q = base.q;
  for (const auto& d : params) {
    Complex<R> qmk(R(1));
    for (long long k = 0; k < n; ++k) {
      if (std::abs(d - qmk) <
          delta_sing<R>() * std::max(R(1), std::abs(qmk)))
        throw SingularRepresentationError(
            "representation parameter within delta of the q^{-k} grid");
      qmk /= q;
    }
  }
}

template <typename R>
void check_degree(long long n) {
  if (n < 0) throw DomainError("family degree must be >= 0");
  if (n > degree_cap<R>())
    throw PrecisionError("degree exceeds the cap of the active real type");
}

/// {c z, c / z}
template <typename R>
std::vector<Complex<R>> zpm(Complex<R> c, Complex<R> z) {
  return {c * z, c / z};
}

// --- Askey--Wilson -------------------------------------------------------

template <typename R>
Complex<R> aw1(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
               Complex<R> c, Complex<R> d, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({a * b, a * c, a * d}, Q, n);
  return ipow(a, -n) * qpoch_many<R>({a * b, a * c, a * d}, Q, n) *
         phi<R>({ipow(q, -n), ipow(q, n - 1) * a * b * c * d, a * z, a / z},
                {a * b, a * c, a * d}, Q, q, n);
}

template <typename R>
Complex<R> aw2(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
               Complex<R> c, Complex<R> d, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  const Complex<R> abcd = a * b * c * d;
  guard<R>({ipow(q, 2 - 2 * n) / abcd, ipow(q, 1 - n) * z / a,
            ipow(q, 1 - n) / (a * z)},
           Q, n);
  return ipow(q, -c2(n)) * ipow(-a, -n) * qpoch(abcd / q, Q, 2 * n) /
         qpoch(abcd / q, Q, n) * qpoch_many(zpm(a, z), Q, n) *
         phi<R>({ipow(q, -n), ipow(q, 1 - n) / (a * b),
                 ipow(q, 1 - n) / (a * c), ipow(q, 1 - n) / (a * d)},
                {ipow(q, 2 - 2 * n) / abcd, ipow(q, 1 - n) * z / a,
                 ipow(q, 1 - n) / (a * z)},
                Q, q, n);
}

template <typename R>
Complex<R> aw3(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
               Complex<R> c, Complex<R> d, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({a * b, ipow(q, 1 - n) * z / c, ipow(q, 1 - n) * z / d}, Q, n);
  return ipow(z, n) * qpoch_many<R>({a * b, c / z, d / z}, Q, n) *
         phi<R>({ipow(q, -n), a * z, b * z, ipow(q, 1 - n) / (c * d)},
                {a * b, ipow(q, 1 - n) * z / c, ipow(q, 1 - n) * z / d}, Q, q,
                n);
}

// --- continuous dual q-Hahn ----------------------------------------------

template <typename R>
Complex<R> cdqh1(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                 Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({a * b, a * c}, Q, n);
  return ipow(a, -n) * qpoch_many<R>({a * b, a * c}, Q, n) *
         phi<R>({ipow(q, -n), a * z, a / z}, {a * b, a * c}, Q, q, n);
}

template <typename R>
Complex<R> cdqh2(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                 Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard(zpm(ipow(q, 1 - n) / a, z), Q, n);
  return ipow(q, -c2(n)) * ipow(-a, -n) * qpoch_many(zpm(a, z), Q, n) *
         phi<R>({ipow(q, -n), ipow(q, 1 - n) / (a * b),
                 ipow(q, 1 - n) / (a * c)},
                zpm(ipow(q, 1 - n) / a, z), Q, ipow(q, n) * b * c, n);
}

template <typename R>
Complex<R> cdqh3(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                 Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({a * b, ipow(q, 1 - n) * z / c}, Q, n);
  return ipow(z, n) * qpoch_many<R>({a * b, c / z}, Q, n) *
         phi<R>({ipow(q, -n), a * z, b * z},
                {a * b, ipow(q, 1 - n) * z / c}, Q, q / (c * z), n);
}

template <typename R>
Complex<R> cdqh4(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                 Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) * z / a, ipow(q, 1 - n) * z / b}, Q, n);
  return ipow(z, n) * qpoch_many<R>({a / z, b / z}, Q, n) *
         phi<R>({ipow(q, -n), c * z, ipow(q, 1 - n) / (a * b)},
                {ipow(q, 1 - n) * z / a, ipow(q, 1 - n) * z / b}, Q, q, n);
}

// --- continuous dual q^{-1}-Hahn -----------------------------------------

template <typename R>
Complex<R> cdqih1(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                  Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({Complex<R>(R(1)) / (a * b), Complex<R>(R(1)) / (a * c)}, Q, n);
  return ipow(q, -2 * c2(n)) * ipow(a * b * c, n) *
         qpoch_many<R>({Complex<R>(R(1)) / (a * b),
                        Complex<R>(R(1)) / (a * c)},
                       Q, n) *
         phi<R>({ipow(q, -n), z / a, Complex<R>(R(1)) / (a * z)},
                {Complex<R>(R(1)) / (a * b), Complex<R>(R(1)) / (a * c)}, Q,
                ipow(q, n) / (b * c), n);
}

template <typename R>
Complex<R> cdqih2(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                  Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard(zpm(ipow(q, 1 - n) * a, z), Q, n);
  return ipow(q, -c2(n)) * ipow(-a, n) *
         qpoch_many(zpm(Complex<R>(R(1)) / a, z), Q, n) *
         phi<R>({ipow(q, -n), ipow(q, 1 - n) * a * b, ipow(q, 1 - n) * a * c},
                zpm(ipow(q, 1 - n) * a, z), Q, q, n);
}

template <typename R>
Complex<R> cdqih3(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                  Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) * c / z, Complex<R>(R(1)) / (a * b)}, Q, n);
  return ipow(q, -2 * c2(n)) * ipow(a * b * c, n) *
         qpoch_many<R>({Complex<R>(R(1)) / (a * b), z / c}, Q, n) *
         phi<R>({ipow(q, -n), Complex<R>(R(1)) / (a * z),
                 Complex<R>(R(1)) / (b * z)},
                {ipow(q, 1 - n) * c / z, Complex<R>(R(1)) / (a * b)}, Q, q,
                n);
}

template <typename R>
Complex<R> cdqih4(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                  Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) * a / z, ipow(q, 1 - n) * b / z}, Q, n);
  return ipow(q, -2 * c2(n)) * ipow(a * b / z, n) *
         qpoch_many<R>({z / a, z / b}, Q, n) *
         phi<R>({ipow(q, -n), Complex<R>(R(1)) / (c * z),
                 ipow(q, 1 - n) * a * b},
                {ipow(q, 1 - n) * a / z, ipow(q, 1 - n) * b / z}, Q,
                q * c / z, n);
}

// --- Al-Salam--Chihara ----------------------------------------------------

template <typename R>
Complex<R> asc1(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({a * b}, Q, n);
  return ipow(a, -n) * qpoch(a * b, Q, n) *
         phi<R>({ipow(q, -n), a * z, a / z}, {a * b, Complex<R>(R(0))}, Q, q,
                n);
}

template <typename R>
Complex<R> asc2(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard(zpm(ipow(q, 1 - n) / a, z), Q, n);
  return ipow(q, -c2(n)) * ipow(-a, -n) * qpoch_many(zpm(a, z), Q, n) *
         phi<R>({ipow(q, -n), ipow(q, 1 - n) / (a * b)},
                zpm(ipow(q, 1 - n) / a, z), Q, q * b / a, n);
}

template <typename R>
Complex<R> asc3(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) * z / a, ipow(q, 1 - n) * z / b}, Q, n);
  return ipow(z, n) * qpoch_many<R>({a / z, b / z}, Q, n) *
         phi<R>({ipow(q, -n), ipow(q, 1 - n) / (a * b), Complex<R>(R(0))},
                {ipow(q, 1 - n) * z / a, ipow(q, 1 - n) * z / b}, Q, q, n);
}

template <typename R>
Complex<R> asc4(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) * z / a}, Q, n);
  return ipow(z, n) * qpoch(a / z, Q, n) *
         phi<R>({ipow(q, -n), b * z}, {ipow(q, 1 - n) * z / a}, Q,
                q / (a * z), n);
}

template <typename R>
Complex<R> asc5(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({a * b}, Q, n);
  return ipow(z, n) * qpoch(a * b, Q, n) *
         phi<R>({ipow(q, -n), a * z, b * z}, {a * b}, Q,
                ipow(q, n) / (z * z), n);
}

// --- q^{-1}-Al-Salam--Chihara ----------------------------------------------

template <typename R>
Complex<R> qiasc1(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({Complex<R>(R(1)) / (a * b)}, Q, n);
  return ipow(q, -c2(n)) * ipow(-b, n) *
         qpoch(Complex<R>(R(1)) / (a * b), Q, n) *
         phi<R>({ipow(q, -n), z / a, Complex<R>(R(1)) / (a * z)},
                {Complex<R>(R(1)) / (a * b)}, Q, ipow(q, n) * a / b, n);
}

template <typename R>
Complex<R> qiasc2(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard(zpm(ipow(q, 1 - n) * a, z), Q, n);
  return ipow(q, -c2(n)) * ipow(-a, n) *
         qpoch_many(zpm(Complex<R>(R(1)) / a, z), Q, n) *
         phi<R>({ipow(q, -n), ipow(q, 1 - n) * a * b, Complex<R>(R(0))},
                zpm(ipow(q, 1 - n) * a, z), Q, q, n);
}

template <typename R>
Complex<R> qiasc3(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) * a * z}, Q, n);
  return ipow(q, -c2(n)) * ipow(-a, n) *
         qpoch(Complex<R>(R(1)) / (a * z), Q, n) *
         phi<R>({ipow(q, -n), z / b}, {ipow(q, 1 - n) * a * z}, Q, q * b * z,
                n);
}

template <typename R>
Complex<R> qiasc4(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) * a * z, ipow(q, 1 - n) * b * z}, Q, n);
  return ipow(q, -2 * c2(n)) * ipow(a * b * z, n) *
         qpoch_many<R>({Complex<R>(R(1)) / (a * z),
                        Complex<R>(R(1)) / (b * z)},
                       Q, n) *
         phi<R>({ipow(q, -n), ipow(q, 1 - n) * a * b},
                {ipow(q, 1 - n) * a * z, ipow(q, 1 - n) * b * z}, Q,
                q * z * z, n);
}

template <typename R>
Complex<R> qiasc5(Complex<R> z, long long n, Complex<R> a, Complex<R> b,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({Complex<R>(R(1)) / (a * b)}, Q, n);
  return ipow(q, -c2(n)) * ipow(-a * b * z, n) *
         qpoch(Complex<R>(R(1)) / (a * b), Q, n) *
         phi<R>({ipow(q, -n), Complex<R>(R(1)) / (a * z),
                 Complex<R>(R(1)) / (b * z)},
                {Complex<R>(R(1)) / (a * b), Complex<R>(R(0))}, Q, q, n);
}

// --- continuous big q-Hermite ----------------------------------------------

template <typename R>
Complex<R> cbqh1(Complex<R> z, long long n, Complex<R> a, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(a, -n) * phi<R>({ipow(q, -n), a * z, a / z},
                              {Complex<R>(R(0)), Complex<R>(R(0))}, Q, q, n);
}

template <typename R>
Complex<R> cbqh2(Complex<R> z, long long n, Complex<R> a, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard(zpm(ipow(q, 1 - n) / a, z), Q, n);
  return ipow(q, -c2(n)) * ipow(-a, -n) * qpoch_many(zpm(a, z), Q, n) *
         phi<R>({ipow(q, -n)}, zpm(ipow(q, 1 - n) / a, z), Q,
                ipow(q, 2 - n) / (a * a), n);
}

template <typename R>
Complex<R> cbqh3(Complex<R> z, long long n, Complex<R> a, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) * z / a}, Q, n);
  return ipow(z, n) * qpoch(a / z, Q, n) *
         phi<R>({ipow(q, -n), Complex<R>(R(0))}, {ipow(q, 1 - n) * z / a}, Q,
                q / (a * z), n);
}

template <typename R>
Complex<R> cbqh4(Complex<R> z, long long n, Complex<R> a, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(z, n) *
         phi<R>({ipow(q, -n), a * z}, {}, Q, ipow(q, n) / (z * z), n);
}

// --- continuous big q^{-1}-Hermite ------------------------------------------

template <typename R>
Complex<R> cbqih1(Complex<R> z, long long n, Complex<R> a,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(a, -n) * phi<R>({ipow(q, -n), z / a,
                               Complex<R>(R(1)) / (a * z)},
                              {}, Q, ipow(q, n) * a * a, n);
}

template <typename R>
Complex<R> cbqih2(Complex<R> z, long long n, Complex<R> a,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard(zpm(ipow(q, 1 - n) * a, z), Q, n);
  return ipow(q, -c2(n)) * ipow(-a, n) *
         qpoch_many(zpm(Complex<R>(R(1)) / a, z), Q, n) *
         phi<R>({ipow(q, -n), Complex<R>(R(0)), Complex<R>(R(0))},
                zpm(ipow(q, 1 - n) * a, z), Q, q, n);
}

template <typename R>
Complex<R> cbqih3(Complex<R> z, long long n, Complex<R> a,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) * a * z}, Q, n);
  return ipow(q, -c2(n)) * ipow(-a, n) *
         qpoch(Complex<R>(R(1)) / (a * z), Q, n) *
         phi<R>({ipow(q, -n)}, {ipow(q, 1 - n) * a * z}, Q, q * z * z, n);
}

template <typename R>
Complex<R> cbqih4(Complex<R> z, long long n, Complex<R> a,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(z, n) * phi<R>({ipow(q, -n), Complex<R>(R(1)) / (a * z)},
                             {Complex<R>(R(0))}, Q, q * a / z, n);
}

// --- continuous q-Hermite / q^{-1}-Hermite ----------------------------------

template <typename R>
Complex<R> cqh(Complex<R> z, long long n, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(z, n) * phi<R>({ipow(q, -n), Complex<R>(R(0))}, {}, Q,
                             ipow(q, n) / (z * z), n);
}

template <typename R>
Complex<R> cqih(Complex<R> z, long long n, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(z, n) * phi<R>({ipow(q, -n)}, {Complex<R>(R(0))}, Q,
                             q / (z * z), n);
}

// --- big q-Jacobi -----------------------------------------------------------

template <typename R>
Complex<R> bqj1(Complex<R> x, long long n, Complex<R> a, Complex<R> b,
                Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({q * a, q * c}, Q, n);
  return phi<R>({ipow(q, -n), ipow(q, n + 1) * a * b, x}, {q * a, q * c}, Q,
                q, n);
}

template <typename R>
Complex<R> bqj2(Complex<R> x, long long n, Complex<R> a, Complex<R> b,
                Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({q * a, q * c, ipow(q, 1 - n) * c / (b * x)}, Q, n);
  return ipow(q, c2(n)) * ipow(-q * a, n) * qpoch(b * x / c, Q, n) /
         qpoch(q * a, Q, n) *
         phi<R>({ipow(q, -n), ipow(q, -n) * c / (a * b), q * c / x},
                {q * c, ipow(q, 1 - n) * c / (b * x)}, Q, q, n);
}

template <typename R>
Complex<R> bqj3(Complex<R> x, long long n, Complex<R> a, Complex<R> b,
                Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({q * a, q * c, ipow(q, 1 - n) * c / (b * x)}, Q, n);
  return ipow(q, c2(n)) * ipow(-q * c, n) * qpoch(b * x / c, Q, n) /
         qpoch(q * c, Q, n) *
         phi<R>({ipow(q, -n), ipow(q, -n) / b, q * a / x},
                {q * a, ipow(q, 1 - n) * c / (b * x)}, Q, q, n);
}

/// Big q-Jacobi function (arbitrary degree mu).
template <typename R>
Complex<R> bqjf(Complex<R> x, Complex<R> mu, Complex<R> a, Complex<R> b,
                Complex<R> c, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return phi<R>({cpow(q, -mu), cpow(q, mu + Complex<R>(R(1))) * a * b, x},
                {q * a, q * c}, Q, q);
}

// --- little q-Jacobi --------------------------------------------------------

template <typename R>
Complex<R> lqj1(Complex<R> x, long long n, Complex<R> a, Complex<R> b,
                const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({q * a}, Q, n);
  return phi<R>({ipow(q, -n), ipow(q, n + 1) * a * b}, {q * a}, Q, q * x, n);
}

template <typename R>
Complex<R> lqj2(Complex<R> x, long long n, Complex<R> a, Complex<R> b,
                const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({q * a, q * b}, Q, n);
  return ipow(q, -c2(n)) * ipow(-q * b, -n) * qpoch(q * b, Q, n) /
         qpoch(q * a, Q, n) *
         phi<R>({ipow(q, -n), ipow(q, n + 1) * a * b, q * b * x},
                {q * b, Complex<R>(R(0))}, Q, q, n);
}

template <typename R>
Complex<R> lqj3(Complex<R> x, long long n, Complex<R> a, Complex<R> b,
                const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({q * a, ipow(q, -n) / (b * x)}, Q, n);
  return qpoch(q * b * x, Q, n) *
         phi<R>({ipow(q, -n), ipow(q, -n) / b, Complex<R>(R(0))},
                {q * a, ipow(q, -n) / (b * x)}, Q, q, n);
}

/// Little q-Jacobi function (arbitrary degree mu).
template <typename R>
Complex<R> lqjf(Complex<R> x, Complex<R> mu, Complex<R> a, Complex<R> b,
                const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return phi<R>({cpow(q, -mu), cpow(q, mu + Complex<R>(R(1))) * a * b},
                {q * a}, Q, q * x);
}

// --- q-Bessel ---------------------------------------------------------------

template <typename R>
Complex<R> qbes1(Complex<R> x, long long n, Complex<R> a, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return phi<R>({ipow(q, -n), -ipow(q, n) * a}, {Complex<R>(R(0))}, Q, q * x,
                n);
}

template <typename R>
Complex<R> qbes2(Complex<R> x, long long n, Complex<R> a, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(-ipow(q, n) * a * x, n) *
         phi<R>({ipow(q, -n), Complex<R>(R(1)) / x}, {Complex<R>(R(0))}, Q,
                -ipow(q, 1 - n) / a, n);
}

template <typename R>
Complex<R> qbes3(Complex<R> x, long long n, Complex<R> a, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) * x}, Q, n);
  return ipow(q, -c2(n)) * ipow(-x, n) * qpoch(Complex<R>(R(1)) / x, Q, n) *
         phi<R>({ipow(q, -n)}, {ipow(q, 1 - n) * x}, Q,
                -ipow(q, n + 1) * a * x, n);
}

template <typename R>
Complex<R> qbes4(Complex<R> x, long long n, Complex<R> a, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(q, 2 * c2(n)) * ipow(-q * a, n) *
         phi<R>({ipow(q, -n), -ipow(q, n) * a, Complex<R>(R(1)) / x}, {}, Q,
                -x / a, n);
}

template <typename R>
Complex<R> qbes5(Complex<R> x, long long n, Complex<R> a, const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) * x, -ipow(q, 1 - 2 * n) / a}, Q, n);
  return ipow(q, -c2(n)) * ipow(-x, n) * qpoch(Complex<R>(R(1)) / x, Q, n) *
         qpoch(-a, Q, 2 * n) / qpoch(-a, Q, n) *
         phi<R>({ipow(q, -n), Complex<R>(R(0)), Complex<R>(R(0))},
                {ipow(q, 1 - n) * x, -ipow(q, 1 - 2 * n) / a}, Q, q, n);
}

// --- q^{-1}-Bessel ----------------------------------------------------------

template <typename R>
Complex<R> qibes1(Complex<R> x, long long n, Complex<R> a,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return phi<R>({ipow(q, -n), -ipow(q, n) / a}, {}, Q, -a * x, n);
}

template <typename R>
Complex<R> qibes2(Complex<R> x, long long n, Complex<R> a,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(q, -2 * c2(n)) * ipow(-a * x / q, n) *
         phi<R>({ipow(q, -n), x}, {}, Q, -ipow(q, 2 * n) / (a * x), n);
}

template <typename R>
Complex<R> qibes3(Complex<R> x, long long n, Complex<R> a,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({ipow(q, 1 - n) / x}, Q, n);
  return qpoch(x, Q, n) *
         phi<R>({ipow(q, -n), Complex<R>(R(0))}, {ipow(q, 1 - n) / x}, Q,
                -ipow(q, 1 - n) * a, n);
}

template <typename R>
Complex<R> qibes4(Complex<R> x, long long n, Complex<R> a,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return ipow(q, -2 * c2(n)) * ipow(-a / q, n) *
         phi<R>({ipow(q, -n), -ipow(q, n) / a, x},
                {Complex<R>(R(0)), Complex<R>(R(0))}, Q, q, n);
}

template <typename R>
Complex<R> qibes5(Complex<R> x, long long n, Complex<R> a,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  guard<R>({-ipow(q, 1 - 2 * n) * a, ipow(q, 1 - n) / x}, Q, n);
  return ipow(q, -3 * c2(n)) * ipow(a / q, n) * qpoch(x, Q, n) *
         qpoch(-Complex<R>(R(1)) / a, Q, 2 * n) /
         qpoch(-Complex<R>(R(1)) / a, Q, n) *
         phi<R>({ipow(q, -n)},
                {-ipow(q, 1 - 2 * n) * a, ipow(q, 1 - n) / x}, Q,
                -ipow(q, 2 - 2 * n) * a / x, n);
}

/// q^{-1}-Bessel function (arbitrary degree mu).
template <typename R>
Complex<R> qibesf(Complex<R> x, Complex<R> mu, Complex<R> a,
                  const BaseQ<R>& Q) {
  const Complex<R> q = Q.q;
  return cpow(q, Complex<R>(R(-2)) * c2(mu)) * cpow(-a / q, mu) *
         phi<R>({cpow(q, -mu), -cpow(q, mu) / a, x},
                {Complex<R>(R(0)), Complex<R>(R(0))}, Q, q);
}

}  // namespace fam

// ---------------------------------------------------------------------------
// Dispatchers.
// ---------------------------------------------------------------------------

/// Evaluate a polynomial family in representation `rep` (1-based).
/// Spectral families take the symmetrized point; Jacobi/Bessel families take
/// the argument x through pt.x... see the PointZ overload and the plain-x
/// overload below.
template <typename R>
Complex<R> eval_family(FamilyId fid, int rep, long long n,
                       const PointZ<R>& pt, const ParamSet<R>& P) {
  fam::check_degree<R>(n);
  if (rep < 1 || rep > rep_count(fid))
    throw ConfigError("representation index out of range");
  const Complex<R> z = pt.z;
  const BaseQ<R>& Q = P.base;
  switch (fid) {
    case FamilyId::AW: {
      const Complex<R> a = P.req('a'), b = P.req('b'), c = P.req('c'),
                       d = P.req('d');
      switch (rep) {
        case 1: return fam::aw1(z, n, a, b, c, d, Q);
        case 2: return fam::aw2(z, n, a, b, c, d, Q);
        default: return fam::aw3(z, n, a, b, c, d, Q);
      }
    }
    case FamilyId::CDqH: {
      const Complex<R> a = P.req('a'), b = P.req('b'), c = P.req('c');
      switch (rep) {
        case 1: return fam::cdqh1(z, n, a, b, c, Q);
        case 2: return fam::cdqh2(z, n, a, b, c, Q);
        case 3: return fam::cdqh3(z, n, a, b, c, Q);
        default: return fam::cdqh4(z, n, a, b, c, Q);
      }
    }
    case FamilyId::CDqiH: {
      const Complex<R> a = P.req('a'), b = P.req('b'), c = P.req('c');
      switch (rep) {
        case 1: return fam::cdqih1(z, n, a, b, c, Q);
        case 2: return fam::cdqih2(z, n, a, b, c, Q);
        case 3: return fam::cdqih3(z, n, a, b, c, Q);
        default: return fam::cdqih4(z, n, a, b, c, Q);
      }
    }
    case FamilyId::ASC: {
      const Complex<R> a = P.req('a'), b = P.req('b');
      switch (rep) {
        case 1: return fam::asc1(z, n, a, b, Q);
        case 2: return fam::asc2(z, n, a, b, Q);
        case 3: return fam::asc3(z, n, a, b, Q);
        case 4: return fam::asc4(z, n, a, b, Q);
        default: return fam::asc5(z, n, a, b, Q);
      }
    }
    case FamilyId::qiASC: {
      const Complex<R> a = P.req('a'), b = P.req('b');
      switch (rep) {
        case 1: return fam::qiasc1(z, n, a, b, Q);
        case 2: return fam::qiasc2(z, n, a, b, Q);
        case 3: return fam::qiasc3(z, n, a, b, Q);
        case 4: return fam::qiasc4(z, n, a, b, Q);
        default: return fam::qiasc5(z, n, a, b, Q);
      }
    }
    case FamilyId::CBqH: {
      const Complex<R> a = P.req('a');
      switch (rep) {
        case 1: return fam::cbqh1(z, n, a, Q);
        case 2: return fam::cbqh2(z, n, a, Q);
        case 3: return fam::cbqh3(z, n, a, Q);
        default: return fam::cbqh4(z, n, a, Q);
      }
    }
    case FamilyId::CBqiH: {
      const Complex<R> a = P.req('a');
      switch (rep) {
        case 1: return fam::cbqih1(z, n, a, Q);
        case 2: return fam::cbqih2(z, n, a, Q);
        case 3: return fam::cbqih3(z, n, a, Q);
        default: return fam::cbqih4(z, n, a, Q);
      }
    }
    case FamilyId::CqH: return fam::cqh(z, n, Q);
    case FamilyId::CqiH: return fam::cqih(z, n, Q);
    default:
      throw ConfigError(
          "family takes the plain argument x, not a spectral point");
  }
}

/// Evaluate an x-argument polynomial family in representation `rep`.
template <typename R>
Complex<R> eval_family(FamilyId fid, int rep, long long n, Complex<R> x,
                       const ParamSet<R>& P) {
  fam::check_degree<R>(n);
  if (rep < 1 || rep > rep_count(fid))
    throw ConfigError("representation index out of range");
  const BaseQ<R>& Q = P.base;
  switch (fid) {
    case FamilyId::BigQJacobiPoly: {
      const Complex<R> a = P.req('a'), b = P.req('b'), c = P.req('c');
      switch (rep) {
        case 1: return fam::bqj1(x, n, a, b, c, Q);
        case 2: return fam::bqj2(x, n, a, b, c, Q);
        default: return fam::bqj3(x, n, a, b, c, Q);
      }
    }
    case FamilyId::LittleQJacobiPoly: {
      const Complex<R> a = P.req('a'), b = P.req('b');
      switch (rep) {
        case 1: return fam::lqj1(x, n, a, b, Q);
        case 2: return fam::lqj2(x, n, a, b, Q);
        default: return fam::lqj3(x, n, a, b, Q);
      }
    }
    case FamilyId::QBessel: {
      const Complex<R> a = P.req('a');
      switch (rep) {
        case 1: return fam::qbes1(x, n, a, Q);
        case 2: return fam::qbes2(x, n, a, Q);
        case 3: return fam::qbes3(x, n, a, Q);
        case 4: return fam::qbes4(x, n, a, Q);
        default: return fam::qbes5(x, n, a, Q);
      }
    }
    case FamilyId::QiBessel: {
      const Complex<R> a = P.req('a');
      switch (rep) {
        case 1: return fam::qibes1(x, n, a, Q);
        case 2: return fam::qibes2(x, n, a, Q);
        case 3: return fam::qibes3(x, n, a, Q);
        case 4: return fam::qibes4(x, n, a, Q);
        default: return fam::qibes5(x, n, a, Q);
      }
    }
    case FamilyId::BigQJacobiFn:
    case FamilyId::LittleQJacobiFn:
    case FamilyId::QiBesselFn:
      throw ConfigError("function families take a complex degree mu");
    default:
      throw ConfigError("family takes a spectral point, not a plain x");
  }
}

/// Evaluate a function family at arbitrary complex degree mu.
template <typename R>
Complex<R> eval_family_mu(FamilyId fid, Complex<R> mu, Complex<R> x,
                          const ParamSet<R>& P) {
  const BaseQ<R>& Q = P.base;
  switch (fid) {
    case FamilyId::BigQJacobiFn:
      return fam::bqjf(x, mu, P.req('a'), P.req('b'), P.req('c'), Q);
    case FamilyId::LittleQJacobiFn:
      return fam::lqjf(x, mu, P.req('a'), P.req('b'), Q);
    case FamilyId::QiBesselFn:
      return fam::qibesf(x, mu, P.req('a'), Q);
    default:
      throw ConfigError("not a function family");
  }
}

/// Evaluate with automatic representation fallback: tries representations in
/// order, skipping those whose parameters sit within delta of the q^{-k} grid.
template <typename R, typename Arg>
Complex<R> eval_family_auto(FamilyId fid, long long n, const Arg& arg,
                            const ParamSet<R>& P) {
  std::string last;
  for (int rep = 1; rep <= rep_count(fid); ++rep) {
    try {
      return eval_family(fid, rep, n, arg, P);
    } catch (const SingularRepresentationError& e) {
      last = e.what();
    }
  }
  throw SingularRepresentationError(
      "all representations singular at this parameter point: " + last);
}

// ---------------------------------------------------------------------------
// Verification helpers.
// ---------------------------------------------------------------------------

/// One arrow of the family limit diagram.
enum class LimitEdge {
  AW_to_CDqH,          ///< d -> 0
  CDqH_to_ASC,         ///< c -> 0
  ASC_to_CBqH,         ///< b -> 0
  CBqH_to_CqH,         ///< a -> 0
  AW_to_CDqiH,         ///< renormalized d -> 0 with reciprocal parameters
  CDqiH_to_qiASC,      ///< c -> 0
  qiASC_to_CBqiH,      ///< b -> 0
  CBqiH_to_CqiH,       ///< a -> 0
  BigQJ_to_LittleQJ,   ///< c -> infinity with rescaled argument
  LittleQJ_to_QBessel, ///< (a,b) -> (b, -a/(qb)), b -> 0
  LittleQJ_to_QiBessel ///< rescaled variant, b -> 0
};

/// Residual sequence of a limit edge over a decreasing |epsilon| grid.
template <typename R>
std::vector<R> verify_limit_chain(LimitEdge edge, long long n,
                                  Complex<R> z_or_x, const ParamSet<R>& P,
                                  const std::vector<R>& grid = {R(1e-2),
                                                                R(1e-4),
                                                                R(1e-6)}) {
  const BaseQ<R>& Q = P.base;
  const Complex<R> q = Q.q;
  std::vector<R> out;
  out.reserve(grid.size());
  auto resid = [](Complex<R> got, Complex<R> want) {
    return std::abs(got - want) / (R(1) + std::abs(want));
  };
  for (const R eps : grid) {
    Complex<R> parent, child;
    switch (edge) {
      case LimitEdge::AW_to_CDqH: {
        PointZ<R> pt(z_or_x);
        ParamSet<R> PP = P;
        PP.d = Complex<R>(eps);
        parent = eval_family_auto(FamilyId::AW, n, pt, PP);
        child = eval_family_auto(FamilyId::CDqH, n, pt, P);
        break;
      }
      case LimitEdge::CDqH_to_ASC: {
        PointZ<R> pt(z_or_x);
        ParamSet<R> PP = P;
        PP.c = Complex<R>(eps);
        parent = eval_family_auto(FamilyId::CDqH, n, pt, PP);
        child = eval_family_auto(FamilyId::ASC, n, pt, P);
        break;
      }
      case LimitEdge::ASC_to_CBqH: {
        PointZ<R> pt(z_or_x);
        ParamSet<R> PP = P;
        PP.b = Complex<R>(eps);
        parent = eval_family_auto(FamilyId::ASC, n, pt, PP);
        child = eval_family_auto(FamilyId::CBqH, n, pt, P);
        break;
      }
      case LimitEdge::CBqH_to_CqH: {
        // Representation 4 is continuous at a = 0; representation 1 has a
        // removable 0 * infinity structure there.
        PointZ<R> pt(z_or_x);
        ParamSet<R> PP = P;
        PP.a = Complex<R>(eps);
        parent = eval_family(FamilyId::CBqH, 4, n, pt, PP);
        child = eval_family_auto(FamilyId::CqH, n, pt, P);
        break;
      }
      case LimitEdge::AW_to_CDqiH: {
        // q^{-1}-Hahn from the renormalized reciprocal-parameter limit:
        //   q^{-3C(n,2)} (-abc)^n lim_{d->0} d^n p_n(x;1/a,1/b,1/c,1/d).
        PointZ<R> pt(z_or_x);
        const Complex<R> a = P.req('a'), b = P.req('b'), c = P.req('c');
        ParamSet<R> PP;
        PP.base = Q;
        PP.a = Complex<R>(R(1)) / a;
        PP.b = Complex<R>(R(1)) / b;
        PP.c = Complex<R>(R(1)) / c;
        PP.d = Complex<R>(R(1) / eps);
        parent = ipow(q, -3 * c2(n)) * ipow(-a * b * c, n) *
                 ipow(Complex<R>(eps), n) *
                 eval_family_auto(FamilyId::AW, n, pt, PP);
        child = eval_family_auto(FamilyId::CDqiH, n, pt, P);
        break;
      }
      case LimitEdge::CDqiH_to_qiASC: {
        // Representation 2 keeps all parameters bounded as c -> 0; the
        // first representation has 1/(ac)-type factors that cancel
        // catastrophically in fixed precision.
        PointZ<R> pt(z_or_x);
        ParamSet<R> PP = P;
        PP.c = Complex<R>(eps);
        parent = eval_family(FamilyId::CDqiH, 2, n, pt, PP);
        child = eval_family_auto(FamilyId::qiASC, n, pt, P);
        break;
      }
      case LimitEdge::qiASC_to_CBqiH: {
        // Same consideration as above for b -> 0.
        PointZ<R> pt(z_or_x);
        ParamSet<R> PP = P;
        PP.b = Complex<R>(eps);
        parent = eval_family(FamilyId::qiASC, 2, n, pt, PP);
        child = eval_family_auto(FamilyId::CBqiH, n, pt, P);
        break;
      }
      case LimitEdge::CBqiH_to_CqiH: {
        // Representation 3 stays bounded as a -> 0.
        PointZ<R> pt(z_or_x);
        ParamSet<R> PP = P;
        PP.a = Complex<R>(eps);
        parent = eval_family(FamilyId::CBqiH, 3, n, pt, PP);
        child = eval_family_auto(FamilyId::CqiH, n, pt, P);
        break;
      }
      case LimitEdge::BigQJ_to_LittleQJ: {
        // p_n(x;a,b;q) = lim_{c->inf} P_n(qcx;a,b,c;q)
        ParamSet<R> PP = P;
        PP.c = Complex<R>(R(1) / eps);
        parent = eval_family_auto(FamilyId::BigQJacobiPoly, n,
                                  q * PP.c.value() * z_or_x, PP);
        child = eval_family_auto(FamilyId::LittleQJacobiPoly, n, z_or_x, P);
        break;
      }
      case LimitEdge::LittleQJ_to_QBessel: {
        // lim_{b->0} p_n(x; b, -a/(qb); q) = y_n(x;a;q)
        const Complex<R> a = P.req('a');
        ParamSet<R> PP;
        PP.base = Q;
        PP.a = Complex<R>(eps);
        PP.b = -a / (q * Complex<R>(eps));
        parent = eval_family_auto(FamilyId::LittleQJacobiPoly, n, z_or_x, PP);
        child = eval_family_auto(FamilyId::QBessel, n, z_or_x, P);
        break;
      }
      case LimitEdge::LittleQJ_to_QiBessel: {
        // lim_{b->0} p_n(x/(qb); -1/(qab), b; q) = y_n(x;a;q^{-1})
        const Complex<R> a = P.req('a');
        ParamSet<R> PP;
        PP.base = Q;
        PP.a = -Complex<R>(R(1)) / (q * a * Complex<R>(eps));
        PP.b = Complex<R>(eps);
        parent = eval_family_auto(FamilyId::LittleQJacobiPoly, n,
                                  z_or_x / (q * Complex<R>(eps)), PP);
        child = eval_family_auto(FamilyId::QiBessel, n, z_or_x, P);
        break;
      }
    }
    out.push_back(resid(parent, child));
  }
  return out;
}

/// Residual of the family's q -> q^{-1} inversion identity.
template <typename R>
R verify_q_inversion(FamilyId fid, long long n, Complex<R> z_or_x,
                     const ParamSet<R>& P) {
  const BaseQ<R>& Q = P.base;
  const Complex<R> q = Q.q;
  const BaseQ<R> Qi(Complex<R>(R(1)) / q, QRegime::off_circle);
  auto resid = [](Complex<R> lhs, Complex<R> rhs) {
    return std::abs(lhs - rhs) / (R(1) + std::abs(lhs));
  };
  switch (fid) {
    case FamilyId::AW: {
      // p_n(x|1/q) = q^{-3C(n,2)} (-abcd)^n p_n(x;1/a,1/b,1/c,1/d|q)
      PointZ<R> pt(z_or_x);
      const Complex<R> a = P.req('a'), b = P.req('b'), c = P.req('c'),
                       d = P.req('d');
      ParamSet<R> Pi;
      Pi.base = Qi;
      Pi.a = a;
      Pi.b = b;
      Pi.c = c;
      Pi.d = d;
      const Complex<R> lhs = eval_family(FamilyId::AW, 1, n, pt, Pi);
      ParamSet<R> Pr;
      Pr.base = Q;
      Pr.a = Complex<R>(R(1)) / a;
      Pr.b = Complex<R>(R(1)) / b;
      Pr.c = Complex<R>(R(1)) / c;
      Pr.d = Complex<R>(R(1)) / d;
      const Complex<R> rhs = ipow(q, -3 * c2(n)) * ipow(-a * b * c * d, n) *
                             eval_family(FamilyId::AW, 1, n, pt, Pr);
      return resid(lhs, rhs);
    }
    case FamilyId::BigQJacobiPoly: {
      // P_n(x;a,b,c|1/q): two equivalent reciprocal-parameter reductions.
      const Complex<R> a = P.req('a'), b = P.req('b'), c = P.req('c');
      ParamSet<R> Pi = P;
      Pi.base = Qi;
      const Complex<R> lhs =
          eval_family(FamilyId::BigQJacobiPoly, 1, n, z_or_x, Pi);
      const Complex<R> pre = ipow(q, -c2(n)) * ipow(-a * b / (q * c), n) *
                             qpoch(q * c / (a * b), Q, n) /
                             qpoch(q / c, Q, n);
      ParamSet<R> P1;
      P1.base = Q;
      P1.a = Complex<R>(R(1)) / a;
      P1.b = Complex<R>(R(1)) / b;
      P1.c = c / (a * b);
      ParamSet<R> P2;
      P2.base = Q;
      P2.a = c / (a * b);
      P2.b = Complex<R>(R(1)) / c;
      P2.c = Complex<R>(R(1)) / a;
      const Complex<R> arg = q * z_or_x / a;
      const Complex<R> r1 =
          pre * eval_family(FamilyId::BigQJacobiPoly, 1, n, arg, P1);
      const Complex<R> r2 =
          pre * eval_family(FamilyId::BigQJacobiPoly, 1, n, arg, P2);
      return std::max(resid(lhs, r1), resid(lhs, r2));
    }
    case FamilyId::LittleQJacobiPoly: {
      // p_n(x;a,b|1/q) = p_n(bx/q; 1/a, 1/b | q)
      const Complex<R> a = P.req('a'), b = P.req('b');
      ParamSet<R> Pi = P;
      Pi.base = Qi;
      const Complex<R> lhs =
          eval_family(FamilyId::LittleQJacobiPoly, 1, n, z_or_x, Pi);
      ParamSet<R> Pr;
      Pr.base = Q;
      Pr.a = Complex<R>(R(1)) / a;
      Pr.b = Complex<R>(R(1)) / b;
      const Complex<R> rhs = eval_family(FamilyId::LittleQJacobiPoly, 1, n,
                                         b * z_or_x / q, Pr);
      return resid(lhs, rhs);
    }
    case FamilyId::CDqiH:
    case FamilyId::qiASC:
    case FamilyId::CBqiH:
    case FamilyId::CqiH: {
      // Inverted family at base q equals the q-family at base 1/q.
      PointZ<R> pt(z_or_x);
      ParamSet<R> Pi = P;
      Pi.base = Qi;
      FamilyId mirror = fid == FamilyId::CDqiH  ? FamilyId::CDqH
                        : fid == FamilyId::qiASC ? FamilyId::ASC
                        : fid == FamilyId::CBqiH ? FamilyId::CBqH
                                                 : FamilyId::CqH;
      const Complex<R> lhs = eval_family(fid, 1, n, pt, P);
      const Complex<R> rhs = eval_family(mirror, 1, n, pt, Pi);
      return resid(lhs, rhs);
    }
    case FamilyId::QiBessel: {
      // y_n(x;a|1/q) mirror: inverted family at base q equals the q-Bessel
      // family at base 1/q.
      ParamSet<R> Pi = P;
      Pi.base = Qi;
      const Complex<R> lhs = eval_family(fid, 1, n, z_or_x, P);
      const Complex<R> rhs = eval_family(FamilyId::QBessel, 1, n, z_or_x, Pi);
      return resid(lhs, rhs);
    }
    default:
      throw ConfigError("no q-inversion identity registered for this family");
  }
}

/// Max residual over z -> 1/z and admissible parameter permutations.
template <typename R>
R verify_symmetries(FamilyId fid, long long n, Complex<R> z_or_x,
                    const ParamSet<R>& P) {
  auto resid = [](Complex<R> lhs, Complex<R> rhs) {
    return std::abs(lhs - rhs) / (R(1) + std::abs(lhs));
  };
  R worst = R(0);
  const bool spectral =
      fid == FamilyId::AW || fid == FamilyId::CDqH || fid == FamilyId::CDqiH ||
      fid == FamilyId::ASC || fid == FamilyId::qiASC ||
      fid == FamilyId::CBqH || fid == FamilyId::CBqiH ||
      fid == FamilyId::CqH || fid == FamilyId::CqiH;
  if (spectral) {
    PointZ<R> p1(z_or_x);
    PointZ<R> p2(Complex<R>(R(1)) / z_or_x);
    worst = std::max(worst, resid(eval_family_auto(fid, n, p1, P),
                                  eval_family_auto(fid, n, p2, P)));
  }
  auto perm_check = [&](std::vector<Complex<R>> vals) {
    PointZ<R> pt(z_or_x);
    const Complex<R> ref = [&] {
      ParamSet<R> PP = P;
      return eval_family_auto(fid, n, pt, PP);
    }();
    std::sort(vals.begin(), vals.end(), [](Complex<R> u, Complex<R> v) {
      return u.real() < v.real() ||
             (u.real() == v.real() && u.imag() < v.imag());
    });
    do {
      ParamSet<R> PP = P;
      PP.a = vals[0];
      PP.b = vals[1];
      if (vals.size() > 2) PP.c = vals[2];
      if (vals.size() > 3) PP.d = vals[3];
      worst = std::max(worst, resid(ref, eval_family_auto(fid, n, pt, PP)));
    } while (std::next_permutation(
        vals.begin(), vals.end(), [](Complex<R> u, Complex<R> v) {
          return u.real() < v.real() ||
                 (u.real() == v.real() && u.imag() < v.imag());
        }));
  };
  switch (fid) {
    case FamilyId::AW:
      perm_check({P.req('a'), P.req('b'), P.req('c'), P.req('d')});
      break;
    case FamilyId::CDqH:
    case FamilyId::CDqiH:
      perm_check({P.req('a'), P.req('b'), P.req('c')});
      break;
    case FamilyId::ASC:
    case FamilyId::qiASC:
      perm_check({P.req('a'), P.req('b')});
      break;
    case FamilyId::BigQJacobiPoly: {
      // P_n(x;a,b,c) = P_n(x;c,ab/c,a)
      const Complex<R> a = P.req('a'), b = P.req('b'), c = P.req('c');
      ParamSet<R> PP;
      PP.base = P.base;
      PP.a = c;
      PP.b = a * b / c;
      PP.c = a;
      worst = std::max(
          worst,
          resid(eval_family_auto(fid, n, z_or_x, P),
                eval_family_auto(FamilyId::BigQJacobiPoly, n, z_or_x, PP)));
      break;
    }
    default:
      break;  // z -> 1/z already covered for the other spectral families
  }
  return worst;
}

/// Residual of the connection relations between the continuous q-Hermite and
/// continuous q^{-1}-Hermite polynomials (finite sums over k <= n/2).
enum class ConnectionDirection { qH_from_qiH, qiH_from_qH };

template <typename R>
R connection_cqH(ConnectionDirection dir, long long n, const PointZ<R>& pt,
                 const BaseQ<R>& Q) {
  if (n > 12) throw DomainError("connection relation capped at n <= 12");
  const Complex<R> q = Q.q;
  const Complex<R> z = pt.z;
  ParamSet<R> P;
  P.base = Q;
  Complex<R> s(R(0));
  for (long long k = 0; k <= n / 2; ++k) {
    const Complex<R> common =
        Complex<R>(R(1)) / (qpoch(q, Q, k) * qpoch(q, Q, n - 2 * k));
    if (dir == ConnectionDirection::qH_from_qiH) {
      s += ipow(q, 3 * c2(k)) * ipow(-ipow(q, 1 - n), k) * common *
           fam::cqih(z, n - 2 * k, Q);
    } else {
      s += ipow(q, 2 * c2(k)) * ipow(ipow(q, 1 - n), k) * common *
           fam::cqh(z, n - 2 * k, Q);
    }
  }
  s *= qpoch(q, Q, n);
  const Complex<R> direct = (dir == ConnectionDirection::qH_from_qiH)
                                ? fam::cqh(z, n, Q)
                                : fam::cqih(z, n, Q);
  return std::abs(direct - s) / (R(1) + std::abs(direct));
}

/// Residual of the relation between the hypergeometric Jacobi functions used
/// here and their alternative normalization (two-term combination for the
/// big function; single-series identification for the little one).
enum class KsKind { bigJ, littleJ };

template <typename R>
R ks_normalization(KsKind kind, Complex<R> mu, Complex<R> x,
                   const ParamSet<R>& P) {
  const BaseQ<R>& Q = P.base;
  const Complex<R> q = Q.q;
  const Complex<R> a = P.req('a'), b = P.req('b');
  const Complex<R> A = std::sqrt(q * a * b);
  const Complex<R> Bp = std::sqrt(q * a / b);
  const Complex<R> M =
      cpow(q, mu + Complex<R>(R(0.5))) * std::sqrt(a * b);
  auto resid = [](Complex<R> lhs, Complex<R> rhs) {
    return std::abs(lhs - rhs) / (R(1) + std::abs(rhs));
  };
  if (kind == KsKind::littleJ) {
    // phi_mu(x') with x' = -x sqrt(qb/a) equals the little function.
    const Complex<R> xx = -x * std::sqrt(q * b / a);
    const Complex<R> lhs = phi<R>({A * M, A / M}, {A * Bp}, Q, -Bp * xx);
    const Complex<R> rhs = fam::lqjf(x, mu, a, b, Q);
    return resid(lhs, rhs);
  }
  // Big function: Phi_mu at x' = -x/(qa) with third parameter sqrt(qab)/c,
  // matched against the two-term combination of the big q-Jacobi function.
  const Complex<R> c = P.req('c');
  const Complex<R> Cc = std::sqrt(q * a * b) / c;
  const Complex<R> xx = -x / (q * a);
  const Complex<R> lhs =
      phi<R>({A * M, A / M, -Complex<R>(R(1)) / xx}, {A * Bp, A * Cc}, Q,
             -Bp * Cc * xx);
  const Complex<R> qmu = cpow(q, mu);
  const Complex<R> t1 =
      qpoch_inf_many<R>({q * qmu * a * b / c, Complex<R>(R(1)) / (qmu * c)},
                        Q) /
      qpoch_inf_many<R>({q * a * b / c, Complex<R>(R(1)) / c}, Q) *
      fam::bqjf(x, mu, a, b, c, Q);
  const Complex<R> t2 =
      qpoch_inf_many<R>({Complex<R>(R(1)) / qmu, x, q * qmu * a * b,
                         q * a / c},
                        Q) /
      qpoch_inf_many<R>({q * a, c, q * a * b / c, x / c}, Q) *
      phi<R>({q * qmu * a * b / c, Complex<R>(R(1)) / (qmu * c), x / c},
             {q / c, q * a / c}, Q, q);
  return resid(lhs, t1 + t2);
}

}  // namespace qaskey

#endif  // QASKEY_FAMILIES_HPP
