/**
 * @file types.hpp
 * @brief Core value types: complex scalars, the base q, spectral points,
 *        lattice points and parameter sets.
 *
 * All numerical kernels are templated on the underlying real type so that a
 * wider type (long double, double-double, ...) can be substituted behind the
 * same interface.  The library ships two instantiations: `double` (standard)
 * and `long double` (wide).
 */

#ifndef QASKEY_TYPES_HPP
#define QASKEY_TYPES_HPP

#include <cmath>
#include <complex>
#include <cstdlib>
#include <optional>
#include <string>

#include "qaskey/errors.hpp"

namespace qaskey {

/// Complex scalar over the real backend R.
template <typename R>
using Complex = std::complex<R>;

/// Default (binary64) instantiations.
using Real = double;
using Scalar = Complex<double>;

/// Wide backend.
using WideReal = long double;
using WideScalar = Complex<long double>;

/// Runtime precision selector (see environment variable QASKEY_PRECISION).
enum class Precision { standard, wide };

inline Precision precision_from_string(const std::string& s) {
  if (s == "standard") return Precision::standard;
  if (s == "wide") return Precision::wide;
  throw ConfigError("unknown precision '" + s + "' (want standard|wide)");
}

inline Precision default_precision() {
  if (const char* env = std::getenv("QASKEY_PRECISION")) {
    return precision_from_string(env);
  }
  return Precision::standard;
}

/// Regime of the base q.
///   disk       : 0 < |q| < 1
///   off_circle : q != 0 and |q| != 1 (either side of the unit circle)
enum class QRegime { disk, off_circle };

/// The base q together with its declared regime.
template <typename R>
struct BaseQ {
  Complex<R> q;
  QRegime regime = QRegime::disk;

  BaseQ() = default;
  /*implicit*/ BaseQ(Complex<R> q_, QRegime regime_ = QRegime::disk)
      : q(q_), regime(regime_) {
    validate();
  }
  /*implicit*/ BaseQ(R q_, QRegime regime_ = QRegime::disk)
      : BaseQ(Complex<R>(q_), regime_) {}

  void validate() const {
    const R aq = std::abs(q);
    if (aq == R(0)) throw DomainError("base q must be nonzero");
    if (regime == QRegime::disk) {
      if (!(aq < R(1))) throw DomainError("disk regime requires |q| < 1");
    } else {
      if (aq == R(1)) throw DomainError("off-circle regime requires |q| != 1");
    }
  }
};

/// A point q^exponent * prefactor, kept in factored form so that lattice
/// substitutions (e.g. (q^{-m} a * a^{-1}; q)_k = (q^{-m}; q)_k) can be done
/// exactly instead of through a rounded product.
template <typename R>
struct LatticePoint {
  int exponent = 0;
  Complex<R> prefactor{R(1), R(0)};

  Complex<R> value(const BaseQ<R>& base) const {
    return prefactor * std::pow(base.q, Complex<R>(R(exponent)));
  }
};

/// Spectral point z with the symmetrized x = (z + 1/z)/2.
///
/// The stored z is canonicalized to |z| >= 1, so constructing from z and from
/// 1/z yields the same representative (up to the rounding of the inversion
/// itself) and every family evaluation is invariant under z -> 1/z by
/// construction.
template <typename R>
struct PointZ {
  Complex<R> z;  ///< canonical representative, |z| >= 1
  Complex<R> x;  ///< (z + 1/z)/2

  explicit PointZ(Complex<R> z_) {
    if (z_ == Complex<R>(R(0))) throw DomainError("PointZ requires z != 0");
    z = (std::abs(z_) >= R(1)) ? z_ : Complex<R>(R(1)) / z_;
    x = (z + Complex<R>(R(1)) / z) / R(2);
  }
  explicit PointZ(R z_) : PointZ(Complex<R>(z_)) {}
};

/// Up to four family parameters plus the base.
template <typename R>
struct ParamSet {
  std::optional<Complex<R>> a, b, c, d;
  BaseQ<R> base;

  Complex<R> req(char name) const {
    const std::optional<Complex<R>>* p = nullptr;
    switch (name) {
      case 'a': p = &a; break;
      case 'b': p = &b; break;
      case 'c': p = &c; break;
      case 'd': p = &d; break;
      default: throw DomainError(std::string("unknown parameter '") + name + "'");
    }
    if (!p->has_value())
      throw DomainError(std::string("missing parameter '") + name + "'");
    if (p->value() == Complex<R>(R(0)))
      throw DomainError(std::string("parameter '") + name + "' must be nonzero");
    return p->value();
  }
};

/// binom(n,2) = n(n-1)/2 for integer and complex degrees.
inline long long c2(long long n) { return n * (n - 1) / 2; }

template <typename R>
Complex<R> c2(Complex<R> mu) {
  return mu * (mu - Complex<R>(R(1))) / R(2);
}

/// Principal-branch complex power base^expo = exp(expo * Log base).
template <typename R>
Complex<R> cpow(Complex<R> base, Complex<R> expo) {
  if (base == Complex<R>(R(0))) {
    if (expo == Complex<R>(R(0))) return Complex<R>(R(1));
    return Complex<R>(R(0));
  }
  return std::exp(expo * std::log(base));
}

/// Integer power by squaring (exact structure, avoids log/exp branch drift).
template <typename R>
Complex<R> ipow(Complex<R> base, long long n) {
  if (n < 0) return Complex<R>(R(1)) / ipow(base, -n);
  Complex<R> r(R(1));
  Complex<R> b = base;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

template <typename R>
bool is_finite(Complex<R> v) {
  return std::isfinite(static_cast<double>(v.real())) &&
         std::isfinite(static_cast<double>(v.imag()));
}

}  // namespace qaskey

#endif  // QASKEY_TYPES_HPP
