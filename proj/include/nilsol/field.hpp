#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace nilsol {

namespace mp = boost::multiprecision;

using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Integer = mp::number<mp::gmp_int, mp::et_off>;
// 50 significant digits, stack allocated so that dense kernels do not hit the heap per entry.
using Real = mp::number<mp::mpfr_float_backend<50, mp::allocate_stack>, mp::et_off>;

enum class NumericMode { exact, floating };

std::string to_string(NumericMode mode);

// Tolerance applied to verdict-level decisions in floating mode.
inline constexpr double kVerdictTolerance = 1e-9;

template <class F>
struct Field;

template <>
struct Field<Rational> {
  static constexpr NumericMode mode = NumericMode::exact;
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static bool verdict_zero(const Rational& x) { return x.is_zero(); }
  static Rational magnitude(const Rational& x) { return mp::abs(x); }
  static Rational from(const Rational& q) { return q; }
  static std::string str(const Rational& x);
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
};

template <>
struct Field<Real> {
  static constexpr NumericMode mode = NumericMode::floating;
  // structural zero: far below anything the catalog produces, far above 50-digit roundoff
  static const Real& eps();
  static const Real& verdict_eps();
  static bool is_zero(const Real& x) { return mp::abs(x) <= eps(); }
  static bool verdict_zero(const Real& x) { return mp::abs(x) <= verdict_eps(); }
  static Real magnitude(const Real& x) { return mp::abs(x); }
  static Real from(const Rational& q) { return Real(q); }
  static std::string str(const Real& x);
  static double to_double(const Real& x) { return x.convert_to<double>(); }
};

template <class F>
inline constexpr bool is_exact_v = Field<F>::mode == NumericMode::exact;

// Exact rational parsed from "p", "p/q" or a finite decimal "1.25".
Rational parse_rational(const std::string& text);

// Returns the rational square root when x is a perfect square of a rational.
bool rational_sqrt(const Rational& x, Rational& root);

}  // namespace nilsol
