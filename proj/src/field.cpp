#include "nilsol/field.hpp"

#include "nilsol/errors.hpp"

#include <cctype>
#include <sstream>

namespace nilsol {

std::string to_string(NumericMode mode) { return mode == NumericMode::exact ? "exact" : "float"; }

std::string Field<Rational>::str(const Rational& x) { return x.str(); }

const Real& Field<Real>::eps() {
  static const Real e("1e-30");
  return e;
}

const Real& Field<Real>::verdict_eps() {
  static const Real e(kVerdictTolerance);
  return e;
}

std::string Field<Real>::str(const Real& x) {
  if (mp::abs(x) < Real("1e-40")) return "0";
  return x.str(20);
}

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw InvalidSpec("empty number");
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(t.substr(0, slash));
    Rational den = parse_rational(t.substr(slash + 1));
    if (den.is_zero()) throw InvalidSpec("zero denominator in '" + text + "'");
    return num / den;
  }
  bool negative = false;
  std::size_t pos = 0;
  if (t[0] == '+' || t[0] == '-') {
    negative = t[0] == '-';
    pos = 1;
  }
  Integer num = 0;
  Integer den = 1;
  bool seen_digit = false;
  bool after_point = false;
  for (; pos < t.size(); ++pos) {
    char ch = t[pos];
    if (ch == '.' && !after_point) {
      after_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw InvalidSpec("malformed number '" + text + "'");
    seen_digit = true;
    num = num * 10 + (ch - '0');
    if (after_point) den *= 10;
  }
  if (!seen_digit) throw InvalidSpec("malformed number '" + text + "'");
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

bool rational_sqrt(const Rational& x, Rational& root) {
  if (x < 0) return false;
  Integer num = mp::numerator(x);
  Integer den = mp::denominator(x);
  Integer rn = mp::sqrt(num);
  Integer rd = mp::sqrt(den);
  if (rn * rn != num || rd * rd != den) return false;
  root = Rational(rn, rd);
  return true;
}

}  // namespace nilsol
