#include "conestab/rational.hpp"

#include <cctype>

#include "conestab/errors.hpp"

namespace conestab {

std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

Integer parse_integer(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) throw Error(ErrorKind::usage, "empty number '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw Error(ErrorKind::usage, "not an integer: '" + s + "'");
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::usage, "zero denominator in '" + text + "'");
    return Rational(parse_integer(text.substr(0, slash)), den);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    std::string whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const Integer f = frac.empty() ? Integer(0) : parse_integer(frac);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))
      throw Error(ErrorKind::usage, "bad decimal '" + text + "'");
    Rational r = Rational(parse_integer(whole)) + Rational(f, scale) * (negative ? -1 : 1);
    return r;
  }
  return Rational(parse_integer(text));
}

}  // namespace conestab
