#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "conestab/rational.hpp"

namespace conestab {

/// Dense univariate polynomial with exact rational coefficients, stored in
/// ascending powers with no trailing zeros.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  RationalPolynomial(std::initializer_list<Rational> ascending);
  explicit RationalPolynomial(std::vector<Rational> ascending);

  static RationalPolynomial monomial(const Rational& c, int power);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // −1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int power) const;
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  RationalPolynomial derivative() const;
  RationalPolynomial monic() const;

  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator-=(const RationalPolynomial& o);
  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const Rational& s, const RationalPolynomial& p);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Euclidean division: returns (quotient, remainder).
  std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& d) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

/// Number of distinct real roots in the open interval (lo, hi).
int count_distinct_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi);

/// Product of the odd-multiplicity square-free factors of p (Yun's
/// decomposition); its real roots are exactly where p changes sign.
RationalPolynomial odd_multiplicity_part(const RationalPolynomial& p);

/// Decides p ≥ 0 on [lo, hi] exactly.
bool nonnegative_on(const RationalPolynomial& p, const Rational& lo, const Rational& hi);

}  // namespace conestab
