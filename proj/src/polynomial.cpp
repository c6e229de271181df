#include "conestab/polynomial.hpp"

#include <sstream>

#include "conestab/errors.hpp"

namespace conestab {

RationalPolynomial::RationalPolynomial(std::initializer_list<Rational> ascending)
    : coeffs_(ascending) {
  trim();
}

RationalPolynomial::RationalPolynomial(std::vector<Rational> ascending)
    : coeffs_(std::move(ascending)) {
  trim();
}

RationalPolynomial RationalPolynomial::monomial(const Rational& c, int power) {
  std::vector<Rational> v(static_cast<std::size_t>(power) + 1, Rational(0));
  v.back() = c;
  return RationalPolynomial(std::move(v));
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coeff(int power) const {
  if (power < 0 || power > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(power)];
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<int>(i);
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::monic() const {
  if (is_zero()) return {};
  const Rational lc = leading();
  std::vector<Rational> v = coeffs_;
  for (auto& c : v) c /= lc;
  return RationalPolynomial(std::move(v));
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator*(const Rational& s, const RationalPolynomial& p) {
  std::vector<Rational> v = p.coeffs_;
  for (auto& c : v) c *= s;
  return RationalPolynomial(std::move(v));
}

std::pair<RationalPolynomial, RationalPolynomial> RationalPolynomial::divmod(
    const RationalPolynomial& d) const {
  if (d.is_zero()) throw Error(ErrorKind::usage, "polynomial division by zero");
  RationalPolynomial rem = *this;
  if (degree() < d.degree()) return {RationalPolynomial{}, rem};
  std::vector<Rational> q(static_cast<std::size_t>(degree() - d.degree() + 1), Rational(0));
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    const int shift = rem.degree() - d.degree();
    const Rational c = rem.leading() / d.leading();
    q[static_cast<std::size_t>(shift)] = c;
    rem -= monomial(c, shift) * d;
  }
  return {RationalPolynomial(std::move(q)), rem};
}

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int p = degree(); p >= 0; --p) {
    Rational c = coeff(p);
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (c < 0) c = -c;
    if (c != 1 || p == 0) os << conestab::to_string(c);
    if (p >= 1) os << var;
    if (p >= 2) os << "^" << p;
    first = false;
  }
  return os.str();
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

RationalPolynomial square_free(const RationalPolynomial& p) {
  if (p.degree() <= 0) return p;
  return p.divmod(gcd(p, p.derivative())).first;
}

int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

int sign_changes(const std::vector<RationalPolynomial>& seq, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int v = sign(s(x));
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

}  // namespace

int count_distinct_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw Error(ErrorKind::usage, "root count of the zero polynomial");
  if (!(lo < hi)) return 0;
  RationalPolynomial s = square_free(p);
  // Deflate endpoint roots so the Sturm count applies to the open interval.
  for (const Rational& e : {lo, hi})
    if (s.degree() >= 1 && s(e) == 0) s = s.divmod(RationalPolynomial{-e, 1}).first;
  if (s.degree() <= 0) return 0;
  std::vector<RationalPolynomial> seq{s, s.derivative()};
  while (seq.back().degree() > 0) {
    auto r = seq[seq.size() - 2].divmod(seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(Rational(-1) * r);
  }
  return sign_changes(seq, lo) - sign_changes(seq, hi);
}

RationalPolynomial odd_multiplicity_part(const RationalPolynomial& p) {
  if (p.degree() <= 0) return RationalPolynomial{1};
  const RationalPolynomial dp = p.derivative();
  const RationalPolynomial a0 = gcd(p, dp);
  RationalPolynomial b = p.divmod(a0).first;
  RationalPolynomial c = dp.divmod(a0).first;
  RationalPolynomial d = c - b.derivative();
  RationalPolynomial odd{1};
  for (int mult = 1; b.degree() > 0; ++mult) {
    const RationalPolynomial a = gcd(b, d);
    if (mult % 2 == 1) odd = odd * a;
    b = b.divmod(a).first;
    c = d.divmod(a).first;
    d = c - b.derivative();
  }
  return odd.monic();
}

bool nonnegative_on(const RationalPolynomial& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) return true;
  if (p(lo) < 0 || p(hi) < 0) return false;
  const RationalPolynomial odd = odd_multiplicity_part(p);
  if (odd.degree() >= 1 && count_distinct_roots(odd, lo, hi) > 0) return false;
  // No sign change inside, so one nonzero interior value decides the sign.
  const int probes = p.degree() + 2;
  for (int i = 1; i < probes + 1; ++i) {
    const Rational x = lo + (hi - lo) * Rational(i, probes + 1);
    const Rational v = p(x);
    if (v != 0) return v > 0;
  }
  return true;
}

}  // namespace conestab
