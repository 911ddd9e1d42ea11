#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace skein {

using BigInt = boost::multiprecision::cpp_int;

// Laurent polynomial in one variable v over a commutative coefficient ring C.
// Invariant: no zero coefficients are stored; the zero element is the empty map.
template <class C = BigInt>
class Laurent {
 public:
  using Coef = C;
  using Terms = std::map<long long, C>;

  Laurent() = default;
  explicit Laurent(C constant) {
    if (!(constant == C(0))) terms_[0] = std::move(constant);
  }
  Laurent(long long exponent, C coef) {
    if (!(coef == C(0))) terms_[exponent] = std::move(coef);
  }

  static Laurent zero() { return Laurent(); }
  static Laurent one() { return Laurent(C(1)); }
  // Monomial v^e.
  static Laurent v_pow(long long e) { return Laurent(e, C(1)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 &&
           terms_.begin()->second == C(1);
  }
  bool is_monomial() const { return terms_.size() == 1; }
  // Requires is_monomial().
  std::pair<long long, C> monomial() const {
    if (!is_monomial()) throw std::domain_error("Laurent: not a monomial");
    return *terms_.begin();
  }

  long long min_exponent() const {
    if (is_zero()) throw std::domain_error("Laurent: zero has no exponents");
    return terms_.begin()->first;
  }
  long long max_exponent() const {
    if (is_zero()) throw std::domain_error("Laurent: zero has no exponents");
    return terms_.rbegin()->first;
  }
  C coef(long long e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C(0) : it->second;
  }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, C(0) - c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  Laurent operator-() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[e] = C(0) - c;
    return r;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  Laurent pow(unsigned long long k) const {
    Laurent r = one();
    Laurent base = *this;
    while (k) {
      if (k & 1) r *= base;
      base *= base;
      k >>= 1;
    }
    return r;
  }

  // Integer power, allowing negative exponents only for unit monomials a*v^e
  // with a invertible (a = +-1 over the integers).
  Laurent ipow(long long k) const {
    if (k >= 0) return pow(static_cast<unsigned long long>(k));
    auto [e, c] = monomial();
    C inv;
    if (c == C(1))
      inv = C(1);
    else if (c == C(0) - C(1))
      inv = C(0) - C(1);
    else
      throw std::domain_error("Laurent: monomial coefficient not invertible");
    Laurent r = Laurent(-e, inv);
    return r.pow(static_cast<unsigned long long>(-k));
  }

  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Laurent& a, const Laurent& b) {
    return !(a == b);
  }
  friend bool operator<(const Laurent& a, const Laurent& b) {
    return a.terms_ < b.terms_;
  }

  void add_term(long long e, const C& c) {
    if (c == C(0)) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second == C(0)) terms_.erase(it);
    }
  }

 private:
  Terms terms_;
};

using LaurentScalar = Laurent<BigInt>;

// Textual form, terms in descending exponent order: "-v^6 + 3*v^-2 + 1".
std::string to_string(const LaurentScalar& p);
// Inverse of to_string; also accepts omitted '*', "v" for v^1, and leading '+'.
// Throws std::invalid_argument on malformed input.
LaurentScalar parse_laurent(const std::string& text);

}  // namespace skein
