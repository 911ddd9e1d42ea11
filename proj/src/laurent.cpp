#include "skein/laurent.hpp"

#include <cctype>
#include <sstream>

namespace skein {

std::string to_string(const LaurentScalar& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  // Descending exponents.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (e == 0) {
      out << mag.str();
    } else {
      if (mag != 1) out << mag.str() << "*";
      out << "v";
      if (e != 1) out << "^" << e;
    }
  }
  return out.str();
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() { return s[i]; }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("parse_laurent: " + what + " at offset " +
                                std::to_string(i) + " in \"" + s + "\"");
  }
  BigInt integer() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      ++digits;
    }
    if (digits == 0) fail("expected integer");
    return BigInt(s.substr(start, i - start));
  }
};

}  // namespace

LaurentScalar parse_laurent(const std::string& text) {
  LaurentScalar result;
  Cursor c{text};
  if (c.done()) c.fail("empty input");
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    c.skip_ws();
    if (c.peek() == '+' || c.peek() == '-') {
      sign = c.peek() == '-' ? -1 : 1;
      ++c.i;
    } else if (!first) {
      c.fail("expected '+' or '-' between terms");
    }
    c.skip_ws();
    if (c.i >= text.size()) c.fail("dangling sign");

    BigInt coef = 1;
    bool saw_coef = false;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      coef = c.integer();
      saw_coef = true;
      c.skip_ws();
      if (c.i < text.size() && c.peek() == '*') {
        ++c.i;
        c.skip_ws();
      }
    }
    long long exponent = 0;
    if (c.i < text.size() && c.peek() == 'v') {
      ++c.i;
      c.skip_ws();
      if (c.i < text.size() && c.peek() == '^') {
        ++c.i;
        BigInt e = c.integer();
        exponent = static_cast<long long>(e);
      } else {
        exponent = 1;
      }
    } else if (!saw_coef) {
      c.fail("expected coefficient or 'v'");
    }
    result.add_term(exponent, sign < 0 ? BigInt(-coef) : coef);
    first = false;
  }
  return result;
}

}  // namespace skein
