#include "skein/cyclotomic.hpp"

#include <map>
#include <sstream>

namespace skein {

IntPoly poly_trim(IntPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return poly_trim(std::move(r));
}

IntPoly poly_sub(IntPoly a, const IntPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), BigInt(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return poly_trim(std::move(a));
}

IntPoly poly_divide_exact(IntPoly a, const IntPoly& b) {
  if (b.empty()) throw std::domain_error("poly_divide_exact: division by zero");
  a = poly_trim(std::move(a));
  if (a.empty()) return {};
  if (a.size() < b.size())
    throw std::domain_error("poly_divide_exact: not divisible");
  IntPoly q(a.size() - b.size() + 1, BigInt(0));
  const BigInt& lead = b.back();
  while (a.size() >= b.size()) {
    if (a.back() % lead != 0)
      throw std::domain_error("poly_divide_exact: not divisible");
    BigInt c = a.back() / lead;
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    a = poly_trim(std::move(a));
    if (a.empty()) break;
  }
  if (!a.empty()) throw std::domain_error("poly_divide_exact: nonzero remainder");
  return poly_trim(std::move(q));
}

IntPoly poly_mod(IntPoly a, const IntPoly& b) {
  if (b.empty() || b.back() != 1)
    throw std::domain_error("poly_mod: modulus must be monic");
  a = poly_trim(std::move(a));
  while (a.size() >= b.size()) {
    BigInt c = a.back();
    size_t shift = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    a = poly_trim(std::move(a));
  }
  return a;
}

IntPoly cyclotomic_poly(unsigned k) {
  if (k == 0) throw std::domain_error("cyclotomic_poly: k must be positive");
  static std::map<unsigned, IntPoly> cache;
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  IntPoly xk_minus_1(k + 1, BigInt(0));
  xk_minus_1[0] = -1;
  xk_minus_1[k] = 1;
  IntPoly divisor{BigInt(1)};
  for (unsigned d = 1; d < k; ++d)
    if (k % d == 0) divisor = poly_mul(divisor, cyclotomic_poly(d));
  IntPoly phi = poly_divide_exact(std::move(xk_minus_1), divisor);
  cache[k] = phi;
  return phi;
}

CycInt::CycInt(unsigned order, IntPoly residue) : order_(order) {
  if (order_ == 0) throw std::domain_error("CycInt: order must be positive");
  res_ = poly_mod(std::move(residue), cyclotomic_poly(order_));
}

CycInt CycInt::root_power(unsigned order, long long e) {
  if (order == 0) throw std::domain_error("CycInt: order must be positive");
  long long r = e % static_cast<long long>(order);
  if (r < 0) r += order;
  IntPoly p(static_cast<size_t>(r) + 1, BigInt(0));
  p[static_cast<size_t>(r)] = 1;
  return CycInt(order, std::move(p));
}

namespace {

// Common ring for mixed arithmetic: equal orders, or integer promoted.
unsigned joint_order(const CycInt& a, const CycInt& b) {
  if (a.order() == b.order()) return a.order();
  if (a.order() == 0) return b.order();
  if (b.order() == 0) return a.order();
  throw std::domain_error("CycInt: mixing distinct cyclotomic orders");
}

}  // namespace

CycInt operator+(const CycInt& a, const CycInt& b) {
  unsigned k = joint_order(a, b);
  IntPoly r = a.residue();
  if (r.size() < b.residue().size()) r.resize(b.residue().size(), BigInt(0));
  for (size_t i = 0; i < b.residue().size(); ++i) r[i] += b.residue()[i];
  r = poly_trim(std::move(r));
  if (k == 0) {
    CycInt out;
    if (!r.empty()) out = CycInt(r[0]);
    return out;
  }
  return CycInt(k, std::move(r));
}

CycInt operator-(const CycInt& a, const CycInt& b) { return a + (-b); }

CycInt CycInt::operator-() const {
  CycInt r = *this;
  for (auto& c : r.res_) c = -c;
  return r;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
  unsigned k = joint_order(a, b);
  IntPoly r = poly_mul(a.residue(), b.residue());
  if (k == 0) {
    CycInt out;
    if (!r.empty()) out = CycInt(r[0]);
    return out;
  }
  return CycInt(k, std::move(r));
}

bool operator==(const CycInt& a, const CycInt& b) {
  if (a.order() == b.order()) return a.residue() == b.residue();
  if (a.order() != 0 && b.order() != 0) return false;
  // Integer against residue: compare after embedding into Z[x]/Phi_k.
  const CycInt& res = a.order() ? a : b;
  const CycInt& num = a.order() ? b : a;
  IntPoly wrapped = poly_mod(num.residue(), cyclotomic_poly(res.order()));
  return wrapped == res.residue();
}

bool operator<(const CycInt& a, const CycInt& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.residue() < b.residue();
}

CycInt CycInt::pow(unsigned long long k) const {
  CycInt r(1);
  CycInt base = *this;
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

std::string to_string(const CycInt& c) {
  if (c.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  const IntPoly& r = c.residue();
  for (size_t i = r.size(); i-- > 0;) {
    if (r[i] == 0) continue;
    BigInt mag = r[i] < 0 ? BigInt(-r[i]) : r[i];
    if (first) {
      if (r[i] < 0) out << "-";
      first = false;
    } else {
      out << (r[i] < 0 ? " - " : " + ");
    }
    if (i == 0) {
      out << mag.str();
    } else {
      if (mag != 1) out << mag.str() << "*";
      out << "x";
      if (i != 1) out << "^" << i;
    }
  }
  return out.str();
}

CycInt specialize(const LaurentScalar& p, unsigned k) {
  if (k == 0) throw std::domain_error("specialize: root order must be positive");
  CycInt acc;
  for (const auto& [e, c] : p.terms())
    acc = acc + CycInt(c) * CycInt::root_power(k, e);
  return acc;
}

CycLaurent specialize_coeffs(const LaurentScalar& p, unsigned k) {
  if (k == 0) throw std::domain_error("specialize: root order must be positive");
  const CycInt one_k = CycInt::root_power(k, 0);
  CycLaurent r;
  for (const auto& [e, c] : p.terms()) r.add_term(e, CycInt(c) * one_k);
  return r;
}

CycInt collapse(const CycLaurent& p, unsigned k) {
  if (k == 0) throw std::domain_error("collapse: root order must be positive");
  CycInt acc;
  for (const auto& [e, c] : p.terms()) acc = acc + c * CycInt::root_power(k, e);
  return acc;
}

std::string to_string(const CycLaurent& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) out << " + ";
    first = false;
    out << "(" << to_string(c) << ")";
    if (e != 0) {
      out << "*v";
      if (e != 1) out << "^" << e;
    }
  }
  return out.str();
}

}  // namespace skein
