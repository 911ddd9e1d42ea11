#pragma once

#include "skein/laurent.hpp"

#include <vector>

namespace skein {

// Dense integer polynomial, coefficient of x^i at index i. Helpers used by the
// cyclotomic residue arithmetic; trailing zeros are trimmed, zero = empty.
using IntPoly = std::vector<BigInt>;

IntPoly poly_trim(IntPoly p);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(IntPoly a, const IntPoly& b);
// Exact division; throws std::domain_error if b does not divide a over Z.
IntPoly poly_divide_exact(IntPoly a, const IntPoly& b);
// Remainder of a modulo monic b.
IntPoly poly_mod(IntPoly a, const IntPoly& b);

// k-th cyclotomic polynomial, computed as (x^k - 1) / prod_{d|k, d<k} Phi_d.
IntPoly cyclotomic_poly(unsigned k);

// Element of Z[x]/Phi_k(x), with x the chosen primitive k-th root of unity.
// order == 0 is the integer embedding (used so literals mix with any ring).
class CycInt {
 public:
  CycInt() : order_(0) {}
  explicit CycInt(BigInt n) : order_(0) {
    if (n != 0) res_.push_back(std::move(n));
  }
  CycInt(int n) : CycInt(BigInt(n)) {}
  CycInt(unsigned order, IntPoly residue);

  // Class of x^e (e may be negative; x has multiplicative order k).
  static CycInt root_power(unsigned order, long long e);

  unsigned order() const { return order_; }
  const IntPoly& residue() const { return res_; }
  bool is_zero() const { return res_.empty(); }

  friend CycInt operator+(const CycInt& a, const CycInt& b);
  friend CycInt operator-(const CycInt& a, const CycInt& b);
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  CycInt operator-() const;
  friend bool operator==(const CycInt& a, const CycInt& b);
  friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }
  friend bool operator<(const CycInt& a, const CycInt& b);

  CycInt pow(unsigned long long k) const;

 private:
  unsigned order_;  // 0 = plain integer, else k of Z[x]/Phi_k
  IntPoly res_;     // reduced mod Phi_k when order_ > 0
};

std::string to_string(const CycInt& c);

// Ring homomorphism Z[v^{+-1}] -> Z[x]/Phi_k, v |-> class of x.
// k = 0 is rejected (no such ring); k = 1 collapses v to 1, k = 2 to -1.
CycInt specialize(const LaurentScalar& p, unsigned k);

using CycLaurent = Laurent<CycInt>;

// Coefficient-wise specialization into Laurent polynomials over Z[x]/Phi_k.
CycLaurent specialize_coeffs(const LaurentScalar& p, unsigned k);
// Full specialization of a cyclotomic-coefficient Laurent polynomial at v = x.
CycInt collapse(const CycLaurent& p, unsigned k);

std::string to_string(const CycLaurent& p);

}  // namespace skein
