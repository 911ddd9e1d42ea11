#pragma once

#include "skein/laurent.hpp"

#include <vector>

namespace skein {

// Scalars attached to a fixed rank n. All exponents are expressed in the
// variable v with q = v^{2n}, so no fractional powers ever appear: a formal
// power q^{num/den} is the monomial v^{2*n*num/den}, and the divisibility is
// checked at construction time.
struct ConstantsTable {
  unsigned n = 0;
  std::vector<LaurentScalar> c;  // c[i-1], 1 <= i <= n
  LaurentScalar t;               // twist scalar
  LaurentScalar a;               // vertex-absorption scalar
  LaurentScalar qn;              // balanced quantum integer [n]
};

// Rejects n = 0.
ConstantsTable constants(unsigned n);

// Monomial (+-1) * q^{num/den} as a Laurent polynomial in v for rank n.
// Throws std::domain_error when 2*n*num is not divisible by den.
LaurentScalar q_power(unsigned n, long long num, long long den = 1);

// q - q^{-1} for rank n.
LaurentScalar q_minus_qinv(unsigned n);

// Conjugate state index: bar(i) = n + 1 - i.
inline unsigned bar_state(unsigned n, unsigned i) { return n + 1 - i; }

}  // namespace skein
