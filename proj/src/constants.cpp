#include "skein/constants.hpp"

#include <stdexcept>

namespace skein {

LaurentScalar q_power(unsigned n, long long num, long long den) {
  if (n == 0) throw std::domain_error("q_power: rank must be positive");
  if (den == 0) throw std::domain_error("q_power: zero denominator");
  long long raw = 2 * static_cast<long long>(n) * num;
  if (raw % den != 0)
    throw std::domain_error("q_power: fractional exponent of v");
  return LaurentScalar::v_pow(raw / den);
}

LaurentScalar q_minus_qinv(unsigned n) {
  return q_power(n, 1) - q_power(n, -1);
}

ConstantsTable constants(unsigned n) {
  if (n == 0) throw std::domain_error("constants: rank must be positive");
  const long long N = n;
  ConstantsTable tab;
  tab.n = n;

  // c_i = (-q)^{n-i} * q^{(n-1)/2n}; the second factor is v^{n-1}.
  for (long long i = 1; i <= N; ++i) {
    long long sign = ((N - i) % 2 == 0) ? 1 : -1;
    LaurentScalar m(2 * N * (N - i) + (N - 1), BigInt(sign));
    tab.c.push_back(m);
  }

  // t = (-1)^{n-1} q^{(n^2-1)/n} = (-1)^{n-1} v^{2(n^2-1)}.
  tab.t = LaurentScalar(2 * (N * N - 1), BigInt((N - 1) % 2 == 0 ? 1 : -1));

  // a = q^{(n+1-2n^2)/4} = v^{n(n+1-2n^2)/2}; the exponent is integral for
  // every n because n+1-2n^2 is even exactly when n is odd.
  long long num = N * (N + 1 - 2 * N * N);
  if (num % 2 != 0) throw std::logic_error("constants: parity violated");
  tab.a = LaurentScalar::v_pow(num / 2);

  // [n] = sum_{j=0}^{n-1} q^{n-1-2j}.
  for (long long j = 0; j < N; ++j)
    tab.qn.add_term(2 * N * (N - 1 - 2 * j), BigInt(1));

  return tab;
}

}  // namespace skein
