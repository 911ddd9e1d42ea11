#include <doctest.h>

#include "skein/constants.hpp"
#include "skein/cyclotomic.hpp"
#include "skein/laurent.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace skein;

namespace {

LaurentScalar random_laurent(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(0, 5), expo(-8, 8), coef(-9, 9);
  LaurentScalar p;
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) p.add_term(expo(rng), BigInt(coef(rng)));
  return p;
}

std::complex<double> eval_at(const LaurentScalar& p, std::complex<double> z) {
  std::complex<double> acc = 0;
  for (const auto& [e, c] : p.terms())
    acc += static_cast<double>(c) * std::pow(z, static_cast<double>(e));
  return acc;
}

std::complex<double> eval_residue(const IntPoly& r, std::complex<double> z) {
  std::complex<double> acc = 0;
  for (size_t i = 0; i < r.size(); ++i)
    acc += static_cast<double>(r[i]) * std::pow(z, static_cast<double>(i));
  return acc;
}

}  // namespace

TEST_CASE("laurent arithmetic basics") {
  LaurentScalar v = LaurentScalar::v_pow(1);
  LaurentScalar one = LaurentScalar::one();
  CHECK((v + one) * (v - one) == LaurentScalar::v_pow(2) - one);

  LaurentScalar p = LaurentScalar::v_pow(2) + LaurentScalar::v_pow(-2);
  LaurentScalar sq = p * p;
  LaurentScalar expect = LaurentScalar::v_pow(4) + LaurentScalar(0, BigInt(2)) +
                         LaurentScalar::v_pow(-4);
  CHECK(sq == expect);

  CHECK((p - p).is_zero());
  CHECK((p - p).terms().empty());
  CHECK(p.pow(0).is_one());
  CHECK(LaurentScalar(3, BigInt(-1)).ipow(-2) == LaurentScalar::v_pow(-6));
}

TEST_CASE("laurent ring axioms on seeded random elements") {
  std::mt19937_64 rng(0xC0FFEE);
  for (int trial = 0; trial < 200; ++trial) {
    LaurentScalar a = random_laurent(rng), b = random_laurent(rng),
                  c = random_laurent(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a * LaurentScalar::one() == a);
  }
}

TEST_CASE("laurent textual form round trip") {
  LaurentScalar p;
  p.add_term(6, BigInt(-1));
  p.add_term(-2, BigInt(3));
  p.add_term(0, BigInt(1));
  CHECK(to_string(p) == "-v^6 + 1 + 3*v^-2");
  CHECK(parse_laurent("-v^6 + 3*v^-2 + 1") == p);
  CHECK(parse_laurent("-v^6+3*v^-2+1") == p);
  CHECK(parse_laurent("3 v^-2 - v^6 + 1") == p);  // term order is irrelevant

  CHECK(to_string(LaurentScalar()) == "0");
  CHECK(parse_laurent("0").is_zero());
  CHECK(parse_laurent("v") == LaurentScalar::v_pow(1));
  CHECK(parse_laurent("2v^3") == LaurentScalar(3, BigInt(2)));
  CHECK_THROWS_AS(parse_laurent(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_laurent("v^"), std::invalid_argument);
  CHECK_THROWS_AS(parse_laurent("q + 1"), std::invalid_argument);

  std::mt19937_64 rng(0xBEEF);
  for (int trial = 0; trial < 100; ++trial) {
    LaurentScalar a = random_laurent(rng);
    CHECK(parse_laurent(to_string(a)) == a);
  }
}

TEST_CASE("constants table exact values") {
  CHECK_THROWS_AS(constants(0), std::domain_error);

  ConstantsTable t2 = constants(2);
  REQUIRE(t2.c.size() == 2);
  CHECK(t2.c[0] == parse_laurent("-v^5"));
  CHECK(t2.c[1] == parse_laurent("v"));
  CHECK(t2.t == parse_laurent("-v^6"));
  CHECK(t2.a == parse_laurent("v^-5"));
  CHECK(t2.qn == parse_laurent("v^4 + v^-4"));

  ConstantsTable t3 = constants(3);
  CHECK(t3.qn == parse_laurent("v^12 + 1 + v^-12"));
}

TEST_CASE("constants for ranks 1..6 stay integral and match the q-power oracle") {
  for (unsigned n = 1; n <= 6; ++n) {
    ConstantsTable tab = constants(n);
    // c_i = (-q)^{n-i} q^{(n-1)/2n}: rebuild through the q_power helper.
    for (unsigned i = 1; i <= n; ++i) {
      LaurentScalar mq = -q_power(n, 1);
      LaurentScalar acc = LaurentScalar::one();
      for (unsigned j = 0; j < n - i; ++j) acc *= mq;
      acc *= q_power(n, n - 1, 2 * static_cast<long long>(n));
      CHECK(acc == tab.c[i - 1]);
      CHECK(tab.c[i - 1].is_monomial());
    }
    LaurentScalar tw = q_power(n, static_cast<long long>(n) * n - 1, n);
    if (n % 2 == 0) tw = -tw;
    CHECK(tab.t == tw);
    CHECK(tab.a == q_power(n, n + 1 - 2 * static_cast<long long>(n) * n, 4));
    // [n] * (q - q^{-1}) == q^n - q^{-n}, the division-free oracle.
    CHECK(tab.qn * q_minus_qinv(n) ==
          q_power(n, n) - q_power(n, -static_cast<long long>(n)));
  }
  CHECK_THROWS_AS(q_power(2, 1, 8), std::domain_error);  // v^{1/2} rejected
}

TEST_CASE("cyclotomic polynomials match known small cases") {
  auto poly = [](std::vector<int> coeffs) {
    IntPoly p;
    for (int c : coeffs) p.push_back(BigInt(c));
    return p;
  };
  CHECK(cyclotomic_poly(1) == poly({-1, 1}));
  CHECK(cyclotomic_poly(2) == poly({1, 1}));
  CHECK(cyclotomic_poly(3) == poly({1, 1, 1}));
  CHECK(cyclotomic_poly(4) == poly({1, 0, 1}));
  CHECK(cyclotomic_poly(6) == poly({1, -1, 1}));
  CHECK(cyclotomic_poly(12) == poly({1, 0, -1, 0, 1}));
  CHECK_THROWS_AS(cyclotomic_poly(0), std::domain_error);
}

TEST_CASE("specialization is a ring homomorphism") {
  std::mt19937_64 rng(0x5EED);
  for (unsigned k : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 12u}) {
    for (int trial = 0; trial < 40; ++trial) {
      LaurentScalar a = random_laurent(rng), b = random_laurent(rng);
      CHECK(specialize(a + b, k) == specialize(a, k) + specialize(b, k));
      CHECK(specialize(a * b, k) == specialize(a, k) * specialize(b, k));
    }
    CHECK(specialize(LaurentScalar::one(), k) == CycInt(1));
  }
  CHECK_THROWS_AS(specialize(LaurentScalar::one(), 0), std::domain_error);
}

TEST_CASE("specialization agrees with numeric evaluation at the root") {
  std::mt19937_64 rng(0xABCD);
  for (unsigned k : {1u, 2u, 3u, 4u, 6u, 8u, 12u}) {
    std::complex<double> z =
        std::exp(std::complex<double>(0, 2.0 * M_PI / static_cast<double>(k)));
    for (int trial = 0; trial < 25; ++trial) {
      LaurentScalar a = random_laurent(rng);
      CycInt r = specialize(a, k);
      std::complex<double> lhs = eval_at(a, z);
      std::complex<double> rhs = eval_residue(r.residue(), z);
      CHECK(std::abs(lhs - rhs) < 1e-6);
    }
  }
}

TEST_CASE("specialization pinned examples") {
  // -v^6 at a primitive 4th root: (-1) * i^6 = 1.
  CHECK(specialize(parse_laurent("-v^6"), 4) == CycInt(1));
  // k = 1 collapses v to 1: sum of coefficients.
  CHECK(specialize(parse_laurent("-v^6 + 3*v^-2 + 1"), 1) == CycInt(3));
  // k = 2 sends v to -1.
  CHECK(specialize(parse_laurent("v^3 + v^2"), 2) == CycInt(0));
  // Twist scalar of rank 2 at k = 4 becomes 1, so twists are invisible there.
  CHECK(specialize(constants(2).t, 4) == CycInt(1));
}

TEST_CASE("cyclotomic integers mix with plain integers") {
  CycInt i = CycInt::root_power(4, 1);
  CHECK(i * i == CycInt(-1));
  CHECK(i.pow(4) == CycInt(1));
  CHECK(i + (-i) == CycInt(0));
  CHECK(CycInt(5) * i == i * CycInt(5));
  CHECK_THROWS_AS(CycInt::root_power(4, 1) + CycInt::root_power(3, 1),
                  std::domain_error);
  // Order-2 residues reduce to integers on comparison.
  CHECK(CycInt::root_power(2, 1) == CycInt(-1));
  CHECK(to_string(CycInt::root_power(12, 7)) == "-x");
}

TEST_CASE("laurent over cyclotomic coefficients") {
  CycLaurent p = specialize_coeffs(parse_laurent("v^2 - 1"), 4);
  CycLaurent q = p * p;
  CycLaurent expect = specialize_coeffs(parse_laurent("v^4 - 2*v^2 + 1"), 4);
  CHECK(q == expect);
  CHECK(collapse(p, 4) == CycInt(-2));  // i^2 - 1
}
