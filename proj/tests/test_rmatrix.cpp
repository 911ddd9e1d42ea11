#include <doctest.h>

#include <skein/constants.hpp>
#include <skein/rmatrix.hpp>

#include <array>
#include <map>
#include <stdexcept>

using namespace skein;

TEST_CASE("braiding matrix entries match the closed form") {
  // n = 1: the single written slot collapses to q^{-1} * q = 1.
  CHECK(build_r(1).entry(1, 1, 1, 1).is_one());

  const RMatrix r2 = build_r(2);
  // Pinned values.
  CHECK(r2.entry(2, 1, 2, 1) ==
        LaurentScalar::v_pow(-2) * (q_power(2, 1) - q_power(2, -1)));
  CHECK(r2.entry(1, 2, 1, 2).is_zero());
  CHECK(r2.entry(1, 1, 1, 1) == LaurentScalar::v_pow(2));
  CHECK(r2.entry(2, 2, 2, 2) == LaurentScalar::v_pow(2));
  CHECK(r2.entry(1, 2, 2, 1) == LaurentScalar::v_pow(-2));
  CHECK(r2.entry(2, 1, 1, 2) == LaurentScalar::v_pow(-2));

  // Full pattern for n = 2, 3: swap-written slots carry q^{delta - 1/n},
  // equal-written slots carry q^{-1/n}(q - q^{-1}) below the diagonal,
  // everything else vanishes.
  for (unsigned n = 2; n <= 3; ++n) {
    const RMatrix r = build_r(n);
    const LaurentScalar qinv_n = q_power(n, -1, n);
    for (unsigned i = 1; i <= n; ++i)
      for (unsigned j = 1; j <= n; ++j)
        for (unsigned k = 1; k <= n; ++k)
          for (unsigned l = 1; l <= n; ++l) {
            LaurentScalar expect;
            if (k == j && l == i)
              expect += q_power(n, i == j ? 1 : 0) * qinv_n;
            if (k == i && l == j && j < i) expect += qinv_n * q_minus_qinv(n);
            CHECK(r.entry(i, j, k, l) == expect);
          }
    CHECK(r.entry(1, 1, 1, 1) == LaurentScalar::v_pow(2 * (n - 1)));
  }
}

namespace {

// Independent evaluation: apply the tensor-leg operator on legs (p,q) of a
// sparse vector indexed by basis triples.
using TripleVec = std::map<std::array<unsigned, 3>, LaurentScalar>;

TripleVec apply_legs(const RMatrix& r, unsigned p, unsigned q,
                     const TripleVec& x) {
  TripleVec out;
  const unsigned n = r.n;
  for (const auto& [basis, c] : x)
    for (unsigned i = 1; i <= n; ++i)
      for (unsigned j = 1; j <= n; ++j) {
        const LaurentScalar& e = r.op(i, j, basis[p], basis[q]);
        if (e.is_zero()) continue;
        std::array<unsigned, 3> img = basis;
        img[p] = i;
        img[q] = j;
        auto [it, fresh] = out.try_emplace(img, e * c);
        if (!fresh) {
          it->second += e * c;
          if (it->second.is_zero()) out.erase(it);
        }
      }
  return out;
}

}  // namespace

TEST_CASE("Yang-Baxter equation holds symbolically") {
  for (unsigned n = 1; n <= 4; ++n) CHECK(check_ybe(build_r(n)));

  // Cross-check by direct action on every basis vector (n = 2, 3): the
  // matrix product acts rightmost factor first.
  for (unsigned n = 2; n <= 3; ++n) {
    const RMatrix r = build_r(n);
    for (unsigned a = 1; a <= n; ++a)
      for (unsigned b = 1; b <= n; ++b)
        for (unsigned c = 1; c <= n; ++c) {
          TripleVec e;
          e.emplace(std::array<unsigned, 3>{a, b, c},
                    LaurentScalar(BigInt(1)));
          const TripleVec lhs =
              apply_legs(r, 0, 1, apply_legs(r, 0, 2, apply_legs(r, 1, 2, e)));
          const TripleVec rhs =
              apply_legs(r, 1, 2, apply_legs(r, 0, 2, apply_legs(r, 0, 1, e)));
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("quadratic braiding identity holds and detects perturbations") {
  for (unsigned n = 1; n <= 3; ++n) CHECK(check_hecke(build_r(n)));

  // Negative control: rescaling the correction entry keeps the braiding
  // invertible but breaks both identities.
  RMatrix bad = build_r(2);
  bad.entry(2, 1, 2, 1) *= LaurentScalar::v_pow(2);
  CHECK_FALSE(check_hecke(bad));
  CHECK_FALSE(check_ybe(bad));

  // A non-unit diagonal makes the braiding non-invertible.
  RMatrix singular = build_r(2);
  singular.entry(1, 1, 1, 1) += LaurentScalar::one();
  CHECK_THROWS_AS(check_hecke(singular), std::domain_error);
}

TEST_CASE("boundary coefficient tables at fourth roots of unity") {
  SUBCASE("order 1 collapses to all ones") {
    const BoundaryCoeffTable tab = boundary_coeffs(3, 1);
    for (unsigned i = 1; i <= 3; ++i)
      for (unsigned j = 1; j <= 3; ++j) {
        CHECK(tab.a_at(i, j) == CycInt(1));
        CHECK(tab.b_at(i, j) == CycInt(1));
      }
  }

  SUBCASE("pinned primitive fourth root values, n = 2") {
    const BoundaryCoeffTable tab = boundary_coeffs(2, 4);
    // a_{1,1} = q_eps^{1/2} = eps^2 = -1.
    CHECK(tab.a_at(1, 1) == CycInt(-1));
    CHECK(tab.a_at(1, 2) == CycInt(-1));  // q_eps^{-1/2} = eps^{-2} = -1
    CHECK(tab.b_at(1, 1) == CycInt(-1));  // bar(1) = 2, so the delta is absent
    CHECK(tab.b_at(1, 2) == CycInt(-1));  // eps^{2-4} = eps^{-2} = -1
  }

  SUBCASE("entries are signs and the pairing identity holds") {
    for (unsigned n = 1; n <= 4; ++n)
      for (unsigned k : {1u, 2u, 4u}) {
        const BoundaryCoeffTable tab = boundary_coeffs(n, k);
        for (unsigned i = 1; i <= n; ++i)
          for (unsigned j = 1; j <= n; ++j) {
            const bool a_sign =
                tab.a_at(i, j) == CycInt(1) || tab.a_at(i, j) == CycInt(-1);
            const bool b_sign =
                tab.b_at(i, j) == CycInt(1) || tab.b_at(i, j) == CycInt(-1);
            CHECK(a_sign);
            CHECK(b_sign);
            CHECK(tab.a_at(i, j) * tab.b_at(i, bar_state(n, j)) == CycInt(1));
          }
      }
  }

  SUBCASE("orders without epsilon^4 = 1 are rejected") {
    CHECK_THROWS_AS(boundary_coeffs(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(boundary_coeffs(2, 8), std::invalid_argument);
  }
}
