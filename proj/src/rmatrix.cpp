#include "skein/rmatrix.hpp"

#include "skein/constants.hpp"

#include <map>
#include <stdexcept>

namespace skein {

namespace {

// Flat index of the ordered pair (i,j), 1-based components.
unsigned pair_index(unsigned n, unsigned i, unsigned j) {
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::out_of_range("RMatrix: index out of range");
  return (i - 1) * n + (j - 1);
}

// Dense matrix over pair indices: m[row * dim + col].
using PairMat = std::vector<LaurentScalar>;

PairMat mat_mul(unsigned dim, const PairMat& a, const PairMat& b) {
  PairMat r(static_cast<std::size_t>(dim) * dim);
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned k = 0; k < dim; ++k) {
      const LaurentScalar& aik = a[i * dim + k];
      if (aik.is_zero()) continue;
      for (unsigned j = 0; j < dim; ++j) {
        const LaurentScalar& bkj = b[k * dim + j];
        if (bkj.is_zero()) continue;
        r[i * dim + j] += aik * bkj;
      }
    }
  return r;
}

// Matrix of the tensor-leg operator (see header comment).
PairMat op_matrix(const RMatrix& r) {
  const unsigned n = r.n, dim = r.dim();
  PairMat m(static_cast<std::size_t>(dim) * dim);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j)
      for (unsigned k = 1; k <= n; ++k)
        for (unsigned l = 1; l <= n; ++l)
          m[pair_index(n, i, j) * dim + pair_index(n, k, l)] = r.op(i, j, k, l);
  return m;
}

}  // namespace

const LaurentScalar& RMatrix::entry(unsigned i, unsigned j, unsigned k,
                                    unsigned l) const {
  return entries[pair_index(n, i, j) * dim() + pair_index(n, k, l)];
}

LaurentScalar& RMatrix::entry(unsigned i, unsigned j, unsigned k, unsigned l) {
  return entries[pair_index(n, i, j) * dim() + pair_index(n, k, l)];
}

LaurentScalar r_entry(unsigned n, unsigned i, unsigned j, unsigned k,
                      unsigned l) {
  if (n == 0) throw std::domain_error("r_entry: rank must be positive");
  LaurentScalar s;
  if (k == j && l == i)  // swap-written slot, q^{delta_{ij} - 1/n}
    s += q_power(n, i == j ? 1 : 0) * q_power(n, -1, static_cast<long long>(n));
  if (k == i && l == j && j < i)  // equal-written slot, q^{-1/n}(q - q^{-1})
    s += q_power(n, -1, static_cast<long long>(n)) * q_minus_qinv(n);
  return s;
}

RMatrix build_r(unsigned n) {
  if (n == 0) throw std::domain_error("build_r: rank must be positive");
  RMatrix r;
  r.n = n;
  r.entries.assign(static_cast<std::size_t>(n) * n * n * n, LaurentScalar());
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j)
      for (unsigned k = 1; k <= n; ++k)
        for (unsigned l = 1; l <= n; ++l)
          r.entry(i, j, k, l) = r_entry(n, i, j, k, l);
  return r;
}

bool check_ybe(const RMatrix& r) {
  const unsigned n = r.n;
  const unsigned dim3 = n * n * n;
  const PairMat rop = op_matrix(r);
  const unsigned dim = r.dim();

  // Embed the pair operator into legs (p,q) of the 3-fold tensor power.
  auto embed = [&](unsigned p, unsigned q) {
    PairMat m(static_cast<std::size_t>(dim3) * dim3);
    unsigned idx[3];
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = 0; b < n; ++b)
        for (unsigned c = 0; c < n; ++c) {
          idx[0] = a, idx[1] = b, idx[2] = c;
          const unsigned col = (a * n + b) * n + c;
          const unsigned spectator = 3 - p - q;
          const unsigned in_pair = idx[p] * n + idx[q];
          for (unsigned x = 0; x < n; ++x)
            for (unsigned y = 0; y < n; ++y) {
              const LaurentScalar& c0 = rop[(x * n + y) * dim + in_pair];
              if (c0.is_zero()) continue;
              unsigned out[3];
              out[p] = x, out[q] = y, out[spectator] = idx[spectator];
              const unsigned row = (out[0] * n + out[1]) * n + out[2];
              m[static_cast<std::size_t>(row) * dim3 + col] += c0;
            }
        }
    return m;
  };

  const PairMat r12 = embed(0, 1), r13 = embed(0, 2), r23 = embed(1, 2);
  const PairMat lhs = mat_mul(dim3, mat_mul(dim3, r12, r13), r23);
  const PairMat rhs = mat_mul(dim3, mat_mul(dim3, r23, r13), r12);
  return lhs == rhs;
}

bool check_hecke(const RMatrix& r) {
  const unsigned n = r.n, dim = r.dim();
  const PairMat rop = op_matrix(r);

  // Rhat = P o R.
  PairMat rhat(static_cast<std::size_t>(dim) * dim);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j)
      for (unsigned col = 0; col < dim; ++col)
        rhat[pair_index(n, j, i) * dim + col] =
            rop[pair_index(n, i, j) * dim + col];

  // Invert block by block; the pair basis splits into singletons (i,i) and
  // doubletons {(i,j),(j,i)}.  Any coupling outside a block means the entry
  // pattern is broken, which we surface as non-invertibility.
  auto unit_inverse = [](const LaurentScalar& u) {
    if (!u.is_monomial())
      throw std::domain_error("check_hecke: braiding not invertible");
    return u.ipow(-1);
  };
  PairMat inv(static_cast<std::size_t>(dim) * dim);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) {
      if (j < i) continue;  // each block handled once
      const unsigned x = pair_index(n, i, j), y = pair_index(n, j, i);
      for (unsigned col = 0; col < dim; ++col) {
        if (col == x || col == y) continue;
        if (!rhat[x * dim + col].is_zero() || !rhat[y * dim + col].is_zero())
          throw std::domain_error("check_hecke: braiding not invertible");
      }
      if (i == j) {
        inv[x * dim + x] = unit_inverse(rhat[x * dim + x]);
        continue;
      }
      const LaurentScalar &a = rhat[x * dim + x], &b = rhat[x * dim + y],
                          &c = rhat[y * dim + x], &d = rhat[y * dim + y];
      const LaurentScalar det_inv = unit_inverse(a * d - b * c);
      inv[x * dim + x] = d * det_inv;
      inv[x * dim + y] = -b * det_inv;
      inv[y * dim + x] = -c * det_inv;
      inv[y * dim + y] = a * det_inv;
    }

  // Defensive: the block inverse must really invert Rhat.
  PairMat prod = mat_mul(dim, rhat, inv);
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = 0; j < dim; ++j) {
      const LaurentScalar& e = prod[i * dim + j];
      if (i == j ? !e.is_one() : !e.is_zero())
        throw std::domain_error("check_hecke: braiding not invertible");
    }

  const LaurentScalar qr = q_power(n, 1, n);     // v^2
  const LaurentScalar qri = q_power(n, -1, n);   // v^-2
  const LaurentScalar target = q_minus_qinv(n);  // q - q^{-1}
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = 0; j < dim; ++j) {
      const LaurentScalar e = qr * rhat[i * dim + j] - qri * inv[i * dim + j];
      if (e != (i == j ? target : LaurentScalar())) return false;
    }
  return true;
}

const CycInt& BoundaryCoeffTable::a_at(unsigned i, unsigned j) const {
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::out_of_range("BoundaryCoeffTable: index out of range");
  return a[(i - 1) * n + (j - 1)];
}

const CycInt& BoundaryCoeffTable::b_at(unsigned i, unsigned j) const {
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::out_of_range("BoundaryCoeffTable: index out of range");
  return b[(i - 1) * n + (j - 1)];
}

BoundaryCoeffTable boundary_coeffs(unsigned n, unsigned epsilon_order) {
  if (n == 0) throw std::domain_error("boundary_coeffs: rank must be positive");
  if (epsilon_order != 1 && epsilon_order != 2 && epsilon_order != 4)
    throw std::invalid_argument(
        "boundary_coeffs: epsilon order must divide 4 (epsilon^4 = 1)");
  const unsigned k = epsilon_order;
  BoundaryCoeffTable tab;
  tab.n = n;
  tab.epsilon_order = k;
  tab.a.reserve(static_cast<std::size_t>(n) * n);
  tab.b.reserve(static_cast<std::size_t>(n) * n);

  // q_eps^{1/n} is the specialization of v^2, so q_eps^{x/n} = eps^{2x}.
  const CycInt one(1), minus_one(-1);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) {
      const long long da = (i == j) ? 1 : 0;
      const long long db = (i == bar_state(n, j)) ? 1 : 0;
      CycInt av = CycInt::root_power(k, -2 + 2 * static_cast<long long>(n) * da);
      CycInt bv = CycInt::root_power(k, 2 - 2 * static_cast<long long>(n) * db);
      if (!(av == one || av == minus_one) || !(bv == one || bv == minus_one))
        throw std::logic_error("boundary_coeffs: entry is not +-1");
      tab.a.push_back(std::move(av));
      tab.b.push_back(std::move(bv));
    }

  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j)
      if (!(tab.a_at(i, j) * tab.b_at(i, bar_state(n, j)) == one))
        throw std::logic_error("boundary_coeffs: pairing identity violated");
  return tab;
}

}  // namespace skein
