#pragma once

#include "skein/cyclotomic.hpp"

#include <vector>

namespace skein {

// The defining n^2 x n^2 braiding matrix over the Laurent ring.
//
// Entries are stored at their WRITTEN slots: entry(i,j,k,l) is the symbol
// whose upper pair is (i,j) and whose lower pair is written (k,l).  The
// nonzero pattern is
//
//   entry(i,j, j,i) = q^{-1/n} * q^{delta_{ij}}          (swap-written slots)
//   entry(i,j, i,j) = q^{-1/n} * (q - q^{-1})  for j < i (equal-written slots)
//
// with q = v^{2n}, so q^{-1/n} = v^{-2}.  The written lower pair is in
// REVERSE tensor-leg order: as an operator on V (x) V the matrix acts by
//
//   R(e_k (x) e_l) = sum_{i,j} entry(i,j, l,k) e_i (x) e_j
//                  = q^{-1/n} ( q^{delta_{kl}} e_k (x) e_l
//                               + (q - q^{-1}) [k < l] e_l (x) e_k ),
//
// the standard diagonal-plus-lower-swap form.  Only this assignment makes the
// Yang-Baxter equation and the quadratic braiding identity hold.  The matrix
// entering the quantized-coordinate-ring exchange relation is the braiding
// P composed with R_op, i.e. the stored slots with both written pairs
// reversed (see qmatrix.cpp for the uniqueness argument).
struct RMatrix {
  unsigned n = 0;
  std::vector<LaurentScalar> entries;  // written slots, row-major over pairs

  unsigned dim() const { return n * n; }
  // Written-slot accessors; all indices 1-based.
  const LaurentScalar& entry(unsigned i, unsigned j, unsigned k,
                             unsigned l) const;
  LaurentScalar& entry(unsigned i, unsigned j, unsigned k, unsigned l);
  // Operator coefficient of e_i (x) e_j in R(e_k (x) e_l).
  const LaurentScalar& op(unsigned i, unsigned j, unsigned k,
                          unsigned l) const {
    return entry(i, j, l, k);
  }
};

// Single written-slot entry, computed from the closed form.
LaurentScalar r_entry(unsigned n, unsigned i, unsigned j, unsigned k,
                      unsigned l);

// Fills every written slot of the n^2 x n^2 matrix. Requires n >= 1.
RMatrix build_r(unsigned n);

// Yang-Baxter equation R12 R13 R23 = R23 R13 R12 on V (x) V (x) V, checked
// symbolically over the Laurent ring (indices are tensor legs).
bool check_ybe(const RMatrix& r);

// Quadratic braiding identity for Rhat = P o R (P = swap of tensor legs):
//   q^{1/n} Rhat - q^{-1/n} Rhat^{-1} = (q - q^{-1}) Id.
// Throws std::domain_error when Rhat is not invertible over the Laurent ring
// (which signals an entry-construction bug).
bool check_hecke(const RMatrix& r);

// Boundary coefficient tables at a root of unity epsilon of order k with
// epsilon^4 = 1 (k in {1,2,4}).  Writing q_eps for the specialization of
// q = v^{2n} (so q_eps^{1/n} is the specialization of v^2):
//   a[i][j] = q_eps^{-1/n + delta_{i,j}}
//   b[i][j] = q_eps^{ 1/n - delta_{i, bar j}},  bar j = n + 1 - j.
struct BoundaryCoeffTable {
  unsigned n = 0;
  unsigned epsilon_order = 1;
  std::vector<CycInt> a;  // n x n, row-major, 1-based accessors below
  std::vector<CycInt> b;

  const CycInt& a_at(unsigned i, unsigned j) const;
  const CycInt& b_at(unsigned i, unsigned j) const;
};

// Requires epsilon_order in {1,2,4}; throws std::invalid_argument otherwise.
// Verifies on construction that every entry is +1 or -1 and that
// a_{i,j} * b_{i, bar j} = 1 for all i, j.
BoundaryCoeffTable boundary_coeffs(unsigned n, unsigned epsilon_order);

}  // namespace skein
