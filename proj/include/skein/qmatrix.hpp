#pragma once

#include "skein/laurent.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace skein {

// Quantized coordinate rings of the n x n matrices and of SL_n: presentation
// by straightening rules derived mechanically from the defining braiding
// matrix, canonical normal forms, the quantum determinant, the Hopf structure
// maps, and decidable equality in the SL_n quotient.

// Ring tag: the free-matrix ring or its quotient by (det_q - 1).  Elements
// are always STORED as normal forms of the matrix ring; the tag only governs
// which operations are allowed (antipode, sl_equal need the quotient).
enum class RingTag { Mn, SLn };

// Generator id, 0-based: u_{i,j} has id (i-1)*n + (j-1); the id order is the
// fixed lexicographic generator order u_{1,1} < u_{1,2} < ... < u_{n,n}.
using QGen = unsigned;
// A word is a left-to-right product of generators.
using QWord = std::vector<QGen>;
// A raw (not necessarily normal-form) integer-Laurent combination of words.
using WordSum = std::map<QWord, LaurentScalar>;
// Normal monomial = exponent of each generator, listed in id order; since
// normal words are the weakly increasing ones, this is a faithful key.
using QExponents = std::vector<unsigned>;

struct QElement {
  unsigned n = 0;
  RingTag tag = RingTag::Mn;
  // Keys are normal monomials; no zero coefficients are stored.
  std::map<QExponents, LaurentScalar> combination;

  bool is_zero() const { return combination.empty(); }
  // Total degree of the highest monomial, -1 for the zero element.
  long long degree() const;
  friend bool operator==(const QElement&, const QElement&) = default;
};

// Element of the algebra tensor square, both legs in normal form.
using QTensorKey = std::pair<QExponents, QExponents>;
struct QTensorElement {
  unsigned n = 0;
  RingTag tag = RingTag::Mn;
  std::map<QTensorKey, LaurentScalar> combination;

  bool is_zero() const { return combination.empty(); }
  friend bool operator==(const QTensorElement&, const QTensorElement&) =
      default;
};

class QAlgebra {
 public:
  // Derives the straightening rules from the entry-wise exchange relations
  //   sum_{a,b} u_{i,a} u_{j,b} B((a,b); (k,l)) =
  //       sum_{a,b} B((i,j); (a,b)) u_{a,k} u_{b,l},
  // where B is the braiding read from the stored slots with both written
  // pairs reversed (B((a,b); (c,d)) = entry(d,c; b,a)); this is the unique
  // reading with monomial straightening coefficients and a central quantum
  // determinant.  It verifies that the global q^{-1/n} factor
  // cancels from every relation, and checks that every out-of-order generator
  // pair is covered by a rule whose right-hand side is strictly smaller in
  // the word order.  When several relations straighten the same pair the
  // first one (in relation order) is kept; the constructor then re-checks
  // that every defining relation normalizes to zero under the retained
  // rules.  Throws std::logic_error if any of this fails.
  explicit QAlgebra(unsigned n);

  unsigned rank() const { return n_; }

  // 1-based (row, column) <-> generator id.
  QGen gen_id(unsigned row, unsigned col) const;
  std::pair<unsigned, unsigned> gen_rc(QGen g) const;

  // Directed straightening rules: descending adjacent pair -> two-letter
  // replacement words, every one strictly smaller than the left-hand side.
  const std::map<std::pair<QGen, QGen>, WordSum>& rules() const {
    return rules_;
  }
  // The nontrivial defining relations (left side minus right side), with the
  // global q^{-1/n} factor already cleared; each normalizes to zero.
  const std::vector<WordSum>& rtt_equations() const { return equations_; }

  // Canonical normal form (leftmost reducible position first).
  QElement normal_form(const WordSum& raw, RingTag tag = RingTag::Mn) const;
  QElement normal_form(const QWord& word, RingTag tag = RingTag::Mn) const;
  // Rewrite-order independence hook: pick(k) chooses among the k reducible
  // positions of the word being rewritten.
  QElement normal_form_with_picker(
      const WordSum& raw, const std::function<std::size_t(std::size_t)>& pick,
      RingTag tag = RingTag::Mn) const;

  QElement zero(RingTag tag = RingTag::Mn) const;
  QElement scalar(const LaurentScalar& c, RingTag tag = RingTag::Mn) const;
  QElement generator(unsigned row, unsigned col,
                     RingTag tag = RingTag::Mn) const;

  // Arithmetic; operands must share rank and tag (throws otherwise).
  QElement add(const QElement& x, const QElement& y) const;
  QElement sub(const QElement& x, const QElement& y) const;
  QElement mul(const QElement& x, const QElement& y) const;
  QElement scale(const LaurentScalar& c, const QElement& x) const;

  // Quantum determinant, row expansion sum_{sigma} (-q)^{l(sigma)}
  // u_{1,sigma(1)} ... u_{n,sigma(n)} (already normal); the column expansion
  // normalizes to the same element.
  QElement det_q(RingTag tag = RingTag::Mn) const;
  QElement det_q_column(RingTag tag = RingTag::Mn) const;
  // Quantum minor on strictly increasing row and column index lists of equal
  // length, by the same (-q)^{l} sum over the sub-matrix.
  QElement quantum_minor(const std::vector<unsigned>& rows,
                         const std::vector<unsigned>& cols,
                         RingTag tag = RingTag::Mn) const;

  // Hopf structure.  delta and counit are algebra maps defined on both ring
  // tags; the antipode S(u_{i,j}) = (-q)^{i-j} det_q(minor without row j,
  // column i), extended as an algebra anti-map, needs the SLn tag and throws
  // std::domain_error on Mn input.
  QTensorElement delta(const QElement& x) const;
  LaurentScalar counit(const QElement& x) const;
  QElement antipode(const QElement& x) const;

  // Equality in the SLn quotient: decides membership of x - y in the ideal
  // generated by the central element det_q - 1 by graded descent.  Requires
  // both operands to carry the SLn tag and the same rank.
  bool sl_equal(const QElement& x, const QElement& y) const;

  // Normal monomial <-> weakly increasing word.
  static QWord monomial_word(const QExponents& exponents);
  QExponents word_exponents(const QWord& sorted_word) const;

 private:
  void derive_rules();
  QElement make_row_det(bool row_expansion, RingTag tag) const;

  unsigned n_ = 0;
  std::map<std::pair<QGen, QGen>, WordSum> rules_;
  std::vector<WordSum> equations_;
  QElement detq_;  // cached row expansion, Mn tag
};

// Prints monomial keys in descending key order, e.g.
// "u[1,1]*u[2,2] - v^4*u[1,2]*u[2,1]"; non-monomial coefficients are
// parenthesized; the zero element prints "0".
std::string to_string(const QElement& x);

// Parses the word grammar (documented in the README):
//   expr := [sign] term { sign term }
//   term := atom { '*' atom }
//   atom := uint | 'q' ['^' int] | 'v' ['^' int] | 'u' '[' uint ',' uint ']' ['^' uint]
// where q abbreviates v^{2n}.  Returns the raw word combination (callers
// normalize).  Throws std::invalid_argument on malformed input or indices
// outside 1..n.
WordSum parse_qelement(const std::string& text, unsigned n);

}  // namespace skein
