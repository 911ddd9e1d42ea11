#pragma once

#include "skein/laurent.hpp"
#include "skein/web.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skein {

// Whether n-valent vertices carry a linear (based) leg order.  The mode
// selects which vertex-expansion rule eliminate_vertices uses and therefore
// the prefactor of each eliminated pair: (-q)^{n(n-1)/2} per pair in the
// stated convention, q^{n(n-1)} per pair in the based convention.
enum class VertexMode { Stated, Based };

struct SkeinTerm {
  WebDiagram diagram;  // stored with normalized (negative) height ordering
  LaurentScalar coefficient;
};

// A finite linear combination of diagrams on one surface with one rank.
// Terms are keyed by the canonical diagram encoding, so equal-up-to-
// relabeling diagrams merge and the term order is deterministic.
class SkeinExpression {
 public:
  SkeinExpression(unsigned n, PolygonSurface surface);

  static SkeinExpression from_diagram(const WebDiagram& d);
  static SkeinExpression from_diagram(const WebDiagram& d,
                                      const LaurentScalar& coefficient);

  unsigned rank() const { return n_; }
  PolygonSurface surface() const { return surface_; }
  const std::map<std::string, SkeinTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds coefficient * diagram.  The diagram must be valid and share the
  // expression's rank and surface (std::invalid_argument otherwise); zero
  // results are pruned.
  void add(const WebDiagram& d, const LaurentScalar& coefficient);

  SkeinExpression& operator+=(const SkeinExpression& other);
  friend SkeinExpression operator+(SkeinExpression a,
                                   const SkeinExpression& b) {
    a += b;
    return a;
  }
  SkeinExpression scaled(const LaurentScalar& c) const;

  // Equality is semantic: same rank, same surface, and the same coefficient
  // on every canonical diagram class (the stored representatives may differ
  // in node labeling).
  bool operator==(const SkeinExpression& other) const;
  bool operator!=(const SkeinExpression& other) const {
    return !(*this == other);
  }

 private:
  unsigned n_ = 1;
  PolygonSurface surface_;
  std::map<std::string, SkeinTerm> terms_;
};

// The local rewrite rules of the module, named by what they do.  Each is a
// directed rewrite: the left-hand local pattern is replaced by the
// right-hand linear combination.
enum class Relation {
  // positive crossing  ->  q^{-1/n}(q-q^{-1}) smoothing + q^{-2/n} switched;
  // negative crossing  ->  q^{2/n} switched - q^{1/n}(q-q^{-1}) smoothing
  CrossingSmoothing,
  // kink -> t_v^{+-1} times the unkinked diagram (sign of the kink picks
  // the exponent; the negative-kink coefficient is the forced inverse)
  KinkRemoval,
  // free circle -> (-1)^{n-1}[n] times the rest
  CircleRemoval,
  // adjacent sink/source pair -> Sum over permutations of positive-braid
  // insertions, coefficient (-q)^{n(n-1)/2} (-q^{(1-n)/n})^{l(sigma)}
  VertexPairExpansion,
  // vertex beside a boundary edge -> Sum over permutations of stated legs,
  // coefficient a_v (-1)^l v^{2nl}
  VertexBoundaryExpansion,
  // two adjacent endpoints joined by a returning arc -> delta_{j,bar i}
  // c_{i,v} times the capped-off diagram
  BoundaryCap,
  // an arc -> Sum over states i of the diagram with the arc re-routed
  // through two new adjacent endpoints, coefficient (c_{bar i,v})^{-1}
  BoundaryCup,
  // a crossing whose two outgoing strands end on adjacent boundary ranks ->
  // height-reordered endpoint terms with the R-matrix entry coefficients
  BoundaryCrossing,
  // as VertexPairExpansion for based vertices, prefactor q^{n(n-1)}
  BasedVertexPairExpansion,
};

// Addresses one local pattern inside one term of an expression.  `term` is
// the canonical encoding of the addressed diagram; when empty the
// expression must consist of exactly one term.  Which other fields are read
// depends on the relation:
//   CrossingSmoothing / KinkRemoval / BoundaryCrossing: node = crossing id
//   CircleRemoval: no further data (one free loop removed)
//   VertexPairExpansion / BasedVertexPairExpansion: node = sink id,
//     partner = source id; anchor / partner_anchor = first-leg ports
//     (default: the vertex base when set, else port 0; ignored in the based
//     rule, which always uses the bases)
//   VertexBoundaryExpansion: node = vertex id, edge + rank = where the leg
//     endpoints are inserted, anchor as above
//   BoundaryCap: edge + rank = the lower of the two adjacent ranks
//   BoundaryCup: arc = the arc to cut, edge + rank = insertion ranks,
//     head_on_top = whether the new head endpoint takes the lower rank
struct RelationSite {
  std::string term;
  unsigned node = 0;
  unsigned partner = 0;
  unsigned arc = 0;
  unsigned edge = 0;
  unsigned rank = 1;
  std::optional<unsigned> anchor;
  std::optional<unsigned> partner_anchor;
  bool head_on_top = true;
};

// Replaces the addressed term t by coefficient(t) * RHS(rel, site); all
// other terms are untouched.  Throws std::invalid_argument when the site
// does not match the relation's left-hand pattern (the message names the
// mismatch) and std::invalid_argument("...standard position...") when a
// vertex-pair expansion produces a non-embeddable braid insertion.
SkeinExpression apply_relation(const SkeinExpression& expr, Relation rel,
                               const RelationSite& site);

// Eliminates every sink/source pair of every term by the vertex-expansion
// rule of the mode.  `pairing` lists (sink id, source id) pairs by node ids
// of the input terms' diagrams (every term must contain those nodes); when
// absent, the lowest-id sink is repeatedly paired with the lowest-id
// source.  Throws std::invalid_argument("unpaired or non-standard-position
// vertices") when vertices cannot be paired or an insertion fails to embed.
SkeinExpression eliminate_vertices(
    const SkeinExpression& expr, VertexMode mode,
    const std::optional<std::vector<std::pair<unsigned, unsigned>>>& pairing =
        std::nullopt);

// Evaluates a closed diagram in the disk to the unique scalar with
// d = scalar * (empty diagram) modulo the rewrite rules: vertices are
// eliminated pairwise, then crossings are resolved recursively toward
// descending diagrams, kinks contribute t_v^{+-1} and circles
// (-1)^{n-1}[n].  `shuffle_seed` randomizes which non-descending crossing
// is resolved first (the result is order-independent; the seed exists so
// tests can check exactly that).  Throws std::invalid_argument on open
// input ("non-closed input") or vertices that cannot be paired
// ("unpairable vertices").
LaurentScalar evaluate_closed(
    const WebDiagram& d, VertexMode mode = VertexMode::Stated,
    std::optional<std::uint64_t> shuffle_seed = std::nullopt);

// Bilinear extension of diagram stacking (first argument above).  Requires
// equal ranks and equal surfaces with at least one boundary edge.
SkeinExpression stack(const SkeinExpression& above,
                      const SkeinExpression& below);

// Versioned JSON interchange: {"version":1,"n":...,"surface":{...},
// "terms":[{"coefficient":"...","diagram":{...}},...]} with terms in
// canonical key order.  parse_expression validates strictly and throws
// std::invalid_argument on malformed input.
std::string print_expression(const SkeinExpression& expr, bool pretty = false);
SkeinExpression parse_expression(const std::string& text);

}  // namespace skein
