#pragma once

#include "skein/cyclotomic.hpp"
#include "skein/engine.hpp"

#include <functional>
#include <map>
#include <string>

namespace skein {

// Three families of linear maps that rescale each diagram by a sign or a
// root of unity read off the diagram's crossing and endpoint counts.  Each
// map lands in the skein theory of a relabeled quantum parameter; the
// relabeling is carried as metadata only and the coefficient arithmetic is
// exact cyclotomic.
enum class SignMapKind {
  RootTwist,      // v -> eps v, with eps^{2m} = 1 and m | n
  ParameterFlip,  // v -> -v
  SpinTwist,      // v^2 -> -v^2 on based webs, weighted by a spin function
};

// External spin weight: a pure function returning s(d) in {0, 1}.  The
// contract expected by SpinTwist at even rank: s(trivial knot) = 1 and a
// single positive or negative kink flips the value.  It is never computed
// from geometry here; callers inject it.
using SpinOracle = std::function<int(const WebDiagram&)>;

struct SignMapSpec {
  SignMapKind kind = SignMapKind::ParameterFlip;
  unsigned n = 1;
  // RootTwist data: eps is x^{eps_exponent} inside Z[x]/Phi_{eps_order},
  // where x is the chosen primitive root of unity of order eps_order.
  unsigned m = 1;
  unsigned eps_order = 1;
  long long eps_exponent = 1;
  SpinOracle spin;  // consulted only by SpinTwist at even n
};

// Throws std::invalid_argument when the spec is inconsistent: m must divide
// n, eps^{2m} must equal 1, and SpinTwist at even n needs a spin oracle.
void validate_signmap_spec(const SignMapSpec& spec);

// The eps power the map multiplies a single valid diagram by.
//
// RootTwist selects one of six exponent laws from the sign of eps^m and the
// parities of k = n/m, m, (k+m)/2, and n:
//   eps^m = -1, k even                          -> eps^{2w + e/2}
//   eps^m = -1, k odd, m even                   -> (-eps)^{2w + e/2}
//   eps^m = -1, k odd, m odd, (k+m)/2 odd       -> (-eps)^{2w + t}
//   eps^m = -1, k odd, m odd, (k+m)/2 even      -> (-1)^p (-eps)^{2w + t}
//   eps^m = 1, n even                           -> eps^{2w + e/2}
//   eps^m = 1, n odd                            -> eps^{2w + t}
// with w the writhe, e the endpoint count, t the count of endpoints directed
// toward the boundary, and p the vertex count.  Every branch demanding e/2
// has e even automatically (e and n p are congruent mod 2).
//
// ParameterFlip returns (-1)^{(n-1)e/2} at odd n and (-1)^{e/2} at even n.
//
// SpinTwist returns 1 at odd n and (-1)^{s(d) + K + l(tau)} at even n, where
// K counts closed knot components and l(tau) counts inversions of the wiring
// permutation of the based vertices; throws std::invalid_argument when a
// vertex is unbased ("spin weight needs based vertices") or the sink and
// source counts differ (propagated "unbalanced vertices").
CycInt sign_map_coeff(const WebDiagram& d, const SignMapSpec& spec);

// Coefficient embeddings Z[v^{+-1}] -> Z[x][v^{+-1}].
// embed_scalar keeps v; twist_scalar substitutes v -> x^{eps_exponent} v,
// sending a v^E to a x^{eps_exponent E} v^E.  Both are ring homomorphisms.
CycLaurent embed_scalar(const LaurentScalar& c);
CycLaurent twist_scalar(const LaurentScalar& c, unsigned eps_order,
                        long long eps_exponent);

// Human-readable tag of the target quantum parameter of a map.
std::string target_parameter(const SignMapSpec& spec);

struct CycTerm {
  WebDiagram diagram;  // stored with normalized (negative) height ordering
  CycLaurent coefficient;
};

// A linear combination of diagrams with cyclotomic-Laurent coefficients,
// keyed like SkeinExpression by the canonical diagram encoding.  The
// parameter tag names the quantum parameter the combination lives at;
// equality compares the linear data only (the tag is metadata).
class CycExpression {
 public:
  CycExpression(unsigned n, PolygonSurface surface, std::string parameter);

  static CycExpression embed(const SkeinExpression& e);

  unsigned rank() const { return n_; }
  PolygonSurface surface() const { return surface_; }
  const std::string& parameter() const { return parameter_; }
  const std::map<std::string, CycTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds coefficient * diagram; the diagram must be valid and share rank and
  // surface (std::invalid_argument otherwise).  Zero results are pruned.
  void add(const WebDiagram& d, const CycLaurent& coefficient);
  CycExpression scaled(const CycLaurent& c) const;

  bool operator==(const CycExpression& other) const;
  bool operator!=(const CycExpression& other) const {
    return !(*this == other);
  }

 private:
  unsigned n_ = 1;
  PolygonSurface surface_;
  std::string parameter_;
  std::map<std::string, CycTerm> terms_;
};

// Term-wise application: every diagram is multiplied by sign_map_coeff and
// the parameter tag is advanced to the map's target.  Scalars are embedded
// untouched; expressions of the wrong rank throw std::invalid_argument.
CycExpression apply_signmap(const SkeinExpression& expr,
                            const SignMapSpec& spec);
CycExpression apply_signmap(const CycExpression& expr,
                            const SignMapSpec& spec);

}  // namespace skein
