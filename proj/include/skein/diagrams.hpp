#pragma once

#include "skein/web.hpp"

#include <vector>

namespace skein {

// Ready-made diagram families used by the evaluator tests, the verification
// suite, and the command-line tools.  All builders return valid diagrams.

// Closed disk containing `loops` disjoint crossing-free circles.
WebDiagram loop_diagram(unsigned n, unsigned loops);

// A single circle carrying one kink of the given sign.  `over_first`
// selects which passage through the crossing is labeled as the little loop;
// the two choices give the same diagram up to relabeling.
WebDiagram kinked_loop(unsigned n, int sign, bool over_first = true);

// Trace closure of a braid word on `strands` parallel rows.  Letter +i
// crosses row i over row i+1, letter -i crosses row i under row i+1
// (1 <= i < strands).  Rows untouched by the word close into free loops.
WebDiagram braid_closure(unsigned n, unsigned strands,
                         const std::vector<int>& word);

// A source and a sink joined leg-to-leg without crossings: the j-th leg of
// the source meets the (n+1-j)-th leg of the sink, so the induced leg
// pairing is the identity permutation.  With `based` both vertices carry
// base 0.
WebDiagram vertex_pair(unsigned n, bool based);

// Bigon (two-edge polygon) with a single oriented strand from one edge to
// the other: state `s0` on edge 0 and `s1` on edge 1, both at rank 1.  With
// `toward_edge0` the strand's head lies on edge 0, otherwise on edge 1.
WebDiagram bigon_arc(unsigned n, unsigned s0, unsigned s1,
                     bool toward_edge0 = true);

// Bigon with `m` disjoint parallel strands: strand r (1-based, counted
// along edge 0) joins (edge 0, rank r) to (edge 1, rank m+1-r), its head on
// edge 0 exactly when `toward_edge0`.  States are given per strand as
// pairs {state on edge 0, state on edge 1}.
WebDiagram bigon_strands(unsigned n,
                         const std::vector<std::pair<unsigned, unsigned>>& states,
                         bool toward_edge0 = true);

}  // namespace skein
