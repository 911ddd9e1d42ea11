#pragma once

#include "skein/web.hpp"

#include <vector>

namespace skein {

// Diagram-level vertical composition in the thickened polygon, plus the
// boundary bookkeeping it needs.  All operations are pure.

// Boundary endpoints in the counterclockwise order induced by the surface
// orientation: edge ids ascending and, within an edge, height ranks
// descending (per-edge ranks enumerate the boundary walk in the opposite,
// negative direction).  The diagram is normalized first; returned values are
// node ids of the normalized diagram, which coincide with the input's ids.
std::vector<unsigned> boundary_walk(const WebDiagram& d);

// Stacks `above` over `below`: both diagrams are drawn in the same polygon
// and `above` is placed at greater height, so on every boundary edge its
// endpoints take the ranks on top of `below`'s and every strand of `above`
// passes over every strand of `below` they are forced to meet.
//
// Mutual crossings are inserted combinatorially.  Two boundary-to-boundary
// components are forced to meet exactly when their endpoint pairs interleave
// on the boundary circle; this implementation supports interleaving only
// between plain chords (components consisting of a single arc joining two
// boundary endpoints, with no crossings or vertices on them), where the
// forced intersection is a single transversal crossing with the `above`
// strand on top.  Components that carry nodes, and closed components, can
// always be drawn clear of the other diagram unless their endpoints
// interleave it; in that unsupported case std::invalid_argument is thrown.
// Preconditions: same rank, same polygon, at least one boundary edge, both
// operands valid.  The result is renormalized and validated.
WebDiagram stack_diagrams(const WebDiagram& above, const WebDiagram& below);

// Disjoint union of two diagrams in the closed disk (no boundary edges);
// throws std::invalid_argument on rank or surface mismatch.
WebDiagram disjoint_union(const WebDiagram& a, const WebDiagram& b);

// Signed count of the crossings between a-strands and b-strands in
// stack_diagrams(a, b), reduced mod n into 0..n-1.
unsigned relative_writhe(const WebDiagram& a, const WebDiagram& b);

}  // namespace skein
