#pragma once

// Internal arc/node surgery helpers shared by the diagram-rewriting sources.
// These are deliberately not part of the public headers: they mutate diagrams
// in ways that temporarily break invariants, and every public operation that
// uses them re-validates its output.

#include <skein/web.hpp>

#include <vector>

namespace skein::surgery {

// Index of the arc whose head (resp. tail) sits at the given port, or -1.
int arc_with_head_at(const WebDiagram& d, PortRef p);
int arc_with_tail_at(const WebDiagram& d, PortRef p);

// Merges the arc ending at (node, in_port) with the arc starting at
// (node, out_port): the surviving arc runs from the first arc's tail to the
// second arc's head and both ports become unused.  When the two arcs are the
// same arc the strand closes up into a free loop.  Throws std::logic_error
// when either port is vacant.
void merge_through(WebDiagram& d, unsigned node, unsigned in_port,
                   unsigned out_port);

// Removes one arc, keeping the relative order of the rest.
void erase_arc(WebDiagram& d, unsigned arc);

// Removes the listed nodes and renumbers arc references.  The victims must
// not be referenced by any remaining arc.  Returns the renumbering as a map
// old id -> new id (one entry per surviving node), realized as a vector with
// -1 at erased slots.
std::vector<int> erase_nodes(WebDiagram& d, std::vector<unsigned> victims);

// Adds delta to the height of every endpoint on `edge` whose current height
// is >= from_rank.  The caller is responsible for keeping ranks a permutation.
void shift_ranks(WebDiagram& d, unsigned edge, unsigned from_rank, int delta);

// Number of endpoints on the given boundary edge.
unsigned edge_population(const WebDiagram& d, unsigned edge);

// Faces of the boundary-augmented rotation map (the same structure the
// planarity check certifies).  Each face is the cyclic list of its darts,
// where dart 2a is the tail end of arc a and dart 2a+1 its head end.
// Requires a valid diagram.
std::vector<std::vector<unsigned>> faces(const WebDiagram& d);

}  // namespace skein::surgery
