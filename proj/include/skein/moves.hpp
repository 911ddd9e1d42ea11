#pragma once

#include "skein/web.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace skein {

// The local moves generating the diagram equivalence used by the module:
// strand-pair creation/cancellation, the triangle slide, sliding a strand
// across a vertex on either side, and the full vertex twist.  Every move
// preserves the endpoint statistics e, t, p exactly and the total writhe
// modulo n.  Kink insertion/removal is deliberately NOT a move of this
// family (it changes the writhe by 1); it is exposed separately below for
// the framing rewrites.

// Creates two cancelling crossings between two co-directed strands lying on
// a common face, pushing strand `over` across strand `under`.  A strand is
// named by an arc id, or by std::nullopt to consume one crossing-free free
// loop (the loop is materialized as an arc cycle through the new crossings).
// When both name arcs they must be distinct.
struct StrandPush {
  std::optional<unsigned> over;
  std::optional<unsigned> under;
};

// Cancels the two crossings of a StrandPush-shaped bigon: one strand runs
// over the other at both crossings, the connecting segments are single arcs,
// and the crossing signs are opposite.
struct StrandPull {
  unsigned first = 0;   // crossing id; the connecting arcs run first -> second
  unsigned second = 0;
};

// Triangle slide: three crossings pairwise joined by single arcs bounding an
// empty triangular face, with at least one strand running consistently over
// or consistently under both of its crossings.  The move reverses the order
// of the two crossings along each of the three strands.
struct TriangleSlide {
  unsigned a = 0, b = 0, c = 0;  // the three crossing ids, any order
};

// Slides a strand across an n-valent vertex.  The strand must cross a
// cyclically consecutive run of the vertex's legs adjacent to the vertex,
// passing consistently over (or consistently under) all of them; after the
// move it crosses the complementary legs on the other side of the vertex
// with the same over/under role.  `crossings` lists the strand's crossings
// with the legs in order along the strand.
struct VertexSlide {
  unsigned vertex = 0;
  std::vector<unsigned> crossings;
};

// Rotates a vertex by a full turn, inserting one kink of the given sign on
// every leg; changes the writhe by +-n.
struct VertexTwist {
  unsigned vertex = 0;
  int sign = 1;  // +1 or -1
};

using Move = std::variant<StrandPush, StrandPull, TriangleSlide, VertexSlide,
                          VertexTwist>;
using MoveScript = std::vector<Move>;

// Applies one move (or a whole script, left to right).  Throws
// std::invalid_argument when the referenced local pattern is absent or the
// rewrite does not embed in the polygon.
WebDiagram apply_move(const WebDiagram& d, const Move& m);
WebDiagram apply_move_script(const WebDiagram& d, const MoveScript& script);

// Replays the witness script on `a` and compares the result with `b` up to
// relabeling (canonical encoding equality).  Errors from apply_move
// propagate: a witness referencing an absent pattern is invalid input.
bool move_equivalent(const WebDiagram& a, const WebDiagram& b,
                     const MoveScript& witness);

// Framing rewrites (not equivalence moves): insert a kink of the given sign
// on an arc, or remove the kink carried by a crossing with a direct self
// arc.  `over_first` chooses on which side of the strand the little loop
// lies (the strand meets its own crossing first as the over strand or as
// the under strand); the sign is independent of that choice.
WebDiagram insert_kink(const WebDiagram& d, unsigned arc, int sign,
                       bool over_first = true);
// Removed-kink sign is reported through `sign_out` when non-null.
WebDiagram remove_kink(const WebDiagram& d, unsigned crossing,
                       int* sign_out = nullptr);

// Mirror image: reverses the surface orientation.  Boundary edges are
// relabeled e -> k-1-e, ranks within every edge are reversed, all node
// rotations are reversed, and every crossing sign flips.  An involution up
// to relabeling.
WebDiagram reflect_diagram(const WebDiagram& d);

// JSON round-trip for move scripts (used by the command-line interface):
// an array of {"move": <name>, ...fields}.  parse throws
// std::invalid_argument on malformed input.
std::string print_move_script(const MoveScript& script);
MoveScript parse_move_script(const std::string& text);

}  // namespace skein
