#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace skein {

// Combinatorial model for stated n-web diagrams drawn in an ideal polygon.
//
// A diagram is an abstract combinatorial map (a rotation system), not a
// drawing: nodes carry cyclically ordered ports, directed arcs join ports,
// and planarity is certified by an Euler-characteristic check on the
// boundary-augmented map.  Boundary endpoints carry a boundary-edge id, a
// height rank, a state in 1..n, and the strand direction at the boundary.

// An ideal polygon with `ideal_points` = k corners and k open boundary
// edges, indexed 0..k-1 in the cyclic order induced by the surface
// orientation.  k = 0 models the closed disk interior: no boundary
// endpoints are allowed there.
struct PolygonSurface {
  unsigned ideal_points = 0;
  bool operator==(const PolygonSurface&) const = default;
};

enum class EndpointDir : std::uint8_t {
  TowardBoundary,    // the strand's head is the endpoint ("out" in JSON)
  AwayFromBoundary,  // the strand's tail is the endpoint ("in" in JSON)
};

// Height convention per boundary edge.  Negative is the canonical storage
// convention: walking the edge against the surface-induced boundary
// orientation, endpoints appear with increasing height rank.  Positively
// ordered input is normalized on ingestion by reversing ranks.
enum class EdgeOrdering : std::uint8_t { Negative, Positive };

// Four ports in counterclockwise cyclic order, 0..3.  The over strand
// enters at `over_in` and leaves at over_in + 2 (mod 4); the under strand
// enters at `under_in`, which must be adjacent (over_in +- 1 mod 4), and
// leaves at under_in + 2 (mod 4).  Sign: +1 when under_in = over_in + 1
// (mod 4), else -1.
struct CrossingNode {
  unsigned over_in = 0;
  unsigned under_in = 1;
  bool operator==(const CrossingNode&) const = default;
};

// An n-valent vertex with all ports incoming, in counterclockwise cyclic
// order 0..ports-1.  `ports` is stored explicitly so that arity violations
// are representable data.  When `base` is set, the half-edges are linearly
// ordered: the j-th half edge (1-based) is port (base + j - 1) mod ports.
struct SinkNode {
  unsigned ports = 0;
  std::optional<unsigned> base;
  bool operator==(const SinkNode&) const = default;
};

// As SinkNode, with all ports outgoing.
struct SourceNode {
  unsigned ports = 0;
  std::optional<unsigned> base;
  bool operator==(const SourceNode&) const = default;
};

// A 1-valent vertex on the polygon boundary (single port 0).
struct EndpointNode {
  unsigned edge = 0;    // boundary edge id, 0..k-1
  unsigned height = 1;  // rank within its edge, 1..#endpoints on the edge
  unsigned state = 1;   // 1..n
  EndpointDir dir = EndpointDir::TowardBoundary;
  bool operator==(const EndpointNode&) const = default;
};

using Node = std::variant<CrossingNode, SinkNode, SourceNode, EndpointNode>;

struct PortRef {
  unsigned node = 0;
  unsigned port = 0;
  auto operator<=>(const PortRef&) const = default;
};

// Directed arc: tail at `from`, head at `to`.
struct Arc {
  PortRef from;
  PortRef to;
  bool operator==(const Arc&) const = default;
};

struct WebDiagram {
  unsigned n = 1;
  PolygonSurface surface;
  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  // Disjoint crossing-free circles; in a polygon their placement is
  // immaterial, so only the count is kept.
  unsigned free_loops = 0;
  // Per-edge height convention; empty means all edges negative.
  std::vector<EdgeOrdering> ordering;
  bool operator==(const WebDiagram&) const = default;
};

unsigned port_count(const WebDiagram& d, unsigned node);

// A violated structural invariant; validation reports data, it never throws.
struct Violation {
  std::string code;    // stable machine-readable tag
  std::string detail;  // human-readable specifics
  bool operator==(const Violation&) const = default;
};

// Returns every violated invariant (empty = ok): rank positivity, surface
// and ordering-table consistency, vertex arity, port usage (each port of
// each node used exactly once), arc orientation at every node kind,
// crossing strand adjacency, per-edge height ranks forming 1..m, state
// ranges, the endpoint/vertex parity law e = n*p (mod 2), and planarity of
// the boundary-augmented map (checked only once the structural layer is
// sound).
std::vector<Violation> validate(const WebDiagram& d);
bool is_valid(const WebDiagram& d);

int crossing_sign(const CrossingNode& c);

struct DiagramStats {
  unsigned long long e = 0;          // boundary endpoints
  unsigned long long t = 0;          // endpoints pointing toward the boundary
  unsigned long long p = 0;          // sinks + sources
  long long w = 0;                   // signed crossing sum
  unsigned long long components = 0; // closed knot components (incl. loops)
  // Wiring permutation of a fully based diagram with equally many sinks and
  // sources: sinks and sources are labeled 1..k in node order, the j-th
  // half edge of the i-th sink is colored (i-1)n + j, the j-th half edge of
  // the i-th source is colored (i-1)n + n + 1 - j, and tau sends the color
  // of each source half edge to the color of the sink half edge its strand
  // reaches.  Present only when every vertex is based and every source
  // strand reaches a sink.
  std::optional<std::vector<unsigned>> tau;  // tau->at(i-1) = image of i
  unsigned long long tau_inversions = 0;
  bool operator==(const DiagramStats&) const = default;
};

// Requires is_valid(d).  Throws std::invalid_argument("unbalanced
// vertices") when tau is requested (all vertices based) but the sink and
// source counts differ.
DiagramStats stats(const WebDiagram& d);

// Rewrites every positively ordered edge to the negative convention by
// reversing its height ranks, and marks all edges negative.
WebDiagram normalize_ordering(const WebDiagram& d);

// Canonical encoding of the normalized diagram, invariant under node/arc
// re-indexing and under rotation of the cyclic port labels (the encoding of
// two diagrams is equal iff they are isomorphic as decorated rotation
// systems with identical boundary data).  Usable as an exact map key.
std::string canonical_encoding(const WebDiagram& d);

// Equality up to relabeling: same rank, surface, free loops, and canonical
// encoding.
bool same_diagram(const WebDiagram& a, const WebDiagram& b);

// Versioned JSON interchange.  print_diagram emits canonical bytes (sorted
// keys, no whitespace); parse_diagram checks the schema strictly, throws
// std::invalid_argument on any shape error, and normalizes the height
// convention.  parse_diagram(print_diagram(d)) == normalize_ordering(d).
std::string print_diagram(const WebDiagram& d, bool pretty = false);
WebDiagram parse_diagram(const std::string& text);

}  // namespace skein
