#include "skein/diagrams.hpp"

#include <optional>
#include <stdexcept>

namespace skein {

WebDiagram loop_diagram(unsigned n, unsigned loops) {
  WebDiagram d;
  d.n = n;
  d.surface = PolygonSurface{0};
  d.free_loops = loops;
  return d;
}

WebDiagram kinked_loop(unsigned n, int sign, bool over_first) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("kinked_loop: sign must be +-1");
  WebDiagram d;
  d.n = n;
  d.surface = PolygonSurface{0};
  if (sign > 0) {
    d.nodes.push_back(CrossingNode{0, 1});
    if (over_first) {
      d.arcs.push_back({{0, 2}, {0, 1}});  // little loop
      d.arcs.push_back({{0, 3}, {0, 0}});  // closing arc
    } else {
      d.arcs.push_back({{0, 3}, {0, 0}});
      d.arcs.push_back({{0, 2}, {0, 1}});
    }
  } else {
    d.nodes.push_back(CrossingNode{0, 3});
    if (over_first) {
      d.arcs.push_back({{0, 2}, {0, 3}});
      d.arcs.push_back({{0, 1}, {0, 0}});
    } else {
      d.arcs.push_back({{0, 1}, {0, 0}});
      d.arcs.push_back({{0, 2}, {0, 3}});
    }
  }
  return d;
}

WebDiagram braid_closure(unsigned n, unsigned strands,
                         const std::vector<int>& word) {
  if (strands == 0) throw std::invalid_argument("braid_closure: no strands");
  WebDiagram d;
  d.n = n;
  d.surface = PolygonSurface{0};

  // Dangling wire per row: where the row's first arc head must eventually
  // attach, and the tail of its currently open arc.
  std::vector<std::optional<PortRef>> first_in(strands + 1);
  std::vector<std::optional<PortRef>> current_out(strands + 1);

  const auto attach = [&](unsigned row, PortRef in) {
    if (current_out[row])
      d.arcs.push_back({*current_out[row], in});
    else
      first_in[row] = in;
  };

  for (int letter : word) {
    const unsigned row = static_cast<unsigned>(letter > 0 ? letter : -letter);
    if (letter == 0 || row + 1 > strands)
      throw std::invalid_argument("braid_closure: letter out of range");
    const unsigned c = static_cast<unsigned>(d.nodes.size());
    // Ports counterclockwise: 0 = upper-left in, 1 = lower-left in,
    // 2 = lower-right out, 3 = upper-right out.  Positive letters send the
    // upper row over.
    d.nodes.push_back(letter > 0 ? CrossingNode{0, 1} : CrossingNode{1, 0});
    attach(row, {c, 0});
    attach(row + 1, {c, 1});
    current_out[row] = PortRef{c, 3};
    current_out[row + 1] = PortRef{c, 2};
  }

  for (unsigned row = 1; row <= strands; ++row) {
    if (!first_in[row]) {
      ++d.free_loops;
      continue;
    }
    d.arcs.push_back({*current_out[row], *first_in[row]});
  }
  return d;
}

WebDiagram vertex_pair(unsigned n, bool based) {
  WebDiagram d;
  d.n = n;
  d.surface = PolygonSurface{0};
  const std::optional<unsigned> base =
      based ? std::optional<unsigned>(0) : std::nullopt;
  d.nodes.push_back(SourceNode{n, base});
  d.nodes.push_back(SinkNode{n, base});
  // Source leg j meets sink leg n+1-j: with base 0, source port j-1 runs to
  // sink port n-j, so the induced pairing is the identity.
  for (unsigned j = 1; j <= n; ++j)
    d.arcs.push_back({{0, j - 1}, {1, n - j}});
  return d;
}

WebDiagram bigon_arc(unsigned n, unsigned s0, unsigned s1, bool toward_edge0) {
  return bigon_strands(n, {{s0, s1}}, toward_edge0);
}

WebDiagram bigon_strands(
    unsigned n, const std::vector<std::pair<unsigned, unsigned>>& states,
    bool toward_edge0) {
  WebDiagram d;
  d.n = n;
  d.surface = PolygonSurface{2};
  const unsigned m = static_cast<unsigned>(states.size());
  for (unsigned r = 1; r <= m; ++r) {
    const auto [s0, s1] = states[r - 1];
    if (s0 == 0 || s0 > n || s1 == 0 || s1 > n)
      throw std::invalid_argument("bigon_strands: state out of range");
    const unsigned e0 = static_cast<unsigned>(d.nodes.size());
    d.nodes.push_back(EndpointNode{0, r, s0,
                                   toward_edge0 ? EndpointDir::TowardBoundary
                                                : EndpointDir::AwayFromBoundary});
    const unsigned e1 = e0 + 1;
    d.nodes.push_back(EndpointNode{1, m + 1 - r, s1,
                                   toward_edge0 ? EndpointDir::AwayFromBoundary
                                                : EndpointDir::TowardBoundary});
    if (toward_edge0)
      d.arcs.push_back({{e1, 0}, {e0, 0}});
    else
      d.arcs.push_back({{e0, 0}, {e1, 0}});
  }
  return d;
}

}  // namespace skein
