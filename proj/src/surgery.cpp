#include "surgery.hpp"

#include <algorithm>
#include <stdexcept>
#include <variant>

namespace skein::surgery {

int arc_with_head_at(const WebDiagram& d, PortRef p) {
  for (std::size_t a = 0; a < d.arcs.size(); ++a)
    if (d.arcs[a].to == p) return static_cast<int>(a);
  return -1;
}

int arc_with_tail_at(const WebDiagram& d, PortRef p) {
  for (std::size_t a = 0; a < d.arcs.size(); ++a)
    if (d.arcs[a].from == p) return static_cast<int>(a);
  return -1;
}

void merge_through(WebDiagram& d, unsigned node, unsigned in_port,
                   unsigned out_port) {
  const int ain = arc_with_head_at(d, PortRef{node, in_port});
  const int aout = arc_with_tail_at(d, PortRef{node, out_port});
  if (ain < 0 || aout < 0)
    throw std::logic_error("merge_through: vacant port");
  if (ain == aout) {
    ++d.free_loops;
    erase_arc(d, static_cast<unsigned>(ain));
    return;
  }
  d.arcs[static_cast<unsigned>(ain)].to = d.arcs[static_cast<unsigned>(aout)].to;
  erase_arc(d, static_cast<unsigned>(aout));
}

void erase_arc(WebDiagram& d, unsigned arc) {
  d.arcs.erase(d.arcs.begin() + arc);
}

std::vector<int> erase_nodes(WebDiagram& d, std::vector<unsigned> victims) {
  std::vector<char> gone(d.nodes.size(), 0);
  for (const unsigned v : victims) gone.at(v) = 1;
  std::vector<int> remap(d.nodes.size(), -1);
  std::vector<Node> kept;
  kept.reserve(d.nodes.size());
  for (unsigned i = 0; i < d.nodes.size(); ++i) {
    if (gone[i]) continue;
    remap[i] = static_cast<int>(kept.size());
    kept.push_back(d.nodes[i]);
  }
  for (Arc& a : d.arcs) {
    for (PortRef* end : {&a.from, &a.to}) {
      if (remap[end->node] < 0)
        throw std::logic_error("erase_nodes: node still referenced");
      end->node = static_cast<unsigned>(remap[end->node]);
    }
  }
  d.nodes = std::move(kept);
  return remap;
}

void shift_ranks(WebDiagram& d, unsigned edge, unsigned from_rank, int delta) {
  for (Node& nd : d.nodes)
    if (auto* ep = std::get_if<EndpointNode>(&nd))
      if (ep->edge == edge && ep->height >= from_rank)
        ep->height = static_cast<unsigned>(static_cast<int>(ep->height) + delta);
}

unsigned edge_population(const WebDiagram& d, unsigned edge) {
  unsigned m = 0;
  for (const Node& nd : d.nodes)
    if (const auto* ep = std::get_if<EndpointNode>(&nd))
      if (ep->edge == edge) ++m;
  return m;
}

std::vector<std::vector<unsigned>> faces(const WebDiagram& d) {
  const WebDiagram nd = normalize_ordering(d);
  const unsigned N = static_cast<unsigned>(nd.nodes.size());
  const unsigned kOuter = N;
  const auto is_endpoint = [](const Node& n) {
    return std::holds_alternative<EndpointNode>(n);
  };

  // Endpoints collapse onto one virtual outer vertex whose rotation lists
  // them in clockwise boundary order, exactly as in the planarity check.
  std::vector<unsigned> eps;
  for (unsigned i = 0; i < N; ++i)
    if (is_endpoint(nd.nodes[i])) eps.push_back(i);
  std::sort(eps.begin(), eps.end(), [&](unsigned a, unsigned b) {
    const auto& x = std::get<EndpointNode>(nd.nodes[a]);
    const auto& y = std::get<EndpointNode>(nd.nodes[b]);
    return x.edge != y.edge ? x.edge > y.edge : x.height < y.height;
  });
  std::vector<unsigned> outer_slot(N, 0);
  for (unsigned s = 0; s < eps.size(); ++s) outer_slot[eps[s]] = s;

  const auto aug_vertex = [&](unsigned node) {
    return is_endpoint(nd.nodes[node]) ? kOuter : node;
  };
  const auto aug_slot = [&](const PortRef& r) {
    return is_endpoint(nd.nodes[r.node]) ? outer_slot[r.node] : r.port;
  };
  std::vector<unsigned> deg(N + 1, 0);
  for (unsigned i = 0; i < N; ++i)
    if (!is_endpoint(nd.nodes[i])) deg[i] = port_count(nd, i);
  deg[kOuter] = static_cast<unsigned>(eps.size());

  const unsigned D = 2 * static_cast<unsigned>(nd.arcs.size());
  std::vector<unsigned> dart_v(D), dart_s(D);
  std::vector<std::vector<int>> slot_dart(N + 1);
  for (unsigned v = 0; v <= N; ++v) slot_dart[v].assign(deg[v], -1);
  for (unsigned a = 0; a < nd.arcs.size(); ++a) {
    const PortRef ends[2] = {nd.arcs[a].from, nd.arcs[a].to};
    for (unsigned h = 0; h < 2; ++h) {
      const unsigned dart = 2 * a + h;
      dart_v[dart] = aug_vertex(ends[h].node);
      dart_s[dart] = aug_slot(ends[h]);
      if (slot_dart[dart_v[dart]][dart_s[dart]] >= 0)
        throw std::logic_error("faces: diagram has a doubly booked port");
      slot_dart[dart_v[dart]][dart_s[dart]] = static_cast<int>(dart);
    }
  }

  std::vector<std::vector<unsigned>> out;
  std::vector<char> seen(D, 0);
  for (unsigned start = 0; start < D; ++start) {
    if (seen[start]) continue;
    std::vector<unsigned> face;
    unsigned x = start;
    do {
      seen[x] = 1;
      face.push_back(x);
      const unsigned mate = x ^ 1u;  // other end of the same arc
      const unsigned v = dart_v[mate];
      const int next = slot_dart[v][(dart_s[mate] + 1) % deg[v]];
      if (next < 0) throw std::logic_error("faces: diagram has a vacant port");
      x = static_cast<unsigned>(next);
    } while (x != start);
    out.push_back(std::move(face));
  }
  return out;
}

}  // namespace skein::surgery
