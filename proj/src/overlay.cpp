#include <skein/overlay.hpp>

#include "surgery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <variant>

namespace skein {

namespace {

struct Dsu {
  std::vector<unsigned> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  unsigned find(unsigned x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(unsigned a, unsigned b) { parent[find(a)] = find(b); }
};

struct ComponentInfo {
  std::vector<unsigned> endpoints;  // node ids
  unsigned nodes = 0;
  unsigned arcs = 0;
  bool pure_endpoints = true;
};

bool is_chord(const ComponentInfo& c) {
  return c.pure_endpoints && c.nodes == 2 && c.arcs == 1 &&
         c.endpoints.size() == 2;
}

// Two endpoint position sets on the boundary circle interleave exactly when
// the circular label word they induce has at least two maximal blocks of
// each label, i.e. at least four label changes around the circle.
bool interleave(const std::vector<unsigned>& pa, const std::vector<unsigned>& pb) {
  std::vector<std::pair<unsigned, char>> seq;
  for (const unsigned p : pa) seq.emplace_back(p, 'a');
  for (const unsigned p : pb) seq.emplace_back(p, 'b');
  std::sort(seq.begin(), seq.end());
  unsigned changes = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (seq[i].second != seq[(i + 1) % seq.size()].second) ++changes;
  return changes >= 4;
}

// One inserted crossing between an `above` chord and a `below` chord.
struct MutualCrossing {
  unsigned node = 0;       // id of the new crossing node
  unsigned above_arc = 0;  // original arc id of the above chord
  unsigned below_arc = 0;  // original arc id of the below chord
  unsigned above_key = 0;  // partner endpoint position inside the above span
  unsigned below_key = 0;  // partner endpoint position inside the below span
};

}  // namespace

std::vector<unsigned> boundary_walk(const WebDiagram& d0) {
  const WebDiagram d = normalize_ordering(d0);
  std::vector<unsigned> eps;
  for (unsigned i = 0; i < d.nodes.size(); ++i)
    if (std::holds_alternative<EndpointNode>(d.nodes[i])) eps.push_back(i);
  std::sort(eps.begin(), eps.end(), [&](unsigned a, unsigned b) {
    const auto& x = std::get<EndpointNode>(d.nodes[a]);
    const auto& y = std::get<EndpointNode>(d.nodes[b]);
    return x.edge != y.edge ? x.edge < y.edge : x.height > y.height;
  });
  return eps;
}

WebDiagram stack_diagrams(const WebDiagram& above, const WebDiagram& below) {
  if (above.n != below.n)
    throw std::invalid_argument("stack: rank mismatch");
  if (!(above.surface == below.surface))
    throw std::invalid_argument("stack: surface mismatch");
  if (above.surface.ideal_points == 0)
    throw std::invalid_argument("stack: the surface must have boundary");
  if (!is_valid(above) || !is_valid(below))
    throw std::invalid_argument("stack: invalid operand");

  const WebDiagram a = normalize_ordering(above);
  const WebDiagram b = normalize_ordering(below);
  const unsigned nb = static_cast<unsigned>(b.nodes.size());

  WebDiagram d;
  d.n = a.n;
  d.surface = a.surface;
  d.free_loops = a.free_loops + b.free_loops;
  d.nodes = b.nodes;
  d.nodes.insert(d.nodes.end(), a.nodes.begin(), a.nodes.end());
  d.arcs = b.arcs;
  for (Arc arc : a.arcs) {
    arc.from.node += nb;
    arc.to.node += nb;
    d.arcs.push_back(arc);
  }
  // The above diagram sits at greater height: its ranks continue on top of
  // the ranks the below diagram already occupies on each edge.
  for (unsigned i = nb; i < d.nodes.size(); ++i)
    if (auto* ep = std::get_if<EndpointNode>(&d.nodes[i]))
      ep->height += surgery::edge_population(b, ep->edge);

  // Connected components of the merged diagram (arcs never join the two
  // operands at this stage, so each component belongs to one operand).
  Dsu dsu(d.nodes.size());
  for (const Arc& arc : d.arcs) dsu.unite(arc.from.node, arc.to.node);
  std::map<unsigned, ComponentInfo> comps;
  for (unsigned i = 0; i < d.nodes.size(); ++i) {
    ComponentInfo& c = comps[dsu.find(i)];
    ++c.nodes;
    if (std::holds_alternative<EndpointNode>(d.nodes[i]))
      c.endpoints.push_back(i);
    else
      c.pure_endpoints = false;
  }
  for (unsigned ai = 0; ai < d.arcs.size(); ++ai)
    ++comps[dsu.find(d.arcs[ai].from.node)].arcs;

  const std::vector<unsigned> walk = boundary_walk(d);
  std::vector<unsigned> pos(d.nodes.size(), 0);
  for (unsigned i = 0; i < walk.size(); ++i) pos[walk[i]] = i;

  // Arc id of each chord component, keyed by component root.
  std::map<unsigned, unsigned> chord_arc;
  for (unsigned ai = 0; ai < d.arcs.size(); ++ai) {
    const unsigned root = dsu.find(d.arcs[ai].from.node);
    if (is_chord(comps[root])) chord_arc[root] = ai;
  }

  const auto positions_of = [&](const ComponentInfo& c) {
    std::vector<unsigned> ps;
    for (const unsigned nodeid : c.endpoints) ps.push_back(pos[nodeid]);
    std::sort(ps.begin(), ps.end());
    return ps;
  };

  // Forced meetings: interleaving endpoint sets across the two operands.
  std::vector<MutualCrossing> crossings;
  for (const auto& [rb, cb] : comps) {
    if (rb >= nb || cb.endpoints.empty()) continue;  // below components only
    const auto pbv = positions_of(cb);
    for (const auto& [ra, ca] : comps) {
      if (ra < nb || ca.endpoints.empty()) continue;  // above components only
      const auto pav = positions_of(ca);
      if (!interleave(pav, pbv)) continue;
      if (!is_chord(ca) || !is_chord(cb))
        throw std::invalid_argument(
            "stack: interleaved components must be plain boundary chords");
      const unsigned a_arc = chord_arc.at(ra);
      const unsigned b_arc = chord_arc.at(rb);
      const unsigned x = pav[0], y = pav[1];
      // Exactly one endpoint of the below chord lies inside the span (x, y).
      const unsigned u = (x < pbv[0] && pbv[0] < y) ? pbv[0] : pbv[1];
      const unsigned v = (u == pbv[0]) ? pbv[1] : pbv[0];
      (void)v;
      // Counterclockwise ports around the new crossing, in the cyclic order
      // of the boundary points the four strand ends run to: 0 toward y,
      // 1 toward v, 2 toward x, 3 toward u.  The above strand is the over
      // strand; each strand enters at the port facing where it comes from.
      const unsigned over_in = pos[d.arcs[a_arc].from.node] == x ? 2u : 0u;
      const unsigned under_in = pos[d.arcs[b_arc].from.node] == u ? 3u : 1u;
      const unsigned cnode = static_cast<unsigned>(d.nodes.size());
      d.nodes.push_back(CrossingNode{over_in, under_in});
      // Partner keys: along each chord, crossings are met in the order of
      // the partner's endpoint that lies strictly inside the chord's span.
      const unsigned a_inner = (pbv[0] < x && x < pbv[1]) ? x : y;
      crossings.push_back(MutualCrossing{cnode, a_arc, b_arc, u, a_inner});
    }
  }

  if (!crossings.empty()) {
    // Split every crossed chord arc through its crossings in span order.
    std::map<unsigned, std::vector<const MutualCrossing*>> by_arc;
    for (const MutualCrossing& mc : crossings) {
      by_arc[mc.above_arc].push_back(&mc);
      by_arc[mc.below_arc].push_back(&mc);
    }
    std::vector<char> dead(d.arcs.size(), 0);
    std::vector<Arc> fresh;
    for (auto& [arc_id, list] : by_arc) {
      const bool above_family = list.front()->above_arc == arc_id;
      std::sort(list.begin(), list.end(),
                [&](const MutualCrossing* l, const MutualCrossing* r) {
                  return (above_family ? l->above_key : l->below_key) <
                         (above_family ? r->above_key : r->below_key);
                });
      const Arc orig = d.arcs[arc_id];
      dead[arc_id] = 1;
      const unsigned tail_pos = pos[orig.from.node];
      const unsigned head_pos = pos[orig.to.node];
      if (tail_pos > head_pos) std::reverse(list.begin(), list.end());
      PortRef cur = orig.from;
      for (const MutualCrossing* mc : list) {
        const auto& cn = std::get<CrossingNode>(d.nodes[mc->node]);
        const unsigned enter = above_family ? cn.over_in : cn.under_in;
        fresh.push_back(Arc{cur, PortRef{mc->node, enter}});
        cur = PortRef{mc->node, (enter + 2) % 4};
      }
      fresh.push_back(Arc{cur, orig.to});
    }
    std::vector<Arc> kept;
    for (unsigned ai = 0; ai < d.arcs.size(); ++ai)
      if (!dead[ai]) kept.push_back(d.arcs[ai]);
    kept.insert(kept.end(), fresh.begin(), fresh.end());
    d.arcs = std::move(kept);
  }

  if (!is_valid(d))
    throw std::logic_error("stack: composed diagram failed validation");
  return d;
}

WebDiagram disjoint_union(const WebDiagram& a, const WebDiagram& b) {
  if (a.n != b.n) throw std::invalid_argument("disjoint union: rank mismatch");
  if (!(a.surface == b.surface) || a.surface.ideal_points != 0)
    throw std::invalid_argument("disjoint union: requires the closed disk");
  if (!is_valid(a) || !is_valid(b))
    throw std::invalid_argument("disjoint union: invalid operand");
  WebDiagram d = a;
  const unsigned na = static_cast<unsigned>(a.nodes.size());
  d.nodes.insert(d.nodes.end(), b.nodes.begin(), b.nodes.end());
  for (Arc arc : b.arcs) {
    arc.from.node += na;
    arc.to.node += na;
    d.arcs.push_back(arc);
  }
  d.free_loops += b.free_loops;
  return d;
}

unsigned relative_writhe(const WebDiagram& a, const WebDiagram& b) {
  const WebDiagram stacked = stack_diagrams(a, b);
  const long long mutual =
      stats(stacked).w - stats(normalize_ordering(a)).w -
      stats(normalize_ordering(b)).w;
  const long long n = a.n;
  return static_cast<unsigned>(((mutual % n) + n) % n);
}

}  // namespace skein
