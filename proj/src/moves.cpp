#include "skein/moves.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <variant>

#include <json.hpp>

#include "surgery.hpp"

namespace skein {
namespace {

using surgery::arc_with_head_at;
using surgery::arc_with_tail_at;
using surgery::erase_arc;
using surgery::erase_nodes;
using surgery::merge_through;

[[noreturn]] void reject(const std::string& msg) {
  throw std::invalid_argument("move: " + msg);
}

const CrossingNode* as_crossing(const WebDiagram& d, unsigned node) {
  if (node >= d.nodes.size()) return nullptr;
  return std::get_if<CrossingNode>(&d.nodes[node]);
}

void check_valid(const WebDiagram& d, const char* what) {
  const auto problems = validate(d);
  if (!problems.empty())
    throw std::invalid_argument(std::string("move: ") + what +
                                " does not embed in the polygon: " +
                                problems.front().code + ": " +
                                problems.front().detail);
}

// ---------------------------------------------------------------------------
// Strand push: insert two cancelling crossings.
//
// The gadget is a small bigon.  c1 carries the first crossing met along the
// pushed (over) strand, c2 the second; the over strand runs through ports
// 0 -> 2 of c1 and 0 -> 2 of c2, the under strand through 1 -> 3 of c1 and
// 3 -> 1 of c2, giving signs +1 and -1.
// ---------------------------------------------------------------------------
WebDiagram do_strand_push(WebDiagram d, const StrandPush& m) {
  if (m.over && m.under && *m.over == *m.under)
    reject("strand push needs two distinct strands");
  for (const auto& opt : {m.over, m.under})
    if (opt && *opt >= d.arcs.size()) reject("strand push: no such arc");

  const unsigned c1 = static_cast<unsigned>(d.nodes.size());
  const unsigned c2 = c1 + 1;
  d.nodes.push_back(CrossingNode{0, 1});  // over in 0, under in 1: sign +1
  d.nodes.push_back(CrossingNode{0, 3});  // over in 0, under in 3: sign -1

  if (m.over) {
    const PortRef t = d.arcs[*m.over].to;
    d.arcs[*m.over].to = {c1, 0};
    d.arcs.push_back({{c1, 2}, {c2, 0}});
    d.arcs.push_back({{c2, 2}, t});
  } else {
    if (d.free_loops == 0) reject("strand push: no free loop to materialize");
    --d.free_loops;
    d.arcs.push_back({{c1, 2}, {c2, 0}});
    d.arcs.push_back({{c2, 2}, {c1, 0}});
  }

  if (m.under) {
    const PortRef t = d.arcs[*m.under].to;
    d.arcs[*m.under].to = {c1, 1};
    d.arcs.push_back({{c1, 3}, {c2, 3}});
    d.arcs.push_back({{c2, 1}, t});
  } else {
    if (d.free_loops == 0) reject("strand push: no free loop to materialize");
    --d.free_loops;
    d.arcs.push_back({{c1, 3}, {c2, 3}});
    d.arcs.push_back({{c2, 1}, {c1, 1}});
  }

  check_valid(d, "strand push result");
  return d;
}

// ---------------------------------------------------------------------------
// Strand pull: cancel two crossings bounding an empty bigon.
// ---------------------------------------------------------------------------
WebDiagram do_strand_pull(WebDiagram d, const StrandPull& m) {
  const CrossingNode* x = as_crossing(d, m.first);
  const CrossingNode* y = as_crossing(d, m.second);
  if (!x || !y || m.first == m.second)
    reject("strand pull needs two distinct crossings");
  if (crossing_sign(*x) + crossing_sign(*y) != 0)
    reject("strand pull needs crossings of opposite sign");

  const unsigned xo = (x->over_in + 2) % 4;
  const unsigned xu = (x->under_in + 2) % 4;
  const int ao = arc_with_tail_at(d, {m.first, xo});
  const int au = arc_with_tail_at(d, {m.first, xu});
  if (ao < 0 || au < 0) reject("strand pull: crossing has vacant ports");
  if (!(d.arcs[static_cast<unsigned>(ao)].to == PortRef{m.second, y->over_in}))
    reject("strand pull: over strand is not a single arc first -> second");
  if (!(d.arcs[static_cast<unsigned>(au)].to ==
        PortRef{m.second, y->under_in}))
    reject("strand pull: under strand is not a single arc first -> second");

  const std::set<unsigned> connectors{static_cast<unsigned>(ao),
                                      static_cast<unsigned>(au)};
  bool bigon = false;
  for (const auto& f : surgery::faces(d)) {
    if (f.size() != 2) continue;
    if (std::set<unsigned>{f[0] / 2, f[1] / 2} == connectors) {
      bigon = true;
      break;
    }
  }
  if (!bigon) reject("strand pull: the two crossings do not bound a bigon");

  merge_through(d, m.first, x->over_in, xo);
  merge_through(d, m.second, y->over_in, (y->over_in + 2) % 4);
  merge_through(d, m.first, x->under_in, xu);
  merge_through(d, m.second, y->under_in, (y->under_in + 2) % 4);
  erase_nodes(d, {m.first, m.second});

  check_valid(d, "strand pull result");
  return d;
}

// ---------------------------------------------------------------------------
// Triangle slide.
// ---------------------------------------------------------------------------
WebDiagram do_triangle_slide(WebDiagram d, const TriangleSlide& m) {
  const std::set<unsigned> want{m.a, m.b, m.c};
  if (want.size() != 3) reject("triangle slide needs three distinct crossings");
  for (unsigned id : want)
    if (!as_crossing(d, id)) reject("triangle slide: not a crossing");

  // Locate a triangular face whose three sides pairwise join the three
  // crossings.  The face certifies both that each side is a single arc and
  // that the enclosed region carries nothing of this component.
  std::array<unsigned, 3> tri{};
  bool found = false;
  for (const auto& f : surgery::faces(d)) {
    if (f.size() != 3) continue;
    std::set<unsigned> arcs{f[0] / 2, f[1] / 2, f[2] / 2};
    if (arcs.size() != 3) continue;
    std::set<std::set<unsigned>> pairs;
    bool ok = true;
    for (unsigned a : arcs) {
      const Arc& ar = d.arcs[a];
      if (!want.count(ar.from.node) || !want.count(ar.to.node) ||
          ar.from.node == ar.to.node) {
        ok = false;
        break;
      }
      pairs.insert({ar.from.node, ar.to.node});
    }
    if (!ok || pairs.size() != 3) continue;
    std::copy(arcs.begin(), arcs.end(), tri.begin());
    found = true;
    break;
  }
  if (!found)
    reject("triangle slide: the crossings do not bound an empty triangle");

  // At least one of the three strands must pass uniformly over or uniformly
  // under its two crossings; otherwise the pattern is the impossible cyclic
  // weave and no slide exists.
  bool uniform = false;
  for (unsigned t : tri) {
    const Arc& ar = d.arcs[t];
    const CrossingNode& F = *as_crossing(d, ar.from.node);
    const CrossingNode& S = *as_crossing(d, ar.to.node);
    const bool over_at_F = ar.from.port == (F.over_in + 2) % 4;
    const bool over_at_S = ar.to.port == S.over_in;
    if (over_at_F == over_at_S) uniform = true;
  }
  if (!uniform)
    reject("triangle slide: no strand passes uniformly over or under");

  // Reverse the order of the two crossings along each strand.  For the
  // strand with middle segment t running F -> S this swaps the head of the
  // incoming external arc with the head of t, and the tail of t with the
  // tail of the outgoing external arc.  Crossing nodes are untouched, so
  // every over/under role and sign is preserved.
  for (unsigned t : tri) {
    const Arc ar = d.arcs[t];
    const unsigned entry_F = (ar.from.port + 2) % 4;
    const unsigned exit_S = (ar.to.port + 2) % 4;
    const int in_arc = arc_with_head_at(d, {ar.from.node, entry_F});
    const int out_arc = arc_with_tail_at(d, {ar.to.node, exit_S});
    if (in_arc < 0 || out_arc < 0)
      reject("triangle slide: crossing has vacant ports");
    std::swap(d.arcs[static_cast<unsigned>(in_arc)].to, d.arcs[t].to);
    std::swap(d.arcs[t].from, d.arcs[static_cast<unsigned>(out_arc)].from);
  }

  check_valid(d, "triangle slide result");
  return d;
}

// ---------------------------------------------------------------------------
// Vertex slide.
// ---------------------------------------------------------------------------
WebDiagram do_vertex_slide(WebDiagram d, const VertexSlide& m) {
  if (m.vertex >= d.nodes.size()) reject("vertex slide: no such node");
  const bool is_sink = std::holds_alternative<SinkNode>(d.nodes[m.vertex]);
  const bool is_source = std::holds_alternative<SourceNode>(d.nodes[m.vertex]);
  if (!is_sink && !is_source) reject("vertex slide: node is not a vertex");
  const unsigned nports = port_count(d, m.vertex);

  const std::size_t mm = m.crossings.size();
  if (mm == 0 || mm > nports)
    reject("vertex slide: crossing list must name 1..n distinct crossings");
  if (std::set<unsigned>(m.crossings.begin(), m.crossings.end()).size() != mm)
    reject("vertex slide: crossing list must name 1..n distinct crossings");

  // Per listed crossing: the leg port at the vertex, the port facing the
  // vertex, and the strand's entry/exit ports.
  std::vector<unsigned> leg_port(mm), to_v(mm), s_entry(mm), s_exit(mm);
  std::vector<int> side(mm);
  std::vector<bool> s_over(mm);
  for (std::size_t i = 0; i < mm; ++i) {
    const unsigned K = m.crossings[i];
    const CrossingNode* cn = as_crossing(d, K);
    if (!cn) reject("vertex slide: listed node is not a crossing");
    // The leg between K and the vertex must be a single direct arc.
    int la = -1;
    for (std::size_t a = 0; a < d.arcs.size(); ++a) {
      const Arc& ar = d.arcs[a];
      const bool hit = is_sink
                           ? (ar.from.node == K && ar.to.node == m.vertex)
                           : (ar.from.node == m.vertex && ar.to.node == K);
      if (hit) {
        if (la >= 0) reject("vertex slide: two legs meet at one crossing");
        la = static_cast<int>(a);
      }
    }
    if (la < 0) reject("vertex slide: crossing is not adjacent to the vertex");
    const Arc& leg = d.arcs[static_cast<unsigned>(la)];
    leg_port[i] = is_sink ? leg.to.port : leg.from.port;
    to_v[i] = is_sink ? leg.from.port : leg.to.port;

    // The sliding strand occupies the other parity pair; its entry port is
    // the one holding an arc head.
    const unsigned z = (to_v[i] + 1) % 4;
    if (arc_with_head_at(d, {K, z}) >= 0) {
      s_entry[i] = z;
    } else if (arc_with_head_at(d, {K, (z + 2) % 4}) >= 0) {
      s_entry[i] = (z + 2) % 4;
    } else {
      reject("vertex slide: crossing has vacant ports");
    }
    s_exit[i] = (s_entry[i] + 2) % 4;
    s_over[i] = s_entry[i] == cn->over_in;

    // Which side of the strand the vertex lies on, read off the rotation.
    if (to_v[i] == (s_exit[i] + 1) % 4)
      side[i] = 1;
    else if (to_v[i] == (s_exit[i] + 3) % 4)
      side[i] = -1;
    else
      reject("vertex slide: leg and strand ports are inconsistent");
  }

  const int dside = side[0];
  for (std::size_t i = 0; i < mm; ++i) {
    if (side[i] != dside)
      reject("vertex slide: strand does not stay on one side of the vertex");
    if (s_over[i] != s_over[0])
      reject("vertex slide: strand must pass uniformly over or under");
  }
  const unsigned step = dside > 0 ? 1 : nports - 1;
  for (std::size_t i = 0; i + 1 < mm; ++i)
    if (leg_port[i + 1] != (leg_port[i] + step) % nports)
      reject("vertex slide: legs are not cyclically consecutive");

  // Between consecutive listed crossings the strand must be a single arc,
  // and together with the two legs it must bound an empty triangle.
  const auto fs = surgery::faces(d);
  for (std::size_t i = 0; i + 1 < mm; ++i) {
    const int seg = arc_with_tail_at(d, {m.crossings[i], s_exit[i]});
    if (seg < 0 ||
        !(d.arcs[static_cast<unsigned>(seg)].to ==
          PortRef{m.crossings[i + 1], s_entry[i + 1]}))
      reject("vertex slide: strand segments must be single arcs");
    const int l1 = is_sink
                       ? arc_with_tail_at(d, {m.crossings[i], to_v[i]})
                       : arc_with_head_at(d, {m.crossings[i], to_v[i]});
    const int l2 =
        is_sink ? arc_with_tail_at(d, {m.crossings[i + 1], to_v[i + 1]})
                : arc_with_head_at(d, {m.crossings[i + 1], to_v[i + 1]});
    const std::set<unsigned> tri{static_cast<unsigned>(seg),
                                 static_cast<unsigned>(l1),
                                 static_cast<unsigned>(l2)};
    bool empty_tri = false;
    for (const auto& f : fs) {
      if (f.size() != 3) continue;
      if (std::set<unsigned>{f[0] / 2, f[1] / 2, f[2] / 2} == tri) {
        empty_tri = true;
        break;
      }
    }
    if (!empty_tri)
      reject("vertex slide: strand is not adjacent to the vertex");
  }

  // External attachments of the sliding strand, and closedness.
  const int in_arc = arc_with_head_at(d, {m.crossings[0], s_entry[0]});
  const bool closed =
      in_arc >= 0 &&
      d.arcs[static_cast<unsigned>(in_arc)].from ==
          PortRef{m.crossings[mm - 1], s_exit[mm - 1]};
  if (closed && mm != nports)
    reject("vertex slide: a closed strand must cross every leg");
  PortRef f_ext{}, t_ext{};
  if (!closed) {
    const int out_arc = arc_with_tail_at(d, {m.crossings[mm - 1], s_exit[mm - 1]});
    if (in_arc < 0 || out_arc < 0)
      reject("vertex slide: crossing has vacant ports");
    f_ext = d.arcs[static_cast<unsigned>(in_arc)].from;
    t_ext = d.arcs[static_cast<unsigned>(out_arc)].to;
    for (unsigned K : m.crossings)
      if (f_ext.node == K || t_ext.node == K)
        reject("vertex slide: strand re-enters the pattern");
  }

  // Surgery: splice the legs and the strand through every listed crossing,
  // drop the crossings, then re-cross the strand over the complementary
  // legs on the other side.
  const unsigned vport0 = leg_port[0];
  for (std::size_t i = 0; i < mm; ++i) {
    const unsigned K = m.crossings[i];
    // A sink leg flows toward the vertex, a source leg away from it.
    const unsigned leg_in = is_sink ? (to_v[i] + 2) % 4 : to_v[i];
    merge_through(d, K, leg_in, (leg_in + 2) % 4);
    merge_through(d, K, s_entry[i], s_exit[i]);
  }
  std::vector<unsigned> victims(m.crossings.begin(), m.crossings.end());
  const std::vector<int> remap = erase_nodes(d, victims);
  const unsigned vtx = static_cast<unsigned>(remap[m.vertex]);

  const unsigned comp = nports - static_cast<unsigned>(mm);
  if (comp > 0) {
    // 'closed' is impossible here (a closed strand crosses all legs).
    f_ext.node = static_cast<unsigned>(remap[f_ext.node]);
    t_ext.node = static_cast<unsigned>(remap[t_ext.node]);
    const int si = arc_with_tail_at(d, f_ext);
    if (si < 0) reject("vertex slide: lost the sliding strand");

    const int nside = -dside;
    const unsigned port_to_v = nside > 0 ? 1 : 3;
    const unsigned port_away = 4 - port_to_v;
    const unsigned leg_entry = is_sink ? port_away : port_to_v;

    std::vector<unsigned> fresh(comp);
    for (unsigned j = 0; j < comp; ++j) {
      fresh[j] = static_cast<unsigned>(d.nodes.size());
      const unsigned over_in = s_over[0] ? 2 : leg_entry;
      const unsigned under_in = s_over[0] ? leg_entry : 2;
      d.nodes.push_back(CrossingNode{over_in, under_in});
    }

    // Thread the strand: enters each new crossing at 2, leaves at 0.
    d.arcs[static_cast<unsigned>(si)].to = {fresh[0], 2};
    for (unsigned j = 0; j + 1 < comp; ++j)
      d.arcs.push_back({{fresh[j], 0}, {fresh[j + 1], 2}});
    d.arcs.push_back({{fresh[comp - 1], 0}, t_ext});

    // Split each complementary leg through its new crossing.
    for (unsigned j = 0; j < comp; ++j) {
      const unsigned q =
          (vport0 + (dside > 0 ? nports - 1 - j : 1 + j)) % nports;
      if (is_sink) {
        const int la = arc_with_head_at(d, {vtx, q});
        if (la < 0) reject("vertex slide: vertex has vacant ports");
        d.arcs[static_cast<unsigned>(la)].to = {fresh[j], port_away};
        d.arcs.push_back({{fresh[j], port_to_v}, {vtx, q}});
      } else {
        const int la = arc_with_tail_at(d, {vtx, q});
        if (la < 0) reject("vertex slide: vertex has vacant ports");
        const PortRef far = d.arcs[static_cast<unsigned>(la)].to;
        d.arcs[static_cast<unsigned>(la)].to = {fresh[j], port_to_v};
        d.arcs.push_back({{fresh[j], port_away}, far});
      }
    }
  }

  check_valid(d, "vertex slide result");
  return d;
}

// ---------------------------------------------------------------------------
// Vertex twist: one kink of the given sign on every leg.
// ---------------------------------------------------------------------------
WebDiagram do_vertex_twist(WebDiagram d, const VertexTwist& m) {
  if (m.vertex >= d.nodes.size()) reject("vertex twist: no such node");
  const bool is_sink = std::holds_alternative<SinkNode>(d.nodes[m.vertex]);
  const bool is_source = std::holds_alternative<SourceNode>(d.nodes[m.vertex]);
  if (!is_sink && !is_source) reject("vertex twist: node is not a vertex");
  if (m.sign != 1 && m.sign != -1) reject("vertex twist: sign must be +-1");

  const unsigned nports = port_count(d, m.vertex);
  std::vector<unsigned> legs(nports);
  for (unsigned p = 0; p < nports; ++p) {
    const int la = is_sink ? arc_with_head_at(d, {m.vertex, p})
                           : arc_with_tail_at(d, {m.vertex, p});
    if (la < 0) reject("vertex twist: vertex has vacant ports");
    legs[p] = static_cast<unsigned>(la);
  }
  for (unsigned la : legs) d = insert_kink(d, la, m.sign, true);
  return d;
}

unsigned get_unsigned(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned())
    throw std::invalid_argument(std::string("move script: field '") + key +
                                "' must be a non-negative integer");
  return j[key].get<unsigned>();
}

}  // namespace

WebDiagram apply_move(const WebDiagram& d, const Move& m) {
  return std::visit(
      [&](const auto& mv) -> WebDiagram {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, StrandPush>)
          return do_strand_push(d, mv);
        else if constexpr (std::is_same_v<T, StrandPull>)
          return do_strand_pull(d, mv);
        else if constexpr (std::is_same_v<T, TriangleSlide>)
          return do_triangle_slide(d, mv);
        else if constexpr (std::is_same_v<T, VertexSlide>)
          return do_vertex_slide(d, mv);
        else
          return do_vertex_twist(d, mv);
      },
      m);
}

WebDiagram apply_move_script(const WebDiagram& d, const MoveScript& script) {
  WebDiagram out = d;
  for (const Move& m : script) out = apply_move(out, m);
  return out;
}

bool move_equivalent(const WebDiagram& a, const WebDiagram& b,
                     const MoveScript& witness) {
  return canonical_encoding(apply_move_script(a, witness)) ==
         canonical_encoding(b);
}

WebDiagram insert_kink(const WebDiagram& d0, unsigned arc, int sign,
                       bool over_first) {
  if (sign != 1 && sign != -1) reject("kink sign must be +-1");
  WebDiagram d = d0;
  if (arc >= d.arcs.size()) reject("insert kink: no such arc");

  const unsigned c = static_cast<unsigned>(d.nodes.size());
  // Port layout per variant: the strand enters at `in`, runs through the
  // crossing twice via a little self arc between adjacent ports, and leaves
  // at `out`.
  unsigned in = 0, out = 0, self_from = 0, self_to = 0;
  if (sign > 0) {
    d.nodes.push_back(CrossingNode{0, 1});
    if (over_first) {
      in = 0, self_from = 2, self_to = 1, out = 3;
    } else {
      in = 1, self_from = 3, self_to = 0, out = 2;
    }
  } else {
    d.nodes.push_back(CrossingNode{0, 3});
    if (over_first) {
      in = 0, self_from = 2, self_to = 3, out = 1;
    } else {
      in = 3, self_from = 1, self_to = 0, out = 2;
    }
  }
  const PortRef t = d.arcs[arc].to;
  d.arcs[arc].to = {c, in};
  d.arcs.push_back({{c, self_from}, {c, self_to}});
  d.arcs.push_back({{c, out}, t});

  check_valid(d, "kink insertion result");
  return d;
}

WebDiagram remove_kink(const WebDiagram& d0, unsigned crossing,
                       int* sign_out) {
  WebDiagram d = d0;
  const CrossingNode* c = as_crossing(d, crossing);
  if (!c) reject("remove kink: not a crossing");

  int self_arc = -1;
  for (std::size_t a = 0; a < d.arcs.size(); ++a)
    if (d.arcs[a].from.node == crossing && d.arcs[a].to.node == crossing) {
      self_arc = static_cast<int>(a);
      break;
    }
  if (self_arc < 0) reject("remove kink: crossing carries no self arc");
  const unsigned po = d.arcs[static_cast<unsigned>(self_arc)].from.port;
  const unsigned pi = d.arcs[static_cast<unsigned>(self_arc)].to.port;
  if (po % 2 == pi % 2) reject("remove kink: self arc closes its own strand");

  if (sign_out) *sign_out = crossing_sign(*c);
  erase_arc(d, static_cast<unsigned>(self_arc));
  merge_through(d, crossing, (po + 2) % 4, (pi + 2) % 4);
  erase_nodes(d, {crossing});

  check_valid(d, "kink removal result");
  return d;
}

WebDiagram reflect_diagram(const WebDiagram& d0) {
  WebDiagram d = normalize_ordering(d0);
  const unsigned k = d.surface.ideal_points;

  std::vector<unsigned> pop(k, 0);
  for (const Node& nd : d.nodes)
    if (const auto* ep = std::get_if<EndpointNode>(&nd)) ++pop[ep->edge];

  for (unsigned i = 0; i < d.nodes.size(); ++i) {
    const unsigned deg = port_count(d, i);
    std::visit(
        [&](auto& nd) {
          using T = std::decay_t<decltype(nd)>;
          if constexpr (std::is_same_v<T, CrossingNode>) {
            nd.over_in = (4 - nd.over_in) % 4;
            nd.under_in = (4 - nd.under_in) % 4;
          } else if constexpr (std::is_same_v<T, SinkNode> ||
                               std::is_same_v<T, SourceNode>) {
            if (nd.base) nd.base = (deg - *nd.base % deg) % deg;
          } else if constexpr (std::is_same_v<T, EndpointNode>) {
            nd.height = pop[nd.edge] + 1 - nd.height;
            nd.edge = k - 1 - nd.edge;
          }
        },
        d.nodes[i]);
  }

  for (Arc& a : d.arcs)
    for (PortRef* end : {&a.from, &a.to}) {
      const unsigned deg = port_count(d, end->node);
      if (!std::holds_alternative<EndpointNode>(d.nodes[end->node]))
        end->port = (deg - end->port % deg) % deg;
    }

  check_valid(d, "reflected diagram");
  return d;
}

std::string print_move_script(const MoveScript& script) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Move& m : script) {
    nlohmann::json j;
    std::visit(
        [&](const auto& mv) {
          using T = std::decay_t<decltype(mv)>;
          if constexpr (std::is_same_v<T, StrandPush>) {
            j["move"] = "strand-push";
            j["over"] = mv.over ? nlohmann::json(*mv.over)
                                : nlohmann::json(nullptr);
            j["under"] = mv.under ? nlohmann::json(*mv.under)
                                  : nlohmann::json(nullptr);
          } else if constexpr (std::is_same_v<T, StrandPull>) {
            j["move"] = "strand-pull";
            j["first"] = mv.first;
            j["second"] = mv.second;
          } else if constexpr (std::is_same_v<T, TriangleSlide>) {
            j["move"] = "triangle-slide";
            j["crossings"] = {mv.a, mv.b, mv.c};
          } else if constexpr (std::is_same_v<T, VertexSlide>) {
            j["move"] = "vertex-slide";
            j["vertex"] = mv.vertex;
            j["crossings"] = mv.crossings;
          } else {
            j["move"] = "vertex-twist";
            j["vertex"] = mv.vertex;
            j["sign"] = mv.sign;
          }
        },
        m);
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

MoveScript parse_move_script(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("move script: ") + e.what());
  }
  if (!arr.is_array())
    throw std::invalid_argument("move script: expected a JSON array");

  MoveScript out;
  for (const auto& j : arr) {
    if (!j.is_object() || !j.contains("move") || !j["move"].is_string())
      throw std::invalid_argument(
          "move script: each entry needs a string 'move' field");
    const std::string kind = j["move"].get<std::string>();
    if (kind == "strand-push") {
      StrandPush mv;
      for (const char* key : {"over", "under"}) {
        if (!j.contains(key))
          throw std::invalid_argument(
              "move script: strand-push needs 'over' and 'under'");
        auto& slot = (std::string(key) == "over") ? mv.over : mv.under;
        if (j[key].is_null())
          slot = std::nullopt;
        else if (j[key].is_number_unsigned())
          slot = j[key].get<unsigned>();
        else
          throw std::invalid_argument(
              "move script: strand-push operands are arc ids or null");
      }
      out.emplace_back(mv);
    } else if (kind == "strand-pull") {
      out.emplace_back(
          StrandPull{get_unsigned(j, "first"), get_unsigned(j, "second")});
    } else if (kind == "triangle-slide") {
      if (!j.contains("crossings") || !j["crossings"].is_array() ||
          j["crossings"].size() != 3)
        throw std::invalid_argument(
            "move script: triangle-slide needs three crossings");
      TriangleSlide mv;
      unsigned* slots[3] = {&mv.a, &mv.b, &mv.c};
      for (int i = 0; i < 3; ++i) {
        if (!j["crossings"][i].is_number_unsigned())
          throw std::invalid_argument(
              "move script: crossing ids must be non-negative integers");
        *slots[i] = j["crossings"][i].get<unsigned>();
      }
      out.emplace_back(mv);
    } else if (kind == "vertex-slide") {
      VertexSlide mv;
      mv.vertex = get_unsigned(j, "vertex");
      if (!j.contains("crossings") || !j["crossings"].is_array())
        throw std::invalid_argument(
            "move script: vertex-slide needs a crossing list");
      for (const auto& c : j["crossings"]) {
        if (!c.is_number_unsigned())
          throw std::invalid_argument(
              "move script: crossing ids must be non-negative integers");
        mv.crossings.push_back(c.get<unsigned>());
      }
      out.emplace_back(mv);
    } else if (kind == "vertex-twist") {
      VertexTwist mv;
      mv.vertex = get_unsigned(j, "vertex");
      if (!j.contains("sign") || !j["sign"].is_number_integer())
        throw std::invalid_argument("move script: vertex-twist needs a sign");
      mv.sign = j["sign"].get<int>();
      out.emplace_back(mv);
    } else {
      throw std::invalid_argument("move script: unknown move '" + kind + "'");
    }
  }
  return out;
}

}  // namespace skein
