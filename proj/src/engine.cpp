#include "skein/engine.hpp"

#include "skein/constants.hpp"
#include "skein/moves.hpp"
#include "skein/overlay.hpp"
#include "surgery.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <variant>

namespace skein {

namespace {

namespace sg = surgery;
using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

void require_valid(const WebDiagram& d, const std::string& who) {
  auto vs = validate(d);
  if (!vs.empty()) fail(who + ": " + vs.front().code + ": " + vs.front().detail);
}

bool same_surface(const PolygonSurface& a, const PolygonSurface& b) {
  return a.ideal_points == b.ideal_points;
}

// (-1)^{n-1} [n], the value of one free circle.
LaurentScalar circle_value(unsigned n) {
  LaurentScalar c = constants(n).qn;
  return n % 2 == 0 ? -c : c;
}

}  // namespace

// ---------------------------------------------------------------------------
// SkeinExpression

SkeinExpression::SkeinExpression(unsigned n, PolygonSurface surface)
    : n_(n), surface_(surface) {}

SkeinExpression SkeinExpression::from_diagram(const WebDiagram& d) {
  return from_diagram(d, LaurentScalar::one());
}

SkeinExpression SkeinExpression::from_diagram(const WebDiagram& d,
                                              const LaurentScalar& coefficient) {
  SkeinExpression e(d.n, d.surface);
  e.add(d, coefficient);
  return e;
}

void SkeinExpression::add(const WebDiagram& d, const LaurentScalar& coefficient) {
  if (coefficient.is_zero()) return;
  if (d.n != n_ || !same_surface(d.surface, surface_))
    fail("expression terms must share one rank and one surface");
  auto vs = validate(d);
  if (!vs.empty())
    fail("expression term is not a valid diagram: " + vs.front().code + ": " +
         vs.front().detail);
  WebDiagram nd = normalize_ordering(d);
  std::string key = canonical_encoding(nd);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), SkeinTerm{std::move(nd), coefficient});
  } else {
    it->second.coefficient += coefficient;
    if (it->second.coefficient.is_zero()) terms_.erase(it);
  }
}

SkeinExpression& SkeinExpression::operator+=(const SkeinExpression& other) {
  if (other.n_ != n_ || !same_surface(other.surface_, surface_))
    fail("cannot add expressions with different ranks or surfaces");
  for (const auto& [key, term] : other.terms_) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, term);
    } else {
      it->second.coefficient += term.coefficient;
      if (it->second.coefficient.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

SkeinExpression SkeinExpression::scaled(const LaurentScalar& c) const {
  SkeinExpression out(n_, surface_);
  if (c.is_zero()) return out;
  out.terms_ = terms_;
  for (auto& [key, term] : out.terms_) term.coefficient *= c;
  return out;
}

bool SkeinExpression::operator==(const SkeinExpression& other) const {
  if (n_ != other.n_ || surface_.ideal_points != other.surface_.ideal_points ||
      terms_.size() != other.terms_.size())
    return false;
  for (auto it = terms_.begin(), jt = other.terms_.begin();
       it != terms_.end(); ++it, ++jt)
    if (it->first != jt->first || it->second.coefficient != jt->second.coefficient)
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Vertex-pair expansion (shared by the two pair rules and eliminate_vertices)

namespace {

// All permutations of {1..n}, lexicographically.
std::vector<std::vector<unsigned>> permutations(unsigned n) {
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 1u);
  std::vector<std::vector<unsigned>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Adjacent-transposition word realizing sigma: applying the letters left to
// right to parallel rows (letter i crosses rows i and i+1) routes the wire
// entering row r to row sigma(r).  The length equals the inversion number.
std::vector<unsigned> braid_word(const std::vector<unsigned>& sigma) {
  const unsigned n = static_cast<unsigned>(sigma.size());
  std::vector<unsigned> t(n);
  for (unsigned r = 1; r <= n; ++r) t[sigma[r - 1] - 1] = r;  // sigma^{-1}
  std::vector<unsigned> word;
  bool moved = true;
  while (moved) {
    moved = false;
    for (unsigned i = 0; i + 1 < n; ++i) {
      if (t[i] > t[i + 1]) {
        std::swap(t[i], t[i + 1]);
        word.push_back(i + 1);
        moved = true;
      }
    }
  }
  std::reverse(word.begin(), word.end());
  return word;
}

struct PairTerm {
  WebDiagram diagram;
  unsigned length = 0;  // inversion number of the inserted permutation
};

struct PairExpansion {
  std::vector<PairTerm> terms;  // one per permutation, lexicographic order
  std::vector<int> node_remap;  // old node id -> new id (-1 for the pair)
};

// Replaces one adjacent sink/source pair by every positive-braid insertion.
// Port (aS + j - 1) of the sink is braid row j on the entering side; port
// (aR + n - s) of the source is braid row s on the exiting side.  Throws
// err_pattern when the site does not name such a pair (or, in the based
// rule, when a vertex has no base) and err_embed when an insertion does not
// embed in the surface.
PairExpansion expand_pair(const WebDiagram& d, unsigned sink, unsigned source,
                          std::optional<unsigned> sink_anchor,
                          std::optional<unsigned> source_anchor, bool based,
                          const std::string& err_pattern,
                          const std::string& err_embed) {
  const unsigned n = d.n;
  if (sink >= d.nodes.size() || source >= d.nodes.size() || sink == source)
    fail(err_pattern);
  const auto* snk = std::get_if<SinkNode>(&d.nodes[sink]);
  const auto* src = std::get_if<SourceNode>(&d.nodes[source]);
  if (snk == nullptr || src == nullptr) fail(err_pattern);
  if (snk->ports != n || src->ports != n) fail(err_pattern);
  unsigned aS = sink_anchor ? *sink_anchor : snk->base.value_or(0);
  unsigned aR = source_anchor ? *source_anchor : src->base.value_or(0);
  if (based) {
    if (!snk->base || !src->base) fail(err_pattern);
    aS = *snk->base;
    aR = *src->base;
  }

  std::vector<unsigned> in_arc(n + 1), out_arc(n + 1);
  for (unsigned j = 1; j <= n; ++j) {
    const int ia = sg::arc_with_head_at(d, PortRef{sink, (aS + j - 1) % n});
    const int oa = sg::arc_with_tail_at(d, PortRef{source, (aR + n - j) % n});
    if (ia < 0 || oa < 0) fail(err_pattern);
    in_arc[j] = static_cast<unsigned>(ia);
    out_arc[j] = static_cast<unsigned>(oa);
  }

  PairExpansion out;
  out.node_remap.assign(d.nodes.size(), 0);
  for (unsigned x = 0; x < d.nodes.size(); ++x) {
    if (x == sink || x == source) {
      out.node_remap[x] = -1;
    } else {
      out.node_remap[x] =
          static_cast<int>(x) - (x > sink ? 1 : 0) - (x > source ? 1 : 0);
    }
  }

  for (const auto& sigma : permutations(n)) {
    const std::vector<unsigned> word = braid_word(sigma);
    WebDiagram t = d;

    // open[r] = the arc currently dangling at braid row r (entering side
    // until a crossing consumes it, exiting side afterwards).
    std::vector<unsigned> open(n + 1);
    for (unsigned j = 1; j <= n; ++j) open[j] = in_arc[j];
    for (unsigned letter : word) {
      const unsigned c = static_cast<unsigned>(t.nodes.size());
      t.nodes.emplace_back(CrossingNode{0, 1});
      t.arcs[open[letter]].to = PortRef{c, 0};
      t.arcs[open[letter + 1]].to = PortRef{c, 1};
      open[letter] = static_cast<unsigned>(t.arcs.size());
      t.arcs.push_back(Arc{PortRef{c, 3}, PortRef{c, 3}});  // head patched below
      open[letter + 1] = static_cast<unsigned>(t.arcs.size());
      t.arcs.push_back(Arc{PortRef{c, 2}, PortRef{c, 2}});
    }

    // Reconnect braid exits to the continuations beyond the dying source.
    // An out-arc can itself be the untouched in-arc of a crossing-free row
    // (a strand running straight from source to sink), in which case the
    // wire passes through that row and continues at *its* out-arc, so exits
    // are resolved as chains; chains that close up are free loops.
    std::map<unsigned, unsigned> enter_row;  // untouched in-arc -> its row
    std::set<unsigned> exits;                // every out-arc
    for (unsigned j = 1; j <= n; ++j) {
      if (open[j] == in_arc[j]) enter_row.emplace(in_arc[j], j);
      exits.insert(out_arc[j]);
    }
    // A chain starts at every crossed row and at every straight row whose
    // in-arc comes from outside the pair; straight rows whose in-arc is some
    // row's out-arc are consumed mid-chain, and whatever remains is a family
    // of closed cycles.
    std::vector<char> row_done(n + 1, 0);
    std::vector<unsigned> doomed;
    for (unsigned s0 = 1; s0 <= n; ++s0) {
      const bool straight = open[s0] == in_arc[s0];
      if (row_done[s0] || (straight && exits.count(in_arc[s0]) > 0)) continue;
      PortRef final_to{};
      unsigned cur = s0;
      while (true) {
        const unsigned oa = out_arc[cur];
        doomed.push_back(oa);
        row_done[cur] = 1;
        auto it = enter_row.find(oa);
        if (it != enter_row.end()) {  // straight through row it->second
          cur = it->second;
          continue;
        }
        final_to = t.arcs[oa].to;
        break;
      }
      t.arcs[open[s0]].to = final_to;
    }
    for (unsigned s = 1; s <= n; ++s) {  // leftover straight rows: closed loops
      if (row_done[s]) continue;
      unsigned cur = s;
      while (!row_done[cur]) {
        row_done[cur] = 1;
        const unsigned oa = out_arc[cur];
        doomed.push_back(oa);
        cur = enter_row.at(oa);
      }
      ++t.free_loops;
    }

    std::sort(doomed.begin(), doomed.end(), std::greater<unsigned>());
    for (unsigned a : doomed) sg::erase_arc(t, a);
    sg::erase_nodes(t, {sink, source});
    if (!is_valid(t)) fail(err_embed);
    out.terms.push_back(
        PairTerm{std::move(t), static_cast<unsigned>(word.size())});
  }
  return out;
}

// Per-permutation factor (-q^{(1-n)/n})^l = (-1)^l v^{2(1-n)l}.
LaurentScalar sigma_factor(unsigned n, unsigned length) {
  LaurentScalar f =
      LaurentScalar::v_pow(2 * (1 - static_cast<long long>(n)) *
                           static_cast<long long>(length));
  return length % 2 == 1 ? -f : f;
}

// Pair prefactor: (-q)^{n(n-1)/2} in the stated rule, q^{n(n-1)} based.
LaurentScalar pair_prefactor(unsigned n, bool based) {
  const long long h = static_cast<long long>(n) * (n - 1);
  if (based) return q_power(n, h);
  LaurentScalar p = q_power(n, h / 2);
  return (h / 2) % 2 == 1 ? -p : p;
}

}  // namespace

// ---------------------------------------------------------------------------
// apply_relation

namespace {

using RhsTerms = std::vector<std::pair<WebDiagram, LaurentScalar>>;

const CrossingNode& crossing_at(const WebDiagram& d, unsigned node,
                                const std::string& who) {
  if (node >= d.nodes.size()) fail(who + ": no such node");
  const auto* c = std::get_if<CrossingNode>(&d.nodes[node]);
  if (c == nullptr) fail(who + ": site is not a crossing");
  return *c;
}

// Oriented smoothing of one crossing: each incoming strand turns onto the
// outgoing side of the other strand.
WebDiagram smooth_crossing(const WebDiagram& d, unsigned node) {
  const CrossingNode& cn = std::get<CrossingNode>(d.nodes[node]);
  WebDiagram s = d;
  sg::merge_through(s, node, cn.over_in, (cn.under_in + 2) % 4);
  sg::merge_through(s, node, cn.under_in, (cn.over_in + 2) % 4);
  sg::erase_nodes(s, {node});
  return s;
}

WebDiagram switch_crossing(const WebDiagram& d, unsigned node) {
  WebDiagram s = d;
  auto& cn = std::get<CrossingNode>(s.nodes[node]);
  std::swap(cn.over_in, cn.under_in);
  return s;
}

RhsTerms rhs_crossing_smoothing(const WebDiagram& d, const RelationSite& site) {
  const CrossingNode& cn = crossing_at(d, site.node, "crossing smoothing");
  const unsigned n = d.n;
  const WebDiagram smoothed = smooth_crossing(d, site.node);
  const WebDiagram switched = switch_crossing(d, site.node);
  RhsTerms out;
  if (crossing_sign(cn) > 0) {
    out.emplace_back(smoothed, q_power(n, -1, n) * q_minus_qinv(n));
    out.emplace_back(switched, q_power(n, -2, n));
  } else {
    out.emplace_back(switched, q_power(n, 2, n));
    out.emplace_back(smoothed, -(q_power(n, 1, n) * q_minus_qinv(n)));
  }
  return out;
}

RhsTerms rhs_kink_removal(const WebDiagram& d, const RelationSite& site) {
  int sign = 0;
  WebDiagram bare = remove_kink(d, site.node, &sign);
  const LaurentScalar t = constants(d.n).t;
  RhsTerms out;
  out.emplace_back(std::move(bare), sign > 0 ? t : t.ipow(-1));
  return out;
}

RhsTerms rhs_circle_removal(const WebDiagram& d) {
  if (d.free_loops == 0) fail("circle removal: no free circle in the term");
  WebDiagram rest = d;
  --rest.free_loops;
  RhsTerms out;
  out.emplace_back(std::move(rest), circle_value(d.n));
  return out;
}

RhsTerms rhs_pair_expansion(const WebDiagram& d, const RelationSite& site,
                            bool based) {
  PairExpansion ex = expand_pair(
      d, site.node, site.partner, site.anchor, site.partner_anchor, based,
      "vertex pair expansion: site does not name a sink/source pair"
      + std::string(based ? " with bases" : ""),
      "vertex pair is not in standard position");
  const LaurentScalar pre = pair_prefactor(d.n, based);
  RhsTerms out;
  out.reserve(ex.terms.size());
  for (auto& t : ex.terms)
    out.emplace_back(std::move(t.diagram), pre * sigma_factor(d.n, t.length));
  return out;
}

RhsTerms rhs_vertex_boundary_expansion(const WebDiagram& d,
                                       const RelationSite& site) {
  const unsigned n = d.n;
  if (site.node >= d.nodes.size()) fail("vertex expansion: no such node");
  const auto* snk = std::get_if<SinkNode>(&d.nodes[site.node]);
  const auto* src = std::get_if<SourceNode>(&d.nodes[site.node]);
  if (snk == nullptr && src == nullptr)
    fail("vertex expansion: site is not a sink or source vertex");
  if (site.edge >= d.surface.ideal_points)
    fail("vertex expansion: no such boundary edge");
  const unsigned pop = sg::edge_population(d, site.edge);
  if (site.rank < 1 || site.rank > pop + 1)
    fail("vertex expansion: insertion rank out of range");
  const unsigned anchor =
      site.anchor.value_or((snk ? snk->base : src->base).value_or(0));
  const LaurentScalar a = constants(n).a;

  RhsTerms out;
  for (const auto& sigma : permutations(n)) {
    WebDiagram t = d;
    sg::shift_ranks(t, site.edge, site.rank, static_cast<int>(n));
    for (unsigned leg = 1; leg <= n; ++leg) {
      const PortRef p{site.node, (anchor + leg - 1) % n};
      const unsigned rank = site.rank + n - leg;
      const unsigned state = sigma[leg - 1];
      const unsigned id = static_cast<unsigned>(t.nodes.size());
      if (snk != nullptr) {
        const int a_in = sg::arc_with_head_at(t, p);
        if (a_in < 0) fail("vertex expansion: vacant vertex port");
        t.nodes.emplace_back(EndpointNode{site.edge, rank, state,
                                          EndpointDir::TowardBoundary});
        t.arcs[static_cast<unsigned>(a_in)].to = PortRef{id, 0};
      } else {
        const int a_out = sg::arc_with_tail_at(t, p);
        if (a_out < 0) fail("vertex expansion: vacant vertex port");
        t.nodes.emplace_back(EndpointNode{site.edge, rank, state,
                                          EndpointDir::AwayFromBoundary});
        t.arcs[static_cast<unsigned>(a_out)].from = PortRef{id, 0};
      }
    }
    sg::erase_nodes(t, {site.node});
    if (!is_valid(t))
      fail("vertex expansion: vertex legs cannot reach the insertion site");
    const unsigned l = static_cast<unsigned>(braid_word(sigma).size());
    out.emplace_back(std::move(t),
                     a * (l % 2 == 1 ? -q_power(n, l) : q_power(n, l)));
  }
  return out;
}

RhsTerms rhs_boundary_cap(const WebDiagram& d, const RelationSite& site) {
  const unsigned n = d.n;
  int e1 = -1, e2 = -1;
  for (unsigned i = 0; i < d.nodes.size(); ++i) {
    const auto* ep = std::get_if<EndpointNode>(&d.nodes[i]);
    if (ep == nullptr || ep->edge != site.edge) continue;
    if (ep->height == site.rank) e1 = static_cast<int>(i);
    if (ep->height == site.rank + 1) e2 = static_cast<int>(i);
  }
  if (e1 < 0 || e2 < 0)
    fail("boundary cap: no adjacent endpoint pair at the site");
  const auto& p1 = std::get<EndpointNode>(d.nodes[static_cast<unsigned>(e1)]);
  const auto& p2 = std::get<EndpointNode>(d.nodes[static_cast<unsigned>(e2)]);
  int arc = -1;
  for (unsigned a = 0; a < d.arcs.size(); ++a) {
    const auto& ar = d.arcs[a];
    const bool fwd = ar.from.node == static_cast<unsigned>(e1) &&
                     ar.to.node == static_cast<unsigned>(e2);
    const bool bwd = ar.from.node == static_cast<unsigned>(e2) &&
                     ar.to.node == static_cast<unsigned>(e1);
    if (fwd || bwd) arc = static_cast<int>(a);
  }
  if (arc < 0)
    fail("boundary cap: endpoints are not joined by a single returning arc");
  RhsTerms out;
  if (p2.state != bar_state(n, p1.state)) return out;  // delta kills the term
  WebDiagram t = d;
  sg::erase_arc(t, static_cast<unsigned>(arc));
  sg::erase_nodes(t, {static_cast<unsigned>(e1), static_cast<unsigned>(e2)});
  sg::shift_ranks(t, site.edge, site.rank + 2, -2);
  out.emplace_back(std::move(t), constants(n).c[p1.state - 1]);
  return out;
}

RhsTerms rhs_boundary_cup(const WebDiagram& d, const RelationSite& site) {
  const unsigned n = d.n;
  if (site.arc >= d.arcs.size()) fail("boundary cup: no such arc");
  if (site.edge >= d.surface.ideal_points)
    fail("boundary cup: no such boundary edge");
  const unsigned pop = sg::edge_population(d, site.edge);
  if (site.rank < 1 || site.rank > pop + 1)
    fail("boundary cup: insertion rank out of range");
  RhsTerms out;
  for (unsigned i = 1; i <= n; ++i) {
    WebDiagram t = d;
    sg::shift_ranks(t, site.edge, site.rank, 2);
    const unsigned top_state = i, bottom_state = bar_state(n, i);
    const unsigned rh = site.head_on_top ? site.rank : site.rank + 1;
    const unsigned rl = site.head_on_top ? site.rank + 1 : site.rank;
    const unsigned sh = site.head_on_top ? top_state : bottom_state;
    const unsigned sl = site.head_on_top ? bottom_state : top_state;
    const unsigned hid = static_cast<unsigned>(t.nodes.size());
    t.nodes.emplace_back(
        EndpointNode{site.edge, rh, sh, EndpointDir::TowardBoundary});
    const unsigned lid = static_cast<unsigned>(t.nodes.size());
    t.nodes.emplace_back(
        EndpointNode{site.edge, rl, sl, EndpointDir::AwayFromBoundary});
    const PortRef old_head = t.arcs[site.arc].to;
    t.arcs[site.arc].to = PortRef{hid, 0};
    t.arcs.push_back(Arc{PortRef{lid, 0}, old_head});
    if (!is_valid(t))
      fail("boundary cup: the arc cannot reach the insertion site");
    out.emplace_back(std::move(t),
                     constants(n).c[bar_state(n, i) - 1].ipow(-1));
  }
  return out;
}

RhsTerms rhs_boundary_crossing(const WebDiagram& d, const RelationSite& site) {
  const unsigned n = d.n;
  const CrossingNode& cn = crossing_at(d, site.node, "boundary crossing");
  const unsigned over_out = (cn.over_in + 2) % 4;
  const unsigned under_out = (cn.under_in + 2) % 4;
  const int oa = sg::arc_with_tail_at(d, PortRef{site.node, over_out});
  const int ua = sg::arc_with_tail_at(d, PortRef{site.node, under_out});
  if (oa < 0 || ua < 0) fail("boundary crossing: vacant crossing port");
  const PortRef oh = d.arcs[static_cast<unsigned>(oa)].to;
  const PortRef uh = d.arcs[static_cast<unsigned>(ua)].to;
  const auto* eo = std::get_if<EndpointNode>(&d.nodes[oh.node]);
  const auto* eu = std::get_if<EndpointNode>(&d.nodes[uh.node]);
  if (eo == nullptr || eu == nullptr)
    fail("boundary crossing: crossing strands do not end on the boundary");
  if (eo->edge != eu->edge || eo->height != eu->height + 1)
    fail("boundary crossing: expected the under strand one rank above the "
         "over strand on one boundary edge");
  const unsigned i = eu->state, j = eo->state;
  const unsigned r = eu->height;

  // Shared surgery: both strands run straight to the boundary, heights swap.
  WebDiagram base = d;
  sg::merge_through(base, site.node, cn.over_in, over_out);
  sg::merge_through(base, site.node, cn.under_in, under_out);
  const auto remap = sg::erase_nodes(base, {site.node});
  const unsigned eoid = static_cast<unsigned>(remap[oh.node]);
  const unsigned euid = static_cast<unsigned>(remap[uh.node]);
  std::get<EndpointNode>(base.nodes[eoid]).height = r;
  std::get<EndpointNode>(base.nodes[euid]).height = r + 1;

  RhsTerms out;
  if (j < i) {
    WebDiagram swapped = base;
    std::get<EndpointNode>(swapped.nodes[eoid]).state = i;
    std::get<EndpointNode>(swapped.nodes[euid]).state = j;
    out.emplace_back(std::move(swapped), q_power(n, -1, n) * q_minus_qinv(n));
  }
  LaurentScalar c2 = q_power(n, -1, n);
  if (i == j) c2 *= q_power(n, 1);
  out.emplace_back(std::move(base), c2);
  return out;
}

}  // namespace

SkeinExpression apply_relation(const SkeinExpression& expr, Relation rel,
                               const RelationSite& site) {
  std::string key = site.term;
  if (key.empty()) {
    if (expr.terms().size() != 1)
      fail("relation site must name a term of a multi-term expression");
    key = expr.terms().begin()->first;
  }
  const auto it = expr.terms().find(key);
  if (it == expr.terms().end())
    fail("relation site names no term of the expression");
  const WebDiagram& d = it->second.diagram;
  const LaurentScalar& c0 = it->second.coefficient;

  RhsTerms rhs;
  switch (rel) {
    case Relation::CrossingSmoothing:
      rhs = rhs_crossing_smoothing(d, site);
      break;
    case Relation::KinkRemoval:
      rhs = rhs_kink_removal(d, site);
      break;
    case Relation::CircleRemoval:
      rhs = rhs_circle_removal(d);
      break;
    case Relation::VertexPairExpansion:
      rhs = rhs_pair_expansion(d, site, false);
      break;
    case Relation::VertexBoundaryExpansion:
      rhs = rhs_vertex_boundary_expansion(d, site);
      break;
    case Relation::BoundaryCap:
      rhs = rhs_boundary_cap(d, site);
      break;
    case Relation::BoundaryCup:
      rhs = rhs_boundary_cup(d, site);
      break;
    case Relation::BoundaryCrossing:
      rhs = rhs_boundary_crossing(d, site);
      break;
    case Relation::BasedVertexPairExpansion:
      rhs = rhs_pair_expansion(d, site, true);
      break;
  }

  SkeinExpression out(expr.rank(), expr.surface());
  for (const auto& [k, term] : expr.terms())
    if (k != key) out.add(term.diagram, term.coefficient);
  for (const auto& [dgm, c] : rhs) out.add(dgm, c0 * c);
  return out;
}

// ---------------------------------------------------------------------------
// eliminate_vertices

namespace {

constexpr const char* kUnpaired = "unpaired or non-standard-position vertices";

std::vector<std::pair<unsigned, unsigned>> auto_pairing(const WebDiagram& d) {
  std::vector<unsigned> sinks, sources;
  for (unsigned i = 0; i < d.nodes.size(); ++i) {
    if (std::holds_alternative<SinkNode>(d.nodes[i])) sinks.push_back(i);
    if (std::holds_alternative<SourceNode>(d.nodes[i])) sources.push_back(i);
  }
  if (sinks.size() != sources.size()) fail(kUnpaired);
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (size_t k = 0; k < sinks.size(); ++k)
    pairs.emplace_back(sinks[k], sources[k]);
  return pairs;
}

unsigned vertex_count(const WebDiagram& d) {
  unsigned p = 0;
  for (const auto& nd : d.nodes)
    if (std::holds_alternative<SinkNode>(nd) ||
        std::holds_alternative<SourceNode>(nd))
      ++p;
  return p;
}

}  // namespace

SkeinExpression eliminate_vertices(
    const SkeinExpression& expr, VertexMode mode,
    const std::optional<std::vector<std::pair<unsigned, unsigned>>>& pairing) {
  const bool based = mode == VertexMode::Based;
  const LaurentScalar pre = pair_prefactor(expr.rank(), based);
  SkeinExpression out(expr.rank(), expr.surface());

  struct WorkItem {
    WebDiagram d;
    LaurentScalar c;
    std::vector<int> vmap;  // original node id -> current id
  };

  for (const auto& [key, term] : expr.terms()) {
    const std::vector<std::pair<unsigned, unsigned>> pairs =
        pairing ? *pairing : auto_pairing(term.diagram);
    if (2 * pairs.size() != vertex_count(term.diagram)) fail(kUnpaired);

    std::vector<WorkItem> items;
    std::vector<int> id(term.diagram.nodes.size());
    std::iota(id.begin(), id.end(), 0);
    items.push_back(WorkItem{term.diagram, term.coefficient, std::move(id)});

    for (const auto& [s_orig, r_orig] : pairs) {
      if (s_orig >= items.front().vmap.size() ||
          r_orig >= items.front().vmap.size())
        fail(kUnpaired);
      std::vector<WorkItem> next;
      for (const WorkItem& item : items) {
        const int s_cur = item.vmap[s_orig];
        const int r_cur = item.vmap[r_orig];
        if (s_cur < 0 || r_cur < 0) fail(kUnpaired);
        PairExpansion ex = expand_pair(
            item.d, static_cast<unsigned>(s_cur), static_cast<unsigned>(r_cur),
            std::nullopt, std::nullopt, based, kUnpaired, kUnpaired);
        std::vector<int> vmap(item.vmap.size());
        for (size_t x = 0; x < item.vmap.size(); ++x)
          vmap[x] = item.vmap[x] < 0 ? -1 : ex.node_remap[item.vmap[x]];
        for (auto& t : ex.terms) {
          next.push_back(WorkItem{std::move(t.diagram),
                                  item.c * pre * sigma_factor(expr.rank(), t.length),
                                  vmap});
        }
      }
      items = std::move(next);
    }
    for (const WorkItem& item : items) out.add(item.d, item.c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// evaluate_closed

namespace {

struct Evaluator {
  unsigned n = 1;
  LaurentScalar circle, qmqi, twist;
  LaurentScalar q_m1n, q_m2n, q_p1n, q_p2n;  // q^{+-1/n}, q^{+-2/n}
  std::map<std::string, LaurentScalar> memo;
  std::optional<std::mt19937_64> rng;

  explicit Evaluator(unsigned rank) : n(rank) {
    circle = circle_value(n);
    qmqi = q_minus_qinv(n);
    twist = constants(n).t;
    q_m1n = q_power(n, -1, n);
    q_m2n = q_power(n, -2, n);
    q_p1n = q_power(n, 1, n);
    q_p2n = q_power(n, 2, n);
  }

  LaurentScalar eval(const WebDiagram& d) {
    const std::string key = canonical_encoding(d);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    LaurentScalar value;
    if (d.nodes.empty()) {
      value = circle.pow(d.free_loops);
    } else {
      value = eval_with_crossings(d);
    }
    memo.emplace(key, value);
    return value;
  }

 private:
  // Walks every strand in increasing lowest-arc-id order and classifies
  // each crossing by whether it is first met on its over strand.
  LaurentScalar eval_with_crossings(const WebDiagram& d) {
    const size_t nodes = d.nodes.size();
    std::vector<std::array<int, 4>> tail_at(nodes, {-1, -1, -1, -1});
    for (unsigned a = 0; a < d.arcs.size(); ++a)
      tail_at[d.arcs[a].from.node][d.arcs[a].from.port] =
          static_cast<int>(a);

    std::vector<char> arc_seen(d.arcs.size(), 0);
    std::vector<int> first_comp(nodes, -1);   // component of first passage
    std::vector<char> first_over(nodes, 0);   // first passage on over strand?
    std::vector<int> second_comp(nodes, -1);
    std::vector<unsigned> bad;                // traversal-ordered bad crossings
    unsigned components = 0;

    for (unsigned base = 0; base < d.arcs.size(); ++base) {
      if (arc_seen[base]) continue;
      const unsigned comp = components++;
      unsigned a = base;
      do {
        arc_seen[a] = 1;
        const PortRef head = d.arcs[a].to;
        const auto& cn = std::get<CrossingNode>(d.nodes[head.node]);
        const bool over = head.port == cn.over_in;
        if (first_comp[head.node] < 0) {
          first_comp[head.node] = static_cast<int>(comp);
          first_over[head.node] = over ? 1 : 0;
          if (!over) bad.push_back(head.node);
        } else {
          second_comp[head.node] = static_cast<int>(comp);
        }
        a = static_cast<unsigned>(tail_at[head.node][(head.port + 2) % 4]);
      } while (a != base);
    }

    if (bad.empty()) {  // descending diagram: kinks and circles only
      long long w_self = 0;
      for (unsigned c = 0; c < nodes; ++c)
        if (first_comp[c] == second_comp[c])
          w_self += crossing_sign(std::get<CrossingNode>(d.nodes[c]));
      return twist.ipow(w_self) *
             circle.pow(components + d.free_loops);
    }

    size_t pick = 0;
    if (rng) {
      std::uniform_int_distribution<size_t> dist(0, bad.size() - 1);
      pick = dist(*rng);
    }
    const unsigned c = bad[pick];
    const int sign = crossing_sign(std::get<CrossingNode>(d.nodes[c]));
    const LaurentScalar sw = eval(switch_crossing(d, c));
    const LaurentScalar sm = eval(smooth_crossing(d, c));
    if (sign > 0) return q_m1n * qmqi * sm + q_m2n * sw;
    return q_p2n * sw - q_p1n * qmqi * sm;
  }
};

}  // namespace

LaurentScalar evaluate_closed(const WebDiagram& d, VertexMode mode,
                              std::optional<std::uint64_t> shuffle_seed) {
  require_valid(d, "evaluate_closed: invalid diagram");
  if (d.surface.ideal_points != 0) fail("non-closed input");
  unsigned sinks = 0, sources = 0;
  for (const auto& nd : d.nodes) {
    if (std::holds_alternative<SinkNode>(nd)) ++sinks;
    if (std::holds_alternative<SourceNode>(nd)) ++sources;
  }
  if (sinks != sources) fail("unpairable vertices");

  Evaluator ev(d.n);
  if (shuffle_seed) ev.rng.emplace(*shuffle_seed);

  if (sinks == 0) return ev.eval(normalize_ordering(d));
  const SkeinExpression flat =
      eliminate_vertices(SkeinExpression::from_diagram(d), mode);
  LaurentScalar total;
  for (const auto& [key, term] : flat.terms())
    total += term.coefficient * ev.eval(term.diagram);
  return total;
}

// ---------------------------------------------------------------------------
// stack

SkeinExpression stack(const SkeinExpression& above,
                      const SkeinExpression& below) {
  if (above.rank() != below.rank() ||
      !same_surface(above.surface(), below.surface()))
    fail("stack: expressions live on different surfaces");
  if (above.surface().ideal_points == 0)
    fail("stack: the surface must have boundary");
  SkeinExpression out(above.rank(), above.surface());
  for (const auto& [ka, ta] : above.terms())
    for (const auto& [kb, tb] : below.terms())
      out.add(stack_diagrams(ta.diagram, tb.diagram),
              ta.coefficient * tb.coefficient);
  return out;
}

// ---------------------------------------------------------------------------
// JSON interchange

std::string print_expression(const SkeinExpression& expr, bool pretty) {
  json terms = json::array();
  for (const auto& [key, term] : expr.terms()) {
    terms.push_back(json{{"coefficient", to_string(term.coefficient)},
                         {"diagram", json::parse(print_diagram(term.diagram))}});
  }
  const json j{{"version", 1},
               {"n", expr.rank()},
               {"surface", json{{"ideal_points", expr.surface().ideal_points}}},
               {"terms", std::move(terms)}};
  return pretty ? j.dump(2) : j.dump();
}

SkeinExpression parse_expression(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("expression: malformed JSON");
  if (!j.is_object() || j.size() != 4 || !j.contains("version") ||
      !j.contains("n") || !j.contains("surface") || !j.contains("terms"))
    fail("expression: expected an object with version, n, surface, terms");
  if (!j["version"].is_number_integer() || j["version"].get<long long>() != 1)
    fail("expression: unsupported version");
  if (!j["n"].is_number_unsigned() || j["n"].get<unsigned long long>() == 0)
    fail("expression: n must be a positive integer");
  const json& s = j["surface"];
  if (!s.is_object() || s.size() != 1 || !s.contains("ideal_points") ||
      !s["ideal_points"].is_number_unsigned())
    fail("expression: surface must be {\"ideal_points\": <count>}");
  SkeinExpression out(static_cast<unsigned>(j["n"].get<unsigned long long>()),
                      PolygonSurface{static_cast<unsigned>(
                          s["ideal_points"].get<unsigned long long>())});
  if (!j["terms"].is_array()) fail("expression: terms must be an array");
  for (const json& item : j["terms"]) {
    if (!item.is_object() || item.size() != 2 || !item.contains("coefficient") ||
        !item.contains("diagram") || !item["coefficient"].is_string())
      fail("expression: each term needs a coefficient string and a diagram");
    LaurentScalar c;
    try {
      c = parse_laurent(item["coefficient"].get<std::string>());
    } catch (const std::exception& e) {
      fail(std::string("expression: bad coefficient: ") + e.what());
    }
    out.add(parse_diagram(item["diagram"].dump()), c);
  }
  return out;
}

}  // namespace skein
