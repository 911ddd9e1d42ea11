#include <skein/web.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace skein {

namespace {

unsigned node_ports(const Node& nd) {
  if (std::holds_alternative<CrossingNode>(nd)) return 4;
  if (const auto* k = std::get_if<SinkNode>(&nd)) return k->ports;
  if (const auto* s = std::get_if<SourceNode>(&nd)) return s->ports;
  return 1;
}

bool is_endpoint(const Node& nd) {
  return std::holds_alternative<EndpointNode>(nd);
}

// Which arc occupies a given port, and whether as its tail.  Malformed
// references and double bookings are ignored here (validate reports them).
struct PortUse {
  int arc = -1;
  bool is_from = false;
};

std::vector<std::vector<PortUse>> port_table(const WebDiagram& d) {
  std::vector<std::vector<PortUse>> t(d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    t[i].assign(node_ports(d.nodes[i]), PortUse{});
  for (std::size_t a = 0; a < d.arcs.size(); ++a) {
    const auto book = [&](const PortRef& p, bool from) {
      if (p.node < t.size() && p.port < t[p.node].size() &&
          t[p.node][p.port].arc < 0)
        t[p.node][p.port] = PortUse{static_cast<int>(a), from};
    };
    book(d.arcs[a].from, true);
    book(d.arcs[a].to, false);
  }
  return t;
}

struct Dsu {
  std::vector<unsigned> parent;
  explicit Dsu(unsigned n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  unsigned find(unsigned x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(unsigned a, unsigned b) { parent[find(a)] = find(b); }
};

// Heights of all endpoints, grouped by boundary edge.
std::map<unsigned, std::vector<unsigned>> heights_by_edge(const WebDiagram& d) {
  std::map<unsigned, std::vector<unsigned>> by;
  for (const Node& nd : d.nodes)
    if (const auto* ep = std::get_if<EndpointNode>(&nd))
      by[ep->edge].push_back(ep->height);
  return by;
}

bool is_rank_permutation(std::vector<unsigned> hs) {
  std::sort(hs.begin(), hs.end());
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (hs[i] != i + 1) return false;
  return true;
}

}  // namespace

unsigned port_count(const WebDiagram& d, unsigned node) {
  return node_ports(d.nodes.at(node));
}

int crossing_sign(const CrossingNode& c) {
  return c.under_in == (c.over_in + 1) % 4 ? 1 : -1;
}

WebDiagram normalize_ordering(const WebDiagram& d) {
  WebDiagram r = d;
  if (r.ordering.empty()) return r;
  const auto by = heights_by_edge(r);
  for (const auto& [edge, hs] : by) {
    if (edge >= r.ordering.size() ||
        r.ordering[edge] != EdgeOrdering::Positive)
      continue;
    // Reverse the ranks only when they are sane; validate flags the rest.
    if (!is_rank_permutation(hs)) continue;
    const unsigned m = static_cast<unsigned>(hs.size());
    for (Node& nd : r.nodes)
      if (auto* ep = std::get_if<EndpointNode>(&nd))
        if (ep->edge == edge) ep->height = m + 1 - ep->height;
  }
  r.ordering.clear();
  return r;
}

std::vector<Violation> validate(const WebDiagram& d) {
  std::vector<Violation> out;
  const auto flag = [&](const char* code, std::string detail) {
    out.push_back(Violation{code, std::move(detail)});
  };

  if (d.n < 1) flag("rank", "n must be at least 1");
  const unsigned k = d.surface.ideal_points;
  if (!d.ordering.empty() && d.ordering.size() != k)
    flag("ordering size", "ordering table has " +
                              std::to_string(d.ordering.size()) +
                              " entries for " + std::to_string(k) + " edges");

  unsigned long long e = 0, p = 0;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const std::string at = "node " + std::to_string(i);
    const Node& nd = d.nodes[i];
    if (const auto* c = std::get_if<CrossingNode>(&nd)) {
      if (c->over_in >= 4 || c->under_in >= 4 ||
          (c->under_in != (c->over_in + 1) % 4 &&
           c->under_in != (c->over_in + 3) % 4))
        flag("crossing strands",
             at + ": under strand must enter adjacent to the over strand");
    } else if (const auto* snk = std::get_if<SinkNode>(&nd)) {
      ++p;
      if (snk->ports != d.n)
        flag("vertex arity", at + ": sink has " + std::to_string(snk->ports) +
                                 " ports, expected " + std::to_string(d.n));
      if (snk->base && *snk->base >= snk->ports)
        flag("based base", at + ": base port out of range");
    } else if (const auto* src = std::get_if<SourceNode>(&nd)) {
      ++p;
      if (src->ports != d.n)
        flag("vertex arity", at + ": source has " +
                                 std::to_string(src->ports) +
                                 " ports, expected " + std::to_string(d.n));
      if (src->base && *src->base >= src->ports)
        flag("based base", at + ": base port out of range");
    } else {
      const auto& ep = std::get<EndpointNode>(nd);
      ++e;
      if (ep.edge >= k)
        flag("endpoint edge",
             k == 0 ? at + ": closed interior admits no boundary endpoints"
                    : at + ": edge id " + std::to_string(ep.edge) +
                          " out of range");
      if (ep.state < 1 || ep.state > d.n)
        flag("state range", at + ": state " + std::to_string(ep.state) +
                                " outside 1.." + std::to_string(d.n));
      if (ep.height < 1) flag("height ranks", at + ": rank must be positive");
    }
  }

  for (const auto& [edge, hs] : heights_by_edge(d))
    if (!is_rank_permutation(hs))
      flag("height ranks", "edge " + std::to_string(edge) +
                               ": ranks are not a permutation of 1.." +
                               std::to_string(hs.size()));

  bool refs_ok = true;
  for (std::size_t a = 0; a < d.arcs.size(); ++a)
    for (const PortRef& end : {d.arcs[a].from, d.arcs[a].to})
      if (end.node >= d.nodes.size() ||
          end.port >= node_ports(d.nodes[end.node])) {
        flag("arc reference", "arc " + std::to_string(a) +
                                  " references a missing node or port");
        refs_ok = false;
      }
  if (!refs_ok) return out;

  std::vector<std::vector<unsigned>> uses(d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    uses[i].assign(node_ports(d.nodes[i]), 0);
  for (const Arc& a : d.arcs) {
    ++uses[a.from.node][a.from.port];
    ++uses[a.to.node][a.to.port];
  }
  for (std::size_t i = 0; i < uses.size(); ++i)
    for (std::size_t q = 0; q < uses[i].size(); ++q)
      if (uses[i][q] != 1)
        flag("port usage", "node " + std::to_string(i) + " port " +
                               std::to_string(q) + " used " +
                               std::to_string(uses[i][q]) + " times");

  const auto outgoing_ok = [&](const PortRef& r) {
    const Node& nd = d.nodes[r.node];
    if (const auto* c = std::get_if<CrossingNode>(&nd))
      return r.port == (c->over_in + 2) % 4 || r.port == (c->under_in + 2) % 4;
    if (std::holds_alternative<SourceNode>(nd)) return true;
    if (const auto* ep = std::get_if<EndpointNode>(&nd))
      return ep->dir == EndpointDir::AwayFromBoundary;
    return false;  // sink
  };
  const auto incoming_ok = [&](const PortRef& r) {
    const Node& nd = d.nodes[r.node];
    if (const auto* c = std::get_if<CrossingNode>(&nd))
      return r.port == c->over_in || r.port == c->under_in;
    if (std::holds_alternative<SinkNode>(nd)) return true;
    if (const auto* ep = std::get_if<EndpointNode>(&nd))
      return ep->dir == EndpointDir::TowardBoundary;
    return false;  // source
  };
  for (std::size_t a = 0; a < d.arcs.size(); ++a) {
    if (!outgoing_ok(d.arcs[a].from))
      flag("orientation",
           "arc " + std::to_string(a) + " leaves a non-outgoing port");
    if (!incoming_ok(d.arcs[a].to))
      flag("orientation",
           "arc " + std::to_string(a) + " enters a non-incoming port");
  }

  if ((e + static_cast<unsigned long long>(d.n) * p) % 2 != 0)
    flag("parity", "e = n*p (mod 2) fails: e=" + std::to_string(e) +
                       ", n=" + std::to_string(d.n) +
                       ", p=" + std::to_string(p));

  if (!out.empty()) return out;

  // Planarity of the boundary-augmented rotation map.  Endpoints are
  // absorbed into one virtual outer vertex whose rotation lists them in
  // clockwise boundary order: with negatively ordered edges that is edge
  // ids descending, ranks ascending within an edge.  Every connected
  // component must then have Euler characteristic 2.
  const WebDiagram nd = normalize_ordering(d);
  const unsigned N = static_cast<unsigned>(nd.nodes.size());
  const unsigned kOuter = N;
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
    if (!is_endpoint(nd.nodes[i])) deg[i] = node_ports(nd.nodes[i]);
  deg[kOuter] = static_cast<unsigned>(eps.size());

  // Darts 2a (tail of arc a) and 2a+1 (head); slot_dart inverts position.
  const unsigned D = 2 * static_cast<unsigned>(nd.arcs.size());
  std::vector<unsigned> dart_v(D), dart_s(D);
  std::vector<std::vector<int>> slot_dart(N + 1);
  for (unsigned v = 0; v <= N; ++v) slot_dart[v].assign(deg[v], -1);
  Dsu dsu(N + 1);
  for (unsigned a = 0; a < nd.arcs.size(); ++a) {
    const PortRef ends[2] = {nd.arcs[a].from, nd.arcs[a].to};
    for (unsigned h = 0; h < 2; ++h) {
      const unsigned dart = 2 * a + h;
      dart_v[dart] = aug_vertex(ends[h].node);
      dart_s[dart] = aug_slot(ends[h]);
      slot_dart[dart_v[dart]][dart_s[dart]] = static_cast<int>(dart);
    }
    dsu.unite(dart_v[2 * a], dart_v[2 * a + 1]);
  }

  std::map<unsigned, long long> euler;  // component root -> V - E + F
  for (unsigned v = 0; v <= N; ++v) {
    if (v < N && is_endpoint(nd.nodes[v])) continue;
    if (v == kOuter && eps.empty()) continue;
    ++euler[dsu.find(v)];
  }
  for (unsigned a = 0; a < nd.arcs.size(); ++a)
    --euler[dsu.find(dart_v[2 * a])];
  std::vector<char> seen(D, 0);
  for (unsigned start = 0; start < D; ++start) {
    if (seen[start]) continue;
    ++euler[dsu.find(dart_v[start])];
    unsigned x = start;
    do {
      seen[x] = 1;
      const unsigned mate = x ^ 1u;  // other end of the same arc
      const unsigned v = dart_v[mate];
      x = static_cast<unsigned>(slot_dart[v][(dart_s[mate] + 1) % deg[v]]);
    } while (x != start);
  }
  for (const auto& [root, chi] : euler)
    if (chi != 2)
      flag("planarity", "connected component has Euler characteristic " +
                            std::to_string(chi));
  return out;
}

bool is_valid(const WebDiagram& d) { return validate(d).empty(); }

DiagramStats stats(const WebDiagram& d) {
  DiagramStats st;
  std::vector<unsigned> sinks, sources;
  bool all_based = true;
  for (unsigned i = 0; i < d.nodes.size(); ++i) {
    const Node& nd = d.nodes[i];
    if (const auto* c = std::get_if<CrossingNode>(&nd)) {
      st.w += crossing_sign(*c);
    } else if (const auto* snk = std::get_if<SinkNode>(&nd)) {
      sinks.push_back(i);
      all_based = all_based && snk->base.has_value();
    } else if (const auto* src = std::get_if<SourceNode>(&nd)) {
      sources.push_back(i);
      all_based = all_based && src->base.has_value();
    } else {
      const auto& ep = std::get<EndpointNode>(nd);
      ++st.e;
      if (ep.dir == EndpointDir::TowardBoundary) ++st.t;
    }
  }
  st.p = sinks.size() + sources.size();

  const auto table = port_table(d);
  // Strand continuation: an arc head at a crossing continues with the arc
  // leaving the opposite port.
  const auto next_arc = [&](unsigned a) -> int {
    const PortRef h = d.arcs[a].to;
    if (!std::holds_alternative<CrossingNode>(d.nodes[h.node])) return -1;
    const PortUse u = table[h.node][(h.port + 2) % 4];
    return u.is_from ? u.arc : -1;
  };

  std::vector<char> visited(d.arcs.size(), 0);
  for (unsigned a = 0; a < d.arcs.size(); ++a) {
    if (visited[a]) continue;
    unsigned cur = a;
    while (true) {
      visited[cur] = 1;
      const int nx = next_arc(cur);
      if (nx < 0 || visited[static_cast<unsigned>(nx)]) {
        if (nx >= 0 && static_cast<unsigned>(nx) == a) ++st.components;
        break;
      }
      cur = static_cast<unsigned>(nx);
    }
  }
  st.components += d.free_loops;

  if (all_based) {
    if (sinks.size() != sources.size())
      throw std::invalid_argument("unbalanced vertices");
    const unsigned n = d.n;
    const unsigned count = static_cast<unsigned>(sinks.size());
    std::vector<int> sink_label(d.nodes.size(), -1);
    for (unsigned i = 0; i < count; ++i)
      sink_label[sinks[i]] = static_cast<int>(i);
    std::vector<unsigned> tau(static_cast<std::size_t>(n) * count, 0);
    bool defined = true;
    for (unsigned i = 0; i < count && defined; ++i) {
      const auto& src = std::get<SourceNode>(d.nodes[sources[i]]);
      for (unsigned j = 1; j <= n && defined; ++j) {
        const unsigned port = (*src.base + j - 1) % n;
        const unsigned color = i * n + (n + 1 - j);
        int cur = table[sources[i]][port].arc;
        for (std::size_t steps = 0; cur >= 0 && steps <= d.arcs.size();
             ++steps) {
          const PortRef h = d.arcs[static_cast<unsigned>(cur)].to;
          if (std::holds_alternative<CrossingNode>(d.nodes[h.node])) {
            const PortUse u = table[h.node][(h.port + 2) % 4];
            cur = u.is_from ? u.arc : -1;
            continue;
          }
          if (const auto* snk = std::get_if<SinkNode>(&d.nodes[h.node])) {
            const unsigned jj =
                (h.port + snk->ports - *snk->base) % snk->ports + 1;
            tau[color - 1] =
                static_cast<unsigned>(sink_label[h.node]) * n + jj;
            cur = -2;  // resolved
            break;
          }
          cur = -1;  // reached the boundary: tau is undefined
          break;
        }
        if (cur != -2) defined = false;
      }
    }
    if (defined) {
      for (std::size_t i = 0; i < tau.size(); ++i)
        for (std::size_t j = i + 1; j < tau.size(); ++j)
          if (tau[i] > tau[j]) ++st.tau_inversions;
      st.tau = std::move(tau);
    }
  }
  return st;
}

namespace {

std::string node_record(const Node& nd, unsigned ref) {
  if (const auto* c = std::get_if<CrossingNode>(&nd))
    return "C" + std::to_string((c->over_in + 4 - ref) % 4) +
           std::to_string((c->under_in + 4 - ref) % 4);
  const auto vertex_record = [&](char tag, unsigned ports,
                                 const std::optional<unsigned>& base) {
    std::string s(1, tag);
    s += std::to_string(ports);
    if (base && ports > 0)
      s += "b" + std::to_string((*base % ports + ports - ref % ports) % ports);
    else
      s += "u";
    return s;
  };
  if (const auto* k = std::get_if<SinkNode>(&nd))
    return vertex_record('K', k->ports, k->base);
  if (const auto* s = std::get_if<SourceNode>(&nd))
    return vertex_record('Q', s->ports, s->base);
  const auto& ep = std::get<EndpointNode>(nd);
  return "E" + std::to_string(ep.edge) + "." + std::to_string(ep.height) +
         "." + std::to_string(ep.state) + "." +
         (ep.dir == EndpointDir::TowardBoundary ? "o" : "i");
}

// Deterministic breadth-first encoding of one connected component, rooted
// at `root` with reference port `ref`; all port labels are recorded
// relative to each node's reference port (set at first visit), so the
// string depends only on the isomorphism class of the rooted component.
std::string encode_from(const WebDiagram& d,
                        const std::vector<std::vector<PortUse>>& table,
                        unsigned root, unsigned ref) {
  std::vector<int> id(d.nodes.size(), -1);
  std::vector<unsigned> refp(d.nodes.size(), 0);
  std::vector<unsigned> order;
  id[root] = 0;
  refp[root] = ref;
  order.push_back(root);
  std::string enc;
  for (std::size_t m = 0; m < order.size(); ++m) {
    const unsigned u = order[m];
    const unsigned du = node_ports(d.nodes[u]);
    enc += node_record(d.nodes[u], refp[u]);
    for (unsigned rel = 0; rel < du; ++rel) {
      const unsigned abs = (refp[u] + rel) % du;
      const PortUse pu = table[u][abs];
      if (pu.arc < 0) {
        enc += "(x)";
        continue;
      }
      const Arc& a = d.arcs[static_cast<unsigned>(pu.arc)];
      const PortRef other = pu.is_from ? a.to : a.from;
      if (id[other.node] < 0) {
        id[other.node] = static_cast<int>(order.size());
        refp[other.node] = other.port;
        order.push_back(other.node);
      }
      const unsigned dv = node_ports(d.nodes[other.node]);
      const unsigned orel =
          dv ? (other.port + dv - refp[other.node]) % dv : 0;
      enc += "(" + std::to_string(id[other.node]) + "," +
             std::to_string(orel) + (pu.is_from ? ",+" : ",-") + ")";
    }
    enc += ";";
  }
  return enc;
}

}  // namespace

std::string canonical_encoding(const WebDiagram& d0) {
  const WebDiagram d = normalize_ordering(d0);
  const auto table = port_table(d);
  const unsigned N = static_cast<unsigned>(d.nodes.size());
  Dsu dsu(N);
  for (const Arc& a : d.arcs)
    if (a.from.node < N && a.to.node < N) dsu.unite(a.from.node, a.to.node);
  std::map<unsigned, std::vector<unsigned>> comps;
  for (unsigned i = 0; i < N; ++i) comps[dsu.find(i)].push_back(i);

  std::vector<std::string> parts;
  for (const auto& [root, members] : comps) {
    std::string best;
    for (const unsigned node : members) {
      const unsigned du = std::max(node_ports(d.nodes[node]), 1u);
      for (unsigned ref = 0; ref < du; ++ref) {
        std::string cand = encode_from(d, table, node, ref);
        if (best.empty() || cand < best) best = std::move(cand);
      }
    }
    parts.push_back(std::move(best));
  }
  std::sort(parts.begin(), parts.end());

  std::string enc = "w1;n" + std::to_string(d.n) + ";k" +
                    std::to_string(d.surface.ideal_points) + ";L" +
                    std::to_string(d.free_loops) + ";";
  for (const std::string& p : parts) enc += p + "|";
  return enc;
}

bool same_diagram(const WebDiagram& a, const WebDiagram& b) {
  return canonical_encoding(a) == canonical_encoding(b);
}

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument("diagram JSON: " + msg);
}

unsigned get_u(const json& j, const std::string& what) {
  if (!j.is_number_unsigned() ||
      j.get<std::uint64_t>() > std::numeric_limits<unsigned>::max())
    bad(what + " must be an unsigned integer");
  return static_cast<unsigned>(j.get<std::uint64_t>());
}

const json& field(const json& o, const char* key, const std::string& ctx) {
  const auto it = o.find(key);
  if (it == o.end()) bad(ctx + ": missing key \"" + key + "\"");
  return *it;
}

void check_keys(const json& o, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
  for (const auto& item : o.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) bad(ctx + ": unknown key \"" + item.key() + "\"");
  }
}

}  // namespace

std::string print_diagram(const WebDiagram& d, bool pretty) {
  json j;
  j["version"] = 1;
  j["n"] = d.n;
  j["surface"]["ideal_points"] = d.surface.ideal_points;
  j["free_loops"] = d.free_loops;
  if (!d.ordering.empty()) {
    json arr = json::array();
    for (const EdgeOrdering o : d.ordering)
      arr.push_back(o == EdgeOrdering::Negative ? "neg" : "pos");
    j["ordering"] = std::move(arr);
  }
  json nodes = json::array();
  for (const Node& nd : d.nodes) {
    json o;
    if (const auto* c = std::get_if<CrossingNode>(&nd)) {
      o["type"] = "crossing";
      o["over_in"] = c->over_in;
      o["under_in"] = c->under_in;
    } else if (const auto* k = std::get_if<SinkNode>(&nd)) {
      o["type"] = "sink";
      o["ports"] = k->ports;
      if (k->base) o["base"] = *k->base;
    } else if (const auto* s = std::get_if<SourceNode>(&nd)) {
      o["type"] = "source";
      o["ports"] = s->ports;
      if (s->base) o["base"] = *s->base;
    } else {
      const auto& ep = std::get<EndpointNode>(nd);
      o["type"] = "endpoint";
      o["edge"] = ep.edge;
      o["height"] = ep.height;
      o["state"] = ep.state;
      o["dir"] = ep.dir == EndpointDir::TowardBoundary ? "out" : "in";
    }
    nodes.push_back(std::move(o));
  }
  j["nodes"] = std::move(nodes);
  json arcs = json::array();
  for (const Arc& a : d.arcs) {
    json ao;
    ao["from"] = json::array({a.from.node, a.from.port});
    ao["to"] = json::array({a.to.node, a.to.port});
    arcs.push_back(std::move(ao));
  }
  j["arcs"] = std::move(arcs);
  return pretty ? j.dump(2) : j.dump();
}

WebDiagram parse_diagram(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    bad(ex.what());
  }
  if (!j.is_object()) bad("top level must be an object");
  check_keys(j, {"arcs", "free_loops", "n", "nodes", "ordering", "surface",
                 "version"},
             "top level");
  if (get_u(field(j, "version", "top level"), "version") != 1)
    bad("unsupported version");

  WebDiagram d;
  d.n = get_u(field(j, "n", "top level"), "n");
  const json& surf = field(j, "surface", "top level");
  if (!surf.is_object()) bad("surface must be an object");
  check_keys(surf, {"ideal_points"}, "surface");
  d.surface.ideal_points =
      get_u(field(surf, "ideal_points", "surface"), "ideal_points");
  d.free_loops = get_u(field(j, "free_loops", "top level"), "free_loops");

  if (j.contains("ordering")) {
    const json& ord = j["ordering"];
    if (!ord.is_array()) bad("ordering must be an array");
    for (const json& o : ord) {
      if (o == "neg")
        d.ordering.push_back(EdgeOrdering::Negative);
      else if (o == "pos")
        d.ordering.push_back(EdgeOrdering::Positive);
      else
        bad("ordering entries must be \"neg\" or \"pos\"");
    }
  }

  const json& nodes = field(j, "nodes", "top level");
  if (!nodes.is_array()) bad("nodes must be an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const json& o = nodes[i];
    const std::string ctx = "node " + std::to_string(i);
    if (!o.is_object()) bad(ctx + " must be an object");
    const json& type = field(o, "type", ctx);
    if (type == "crossing") {
      check_keys(o, {"type", "over_in", "under_in"}, ctx);
      d.nodes.push_back(
          CrossingNode{get_u(field(o, "over_in", ctx), ctx + " over_in"),
                       get_u(field(o, "under_in", ctx), ctx + " under_in")});
    } else if (type == "sink" || type == "source") {
      check_keys(o, {"type", "ports", "base"}, ctx);
      const unsigned ports = get_u(field(o, "ports", ctx), ctx + " ports");
      std::optional<unsigned> base;
      if (const auto it = o.find("base"); it != o.end())
        base = get_u(*it, ctx + " base");
      if (type == "sink")
        d.nodes.push_back(SinkNode{ports, base});
      else
        d.nodes.push_back(SourceNode{ports, base});
    } else if (type == "endpoint") {
      check_keys(o, {"type", "edge", "height", "state", "dir"}, ctx);
      EndpointNode ep;
      ep.edge = get_u(field(o, "edge", ctx), ctx + " edge");
      ep.height = get_u(field(o, "height", ctx), ctx + " height");
      ep.state = get_u(field(o, "state", ctx), ctx + " state");
      const json& dir = field(o, "dir", ctx);
      if (dir == "out")
        ep.dir = EndpointDir::TowardBoundary;
      else if (dir == "in")
        ep.dir = EndpointDir::AwayFromBoundary;
      else
        bad(ctx + ": dir must be \"in\" or \"out\"");
      d.nodes.push_back(ep);
    } else {
      bad(ctx + ": unknown node type");
    }
  }

  const json& arcs = field(j, "arcs", "top level");
  if (!arcs.is_array()) bad("arcs must be an array");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const json& o = arcs[i];
    const std::string ctx = "arc " + std::to_string(i);
    if (!o.is_object()) bad(ctx + " must be an object");
    check_keys(o, {"from", "to"}, ctx);
    const auto end = [&](const char* key) {
      const json& pr = field(o, key, ctx);
      if (!pr.is_array() || pr.size() != 2)
        bad(ctx + " " + key + " must be a [node, port] pair");
      return PortRef{get_u(pr[0], ctx + " node"), get_u(pr[1], ctx + " port")};
    };
    d.arcs.push_back(Arc{end("from"), end("to")});
  }
  return normalize_ordering(d);
}

}  // namespace skein
