#include <doctest.h>

#include <skein/constants.hpp>
#include <skein/diagrams.hpp>
#include <skein/engine.hpp>
#include <skein/moves.hpp>
#include <skein/overlay.hpp>
#include <skein/signmap.hpp>
#include <skein/web.hpp>

#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

using namespace skein;

namespace {

// Boundary-independent counts read straight off the node list, kept separate
// from the library so the coefficient tests have an independent data source.
struct Counts {
  long long w = 0;
  long long e = 0;
  long long t = 0;
  long long p = 0;
};

Counts count_of(const WebDiagram& d) {
  Counts c;
  for (const Node& nd : d.nodes) {
    if (const auto* cr = std::get_if<CrossingNode>(&nd)) {
      c.w += crossing_sign(*cr);
    } else if (const auto* ep = std::get_if<EndpointNode>(&nd)) {
      ++c.e;
      if (ep->dir == EndpointDir::TowardBoundary) ++c.t;
    } else {
      ++c.p;
    }
  }
  return c;
}

CycLaurent cyc(const CycInt& c) {
  CycLaurent r;
  r.add_term(0, c);
  return r;
}

std::vector<unsigned> crossing_ids(const WebDiagram& d) {
  std::vector<unsigned> out;
  for (unsigned id = 0; id < d.nodes.size(); ++id)
    if (std::holds_alternative<CrossingNode>(d.nodes[id])) out.push_back(id);
  return out;
}

SignMapSpec root_spec(unsigned n, unsigned m, unsigned ord, long long exp = 1) {
  return SignMapSpec{.kind = SignMapKind::RootTwist,
                     .n = n,
                     .m = m,
                     .eps_order = ord,
                     .eps_exponent = exp,
                     .spin = {}};
}

SignMapSpec flip_spec(unsigned n) {
  return SignMapSpec{.kind = SignMapKind::ParameterFlip,
                     .n = n,
                     .m = 1,
                     .eps_order = 1,
                     .eps_exponent = 1,
                     .spin = {}};
}

// Every admissible root-twist parameter point with eps the primitive root
// itself: m ranges over the divisors of n and the cyclotomic order over the
// divisors of 2m.
std::vector<SignMapSpec> admissible_specs(unsigned n) {
  std::vector<SignMapSpec> out;
  for (unsigned m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    for (unsigned ord = 1; ord <= 2 * m; ++ord)
      if ((2 * m) % ord == 0) out.push_back(root_spec(n, m, ord));
  }
  return out;
}

// Lone n-valent source in a monogon, every leg running to the boundary:
// the smallest diagram with an odd vertex count.
WebDiagram source_star(unsigned n) {
  for (bool reversed : {false, true}) {
    WebDiagram d;
    d.surface = PolygonSurface{1};
    d.nodes.emplace_back(SourceNode{n, std::nullopt});
    for (unsigned j = 0; j < n; ++j) {
      const unsigned rank = reversed ? n - j : j + 1;
      d.nodes.emplace_back(
          EndpointNode{0, rank, j + 1, EndpointDir::TowardBoundary});
      d.arcs.push_back(Arc{{0, j}, {1 + j, 0}});
    }
    if (is_valid(d)) return d;
  }
  FAIL("source star fixture did not embed");
  return WebDiagram{};
}

// Mixed corpus covering every count pattern the coefficient reads:
// crossings, endpoints of both directions, and vertices (even and odd p),
// restricted to diagrams valid at rank n.
std::vector<WebDiagram> corpus(unsigned n) {
  std::vector<WebDiagram> out;
  out.push_back(loop_diagram(n, 1));
  out.push_back(kinked_loop(n, +1));
  out.push_back(kinked_loop(n, -1));
  out.push_back(braid_closure(n, 2, {1, 1}));
  out.push_back(braid_closure(n, 2, {-1, -1, -1}));
  out.push_back(bigon_arc(n, 1, 1, true));
  out.push_back(bigon_arc(n, 1, n, false));
  out.push_back(vertex_pair(n, false));
  out.push_back(source_star(n));
  if (n >= 2) {
    out.push_back(bigon_strands(n, {{1, 1}, {2, 2}}));
    out.push_back(apply_move(vertex_pair(n, false), VertexTwist{0, +1}));
  }
  return out;
}

// All closed diagrams of the corpus (the e = 0 slice).
std::vector<WebDiagram> closed_corpus(unsigned n) {
  std::vector<WebDiagram> out;
  for (WebDiagram& d : corpus(n))
    if (count_of(d).e == 0) out.push_back(std::move(d));
  return out;
}

}  // namespace

TEST_CASE("root twist coefficient matches the hand-enumerated case table") {
  // One closed form per branch of the case table, written out by hand for
  // concrete parameter points (eps is the primitive root of the given
  // order).  Together the points cover every parity combination of the
  // selconditions: k even; k odd/m even; k odd/m odd with (k+m)/2 odd and
  // even; and the eps^m = 1 branch at even and odd n.
  struct Point {
    unsigned n, m, ord;
    std::function<CycInt(const Counts&)> expected;
  };
  const auto sign_pow = [](long long e) { return CycInt(e % 2 == 0 ? 1 : -1); };
  const std::vector<Point> points = {
      // eps^m = -1, k even: eps^(2w + e/2).
      {2, 1, 2,
       [&](const Counts& c) { return CycInt::root_power(2, 2 * c.w + c.e / 2); }},
      {4, 2, 4,
       [&](const Counts& c) { return CycInt::root_power(4, 2 * c.w + c.e / 2); }},
      {6, 3, 6,
       [&](const Counts& c) { return CycInt::root_power(6, 2 * c.w + c.e / 2); }},
      // eps^m = -1, k odd, m even: (-eps)^(2w + e/2); -i = i^3.
      {2, 2, 4,
       [&](const Counts& c) {
         return CycInt::root_power(4, 3 * (2 * c.w + c.e / 2));
       }},
      // eps^m = -1, k odd, m odd, (k+m)/2 odd: (-eps)^(2w + t).
      // With eps = -1 this is identically 1; with eps a primitive tenth
      // root, -eps = eps^6.
      {5, 1, 2, [](const Counts&) { return CycInt(1); }},
      {5, 5, 2, [](const Counts&) { return CycInt(1); }},
      {5, 5, 10,
       [&](const Counts& c) {
         return CycInt::root_power(10, 6 * (2 * c.w + c.t));
       }},
      // eps^m = -1, k odd, m odd, (k+m)/2 even: extra (-1)^p; -eps = eps^4
      // at order six.
      {3, 1, 2, [&](const Counts& c) { return sign_pow(c.p); }},
      {3, 3, 2, [&](const Counts& c) { return sign_pow(c.p); }},
      {3, 3, 6,
       [&](const Counts& c) {
         return CycInt::root_power(6, 4 * (2 * c.w + c.t)) * sign_pow(c.p);
       }},
      // eps^m = 1, n even: eps^(2w + e/2).
      {2, 1, 1, [](const Counts&) { return CycInt(1); }},
      {2, 2, 2, [&](const Counts& c) { return sign_pow(c.e / 2); }},
      {4, 2, 2, [&](const Counts& c) { return sign_pow(c.e / 2); }},
      // eps^m = 1, n odd: eps^(2w + t).
      {3, 1, 1, [](const Counts&) { return CycInt(1); }},
      {3, 3, 3,
       [&](const Counts& c) { return CycInt::root_power(3, 2 * c.w + c.t); }},
  };
  for (const Point& pt : points) {
    CAPTURE(pt.n);
    CAPTURE(pt.m);
    CAPTURE(pt.ord);
    const SignMapSpec spec = root_spec(pt.n, pt.m, pt.ord);
    validate_signmap_spec(spec);
    for (const WebDiagram& d : corpus(pt.n)) {
      CAPTURE(canonical_encoding(d));
      CHECK(sign_map_coeff(d, spec) == pt.expected(count_of(d)));
    }
  }
}

TEST_CASE("root twist on closed diagrams is eps^(2w)") {
  for (unsigned n = 1; n <= 6; ++n) {
    for (const SignMapSpec& spec : admissible_specs(n)) {
      for (const WebDiagram& d : closed_corpus(n)) {
        const Counts c = count_of(d);
        CHECK(sign_map_coeff(d, spec) ==
              CycInt::root_power(spec.eps_order, 2 * c.w));
      }
      // Crossing-free, endpoint-free diagrams always get coefficient one.
      CHECK(sign_map_coeff(loop_diagram(n, 2), spec) == CycInt(1));
    }
  }
}

TEST_CASE("root twist on closed diagrams depends on the writhe mod n only") {
  // Pairs of closed diagrams whose signed crossing counts agree mod n.
  for (unsigned n : {2u, 3u}) {
    const WebDiagram negative_kink = kinked_loop(n, -1);  // w = -1
    const WebDiagram positive =
        braid_closure(n, 2, std::vector<int>(n - 1, 1));  // w = n - 1
    REQUIRE((count_of(positive).w - count_of(negative_kink).w) % n == 0);
    for (const SignMapSpec& spec : admissible_specs(n))
      CHECK(sign_map_coeff(negative_kink, spec) ==
            sign_map_coeff(positive, spec));
  }
}

TEST_CASE("parameter flip coefficient on endpoint counts") {
  // Closed webs map to themselves.
  for (unsigned n : {2u, 3u, 4u}) {
    for (const WebDiagram& d : closed_corpus(n))
      CHECK(sign_map_coeff(d, flip_spec(n)) == CycInt(1));
  }
  // Two endpoints: -1 at n = 2, +1 at n = 3 ((n-1)e/2 = 2).
  CHECK(sign_map_coeff(bigon_arc(2, 1, 1), flip_spec(2)) == CycInt(-1));
  CHECK(sign_map_coeff(bigon_arc(3, 1, 1), flip_spec(3)) == CycInt(1));
  // Four endpoints at n = 2: e/2 = 2.
  CHECK(sign_map_coeff(bigon_strands(2, {{1, 1}, {2, 2}}), flip_spec(2)) ==
        CycInt(1));
  // n = 5 star: e = 5, (n-1)e/2 = 10.
  CHECK(sign_map_coeff(source_star(5), flip_spec(5)) == CycInt(1));
  // n = 3 star: e = 3, (n-1)e/2 = 3.
  CHECK(sign_map_coeff(source_star(3), flip_spec(3)) == CycInt(-1));
}

namespace {

// Deterministic expression corpus: a handful of diagram families over the
// same surface with small Laurent coefficients.
std::vector<SkeinExpression> seeded_expressions(unsigned n, unsigned count,
                                                unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::vector<WebDiagram> pool = {
      loop_diagram(n, 1),          kinked_loop(n, +1),
      kinked_loop(n, -1),          braid_closure(n, 2, {1, 1}),
      braid_closure(n, 2, {-1}),   vertex_pair(n, true),
      braid_closure(n, 3, {1, -2})};
  std::vector<SkeinExpression> out;
  for (unsigned i = 0; i < count; ++i) {
    SkeinExpression e(n, PolygonSurface{0});
    const unsigned terms = 1 + rng() % 3;
    for (unsigned t = 0; t < terms; ++t) {
      const WebDiagram& d = pool[rng() % pool.size()];
      const long long exp = static_cast<long long>(rng() % 11) - 5;
      const long long c = static_cast<long long>(rng() % 5) - 2;
      if (c == 0) continue;
      e.add(d, LaurentScalar(exp, BigInt(c)));
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

TEST_CASE("root twist composed with its inverse is the identity") {
  for (unsigned n : {2u, 3u}) {
    for (const SignMapSpec& spec : admissible_specs(n)) {
      SignMapSpec inverse = spec;
      inverse.eps_exponent = -spec.eps_exponent;
      validate_signmap_spec(inverse);
      for (const SkeinExpression& e : seeded_expressions(n, 8, 20250815 + n)) {
        const CycExpression forth = apply_signmap(e, spec);
        const CycExpression back = apply_signmap(forth, inverse);
        CHECK(back == CycExpression::embed(e));
      }
    }
  }
}

TEST_CASE("parameter flip applied twice is the identity") {
  for (unsigned n : {2u, 3u}) {
    for (const SkeinExpression& e : seeded_expressions(n, 8, 77 + n)) {
      const CycExpression once = apply_signmap(e, flip_spec(n));
      CHECK(apply_signmap(once, flip_spec(n)) == CycExpression::embed(e));
    }
  }
}

TEST_CASE("root twist coefficient is constant across move script replays") {
  struct Case {
    unsigned n;
    WebDiagram start;
    MoveScript script;
  };
  std::vector<Case> cases;
  // Push two crossings in, pull them back out.
  {
    const WebDiagram d = bigon_strands(2, {{1, 1}, {2, 2}});
    const unsigned c1 = static_cast<unsigned>(d.nodes.size());
    cases.push_back({2, d, MoveScript{StrandPush{0u, 1u}}});
    cases.push_back(
        {2, d, MoveScript{StrandPush{0u, 1u}, StrandPull{c1, c1 + 1}}});
  }
  // Braid relation.
  cases.push_back(
      {2, braid_closure(2, 3, {1, 2, 1}), MoveScript{TriangleSlide{0, 1, 2}}});
  // Vertex twists change the writhe by multiples of n.
  for (unsigned n : {2u, 3u})
    for (int sign : {+1, -1})
      cases.push_back({n, vertex_pair(n, false),
                       MoveScript{VertexTwist{0, sign}}});
  // A loop around every leg of a vertex slides off as a free loop.
  {
    WebDiagram theta = vertex_pair(2, false);
    const WebDiagram looped = apply_move(theta, VertexTwist{0, +1});
    const std::vector<unsigned> ids = crossing_ids(looped);
    REQUIRE(ids.size() == 2);
    cases.push_back({2, looped, MoveScript{VertexSlide{0, ids}}});
  }
  for (const Case& c : cases) {
    REQUIRE(is_valid(c.start));
    const WebDiagram after = apply_move_script(c.start, c.script);
    for (const SignMapSpec& spec : admissible_specs(c.n)) {
      CAPTURE(spec.m);
      CAPTURE(spec.eps_order);
      CHECK(sign_map_coeff(c.start, spec) == sign_map_coeff(after, spec));
    }
  }
}

TEST_CASE("stacking defect of the root twist coefficient is eps^(2 crossings)") {
  struct Pair {
    unsigned n;
    WebDiagram a, b;
  };
  std::vector<Pair> pairs;
  for (unsigned n : {2u, 3u}) {
    // Interleaving chords are forced to cross once.
    pairs.push_back({n, bigon_arc(n, 1, 1, true), bigon_arc(n, 1, 1, true)});
    // Parallel strand packets against a chord.
    if (n >= 2)
      pairs.push_back(
          {n, bigon_strands(n, {{1, 1}, {2, 2}}), bigon_arc(n, 2, 2, true)});
  }
  for (const Pair& pr : pairs) {
    const WebDiagram stacked = stack_diagrams(pr.a, pr.b);
    const long long rel =
        count_of(stacked).w - count_of(pr.a).w - count_of(pr.b).w;
    CHECK(rel > 0);  // the fixtures really interleave
    for (const SignMapSpec& spec : admissible_specs(pr.n)) {
      const CycInt defect =
          CycInt::root_power(spec.eps_order, spec.eps_exponent * 2 * rel);
      CHECK(sign_map_coeff(stacked, spec) ==
            sign_map_coeff(pr.a, spec) * sign_map_coeff(pr.b, spec) * defect);
      // The defect disappears exactly on m-divisible pairs, so there the
      // coefficient is multiplicative.
      if (rel % spec.m == 0)
        CHECK(sign_map_coeff(stacked, spec) ==
              sign_map_coeff(pr.a, spec) * sign_map_coeff(pr.b, spec));
    }
  }
  // Negative control: one forced crossing at m = 2 with a fourth root of
  // unity gives defect -1, so plain multiplicativity fails.
  {
    const WebDiagram a = bigon_arc(2, 1, 1, true);
    const WebDiagram stacked = stack_diagrams(a, a);
    const SignMapSpec spec = root_spec(2, 2, 4);
    const CycInt product = sign_map_coeff(a, spec) * sign_map_coeff(a, spec);
    CHECK(sign_map_coeff(stacked, spec) == product * CycInt(-1));
    CHECK_FALSE(sign_map_coeff(stacked, spec) == product);
  }
  // Disjoint unions of closed diagrams never cross: always multiplicative.
  for (unsigned n : {2u, 3u}) {
    const WebDiagram a = braid_closure(n, 2, {1, 1});
    const WebDiagram b = kinked_loop(n, -1);
    const WebDiagram both = disjoint_union(a, b);
    for (const SignMapSpec& spec : admissible_specs(n))
      CHECK(sign_map_coeff(both, spec) ==
            sign_map_coeff(a, spec) * sign_map_coeff(b, spec));
  }
}

namespace {

// Checks, for one relation instance, that twisting both sides gives the
// same expression: for each output term,
//   coeff(input diagram) * (coefficient with v -> eps^r v)
//     == (coefficient as is) * coeff(output diagram).
void check_relation_compat(const WebDiagram& d, Relation rel,
                           const RelationSite& site,
                           const SignMapSpec& spec) {
  const auto [ord, exp] =
      spec.kind == SignMapKind::RootTwist
          ? std::pair<unsigned, long long>(spec.eps_order, spec.eps_exponent)
          : std::pair<unsigned, long long>(2, 1);
  const SkeinExpression out =
      apply_relation(SkeinExpression::from_diagram(d), rel, site);
  const CycInt lhs_coeff = sign_map_coeff(d, spec);
  for (const auto& [key, term] : out.terms()) {
    CAPTURE(key);
    const CycLaurent twisted =
        twist_scalar(term.coefficient, ord, exp) * cyc(lhs_coeff);
    const CycLaurent straight = embed_scalar(term.coefficient) *
                                cyc(sign_map_coeff(term.diagram, spec));
    CHECK(twisted == straight);
  }
}

std::vector<SignMapSpec> compat_specs(unsigned n) {
  std::vector<SignMapSpec> specs = admissible_specs(n);
  specs.push_back(flip_spec(n));
  return specs;
}

}  // namespace

TEST_CASE("sign maps are compatible with every defining relation") {
  for (unsigned n : {2u, 3u}) {
    for (const SignMapSpec& spec : compat_specs(n)) {
      CAPTURE(n);
      CAPTURE(static_cast<int>(spec.kind));
      CAPTURE(spec.m);
      CAPTURE(spec.eps_order);
      // Crossing smoothing, both signs.
      check_relation_compat(braid_closure(n, 2, {1, 1}),
                            Relation::CrossingSmoothing,
                            RelationSite{.node = 0}, spec);
      check_relation_compat(braid_closure(n, 2, {-1, -1}),
                            Relation::CrossingSmoothing,
                            RelationSite{.node = 0}, spec);
      // Kinks of both signs.
      for (int sign : {+1, -1})
        check_relation_compat(kinked_loop(n, sign), Relation::KinkRemoval,
                              RelationSite{.node = 0}, spec);
      // Free circle.
      check_relation_compat(loop_diagram(n, 2), Relation::CircleRemoval,
                            RelationSite{}, spec);
      // Sink/source pair expansion, stated and based.
      check_relation_compat(vertex_pair(n, false),
                            Relation::VertexPairExpansion,
                            RelationSite{.node = 0, .partner = 1}, spec);
      check_relation_compat(vertex_pair(n, true),
                            Relation::BasedVertexPairExpansion,
                            RelationSite{.node = 0, .partner = 1}, spec);
      // Vertex expansion against a boundary edge.
      {
        WebDiagram theta = vertex_pair(n, false);
        theta.surface = PolygonSurface{1};
        check_relation_compat(theta, Relation::VertexBoundaryExpansion,
                              RelationSite{.node = 1, .edge = 0, .rank = 1},
                              spec);
      }
      // Cup, then cap on each resulting returning arc.
      {
        const WebDiagram arc = bigon_arc(n, 1, n, true);
        check_relation_compat(
            arc, Relation::BoundaryCup,
            RelationSite{.arc = 0, .edge = 0, .rank = 1, .head_on_top = true},
            spec);
        const SkeinExpression cupped = apply_relation(
            SkeinExpression::from_diagram(arc), Relation::BoundaryCup,
            RelationSite{.arc = 0, .edge = 0, .rank = 1, .head_on_top = true});
        for (const auto& [key, term] : cupped.terms())
          check_relation_compat(term.diagram, Relation::BoundaryCap,
                                RelationSite{.edge = 0, .rank = 2}, spec);
      }
    }
  }
}

TEST_CASE("sign maps are compatible with the boundary crossing relation") {
  // Fixture: a crossing whose outgoing strands end on edge 0 at ranks 1 and
  // 2 with the under strand below, entering from edge 1.
  const auto fixture = [](unsigned i, unsigned j) -> WebDiagram {
    for (unsigned over_in : {0u, 1u}) {
      const unsigned under_in = 1 - over_in;
      for (bool swap_in : {false, true}) {
        WebDiagram d;
        d.surface = PolygonSurface{2};
        d.nodes.emplace_back(CrossingNode{over_in, under_in});
        const unsigned over_out = (over_in + 2) % 4;
        const unsigned under_out = (under_in + 2) % 4;
        d.nodes.emplace_back(
            EndpointNode{0, 1, j, EndpointDir::TowardBoundary});
        d.nodes.emplace_back(
            EndpointNode{0, 2, i, EndpointDir::TowardBoundary});
        d.nodes.emplace_back(
            EndpointNode{1, swap_in ? 2u : 1u, 1, EndpointDir::AwayFromBoundary});
        d.nodes.emplace_back(
            EndpointNode{1, swap_in ? 1u : 2u, 1, EndpointDir::AwayFromBoundary});
        d.arcs.push_back(Arc{{0, under_out}, {1, 0}});
        d.arcs.push_back(Arc{{0, over_out}, {2, 0}});
        d.arcs.push_back(Arc{{3, 0}, {0, over_in}});
        d.arcs.push_back(Arc{{4, 0}, {0, under_in}});
        if (is_valid(d)) return d;
      }
    }
    FAIL("boundary crossing fixture did not embed");
    return WebDiagram{};
  };
  for (unsigned n : {2u, 3u}) {
    const WebDiagram d = fixture(1, n);
    for (const SignMapSpec& spec : compat_specs(n))
      check_relation_compat(d, Relation::BoundaryCrossing,
                            RelationSite{.node = 0}, spec);
  }
}

namespace {

// Documented spin-weight oracle for circles with kinks: the weight of the
// plain circle is odd, and every kink flips it.
int kink_counting_spin(const WebDiagram& d) {
  return static_cast<int>(1 + crossing_ids(d).size());
}

}  // namespace

TEST_CASE("spin twist coefficient at even rank counts the documented weights") {
  SignMapSpec spec{.kind = SignMapKind::SpinTwist,
                   .n = 2,
                   .m = 1,
                   .eps_order = 1,
                   .eps_exponent = 1,
                   .spin = kink_counting_spin};
  // Circle with j kinks: weight s = 1 + j, one closed component, no
  // vertices, hence coefficient (-1)^(s + 1) = (-1)^j.
  WebDiagram d = loop_diagram(2, 1);
  CHECK(sign_map_coeff(d, spec) == CycInt(1));
  d = kinked_loop(2, +1);
  CHECK(sign_map_coeff(d, spec) == CycInt(-1));
  d = insert_kink(d, 0, -1);
  REQUIRE(is_valid(d));
  CHECK(sign_map_coeff(d, spec) == CycInt(1));
  d = insert_kink(d, 0, +1);
  REQUIRE(is_valid(d));
  CHECK(sign_map_coeff(d, spec) == CycInt(-1));

  // Based sink/source pair: no closed component, identity wiring, weight
  // from the oracle (no crossings, so s = 1): coefficient -1.
  const WebDiagram theta = vertex_pair(2, true);
  REQUIRE(stats(theta).tau.has_value());
  CHECK(stats(theta).tau_inversions == 0);
  CHECK(sign_map_coeff(theta, spec) == CycInt(-1));

  // The coefficient is a sign, so applying the map twice is the identity.
  for (const SkeinExpression& e : seeded_expressions(2, 6, 99)) {
    const CycExpression once = apply_signmap(e, spec);
    CHECK(apply_signmap(once, spec) == CycExpression::embed(e));
  }
}

TEST_CASE("spin twist is trivial at odd rank") {
  SignMapSpec spec{.kind = SignMapKind::SpinTwist,
                   .n = 3,
                   .m = 1,
                   .eps_order = 1,
                   .eps_exponent = 1,
                   .spin = {}};  // no oracle needed at odd rank
  validate_signmap_spec(spec);
  for (const WebDiagram& d :
       {loop_diagram(3, 2), kinked_loop(3, -1), vertex_pair(3, true)})
    CHECK(sign_map_coeff(d, spec) == CycInt(1));
}

TEST_CASE("spin twist error handling") {
  // Even rank without an oracle is rejected up front.
  SignMapSpec missing{.kind = SignMapKind::SpinTwist,
                      .n = 2,
                      .m = 1,
                      .eps_order = 1,
                      .eps_exponent = 1,
                      .spin = {}};
  CHECK_THROWS_WITH_AS(validate_signmap_spec(missing),
                       "sign map: a spin weight is required",
                       std::invalid_argument);

  SignMapSpec spec{.kind = SignMapKind::SpinTwist,
                   .n = 2,
                   .m = 1,
                   .eps_order = 1,
                   .eps_exponent = 1,
                   .spin = kink_counting_spin};
  // Unbased vertices carry no wiring permutation.
  CHECK_THROWS_WITH_AS(sign_map_coeff(vertex_pair(2, false), spec),
                       "spin weight needs based vertices",
                       std::invalid_argument);
  // Based but unbalanced vertices have no wiring permutation either.
  WebDiagram star = source_star(2);
  std::get<SourceNode>(star.nodes[0]).base = 0;
  REQUIRE(is_valid(star));
  CHECK_THROWS_WITH_AS(sign_map_coeff(star, spec), "unbalanced vertices",
                       std::invalid_argument);
}

TEST_CASE("sign map specs are validated") {
  CHECK_THROWS_WITH_AS(validate_signmap_spec(root_spec(4, 3, 2)),
                       "sign map: m must divide n", std::invalid_argument);
  CHECK_THROWS_WITH_AS(validate_signmap_spec(root_spec(2, 1, 4)),
                       "sign map: the root must satisfy eps^(2m) = 1",
                       std::invalid_argument);
  // The same failure for a non-unit exponent: eps = x^2 of order 8 has
  // eps^2 = x^4 != 1 at m = 1.
  CHECK_THROWS_WITH_AS(validate_signmap_spec(root_spec(2, 1, 8, 2)),
                       "sign map: the root must satisfy eps^(2m) = 1",
                       std::invalid_argument);
  // eps = x^4 of order 8 is a square root of unity: admissible at m = 1.
  validate_signmap_spec(root_spec(2, 1, 8, 4));

  CHECK_THROWS_WITH_AS(
      sign_map_coeff(loop_diagram(3, 1), root_spec(2, 1, 2)),
      "sign map: the map and the diagram disagree on the rank",
      std::invalid_argument);
  const SkeinExpression e =
      SkeinExpression::from_diagram(loop_diagram(3, 1));
  CHECK_THROWS_WITH_AS(
      apply_signmap(e, root_spec(2, 1, 2)),
      "sign map: the map and the expression disagree on the rank",
      std::invalid_argument);
}

TEST_CASE("scalar embedding and twisting") {
  const LaurentScalar t2 = constants(2).t;  // -v^6
  // Twisting by a sign only touches odd exponents; v^6 is even.
  CHECK(twist_scalar(t2, 2, 1) == embed_scalar(t2));
  // A fourth root multiplies v^1 by the root itself.
  const CycLaurent tv = twist_scalar(LaurentScalar::v_pow(1), 4, 1);
  REQUIRE(tv.is_monomial());
  CHECK(tv.monomial().first == 1);
  CHECK(tv.monomial().second == CycInt::root_power(4, 1));
  // Twisting is a ring map.
  const LaurentScalar a = parse_laurent("v^3 + 2*v^-1");
  const LaurentScalar b = parse_laurent("v^2 - 1");
  CHECK(twist_scalar(a * b, 4, 1) == twist_scalar(a, 4, 1) * twist_scalar(b, 4, 1));
  // Order one leaves everything alone.
  CHECK(twist_scalar(a, 1, 1) == embed_scalar(a));
}

TEST_CASE("applying a sign map tags the target parameter") {
  const SkeinExpression e =
      SkeinExpression::from_diagram(kinked_loop(2, +1));
  const CycExpression rooted = apply_signmap(e, root_spec(2, 1, 2));
  CHECK(rooted.parameter() == "eps*v");
  CHECK(apply_signmap(e, flip_spec(2)).parameter() == "-v");
  SignMapSpec spin{.kind = SignMapKind::SpinTwist,
                   .n = 2,
                   .m = 1,
                   .eps_order = 1,
                   .eps_exponent = 1,
                   .spin = kink_counting_spin};
  CHECK(apply_signmap(e, spin).parameter() == "-v^2");
  // Chained maps compose the tag; equality ignores it.
  const CycExpression chained = apply_signmap(rooted, flip_spec(2));
  CHECK(chained.parameter() == "-(eps*v)");
  CHECK(CycExpression::embed(e).parameter() == "v");
}
