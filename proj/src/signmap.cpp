#include "skein/signmap.hpp"

#include <stdexcept>
#include <utility>

namespace skein {

namespace {

void require_valid(const WebDiagram& d) {
  const auto problems = validate(d);
  if (!problems.empty())
    throw std::invalid_argument(problems.front().code + ": " +
                                problems.front().detail);
}

long long positive_mod(long long a, long long m) {
  const long long r = a % m;
  return r < 0 ? r + m : r;
}

CycInt sign(long long parity) { return CycInt(parity % 2 == 0 ? 1 : -1); }

// e, t, p and w without the component/permutation analysis, so unbalanced
// based diagrams still get their counting coefficients.
struct Counts {
  long long w = 0;
  unsigned long long e = 0, t = 0, p = 0;
};

Counts count(const WebDiagram& d) {
  Counts c;
  for (const Node& nd : d.nodes) {
    if (const auto* x = std::get_if<CrossingNode>(&nd)) {
      c.w += crossing_sign(*x);
    } else if (const auto* ep = std::get_if<EndpointNode>(&nd)) {
      ++c.e;
      if (ep->dir == EndpointDir::TowardBoundary) ++c.t;
    } else {
      ++c.p;
    }
  }
  return c;
}

CycLaurent cyc_const(const CycInt& c) {
  CycLaurent out;
  out.add_term(0, c);
  return out;
}

std::string compose_parameter(const std::string& target,
                              const std::string& source) {
  if (source == "v") return target;
  std::string out;
  for (char ch : target) {
    if (ch == 'v')
      out += "(" + source + ")";
    else
      out += ch;
  }
  return out;
}

}  // namespace

void validate_signmap_spec(const SignMapSpec& spec) {
  if (spec.n == 0)
    throw std::invalid_argument("sign map: the rank must be positive");
  switch (spec.kind) {
    case SignMapKind::RootTwist: {
      if (spec.m == 0 || spec.n % spec.m != 0)
        throw std::invalid_argument("sign map: m must divide n");
      if (spec.eps_order == 0)
        throw std::invalid_argument("sign map: the root order must be positive");
      if (positive_mod(2ll * spec.m * spec.eps_exponent, spec.eps_order) != 0)
        throw std::invalid_argument(
            "sign map: the root must satisfy eps^(2m) = 1");
      return;
    }
    case SignMapKind::ParameterFlip:
      return;
    case SignMapKind::SpinTwist:
      if (spec.n % 2 == 0 && !spec.spin)
        throw std::invalid_argument("sign map: a spin weight is required");
      return;
  }
  throw std::invalid_argument("sign map: unknown kind");
}

CycInt sign_map_coeff(const WebDiagram& d, const SignMapSpec& spec) {
  validate_signmap_spec(spec);
  require_valid(d);
  if (d.n != spec.n)
    throw std::invalid_argument(
        "sign map: the map and the diagram disagree on the rank");

  switch (spec.kind) {
    case SignMapKind::RootTwist: {
      const Counts c = count(d);
      const unsigned ord = spec.eps_order;
      const long long m = spec.m;
      const long long k = spec.n / spec.m;
      const bool eps_m_is_one =
          positive_mod(m * spec.eps_exponent, ord) == 0;

      bool half_branch = false;  // extra = e/2 instead of t
      bool negated = false;      // base (-eps) instead of eps
      CycInt vertex_sign(1);
      if (!eps_m_is_one) {
        if (k % 2 == 0) {
          half_branch = true;
        } else if (m % 2 == 0) {
          half_branch = true;
          negated = true;
        } else {
          negated = true;
          if (((k + m) / 2) % 2 == 0)
            vertex_sign = sign(static_cast<long long>(c.p));
        }
      } else {
        half_branch = spec.n % 2 == 0;
      }
      long long extra;
      if (half_branch) {
        // e and n p are congruent mod 2, and every half branch has n even.
        if (c.e % 2 != 0)
          throw std::logic_error("sign map: endpoint parity violated");
        extra = static_cast<long long>(c.e) / 2;
      } else {
        extra = static_cast<long long>(c.t);
      }

      const long long exponent = 2 * c.w + extra;
      CycInt out = CycInt::root_power(ord, spec.eps_exponent * exponent);
      if (negated) out = out * sign(exponent);
      return out * vertex_sign;
    }
    case SignMapKind::ParameterFlip: {
      const Counts c = count(d);
      if (spec.n % 2 == 0) {
        if (c.e % 2 != 0)
          throw std::logic_error("sign map: endpoint parity violated");
        return sign(static_cast<long long>(c.e) / 2);
      }
      const long long half = (spec.n - 1) / 2;
      return sign(half * static_cast<long long>(c.e));
    }
    case SignMapKind::SpinTwist: {
      if (spec.n % 2 != 0) return CycInt(1);
      const DiagramStats st = stats(d);
      if (st.p > 0 && !st.tau)
        throw std::invalid_argument("spin weight needs based vertices");
      const long long s = positive_mod(spec.spin(d), 2);
      return sign(s + static_cast<long long>(st.components) +
                  static_cast<long long>(st.tau_inversions));
    }
  }
  throw std::invalid_argument("sign map: unknown kind");
}

CycLaurent embed_scalar(const LaurentScalar& c) {
  CycLaurent out;
  for (const auto& [e, a] : c.terms()) out.add_term(e, CycInt(a));
  return out;
}

CycLaurent twist_scalar(const LaurentScalar& c, unsigned eps_order,
                        long long eps_exponent) {
  if (eps_order == 0)
    throw std::invalid_argument("twist: the root order must be positive");
  CycLaurent out;
  for (const auto& [e, a] : c.terms())
    out.add_term(e, CycInt(a) * CycInt::root_power(eps_order,
                                                   eps_exponent * e));
  return out;
}

std::string target_parameter(const SignMapSpec& spec) {
  switch (spec.kind) {
    case SignMapKind::RootTwist:
      return spec.eps_exponent == 1
                 ? std::string("eps*v")
                 : "eps^" + std::to_string(spec.eps_exponent) + "*v";
    case SignMapKind::ParameterFlip:
      return "-v";
    case SignMapKind::SpinTwist:
      return "-v^2";
  }
  return "v";
}

CycExpression::CycExpression(unsigned n, PolygonSurface surface,
                             std::string parameter)
    : n_(n), surface_(surface), parameter_(std::move(parameter)) {
  if (n_ == 0)
    throw std::invalid_argument("expression: the rank must be positive");
}

CycExpression CycExpression::embed(const SkeinExpression& e) {
  CycExpression out(e.rank(), e.surface(), "v");
  for (const auto& [key, term] : e.terms())
    out.add(term.diagram, embed_scalar(term.coefficient));
  return out;
}

void CycExpression::add(const WebDiagram& d, const CycLaurent& coefficient) {
  require_valid(d);
  if (d.n != n_ || d.surface.ideal_points != surface_.ideal_points)
    throw std::invalid_argument(
        "expression: diagram rank or surface mismatch");
  if (coefficient.is_zero()) return;
  WebDiagram nd = normalize_ordering(d);
  const std::string key = canonical_encoding(nd);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, CycTerm{std::move(nd), coefficient});
    return;
  }
  it->second.coefficient += coefficient;
  if (it->second.coefficient.is_zero()) terms_.erase(it);
}

CycExpression CycExpression::scaled(const CycLaurent& c) const {
  CycExpression out(n_, surface_, parameter_);
  if (c.is_zero()) return out;
  out.terms_ = terms_;
  for (auto& [key, term] : out.terms_) term.coefficient *= c;
  return out;
}

bool CycExpression::operator==(const CycExpression& other) const {
  if (n_ != other.n_ ||
      surface_.ideal_points != other.surface_.ideal_points ||
      terms_.size() != other.terms_.size())
    return false;
  for (auto it = terms_.begin(), jt = other.terms_.begin();
       it != terms_.end(); ++it, ++jt)
    if (it->first != jt->first ||
        it->second.coefficient != jt->second.coefficient)
      return false;
  return true;
}

CycExpression apply_signmap(const SkeinExpression& expr,
                            const SignMapSpec& spec) {
  return apply_signmap(CycExpression::embed(expr), spec);
}

CycExpression apply_signmap(const CycExpression& expr,
                            const SignMapSpec& spec) {
  validate_signmap_spec(spec);
  if (expr.rank() != spec.n)
    throw std::invalid_argument(
        "sign map: the map and the expression disagree on the rank");
  CycExpression out(expr.rank(), expr.surface(),
                    compose_parameter(target_parameter(spec),
                                      expr.parameter()));
  for (const auto& [key, term] : expr.terms())
    out.add(term.diagram,
            term.coefficient * cyc_const(sign_map_coeff(term.diagram, spec)));
  return out;
}

}  // namespace skein
