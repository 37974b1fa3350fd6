#include "sympack/toric_domains.hpp"

#include <algorithm>
#include <cctype>

#include "sympack/errors.hpp"

namespace sympack {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

void require_positive(const Rational& v, const char* name) {
  if (v.sign() <= 0) {
    throw InvalidInput(std::string("parameter ") + name + " must be positive, got " + v.str());
  }
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

Rational polytope_area(std::span<const Point> vertices) {
  if (vertices.size() < 3) return Rational(0);
  Rational twice;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point& p = vertices[i];
    const Point& q = vertices[(i + 1) % vertices.size()];
    twice += p.x * q.y - q.x * p.y;
  }
  return twice / Rational(2);
}

MomentPolytope::MomentPolytope(std::vector<Point> vertices) {
  for (const auto& v : vertices) {
    if (v.x.sign() < 0 || v.y.sign() < 0) {
      throw InvalidInput("moment polytope vertex outside the first quadrant");
    }
  }
  // Drop consecutive duplicates (cyclically), then collinear middle vertices.
  std::vector<Point> pts;
  for (auto& v : vertices) {
    if (pts.empty() || !(pts.back() == v)) pts.push_back(std::move(v));
  }
  while (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point& prev = pts[(i + pts.size() - 1) % pts.size()];
      const Point& next = pts[(i + 1) % pts.size()];
      if (cross(prev, pts[i], next).is_zero()) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  vertices_ = std::move(pts);
}

bool MomentPolytope::contains(const Point& p) const {
  if (vertices_.size() < 3) return false;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (cross(vertices_[i], vertices_[(i + 1) % vertices_.size()], p).sign() < 0) return false;
  }
  return true;
}

std::string describe(PseudoBallViolation v) {
  switch (v) {
    case PseudoBallViolation::a_not_greater_than_alpha: return "a > alpha fails";
    case PseudoBallViolation::b_not_greater_than_beta: return "b > beta fails";
    case PseudoBallViolation::a_not_less_than_sum: return "a < alpha+beta fails";
    case PseudoBallViolation::b_not_less_than_sum: return "b < alpha+beta fails";
  }
  return "unknown";
}

std::vector<PseudoBallViolation> validate_pseudo_ball(const Rational& a, const Rational& b,
                                                      const Rational& alpha, const Rational& beta) {
  require_positive(a, "a");
  require_positive(b, "b");
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  std::vector<PseudoBallViolation> out;
  const Rational sum = alpha + beta;
  if (!(a > alpha)) out.push_back(PseudoBallViolation::a_not_greater_than_alpha);
  if (!(b > beta)) out.push_back(PseudoBallViolation::b_not_greater_than_beta);
  if (!(a < sum)) out.push_back(PseudoBallViolation::a_not_less_than_sum);
  if (!(b < sum)) out.push_back(PseudoBallViolation::b_not_less_than_sum);
  return out;
}

void validate(const ToricDomain& domain) {
  std::visit(overloaded{
                 [](const Ball& d) { require_positive(d.capacity, "capacity"); },
                 [](const Ellipsoid& d) {
                   require_positive(d.a, "a");
                   require_positive(d.b, "b");
                 },
                 [](const ProjectivePlane& d) { require_positive(d.scale, "scale"); },
                 [](const PseudoBall& d) {
                   const auto violations = validate_pseudo_ball(d.a, d.b, d.alpha, d.beta);
                   if (!violations.empty()) {
                     std::vector<std::string> text;
                     for (auto v : violations) text.push_back(describe(v));
                     throw ValidationError("invalid pseudo-ball " + to_string(ToricDomain{d}), text);
                   }
                 },
             },
             domain);
}

MomentPolytope moment_polytope(const ToricDomain& domain) {
  validate(domain);
  return std::visit(
      overloaded{
          [](const Ball& d) { return MomentPolytope({{0, 0}, {d.capacity, 0}, {0, d.capacity}}); },
          [](const Ellipsoid& d) { return MomentPolytope({{0, 0}, {d.a, 0}, {0, d.b}}); },
          [](const ProjectivePlane& d) { return MomentPolytope({{0, 0}, {d.scale, 0}, {0, d.scale}}); },
          [](const PseudoBall& d) {
            return MomentPolytope({{0, 0}, {d.b, 0}, {d.alpha, d.beta}, {0, d.a}});
          },
      },
      domain);
}

Rational volume(const ToricDomain& domain) {
  validate(domain);
  return std::visit(overloaded{
                        [](const Ball& d) { return d.capacity * d.capacity / Rational(2); },
                        [](const Ellipsoid& d) { return d.a * d.b / Rational(2); },
                        [](const ProjectivePlane& d) { return d.scale * d.scale / Rational(2); },
                        [](const PseudoBall& d) { return (d.a * d.alpha + d.b * d.beta) / Rational(2); },
                    },
                    domain);
}

ToricDomain scaled(const ToricDomain& domain, const Rational& c) {
  require_positive(c, "scale factor");
  return std::visit(overloaded{
                        [&](const Ball& d) -> ToricDomain { return Ball{d.capacity * c}; },
                        [&](const Ellipsoid& d) -> ToricDomain { return Ellipsoid{d.a * c, d.b * c}; },
                        [&](const ProjectivePlane& d) -> ToricDomain { return ProjectivePlane{d.scale * c}; },
                        [&](const PseudoBall& d) -> ToricDomain {
                          return PseudoBall{d.a * c, d.b * c, d.alpha * c, d.beta * c};
                        },
                    },
                    domain);
}

PseudoBallComplement pseudo_ball_complement(const PseudoBall& t) {
  validate(ToricDomain{t});
  const Rational sum = t.alpha + t.beta;
  return {sum, Ellipsoid{sum - t.a, t.alpha}, Ellipsoid{sum - t.b, t.beta}};
}

CallSyntax parse_call(std::string_view text) {
  const std::string s = trim(text);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    throw InvalidInput("expected NAME(args...), got '" + s + "'");
  }
  CallSyntax call;
  call.head = trim(std::string_view(s).substr(0, open));
  const std::string inner = s.substr(open + 1, s.size() - open - 2);
  std::string current;
  for (char c : inner) {
    if (c == ',' || c == ';') {
      call.args.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!trim(current).empty() || !call.args.empty()) call.args.push_back(trim(current));
  return call;
}

ToricDomain parse_domain(std::string_view text) {
  const CallSyntax call = parse_call(text);
  std::vector<Rational> args;
  for (const auto& a : call.args) args.push_back(Rational::parse(a));
  auto expect = [&](std::size_t n) {
    if (args.size() != n) {
      throw InvalidInput(call.head + "(...) takes " + std::to_string(n) + " argument(s), got " +
                         std::to_string(args.size()));
    }
  };
  ToricDomain d;
  if (call.head == "B") {
    expect(1);
    d = Ball{args[0]};
  } else if (call.head == "E") {
    expect(2);
    d = Ellipsoid{args[0], args[1]};
  } else if (call.head == "T") {
    expect(4);
    d = PseudoBall{args[0], args[1], args[2], args[3]};
  } else if (call.head == "P2") {
    expect(1);
    d = ProjectivePlane{args[0]};
  } else {
    throw InvalidInput("unknown domain '" + call.head + "' (expected B, E, T or P2)");
  }
  validate(d);
  return d;
}

std::string to_string(const ToricDomain& domain) {
  return std::visit(overloaded{
                        [](const Ball& d) { return "B(" + d.capacity.str() + ")"; },
                        [](const Ellipsoid& d) { return "E(" + d.a.str() + "," + d.b.str() + ")"; },
                        [](const ProjectivePlane& d) { return "P2(" + d.scale.str() + ")"; },
                        [](const PseudoBall& d) {
                          return "T(" + d.a.str() + "," + d.b.str() + "," + d.alpha.str() + "," +
                                 d.beta.str() + ")";
                        },
                    },
                    domain);
}

}  // namespace sympack
