#include "sympack/stability_certifier.hpp"

#include <algorithm>

#include "sympack/errors.hpp"
#include "sympack/weight_expansion.hpp"

namespace sympack {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// p(max/min) for an ellipsoid's weight expansion.
std::size_t ellipsoid_weight_count(const Rational& x, const Rational& y) {
  return weight_count(std::max(x, y) / std::min(x, y));
}

}  // namespace

Target parse_target(std::string_view text) {
  const CallSyntax call = parse_call(text);
  if (call.head == "P2") {
    if (call.args.empty()) throw InvalidInput("P2(...) needs at least the scale mu");
    BlowupOfP2 t{Rational::parse(call.args[0]), {}};
    for (std::size_t i = 1; i < call.args.size(); ++i) t.lambdas.push_back(Rational::parse(call.args[i]));
    validate(Target{t});
    return t;
  }
  const ToricDomain d = parse_domain(text);
  Target t = std::visit(overloaded{
                            [](const Ball& b) -> Target { return Ellipsoid{b.capacity, b.capacity}; },
                            [](const Ellipsoid& e) -> Target { return e; },
                            [](const PseudoBall& p) -> Target { return p; },
                            [](const ProjectivePlane& p) -> Target { return BlowupOfP2{p.scale, {}}; },
                        },
                        d);
  validate(t);
  return t;
}

std::string to_string(const Target& t) {
  return std::visit(overloaded{
                        [](const BlowupOfP2& b) {
                          std::string s = "P2(" + b.mu.str();
                          for (std::size_t i = 0; i < b.lambdas.size(); ++i) {
                            s += (i == 0 ? ";" : ",") + b.lambdas[i].str();
                          }
                          return s + ")";
                        },
                        [](const Ellipsoid& e) { return to_string(ToricDomain{e}); },
                        [](const PseudoBall& p) { return to_string(ToricDomain{p}); },
                    },
                    t);
}

void validate(const Target& t) {
  std::visit(overloaded{
                 [](const BlowupOfP2& b) {
                   if (b.mu.sign() <= 0) throw InvalidInput("P2 scale must be positive");
                   Rational sum_sq;
                   for (const auto& l : b.lambdas) {
                     if (l.sign() <= 0) throw InvalidInput("blow-up sizes must be positive");
                     sum_sq += l * l;
                   }
                   if (sum_sq >= b.mu * b.mu) {
                     throw ValidationError("infeasible blow-up",
                                           {"sum of lambda_i^2 = " + sum_sq.str() + " is not < mu^2"});
                   }
                 },
                 [](const Ellipsoid& e) { sympack::validate(ToricDomain{e}); },
                 [](const PseudoBall& p) { sympack::validate(ToricDomain{p}); },
             },
             t);
}

Rational volume(const Target& t) {
  validate(t);
  return std::visit(overloaded{
                        [](const BlowupOfP2& b) {
                          Rational v = b.mu * b.mu;
                          for (const auto& l : b.lambdas) v -= l * l;
                          return v / Rational(2);
                        },
                        [](const Ellipsoid& e) { return volume(ToricDomain{e}); },
                        [](const PseudoBall& p) { return volume(ToricDomain{p}); },
                    },
                    t);
}

Target scaled(const Target& t, const Rational& c) {
  if (c.sign() <= 0) throw InvalidInput("scale factor must be positive");
  return std::visit(overloaded{
                        [&](const BlowupOfP2& b) -> Target {
                          BlowupOfP2 out{b.mu * c, {}};
                          for (const auto& l : b.lambdas) out.lambdas.push_back(l * c);
                          return out;
                        },
                        [&](const Ellipsoid& e) -> Target { return Ellipsoid{e.a * c, e.b * c}; },
                        [&](const PseudoBall& p) -> Target {
                          return PseudoBall{p.a * c, p.b * c, p.alpha * c, p.beta * c};
                        },
                    },
                    t);
}

std::string to_string(BoundMode mode) {
  return mode == BoundMode::optimistic ? "optimistic" : "conservative";
}

BoundMode parse_bound_mode(std::string_view text) {
  if (text == "conservative") return BoundMode::conservative;
  if (text == "optimistic") return BoundMode::optimistic;
  throw InvalidInput("mode must be 'conservative' or 'optimistic', got '" + std::string(text) + "'");
}

BoundDerivation derive_lambda_bound(const Target& t, unsigned precision_bits) {
  validate(t);
  struct Shape {
    Rational scale;
    Rational kappa_sq;
    std::size_t p;
  };
  const Shape shape = std::visit(
      overloaded{
          [](const BlowupOfP2& b) {
            Rational sum_sq;
            for (const auto& l : b.lambdas) sum_sq += l * l;
            return Shape{b.mu, sum_sq / (b.mu * b.mu), b.lambdas.size()};
          },
          // a E(1, c) with c = max/min. Its complement in P^2(c) is E(c-1, c),
          // whose weights (c-1) w(c/(c-1)) have squared sum (c-1)c.
          [](const Ellipsoid& e) {
            const Rational lo = std::min(e.a, e.b);
            const Rational c = std::max(e.a, e.b) / lo;
            if (c == Rational(1)) return Shape{lo, Rational(0), 0};
            const Rational c1 = c - Rational(1);
            return Shape{lo * c, c1 / c, weight_count(c / c1)};
          },
          // Complement of E(s-a, alpha) and E(s-b, beta) in P^2(s), s = alpha+beta.
          [](const PseudoBall& q) {
            const Rational s = q.alpha + q.beta;
            const Rational kappa_sq = ((s - q.a) * q.alpha + (s - q.b) * q.beta) / (s * s);
            const std::size_t p =
                ellipsoid_weight_count(s - q.a, q.alpha) + ellipsoid_weight_count(s - q.b, q.beta);
            return Shape{s, kappa_sq, p};
          },
      },
      t);
  LowerBound optimistic = dominance_bound(shape.scale, shape.kappa_sq, shape.p, precision_bits);
  LowerBound conservative = optimistic.scaled(Rational(1, 2));
  return {shape.scale, shape.kappa_sq, shape.p, std::move(optimistic), std::move(conservative)};
}

LowerBound lambda_bound(const Target& t, BoundMode mode, unsigned precision_bits) {
  return derive_lambda_bound(t, precision_bits).for_mode(mode);
}

Certificate certify_packing(const Target& t, std::span<const Rational> balls, BoundMode mode,
                            unsigned precision_bits) {
  validate(t);
  Certificate cert{t, mode, lambda_bound(t, mode, precision_bits), {}, volume(t), {}, {}, false, {}};

  for (std::size_t i = 0; i < balls.size(); ++i) {
    const Rational& c = balls[i];
    if (c.sign() <= 0) throw InvalidInput("ball capacities must be positive");
    const bool below = c < cert.lambda_threshold.value();
    cert.balls.push_back({c, below});
    cert.ball_volume += c * c;
    if (!below) {
      cert.reasons.push_back("ball " + std::to_string(i + 1) + " capacity " + c.str() +
                             " is not below the threshold " + cert.lambda_threshold.decimal(12));
    }
  }
  cert.ball_volume /= Rational(2);
  cert.volume_slack = cert.target_volume - cert.ball_volume;
  if (cert.volume_slack.sign() < 0) {
    cert.reasons.push_back("ball volume " + cert.ball_volume.str() + " exceeds target volume " +
                           cert.target_volume.str());
  }
  if (const auto* b = std::get_if<BlowupOfP2>(&t)) {
    if (!decide_ball_packing(b->mu, b->lambdas)) {
      cert.reasons.push_back("blown-up balls do not pack P2(" + b->mu.str() + ")");
    }
  }
  cert.certified = cert.reasons.empty();
  return cert;
}

EllipsoidDecision decide_balls_into_ellipsoid(const Rational& a, std::span<const Rational> balls) {
  if (a <= Rational(1)) throw InvalidInput("ellipsoid E(1,a) needs a > 1, got " + a.str());
  EllipsoidDecision out;
  out.vector.mu = Rational(1);
  for (const auto& w : ellipsoid_weights(a - Rational(1), a).weights) out.vector.lambdas.push_back(w / a);
  for (const auto& b : balls) {
    if (b.sign() < 0) throw InvalidInput("ball capacities must be non-negative");
    out.vector.lambdas.push_back(b / a);
  }
  out.trace = reduce(out.vector);
  out.accepted = out.trace.accepted;
  return out;
}

DirectedCheck check_directed_hypotheses(std::span<const Rational> component_areas,
                                        std::span<const EllipsoidAssignment> assignments) {
  for (const auto& area : component_areas) {
    if (area.sign() <= 0) throw InvalidInput("component areas must be positive");
  }
  std::vector<Rational> load(component_areas.size());
  auto charge = [&](const BranchRef& ref, const Rational& amount) {
    if (ref.component >= component_areas.size()) {
      throw InvalidInput("assignment to unknown component " + std::to_string(ref.component));
    }
    load[ref.component] += amount;
  };
  for (const auto& as : assignments) {
    if (as.ellipsoid.a.sign() <= 0 || as.ellipsoid.b.sign() <= 0) {
      throw InvalidInput("ellipsoid parameters must be positive");
    }
    switch (as.role) {
      case AxisRole::first_axis: charge(as.first, as.ellipsoid.a); break;
      case AxisRole::second_axis: charge(as.second, as.ellipsoid.b); break;
      case AxisRole::cross:
        if (as.first == as.second) {
          throw InvalidInput("cross assignment uses the same branch for both axes");
        }
        charge(as.first, as.ellipsoid.a);
        charge(as.second, as.ellipsoid.b);
        break;
      case AxisRole::free: break;
    }
  }
  DirectedCheck out;
  out.satisfied = true;
  for (std::size_t i = 0; i < component_areas.size(); ++i) {
    out.slack.push_back(component_areas[i] - load[i]);
    if (out.slack.back().sign() <= 0) out.satisfied = false;
  }
  return out;
}

}  // namespace sympack
