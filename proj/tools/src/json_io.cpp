#include "json_io.hpp"

#include <algorithm>

#include "sympack/errors.hpp"

namespace sympack::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

void append_ball_token(std::string_view token, std::vector<Rational>& out) {
  const auto t = trim(token);
  if (t.empty()) throw InvalidInput("empty entry in ball list");
  const auto x = t.find('x');
  if (x == std::string::npos) {
    out.push_back(Rational::parse(t));
    return;
  }
  const auto value = Rational::parse(t.substr(0, x));
  const auto count = Rational::parse(t.substr(x + 1));
  if (!count.is_integer() || count.sign() <= 0 || count > Rational(10'000'000)) {
    throw InvalidInput("repeat count must be a positive integer: " + t);
  }
  const long n = count.numerator().get_si();
  out.insert(out.end(), static_cast<std::size_t>(n), value);
}

const char* piece_kind(PieceKind k) { return k == PieceKind::ellipsoid ? "ellipsoid" : "pseudo_ball"; }

}  // namespace

std::vector<Rational> parse_ball_list(std::string_view text) {
  std::vector<Rational> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    append_ball_token(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start), out);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Rational rational_from_json(const Json& j, std::string_view field) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InvalidInput(std::string(field) + " must be a rational string \"p/q\" or an integer");
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(std::span<const Rational> values) {
  Json a = Json::array();
  for (const auto& v : values) a.push_back(v.str());
  return a;
}

Json to_json(const LowerBound& b) {
  return Json{{"value", b.decimal()},
              {"exact", b.value().str()},
              {"rounding", "down"},
              {"precision_bits", b.precision_bits()},
              {"closed_form", b.exact()}};
}

Json to_json(const PackingVector& v) { return Json{{"mu", v.mu.str()}, {"lambdas", to_json(v.lambdas)}}; }

Json to_json(const ReductionTrace& t, bool with_steps) {
  Json j{{"input", to_json(t.input)},
         {"accepted", t.accepted},
         {"reason", describe(t.reason)},
         {"volume_check", t.volume_check},
         {"moves", t.moves()},
         {"terminal", to_json(t.terminal)}};
  if (with_steps) {
    Json steps = Json::array();
    for (const auto& s : t.steps) {
      steps.push_back(Json{{"before", to_json(s.before)}, {"defect", s.defect.str()}, {"after", to_json(s.after)}});
    }
    j["steps"] = std::move(steps);
  }
  return j;
}

Json to_json(const WeightSequence& w) {
  return Json{{"a", w.source.str()},
              {"weights", to_json(w.weights)},
              {"p", w.size()},
              {"sum_sq", w.sum_of_squares().str()}};
}

Json to_json(const HomologyClass& b) { return Json{{"k", b.k}, {"m", b.m}}; }

Json to_json(const Certificate& c) {
  Json balls = Json::array();
  for (const auto& b : c.balls) {
    balls.push_back(Json{{"capacity", b.capacity.str()}, {"below_threshold", b.below_threshold}});
  }
  return Json{{"target", to_string(c.target)},
              {"mode", to_string(c.mode)},
              {"lambda_threshold", to_json(c.lambda_threshold)},
              {"balls", std::move(balls)},
              {"target_volume", c.target_volume.str()},
              {"ball_volume", c.ball_volume.str()},
              {"volume_slack", c.volume_slack.str()},
              {"verdict", c.certified ? "CERTIFIED" : "NOT_CERTIFIED"},
              {"reasons", c.reasons}};
}

Json to_json(const EllipsoidDecision& d, bool with_steps) {
  return Json{{"accepted", d.accepted}, {"vector", to_json(d.vector)}, {"trace", to_json(d.trace, with_steps)}};
}

Json to_json(const DecompositionPlan& plan) {
  Json curves = Json::array();
  for (std::size_t i = 0; i < plan.allocation.curves.size(); ++i) {
    const auto& d = plan.allocation.curves[i];
    curves.push_back(Json{{"own", d.own.str()}, {"prev", d.prev.str()}, {"next", d.next.str()}});
  }
  Json pieces = Json::array();
  for (std::size_t k = 0; k < plan.pieces.size(); ++k) {
    const auto& p = plan.pieces[k];
    pieces.push_back(Json{{"label", p.label},
                          {"kind", piece_kind(p.kind)},
                          {"domain", to_string(p.domain)},
                          {"volume", p.volume.str()},
                          {"bound", to_json(plan.stability.piece_bounds[k])}});
  }
  Rational total;
  for (const auto& p : plan.pieces) total += p.volume;
  const auto& s = plan.stability;
  Json j{{"convention", kCrossConvention},
         {"implied_volume", plan.validation.implied_volume.str()},
         {"notes", plan.validation.notes},
         {"allocation", std::move(curves)},
         {"pieces", std::move(pieces)},
         {"total_piece_volume", total.str()},
         {"mode", to_string(plan.mode)},
         {"pieces_bound", to_json(s.pieces_bound)},
         {"limiting_piece", plan.pieces[s.limiting_piece].label}};
  j["delta"] = s.delta ? Json(s.delta->str()) : Json("inf");
  j["sqrt_two_delta"] = s.sqrt_two_delta ? to_json(*s.sqrt_two_delta) : Json(nullptr);
  j["lambda_prime"] = to_json(s.lambda_prime);
  j["delta_limited"] = s.delta_limited;
  return j;
}

Json to_json(const PackingPlan& plan) {
  const auto& part = plan.partition;
  Json assignment = Json::array();
  for (std::size_t k = 0; k < part.volumes.size(); ++k) {
    assignment.push_back(Json{{"volume", part.volumes[k].str()},
                              {"filler", k >= part.input_count},
                              {"piece", part.piece_of[k]}});
  }
  Json j{{"partition",
          Json{{"assignment", std::move(assignment)},
               {"subset_volumes", to_json(part.subset_volumes)},
               {"deviations", to_json(part.deviations)},
               {"max_deviation", part.max_deviation.str()},
               {"within_tolerance", part.within_tolerance}}}};
  if (plan.perturbed) {
    Json curves = Json::array();
    for (const auto& d : plan.perturbed->curves) {
      curves.push_back(Json{{"own", d.own.str()}, {"prev", d.prev.str()}, {"next", d.next.str()}});
    }
    j["perturbed_allocation"] = std::move(curves);
  }
  Json certs = Json::array();
  for (std::size_t k = 0; k < plan.certificates.size(); ++k) {
    Json c = to_json(plan.certificates[k]);
    c["piece"] = plan.perturbed_pieces[k].label;
    certs.push_back(std::move(c));
  }
  j["certificates"] = std::move(certs);
  j["verdict"] = plan.certified ? "CERTIFIED" : "NOT_CERTIFIED";
  j["reasons"] = plan.reasons;
  return j;
}

Polarization polarization_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("curves") || !j["curves"].is_array()) {
    throw InvalidInput("polarization must be an object with a \"curves\" array");
  }
  Polarization p;
  for (const auto& c : j["curves"]) {
    if (!c.is_object() || !c.contains("area") || !c.contains("residue")) {
      throw InvalidInput("each curve needs \"area\" and \"residue\"");
    }
    p.curves.push_back(PolarizationCurve{rational_from_json(c["area"], "area"),
                                         rational_from_json(c["residue"], "residue")});
  }
  if (j.contains("volume")) p.total_volume = rational_from_json(j["volume"], "volume");
  return p;
}

std::vector<Rational> capacities_from_json(const Json& j) {
  const Json* list = &j;
  if (j.is_object()) {
    if (!j.contains("capacities")) throw InvalidInput("balls file needs a \"capacities\" array");
    list = &j["capacities"];
  }
  if (!list->is_array()) throw InvalidInput("ball capacities must be an array");
  std::vector<Rational> out;
  for (const auto& v : *list) {
    if (v.is_string()) {
      const auto more = parse_ball_list(v.get<std::string>());
      out.insert(out.end(), more.begin(), more.end());
    } else {
      out.push_back(rational_from_json(v, "capacity"));
    }
  }
  return out;
}

}  // namespace sympack::cli
