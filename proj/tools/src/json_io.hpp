#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sympack/cremona.hpp"
#include "sympack/decomposition_planner.hpp"
#include "sympack/homology_lattice.hpp"
#include "sympack/lower_bound.hpp"
#include "sympack/rational.hpp"
#include "sympack/stability_certifier.hpp"
#include "sympack/weight_expansion.hpp"

namespace sympack::cli {

using Json = nlohmann::ordered_json;

/// "1/2, 13/100x100, 3/5" -> rationals; `cap x n` repeats cap n times.
std::vector<Rational> parse_ball_list(std::string_view text);
Rational rational_from_json(const Json& j, std::string_view field);

Json to_json(const Rational& r);
Json to_json(std::span<const Rational> values);
Json to_json(const LowerBound& b);
Json to_json(const PackingVector& v);
Json to_json(const ReductionTrace& t, bool with_steps);
Json to_json(const WeightSequence& w);
Json to_json(const HomologyClass& b);
Json to_json(const Certificate& c);
Json to_json(const EllipsoidDecision& d, bool with_steps);
Json to_json(const DecompositionPlan& plan);
Json to_json(const PackingPlan& plan);

Polarization polarization_from_json(const Json& j);
std::vector<Rational> capacities_from_json(const Json& j);

}  // namespace sympack::cli
