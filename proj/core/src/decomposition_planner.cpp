#include "sympack/decomposition_planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "sympack/errors.hpp"

namespace sympack {

namespace {

std::size_t next_index(std::size_t i, std::size_t l) { return (i + 1) % l; }
std::size_t prev_index(std::size_t i, std::size_t l) { return (i + l - 1) % l; }

std::string curve_name(std::size_t i) { return "curve " + std::to_string(i + 1); }

std::string cross_label(std::size_t i, std::size_t l) {
  return "T" + std::to_string(i + 1) + "," + std::to_string(next_index(i, l) + 1);
}

void require_valid(const Polarization& p) {
  const auto report = validate_polarization(p);
  if (!report.ok()) throw ValidationError("invalid polarization", report.violations);
}

std::vector<Rational> piece_volumes(const std::vector<Piece>& pieces) {
  std::vector<Rational> out;
  out.reserve(pieces.size());
  for (const auto& piece : pieces) out.push_back(piece.volume);
  return out;
}

}  // namespace

Rational implied_volume(const Polarization& p) {
  Rational sum;
  for (const auto& c : p.curves) sum += c.area * c.residue;
  return sum / Rational(2);
}

PolarizationReport validate_polarization(const Polarization& p) {
  PolarizationReport report;
  report.implied_volume = implied_volume(p);
  if (p.curves.empty()) {
    report.violations.push_back("polarization has no curves");
    return report;
  }
  bool positive = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.curves[i].area.sign() <= 0) {
      report.violations.push_back(curve_name(i) + ": area must be positive");
      positive = false;
    }
    if (p.curves[i].residue.sign() <= 0) {
      report.violations.push_back(curve_name(i) + ": residue must be positive");
      positive = false;
    }
  }
  if (positive) {
    Rational max_residue;
    for (const auto& c : p.curves) max_residue = std::max(max_residue, c.residue);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.curves[i].area < Rational(10) * max_residue) {
        report.violations.push_back(curve_name(i) + ": area " + p.curves[i].area.str() +
                                    " is below 10 * max residue " + max_residue.str());
      }
    }
  }
  if (p.total_volume && *p.total_volume != report.implied_volume) {
    report.violations.push_back("volume " + p.total_volume->str() + " differs from 1/2 sum alpha_i area_i = " +
                                report.implied_volume.str());
  }
  for (std::size_t i = 0; i < p.size() && p.size() > 1; ++i) {
    const auto j = next_index(i, p.size());
    if (p.curves[i].residue != p.curves[j].residue) {
      report.notes.push_back("cross discs at x_" + std::to_string(i + 1) +
                             " use the own-residue interval; the neighbour-residue reading differs here");
      break;
    }
  }
  return report;
}

FlowState liouville_flow(double fixed_r1, double fixed_r2, const FlowState& state, double t) {
  const double e = std::exp(-t);
  return FlowState{fixed_r1 + (state.r1 - fixed_r1) * e, state.theta1, fixed_r2 + (state.r2 - fixed_r2) * e,
                   state.theta2};
}

Ellipsoid basin_of_disc(const Rational& a, const Rational& alpha) {
  if (a.sign() <= 0 || alpha.sign() <= 0) throw InvalidInput("disc area and residue must be positive");
  return Ellipsoid{a, alpha};
}

PseudoBall basin_of_cross(const Rational& a_i, const Rational& alpha_i, const Rational& a_j,
                          const Rational& alpha_j) {
  PseudoBall t{a_j, a_i, alpha_j, alpha_i};
  const auto violations = validate_pseudo_ball(t.a, t.b, t.alpha, t.beta);
  if (!violations.empty()) {
    std::vector<std::string> text;
    for (auto v : violations) text.push_back(describe(v));
    throw ValidationError("cross discs outside ]alpha_i, alpha_i + alpha_j[", text);
  }
  return t;
}

BasinModel disc_basin_model(const Rational& a, const Rational& alpha) {
  const auto e = basin_of_disc(a, alpha);
  return BasinModel{0.0, e.b.to_double(), e.a.to_double(), 0.0};
}

BasinModel cross_basin_model(const Rational& a_i, const Rational& alpha_i, const Rational& a_j,
                             const Rational& alpha_j) {
  const auto t = basin_of_cross(a_i, alpha_i, a_j, alpha_j);
  return BasinModel{t.alpha.to_double(), t.beta.to_double(), t.b.to_double(), t.a.to_double()};
}

bool in_basin_by_flow(const BasinModel& model, double r1, double r2, double tolerance) {
  if (r1 < 0 || r2 < 0) return false;
  const double d1 = r1 - model.fixed_r1;
  const double d2 = r2 - model.fixed_r2;
  const double distance = std::hypot(d1, d2);
  if (distance == 0) return true;

  FlowState s{r1, 0.0, r2, 0.0};
  double elapsed = 0;
  while (std::hypot(s.r1 - model.fixed_r1, s.r2 - model.fixed_r2) >= tolerance) {
    s = liouville_flow(model.fixed_r1, model.fixed_r2, s, 1.0);
    elapsed += 1.0;
  }
  // The displacement shrinks by exactly e^{-elapsed}; undo it to get the direction.
  const double scale = std::exp(elapsed);
  double u1 = (s.r1 - model.fixed_r1) * scale;
  double u2 = (s.r2 - model.fixed_r2) * scale;
  const double norm = std::hypot(u1, u2);
  if (norm == 0) return true;
  u1 /= norm;
  u2 /= norm;

  // Backward ray F + lambda u leaves the quadrant through an axis.
  double exit = HUGE_VAL;
  bool through_r1_axis = false;
  if (u2 < 0) {
    exit = model.fixed_r2 / -u2;
    through_r1_axis = true;
  }
  if (u1 < 0) {
    const double lambda = model.fixed_r1 / -u1;
    if (lambda < exit) {
      exit = lambda;
      through_r1_axis = false;
    }
  }
  if (!std::isfinite(exit) || distance > exit) return false;
  if (through_r1_axis) {
    const double x = model.fixed_r1 + exit * u1;
    return x <= model.axis_r1;
  }
  const double y = model.fixed_r2 + exit * u2;
  return y <= model.axis_r2;
}

DiscAllocation plan_discs(const Polarization& p) {
  require_valid(p);
  const auto l = p.size();
  DiscAllocation alloc;
  alloc.curves.resize(l);
  if (l == 1) {
    alloc.curves[0] = CurveDiscs{p.curves[0].area, Rational(0), Rational(0)};
    return alloc;
  }
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < l; ++i) {
    const auto& alpha = p.curves[i].residue;
    auto& d = alloc.curves[i];
    d.prev = alpha + p.curves[prev_index(i, l)].residue / Rational(2);
    d.next = alpha + p.curves[next_index(i, l)].residue / Rational(2);
    d.own = p.curves[i].area - d.prev - d.next;
    if (d.own.sign() <= 0) problems.push_back(curve_name(i) + ": no area left for the own disc");
  }
  if (!problems.empty()) throw ValidationError("disc allocation failed", problems);
  return alloc;
}

std::vector<std::string> allocation_violations(const Polarization& p, const DiscAllocation& alloc) {
  std::vector<std::string> out;
  const auto l = p.size();
  if (alloc.curves.size() != l) {
    out.push_back("allocation has " + std::to_string(alloc.curves.size()) + " curves, polarization has " +
                  std::to_string(l));
    return out;
  }
  for (std::size_t i = 0; i < l; ++i) {
    const auto& d = alloc.curves[i];
    const auto& alpha = p.curves[i].residue;
    if (d.own + d.prev + d.next != p.curves[i].area) {
      out.push_back(curve_name(i) + ": disc areas do not sum to the curve area");
    }
    if (d.own.sign() <= 0) out.push_back(curve_name(i) + ": own disc must have positive area");
    if (l == 1) {
      if (d.prev.sign() != 0 || d.next.sign() != 0) out.push_back(curve_name(i) + ": no crossings expected");
      continue;
    }
    const auto check = [&](const Rational& v, const Rational& neighbour, const char* which) {
      if (!(v > alpha && v < alpha + neighbour)) {
        out.push_back(curve_name(i) + ": " + which + " cross disc " + v.str() + " outside ]" + alpha.str() + ", " +
                      (alpha + neighbour).str() + "[");
      }
    };
    check(d.prev, p.curves[prev_index(i, l)].residue, "previous");
    check(d.next, p.curves[next_index(i, l)].residue, "next");
  }
  return out;
}

std::vector<Piece> decomposition_pieces(const Polarization& p, const DiscAllocation& alloc) {
  const auto violations = allocation_violations(p, alloc);
  if (!violations.empty()) throw ValidationError("invalid disc allocation", violations);
  const auto l = p.size();
  std::vector<Piece> out;
  for (std::size_t i = 0; i < l; ++i) {
    const auto& alpha = p.curves[i].residue;
    const auto e = basin_of_disc(alloc.curves[i].own, alpha);
    out.push_back(Piece{PieceKind::ellipsoid, i, e, volume(ToricDomain{e}), "E" + std::to_string(i + 1)});
    if (l == 1) break;
    const auto j = next_index(i, l);
    const auto t = basin_of_cross(alloc.curves[i].next, alpha, alloc.curves[j].prev, p.curves[j].residue);
    out.push_back(Piece{PieceKind::pseudo_ball, i, t, volume(ToricDomain{t}), cross_label(i, l)});
  }
  return out;
}

DiscAllocation perturb_allocation(const Polarization& p, const DiscAllocation& alloc,
                                  std::span<const Rational> targets) {
  const auto pieces = decomposition_pieces(p, alloc);
  if (targets.size() != pieces.size()) {
    throw InvalidInput("expected " + std::to_string(pieces.size()) + " target volumes, got " +
                       std::to_string(targets.size()));
  }
  Rational current;
  Rational wanted;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    current += pieces[k].volume;
    wanted += targets[k];
  }
  if (current != wanted) {
    throw ValidationError("closure violated", {"target volumes sum to " + wanted.str() + ", pieces sum to " +
                                                   current.str()});
  }

  const auto l = p.size();
  DiscAllocation out = alloc;
  const Rational two(2);
  for (std::size_t i = 0; i < l; ++i) {
    const auto& curve = p.curves[i];
    auto& d = out.curves[i];
    d.own = two * targets[l == 1 ? 0 : 2 * i] / curve.residue;
    if (l == 1) break;
    d.next = curve.area - d.prev - d.own;
    const auto j = next_index(i, l);
    const Rational partner = (two * targets[2 * i + 1] - d.next * curve.residue) / p.curves[j].residue;
    if (j == 0) {
      if (partner != out.curves[0].prev) {
        throw ValidationError("closure violated", {"cascade does not return to the first cross disc"});
      }
    } else {
      out.curves[j].prev = partner;
    }
  }
  const auto violations = allocation_violations(p, out);
  if (!violations.empty()) throw ValidationError("retargeted discs leave their intervals", violations);
  return out;
}

std::optional<Rational> retarget_slack(const Polarization& p, const DiscAllocation& alloc) {
  const auto violations = allocation_violations(p, alloc);
  if (!violations.empty()) throw ValidationError("invalid disc allocation", violations);
  const auto l = p.size();
  if (l == 1) return std::nullopt;

  // Piece k (1-based, m = 2l pieces) moves by e_k with sum e_k = 0, so the
  // partial sum through position k is bounded by min(k, m - k) * max|e|.
  const long m = static_cast<long>(2 * l);
  const auto reach = [m](long k) { return Rational(std::min(k, m - k)); };
  const Rational two(2);
  std::optional<Rational> best;
  const auto consider = [&best](const Rational& v) {
    if (!best || v < *best) best = v;
  };
  for (std::size_t i = 0; i < l; ++i) {
    const auto& alpha = p.curves[i].residue;
    const auto& d = alloc.curves[i];
    const auto j = next_index(i, l);
    const auto& alpha_j = p.curves[j].residue;
    const long pos_e = static_cast<long>(2 * i + 1);
    const long pos_t = pos_e + 1;

    consider(d.own * alpha / two);

    const Rational next_slack = std::min(d.next - alpha, alpha + alpha_j - d.next);
    consider(next_slack * alpha / (two * reach(pos_e)));

    if (pos_t < m) {
      const auto& partner = alloc.curves[j].prev;
      const Rational prev_slack = std::min(partner - alpha_j, alpha_j + alpha - partner);
      consider(prev_slack * alpha_j / (two * reach(pos_t)));
    }
  }
  return best;
}

PartitionResult partition_balls(std::span<const Rational> ball_volumes, std::span<const Rational> piece_volumes,
                                const std::optional<Rational>& delta, bool pad) {
  if (piece_volumes.empty()) throw InvalidInput("no pieces to partition into");
  if (delta && delta->sign() <= 0) throw InvalidInput("tolerance must be positive");
  for (const auto& v : ball_volumes) {
    if (v.sign() <= 0) throw InvalidInput("ball volumes must be positive");
  }
  for (const auto& v : piece_volumes) {
    if (v.sign() <= 0) throw InvalidInput("piece volumes must be positive");
  }

  const Rational total_pieces = std::accumulate(piece_volumes.begin(), piece_volumes.end(), Rational(0));
  const Rational total_balls = std::accumulate(ball_volumes.begin(), ball_volumes.end(), Rational(0));
  std::vector<std::string> problems;
  if (total_balls > total_pieces) {
    problems.push_back("balls need volume " + total_balls.str() + ", pieces have " + total_pieces.str());
  }
  const Rational largest_piece = *std::max_element(piece_volumes.begin(), piece_volumes.end());
  const Rational cap = delta ? largest_piece + *delta : largest_piece;
  for (std::size_t k = 0; k < ball_volumes.size(); ++k) {
    if (ball_volumes[k] > cap) {
      problems.push_back("ball " + std::to_string(k + 1) + " of volume " + ball_volumes[k].str() +
                         " exceeds every piece");
    }
  }
  if (!problems.empty()) throw ValidationError("partition infeasible", problems);

  PartitionResult r;
  r.volumes.assign(ball_volumes.begin(), ball_volumes.end());
  r.input_count = ball_volumes.size();
  const Rational rest = total_pieces - total_balls;
  if (pad && rest.sign() > 0) {
    long n = 1;
    if (delta) n = (rest / *delta).floor().get_si() + 1;
    for (long k = 0; k < n; ++k) r.volumes.push_back(rest / Rational(n));
  }

  std::vector<std::size_t> order(r.volumes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return r.volumes[x] > r.volumes[y]; });

  r.piece_of.assign(r.volumes.size(), 0);
  r.subset_volumes.assign(piece_volumes.size(), Rational(0));
  // Max-heap on deficit; ties go to the lowest piece index.
  using Entry = std::pair<Rational, std::size_t>;
  auto less_deficient = [](const Entry& x, const Entry& y) {
    return x.first < y.first || (x.first == y.first && x.second > y.second);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(less_deficient)> heap(less_deficient);
  for (std::size_t j = 0; j < piece_volumes.size(); ++j) heap.emplace(piece_volumes[j], j);
  for (auto k : order) {
    auto [deficit, target] = heap.top();
    heap.pop();
    r.piece_of[k] = target;
    r.subset_volumes[target] += r.volumes[k];
    heap.emplace(deficit - r.volumes[k], target);
  }
  for (std::size_t j = 0; j < piece_volumes.size(); ++j) {
    r.deviations.push_back(r.subset_volumes[j] - piece_volumes[j]);
    r.max_deviation = std::max(r.max_deviation, abs(r.deviations.back()));
  }
  r.within_tolerance = !delta || r.max_deviation < *delta;
  return r;
}

Target piece_target(const Piece& piece) {
  if (const auto* e = std::get_if<Ellipsoid>(&piece.domain)) return *e;
  if (const auto* t = std::get_if<PseudoBall>(&piece.domain)) return *t;
  throw InvalidInput("piece is neither an ellipsoid nor a pseudo-ball");
}

StabilityReport stability_constant(const Polarization& p, const DiscAllocation& alloc, BoundMode mode,
                                   unsigned precision_bits) {
  const auto pieces = decomposition_pieces(p, alloc);
  StabilityReport r;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    r.piece_bounds.push_back(lambda_bound(piece_target(pieces[k]), mode, precision_bits));
    if (k == 0 || r.piece_bounds[k].value() < r.piece_bounds[r.limiting_piece].value()) r.limiting_piece = k;
  }
  r.pieces_bound = r.piece_bounds[r.limiting_piece];
  r.lambda_prime = r.pieces_bound;
  r.delta = retarget_slack(p, alloc);
  if (r.delta) {
    r.sqrt_two_delta = sqrt_lower(Rational(2) * *r.delta, precision_bits);
    if (r.sqrt_two_delta->value() < r.pieces_bound.value()) {
      r.lambda_prime = *r.sqrt_two_delta;
      r.delta_limited = true;
    }
  }
  return r;
}

DecompositionPlan decompose(const Polarization& p, BoundMode mode, unsigned precision_bits) {
  DecompositionPlan plan;
  plan.polarization = p;
  plan.validation = validate_polarization(p);
  if (!plan.validation.ok()) throw ValidationError("invalid polarization", plan.validation.violations);
  plan.mode = mode;
  plan.allocation = plan_discs(p);
  plan.pieces = decomposition_pieces(p, plan.allocation);
  plan.stability = stability_constant(p, plan.allocation, mode, precision_bits);
  return plan;
}

PackingPlan plan_packing(const DecompositionPlan& plan, std::span<const Rational> capacities,
                         unsigned precision_bits) {
  std::vector<Rational> volumes;
  for (const auto& c : capacities) {
    if (c.sign() <= 0) throw InvalidInput("ball capacities must be positive");
    volumes.push_back(c * c / Rational(2));
  }
  PackingPlan out;
  const auto pieces = piece_volumes(plan.pieces);
  out.partition = partition_balls(volumes, pieces, plan.stability.delta, true);

  for (std::size_t k = 0; k < capacities.size(); ++k) {
    if (!(capacities[k] < plan.stability.lambda_prime.value())) {
      out.reasons.push_back("ball " + std::to_string(k + 1) + " is not below the stability constant");
    }
  }

  if (!out.partition.within_tolerance) {
    out.reasons.push_back("partition deviation " + out.partition.max_deviation.str() + " is not below delta");
  }

  std::vector<Rational> targets = out.partition.subset_volumes;
  try {
    out.perturbed = perturb_allocation(plan.polarization, plan.allocation, targets);
  } catch (const ValidationError& e) {
    out.reasons.push_back(std::string(e.what()));
    for (const auto& v : e.violations()) out.reasons.push_back(v);
    return out;
  }
  out.perturbed_pieces = decomposition_pieces(plan.polarization, *out.perturbed);

  std::vector<std::vector<Rational>> subsets(out.perturbed_pieces.size());
  for (std::size_t k = 0; k < out.partition.input_count; ++k) {
    subsets[out.partition.piece_of[k]].push_back(capacities[k]);
  }
  bool all = true;
  for (std::size_t j = 0; j < out.perturbed_pieces.size(); ++j) {
    out.certificates.push_back(
        certify_packing(piece_target(out.perturbed_pieces[j]), subsets[j], plan.mode, precision_bits));
    if (!out.certificates.back().certified) {
      all = false;
      out.reasons.push_back(out.perturbed_pieces[j].label + " not certified");
    }
  }
  out.certified = all && out.reasons.empty();
  return out;
}

}  // namespace sympack
