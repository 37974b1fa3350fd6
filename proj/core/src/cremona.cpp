#include "sympack/cremona.hpp"

#include <algorithm>
#include <functional>

#include "sympack/errors.hpp"

namespace sympack {

namespace {

std::vector<Rational> sorted_padded(std::vector<Rational> lambdas) {
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  while (lambdas.size() < 3) lambdas.emplace_back(0);
  return lambdas;
}

// Integer image of a packing vector over a common denominator. Entries are
// kept sorted non-increasing with zeros removed.
struct IntegerVector {
  mpz_class denominator;
  mpz_class mu;
  std::vector<mpz_class> entries;

  mpz_class top(std::size_t i) const { return i < entries.size() ? entries[i] : mpz_class(0); }

  PackingVector to_rational() const {
    PackingVector out{Rational(mu, denominator), {}};
    for (const auto& e : entries) {
      if (e != 0) out.lambdas.emplace_back(e, denominator);
    }
    return out;
  }
};

IntegerVector to_integer(const PackingVector& v) {
  IntegerVector out;
  out.denominator = v.mu.denominator();
  for (const auto& l : v.lambdas) {
    mpz_lcm(out.denominator.get_mpz_t(), out.denominator.get_mpz_t(), l.denominator().get_mpz_t());
  }
  out.mu = v.mu.numerator() * (out.denominator / v.mu.denominator());
  for (const auto& l : v.lambdas) {
    if (!l.is_zero()) out.entries.push_back(l.numerator() * (out.denominator / l.denominator()));
  }
  std::sort(out.entries.begin(), out.entries.end(), std::greater<>());
  return out;
}

}  // namespace

Rational cremona_defect(const PackingVector& v) {
  const auto l = sorted_padded(v.lambdas);
  return v.mu - l[0] - l[1] - l[2];
}

PackingVector cremona_step(const PackingVector& v) {
  PackingVector out{v.mu, sorted_padded(v.lambdas)};
  const Rational d = out.mu - out.lambdas[0] - out.lambdas[1] - out.lambdas[2];
  if (d.sign() >= 0) return v;
  out.mu += d;
  for (std::size_t i = 0; i < 3; ++i) out.lambdas[i] += d;
  return out;
}

std::string describe(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::none: return "none";
    case RejectionReason::negative_entry: return "negative entry";
    case RejectionReason::mu_exhausted: return "mu exhausted";
    case RejectionReason::volume: return "volume";
  }
  return "unknown";
}

std::size_t ReductionTrace::moves() const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [](const ReductionStep& s) { return s.defect.sign() < 0; }));
}

ReductionTrace reduce(const PackingVector& v, const ReductionOptions& options) {
  ReductionTrace trace;
  trace.input = v;
  trace.terminal = v;

  for (const auto& l : v.lambdas) {
    if (l.sign() < 0) {
      trace.reason = RejectionReason::negative_entry;
      return trace;
    }
  }

  Rational sum_sq;
  for (const auto& l : v.lambdas) sum_sq += l * l;
  const Rational mu_sq = v.mu * v.mu;
  trace.volume_check = options.volume == VolumeSemantics::open_balls ? sum_sq <= mu_sq : sum_sq < mu_sq;
  if (!trace.volume_check) {
    trace.reason = RejectionReason::volume;
    return trace;
  }

  IntegerVector w = to_integer(v);
  auto any_positive = [&] { return !w.entries.empty(); };
  if (w.mu <= 0 && any_positive()) {
    trace.reason = RejectionReason::mu_exhausted;
    return trace;
  }

  while (true) {
    const mpz_class d = w.mu - w.top(0) - w.top(1) - w.top(2);
    if (d >= 0) {
      trace.terminal = w.to_rational();
      if (options.record_steps) {
        trace.steps.push_back({trace.terminal, Rational(d, w.denominator), trace.terminal});
      }
      trace.accepted = true;
      return trace;
    }

    PackingVector before;
    if (options.record_steps) before = w.to_rational();

    while (w.entries.size() < 3) w.entries.emplace_back(0);
    w.mu += d;
    bool negative = false;
    for (std::size_t i = 0; i < 3; ++i) {
      w.entries[i] += d;
      if (w.entries[i] < 0) negative = true;
    }

    if (options.record_steps || negative) {
      // Report the post-move vector in move order (not re-sorted).
      PackingVector after{Rational(w.mu, w.denominator), {}};
      for (const auto& e : w.entries) {
        if (e != 0) after.lambdas.emplace_back(e, w.denominator);
      }
      if (options.record_steps) trace.steps.push_back({std::move(before), Rational(d, w.denominator), after});
      trace.terminal = std::move(after);
    }
    if (negative) {
      trace.reason = RejectionReason::negative_entry;
      return trace;
    }

    // The first three entries all dropped by |d|; merge them back into order.
    std::rotate(w.entries.begin(), w.entries.begin() + 3, w.entries.end());
    std::inplace_merge(w.entries.begin(), w.entries.end() - 3, w.entries.end(), std::greater<>());
    while (!w.entries.empty() && w.entries.back() == 0) w.entries.pop_back();

    if (w.mu <= 0 && any_positive()) {
      trace.terminal = w.to_rational();
      trace.reason = RejectionReason::mu_exhausted;
      return trace;
    }
  }
}

bool decide_ball_packing(const Rational& mu, std::span<const Rational> lambdas, VolumeSemantics volume) {
  if (mu.sign() <= 0) throw InvalidInput("mu must be positive");
  for (const auto& l : lambdas) {
    if (l.sign() < 0) throw InvalidInput("ball capacities must be non-negative");
  }
  PackingVector v{mu, std::vector<Rational>(lambdas.begin(), lambdas.end())};
  return reduce(v, {volume, false}).accepted;
}

Rational max_equal_ball(std::size_t n, const Rational& tol) {
  if (n == 0) throw InvalidInput("need at least one ball");
  if (tol.sign() <= 0) throw InvalidInput("tolerance must be positive");
  auto accepts = [n](const Rational& lambda) {
    return decide_ball_packing(Rational(1), std::vector<Rational>(n, lambda));
  };
  // Acceptance is monotone in lambda; B(2) never fits in P^2(1).
  Rational lo(0);
  Rational hi(2);
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / Rational(2);
    if (accepts(mid)) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return lo;
}

}  // namespace sympack
