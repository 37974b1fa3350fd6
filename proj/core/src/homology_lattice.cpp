#include "sympack/homology_lattice.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "sympack/errors.hpp"

namespace sympack {

BlowupForm::BlowupForm(std::vector<Rational> lambdas) : lambdas_(std::move(lambdas)) {
  for (const auto& l : lambdas_) {
    if (l.sign() <= 0 || l >= Rational(1)) {
      throw InvalidInput("blow-up sizes must lie in (0, 1), got " + l.str());
    }
    kappa_sq_ += l * l;
  }
  if (kappa_sq_ >= Rational(1)) {
    throw ValidationError("infeasible blow-up form",
                          {"sum of lambda_i^2 = " + kappa_sq_.str() + " is not < 1"});
  }
}

Rational BlowupForm::volume() const { return (Rational(1) - kappa_sq_) / Rational(2); }

ClassInvariants class_invariants(const HomologyClass& b, const BlowupForm& form) {
  if (b.m.size() != form.size()) {
    throw InvalidInput("class has " + std::to_string(b.m.size()) + " exceptional coefficients, form has " +
                       std::to_string(form.size()));
  }
  ClassInvariants out;
  long sum_sq = 0;
  long sum = 0;
  Rational pairing;
  for (std::size_t i = 0; i < b.m.size(); ++i) {
    sum_sq += b.m[i] * b.m[i];
    sum += b.m[i];
    pairing += Rational(b.m[i]) * form.lambdas()[i];
  }
  out.self_intersection = b.k * b.k - sum_sq;
  out.chern = 3 * b.k - sum;
  out.area = Rational(b.k) - pairing;
  return out;
}

LowerBound d_omega_bound(const BlowupForm& form, unsigned precision_bits) {
  return dominance_bound(Rational(1), form.kappa_squared(), form.size(), precision_bits);
}

LowerBound volume_form_bound(const Rational& volume, std::size_t p, unsigned precision_bits) {
  if (volume.sign() <= 0 || volume > Rational(1, 2)) {
    throw InvalidInput("volume must lie in (0, 1/2], got " + volume.str());
  }
  return dominance_bound(Rational(1), Rational(1) - Rational(2) * volume, p, precision_bits);
}

namespace {

long isqrt(long v) {
  if (v <= 0) return 0;
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Lambdas rescaled to integers over a common denominator D: lambda_i = N_i / D.
template <class Int>
struct ScaledForm {
  Int denominator;
  std::vector<Int> numerators;
  Int numerator_sq_sum;
};

template <class Int>
struct KResult {
  bool found = false;
  Int best_omega{};  // Omega * D
  long best_chern = 1;
  std::vector<long> best_m;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
};

template <class Int>
class FixedKSearch {
 public:
  FixedKSearch(const ScaledForm<Int>& form, long k)
      : form_(form), k_(k), kD_(Int(k) * form.denominator), k2_sum_(Int(k * k) * form.numerator_sq_sum),
        m_(form.numerators.size(), 0) {}

  KResult<Int> run() {
    recurse(0, k_ * k_, 0, Int(0));
    return std::move(result_);
  }

 private:
  void recurse(std::size_t i, long remaining, long sum_m, const Int& pairing) {
    if (i == m_.size()) {
      leaf(remaining, sum_m, pairing);
      return;
    }
    const long lim = isqrt(remaining);
    for (long mi = lim; mi >= -lim; --mi) {
      m_[i] = mi;
      recurse(i + 1, remaining - mi * mi, sum_m + mi, pairing + Int(mi) * form_.numerators[i]);
    }
  }

  // remaining = B.B, pairing = D * sum m_i lambda_i.
  void leaf(long remaining, long sum_m, const Int& pairing) {
    const Int omega = kD_ - pairing;
    if (!(omega > 0)) return;
    ++result_.checked;
    // Omega(B) > k(1 - kappa)  <=>  sum m_i lambda_i < k kappa.
    if (pairing > 0) {
      const Int lhs = pairing * pairing;
      const bool ok = remaining > 0 ? (lhs < k2_sum_) : !(k2_sum_ < lhs);
      if (!ok) ++result_.failures;
    }
    const long chern = 3 * k_ - sum_m;
    if (chern < 2) return;
    if (!result_.found || omega * Int(result_.best_chern) < result_.best_omega * Int(chern)) {
      result_.found = true;
      result_.best_omega = omega;
      result_.best_chern = chern;
      result_.best_m = m_;
    }
  }

  const ScaledForm<Int>& form_;
  long k_;
  Int kD_;
  Int k2_sum_;
  std::vector<long> m_;
  KResult<Int> result_;
};

template <class Int>
LatticeSearchResult run_search(const ScaledForm<Int>& form, long k_max, unsigned threads) {
  std::vector<KResult<Int>> per_k(static_cast<std::size_t>(k_max) + 1);
  std::atomic<long> next{k_max};
  auto worker = [&] {
    for (long k = next.fetch_sub(1); k >= 1; k = next.fetch_sub(1)) {
      per_k[static_cast<std::size_t>(k)] = FixedKSearch<Int>(form, k).run();
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(k_max)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  LatticeSearchResult out;
  out.k_max = k_max;
  std::optional<long> best_k;
  for (long k = 1; k <= k_max; ++k) {
    const auto& r = per_k[static_cast<std::size_t>(k)];
    out.classes_checked += r.checked;
    out.proof_step_failures += r.failures;
    if (!r.found) continue;
    if (!best_k) {
      best_k = k;
      continue;
    }
    const auto& b = per_k[static_cast<std::size_t>(*best_k)];
    if (r.best_omega * Int(b.best_chern) < b.best_omega * Int(r.best_chern)) best_k = k;
  }
  // k = 1, m = 0 always qualifies (Omega = 1, c_1 = 3), so a minimum exists.
  const auto& b = per_k[static_cast<std::size_t>(*best_k)];
  mpz_class omega;
  if constexpr (std::is_same_v<Int, mpz_class>) {
    omega = b.best_omega;
  } else {
    omega = mpz_class(static_cast<long>(b.best_omega));
  }
  mpz_class den;
  if constexpr (std::is_same_v<Int, mpz_class>) {
    den = form.denominator * b.best_chern;
  } else {
    den = mpz_class(static_cast<long>(form.denominator)) * b.best_chern;
  }
  out.value = Rational(omega, den);
  out.witness = HomologyClass{*best_k, b.best_m};
  return out;
}

}  // namespace

LatticeSearchResult d_omega_search(const BlowupForm& form, long k_max, unsigned threads) {
  if (k_max < 1) throw InvalidInput("k_max must be >= 1");
  if (k_max > 1'000'000) throw InvalidInput("k_max too large");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  mpz_class den = 1;
  for (const auto& l : form.lambdas()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l.denominator().get_mpz_t());
  std::vector<mpz_class> nums;
  mpz_class sq_sum = 0;
  for (const auto& l : form.lambdas()) {
    nums.push_back(l.numerator() * (den / l.denominator()));
    sq_sum += nums.back() * nums.back();
  }

  // 128-bit fast path when every product stays below 2^120.
  const std::size_t p = form.size();
  const auto bits = [](const mpz_class& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); };
  const std::size_t k_bits = bits(mpz_class(k_max)) + 1;
  const std::size_t p_bits = bits(mpz_class(static_cast<unsigned long>(p + 1)));
  if (bits(den) + k_bits + p_bits <= 58) {
    ScaledForm<__int128> fast;
    fast.denominator = den.get_si();
    fast.numerator_sq_sum = 0;
    for (const auto& n : nums) {
      fast.numerators.push_back(n.get_si());
      fast.numerator_sq_sum += static_cast<__int128>(n.get_si()) * n.get_si();
    }
    return run_search(fast, k_max, threads);
  }
  ScaledForm<mpz_class> slow{den, nums, sq_sum};
  return run_search(slow, k_max, threads);
}

}  // namespace sympack
