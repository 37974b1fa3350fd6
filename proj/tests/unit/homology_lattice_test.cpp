#include <cmath>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sympack/errors.hpp"
#include "sympack/homology_lattice.hpp"

using namespace sympack;
using sympack::testing::Gen;
using sympack::testing::R;
using sympack::testing::Rs;

TEST(BlowupForm, Feasibility) {
  EXPECT_EQ(BlowupForm(Rs({"1/2", "1/2"})).kappa_squared(), R("1/2"));
  EXPECT_EQ(BlowupForm(Rs({"1/2"})).volume(), R("3/8"));
  EXPECT_THROW(BlowupForm(Rs({"3/5", "4/5"})), ValidationError);
  EXPECT_THROW(BlowupForm(Rs({"0"})), InvalidInput);
  EXPECT_THROW(BlowupForm(Rs({"1"})), InvalidInput);
  EXPECT_EQ(BlowupForm(std::vector<Rational>{}).size(), 0u);
}

TEST(ClassInvariants, Examples) {
  const BlowupForm two(Rs({"1/2", "1/2"}));
  auto inv = class_invariants(HomologyClass{1, {1, 1}}, two);
  EXPECT_EQ(inv.self_intersection, -1);
  EXPECT_EQ(inv.chern, 1);
  EXPECT_EQ(inv.area, Rational(0));

  inv = class_invariants(HomologyClass{0, {0, 0}}, two);
  EXPECT_EQ(inv.self_intersection, 0);
  EXPECT_EQ(inv.chern, 0);
  EXPECT_EQ(inv.area, Rational(0));

  inv = class_invariants(HomologyClass{1, {1}}, BlowupForm(Rs({"1/2"})));
  EXPECT_EQ(inv.self_intersection, 0);
  EXPECT_EQ(inv.chern, 2);
  EXPECT_EQ(inv.area, R("1/2"));
  EXPECT_THROW(class_invariants(HomologyClass{1, {1}}, two), InvalidInput);
}

TEST(DominanceBound, Examples) {
  EXPECT_EQ(d_omega_bound(BlowupForm(std::vector<Rational>{})).value(), R("1/3"));
  EXPECT_EQ(d_omega_bound(BlowupForm(Rs({"1/2"}))).value(), R("1/8"));
  EXPECT_TRUE(d_omega_bound(BlowupForm(Rs({"1/2"}))).exact());
}

TEST(VolumeFormBound, Examples) {
  EXPECT_EQ(volume_form_bound(R("1/2"), 0).value(), R("1/3"));
  EXPECT_EQ(volume_form_bound(R("3/8"), 1).value(), R("1/8"));
  const auto tiny = volume_form_bound(R("1/1000000"), 3);
  EXPECT_GT(tiny.value(), Rational(0));
  EXPECT_LT(tiny.value(), R("1/1000000"));
  EXPECT_THROW(volume_form_bound(R("0"), 1), InvalidInput);
  EXPECT_THROW(volume_form_bound(R("3/5"), 1), InvalidInput);
}

TEST(VolumeFormBound, ConsistentWithLambdaForm) {
  Gen gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> l;
    const long p = gen.integer(1, 5);
    mpq_class sq = 0;
    for (long i = 0; i < p; ++i) {
      const auto x = gen.rational(0, mpq_class(2, 5), 25);
      sq += x * x;
      l.emplace_back(x);
    }
    if (sq >= 1) continue;
    const BlowupForm form(l);
    EXPECT_EQ(d_omega_bound(form).value(), volume_form_bound(form.volume(), form.size()).value());
  }
}

TEST(LatticeSearch, MatchesBruteForce) {
  Gen gen(17);
  for (int trial = 0; trial < 40; ++trial) {
    const long p = gen.integer(0, 3);
    std::vector<mpq_class> raw;
    mpq_class sq = 0;
    for (long i = 0; i < p; ++i) {
      raw.push_back(gen.rational(0, mpq_class(1, 2), 12));
      sq += raw.back() * raw.back();
    }
    if (sq >= mpq_class(9, 10)) continue;
    const long k_max = gen.integer(1, 5);
    const auto brute = sympack::testing::brute_force_minimum(raw, k_max);
    const auto got = d_omega_search(BlowupForm(sympack::testing::from_mpq(raw)), k_max);
    ASSERT_TRUE(brute.found);
    EXPECT_EQ(got.value.raw(), brute.value);
    EXPECT_EQ(got.witness.k, brute.witness.k);
    EXPECT_EQ(got.witness.m, brute.witness.m);
    EXPECT_EQ(got.proof_step_failures, 0u);
  }
}

TEST(LatticeSearch, Examples) {
  const auto r = d_omega_search(BlowupForm(Rs({"1/2", "1/2"})), 8);
  EXPECT_EQ(r.value, R("3/16"));
  EXPECT_EQ(r.witness, (HomologyClass{5, {4, 3}}));
  EXPECT_GE(r.value, d_omega_bound(BlowupForm(Rs({"1/2", "1/2"}))).value());

  const auto empty = d_omega_search(BlowupForm(std::vector<Rational>{}), 3);
  EXPECT_EQ(empty.value, R("1/3"));
  EXPECT_THROW(d_omega_search(BlowupForm(Rs({"1/2"})), 0), InvalidInput);
}

TEST(LatticeSearch, NonIncreasingInDepth) {
  const BlowupForm form(Rs({"2/5", "1/3", "1/7"}));
  Rational previous = d_omega_search(form, 1).value;
  for (long k = 2; k <= 7; ++k) {
    const auto v = d_omega_search(form, k).value;
    EXPECT_LE(v, previous);
    previous = v;
  }
}

TEST(LatticeSearch, ThreadCountDoesNotChangeResult) {
  const BlowupForm form(Rs({"3/10", "3/10", "1/5", "1/6"}));
  const auto one = d_omega_search(form, 6, 1);
  const auto many = d_omega_search(form, 6, 4);
  EXPECT_EQ(one.value, many.value);
  EXPECT_EQ(one.witness, many.witness);
  EXPECT_EQ(one.classes_checked, many.classes_checked);
}

TEST(LatticeSearch, WideDenominatorsUseBigIntegers) {
  // Denominators beyond the 64-bit fast path.
  const BlowupForm form({Rational(mpz_class("123456789012345678901"), mpz_class("400000000000000000000")),
                         Rational(mpz_class("1"), mpz_class("3"))});
  const auto r = d_omega_search(form, 4);
  EXPECT_GE(r.value, d_omega_bound(form).value());
  EXPECT_EQ(r.proof_step_failures, 0u);
  std::vector<mpq_class> raw;
  for (const auto& l : form.lambdas()) raw.push_back(l.raw());
  EXPECT_EQ(r.value.raw(), sympack::testing::brute_force_minimum(raw, 4).value);
}
