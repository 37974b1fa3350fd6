#include <algorithm>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sympack/cremona.hpp"
#include "sympack/errors.hpp"

using namespace sympack;
using sympack::testing::Gen;
using sympack::testing::R;
using sympack::testing::Rs;

namespace {

PackingVector pv(const char* mu, std::initializer_list<std::string_view> l) {
  return PackingVector{R(mu), Rs(l)};
}

std::vector<Rational> sorted_desc(std::vector<Rational> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

TEST(CremonaStep, Examples) {
  const auto four = pv("1", {"1/2", "1/2", "1/2", "1/2"});
  EXPECT_EQ(cremona_defect(four), R("-1/2"));
  const auto next = cremona_step(four);
  EXPECT_EQ(next.mu, R("1/2"));
  EXPECT_EQ(sorted_desc(next.lambdas), Rs({"1/2", "0", "0", "0"}));

  const auto zeros = pv("1", {"0", "0", "0"});
  EXPECT_EQ(cremona_step(zeros), zeros);

  const auto five = cremona_step(pv("1", {"2/5", "2/5", "2/5", "2/5", "2/5"}));
  EXPECT_EQ(five.mu, R("4/5"));
  EXPECT_EQ(sorted_desc(five.lambdas), Rs({"2/5", "2/5", "1/5", "1/5", "1/5"}));
}

TEST(CremonaStep, SortsAndPads) {
  const auto v = cremona_step(pv("1", {"1/5", "3/4"}));
  EXPECT_EQ(v, pv("1", {"1/5", "3/4"}));  // defect 1/20 >= 0
  const auto w = cremona_step(pv("1", {"1/5", "1/2", "3/5", "1/2"}));
  EXPECT_EQ(w.mu, R("2/5"));
  EXPECT_EQ(sorted_desc(w.lambdas), Rs({"1/5", "0", "-1/10", "-1/10"}));
}

TEST(Reduce, FiveEqualBalls) {
  const auto t = reduce(pv("1", {"2/5", "2/5", "2/5", "2/5", "2/5"}));
  EXPECT_TRUE(t.accepted);
  EXPECT_TRUE(t.volume_check);
  EXPECT_EQ(t.moves(), 2u);
  ASSERT_EQ(t.steps.size(), 3u);
  EXPECT_EQ(t.steps.back().defect, Rational(0));
  EXPECT_EQ(t.terminal, pv("3/5", {"1/5", "1/5", "1/5", "1/5"}));
  for (std::size_t i = 0; i + 1 < t.steps.size(); ++i) EXPECT_LT(t.steps[i].after.mu, t.steps[i].before.mu);
}

TEST(Reduce, Rejections) {
  const auto a = reduce(pv("1", {"41/100", "41/100", "41/100", "41/100", "41/100"}));
  EXPECT_FALSE(a.accepted);
  EXPECT_EQ(a.reason, RejectionReason::negative_entry);
  EXPECT_EQ(a.moves(), 2u);

  const auto b = reduce(pv("1", {"3/5", "3/5"}));
  EXPECT_FALSE(b.accepted);
  EXPECT_EQ(b.reason, RejectionReason::negative_entry);
  EXPECT_EQ(b.moves(), 1u);
  EXPECT_EQ(std::count(b.terminal.lambdas.begin(), b.terminal.lambdas.end(), R("-1/5")), 1);

  const auto c = reduce(pv("1", {"1", "1/10"}));
  EXPECT_FALSE(c.accepted);
  EXPECT_EQ(c.reason, RejectionReason::volume);
  EXPECT_EQ(describe(RejectionReason::negative_entry), "negative entry");
}

TEST(Reduce, ClosedBallsNeedStrictVolume) {
  ReductionOptions closed;
  closed.volume = VolumeSemantics::closed_balls;
  EXPECT_TRUE(reduce(pv("1", {"1"})).accepted);
  EXPECT_FALSE(reduce(pv("1", {"1"}), closed).accepted);
  EXPECT_TRUE(reduce(pv("1", {"9/10"}), closed).accepted);
}

TEST(Decide, Examples) {
  EXPECT_TRUE(decide_ball_packing(R("1"), Rs({"1/2", "1/2", "1/2", "1/2"})));
  EXPECT_TRUE(decide_ball_packing(R("1"), Rs({"1"})));
  EXPECT_FALSE(decide_ball_packing(R("1"), Rs({"401/1000", "2/5", "2/5", "2/5", "2/5"})));
  EXPECT_TRUE(decide_ball_packing(R("1"), std::vector<Rational>{}));
  EXPECT_THROW(decide_ball_packing(R("0"), Rs({"1/2"})), InvalidInput);
  EXPECT_THROW(decide_ball_packing(R("1"), Rs({"-1/2"})), InvalidInput);
}

TEST(Decide, AgreesWithNaiveReduction) {
  Gen gen(99);
  int accepted = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const long n = gen.integer(1, 9);
    std::vector<mpq_class> l;
    for (long i = 0; i < n; ++i) l.push_back(gen.rational(0, mpq_class(3, 5), 30));
    const bool expect = sympack::testing::naive_cremona_accepts(1, l);
    EXPECT_EQ(decide_ball_packing(Rational(1), sympack::testing::from_mpq(l)), expect);
    accepted += expect;
  }
  EXPECT_GT(accepted, 100);
  EXPECT_LT(accepted, 1900);
}

TEST(Decide, MonotoneScaleAndPermutationInvariant) {
  Gen gen(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const long n = gen.integer(1, 8);
    std::vector<Rational> l;
    for (long i = 0; i < n; ++i) l.emplace_back(gen.rational(0, mpq_class(1, 2), 40));
    const bool base = decide_ball_packing(Rational(1), l);

    auto shrunk = l;
    for (auto& x : shrunk) x = x * Rational(gen.rational(0, 1, 10));
    if (base) EXPECT_TRUE(decide_ball_packing(Rational(1), shrunk));

    const Rational c(gen.rational(0, 20, 15));
    auto scaled = l;
    for (auto& x : scaled) x *= c;
    EXPECT_EQ(decide_ball_packing(c, scaled), base);

    auto shuffled = l;
    std::shuffle(shuffled.begin(), shuffled.end(), gen.engine());
    EXPECT_EQ(decide_ball_packing(Rational(1), shuffled), base);
  }
}

TEST(MaxEqualBall, RegressionTable) {
  const auto tol = R("1/1000000000");
  const std::vector<Rational> expected = Rs({"1", "1/2", "1/2", "1/2", "2/5", "2/5", "3/8", "6/17", "1/3"});
  for (std::size_t n = 1; n <= expected.size(); ++n) {
    const auto v = max_equal_ball(n, tol);
    EXPECT_LE(abs(v - expected[n - 1]), tol) << n;
    EXPECT_TRUE(decide_ball_packing(Rational(1), std::vector<Rational>(n, v))) << n;
    EXPECT_FALSE(decide_ball_packing(Rational(1), std::vector<Rational>(n, v + tol))) << n;
  }
  EXPECT_THROW(max_equal_ball(0, tol), InvalidInput);
  EXPECT_THROW(max_equal_ball(3, Rational(0)), InvalidInput);
}
