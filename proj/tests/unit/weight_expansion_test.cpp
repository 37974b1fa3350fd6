#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sympack/errors.hpp"
#include "sympack/weight_expansion.hpp"

using namespace sympack;
using sympack::testing::Gen;
using sympack::testing::R;
using sympack::testing::Rs;

TEST(WeightSequence, Examples) {
  EXPECT_EQ(weight_sequence(Rational(1)).weights, Rs({"1"}));
  EXPECT_EQ(weight_sequence(R("5/2")).weights, Rs({"1", "1", "1/2", "1/2"}));
  EXPECT_EQ(weight_sequence(R("5/2")).sum_of_squares(), R("5/2"));
  EXPECT_EQ(weight_sequence(R("7/6")).weights, Rs({"1", "1/6", "1/6", "1/6", "1/6", "1/6", "1/6"}));

  const auto w = weight_sequence(R("201/100"));
  ASSERT_EQ(w.size(), 102u);
  EXPECT_EQ(w.weights[0], Rational(1));
  EXPECT_EQ(w.weights[1], Rational(1));
  for (std::size_t i = 2; i < w.size(); ++i) EXPECT_EQ(w.weights[i], R("1/100"));
  EXPECT_EQ(w.sum_of_squares(), R("201/100"));
}

TEST(WeightSequence, RejectsBelowOne) {
  EXPECT_THROW(weight_sequence(R("1/2")), InvalidInput);
  EXPECT_THROW(weight_count(R("0")), InvalidInput);
  EXPECT_THROW(ellipsoid_weights(R("0"), R("1")), InvalidInput);
}

TEST(WeightCount, Examples) {
  EXPECT_EQ(weight_count(Rational(1)), 1u);
  EXPECT_EQ(weight_count(R("5/2")), 4u);
  EXPECT_EQ(weight_count(R("201/100")), 102u);
  EXPECT_EQ(weight_count(R("7/6")), 7u);
}

TEST(ContinuedFraction, Examples) {
  const auto cf = continued_fraction(R("5/2"));
  ASSERT_EQ(cf.size(), 2u);
  EXPECT_EQ(cf[0], 2);
  EXPECT_EQ(cf[1], 2);
  const auto big = continued_fraction(R("415/93"));  // [4; 2, 6, 7]
  std::vector<long> got;
  for (const auto& q : big) got.push_back(q.get_si());
  EXPECT_EQ(got, (std::vector<long>{4, 2, 6, 7}));
}

TEST(EllipsoidWeights, Examples) {
  EXPECT_EQ(ellipsoid_weights(R("1"), R("2")).weights, Rs({"1", "1"}));
  EXPECT_EQ(ellipsoid_weights(R("2"), R("5")).weights, Rs({"2", "2", "1", "1"}));
  EXPECT_EQ(ellipsoid_weights(R("5"), R("2")).weights, Rs({"2", "2", "1", "1"}));
  EXPECT_EQ(ellipsoid_weights(R("3"), R("3")).weights, Rs({"3"}));
  EXPECT_EQ(ellipsoid_weights(R("3/5"), R("7/10")).sum_of_squares(), R("21/50"));
}

TEST(WeightSequence, AgreesWithSubtractionOracle) {
  Gen gen(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const mpq_class a = gen.rational(1, 100, 60);
    const auto w = weight_sequence(Rational(a));
    const auto oracle = sympack::testing::subtraction_weights(a);
    ASSERT_EQ(w.size(), oracle.size()) << a;
    for (std::size_t i = 0; i < oracle.size(); ++i) ASSERT_EQ(w.weights[i].raw(), oracle[i]) << a;
    EXPECT_EQ(w.sum_of_squares(), Rational(a));
    EXPECT_EQ(w.sum(), Rational(a) + Rational(1) - Rational(mpz_class(1), a.get_den()));
    EXPECT_EQ(weight_count(Rational(a)), static_cast<std::size_t>(sympack::testing::quotient_sum(a)));
    for (std::size_t i = 1; i < w.size(); ++i) EXPECT_LE(w.weights[i], w.weights[i - 1]);
    EXPECT_LE(w.weights.front(), Rational(1));
  }
}

TEST(WeightSequence, RepeatedCallsIdentical) {
  const auto a = R("355/113");
  EXPECT_EQ(weight_sequence(a).weights, weight_sequence(a).weights);
}

TEST(WeightSequence, ContinuityAtTwo) {
  const auto eps = R("1/50");
  const auto base = weight_sequence(Rational(2));
  for (const char* nearby : {"201/100", "199/100"}) {
    const auto w = weight_sequence(R(nearby));
    ASSERT_GE(w.size(), base.size());
    std::size_t i = 0;
    for (; i < base.size(); ++i) EXPECT_LT(abs(w.weights[i] - base.weights[i]), eps) << nearby;
    for (; i < w.size(); ++i) EXPECT_LT(w.weights[i], eps) << nearby;
  }
  const auto above = weight_sequence(R("201/100"));
  EXPECT_EQ(above.weights[0], base.weights[0]);
  EXPECT_EQ(above.weights[1], base.weights[1]);
}
