#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "anosov/error.hpp"
#include "anosov/groups.hpp"
#include "test_support.hpp"

using namespace anosov;
using namespace anosov::groups;

TEST(Groups, CyclicBallHasTwoElementsPerShell) {
  const auto ball = word_ball(fixture("cyclic-diagonal", {"2"}), 7);
  EXPECT_EQ(ball.elements.size(), 15u);
  const std::vector<std::size_t> expect{1, 2, 2, 2, 2, 2, 2, 2};
  EXPECT_EQ(ball.shell_sizes, expect);
  ASSERT_TRUE(ball.spec.rational());
}

TEST(Groups, SchottkyBallIsFree) {
  const auto spec = fixture("schottky-sl2", {"3"});
  for (int r = 1; r <= 6; ++r) {
    const auto ball = word_ball(spec, r);
    long long pow3 = 1;
    for (int i = 0; i < r; ++i) pow3 *= 3;
    EXPECT_EQ(static_cast<long long>(ball.elements.size()), 1 + 4 * (pow3 - 1) / 2) << r;
    EXPECT_EQ(ball.shell_sizes.back(), static_cast<std::size_t>(4 * pow3 / 3));
  }
}

TEST(Groups, BallElementsCarryConsistentWordsAndInverses) {
  const auto spec = fixture("schottky-sl2", {"3"});
  const auto ball = word_ball(spec, 4);
  std::set<std::string> keys;
  for (std::size_t i = 0; i < ball.elements.size(); ++i) {
    const auto& g = ball.elements[i];
    EXPECT_EQ(static_cast<int>(g.word.size()), g.length);
    EXPECT_LT((word_matrix(spec, g.word) - g.matrix).norm(), 1e-9 * (1 + g.matrix.norm()));
    EXPECT_LT((g.matrix * g.inverse - Matrix::Identity(2, 2)).norm(), 1e-9);
    EXPECT_TRUE(keys.insert(ball.key_of(i)).second);
    EXPECT_EQ(ball.find(ball.key_of(i)), i);
  }
}

TEST(Groups, GeodesicTriplesOfCyclicGroup) {
  const auto ball = word_ball(fixture("cyclic-diagonal", {"2"}), 4);
  for (int depth : {1, 2}) {
    const auto triples = geodesic_triples(ball, depth);
    EXPECT_EQ(triples.size(), 2u);
    for (const auto& t : triples) EXPECT_LT((ball.elements[t.x].matrix * ball.elements[t.z].matrix - Matrix::Identity(2, 2)).norm(), 1e-12);
  }
}

TEST(Groups, GeodesicTriplesOfFreeGroup) {
  // In F_2 the pairs of length-D words with reduced product of length 2D are
  // those whose first letters differ: 4*3^{D-1} choices of x times 3*3^{D-1} of z.
  const auto ball = word_ball(fixture("schottky-sl2", {"3"}), 4);
  EXPECT_EQ(geodesic_triples(ball, 1).size(), 12u);
  EXPECT_EQ(geodesic_triples(ball, 2).size(), 108u);
}

TEST(Groups, SymmetricPowerIsAHomomorphism) {
  std::mt19937_64 rng(31);
  for (int k = 1; k <= 5; ++k)
    for (int t = 0; t < 20; ++t) {
      const Matrix g = anosov::testing::random_sl(2, rng), h = anosov::testing::random_sl(2, rng);
      const Matrix lhs = symmetric_power(Matrix(g * h), k);
      const Matrix rhs = symmetric_power(g, k) * symmetric_power(h, k);
      EXPECT_LT((lhs - rhs).norm(), 1e-10 * (1 + rhs.norm()));
      EXPECT_NEAR(symmetric_power(g, k).determinant(), 1.0, 1e-8);
    }
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 2, 0.5;
  const Matrix s = symmetric_power(d, 3);
  EXPECT_NEAR(s(0, 0), 8, 1e-14);
  EXPECT_NEAR(s(3, 3), 0.125, 1e-14);
}

TEST(Groups, ParseGroupAppendsInverses) {
  const auto doc = nlohmann::json::parse(R"({"name":"t","dim":2,"generators":[[["2","0"],["0","1/2"]]]})");
  const auto spec = parse_group(doc);
  EXPECT_EQ(spec.size(), 2u);
  EXPECT_EQ(spec.inverse_of[0], 1);
  EXPECT_TRUE(spec.rational());
  EXPECT_NEAR(spec.generators[1](0, 0), 0.5, 0);
}

TEST(Groups, ParseGroupRejectsBadDeterminant) {
  const auto doc = nlohmann::json::parse(R"({"name":"t","dim":2,"generators":[[[2,0],[0,1]]]})");
  try {
    parse_group(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DeterminantNotUnit);
  }
  EXPECT_THROW(parse_group(nlohmann::json::parse(R"({"dim":2})")), Error);
}

TEST(Groups, CapRaisesBallTooLarge) {
  try {
    word_ball(fixture("schottky-sl2", {"3"}), 8, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BallTooLarge);
  }
}

TEST(Groups, FixtureStrings) {
  EXPECT_EQ(fixture_from_string("fx:sl3-diagonal:2").dim, 3);
  EXPECT_EQ(fixture_from_string("fx:symmetric-power:3:schottky-sl2:3").dim, 4);
  EXPECT_EQ(fixture_from_string("fx:block-embed-sl4").dim, 4);
  const auto lattice = fixture_from_string("fx:so21-integral-lattice");
  for (const auto& g : lattice.generators) EXPECT_LT((g.transpose() * so21_form() * g - so21_form()).norm(), 1e-12);
  try {
    fixture_from_string("fx:no-such-group");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownFixture);
  }
}
