#include "jigsaw/tiles.hpp"

#include <gtest/gtest.h>

using namespace jigsaw;

TEST(TileType, CanonicalRotation) {
  TileType a(1, 1, 1);
  EXPECT_EQ(a, TileType::integral(1));
  TileType b(3, 1, Rational(1, 3));
  EXPECT_EQ(b, TileType::integral(3));
  EXPECT_EQ(b.label(0), 1);
  EXPECT_EQ(b.label(1), Rational(1, 3));
  EXPECT_EQ(b.label(2), 3);
  EXPECT_EQ(b.integral_n(), 3L);
  EXPECT_EQ(b.str(), "D3");
}

TEST(TileType, Errors) {
  try {
    TileType(1, 2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotBalanced);
  }
  EXPECT_THROW(TileType(-1, -1, 1), Error);
}

TEST(TileType, ReflectionIsDistinct) {
  TileType t(Rational(2), Rational(3), Rational(1, 6));
  TileType r(Rational(3), Rational(2), Rational(1, 6));
  EXPECT_NE(t, r);
  EXPECT_FALSE(t.is_integral());
}

TEST(TileType, InputSideMapping) {
  // Written as (3, 1, 1/3): input side 1 carries label 3, canonical side 2.
  TileType t(3, 1, Rational(1, 3));
  EXPECT_EQ(t.label(t.canonical_side(0)), 3);
  EXPECT_EQ(t.label(t.canonical_side(1)), 1);
  EXPECT_EQ(t.label(t.canonical_side(2)), Rational(1, 3));
}

TEST(MarkedPoints, Examples) {
  EXPECT_EQ(std_marked_points(TileType::integral(1))[2].x, 0);
  EXPECT_EQ(std_marked_points(TileType::integral(1))[2].h2, 1);
  EXPECT_EQ(std_marked_points(TileType::integral(2))[2].h2, 2);
  auto p = std_marked_points(TileType::integral(3));
  EXPECT_EQ(p[1].x, Rational(-3, 4));
  EXPECT_EQ(p[1].h2, Rational(3, 16));
}

TEST(Involutions, Examples) {
  auto d1 = std_involutions(TileType::integral(1));
  EXPECT_EQ(d1[1], GroupElement::from_matrix(1, 1, -2, -1));
  auto d3 = std_involutions(TileType::integral(3));
  EXPECT_EQ(d3[1], GroupElement::normalize(3, 3, -4, -3, 3));
  auto d2 = std_involutions(TileType::integral(2));
  EXPECT_EQ(d2[2], GroupElement::normalize(0, 2, -1, 0, 2));
  EXPECT_EQ(d2[1], GroupElement::normalize(2, 2, -3, -2, 2));
  EXPECT_EQ(d2[0], GroupElement::from_matrix(1, 2, -1, -1));
}

TEST(Involutions, IdentitiesForSeveralTiles) {
  for (const TileType& t : {TileType::integral(1), TileType::integral(2), TileType::integral(5),
                            TileType(Rational(2), Rational(3), Rational(1, 6)),
                            TileType(Rational(5, 13), Rational(4), Rational(13, 20))}) {
    auto inv = std_involutions(t);
    auto pts = std_marked_points(t);
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(inv[i].trace(), 0) << t.str();
      EXPECT_TRUE((inv[i] * inv[i]).is_identity()) << t.str();
      EXPECT_TRUE(fixes_point(inv[i], pts[i])) << t.str() << " side " << i;
    }
    EXPECT_EQ((inv[0] * inv[1] * inv[2]).trace_squared(), 4) << t.str();
  }
}

TEST(SidesMatch, Examples) {
  const TileType d1 = TileType::integral(1), d2 = TileType::integral(2), d3 = TileType::integral(3);
  EXPECT_TRUE(sides_match(d2, 2, d2, 2));
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(sides_match(d1, i, d3, 0));
  EXPECT_FALSE(sides_match(d3, 2, d3, 1));
}
