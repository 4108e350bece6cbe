#include "jigsaw/arith.hpp"
#include "jigsaw/classify.hpp"
#include "jigsaw/families.hpp"

#include <gtest/gtest.h>

using namespace jigsaw;

namespace {

// (tr M)^2 / d straight from the stored matrix.
Rational raw_trace_squared(const GroupElement& g) {
  const Integer t = g.m11() + g.m22();
  return make_rational(Integer(t * t), g.d());
}

ClassificationReport report(const JigsawSpec& s) { return classify_group(JigsawGroup{Jigsaw(s)}); }

}  // namespace

TEST(Gamma2, GeneratorCount) {
  EXPECT_EQ(gamma2_generators(JigsawGroup{Jigsaw(families::j_a())}).size(), 5u);
  EXPECT_EQ(gamma2_generators(weierstrass(1, Rational(1, 3), 3)).size(), 2u);
  JigsawGroup g{Jigsaw(families::chain_with_one(2, 2))};
  auto gens = gamma2_generators(g);
  for (std::size_t i = 0; i < gens.size(); ++i) EXPECT_EQ(gens[i], g.generator(0) * g.generator(static_cast<int>(i) + 1));
}

TEST(Arithmeticity, ArithmeticExamples) {
  for (const JigsawGroup& g : {JigsawGroup{Jigsaw(families::j_a())}, JigsawGroup{Jigsaw(families::two_modular())},
                               JigsawGroup{Jigsaw(families::two_j_a())}, weierstrass(1, Rational(1, 2), 2),
                               weierstrass(1, 1, 1)}) {
    auto r = arithmeticity_check(g);
    EXPECT_TRUE(r.arithmetic);
    EXPECT_FALSE(r.witness.has_value());
    for (const auto& t : r.traces) {
      EXPECT_EQ(t.trace_squared, raw_trace_squared(t.element));
      EXPECT_EQ(t.trace_squared.get_den(), 1) << t.name;
    }
  }
}

TEST(Arithmeticity, NonArithmeticWitnesses) {
  for (const JigsawGroup& g : {weierstrass(1, Rational(1, 3), 3), JigsawGroup{Jigsaw(families::chain_with_one(1, 2))},
                               JigsawGroup{Jigsaw(families::j_prime())}}) {
    auto r = arithmeticity_check(g);
    EXPECT_FALSE(r.arithmetic);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_NE(r.witness->trace_squared.get_den(), 1);
    EXPECT_EQ(r.witness->trace_squared, raw_trace_squared(r.witness->element));
    EXPECT_FALSE(r.witness->name.empty());
  }
}

TEST(Arithmeticity, WeierstrassNamedWitness) {
  JigsawGroup g = weierstrass(1, Rational(1, 3), 3);
  auto r = arithmeticity_check(g, cusp_strip(g, Rational(-2)));
  ASSERT_TRUE(r.witness.has_value());
  // rotations about the sides over -2 and -1: types 1 and 3 one apart
  EXPECT_EQ(r.witness->name.rfind("h[", 0), 0u) << r.witness->name;
  EXPECT_EQ(r.witness->trace_squared.get_den(), 3);
}

TEST(BlockDecomposition, Examples) {
  auto a = s13_block_decomposition(Jigsaw(families::j_a()));
  EXPECT_TRUE(a.decomposable);
  EXPECT_EQ(a.blocks, 1);
  auto b = s13_block_decomposition(Jigsaw(families::two_j_a()));
  EXPECT_TRUE(b.decomposable);
  EXPECT_EQ(b.blocks, 2);
  auto c = s13_block_decomposition(Jigsaw(families::j_prime()));
  EXPECT_FALSE(c.decomposable);
  EXPECT_EQ(c.reason, "no D1 core");
  auto d = s13_block_decomposition(Jigsaw(families::j_prime_chain(1)));
  EXPECT_FALSE(d.decomposable);
  EXPECT_FALSE(d.reason.empty());
  EXPECT_FALSE(s13_block_decomposition(Jigsaw(families::chain_with_one(1, 2))).decomposable);
}

TEST(BlockDecomposition, AgreesWithTraceTestOverCensus) {
  for (const auto& j : census({TileType::integral(1), TileType::integral(3)}, 6)) {
    const bool blocks = s13_block_decomposition(j).decomposable;
    const bool arithmetic = arithmeticity_check(JigsawGroup{j}).arithmetic;
    EXPECT_EQ(blocks, arithmetic) << canonical_key(j);
  }
}

TEST(Tangency, S12Signatures) {
  for (int r = 1; r <= 5; ++r) {
    auto p = tangency_pattern(JigsawGroup{Jigsaw(families::chain_with_one(r, 2))});
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0].gap, 2);
    EXPECT_EQ(p[1].gap, 3 * r + 2);
  }
}

TEST(Tangency, IndependentOfWindow) {
  for (const auto& spec : {families::j_prime_chain(2), families::chain_with_one(3, 2), families::j_a()}) {
    JigsawGroup g{Jigsaw(spec)};
    const auto ref = tangency_pattern(g);
    Rational total;
    for (const auto& e : ref) total += e.gap;
    EXPECT_EQ(total, g.length());
    for (long s = -7; s <= 7; s += 3) EXPECT_EQ(tangency_pattern(cusp_strip(g, Rational(s))), ref) << s;
  }
}

TEST(Commensurability, Distinctions) {
  auto a = report(families::chain_with_one(1, 2));
  auto b = report(families::chain_with_one(2, 2));
  EXPECT_EQ(commensurability_distinct(a, b), Distinction::Distinct);
  EXPECT_EQ(commensurability_distinct(a, a), Distinction::NotDistinguished);
  auto c = report(families::j_prime_chain(1));
  auto d = report(families::j_prime_chain(2));
  EXPECT_EQ(commensurability_distinct(c, d), Distinction::Distinct);
}

TEST(Commensurability, OutOfScope) {
  auto s12 = report(families::chain_with_one(1, 2));
  // J_A is arithmetic; the two-tile modular jigsaw belongs to no compared family.
  for (const auto& spec : {families::j_a(), families::two_modular()}) {
    auto other = report(spec);
    try {
      commensurability_distinct(s12, other);
      FAIL() << other.key;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::FamilyOutOfScope);
    }
  }
}
