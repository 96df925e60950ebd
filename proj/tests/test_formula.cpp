#include <gtest/gtest.h>

#include "esbc/formula.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace esbc;
using support::ms;

namespace {

const Signature kAB({"a", "b"});
Formula a() { return Formula::atom(0); }
Formula b() { return Formula::atom(1); }

}  // namespace

TEST(Parse, ConjunctionWithNegation) {
  EXPECT_EQ(parse_formula("a & ~b", kAB), Formula::conjunction(a(), Formula::negation(b())));
}

TEST(Parse, Constants) {
  EXPECT_EQ(parse_formula("true", kAB), Formula::top());
  EXPECT_EQ(parse_formula("false", kAB), Formula::bottom());
}

TEST(Parse, ImplicationIsRightAssociative) {
  EXPECT_EQ(parse_formula("a -> b -> a", kAB), Formula::implication(a(), Formula::implication(b(), a())));
}

TEST(Parse, Precedence) {
  EXPECT_EQ(parse_formula("~a | a & b", kAB), Formula::disjunction(Formula::negation(a()), Formula::conjunction(a(), b())));
  EXPECT_EQ(parse_formula("a | b -> a <-> b", kAB),
            Formula::biconditional(Formula::implication(Formula::disjunction(a(), b()), a()), b()));
  EXPECT_EQ(parse_formula("a & b & a", kAB), Formula::conjunction(Formula::conjunction(a(), b()), a()));
  EXPECT_EQ(parse_formula("!(a)", kAB), Formula::negation(a()));
}

TEST(Parse, SyntaxErrorsCarryPositions) {
  try {
    parse_formula("a & ", kAB);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  try {
    parse_formula("a b", kAB);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(parse_formula("(a", kAB), SyntaxError);
  EXPECT_THROW(parse_formula("", kAB), SyntaxError);
  EXPECT_THROW(parse_formula("a - b", kAB), SyntaxError);
}

TEST(Parse, UnknownAtom) {
  try {
    parse_formula("a & c", kAB);
    FAIL();
  } catch (const UnknownAtom& e) {
    EXPECT_EQ(e.name(), "c");
  }
}

TEST(Models, Examples) {
  Signature sig({"a"});
  EXPECT_EQ(models_of(Formula::top(), sig), sig.universe());
  EXPECT_EQ(models_of(parse_formula("a & b", kAB), kAB), ms(kAB, {"11"}));
  EXPECT_EQ(models_of(parse_formula("~(a & b)", kAB), kAB), ms(kAB, {"10", "01", "00"}));
}

TEST(Models, AgreeWithTruthTableOracle) {
  std::mt19937_64 rng(5);
  Signature abc({"a", "b", "c"});
  for (int i = 0; i < 2000; ++i) {
    Formula f = oracle::random_formula(rng, 3, 4);
    EXPECT_EQ(models_of(f, abc).bits(), oracle::models(f, 3));
  }
}

TEST(Holds, Examples) {
  Signature sig({"a"});
  EXPECT_TRUE(holds(ms(sig, {"1"}), parse_formula("a", sig), sig));
  EXPECT_TRUE(holds(ModelSet{}, Formula::bottom(), sig));
  EXPECT_FALSE(holds(ms(kAB, {"11", "01"}), parse_formula("a", kAB), kAB));
}

TEST(Expand, Examples) {
  EXPECT_EQ(expand(ms(kAB, {"11", "10"}), parse_formula("b", kAB), kAB), ms(kAB, {"11"}));
  EXPECT_TRUE(expand(ms(kAB, {"11"}), parse_formula("~a", kAB), kAB).empty());
  for (ModelSet::Bits m = 0; m < 16; ++m) EXPECT_EQ(expand(ModelSet(m), Formula::top(), kAB), ModelSet(m));
}

TEST(Expand, HoldsIffExpansionIsIdle) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    Formula f = oracle::random_formula(rng, 2, 3);
    Formula g = oracle::random_formula(rng, 2, 3);
    ModelSet bel(std::uniform_int_distribution<std::uint32_t>(0, 15)(rng));
    EXPECT_EQ(holds(bel, f, kAB), expand(bel, f, kAB) == bel);
    EXPECT_EQ(expand(expand(bel, f, kAB), f, kAB), expand(bel, f, kAB));
    EXPECT_EQ(expand(expand(bel, f, kAB), g, kAB), expand(expand(bel, g, kAB), f, kAB));
  }
}

TEST(Semantics, DoubleNegationAndDeMorgan) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    Formula f = oracle::random_formula(rng, 2, 3);
    Formula g = oracle::random_formula(rng, 2, 3);
    EXPECT_EQ(models_of(Formula::negation(Formula::negation(f)), kAB), models_of(f, kAB));
    EXPECT_EQ(models_of(Formula::negation(Formula::conjunction(f, g)), kAB),
              models_of(Formula::disjunction(Formula::negation(f), Formula::negation(g)), kAB));
    EXPECT_EQ(models_of(Formula::negation(Formula::disjunction(f, g)), kAB),
              models_of(Formula::conjunction(Formula::negation(f), Formula::negation(g)), kAB));
    EXPECT_EQ(models_of(oracle::variant(f, rng), kAB), models_of(f, kAB));
  }
}

TEST(Printing, RoundTripsThroughTheParser) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 2000; ++i) {
    Formula f = oracle::random_formula(rng, 2, 4);
    EXPECT_EQ(parse_formula(to_string(f, kAB), kAB), f) << to_string(f, kAB);
  }
  EXPECT_EQ(to_string(parse_formula("(a -> b) -> a", kAB), kAB), "(a -> b) -> a");
  EXPECT_EQ(to_string(parse_formula("a -> (b -> a)", kAB), kAB), "a -> b -> a");
  EXPECT_EQ(to_string(parse_formula("~(a | b) & true", kAB), kAB), "~(a | b) & true");
}

TEST(CanonicalFormula, Examples) {
  EXPECT_EQ(formula_with_models(ModelSet{}, kAB), Formula::bottom());
  EXPECT_EQ(to_string(formula_with_models(ms(kAB, {"11"}), kAB), kAB), "a & b");
  EXPECT_EQ(to_string(formula_with_models(ms(kAB, {"10", "01"}), kAB), kAB), "a & ~b | ~a & b");
  EXPECT_EQ(models_of(formula_with_models(kAB.universe(), kAB), kAB), kAB.universe());
}

TEST(CanonicalFormula, RoundTripIsExhaustiveUpToThreeAtoms) {
  for (const auto& sig : {Signature({"a"}), Signature({"a", "b"}), Signature({"a", "b", "c"})}) {
    for (ModelSet::Bits m = 0; m < sig.model_set_count(); ++m) {
      ASSERT_EQ(models_of(formula_with_models(ModelSet(m), sig), sig), ModelSet(m));
    }
  }
}
