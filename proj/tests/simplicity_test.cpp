#include <gtest/gtest.h>

#include "support.hpp"

using namespace derivkit;
using namespace derivkit::testing;

namespace {

UniPoly l_rhs(const UniPoly& a1, const Rat& a0, const Rat& l, unsigned beta) {
  Rat lp = 1;
  for (unsigned i = 0; i <= beta; ++i) lp *= l;
  Rat sign = beta % 2 == 0 ? Rat(1) : Rat(-1);
  return a1.scaled(l) + uni_const(sign * lp * a0);
}

bool contains(const std::vector<Rat>& v, const Rat& r) { return std::find(v.begin(), v.end(), r) != v.end(); }

/// Principal witnesses are checked by a direct product identity; pairs by
/// reduction modulo p.
void expect_witness_sound(const Derivation& d, const StableIdeal& w) {
  ASSERT_FALSE(w.generators.empty());
  EXPECT_TRUE(verify_stable_ideal(d, w.generators));
  if (w.generators.size() == 1) {
    const MultiPoly g = w.generators[0];
    auto q = divexact(d.apply(g), g);
    ASSERT_TRUE(q);
    EXPECT_EQ(*q * g, d.apply(g));
    EXPECT_FALSE(g.is_constant());
  } else {
    EXPECT_EQ(w.generators[0], P("y", XY()));
    EXPECT_FALSE(w.generators[1].is_constant());
  }
}

}  // namespace

TEST(UnitIdeal, Examples) {
  EXPECT_TRUE(unit_ideal_check(P("x*y^2 + 1", XY())));
  EXPECT_FALSE(unit_ideal_check(P("x*y^2 + x", XY())));
  EXPECT_FALSE(unit_ideal_check(P("y", XY())));
  EXPECT_TRUE(unit_ideal_check(P("-3 + y*x", XY())));
}

TEST(Condition3, Examples) {
  EXPECT_EQ(condition3_solve(U({-1, 1}), uni_x(), 1), (std::vector<Rat>{1}));
  EXPECT_EQ(condition3_solve(U({-4, 2}), uni_x(), 1), (std::vector<Rat>{2}));
  EXPECT_TRUE(condition3_solve(U({1}), uni_x(), 1).empty());
  EXPECT_EQ(condition3_solve(UniPoly{}, U({2}), 1), (std::vector<Rat>{2}));
  EXPECT_THROW(condition3_solve(U({1}), uni_x(), 0), std::invalid_argument);
}

TEST(Condition3, ExamplesSatisfyIdentity) {
  // Substitute-back oracle for the fixtures above.
  EXPECT_EQ(l_rhs(uni_x(), 1, 1, 1), U({-1, 1}));
  EXPECT_EQ(l_rhs(uni_x(), 1, 2, 1), U({-4, 2}));
  EXPECT_TRUE(l_rhs(U({2}), 1, 2, 1).is_zero());
}

TEST(DecideSimple, FirstTheoremInstance) {
  auto v = decide_simple_family_a({uni_x(), {}, U({1})});
  EXPECT_TRUE(v.simple);
  EXPECT_EQ(v.theorem, "T2.1");
  EXPECT_EQ(v.witness(), nullptr);
  EXPECT_TRUE(*v.conditions.no_l);
}

TEST(DecideSimple, ShiftedYWitness) {
  FamilyA f{U({-1, 1}), uni_x(), U({1})};
  auto v = decide_simple_family_a(f);
  EXPECT_FALSE(v.simple);
  EXPECT_EQ(v.theorem, "T4.2");
  ASSERT_NE(v.witness(), nullptr);
  EXPECT_EQ(v.witness()->generators, (std::vector<MultiPoly>{P("y + 1", XY())}));
  EXPECT_EQ(v.l_value(), Rat(1));
  // Expansion oracle: D(y + 1) = ((x - 1)y + 1)(y + 1).
  EXPECT_EQ(to_derivation(f).apply(P("y + 1", XY())), P("((x - 1)*y + 1)*(y + 1)", XY()));
}

TEST(DecideSimple, LinearFamilyCriterion) {
  auto v = decide_simple_family_a({UniPoly{}, uni_x(), U({1})});
  EXPECT_TRUE(v.simple);
  EXPECT_EQ(v.theorem, "REF15");
}

TEST(DecideSimple, ConstantCoefficientWitnesses) {
  auto v = decide_simple_family_a({UniPoly{}, UniPoly{}, U({1})});
  EXPECT_FALSE(v.simple);
  ASSERT_NE(v.witness(), nullptr);
  EXPECT_EQ(v.witness()->generators, (std::vector<MultiPoly>{P("1/2*y^2 - x", XY())}));

  auto w = decide_simple_family_a({U({1}), U({1}), U({1})});
  EXPECT_FALSE(w.simple);
  EXPECT_EQ(w.theorem, "T4.1");
  ASSERT_NE(w.witness(), nullptr);
  EXPECT_EQ(w.witness()->generators, (std::vector<MultiPoly>{P("y^2 + y + 1", XY())}));

  auto z = decide_simple_family_a({UniPoly{}, U({2}), U({3})});
  EXPECT_FALSE(z.simple);
  ASSERT_NE(z.witness(), nullptr);
  // 0 = 2l - 3l^2 has the nonzero root 2/3.
  EXPECT_EQ(z.l_value(), make_rat(2, 3));
  EXPECT_EQ(z.witness()->generators, (std::vector<MultiPoly>{P("y + 3/2", XY())}));
}

TEST(DecideSimple, NonUnitA0Witness) {
  auto v = decide_simple_family_a({uni_x(), {}, uni_x()});
  EXPECT_FALSE(v.simple);
  ASSERT_NE(v.witness(), nullptr);
  EXPECT_EQ(v.witness()->generators, (std::vector<MultiPoly>{P("y", XY()), P("x", XY())}));
  EXPECT_FALSE(v.conditions.no_l.has_value());

  auto z = decide_simple_family_a({uni_x(), uni_x(), UniPoly{}});
  ASSERT_NE(z.witness(), nullptr);
  EXPECT_EQ(z.witness()->generators, (std::vector<MultiPoly>{P("y", XY())}));
}

TEST(VerifyStableIdeal, Examples) {
  EXPECT_TRUE(verify_stable_ideal(to_derivation(FamilyA{{}, {}, U({1})}), {P("1/2*y^2 - x", XY())}));
  Derivation d = to_derivation(FamilyA{U({1}), {}, U({1})});
  EXPECT_TRUE(verify_stable_ideal(d, {P("y^2 + 1", XY())}));
  EXPECT_EQ(*divexact(d.apply(P("y^2 + 1", XY())), P("y^2 + 1", XY())), P("2*y", XY()));
  EXPECT_TRUE(verify_stable_ideal(to_derivation(FamilyA{uni_x(), {}, uni_x()}), {P("y", XY()), P("x", XY())}));
}

TEST(VerifyStableIdeal, RejectsNonStable) {
  Derivation d = to_derivation(FamilyA{uni_x(), {}, U({1})});
  EXPECT_FALSE(verify_stable_ideal(d, {P("y", XY())}));
  EXPECT_FALSE(verify_stable_ideal(d, {P("y", XY()), P("x", XY())}));
}

TEST(VerifyStableIdeal, UnsupportedShapes) {
  Derivation d = to_derivation(FamilyA{uni_x(), {}, U({1})});
  EXPECT_THROW(verify_stable_ideal(d, {P("x", XY()), P("y", XY())}), UnsupportedIdealShape);
  EXPECT_THROW(verify_stable_ideal(d, {P("y", XY()), P("x", XY()), P("x*y", XY())}), UnsupportedIdealShape);
  EXPECT_THROW(verify_stable_ideal(d, {MultiPoly::constant(2, XY())}), UnsupportedIdealShape);
  EXPECT_THROW(verify_stable_ideal(d, {}), UnsupportedIdealShape);
}

TEST(ConjectureNecessary, ShiftedYFailure) {
  FamilyConj f{2, 2, U({1, 1}), uni_x(), U({1})};
  auto r = conjecture_necessary(f);
  ASSERT_TRUE(std::holds_alternative<NecessaryFail>(r));
  const auto& fail = std::get<NecessaryFail>(r);
  EXPECT_EQ(fail.l, Rat(1));
  EXPECT_EQ(fail.witness.generators, (std::vector<MultiPoly>{P("y + 1", XY())}));
  // D(y + 1) vanishes at y = -1: -(x + 1) + x + 1 = 0.
  MultiPoly dy = to_derivation(f).apply(P("y + 1", XY()));
  EXPECT_TRUE(dy.substitute(1, Rat(-1)).is_zero());
  EXPECT_TRUE(verify_stable_ideal(to_derivation(f), fail.witness.generators));
}

TEST(ConjectureNecessary, PassCase) {
  EXPECT_TRUE(std::holds_alternative<NecessaryPass>(conjecture_necessary({1, 1, uni_x(), {}, U({1})})));
  EXPECT_TRUE(std::holds_alternative<NecessaryPass>(conjecture_necessary({2, 2, uni_x(), {}, U({1})})));
}

TEST(ConjectureNecessary, PowerWitness) {
  FamilyConj f{2, 2, {}, {}, U({1})};
  auto r = conjecture_necessary(f);
  ASSERT_TRUE(std::holds_alternative<NecessaryFail>(r));
  const auto& fail = std::get<NecessaryFail>(r);
  EXPECT_EQ(fail.witness.generators, (std::vector<MultiPoly>{P("1/3*y^3 - x", XY())}));
  EXPECT_TRUE(verify_stable_ideal(to_derivation(f), fail.witness.generators));
}

TEST(ConjectureNecessary, NonUnitA0) {
  FamilyConj f{2, 3, uni_x(), {}, uni_x()};
  auto r = conjecture_necessary(f);
  ASSERT_TRUE(std::holds_alternative<NecessaryFail>(r));
  EXPECT_EQ(std::get<NecessaryFail>(r).witness.generators, (std::vector<MultiPoly>{P("y", XY()), P("x", XY())}));
  EXPECT_TRUE(verify_stable_ideal(to_derivation(f), std::get<NecessaryFail>(r).witness.generators));
}

TEST(ConjectureNecessary, ConstantCoefficientsGiveImageWitness) {
  FamilyConj f{2, 2, U({1}), U({3}), U({1})};
  auto r = conjecture_necessary(f);
  ASSERT_TRUE(std::holds_alternative<NecessaryFail>(r));
  const auto& fail = std::get<NecessaryFail>(r);
  EXPECT_TRUE(verify_stable_ideal(to_derivation(f), fail.witness.generators));
}

TEST(ConjectureScan, PassingCellHasNoDarbouxUpToBounds) {
  auto rows = conjecture_scan(2, {{uni_x(), {}, U({1})}}, {2, 2, 3, 8});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].necessary);
  EXPECT_EQ(rows[0].darboux_status, "none-up-to-bounds");
}

TEST(ConjectureScan, FailingCellCarriesVerifiedWitness) {
  auto rows = conjecture_scan(2, {{U({1, 1}), uni_x(), U({1})}, {uni_x(), {}, U({1})}}, {2, 2, 3, 8});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].necessary);
  ASSERT_TRUE(rows[0].failure);
  EXPECT_EQ(rows[0].failure->l, Rat(1));
  EXPECT_TRUE(rows[0].witness_verified);
  EXPECT_EQ(rows[0].darboux_status, "skipped");
  EXPECT_TRUE(rows[1].necessary);
}

TEST(ConjectureScan, EmptyGridAndAlphaOne) {
  EXPECT_TRUE(conjecture_scan(2, {}, {}).empty());
  EXPECT_THROW(conjecture_scan(1, {}, {}), std::invalid_argument);
}

TEST(Property, Condition3Exhaustive) {
  Gen g(301);
  for (int i = 0; i < 200; ++i) {
    Rat l = g.nonzero_rat(10);
    UniPoly a1 = g.uni(3, 10);
    Rat a0 = g.nonzero_rat(10);
    UniPoly a2 = a1.scaled(l) - uni_const(l * l * a0);
    EXPECT_TRUE(contains(condition3_solve(a2, a1, a0), l)) << l;
  }
}

TEST(Property, LConditionExhaustiveForHigherBeta) {
  Gen g(302);
  for (int i = 0; i < 200; ++i) {
    unsigned beta = static_cast<unsigned>(g.integer(1, 4));
    Rat l = g.nonzero_rat(6);
    UniPoly a1 = g.uni(3, 6);
    Rat a0 = g.nonzero_rat(6);
    EXPECT_TRUE(contains(solve_l_condition(l_rhs(a1, a0, l, beta), a1, a0, beta), l));
  }
}

TEST(Property, Condition3Sound) {
  Gen g(303);
  int nonempty = 0;
  for (int i = 0; i < 200; ++i) {
    UniPoly a1 = g.uni(2, 4);
    Rat a0 = g.nonzero_rat(4);
    UniPoly a2 = g.coin() ? g.uni(2, 4) : l_rhs(a1, a0, g.nonzero_rat(4), 1) + uni_const(g.integer(0, 1));
    auto ls = condition3_solve(a2, a1, a0);
    nonempty += !ls.empty();
    for (const auto& l : ls) {
      EXPECT_NE(sgn(l), 0);
      EXPECT_EQ(a2, a1.scaled(l) - uni_const(l * l * a0));
    }
  }
  EXPECT_GT(nonempty, 20);
}

TEST(Property, FamilyBAgreesWithLinearCriterion) {
  Gen g(304);
  for (int i = 0; i < 200; ++i) {
    UniPoly a1 = g.uni(3, 5);
    Rat a0 = g.integer(0, 3) == 0 ? Rat(0) : g.rat(5);
    auto v = decide_simple_family_a({UniPoly{}, a1, uni_const(a0)});
    EXPECT_EQ(v.simple, sgn(a0) != 0 && a1.deg() >= 1) << to_string(a1) << " " << a0;
  }
}

TEST(Property, NonSimpleWitnessesVerify) {
  Gen g(305);
  int nonsimple = 0;
  for (int i = 0; i < 200; ++i) {
    FamilyA f;
    switch (i % 4) {
      case 0:
        f = {g.uni(2, 4), g.uni(2, 4), g.uni(1, 4)};
        break;
      case 1:
        f = {uni_const(g.rat(4)), uni_const(g.rat(4)), uni_const(g.nonzero_rat(4))};
        break;
      case 2: {
        Rat l = g.nonzero_rat(5), a0 = g.nonzero_rat(5);
        UniPoly a1 = g.uni(3, 5);
        f = {a1.scaled(l) - uni_const(l * l * a0), a1, uni_const(a0)};
        break;
      }
      default:
        f = {g.uni(2, 4), g.uni(2, 4), UniPoly{}};
        break;
    }
    auto v = decide_simple_family_a(f);
    if (v.simple) {
      EXPECT_EQ(v.witness(), nullptr);
      continue;
    }
    ++nonsimple;
    ASSERT_NE(v.witness(), nullptr);
    expect_witness_sound(to_derivation(f), *v.witness());
    if (auto l = v.l_value()) { EXPECT_TRUE(contains(condition3_solve(f.a2, f.a1, f.a0.coeff(0)), *l)); }
  }
  EXPECT_GT(nonsimple, 100);
}

TEST(Property, NecessaryConditionWitnessesVerify) {
  Gen g(306);
  int fails = 0;
  for (int i = 0; i < 200; ++i) {
    unsigned alpha = static_cast<unsigned>(g.integer(1, 3));
    unsigned beta = static_cast<unsigned>(g.integer(alpha, 4));
    FamilyConj f{alpha, beta, g.uni(2, 3), g.uni(2, 3), g.uni(1, 3)};
    if (i % 3 == 0) {
      Rat l = g.nonzero_rat(3), a0 = g.nonzero_rat(3);
      f.a0 = uni_const(a0);
      f.a2 = l_rhs(f.a1, a0, l, beta);
    }
    if (i % 5 == 0) f.a2 = f.a1 = UniPoly{};
    auto r = conjecture_necessary(f);
    if (auto* fail = std::get_if<NecessaryFail>(&r)) {
      ++fails;
      EXPECT_TRUE(verify_stable_ideal(to_derivation(f), fail->witness.generators));
    }
  }
  EXPECT_GT(fails, 80);
}

TEST(Property, SimpleVerdictHasNoDarbouxPolynomialUpToBounds) {
  Gen g(307);
  int searched = 0;
  for (int i = 0; i < 60; ++i) {
    UniPoly a2;
    do a2 = g.uni(2, 3);
    while (a2.deg() < 1);
    FamilyA f{a2, g.uni(2, 3), uni_const(g.nonzero_rat(3))};
    auto v = decide_simple_family_a(f);
    if (!v.simple) continue;
    ++searched;
    auto out = darboux_search_family_a(f, {3, 3, 4, 8});
    EXPECT_FALSE(std::holds_alternative<Found>(out)) << to_string(f.a2) << " | " << to_string(f.a1);
  }
  EXPECT_GT(searched, 30);
}
