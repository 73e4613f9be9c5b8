#include <gtest/gtest.h>

#include <random>

#include "twh/formal.hpp"

using namespace twh;

namespace {

Box box(std::initializer_list<std::pair<int64_t, int64_t>> b) {
  Box r;
  for (auto [lo, hi] : b) r.push_back({lo, hi});
  return r;
}

Series<CycNum> exact(const Vars& v, std::map<Exp, CycNum> t) {
  auto l = finite_series(v, t);
  return materialize(l, Box(v.size()));
}

}  // namespace

TEST(BinomExpand, Square) {
  Vars v{{"a", 1}, {"b", 1}};
  auto s = binom_expand(v, "a", "b", Rat(2), Box(2));
  EXPECT_EQ(to_text(s), "(0,2)\t1/1\n(1,1)\t2/1\n(2,0)\t1/1\n");
}

TEST(BinomExpand, Geometric) {
  Vars v{{"a", 1}, {"b", 1}};
  auto s = binom_expand(v, "a", "b", Rat(-1), box({{-10, 10}, {0, 3}}));
  EXPECT_EQ(to_text(s), "(-4,3)\t-1/1\n(-3,2)\t1/1\n(-2,1)\t-1/1\n(-1,0)\t1/1\n");
}

TEST(BinomExpand, HalfPower) {
  Vars v{{"a", 2}, {"b", 1}};
  auto s = binom_expand(v, "a", "b", Rat(1, 2), box({{-10, 10}, {0, 2}}));
  EXPECT_EQ(to_text(s), "(-3/2,2)\t-1/8\n(-1/2,1)\t1/2\n(1/2,0)\t1/1\n");
}

TEST(BinomExpand, RejectsOpenWindow) {
  Vars v{{"a", 1}, {"b", 1}};
  EXPECT_THROW(binom_expand(v, "a", "b", Rat(-1), Box(2)), OutsideWindow);
}

TEST(DeltaSeries, Plain) {
  Vars v{{"x1", 1}, {"x2", 1}};
  auto s = delta_series(v, "x1", "x2", 0, 1, box({{-2, 2}, {-2, 2}}));
  EXPECT_EQ(s.terms.size(), 5u);
  for (int n = -2; n <= 2; ++n) EXPECT_TRUE(s.coeff({n, -n}).is_one());
  EXPECT_TRUE(s.coeff({0, 0}).is_one());
}

TEST(DeltaSeries, RootOfUnity) {
  Vars v{{"x1", 2}, {"x2", 2}};
  auto s = delta_series(v, "x1", "x2", 1, 2, box({{-4, 4}, {-4, 4}}));
  EXPECT_EQ(s.coeff({1, -1}), CycNum(-1));
  EXPECT_EQ(s.coeff({2, -2}), CycNum(1));
}

TEST(DeltaSeries, SubstitutionProperty) {
  Vars v{{"x1", 1}, {"x2", 1}};
  auto d = delta_series(v, "x1", "x2", 0, 1);
  auto f1 = finite_series(v, {{{1, 0}, CycNum(1)}, {{-1, 0}, CycNum(1)}});
  auto f2 = finite_series(v, {{{0, 1}, CycNum(1)}, {{0, -1}, CycNum(1)}});
  auto r = compare_on(mul(d, f1), mul(d, f2), radius_box(v, 4), "subst", "");
  EXPECT_TRUE(r.ok()) << r.witness;
}

TEST(Mul, Telescoping) {
  Vars v{{"x1", 1}, {"x2", 1}};
  auto lin = exact(v, {{{1, 0}, CycNum(1)}, {{0, 1}, CycNum(1)}});
  auto geo = binom_expand(v, "x1", "x2", Rat(-1), box({{-20, 20}, {0, 6}}));
  auto prod = mul(lin, geo, box({{-5, 5}, {0, 6}}));
  EXPECT_EQ(to_text(prod), "(0,0)\t1/1\n");
}

TEST(Mul, AddZero) {
  Vars v{{"x1", 1}, {"x2", 1}};
  auto a = exact(v, {{{1, 2}, CycNum(Rat(3, 4))}});
  auto z = exact(v, {});
  EXPECT_EQ(add(a, z), a);
}

TEST(Mul, DeltaKillsDifference) {
  Vars v{{"x1", 1}, {"x2", 1}};
  auto d = delta_series(v, "x1", "x2", 0, 1);
  auto lin = finite_series(v, {{{1, 0}, CycNum(1)}, {{0, 1}, CycNum(-1)}});
  auto prod = materialize(mul(d, lin), radius_box(v, 5));
  EXPECT_TRUE(prod.terms.empty());
}

TEST(Mul, UnboundedIsRejected) {
  Vars v{{"x1", 1}, {"x2", 1}};
  auto d = delta_series(v, "x1", "x2", 0, 1);
  EXPECT_THROW(materialize(mul(d, d), radius_box(v, 1)), UnboundedConvolution);
}

TEST(Mul, WindowTooSmall) {
  Vars v{{"x1", 1}, {"x2", 1}};
  auto geo = binom_expand(v, "x1", "x2", Rat(-1), box({{-20, 20}, {0, 2}}));
  auto lin = exact(v, {{{0, 1}, CycNum(1)}});
  // coefficient at x2^4 needs geo at x2^3, outside the stored window
  EXPECT_THROW(mul(lin, geo, box({{-5, 5}, {0, 4}})), OutsideWindow);
}

TEST(Mul, AssociativeAndDistributive) {
  Vars v{{"x1", 1}, {"x2", 1}};
  auto a = binom_expand(v, "x1", "x2", Rat(-2));
  auto b = binom_expand(v, "x1", "x2", Rat(3));
  auto c = binom_expand(v, "x1", "x2", Rat(-1), -1, 1);
  auto w = radius_box(v, 5);
  auto r1 = compare_on(mul(mul(a, b), c), mul(a, mul(b, c)), w, "assoc", "");
  EXPECT_TRUE(r1.ok()) << r1.witness;
  auto r2 = compare_on(mul(a, add(b, c)), add(mul(a, b), mul(a, c)), w, "dist", "");
  EXPECT_TRUE(r2.ok()) << r2.witness;
}

TEST(CoeffResidue, Basics) {
  Vars v{{"x1", 1}, {"x2", 1}};
  auto d = delta_series(v, "x1", "x2", 0, 1, radius_box(v, 3));
  EXPECT_TRUE(d.coeff({0, 0}).is_one());
  EXPECT_THROW(d.coeff({4, -4}), OutsideWindow);

  Vars x{{"x", 1}};
  auto s = exact(x, {{{-1}, CycNum(1)}, {{2}, CycNum(1)}});
  auto r = residue(s, "x");
  EXPECT_TRUE(r.vars.empty());
  EXPECT_TRUE(r.coeff({}).is_one());

  auto dl = mul(monomial(v, {-1, 0}), delta_series(v, "x1", "x2", 0, 1));
  auto res = materialize(residue(dl, "x1"), radius_box(Vars{{"x2", 1}}, 3));
  EXPECT_EQ(to_text(res), "(0)\t1/1\n");
}

TEST(SubstituteLimit, Linear) {
  Vars v{{"x1", 1}};
  auto a = finite_series(v, {{{1}, CycNum(1)}});
  auto s = materialize(substitute_limit(a, "x1", 0, "x2", "x0"), radius_box(Vars{{"x2", 1}, {"x0", 1}}, 3));
  EXPECT_EQ(to_text(s), "(0,1)\t1/1\n(1,0)\t1/1\n");
}

TEST(SubstituteLimit, NegatedFirstTerm) {
  // x0^2 -> (-x2 + x1)^2 and x0^-1 -> -x2^-1 - x1 x2^-2 - ...
  Vars v{{"x0", 1}};
  Vars o{{"x2", 1}, {"x1", 1}};
  auto sq = materialize(substitute_limit(finite_series(v, {{{2}, CycNum(1)}}), "x0", 0, "x2", "x1", -1),
                        radius_box(o, 3));
  EXPECT_EQ(to_text(sq), "(0,2)\t1/1\n(1,1)\t-2/1\n(2,0)\t1/1\n");
  auto inv = materialize(substitute_limit(finite_series(v, {{{-1}, CycNum(1)}}), "x0", 0, "x2", "x1", -1),
                         radius_box(o, 3));
  EXPECT_EQ(to_text(inv), "(-3,2)\t-1/1\n(-2,1)\t-1/1\n(-1,0)\t-1/1\n");
  EXPECT_THROW(substitute_limit(finite_series(Vars{{"x0", 2}}, {{{1}, CycNum(1)}}), "x0", 0, "x2", "x1", -1),
               std::invalid_argument);
}

TEST(SubstituteLimit, ResolvingFactorAlone) {
  // ((x1-x2)/x0)^k with x1 -> x2 + x0 gives 1
  for (int k = 0; k <= 4; ++k) {
    Vars v{{"x1", 1}, {"x2", 1}};
    auto f = binom_expand(v, "x1", "x2", Rat(k), 1, -1);
    auto sub = substitute_limit(f, "x1", 0, "x2", "x0");
    Vars o{{"x2", 1}, {"x0", 1}};
    auto res = mul(monomial(o, {0, -k}), sub);
    auto s = materialize(res, radius_box(o, 4));
    EXPECT_EQ(to_text(s), "(0,0)\t1/1\n") << k;
  }
}

TEST(SubstituteLimit, HalfPowerWithRoot) {
  Vars v{{"x1", 2}};
  auto a = finite_series(v, {{{1}, CycNum(1)}});
  Vars o{{"x2", 2}, {"x0", 1}};
  auto s = materialize(substitute_limit(a, "x1", 1, "x2", "x0"), box({{-10, 10}, {0, 2}}));
  auto ref = scale(CycNum(-1), binom_expand(o, "x2", "x0", Rat(1, 2), box({{-10, 10}, {0, 2}})));
  EXPECT_EQ(s.terms, ref.terms);
}

TEST(SubstituteLimit, NeedsCertificate) {
  Vars v{{"x1", 1}, {"x2", 1}};
  auto d = delta_series(v, "x1", "x2", 0, 1);
  EXPECT_THROW(materialize(substitute_limit(d, "x1", 0, "x2", "x0"), radius_box(Vars{{"x2", 1}, {"x0", 1}}, 1)),
               UnboundedSubstitution);
}

TEST(SubstituteLimit, CommutesWithAddAndScale) {
  Vars v{{"x1", 3}, {"x2", 3}};
  auto a = finite_series(v, {{{1, 0}, CycNum(2)}, {{-2, 3}, CycNum(Rat(1, 3))}, {{4, 6}, root_of_unity(3, 1)}});
  auto b = finite_series(v, {{{-1, 0}, CycNum(5)}, {{2, 9}, CycNum(-1)}});
  Vars o{{"x2", 3}, {"x0", 1}};
  auto w = box({{-12, 12}, {0, 4}});
  auto lhs = substitute_limit(add(a, b), "x1", 2, "x2", "x0");
  auto rhs = add(substitute_limit(a, "x1", 2, "x2", "x0"), substitute_limit(b, "x1", 2, "x2", "x0"));
  auto r = compare_on(lhs, rhs, w, "sub-add", "");
  EXPECT_TRUE(r.ok()) << r.witness;
  CycNum k = root_of_unity(3, 2) + CycNum(Rat(1, 7));
  auto r2 = compare_on(substitute_limit(scale(k, a), "x1", 2, "x2", "x0"),
                       scale(k, substitute_limit(a, "x1", 2, "x2", "x0")), w, "sub-scale", "");
  EXPECT_TRUE(r2.ok()) << r2.witness;
}

TEST(ProjectIntegral, Examples) {
  Vars v{{"x", 2}};
  auto a = exact(v, {{{1}, CycNum(1)}, {{2}, CycNum(1)}});
  EXPECT_EQ(to_text(project_integral(a, "x", 0)), "(1)\t1/1\n");
  EXPECT_EQ(to_text(project_integral(a, "x", 1)), "(1/2)\t1/1\n");
}

TEST(ProjectIntegral, MatchesAveraging) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(-9, 9), c(-4, 4);
  Vars v{{"x", 3}, {"y", 1}};
  for (int t = 0; t < 5; ++t) {
    std::map<Exp, CycNum> terms;
    for (int i = 0; i < 8; ++i) terms[{e(rng), e(rng) / 3}] = CycNum(Rat(c(rng), 1 + std::abs(c(rng))));
    auto a = finite_series(v, terms);
    for (int q = 0; q < 3; ++q) {
      Lazy<CycNum> avg = scale(CycNum(0), a);
      for (int r = 0; r < 3; ++r) avg = add(avg, scale(root_of_unity(3, -q * r), rotate(a, "x", r)));
      avg = scale(CycNum(Rat(1, 3)), avg);
      auto rep = compare_on(project_integral(a, "x", q), avg, radius_box(v, 4), "avg", "");
      EXPECT_TRUE(rep.ok()) << rep.witness;
    }
  }
}

TEST(DeltaIdentities, FractionalAverage) {
  for (int p = 1; p <= 3; ++p) {
    auto r = verify_delta_identity_1(p, 3);
    EXPECT_TRUE(r.ok()) << r.witness;
  }
}

TEST(DeltaIdentities, FractionalShift) {
  for (int p = 1; p <= 3; ++p)
    for (int r = 0; r < p; ++r) {
      auto rep = verify_delta_identity_2(p, r, 3);
      EXPECT_TRUE(rep.ok()) << rep.witness;
    }
}

TEST(DeltaIdentities, WrongRootFails) {
  // pairing w^r with w^r instead of w^-r breaks the identity for p = 3
  Vars v{{"x0", 1}, {"x1", 3}, {"x2", 3}};
  auto lhs = mul(monomial(v, {0, 0, -3}), delta_binomial(v, "x1", 1, "x0", -1, "x2", 1, 1, 3));
  auto rhs = mul(monomial(v, {0, -3, 0}), delta_binomial(v, "x2", 1, "x0", 1, "x1", 1, 1, 3));
  EXPECT_FALSE(compare_on(lhs, rhs, radius_box(v, 2), "neg", "").ok());
}

TEST(DeltaIdentities, ThreeTerm) {
  auto r = verify_delta_three_term(3);
  EXPECT_TRUE(r.ok()) << r.witness;
}

TEST(Convention, DirectionSensitive) {
  Vars v{{"x1", 1}, {"x2", 1}};
  auto a = binom_expand(v, "x1", "x2", Rat(-1), 1, -1);  // (x1 - x2)^-1
  auto b = binom_expand(v, "x2", "x1", Rat(-1), -1, 1);  // (-x2 + x1)^-1
  auto diff = add(a, scale(CycNum(-1), b));
  auto d = mul(monomial(v, {-1, 0}), delta_series(v, "x2", "x1", 0, 1));
  auto w = radius_box(v, 4);
  auto r = compare_on(diff, d, w, "conv", "");
  EXPECT_TRUE(r.ok()) << r.witness;
  EXPECT_FALSE(materialize(diff, w).terms.empty());
}

TEST(Text, RoundTrip) {
  Vars v{{"x", 3}, {"y", 1}};
  auto a = exact(v, {{{1, -2}, root_of_unity(3, 1) + CycNum(Rat(1, 2))}, {{-4, 0}, CycNum(Rat(-7, 3))}});
  std::string txt = to_text(a);
  EXPECT_EQ(txt, "(-4/3,0)\t-7/3\n(1/3,-2)\t1/2 1/1\n");
  EXPECT_EQ(terms_from_text(v, txt, 3), a.terms);
}
