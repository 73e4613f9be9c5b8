#include <gtest/gtest.h>

#include "twh/dplus.hpp"
#include "twh/twist.hpp"

using namespace twh;

namespace {

DPoly D(std::initializer_list<int> cs) {
  DPoly f;
  for (int c : cs) f.push_back(Rat(c));
  return poly_trim(f);
}

DiffOp op(int64_t m, DPoly f, Rat c = Rat(0)) {
  DiffOp a;
  a.terms[m] = std::move(f);
  a.central = c;
  a.normalize();
  return a;
}

Rat central_of(const DiffOp& a) { return expand_in_Lbar(a).central; }

}  // namespace

TEST(Symbols, Generators) {
  for (int64_t n = -3; n <= 3; ++n) EXPECT_EQ(L_symbol(n, 0), op(n, D({0, -1})));
  // L_n^(1) = t^n (D+n) D^2
  EXPECT_EQ(L_symbol(2, 1), op(2, D({0, 0, 2, 1})));
  EXPECT_EQ(Lbar_symbol(0, 0), op(0, D({0, -1}), Rat(-1, 24)));
  EXPECT_EQ(Lbar_symbol(0, 1), op(0, D({0, 0, 0, 1}), Rat(-1, 240)));
  EXPECT_EQ(Lbar_symbol(1, 1), L_symbol(1, 1));
}

TEST(Bracket, Virasoro) {
  DiffOp b = bracket(L_symbol(2, 0), L_symbol(-2, 0));
  EXPECT_EQ(b, Rat(4) * L_symbol(0, 0) + op(0, {}, Rat(1, 2)));
  for (int64_t m = -4; m <= 4; ++m)
    for (int64_t n = -4; n <= 4; ++n) {
      DiffOp want = Rat(m - n) * L_symbol(m + n, 0);
      if (m + n == 0) want.central = Rat(m * m * m - m, 12);
      EXPECT_EQ(bracket(L_symbol(m, 0), L_symbol(n, 0)), want) << m << " " << n;
    }
}

TEST(Bracket, AntisymmetryAndJacobi) {
  std::vector<DiffOp> xs;
  for (int64_t m = -2; m <= 2; ++m)
    for (int r = 0; r <= 2; ++r) xs.push_back(Lbar_symbol(m, r));
  xs.push_back(op(1, D({1, -2, 3})));
  for (const auto& a : xs) {
    EXPECT_TRUE(bracket(a, a).is_zero());
    for (const auto& b : xs) EXPECT_EQ(bracket(a, b), Rat(-1) * bracket(b, a));
  }
  auto jac = [](const DiffOp& a, const DiffOp& b, const DiffOp& c) {
    return bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
  };
  EXPECT_TRUE(jac(L_symbol(1, 0), L_symbol(-1, 1), L_symbol(0, 1)).is_zero());
  for (size_t i = 0; i < xs.size(); i += 2)
    for (size_t j = 1; j < xs.size(); j += 3)
      for (size_t k = 0; k < xs.size(); k += 4) EXPECT_TRUE(jac(xs[i], xs[j], xs[k]).is_zero());
}

TEST(Expansion, UnitVectorsAndErrors) {
  for (int64_t k = -3; k <= 3; ++k)
    for (int i = 0; i <= 3; ++i) {
      LbarExpansion e = expand_in_Lbar(Lbar_symbol(k, i));
      std::vector<Rat> unit(i + 1, Rat(0));
      unit[i] = Rat(1);
      EXPECT_EQ(e.coeffs[k], unit);
      EXPECT_TRUE(e.central.is_zero());
    }
  EXPECT_THROW(expand_in_Lbar(op(0, D({0, 0, 1}))), NotInSubalgebra);
  EXPECT_THROW(expand_in_Lbar(op(2, D({1}))), NotInSubalgebra);
  // t^1 (D+1) D^2 - D^1 ... not in the span: D^3 alone at k = 1
  EXPECT_THROW(expand_in_Lbar(op(1, D({0, 0, 0, 1}))), NotInSubalgebra);
}

TEST(Expansion, Closure) {
  for (int r = 0; r <= 3; ++r)
    for (int s = 0; s <= 3; ++s)
      for (int64_t m = -4; m <= 4; ++m)
        for (int64_t n = -4; n <= 4; ++n)
          EXPECT_NO_THROW(expand_in_Lbar(bracket(Lbar_symbol(m, r), Lbar_symbol(n, s)))) << r << s << m << n;
  for (int64_t m = -4; m <= 4; ++m)
    for (int64_t n = -4; n <= 4; ++n) {
      if (m + n == 0 || m == n) continue;
      LbarExpansion e = expand_in_Lbar(bracket(Lbar_symbol(m, 0), Lbar_symbol(n, 0)));
      EXPECT_EQ(e.coeffs[m + n], std::vector<Rat>{Rat(m - n)});
      EXPECT_TRUE(e.central.is_zero());
    }
}

TEST(Expansion, PureMonomialCentral) {
  for (int r = 0; r <= 2; ++r)
    for (int s = 0; s <= 2; ++s)
      for (int64_t m = 1; m <= 5; ++m)
        EXPECT_EQ(central_of(bracket(Lbar_symbol(m, r), Lbar_symbol(-m, s))), pure_monomial_central(r, s, m));
  // (3!)^2 / (2 7!) 2^7
  EXPECT_EQ(pure_monomial_central(1, 1, 2), Rat(16, 35));
  for (int64_t m = 1; m <= 5; ++m) {
    EXPECT_EQ(bracket(L_symbol(m, 0), L_symbol(-m, 0)).central, Rat(m * m * m - m, 12));
    EXPECT_EQ(central_of(bracket(Lbar_symbol(m, 0), Lbar_symbol(-m, 0))), Rat(m * m * m, 12));
  }
}

TEST(Corrections, ZetaAndBernoulli) {
  EXPECT_EQ(zeta_negative(1), Rat(-1, 12));
  EXPECT_EQ(zeta_negative(3), Rat(1, 120));
  EXPECT_EQ(zeta_negative(5), Rat(-1, 252));
  for (int r = 0; r <= 4; ++r) {
    Rat lhs = lbar_shift(r);
    Rat rhs = Rat(r % 2 ? 1 : -1) / Rat(4 * (r + 1)) * bernoulli_poly(2 * (r + 1), Rat(0));
    EXPECT_EQ(lhs, rhs) << r;
    EXPECT_EQ(correction({1}, 1, r, r), lbar_shift(r));
  }
}

TEST(Corrections, SeriesTwoWays) {
  std::vector<std::pair<std::vector<int>, int>> cases{{{1}, 1}, {{3}, 1}, {{0, 1}, 2}, {{1, 2}, 2}, {{1, 1, 1}, 3},
                                                      {{0, 2, 2}, 3}, {{1, 1, 1, 1}, 4}};
  for (const auto& [dims, p] : cases) {
    auto a = correction_series(dims, p, 12);
    auto b = correction_series_bernoulli(dims, p, 12);
    EXPECT_EQ(a, b);
    for (int N = 0; N <= 6; ++N)
      for (int r1 = 0; r1 <= N; ++r1)
        EXPECT_EQ(correction(dims, p, r1, N - r1), factorial(N) * Rat((N - r1) % 2 ? -1 : 1) * a[N]);
  }
}

TEST(Corrections, Values) {
  EXPECT_EQ(correction({0, 1}, 2, 0, 0), Rat(1, 48));
  EXPECT_EQ(correction({1}, 1, 0, 0), Rat(-1, 24));
  // (1/8) sum_k B_4(k/3)
  Rat s = bernoulli_poly(4, Rat(0)) + bernoulli_poly(4, Rat(1, 3)) + bernoulli_poly(4, Rat(2, 3));
  EXPECT_EQ(correction({1, 1, 1}, 3, 1, 1), s / Rat(8));
  EXPECT_EQ(correction({1, 1, 1}, 3, 1, 1), Rat(-1, 6480));
}

// ---- representations ----

TEST(Rep, UntwistedVirasoro) {
  for (int d : {1, 2}) {
    auto h = make_setup(preset("identity", d, 8));
    for (int64_t n = -3; n <= 3; ++n)
      for (int64_t w = 0; w <= 4; ++w) {
        if (w - n < 0) continue;
        OperatorSlice a = rep_untwisted(h, n, 0, w);
        OperatorSlice b = virasoro_mode(h.V, n, w);
        Matrix<CycNum> want = b.m;
        if (n == 0) want = want + CycNum(Rat(-d, 24)) * Matrix<CycNum>::identity(b.src.size());
        EXPECT_EQ(a.m, want) << d << " " << n << " " << w;
      }
  }
}

TEST(Rep, VacuumShift) {
  auto h = make_setup(preset("identity", 2, 6));
  for (int r = 0; r <= 3; ++r)
    EXPECT_EQ(rep_apply(h, false, 0, r, r, h.V.vacuum()), CycNum(lbar_shift(r) * Rat(2)) * h.V.vacuum());
}

TEST(Rep, CentralOfL1) {
  // [rho(Lbar_2^(1)), rho(Lbar_-2^(1))] minus rho of the non-central part is 16/35 d
  auto h = make_setup(preset("identity", 1, 8));
  RepCache rc(h, false);
  DiffOp a = Lbar_symbol(2, 1), b = Lbar_symbol(-2, 1);
  DiffOp ab = bracket(a, b);
  LbarExpansion e = expand_in_Lbar(ab);
  DiffOp noncentral;
  for (size_t i = 0; i < e.coeffs[0].size(); ++i) noncentral += e.coeffs[0][i] * Lbar_symbol(0, static_cast<int>(i));
  for (int64_t w = 0; w <= 4; ++w) {
    size_t dim = rc.rho(noncentral, w).cols();
    Matrix<CycNum> ba = w >= 2 ? rc.rho(b, w - 2) * rc.rho(a, w) : Matrix<CycNum>(dim, dim);
    Matrix<CycNum> c = rc.rho(a, w + 2) * rc.rho(b, w) - ba - rc.rho(noncentral, w);
    EXPECT_EQ(c, CycNum(Rat(16, 35)) * Matrix<CycNum>::identity(dim)) << w << "\n" << c.str();
  }
}

TEST(Rep, UntwistedRepresentation) {
  for (int d : {1, 2}) {
    auto h = make_setup(preset("identity", d, 8));
    RepCache rc(h, false);
    for (int64_t m = -2; m <= 2; ++m)
      for (int64_t n = -2; n <= 2; ++n)
        for (int r = 0; r <= 2; ++r)
          for (int s = 0; s <= 2; ++s) {
            Report rep = check_rep_bracket(rc, Lbar_symbol(m, r), Lbar_symbol(n, s), 4);
            ASSERT_TRUE(rep.ok()) << rep.witness;
          }
  }
}

TEST(Rep, TwistedRepresentation) {
  for (auto [name, d] : {std::pair{"neg1", 1}, std::pair{"neg1", 2}, std::pair{"cyclic", 3}}) {
    auto h = make_setup(preset(name, d, 8));
    RepCache rc(h, true);
    int p = h.setup.p;
    for (int64_t m = -2; m <= 2; ++m)
      for (int64_t n = -2; n <= 2; ++n)
        for (int r = 0; r <= 2; ++r)
          for (int s = 0; s <= 2; ++s) {
            Report rep = check_rep_bracket(rc, Lbar_symbol(m, r), Lbar_symbol(n, s), 2 * p);
            ASSERT_TRUE(rep.ok()) << name << " " << rep.witness;
          }
  }
}

TEST(Rep, TwistedCentralCubic) {
  for (auto [name, d] : {std::pair{"neg1", 2}, std::pair{"cyclic", 3}}) {
    auto h = make_setup(preset(name, d, 8));
    RepCache rc(h, true);
    int p = h.setup.p;
    for (int64_t m = 1; m <= 3; ++m) {
      DiffOp a = Lbar_symbol(m, 0), b = Lbar_symbol(-m, 0);
      for (int64_t w = 0; w <= 3 * p; ++w) {
        size_t dim = rc.rho(Lbar_symbol(0, 0), w).cols();
        Matrix<CycNum> ba = w - m * p >= 0 ? rc.rho(b, w - m * p) * rc.rho(a, w) : Matrix<CycNum>(dim, dim);
        Matrix<CycNum> comm = rc.rho(a, w + m * p) * rc.rho(b, w) - ba;
        Matrix<CycNum> c = comm - CycNum(Rat(2 * m)) * rc.rho(Lbar_symbol(0, 0), w);
        EXPECT_EQ(c, CycNum(Rat(d * m * m * m, 12)) * Matrix<CycNum>::identity(c.cols())) << name << m << w;
      }
    }
  }
}

TEST(Rep, TwistedVacuumAndTwistModule) {
  for (int d : {1, 2}) {
    auto h = make_setup(preset("neg1", d, 6));
    FockVector vac = h.M.vacuum();
    EXPECT_EQ(rep_apply(h, true, 0, 0, 0, vac), CycNum(Rat(d, 48)) * vac);
    // L = Lbar + d/24 on the twisted vacuum: d/16
    EXPECT_EQ(vacuum_delta(h, 0), Rat(d, 16));
  }
  for (auto [name, d] : {std::pair{"neg1", 2}, std::pair{"cyclic", 3}}) {
    auto h = make_setup(preset(name, d, 6));
    PairingMap y(h);
    FockVector om = conformal_vector(h.V);
    int p = h.setup.p;
    for (const auto& b : basis_up_to(h.M, 3 * p)) {
      FockVector w = FockVector::basis(b, p);
      for (int64_t n = -3; n <= 3; ++n) {
        FockVector want = y.mode(om, (n + 1) * p, w);
        FockVector got = rep_apply(h, true, n, 0, 0, w);
        if (n == 0) got -= CycNum(lbar_shift(0) * Rat(d)) * w;
        ASSERT_EQ(got, want) << name << " " << n << " " << w.str();
      }
    }
  }
}

TEST(Rep, UntwistedDegeneration) {
  auto h = make_setup(preset("identity", 2, 6));
  for (const auto& b : basis_up_to(h.V, 4)) {
    FockVector w = FockVector::basis(b, 1);
    for (int64_t n = -3; n <= 3; ++n)
      for (int r = 0; r <= 2; ++r) EXPECT_EQ(rep_apply(h, true, n, r, r, w), rep_apply(h, false, n, r, r, w));
  }
}

TEST(Rep, OffDiagonal) {
  auto h = make_setup(preset("cyclic", 3, 6));
  Report t = check_offdiagonal(h, true, 4, 2, 6);
  EXPECT_TRUE(t.ok()) << t.witness;
  auto h2 = make_setup(preset("identity", 2, 6));
  Report u = check_offdiagonal(h2, false, 4, 2, 3);
  EXPECT_TRUE(u.ok()) << u.witness;
}

TEST(Corollary, Matches) {
  auto h2 = make_setup(preset("neg1", 1, 6));
  Report r2 = check_corollary(h2, 10);
  EXPECT_TRUE(r2.ok()) << r2.witness;
  auto h3 = make_setup(preset("cyclic", 3, 6));
  Report r3 = check_corollary(h3, 8);
  EXPECT_TRUE(r3.ok()) << r3.witness;
  auto h1 = make_setup(preset("identity", 2, 6));
  for (const auto& c : corollary_closed(h1.eig.dims, 1, 8)) EXPECT_TRUE(c.is_zero());
  for (int k = 0; k <= 4; ++k) EXPECT_TRUE(vacuum_delta(h1, k).is_zero());
  EXPECT_EQ(corollary_closed(h2.eig.dims, 2, 0)[0], Rat(1, 16));
}
