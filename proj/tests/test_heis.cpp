#include <gtest/gtest.h>

#include "twh/heis.hpp"

using namespace twh;

namespace {

Setup custom(int d, Matrix<Rat> gram, Matrix<Rat> nu, int p) {
  Setup s;
  s.d = d;
  s.gram = std::move(gram);
  s.nu = std::move(nu);
  s.p = p;
  return s;
}

Matrix<CycNum> cyc_identity(int d) { return Matrix<CycNum>::identity(d); }

}  // namespace

TEST(Setup, Dims) {
  EXPECT_EQ(make_setup(preset("identity", 1)).eig.dims, (std::vector<int>{1}));
  EXPECT_EQ(make_setup(preset("neg1", 1)).eig.dims, (std::vector<int>{0, 1}));
  EXPECT_EQ(make_setup(preset("cyclic", 3)).eig.dims, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(make_setup(preset("cyclic", 4)).eig.dims, (std::vector<int>{1, 1, 1, 1}));
}

TEST(Setup, Errors) {
  Matrix<Rat> one = Matrix<Rat>::identity(2);
  EXPECT_THROW(make_setup(custom(2, Matrix<Rat>({{1, 1}, {0, 1}}), one, 1)), NotSymmetric);
  EXPECT_THROW(make_setup(custom(2, Matrix<Rat>({{1, 1}, {1, 1}}), one, 1)), Degenerate);
  EXPECT_THROW(make_setup(custom(2, one, Matrix<Rat>({{2, 0}, {0, 1}}), 1)), NotIsometry);
  EXPECT_THROW(make_setup(custom(2, one, Matrix<Rat>({{0, 1}, {1, 0}}), 3)), WrongPeriod);
  // -1 has period 2, so p = 4 is accepted unless strict
  EXPECT_NO_THROW(make_setup(custom(2, one, Rat(-1) * one, 4)));
  EXPECT_THROW(make_setup(custom(2, one, Rat(-1) * one, 4), true), WrongPeriod);
  EXPECT_THROW(preset("nope", 2), SetupError);
}

TEST(Setup, NegOneKeepsStandardBasis) {
  auto h = make_setup(preset("neg1", 3));
  EXPECT_EQ(h.eig.basis, cyc_identity(3));
  EXPECT_EQ(h.eig.cls, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(h.eig.pair, cyc_identity(3));
}

class Eigen : public ::testing::TestWithParam<Setup> {};

TEST_P(Eigen, Projections) {
  auto h = make_setup(GetParam());
  const int p = h.setup.p, d = h.setup.d;
  Matrix<CycNum> sum(d, d);
  for (int r = 0; r < p; ++r) {
    sum = sum + h.eig.proj[r];
    for (int s = 0; s < p; ++s) {
      Matrix<CycNum> prod = h.eig.proj[r] * h.eig.proj[s];
      EXPECT_EQ(prod, r == s ? h.eig.proj[r] : Matrix<CycNum>(d, d)) << r << " " << s;
    }
  }
  EXPECT_EQ(sum, cyc_identity(d));
  int total = 0;
  for (int k : h.eig.dims) total += k;
  EXPECT_EQ(total, d);
}

TEST_P(Eigen, EigenvectorsAndBlocks) {
  auto h = make_setup(GetParam());
  const int p = h.setup.p, d = h.setup.d;
  Matrix<CycNum> nu = to_cyc(h.setup.nu);
  Matrix<CycNum> image = nu * h.eig.basis;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i) EXPECT_EQ(image(i, k), CycNum::root(p, h.eig.cls[k]) * h.eig.basis(i, k));
  EXPECT_EQ(h.eig.basis.rank(), static_cast<size_t>(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if ((h.eig.cls[a] + h.eig.cls[b]) % p != 0) EXPECT_TRUE(h.eig.pair(a, b).is_zero());
  EXPECT_EQ(h.eig.pair * h.eig.pair_inv, cyc_identity(d));
}

INSTANTIATE_TEST_SUITE_P(Presets, Eigen,
                         ::testing::Values(preset("identity", 2), preset("neg1", 2), preset("cyclic", 2),
                                           preset("cyclic", 3), preset("cyclic", 4),
                                           custom(2, Matrix<Rat>({{2, 1}, {1, 2}}),
                                                  Matrix<Rat>({{0, 1}, {1, 0}}), 2)));

TEST(ApplyMode, Examples) {
  auto h = make_setup(preset("identity", 1));
  FockVector vac = h.V.vacuum();
  FockVector v = apply_mode(h.V, 0, Rat(1), apply_mode(h.V, 0, Rat(-1), vac));
  EXPECT_EQ(v, vac);
  for (int n = 0; n < 3; ++n) EXPECT_TRUE(apply_mode(h.V, 0, Rat(n), vac).is_zero());

  auto t = make_setup(preset("neg1", 1));
  FockVector tv = t.M.vacuum();
  FockVector r = apply_mode(t.M, 0, Rat(1, 2), apply_mode(t.M, 0, Rat(-1, 2), tv));
  EXPECT_EQ(r, CycNum(Rat(1, 2)) * tv);
  // integral modes do not exist on the -1 eigenspace
  EXPECT_TRUE(apply_mode(t.M, 0, Rat(-1), tv).is_zero());
  EXPECT_THROW(apply_mode(t.M, 0, Rat(-1, 3), tv), SectorMismatch);
  EXPECT_THROW(apply_mode(h.V, 0, Rat(-1, 2), vac), SectorMismatch);
}

TEST(ApplyMode, CutIsEnforced) {
  auto h = make_setup(preset("identity", 1, 2));
  FockVector v = apply_mode(h.V, 0, Rat(-2), h.V.vacuum());
  EXPECT_THROW(apply_mode(h.V, 0, Rat(-1), v), WeightOverflow);
  EXPECT_NO_THROW(apply_mode(h.V.with_cut(kNoCut), 0, Rat(-1), v));
  EXPECT_THROW(graded_basis(h.V, 3), WeightOverflow);
}

TEST(NormalOrder, Examples) {
  ModeOp a = normal_order({{0, Rat(1)}, {1, Rat(-1)}});
  ASSERT_EQ(a.factors.size(), 2u);
  EXPECT_EQ(a.factors[0].idx, 1);
  EXPECT_EQ(a.factors[1].idx, 0);
  ModeOp b = normal_order({{0, Rat(-1)}, {1, Rat(-2)}});
  EXPECT_EQ(b.factors[0].n, Rat(-1));
  EXPECT_EQ(b.factors[1].n, Rat(-2));
  ModeOp c = normal_order({{0, Rat(1, 2)}, {1, Rat(-1, 2)}});
  EXPECT_EQ(c.factors[0].n, Rat(-1, 2));
  EXPECT_EQ(c.factors[1].n, Rat(1, 2));

  // :a(1)a(-1): kills the vacuum; the unordered product does not
  auto h = make_setup(preset("identity", 1));
  EXPECT_TRUE(apply(h.V, normal_order({{0, Rat(1)}, {0, Rat(-1)}}), h.V.vacuum()).is_zero());
  ModeOp raw;
  raw.factors = {{0, Rat(1)}, {0, Rat(-1)}};
  EXPECT_EQ(apply(h.V, raw, h.V.vacuum()), h.V.vacuum());
}

TEST(GradedBasis, Examples) {
  auto h = make_setup(preset("identity", 1, 8));
  auto b2 = graded_basis(h.V, 2);
  ASSERT_EQ(b2.size(), 2u);
  EXPECT_EQ(monomial_str(b2[0], 1), "a0(-2)");
  EXPECT_EQ(monomial_str(b2[1], 1), "a0(-1) a0(-1)");
  EXPECT_EQ(graded_basis(h.V, 4).size(), 5u);

  auto t = make_setup(preset("neg1", 1, 2));
  auto b = graded_basis(t.M, 3);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(monomial_str(b[0], 2), "a0(-3/2)");
  EXPECT_EQ(monomial_str(b[1], 2), "a0(-1/2) a0(-1/2) a0(-1/2)");
}

TEST(GradedBasis, PartitionNumbers) {
  auto h = make_setup(preset("identity", 1, 8));
  const size_t partitions[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int w = 0; w <= 8; ++w) EXPECT_EQ(graded_basis(h.V, w).size(), partitions[w]) << w;
}

TEST(GradedBasis, SortedAndHomogeneous) {
  auto h = make_setup(preset("cyclic", 3, 2));
  for (int64_t w = 0; w <= 6; ++w) {
    auto b = graded_basis(h.M, w);
    EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
    for (const auto& m : b) {
      EXPECT_EQ(monomial_weight(m), w);
      EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
      for (const auto& x : m) EXPECT_TRUE(h.M.allowed(x.idx, x.n));
    }
  }
  // one class per residue: counts are partitions of w/3 into parts 1/3, 2/3, 1, ...
  EXPECT_EQ(graded_basis(h.M, 3).size(), 3u);
}

class Relation : public ::testing::TestWithParam<Setup> {};

TEST_P(Relation, Heisenberg) {
  auto h = make_setup(GetParam());
  for (const FockSpace* sp : {&h.V, &h.M}) {
    const int den = sp->den;
    auto basis = basis_up_to(sp->with_cut(kNoCut), sp->cut);
    FockSpace big = sp->with_cut(kNoCut);
    for (int a = 0; a < sp->d(); ++a)
      for (int b = 0; b < sp->d(); ++b)
        for (int64_t m = -3 * den; m <= 3 * den; ++m)
          for (int64_t n = -3 * den; n <= 3 * den; ++n) {
            if (!sp->allowed(a, m) || !sp->allowed(b, n)) continue;
            CycNum c = (m + n == 0) ? sp->pair(a, b) * CycNum(Rat(m, den)) : CycNum(0);
            for (const auto& mono : basis) {
              FockVector w = FockVector::basis(mono, den);
              FockVector lhs = apply_mode(big, a, m, apply_mode(big, b, n, w)) -
                               apply_mode(big, b, n, apply_mode(big, a, m, w));
              ASSERT_EQ(lhs, c * w) << a << " " << b << " " << m << " " << n << " " << monomial_str(mono, den);
            }
          }
  }
}

INSTANTIATE_TEST_SUITE_P(Presets, Relation,
                         ::testing::Values(preset("identity", 2, 3), preset("neg1", 2, 3), preset("cyclic", 3, 2),
                                           custom(2, Matrix<Rat>({{2, 1}, {1, 2}}),
                                                  Matrix<Rat>({{0, 1}, {1, 0}}), 2)));
