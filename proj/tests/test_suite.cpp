#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "twh/suite.hpp"

using namespace twh;

namespace {

// off by one vacuum term in a single mode
class Shifted : public VertexMap {
 public:
  explicit Shifted(const VertexMap& y, int64_t n) : y_(y), n_(n) {}
  const FockSpace& module() const override { return y_.module(); }
  FockVector mode(const FockVector& v, int64_t n, const FockVector& w) const override {
    FockVector r = y_.mode(v, n, w);
    return n == n_ && !v.terms.begin()->first.empty() ? r + w : r;
  }

 private:
  const VertexMap& y_;
  int64_t n_;
};

}  // namespace

TEST(Suite, MapsAgreeCatchesADifference) {
  auto h = make_setup(preset("neg1", 1, 6));
  PairingMap y(h);
  Shifted bad(y, 1);
  EXPECT_TRUE(check_maps_agree(h, y, y, "same", 2, 2, 2).ok());
  Report r = check_maps_agree(h, y, bad, "bad", 2, 2, 2);
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.witness.find("N=1/2"), std::string::npos) << r.witness;
}

TEST(Suite, VirasoroMatricesBothSides) {
  auto h = make_setup(preset("cyclic", 3, 6));
  EXPECT_TRUE(check_virasoro_matrices(h, false, 2, 3).ok());
  Report r = check_virasoro_matrices(h, true, 2, 6);
  EXPECT_TRUE(r.ok()) << r.witness;
  EXPECT_NE(r.detail.find("matrix entries"), std::string::npos);
}

TEST(Suite, SymbolicChecks) {
  EXPECT_TRUE(check_closure(2, 2).ok());
  EXPECT_TRUE(check_pure_monomial(1, 3).ok());
  EXPECT_TRUE(check_virasoro_central(4).ok());
}

TEST(Suite, SetupChecks) {
  for (auto [name, d] : {std::pair{"identity", 2}, std::pair{"neg1", 1}, std::pair{"cyclic", 3}}) {
    auto h = make_setup(preset(name, d, 6));
    EXPECT_TRUE(check_g_laws(h, 4, 2).ok()) << name;
    Report dx = check_delta_x(h, 3);
    EXPECT_TRUE(dx.ok()) << name << " " << dx.witness;
    EXPECT_TRUE(check_corrections(h, 2).ok()) << name;
  }
  auto h3 = make_setup(preset("cyclic", 3, 6));
  EXPECT_EQ(check_delta_x(h3, 2).detail, "c = 1/9");
}

TEST(Suite, PairedIndices) {
  auto h = make_setup(preset("cyclic", 3));
  EXPECT_EQ(paired_indices(h), (std::vector<int>{0, 0, 1, 2}));
  auto h2 = make_setup(preset("neg1", 2));
  EXPECT_EQ(paired_indices(h2), (std::vector<int>{0, 0, 1, 1}));
}

TEST(Suite, RunTasksKeepsOrder) {
  std::vector<Task> ts;
  for (int i = 0; i < 20; ++i)
    ts.push_back({"t" + std::to_string(i), [i] {
                    Report r;
                    r.detail = std::to_string(i);
                    if (i == 7) r.fail("seven");
                    return r;
                  }});
  for (int jobs : {1, 4}) {
    auto out = run_tasks(ts, jobs);
    ASSERT_EQ(out.size(), 20u);
    for (int i = 0; i < 20; ++i) {
      EXPECT_EQ(out[i].id, "t" + std::to_string(i));
      EXPECT_EQ(out[i].detail, std::to_string(i));
      EXPECT_EQ(out[i].ok(), i != 7);
    }
  }
}

TEST(Suite, RunTasksRethrows) {
  std::atomic<int> ran{0};
  std::vector<Task> ts{{"a", [&] { ++ran; return Report{}; }},
                       {"b", [&]() -> Report { ++ran; throw WeightOverflow("b"); }},
                       {"c", [&] { ++ran; return Report{}; }}};
  EXPECT_THROW(run_tasks(ts, 2), WeightOverflow);
  EXPECT_EQ(ran.load(), 3);
}
