#include <gtest/gtest.h>

#include "config.hpp"

using namespace twhcli;
using twh::Rat;

TEST(Config, MatrixLiteral) {
  auto m = parse_matrix("[[1, -1/2], [0,3]]");
  ASSERT_EQ(m.rows(), 2u);
  EXPECT_EQ(m(0, 1), Rat(-1, 2));
  EXPECT_EQ(m(1, 1), Rat(3));
  EXPECT_THROW(parse_matrix("[[1, 2], [3]]"), ConfigError);
  EXPECT_THROW(parse_matrix("[[1, x]]"), ConfigError);
  EXPECT_THROW(parse_matrix("1, 2"), ConfigError);
}

TEST(Config, KeysAndComments) {
  auto c = parse_config("# setup\npreset = cyclic\nd = 3\nwindow = 2  # small\nsuites = corollary, dplus-abstract\n");
  EXPECT_EQ(*c.preset, "cyclic");
  EXPECT_EQ(c.budgets.window, 2);
  EXPECT_EQ(c.suites, (std::vector<std::string>{"corollary", "dplus-abstract"}));
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.setup().p, 3);
  EXPECT_THROW(parse_config("colour = blue\n"), ConfigError);
  EXPECT_THROW(parse_config("window = two\n"), ConfigError);
  EXPECT_THROW(parse_config("just words\n"), ConfigError);
}

TEST(Config, Validation) {
  auto both = parse_config("preset = neg1\ngram = [[1]]\nnu = [[-1]]\n");
  EXPECT_THROW(both.validate(), ConfigError);
  auto none = parse_config("window = 3\n");
  EXPECT_THROW(none.validate(), ConfigError);
  EXPECT_NO_THROW(none.validate(false));
  auto zero = parse_config("preset = neg1\nmax_r = 0\n");
  EXPECT_THROW(zero.validate(), ConfigError);
  auto badsuite = parse_config("preset = neg1\nsuites = everything\n");
  EXPECT_THROW(badsuite.validate(), ConfigError);
}

TEST(Config, ExplicitSetupInfersPeriod) {
  auto c = parse_config("gram = [[1, 0], [0, 1]]\nnu = [[0, 1], [1, 0]]\n");
  twh::Setup s = c.setup();
  EXPECT_EQ(s.p, 2);
  EXPECT_EQ(s.d, 2);
  auto r = parse_config("gram = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]\nnu = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]\n");
  EXPECT_EQ(r.setup().p, 3);
  auto asym = parse_config("gram = [[1, 1], [0, 1]]\nnu = [[1, 0], [0, 1]]\n");
  EXPECT_THROW(twh::make_setup(asym.setup()), twh::NotSymmetric);
}
