#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twh/heis.hpp"

namespace twhcli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Budgets {
  int weight_cut = 4;  // largest graded piece touched, natural units
  int window = 3;      // radius of coefficient windows
  int y_order = 8;     // cap for the k / l searches
  int x_order = 10;    // corollary order
  int max_mode = 3;
  int max_r = 2;
};

struct RunConfig {
  std::optional<std::string> preset;
  std::optional<int> d;
  std::optional<int> p;
  std::optional<twh::Matrix<twh::Rat>> gram, nu;
  Budgets budgets;
  std::vector<std::string> suites;
  std::string format = "human";
  int jobs = 1;
  bool timing = true;

  // preset xor explicit matrices, budgets positive; throws ConfigError
  void validate(bool need_setup = true) const;
  bool has_setup() const { return preset || gram || nu; }
  twh::Setup setup() const;
  std::string summary() const;
};

// "[[1, 0], [0, 1/2]]"
twh::Matrix<twh::Rat> parse_matrix(const std::string& text);

// key = value lines, '#' comments; later keys win
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

const std::vector<std::string>& all_suites();

}  // namespace twhcli
