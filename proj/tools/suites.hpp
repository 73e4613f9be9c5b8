#pragma once

#include <memory>
#include <string>
#include <vector>

#include "config.hpp"
#include "twh/suite.hpp"

namespace twhcli {

// the maps every suite shares; built once per run
struct Env {
  explicit Env(const twh::Setup& s);
  twh::Heis h;
  twh::NopMap y_alg;  // Y on the algebra
  twh::PairingMap y_tw;
  twh::RecursiveMap y_rec;
  twh::DeltaMap y_delta;
  twh::Context untwisted, twisted;
};

struct SuiteTask {
  std::string suite;
  twh::Task task;
};

// env may be null for symbolic suites
std::vector<SuiteTask> build_tasks(const std::string& suite, const Env* env, const RunConfig& c);

bool needs_setup(const std::string& suite);

}  // namespace twhcli
