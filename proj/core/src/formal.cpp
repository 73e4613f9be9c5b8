#include "twh/formal.hpp"

#include <chrono>

namespace twh {

namespace {

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Report verify_delta_identity_1(int p, int64_t radius) {
  auto t0 = std::chrono::steady_clock::now();
  Vars v{{"x", p}};
  auto lhs = delta_series(v, "x", "", 0, 1);
  Lazy<CycNum> rhs = scale(CycNum(Rat(0)), lhs);
  for (int r = 0; r < p; ++r) rhs = add(rhs, delta_series(v, "x", "", r, p));
  rhs = scale(CycNum(Rat(1, p)), rhs);
  Report rep = compare_on(lhs, rhs, radius_box(v, radius), "delta-average/p" + std::to_string(p),
                          "delta(x) = (1/p) sum_r delta(w^r x^(1/p))");
  rep.millis = since(t0);
  return rep;
}

Report verify_delta_identity_2(int p, int64_t r, int64_t radius) {
  auto t0 = std::chrono::steady_clock::now();
  Vars v{{"x0", 1}, {"x1", p}, {"x2", p}};
  auto lhs = mul(monomial(v, {0, 0, -p}), delta_binomial(v, "x1", 1, "x0", -1, "x2", 1, r, p));
  auto rhs = mul(monomial(v, {0, -p, 0}), delta_binomial(v, "x2", 1, "x0", 1, "x1", 1, -r, p));
  Report rep = compare_on(lhs, rhs, radius_box(v, radius),
                          "delta-shift/p" + std::to_string(p) + "/r" + std::to_string(r),
                          "x2^-1 delta(w^r ((x1-x0)/x2)^(1/p)) = x1^-1 delta(w^-r ((x2+x0)/x1)^(1/p))");
  rep.millis = since(t0);
  return rep;
}

Report verify_delta_three_term(int64_t radius) {
  auto t0 = std::chrono::steady_clock::now();
  Vars v{{"x0", 1}, {"x1", 1}, {"x2", 1}};
  auto x0inv = monomial(v, {-1, 0, 0});
  auto a = mul(x0inv, delta_binomial(v, "x1", 1, "x2", -1, "x0", 1, 0, 1));
  auto b = mul(x0inv, delta_binomial(v, "x2", 1, "x1", -1, "x0", -1, 0, 1));
  auto rhs = mul(monomial(v, {0, 0, -1}), delta_binomial(v, "x1", 1, "x0", -1, "x2", 1, 0, 1));
  Report rep = compare_on(add(a, scale(CycNum(-1), b)), rhs, radius_box(v, radius), "delta-three-term",
                          "x0^-1 delta((x1-x2)/x0) - x0^-1 delta((x2-x1)/(-x0)) = x2^-1 delta((x1-x0)/x2)");
  rep.millis = since(t0);
  return rep;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::not_found: return "not-found-within-budget";
  }
  return "?";
}

}  // namespace twh
