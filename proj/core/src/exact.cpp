#include "twh/exact.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace twh {

namespace {

std::mutex g_bern_mu;
std::vector<Rat> g_bern{Rat(1)};

Rat binom_int(int n, int k) {
  Rat r(1);
  for (int i = 0; i < k; ++i) r = r * Rat(n - i) / Rat(i + 1);
  return r;
}

}  // namespace

Rat bernoulli_number(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli_number: n < 0");
  std::lock_guard<std::mutex> lk(g_bern_mu);
  while (static_cast<int>(g_bern.size()) <= n) {
    int m = static_cast<int>(g_bern.size());
    // sum_{k=0}^{m} C(m+1,k) B_k = 0
    Rat s(0);
    for (int k = 0; k < m; ++k) s += binom_int(m + 1, k) * g_bern[k];
    g_bern.push_back(-s / Rat(m + 1));
  }
  return g_bern[n];
}

Rat bernoulli_poly(int n, const Rat& q) {
  Rat s(0);
  Rat qp(1);
  std::vector<Rat> powers(n + 1);
  for (int i = 0; i <= n; ++i) {
    powers[i] = qp;
    qp *= q;
  }
  for (int k = 0; k <= n; ++k) {
    Rat b = bernoulli_number(k);
    if (b.is_zero()) continue;
    s += binom_int(n, k) * b * powers[n - k];
  }
  return s;
}

Rat zeta_negative(int m) {
  if (m < 1) throw std::invalid_argument("zeta_negative: m < 1");
  return -bernoulli_number(m + 1) / Rat(m + 1);
}

CycNum root_of_unity(int p, int64_t k) {
  if (p < 1) throw std::invalid_argument("root_of_unity: p < 1");
  return CycNum::root(p, k);
}

Rat binom_general(const Rat& a, int64_t k) {
  if (k < 0) throw std::invalid_argument("binom_general: k < 0");
  Rat r(1);
  for (int64_t i = 0; i < k; ++i) {
    r *= a - Rat(i);
    r /= Rat(i + 1);
  }
  return r;
}

}  // namespace twh
