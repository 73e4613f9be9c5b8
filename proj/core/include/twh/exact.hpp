#pragma once

#include "twh/cyc.hpp"
#include "twh/rat.hpp"

namespace twh {

// B_n = B_n(0), so B_1 = -1/2
Rat bernoulli_number(int n);
Rat bernoulli_poly(int n, const Rat& q);
// zeta(-m) = -B_{m+1}/(m+1), m >= 1
Rat zeta_negative(int m);
CycNum root_of_unity(int p, int64_t k);
// a(a-1)...(a-k+1)/k!
Rat binom_general(const Rat& a, int64_t k);

}  // namespace twh
