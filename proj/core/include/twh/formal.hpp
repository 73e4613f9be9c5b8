#pragma once

#include "twh/report.hpp"
#include "twh/series.hpp"

namespace twh {

// delta(x) = (1/p) sum_r delta(w^r x^(1/p))
Report verify_delta_identity_1(int p, int64_t radius);
// x2^-1 delta(w^r ((x1-x0)/x2)^(1/p)) = x1^-1 delta(w^-r ((x2+x0)/x1)^(1/p))
Report verify_delta_identity_2(int p, int64_t r, int64_t radius);
// x0^-1 delta((x1-x2)/x0) - x0^-1 delta((x2-x1)/(-x0)) = x2^-1 delta((x1-x0)/x2)
Report verify_delta_three_term(int64_t radius);

}  // namespace twh
