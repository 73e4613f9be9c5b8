#pragma once

#include <functional>
#include <string>
#include <vector>

#include "twh/dplus.hpp"
#include "twh/twist.hpp"

namespace twh {

// Report-returning checks at the granularity the driver and the acceptance run use.
// Weights and radii are in natural units unless the name says _num.

// [L(m), L(n)] = (m-n) L(m+n) + d (m^3-m)/12 delta as exact matrices; untwisted through
// virasoro_mode, twisted through the pairing map on S[nu]
Report check_virasoro_matrices(const Heis& h, bool twisted, int64_t max_mode, int64_t max_weight_num);

// two module maps agree on all algebra monomials of weight <= alg_weight, N in [-max_mode, max_mode],
// w in the pieces of S[nu] up to piece_weight_num
Report check_maps_agree(const Heis& h, const VertexMap& a, const VertexMap& b, const std::string& id,
                        int64_t alg_weight, int64_t max_mode, int64_t piece_weight_num);

// pairing and recursive modes unchanged under every reordering of factor lists of length <= max_j
Report check_permutations(const Heis& h, const RecursiveMap& rec, int max_j, int64_t max_mode,
                          int64_t piece_weight_num);

// g symmetry, extended identity, vanishing when untwisted, and the series oracle for m, n <= oracle_max
Report check_g_laws(const Heis& h, int64_t max_mn, int64_t oracle_max);

// e^Delta_x omega = omega + d/16 x^-2 (p = 2, nu = -1), Delta_x = 0 untwisted,
// and L_M(0) on the twisted vacuum
Report check_delta_x(const Heis& h, int64_t max_weight);

// smallest k for (gen a, gen b) on the vacuum
Report check_generator_comm(const Context& c, const Heis& h, int a, int b, int64_t radius);

// D+ symbolic side
Report check_closure(int64_t max_mode, int max_r);
Report check_pure_monomial(int max_r, int64_t max_m);
Report check_virasoro_central(int64_t max_m);

// rho([a,b]) = [rho(a), rho(b)] over L-bar generators |m|,|n| <= max_mode, r, s <= max_r
Report check_rep_generators(const Heis& h, bool twisted, int64_t max_mode, int max_r, int64_t max_weight_num);

// twisted n = 0 correction against the Bernoulli formula, and the p = 1 zeta shifts
Report check_corrections(const Heis& h, int max_r);

// sample vectors used by the axiom suites
FockVector generator(int idx, int64_t n = 1);
std::vector<int> paired_indices(const Heis& h);  // (a, b) with <e_a, e_b> != 0, flattened

// one named check, ready to run on a worker
struct Task {
  std::string id;
  std::function<Report()> run;
};

// run tasks on up to jobs threads; results come back in task order
std::vector<Report> run_tasks(const std::vector<Task>& tasks, int jobs);

}  // namespace twh
