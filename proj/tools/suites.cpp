#include "suites.hpp"

#include <algorithm>
#include <set>

#include "twh/formal.hpp"

namespace twhcli {

using namespace twh;

Env::Env(const Setup& s)
    : h(make_setup(s)), y_alg(h.V.with_cut(kNoCut)), y_tw(h), y_rec(h), y_delta(h) {
  untwisted.ym = &y_alg;
  untwisted.yv = &y_alg;
  untwisted.cls.assign(h.setup.d, 0);
  untwisted.p = 1;
  twisted = twisted_context(h, y_tw, y_alg);
}

bool needs_setup(const std::string& suite) { return suite != "dplus-abstract" && suite != "delta-identities"; }

namespace {

std::string label(const FockVector& v, const std::string& fallback) {
  if (v.terms.size() != 1) return fallback;
  const auto& m = v.terms.begin()->first;
  return m.empty() ? "vac" : monomial_str(m, v.den);
}

// lowest nonzero piece of S[nu]
FockVector first_excited(const Heis& h) {
  FockSpace sp = h.M.with_cut(kNoCut);
  for (int64_t k = 1;; ++k) {
    auto b = graded_basis(sp, k);
    if (!b.empty()) return FockVector::basis(b.front(), sp.den);
  }
}

struct Builder {
  std::string suite;
  std::vector<SuiteTask> out;
  void add(std::string id, std::function<Report()> f) {
    out.push_back({suite, Task{id, [id, f = std::move(f)] {
                                 Report r = f();
                                 r.id = id;
                                 return r;
                               }}});
  }
};

}  // namespace

std::vector<SuiteTask> build_tasks(const std::string& suite, const Env* env, const RunConfig& c) {
  const Budgets& b = c.budgets;
  const int64_t R = b.window;
  Builder B{suite, {}};

  if (suite == "delta-identities") {
    std::set<int> ps{1, 2, 3};
    if (env) ps.insert(env->h.setup.p);
    for (int p : ps) {
      B.add("delta_identity_1(p=" + std::to_string(p) + ")", [=] { return verify_delta_identity_1(p, R); });
      for (int r = 0; r < p; ++r)
        B.add("delta_identity_2(p=" + std::to_string(p) + ",r=" + std::to_string(r) + ")",
              [=] { return verify_delta_identity_2(p, r, R); });
    }
    B.add("delta_three_term", [=] { return verify_delta_three_term(R); });
    return B.out;
  }

  if (suite == "dplus-abstract") {
    B.add("dplus_closure", [=] { return check_closure(b.max_mode, b.max_r); });
    B.add("pure_monomial_central", [=] { return check_pure_monomial(b.max_r, std::max(5, b.max_mode)); });
    B.add("virasoro_central", [=] { return check_virasoro_central(std::max(5, b.max_mode)); });
    return B.out;
  }

  if (!env) throw std::logic_error("suite " + suite + " needs a setup");
  const Heis& h = env->h;
  const int p = h.setup.p;
  std::vector<int> pairs = paired_indices(h);
  const int a = pairs.at(0), bb = pairs.at(1);
  FockVector ga = generator(a), gb = generator(bb);
  FockVector om = conformal_vector(h.V);

  if (suite == "untwisted-axioms") {
    Context ctx = env->untwisted;
    ctx.budget = b.y_order;
    FockVector vac = h.V.vacuum();
    std::vector<FockVector> us{ga, om}, ws{vac, ga};
    for (const auto& u : us)
      for (const auto& w : ws) {
        std::string tag = "(" + label(u, "omega") + "," + label(gb, "v") + "," + label(w, "w") + ")";
        for (const char* id : {"jacobi", "weak_comm", "weak_assoc", "mwa", "varwass"})
          B.add(std::string(id) + tag, [=] { return check_identity(id, ctx, u, gb, w, R); });
        B.add("L-1_bracket(" + label(u, "omega") + "," + label(w, "w") + ")",
              [=] { return check_l_minus_one(ctx, u, w, R); });
      }
    for (const auto& u : us)
      B.add("skew(" + label(u, "omega") + "," + label(gb, "v") + ")", [=] { return check_skew(ctx, u, gb, R); });
    B.add("virasoro_untwisted", [=, &h] { return check_virasoro_matrices(h, false, b.max_mode, b.weight_cut); });
    return B.out;
  }

  if (suite == "twisted-axioms") {
    Context ctx = env->twisted;
    ctx.budget = b.y_order;
    FockVector vac = h.M.vacuum(), w1 = first_excited(h);
    std::vector<FockVector> us{ga};
    if (a != bb) us.push_back(gb);
    for (const auto& u : us)
      for (const auto& w : {vac, w1}) {
        std::string tag = "(" + label(u, "u") + "," + label(gb, "v") + "," + label(w, "w") + ")";
        for (const char* id : {"jacobi", "weak_comm", "weak_assoc", "varwass"})
          B.add(std::string(id) + tag, [=] { return check_identity(id, ctx, u, gb, w, R); });
        for (int64_t s : {0, 1})
          B.add("mwa_s" + std::to_string(s) + tag, [=] { return check_mwa(ctx, u, gb, w, R, s); });
      }
    for (int i = 0; i < std::min(h.setup.d, 3); ++i) {
      FockVector g = generator(i);
      for (int64_t s = 0; s < p; ++s)
        B.add("transnu(" + label(g, "u") + ",s=" + std::to_string(s) + ")",
              [=] { return check_transnu(ctx, g, w1, s, R); });
      B.add("mode_support(" + label(g, "u") + ")", [=] { return check_mode_support(ctx, g, w1, R); });
    }
    B.add("jacobi_fixed(omega," + label(ga, "v") + ",vac)", [=] { return check_jacobi_fixed(ctx, om, ga, vac, R); });
    B.add("generator_weak_comm(" + label(ga, "u") + "," + label(gb, "v") + ")",
          [=, &h] { return check_generator_comm(ctx, h, a, bb, R); });
    B.add("virasoro_twisted", [=, &h] { return check_virasoro_matrices(h, true, b.max_mode, int64_t(b.weight_cut) * p); });
    B.add("delta_x", [=, &h] { return check_delta_x(h, b.weight_cut); });
    B.add("g_laws", [=, &h] { return check_g_laws(h, 2 * b.max_mode, b.max_mode); });
    return B.out;
  }

  if (suite == "construction-equivalence") {
    int64_t pieces = int64_t(std::min(b.weight_cut, 3)) * p;
    B.add("pairing_vs_recursive", [=] {
      return check_maps_agree(env->h, env->y_tw, env->y_rec, "pairing_vs_recursive", b.weight_cut, b.max_mode, pieces);
    });
    B.add("pairing_vs_delta", [=] {
      return check_maps_agree(env->h, env->y_tw, env->y_delta, "pairing_vs_delta", b.weight_cut, b.max_mode, pieces);
    });
    B.add("factor_order", [=] { return check_permutations(env->h, env->y_rec, 3, b.max_mode, pieces); });
    return B.out;
  }

  if (suite == "dplus-representations") {
    int64_t tw = int64_t(std::min(b.weight_cut, 3)) * p;
    B.add("rep_untwisted", [=, &h] { return check_rep_generators(h, false, b.max_mode, b.max_r, b.weight_cut); });
    if (p > 1) B.add("rep_twisted", [=, &h] { return check_rep_generators(h, true, b.max_mode, b.max_r, tw); });
    B.add("offdiagonal_untwisted", [=, &h] { return check_offdiagonal(h, false, b.max_r + 1, b.max_mode, 2); });
    if (p > 1) B.add("offdiagonal_twisted", [=, &h] { return check_offdiagonal(h, true, b.max_r + 1, b.max_mode, 2 * p); });
    B.add("corrections", [=, &h] { return check_corrections(h, b.max_r + 1); });
    return B.out;
  }

  if (suite == "corollary") {
    B.add("corollary(x^" + std::to_string(b.x_order) + ")", [=, &h] { return check_corollary(h, b.x_order); });
    return B.out;
  }

  throw ConfigError("unknown suite '" + suite + "'");
}

}  // namespace twhcli
