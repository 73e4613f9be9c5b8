// one line per acceptance criterion; exit status is the number of failing criteria

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "twh/exact.hpp"
#include "twh/formal.hpp"
#include "twh/suite.hpp"

using namespace twh;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string note;
  void absorb(const Report& r) {
    if (!r.ok() && ok) {
      ok = false;
      note = r.id + ": " + r.witness;
    }
  }
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

struct Setting {
  const char* name;
  int d;
};
const std::vector<Setting> kItem4{{"identity", 1}, {"neg1", 1}, {"neg1", 2}, {"cyclic", 3}};

Heis setup_of(const Setting& s) { return make_setup(preset(s.name, s.d, 8)); }

std::string tag(const Setting& s) { return std::string(s.name) + " d=" + std::to_string(s.d); }

Outcome c1() {
  Outcome o;
  for (int p = 1; p <= 3; ++p) {
    o.absorb(verify_delta_identity_1(p, 3));
    for (int r = 0; r < p; ++r) o.absorb(verify_delta_identity_2(p, r, 3));
  }
  o.absorb(verify_delta_three_term(3));
  return o;
}

Outcome c2() {
  Outcome o;
  for (int d : {1, 2}) o.absorb(check_virasoro_matrices(make_setup(preset("identity", d, 8)), false, 4, 6));
  return o;
}

Outcome c3() {
  Outcome o;
  struct Case {
    Setting s;
    int a, b;
  };
  // cyclic: eigen indices 1 and 2 carry classes 1 and 2 and pair with each other
  for (const auto& [s, a, b] : {Case{{"identity", 1}, 0, 0}, Case{{"neg1", 1}, 0, 0}, Case{{"neg1", 2}, 0, 1},
                                Case{{"cyclic", 3}, 1, 2}, Case{{"cyclic", 3}, 0, 0}}) {
    Heis h = setup_of(s);
    PairingMap y(h);
    NopMap yv(h.V.with_cut(kNoCut));
    Context c = twisted_context(h, y, yv);
    FockVector u = generator(a), v = generator(b);
    Report r = check_weak_comm(c, u, v, h.M.vacuum(), 3);
    if (!h.eig.pair(a, b).is_zero()) {
      r.id = tag(s) + " weak_comm";
      o.absorb(r);
      o.require(r.found == 2, tag(s) + ": minimal k = " + std::to_string(r.found.value_or(-1)));
    } else {
      // <e_a, e_b> = 0 in the neg1 d=2 eigenbasis: then the pair commutes outright
      o.require(r.found == 0, tag(s) + ": orthogonal generators give k = " + std::to_string(r.found.value_or(-1)));
    }
  }
  return o;
}

Outcome c4() {
  Outcome o;
  for (const auto& s : kItem4) {
    Heis h = setup_of(s);
    const int p = h.setup.p;
    PairingMap y(h);
    RecursiveMap rec(h);
    Report r = check_maps_agree(h, y, rec, tag(s) + " pairing_vs_recursive", 4, 3, 3 * p);
    r.id = tag(s) + " pairing_vs_recursive";
    o.absorb(r);
    Report q = check_permutations(h, rec, 3, 3, 3 * p);
    q.id = tag(s) + " factor_order";
    o.absorb(q);
  }
  return o;
}

Outcome c5() {
  Outcome o;
  for (int d : {1, 2, 3}) {
    Heis h = make_setup(preset("neg1", d, 8));
    FockVector om = conformal_vector(h.V);
    XSeries e = exp_delta_x(h, om);
    XSeries want{{0, om}, {-2, CycNum(Rat(d, 16)) * h.V.vacuum()}};
    o.require(e == want, "neg1 d=" + std::to_string(d) + ": exp(Delta_x) omega differs");
    PairingMap y(h);
    FockVector l0 = y.mode(om, 2, h.M.vacuum());
    o.require(l0 == CycNum(Rat(d, 16)) * h.M.vacuum(), "neg1 d=" + std::to_string(d) + ": L_M(0) 1 = " + l0.str());
    o.absorb(check_delta_x(h, 4));
  }
  for (int d : {1, 2}) o.absorb(check_delta_x(make_setup(preset("identity", d, 8)), 4));
  return o;
}

Outcome c6() {
  Outcome o;
  for (const auto& s : {Setting{"neg1", 1}, Setting{"neg1", 2}, Setting{"cyclic", 2}, Setting{"cyclic", 3},
                        Setting{"identity", 2}}) {
    Report r = check_g_laws(setup_of(s), 6, 3);
    r.id = tag(s) + " g_laws";
    o.absorb(r);
  }
  return o;
}

Outcome c7() {
  Outcome o;
  o.absorb(check_pure_monomial(2, 5));
  o.absorb(check_virasoro_central(5));
  return o;
}

Outcome c8() {
  Outcome o;
  for (int d : {1, 2, 3}) {
    Report r = check_rep_generators(make_setup(preset("identity", d, 8)), false, 3, 2, 5);
    r.id = "S d=" + std::to_string(d);
    o.absorb(r);
  }
  for (const auto& s : kItem4) {
    Heis h = setup_of(s);
    if (h.setup.p == 1) continue;
    Report r = check_rep_generators(h, true, 3, 2, 3 * h.setup.p);
    r.id = tag(s) + " twisted";
    o.absorb(r);
  }
  return o;
}

Outcome c9() {
  Outcome o;
  Heis h2 = make_setup(preset("neg1", 1, 8));
  o.require(correction(h2.eig.dims, 2, 0, 0) == Rat(1, 48), "p=2 d=1 r=0: " + correction(h2.eig.dims, 2, 0, 0).str());
  for (const auto& s : kItem4) {
    Report r = check_corrections(setup_of(s), 3);
    r.id = tag(s) + " corrections";
    o.absorb(r);
  }
  for (int r = 0; r <= 3; ++r)
    o.require(correction({1}, 1, r, r) == Rat(r % 2 ? -1 : 1) * zeta_negative(1 + 2 * r) / Rat(2),
              "p=1 degeneration r=" + std::to_string(r));
  o.require(zeta_negative(1) == Rat(-1, 12), "zeta(-1)");
  o.require(zeta_negative(3) == Rat(1, 120), "zeta(-3)");
  o.require(zeta_negative(5) == Rat(-1, 252), "zeta(-5)");
  return o;
}

Outcome c10() {
  Outcome o;
  o.absorb(check_corollary(make_setup(preset("neg1", 1, 8)), 10));
  o.absorb(check_corollary(make_setup(preset("cyclic", 3, 8)), 8));
  return o;
}

FockVector mono(std::initializer_list<Mode> ms) {
  Monomial m(ms);
  std::sort(m.begin(), m.end());
  return FockVector::basis(m, 1);
}

Outcome c11() {
  Outcome o;
  struct Sample {
    Setting s;
    std::vector<FockVector> us, vs;
  };
  // u, v of weight <= 2; the cyclic sample mixes all three classes
  std::vector<Sample> samples{
      {{"neg1", 1}, {mono({{-1, 0}}), mono({{-2, 0}}), mono({{-1, 0}, {-1, 0}})}, {mono({{-1, 0}}), mono({{-2, 0}})}},
      {{"cyclic", 3},
       {mono({{-1, 1}}), mono({{-2, 0}}), mono({{-1, 1}, {-1, 2}}), mono({{-1, 2}, {-1, 2}})},
       {mono({{-1, 2}}), mono({{-1, 1}, {-1, 1}})}},
  };
  for (const auto& [s, us, vs] : samples) {
    Heis h = setup_of(s);
    const int p = h.setup.p;
    PairingMap y(h);
    NopMap yv(h.V.with_cut(kNoCut));
    Context c = twisted_context(h, y, yv);
    FockSpace sp = h.M.with_cut(kNoCut);
    std::vector<FockVector> ws{h.M.vacuum()};
    for (int64_t k = 1; ws.size() < 2; ++k)
      for (const auto& b : graded_basis(sp, k))
        if (ws.size() < 2) ws.push_back(FockVector::basis(b, p));
    for (const auto& u : us)
      for (const auto& v : vs)
        for (const auto& w : ws) {
          Report r = check_jacobi(c, u, v, w, 3);
          r.id = tag(s) + " jacobi u=" + u.str() + " v=" + v.str() + " w=" + w.str();
          o.absorb(r);
        }
    for (const auto& u : us)
      for (const auto& w : ws) {
        for (int64_t t = 0; t < p; ++t) {
          Report r = check_transnu(c, u, w, t, 3);
          r.id = tag(s) + " transnu u=" + u.str() + " s=" + std::to_string(t);
          o.absorb(r);
        }
        Report m = check_mode_support(c, u, w, 3);
        m.id = tag(s) + " mode_support u=" + u.str();
        o.absorb(m);
      }
  }
  return o;
}

struct Criterion {
  int n;
  const char* what;
  double limit_s;  // 0: no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> cs{
      {1, "delta identities, p in {1,2,3}, r < p, radius 3", 10, c1},
      {2, "untwisted Virasoro matrices, |m|,|n| <= 4, weight <= 6, d in {1,2}", 60, c2},
      {3, "generator weak commutativity, minimal k = 2, p in {1,2,3}", 0, c3},
      {4, "pairing = recursive on weight <= 4, |N| <= 3, pieces <= 3; factor order j <= 3", 300, c4},
      {5, "exp(Delta_x) omega = omega + d/16 x^-2, Delta_x = 0 for p = 1, L_M(0) 1 = d/16", 0, c5},
      {6, "g symmetry and extended identity m,n <= 6, g = 0 for p = 1, series oracle m,n <= 3", 0, c6},
      {7, "pure monomial central term r,s <= 2, m <= 5; Virasoro (m^3-m)/12 and m^3/12", 0, c7},
      {8, "rho([a,b]) = [rho(a),rho(b)], |m| <= 3, r <= 2, weight <= 5 / 3", 600, c8},
      {9, "Bernoulli corrections 1/48, p = 1 zeta shifts, zeta table", 0, c9},
      {10, "vacuum generating function through x^10 (p=2) and x^8 (p=3)", 0, c10},
      {11, "twisted Jacobi, transnu, mode support, u,v weight <= 2, radius 3, p in {2,3}", 0, c11},
  };
  int failed = 0;
  for (const auto& c : cs) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (o.ok && c.limit_s > 0 && s > c.limit_s) {
      o.ok = false;
      o.note = "runtime " + std::to_string(s) + " s over the " + std::to_string(c.limit_s) + " s bound";
    }
    if (!o.ok) ++failed;
    std::printf("criterion %2d: %s  %s  (%.2f s)\n", c.n, o.ok ? "PASS" : "FAIL", c.what, s);
    if (!o.ok) std::printf("              %s\n", o.note.substr(0, 2000).c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(cs.size()) - failed, cs.size());
  return failed;
}
