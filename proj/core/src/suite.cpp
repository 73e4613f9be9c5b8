#include "twh/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include "twh/exact.hpp"

namespace twh {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }
}  // namespace

FockVector generator(int idx, int64_t n) { return FockVector::basis(Monomial{Mode{-n, idx}}, 1); }

std::vector<int> paired_indices(const Heis& h) {
  std::vector<int> out;
  int d = h.setup.d;
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b)
      if (!h.eig.pair(a, b).is_zero()) {
        out.push_back(a);
        out.push_back(b);
      }
  return out;
}

Report check_virasoro_matrices(const Heis& h, bool twisted, int64_t max_mode, int64_t max_weight_num) {
  auto t0 = Clock::now();
  Report r;
  r.id = twisted ? "virasoro_twisted" : "virasoro_untwisted";
  r.eq = "[L(m),L(n)] = (m-n)L(m+n) + d(m^3-m)/12 delta_{m+n,0}";
  const FockSpace sp = (twisted ? h.M : h.V).with_cut(kNoCut);
  const int den = sp.den;
  const int d = h.setup.d;
  PairingMap pm(h);
  FockVector om = conformal_vector(h.V);
  auto L = [&](int64_t n, const FockVector& w) {
    return twisted ? pm.mode(om, (n + 1) * den, w) : virasoro_apply(sp, n, w);
  };
  // columns are images of basis vectors, so intermediate pieces never become matrices
  size_t entries = 0;
  for (int64_t w = 0; w <= max_weight_num && r.ok(); ++w) {
    if (graded_basis(sp, w).empty()) continue;
    for (int64_t m = -max_mode; m <= max_mode && r.ok(); ++m)
      for (int64_t n = -max_mode; n <= max_mode && r.ok(); ++n) {
        if (w - (m + n) * den < 0) continue;
        int64_t shift = -(m + n) * den;
        Matrix<CycNum> lhs =
            make_slice(sp, w, shift, [&](const FockVector& v) { return L(m, L(n, v)) - L(n, L(m, v)); }).m;
        Matrix<CycNum> rhs = CycNum(Rat(m - n)) * make_slice(sp, w, shift, [&](const FockVector& v) {
                                                   return L(m + n, v);
                                                 }).m;
        if (m + n == 0) rhs = rhs + CycNum(Rat(d * (m * m * m - m), 12)) * Matrix<CycNum>::identity(rhs.cols());
        entries += lhs.rows() * lhs.cols();
        if (!(lhs == rhs))
          r.fail("m=" + std::to_string(m) + " n=" + std::to_string(n) + " weight " + Rat(w, den).str() +
                 ": lhs " + lhs.str() + " rhs " + rhs.str());
      }
  }
  r.detail = std::to_string(entries) + " matrix entries";
  r.millis = since(t0);
  return r;
}

Report check_maps_agree(const Heis& h, const VertexMap& a, const VertexMap& b, const std::string& id,
                        int64_t alg_weight, int64_t max_mode, int64_t piece_weight_num) {
  auto t0 = Clock::now();
  Report r;
  r.id = id;
  r.eq = "Y_a(v,x)w = Y_b(v,x)w";
  const int p = h.setup.p;
  const FockSpace pieces = h.M.with_cut(kNoCut);
  const FockSpace alg = h.V.with_cut(kNoCut);
  auto ws = basis_up_to(pieces, piece_weight_num);
  size_t n_checked = 0;
  for (const auto& bv : basis_up_to(alg, alg_weight)) {
    FockVector v = FockVector::basis(bv, 1);
    for (const auto& c : ws) {
      FockVector w = FockVector::basis(c, p);
      for (int64_t n = -max_mode * p; n <= max_mode * p; ++n) {
        FockVector x = a.mode(v, n, w), y = b.mode(v, n, w);
        ++n_checked;
        if (!(x == y)) {
          r.fail("v=" + v.str() + " w=" + w.str() + " N=" + Rat(n, p).str() + ": " + x.str() + " vs " + y.str());
          goto done;
        }
      }
    }
  }
done:
  r.detail = std::to_string(n_checked) + " (v, N, w) triples";
  r.millis = since(t0);
  return r;
}

Report check_permutations(const Heis& h, const RecursiveMap& rec, int max_j, int64_t max_mode,
                          int64_t piece_weight_num) {
  auto t0 = Clock::now();
  Report r;
  r.id = "factor_order";
  r.eq = "Y(a1(-n1)...aj(-nj)1, x) independent of factor order";
  const int p = h.setup.p;
  const int d = h.setup.d;
  auto ws = basis_up_to(h.M.with_cut(kNoCut), piece_weight_num);
  // factor lists: every multiset of (idx, mode in {1,2}) of length 2..max_j
  std::vector<Mode> atoms;
  for (int i = 0; i < d; ++i)
    for (int64_t k = 1; k <= 2; ++k) atoms.push_back(Mode{-k, i});
  std::vector<Factors> lists;
  std::function<void(size_t, Factors&)> grow = [&](size_t from, Factors& cur) {
    if (cur.size() >= 2) lists.push_back(cur);
    if (static_cast<int>(cur.size()) == max_j) return;
    for (size_t i = from; i < atoms.size(); ++i) {
      cur.push_back(atoms[i]);
      grow(i, cur);
      cur.pop_back();
    }
  };
  Factors cur;
  grow(0, cur);
  size_t n_checked = 0;
  for (auto fs : lists) {
    std::sort(fs.begin(), fs.end());
    for (const auto& c : ws) {
      FockVector w = FockVector::basis(c, p);
      for (int64_t n = -max_mode * p; n <= max_mode * p; ++n) {
        FockVector ref = pairing_mode(h, fs, n, w);
        Factors perm = fs;
        do {
          ++n_checked;
          FockVector x = pairing_mode(h, perm, n, w), y = rec.mode_of(perm, n, w);
          if (!(x == ref) || !(y == ref)) {
            std::string s;
            for (const auto& f : perm) s += monomial_str(Monomial{f}, 1) + " ";
            r.fail("order " + s + "w=" + w.str() + " N=" + Rat(n, p).str() + ": pairing " + x.str() +
                   " recursive " + y.str() + " sorted " + ref.str());
            goto done;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  }
done:
  r.detail = std::to_string(lists.size()) + " factor lists, " + std::to_string(n_checked) + " evaluations";
  r.millis = since(t0);
  return r;
}

Report check_g_laws(const Heis& h, int64_t max_mn, int64_t oracle_max) {
  auto t0 = Clock::now();
  Report r;
  r.id = "g_laws";
  r.eq = "g(a,m,b,n) = g(b,n,a,m); g(a,-m,b,n) = m delta_{m,n} <a,b>; g = 0 for p = 1";
  const int d = h.setup.d;
  const bool untwisted = h.setup.p == 1;
  size_t n_checked = 0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int64_t m = 1; m <= max_mn; ++m)
        for (int64_t n = 1; n <= max_mn; ++n) {
          auto at = " a=" + std::to_string(a) + " m=" + std::to_string(m) + " b=" + std::to_string(b) +
                    " n=" + std::to_string(n);
          CycNum g = g_value(h, a, m, b, n), gs = g_value(h, b, n, a, m);
          if (!(g == gs)) r.fail("symmetry" + at + ": " + g.str() + " vs " + gs.str());
          if (untwisted && !g.is_zero()) r.fail("untwisted" + at + ": " + g.str());
          CycNum want = m == n ? CycNum(Rat(m)) * h.eig.pair(a, b) : CycNum();
          CycNum ge = g_extended(h, a, m, b, n);
          if (!(ge == want)) r.fail("extended" + at + ": " + ge.str() + " vs " + want.str());
          if (m <= oracle_max && n <= oracle_max) {
            CycNum go = g_oracle(h, a, m, b, n);
            if (!(go == g)) r.fail("oracle" + at + ": closed " + g.str() + " series " + go.str());
            CycNum goe = g_oracle(h, a, m, b, n, true);
            if (!(goe == ge)) r.fail("oracle extended" + at + ": closed " + ge.str() + " series " + goe.str());
          }
          ++n_checked;
        }
  r.detail = std::to_string(n_checked) + " (a,m,b,n)";
  r.millis = since(t0);
  return r;
}

Report check_delta_x(const Heis& h, int64_t max_weight) {
  auto t0 = Clock::now();
  Report r;
  r.id = "delta_x";
  const int p = h.setup.p;
  const int d = h.setup.d;
  FockVector om = conformal_vector(h.V);
  XSeries e = exp_delta_x(h, om);
  if (p == 1) {
    r.eq = "Delta_x = 0 untwisted";
    for (const auto& b : basis_up_to(h.V.with_cut(kNoCut), max_weight)) {
      XSeries t = delta_x_apply(h, FockVector::basis(b, 1));
      if (!t.empty()) r.fail("Delta_x " + monomial_str(b, 1) + " has " + std::to_string(t.size()) + " terms");
    }
  } else {
    // vacuum weight (1/4) sum_k dim_k (k/p)(1 - k/p)
    Rat c;
    for (int k = 0; k < p; ++k) c += Rat(h.eig.dims[k]) * Rat(k, p) * (Rat(1) - Rat(k, p)) / Rat(4);
    r.eq = "exp(Delta_x) omega = omega + c x^-2 1, L_M(0) 1 = c";
    XSeries want{{0, om}};
    if (!c.is_zero()) want[-2] = CycNum(c) * h.V.vacuum();
    if (!(e == want)) {
      std::string got;
      for (const auto& [k, v] : e) got += "x^" + std::to_string(k) + ": " + v.str() + "; ";
      r.fail("exp(Delta_x) omega = " + got + "want c = " + c.str());
    }
    if (h.setup.nu == Matrix<Rat>(Rat(-1) * Matrix<Rat>::identity(d)) && !(c == Rat(d, 16)))
      r.fail("nu = -1: c = " + c.str() + " vs d/16 = " + Rat(d, 16).str());
    PairingMap pm(h);
    FockVector vac = h.M.vacuum();
    FockVector l0 = pm.mode(om, p, vac);
    if (!(l0 == CycNum(c) * vac)) r.fail("L_M(0) 1 = " + l0.str() + " vs " + c.str());
    r.detail = "c = " + c.str();
  }
  r.millis = since(t0);
  return r;
}

Report check_generator_comm(const Context& c, const Heis& h, int a, int b, int64_t radius) {
  Report r = check_weak_comm(c, generator(a), generator(b), h.M.vacuum(), radius);
  r.id = "generator_weak_comm";
  if (r.ok() && r.found != 2) r.fail("minimal k = " + std::to_string(r.found.value_or(-1)) + ", expected 2");
  return r;
}

Report check_closure(int64_t max_mode, int max_r) {
  auto t0 = Clock::now();
  Report r;
  r.id = "dplus_closure";
  r.eq = "[Lbar_m^(r), Lbar_n^(s)] = sum a_i Lbar_{m+n}^(i) + c";
  size_t n = 0;
  for (int ri = 0; ri <= max_r; ++ri)
    for (int si = 0; si <= max_r; ++si)
      for (int64_t m = -max_mode; m <= max_mode; ++m)
        for (int64_t k = -max_mode; k <= max_mode; ++k) {
          DiffOp b = bracket(Lbar_symbol(m, ri), Lbar_symbol(k, si));
          auto at = "r=" + std::to_string(ri) + " s=" + std::to_string(si) + " m=" + std::to_string(m) +
                    " n=" + std::to_string(k);
          try {
            LbarExpansion e = expand_in_Lbar(b);
            DiffOp back;
            back.central = e.central;
            for (const auto& [deg, cs] : e.coeffs)
              for (size_t i = 0; i < cs.size(); ++i) {
                DiffOp g = Lbar_symbol(deg, static_cast<int>(i));
                back += cs[i] * g;
              }
            back.normalize();
            if (!(back == b)) r.fail(at + ": expansion " + back.str() + " vs bracket " + b.str());
            if (b.terms.size() > 1 || (b.terms.size() == 1 && b.terms.begin()->first != m + k))
              r.fail(at + ": bracket leaves degree m+n: " + b.str());
          } catch (const NotInSubalgebra& ex) {
            r.fail(at + ": " + ex.what());
          }
          ++n;
        }
  r.detail = std::to_string(n) + " brackets";
  r.millis = since(t0);
  return r;
}

Report check_pure_monomial(int max_r, int64_t max_m) {
  auto t0 = Clock::now();
  Report r;
  r.id = "pure_monomial_central";
  r.eq = "central [Lbar_m^(r), Lbar_-m^(s)] = (r+s+1)!^2/(2(2(r+s)+3)!) m^(2(r+s)+3)";
  for (int ri = 0; ri <= max_r; ++ri)
    for (int si = 0; si <= max_r; ++si)
      for (int64_t m = 1; m <= max_m; ++m) {
        Rat got = expand_in_Lbar(bracket(Lbar_symbol(m, ri), Lbar_symbol(-m, si))).central;
        Rat want = pure_monomial_central(ri, si, m);
        if (!(got == want))
          r.fail("r=" + std::to_string(ri) + " s=" + std::to_string(si) + " m=" + std::to_string(m) + ": " +
                 got.str() + " vs " + want.str());
      }
  r.millis = since(t0);
  return r;
}

Report check_virasoro_central(int64_t max_m) {
  auto t0 = Clock::now();
  Report r;
  r.id = "virasoro_central";
  r.eq = "central [L_m, L_-m] = (m^3-m)/12, after the shift m^3/12";
  for (int64_t m = 1; m <= max_m; ++m) {
    Rat before = bracket(L_symbol(m, 0), L_symbol(-m, 0)).central;
    Rat after = expand_in_Lbar(bracket(Lbar_symbol(m, 0), Lbar_symbol(-m, 0))).central;
    if (!(before == Rat(m * m * m - m, 12))) r.fail("m=" + std::to_string(m) + " before: " + before.str());
    if (!(after == Rat(m * m * m, 12))) r.fail("m=" + std::to_string(m) + " after: " + after.str());
  }
  r.millis = since(t0);
  return r;
}

Report check_rep_generators(const Heis& h, bool twisted, int64_t max_mode, int max_r, int64_t max_weight_num) {
  auto t0 = Clock::now();
  Report r;
  r.id = twisted ? "rep_twisted" : "rep_untwisted";
  r.eq = "rho([a,b]) = [rho(a), rho(b)], c -> d";
  RepCache rc(h, twisted);
  size_t n = 0;
  for (int64_t m = -max_mode; m <= max_mode && r.ok(); ++m)
    for (int64_t k = -max_mode; k <= max_mode && r.ok(); ++k)
      for (int ri = 0; ri <= max_r && r.ok(); ++ri)
        for (int si = 0; si <= max_r && r.ok(); ++si) {
          Report one = check_rep_bracket(rc, Lbar_symbol(m, ri), Lbar_symbol(k, si), max_weight_num);
          if (!one.ok())
            r.fail("Lbar_" + std::to_string(m) + "^(" + std::to_string(ri) + "), Lbar_" + std::to_string(k) +
                   "^(" + std::to_string(si) + "): " + one.witness);
          ++n;
        }
  r.detail = std::to_string(n) + " generator pairs";
  r.millis = since(t0);
  return r;
}

Report check_corrections(const Heis& h, int max_r) {
  auto t0 = Clock::now();
  Report r;
  r.id = "corrections";
  r.eq = "c_r = -((-1)^r/(4(r+1))) sum_k dim_k B_{2r+2}(k/p); p = 1: (-1)^r zeta(-1-2r)/2";
  const int p = h.setup.p;
  const int d = h.setup.d;
  for (int ri = 0; ri <= max_r; ++ri) {
    Rat sum;
    for (int k = 0; k < p; ++k) sum += Rat(h.eig.dims[k]) * bernoulli_poly(2 * ri + 2, Rat(k, p));
    Rat want = Rat(ri % 2 ? 1 : -1) / Rat(4 * (ri + 1)) * sum;
    Rat got = correction(h.eig.dims, p, ri, ri);
    if (!(got == want)) r.fail("r=" + std::to_string(ri) + ": " + got.str() + " vs " + want.str());
    // the operator itself: rho(Lbar_0^(r)) on the vacuum of S[nu] minus the normal ordered part
    FockVector vac = h.M.vacuum();
    FockVector img = rep_apply(h, true, 0, ri, ri, vac);
    if (!(img == CycNum(got) * vac)) r.fail("r=" + std::to_string(ri) + ": vacuum image " + img.str());
    Rat zeta_shift = Rat(ri % 2 ? -1 : 1) * zeta_negative(1 + 2 * ri) / Rat(2);
    if (!(correction({d}, 1, ri, ri) == Rat(d) * zeta_shift))
      r.fail("p=1 r=" + std::to_string(ri) + ": " + correction({d}, 1, ri, ri).str() + " vs d*" + zeta_shift.str());
  }
  r.millis = since(t0);
  return r;
}

std::vector<Report> run_tasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<Report> out(tasks.size());
  std::vector<std::exception_ptr> errs(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < tasks.size();) {
      auto t0 = Clock::now();
      try {
        out[i] = tasks[i].run();
      } catch (...) {
        errs[i] = std::current_exception();
      }
      if (out[i].id.empty()) out[i].id = tasks[i].id;
      if (out[i].millis == 0) out[i].millis = since(t0);
    }
  };
  int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace twh
