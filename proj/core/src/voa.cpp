#include "twh/voa.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <unordered_map>

namespace twh {

int64_t max_weight(const FockVector& v) {
  int64_t m = 0;
  for (const auto& [mono, c] : v.terms) m = std::max(m, monomial_weight(mono));
  return m;
}

std::map<int64_t, FockVector> homogeneous_parts(const FockVector& v) {
  std::map<int64_t, FockVector> out;
  for (const auto& [mono, c] : v.terms) {
    auto& part = out[monomial_weight(mono)];
    part.den = v.den;
    part.add(mono, c);
  }
  return out;
}

FockVector nu_power(const std::vector<int>& cls, int p, int64_t r, const FockVector& u) {
  FockVector out;
  out.den = u.den;
  for (const auto& [mono, c] : u.terms) {
    int64_t k = 0;
    for (const auto& x : mono) k += cls[x.idx];
    out.add(mono, CycNum::root(p, r * k) * c);
  }
  return out;
}

namespace {

// binom(-m-1, k) for m = num/den
const Rat& deriv_weight(int64_t num, int den, int k) {
  struct Key {
    int64_t num;
    int den, k;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& x) const {
      return std::hash<int64_t>()(x.num) * 31 + static_cast<size_t>(x.den) * 7 + static_cast<size_t>(x.k);
    }
  };
  thread_local std::unordered_map<Key, Rat, KeyHash> cache;
  Key key{num, den, k};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, binom_general(Rat(-num - den, den), k)).first->second;
}

struct NopRun {
  const FockSpace& M;
  const Mode* fac;
  size_t j;
  const Monomial* w;
  FockVector* out;
  std::vector<char> used;
  std::vector<size_t> creators;

  void creators_step(size_t i, int64_t left, Monomial& mono, const CycNum& acc) {
    if (i == creators.size()) {
      if (left == 0) out->add(mono, acc);
      return;
    }
    const Mode& f = fac[creators[i]];
    // the later creators need at least 1 each (numerators), so m >= left + rest
    int64_t rest = static_cast<int64_t>(creators.size() - i - 1);
    int64_t mmin = left + rest, mmax = rest == 0 ? left : -1;
    for (int64_t m = mmin; m <= mmax && m <= -1; ++m) {
      if (!M.allowed(f.idx, m)) continue;
      const Rat& b = deriv_weight(m, M.den, static_cast<int>(-f.n - 1));
      if (b.is_zero()) continue;
      CycNum a = acc;
      a *= b;
      Mode x{m, f.idx};
      auto pos = std::upper_bound(mono.begin(), mono.end(), x);
      size_t at = pos - mono.begin();
      mono.insert(pos, x);
      creators_step(i + 1, left - m, mono, a);
      mono.erase(mono.begin() + at);
    }
  }

  void step(size_t l, int64_t left, const CycNum& acc) {
    if (l == j) {
      Monomial mono;
      for (size_t i = 0; i < w->size(); ++i)
        if (!used[i]) mono.push_back((*w)[i]);
      if (creators.empty()) {
        if (left == 0) out->add(mono, acc);
        return;
      }
      creators_step(0, left, mono, acc);
      return;
    }
    const Mode& f = fac[l];
    int k = static_cast<int>(-f.n - 1);
    // as an annihilator removing a mode of w; equal modes are interchangeable,
    // so take one free copy per group and weight by the number of free copies
    for (size_t i = 0; i < w->size(); ++i) {
      if (i > 0 && (*w)[i - 1] == (*w)[i]) continue;
      int64_t mult = 0;
      size_t first = w->size();
      for (size_t t = i; t < w->size() && (*w)[t] == (*w)[i]; ++t)
        if (!used[t]) {
          if (!mult) first = t;
          ++mult;
        }
      if (!mult) continue;
      int64_t m = -(*w)[i].n;
      const CycNum& g = M.pair(f.idx, (*w)[i].idx);
      if (g.is_zero() || !M.allowed(f.idx, m)) continue;
      const Rat& b = deriv_weight(m, M.den, k);
      if (b.is_zero()) continue;
      CycNum a = acc * g;
      a *= b * Rat(m, M.den) * Rat(mult);
      used[first] = 1;
      step(l + 1, left - m, a);
      used[first] = 0;
    }
    creators.push_back(l);
    step(l + 1, left, acc);
    creators.pop_back();
  }
};

}  // namespace

FockVector nop_mode(const FockSpace& M, const Mode* factors, size_t j, int64_t n_num, const FockVector& w) {
  FockVector out;
  out.den = M.den;
  int64_t sum_k = 0;
  for (size_t l = 0; l < j; ++l) sum_k += -factors[l].n;
  int64_t target = n_num + M.den * (1 - sum_k);
  for (const auto& [mono, c] : w.terms) {
    int64_t out_w = monomial_weight(mono) + M.den * sum_k - n_num - M.den;
    if (out_w < 0) continue;
    NopRun run{M, factors, j, &mono, &out, std::vector<char>(mono.size(), 0), {}};
    run.step(0, target, c);
  }
  return out;
}

FockVector NopMap::mode(const FockVector& v, int64_t n_num, const FockVector& w) const {
  FockVector out;
  out.den = M_.den;
  for (const auto& [mono, c] : v.terms) {
    FockVector t = nop_mode(M_, mono.data(), mono.size(), n_num, w);
    if (!t.is_zero()) out += c * t;
  }
  return out;
}

FockVector vertex_mode(const FockSpace& V, const FockVector& v, int64_t n, const FockVector& w) {
  int64_t out = max_weight(v) + max_weight(w) - n - 1;
  if (out > V.cut) throw WeightOverflow("vertex_mode: output weight " + std::to_string(out) + " above cut");
  return NopMap(V.with_cut(kNoCut)).mode(v, n, w);
}

FockVector conformal_vector(const FockSpace& V) {
  FockVector om;
  om.den = V.den;
  Matrix<CycNum> inv = *V.pair.inverse();
  for (int a = 0; a < V.d(); ++a)
    for (int b = 0; b < V.d(); ++b) {
      if (inv(a, b).is_zero()) continue;
      Monomial m{Mode{-1, a}, Mode{-1, b}};
      std::sort(m.begin(), m.end());
      om.add(m, CycNum(Rat(1, 2)) * inv(a, b));
    }
  return om;
}

FockVector virasoro_apply(const FockSpace& V, int64_t n, const FockVector& w) {
  FockSpace big = V.with_cut(kNoCut);
  Matrix<CycNum> inv = *V.pair.inverse();
  FockVector out;
  out.den = V.den;
  int64_t reach = std::abs(n) + max_weight(w) + 1;
  for (int a = 0; a < V.d(); ++a)
    for (int b = 0; b < V.d(); ++b) {
      if (inv(a, b).is_zero()) continue;
      CycNum k = CycNum(Rat(1, 2)) * inv(a, b);
      for (int64_t j = -reach; j <= reach; ++j) {
        int64_t i = n - j;
        if (j == 0 || i == 0) continue;
        FockVector t;
        if (j < 0 || i > 0) t = apply_mode(big, a, j, apply_mode(big, b, i, w));
        else t = apply_mode(big, b, i, apply_mode(big, a, j, w));
        if (!t.is_zero()) out += k * t;
      }
    }
  return out;
}

OperatorSlice make_slice(const FockSpace& sp, int64_t src_weight, int64_t shift,
                         const std::function<FockVector(const FockVector&)>& op) {
  OperatorSlice s;
  s.src_weight = src_weight;
  s.dst_weight = src_weight + shift;
  s.src = graded_basis(sp, src_weight);
  if (s.dst_weight >= 0) s.dst = graded_basis(sp, s.dst_weight);
  s.m = Matrix<CycNum>(s.dst.size(), s.src.size());
  std::map<Monomial, size_t> row;
  for (size_t i = 0; i < s.dst.size(); ++i) row[s.dst[i]] = i;
  for (size_t j = 0; j < s.src.size(); ++j) {
    FockVector img = op(FockVector::basis(s.src[j], sp.den));
    for (const auto& [m, c] : img.terms) {
      auto it = row.find(m);
      if (it == row.end()) throw std::logic_error("operator leaves its graded piece: " + monomial_str(m, sp.den));
      s.m(it->second, j) = c;
    }
  }
  return s;
}

OperatorSlice virasoro_mode(const FockSpace& V, int64_t n, int64_t src_weight) {
  return make_slice(V, src_weight, -n * V.den, [&](const FockVector& w) { return virasoro_apply(V, n, w); });
}

FockVector homogeneous_mode(const FockSpace& V, const FockVector& v, int64_t n, const FockVector& w) {
  FockVector out;
  out.den = V.den;
  for (const auto& [h, part] : homogeneous_parts(v)) out += vertex_mode(V, part, n + h - 1, w);
  return out;
}

namespace {

using Poly = std::vector<Rat>;  // truncated power series, index = degree

Poly poly_mul(const Poly& a, const Poly& b, size_t deg) {
  Poly c(deg + 1, Rat(0));
  for (size_t i = 0; i < a.size() && i <= deg; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size() && i + j <= deg; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Poly poly_inv(const Poly& a, size_t deg) {
  Poly b(deg + 1, Rat(0));
  b[0] = a[0].inv();
  for (size_t n = 1; n <= deg; ++n) {
    Rat s(0);
    for (size_t i = 1; i <= n && i < a.size(); ++i) s += a[i] * b[n - i];
    b[n] = -s * b[0];
  }
  return b;
}

Poly poly_pow(const Poly& a, int64_t e, size_t deg) {
  Poly base = e < 0 ? poly_inv(a, deg) : a;
  int64_t k = e < 0 ? -e : e;
  Poly r(deg + 1, Rat(0));
  r[0] = Rat(1);
  while (k > 0) {
    if (k & 1) r = poly_mul(r, base, deg);
    base = poly_mul(base, base, deg);
    k >>= 1;
  }
  return r;
}

Poly exp_poly(const Rat& a, size_t deg) {
  Poly r(deg + 1, Rat(1));
  for (size_t i = 1; i <= deg; ++i) r[i] = r[i - 1] * a / Rat(static_cast<int64_t>(i));
  return r;
}

}  // namespace

std::map<int64_t, FockVector> cylinder_image(const FockSpace& V, const FockVector& u, const FockVector& v,
                                             int64_t order) {
  std::map<int64_t, FockVector> out;
  int64_t vmax = max_weight(v);
  for (const auto& [h, part] : homogeneous_parts(u)) {
    for (int64_t n = -order - 1; n <= h + vmax - 1; ++n) {
      FockVector t = vertex_mode(V, part, n, v);
      if (t.is_zero()) continue;
      // e^(h y) (e^y - 1)^(-n-1) = y^(-n-1) e^(h y) ((e^y - 1)/y)^(-n-1)
      int64_t lead = -n - 1;
      if (lead > order) continue;
      size_t deg = static_cast<size_t>(order - lead);
      Poly q(deg + 1);
      Rat f(1);
      for (size_t i = 0; i <= deg; ++i) {
        f = f / Rat(static_cast<int64_t>(i + 1));
        q[i] = f;
      }
      Poly c = poly_mul(exp_poly(Rat(h), deg), poly_pow(q, lead, deg), deg);
      for (size_t i = 0; i <= deg; ++i) {
        if (c[i].is_zero()) continue;
        auto& slot = out[lead + static_cast<int64_t>(i)];
        slot.den = V.den;
        slot += CycNum(c[i]) * t;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

// ---- series views ----

namespace {

struct VecCache {
  std::mutex mu;
  std::unordered_map<int64_t, FockVector> map;
  template <class F>
  FockVector get(int64_t k, F&& make) {
    {
      std::lock_guard<std::mutex> lk(mu);
      auto it = map.find(k);
      if (it != map.end()) return it->second;
    }
    FockVector v = make();
    std::lock_guard<std::mutex> lk(mu);
    map.emplace(k, v);
    return v;
  }
};

Lazy<FockVector> zero_series(const Vars& vars) {
  Support sup;
  sup.box.assign(vars.size(), Interval::point(0));
  return Lazy<FockVector>{vars, sup, [](const Exp&) { return FockVector{}; }};
}

Lazy<FockVector> with_box(Lazy<FockVector> a, size_t slot, Interval iv) {
  a.sup.box[slot] = iv;
  return a;
}

template <class F>
Report timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  Report r = f();
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

Lazy<FockVector> y_series(const VertexMap& Y, const FockVector& v, const FockVector& w, const std::string& var,
                          int64_t v_weight) {
  int p = Y.module().den;
  Vars vars{{var, p}};
  Support sup;
  sup.box = {Interval{-(v_weight * p + max_weight(w)), std::nullopt}};
  const VertexMap* y = &Y;
  return memo(Lazy<FockVector>{vars, sup, [y, v, w, p](const Exp& e) { return y->mode(v, -e[0] - p, w); }});
}

Lazy<FockVector> yy_series(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                           bool swapped) {
  const VertexMap* Y = c.ym;
  int p = Y->module().den;
  int64_t uw = max_weight(u) * p, vw = max_weight(v) * p, ww = max_weight(w);
  Vars vars{{"x1", p}, {"x2", p}};
  Support sup;
  // only the inner variable has a fixed lower bound: the inner mode can raise the
  // weight without limit, which lets the outer exponent fall
  if (!swapped) sup.box = {Interval{}, Interval{-(vw + ww), std::nullopt}};
  else sup.box = {Interval{-(uw + ww), std::nullopt}, Interval{}};
  auto inner = std::make_shared<VecCache>();
  return memo(Lazy<FockVector>{vars, sup, [=](const Exp& e) {
                                 int64_t a = e[0], b = e[1];
                                 if (!swapped) {
                                   FockVector t = inner->get(b, [&] { return Y->mode(v, -b - p, w); });
                                   if (t.is_zero()) return FockVector{};
                                   return Y->mode(u, -a - p, t);
                                 }
                                 FockVector t = inner->get(a, [&] { return Y->mode(u, -a - p, w); });
                                 if (t.is_zero()) return FockVector{};
                                 return Y->mode(v, -b - p, t);
                               }});
}

Lazy<FockVector> z_series(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w) {
  const VertexMap* Y = c.ym;
  const VertexMap* YV = c.yv;
  int p = Y->module().den;
  int64_t uv = max_weight(u) + max_weight(v), ww = max_weight(w);
  Vars vars{{"x0", 1}, {"x2", p}};
  Support sup;
  sup.box = {Interval{-uv, std::nullopt}, Interval{}};
  auto inner = std::make_shared<VecCache>();
  return memo(Lazy<FockVector>{vars, sup, [=](const Exp& e) {
                                 FockVector t = inner->get(e[0], [&] { return YV->mode(u, -e[0] - 1, v); });
                                 if (t.is_zero()) return FockVector{};
                                 return Y->mode(t, -e[1] - p, w);
                               }});
}

// ---- checks ----

Report check_jacobi(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                    int64_t radius) {
  return timed([&] {
    const int p = c.p;
    Vars v3{{"x0", 1}, {"x1", p}, {"x2", p}};
    auto x0inv = monomial(v3, {-1, 0, 0});
    auto t1 = mul(mul(x0inv, delta_binomial(v3, "x1", 1, "x2", -1, "x0", 1, 0, 1)), embed(yy_series(c, u, v, w, false), v3));
    auto t2 = mul(mul(x0inv, delta_binomial(v3, "x2", 1, "x1", -1, "x0", -1, 0, 1)), embed(yy_series(c, u, v, w, true), v3));
    auto lhs = add(t1, scale(CycNum(-1), t2));
    auto x2inv = monomial(v3, {0, 0, -p});
    std::optional<Lazy<FockVector>> rhs;
    for (int r = 0; r < p; ++r) {
      auto z = embed(z_series(c, nu_power(c.cls, p, r, u), v, w), v3);
      auto term = scale(CycNum(Rat(1, p)), mul(mul(x2inv, delta_binomial(v3, "x1", 1, "x0", -1, "x2", 1, r, p)), z));
      rhs = rhs ? add(*rhs, term) : term;
    }
    return compare_on(lhs, *rhs, radius_box(v3, radius), "jacobi",
                      "x0^-1 delta((x1-x2)/x0) Y_M(u,x1)Y_M(v,x2)w - x0^-1 delta((x2-x1)/(-x0)) Y_M(v,x2)Y_M(u,x1)w"
                      " = x2^-1 (1/p) sum_r delta(w^r ((x1-x0)/x2)^(1/p)) Y_M(Y(nu^r u,x0)v,x2)w");
  });
}

Report check_weak_comm(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                       int64_t radius, std::optional<int> k) {
  return timed([&] {
    Vars v2{{"x1", c.p}, {"x2", c.p}};
    auto diff = add(yy_series(c, u, v, w, false), scale(CycNum(-1), yy_series(c, u, v, w, true)));
    Box win = radius_box(v2, radius);
    const std::string eq = "(x1-x2)^k (Y_M(u,x1)Y_M(v,x2) - Y_M(v,x2)Y_M(u,x1)) w = 0";
    auto run = [&](int kk) {
      auto lhs = mul(binom_expand(v2, "x1", "x2", Rat(kk), 1, -1), diff);
      return compare_on(lhs, zero_series(v2), win, "weak_comm", eq);
    };
    if (k) {
      Report r = run(*k);
      r.detail += ", k = " + std::to_string(*k);
      return r;
    }
    for (int kk = 0; kk <= c.budget; ++kk) {
      Report r = run(kk);
      if (r.ok()) {
        r.found = kk;
        r.detail += ", minimal k = " + std::to_string(kk);
        return r;
      }
    }
    Report r;
    r.id = "weak_comm";
    r.eq = eq;
    r.status = Status::not_found;
    r.detail = "no k <= " + std::to_string(c.budget);
    return r;
  });
}

namespace {

// sum_r w^(-l r p) / p * Z_r over (x0 den 1, x2 den p)
Lazy<FockVector> z_average(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                           int64_t lnum, std::vector<Lazy<FockVector>>& zs) {
  const int p = c.p;
  if (zs.empty())
    for (int r = 0; r < p; ++r) zs.push_back(z_series(c, nu_power(c.cls, p, r, u), v, w));
  std::optional<Lazy<FockVector>> acc;
  for (int r = 0; r < p; ++r) {
    CycNum k = CycNum::root(p, -lnum * r);
    k *= Rat(1, p);
    auto t = scale(k, zs[r]);
    acc = acc ? add(*acc, t) : t;
  }
  return *acc;
}

// Once (x1-x2)^k resolves the product, x1 is bounded below by -(wt u + wt w), as
// for Y_M(v,x2)Y_M(u,x1)w. The limit relies on that bound; check a band below it.
bool certify_x1(const Lazy<FockVector>& q, const Context& c, const FockVector& u, const FockVector& w,
                int64_t radius, Report& r) {
  const int p = c.p;
  int64_t lo = -(max_weight(u) * p + max_weight(w));
  int64_t x2lo = *q.sup.box[1].lo;
  for (int64_t a = lo - 2 * p; a < lo; ++a)
    for (int64_t b = x2lo; b <= 2 * radius * p - a; ++b)
      if (!q({a, b}).is_zero()) {
        r.fail("x1 bound not certified at " + exp_str(q.vars, Exp{a, b}));
        return false;
      }
  return true;
}

Report not_found(const std::string& id, const std::string& eq, const std::string& what, int budget) {
  Report r;
  r.id = id;
  r.eq = eq;
  r.status = Status::not_found;
  r.detail = "no " + what + " <= " + std::to_string(budget);
  return r;
}

}  // namespace

Report check_weak_assoc(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                        int64_t radius, std::optional<Rat> l) {
  return timed([&] {
    const int p = c.p;
    const std::string eq =
        "P_int[x0]((x0+x2)^l Y_M(u,x0+x2)Y_M(v,x2)w) = (x2+x0)^l (1/p) sum_r w^(-lrp) Y_M(Y(nu^r u,x0)v,x2)w";
    Vars v2{{"x1", p}, {"x2", p}};
    Vars out{{"x2", p}, {"x0", p}};
    auto yy = yy_series(c, u, v, w, false);
    std::vector<Lazy<FockVector>> zs;
    auto run = [&](int64_t lnum) {
      Rat lv(lnum, p);
      // both sides carry (x2+x0)^l: centre the x2 window on l so it never empties
      Box win = radius_box(out, radius);
      win[0].lo = *win[0].lo + lnum;
      win[0].hi = *win[0].hi + lnum;
      auto lhs = project_integral(substitute_limit(mul(monomial(v2, {lnum, 0}), yy), "x1", 0, "x0", "x2"), "x0", 0);
      auto rhs = mul(binom_expand(out, "x2", "x0", lv), embed(z_average(c, u, v, w, lnum, zs), out));
      Report r = compare_on(lhs, rhs, win, "weak_assoc", eq);
      r.detail += ", l = " + lv.str();
      return r;
    };
    if (l) {
      auto n = as_num(*l, p);
      if (!n) throw std::invalid_argument("weak_assoc: l must lie in (1/p)Z");
      return run(*n);
    }
    for (int64_t lnum = 0; lnum <= c.budget * p; ++lnum) {
      Report r = run(lnum);
      if (r.ok()) {
        r.found = lnum;
        r.detail += " (minimal, numerator over p)";
        return r;
      }
    }
    return not_found("weak_assoc", eq, "l", c.budget);
  });
}

Report check_mwa(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w, int64_t radius,
                 int64_t s, std::optional<int> k) {
  return timed([&] {
    const int p = c.p;
    const std::string eq = "lim_{x1^(1/p) -> w^s (x2+x0)^(1/p)} ((x1-x2)^k Y_M(u,x1)Y_M(v,x2)w) = x0^k Y_M(Y(nu^-s u,x0)v,x2)w";
    Vars v2{{"x1", p}, {"x2", p}};
    Vars out{{"x2", p}, {"x0", 1}};
    auto yy = yy_series(c, u, v, w, false);
    auto z = embed(z_series(c, nu_power(c.cls, p, -s, u), v, w), out);
    auto run = [&](int kk) {
      // x0^k on the right: centre the x0 window on k
      Box win = radius_box(out, radius);
      win[1].lo = *win[1].lo + kk;
      win[1].hi = *win[1].hi + kk;
      auto q = mul(binom_expand(v2, "x1", "x2", Rat(kk), 1, -1), yy);
      Report r;
      if (!certify_x1(q, c, u, w, radius + kk, r)) {
        r.id = "mwa";
        r.eq = eq;
        r.detail = "k = " + std::to_string(kk);
        return r;
      }
      auto lhs = substitute_limit(with_box(q, 0, Interval{-(max_weight(u) * p + max_weight(w)), std::nullopt}), "x1",
                                  s, "x2", "x0");
      auto rhs = mul(monomial(out, {0, kk}), z);
      r = compare_on(lhs, rhs, win, "mwa", eq);
      r.detail += ", k = " + std::to_string(kk) + ", s = " + std::to_string(s);
      return r;
    };
    if (k) return run(*k);
    for (int kk = 0; kk <= c.budget; ++kk) {
      Report r = run(kk);
      if (r.ok()) {
        r.found = kk;
        return r;
      }
    }
    return not_found("mwa", eq, "k", c.budget);
  });
}

Report check_varwass(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                     int64_t radius, std::optional<Rat> l) {
  return timed([&] {
    const int p = c.p;
    const std::string eq =
        "lim_{x0 -> -x2+x1} ((x2+x0)^l (1/p) sum_r w^(-lrp) Y_M(Y(nu^r u,x0)v,x2)w) = P_int[x1](x1^l Y_M(v,x2)Y_M(u,x1)w)";
    Vars g{{"x0", 1}, {"x2", p}};
    Vars out{{"x2", p}, {"x1", 1}};
    Vars v2{{"x1", p}, {"x2", p}};
    auto yy = yy_series(c, u, v, w, true);  // Y_M(v,x2) Y_M(u,x1) w
    std::vector<Lazy<FockVector>> zs;
    auto run = [&](int64_t lnum) {
      Rat lv(lnum, p);
      // centre the x1 window on l, otherwise large l pushes everything outside it
      Box win = radius_box(out, radius);
      int64_t shift = lv.floor();
      win[1].lo = *win[1].lo + shift;
      win[1].hi = *win[1].hi + shift;
      auto raw = mul(binom_expand(g, "x2", "x0", lv), z_average(c, u, v, w, lnum, zs));
      // once l is large the negative powers of x2+x0 cancel and x2 is bounded below
      // by the bound of Y_M(Y(u,x0)v,x2)w; certify that on a band
      int64_t x2lo = -(max_weight(v) * p + max_weight(w));
      Report r;
      r.id = "varwass";
      r.eq = eq;
      for (int64_t b = x2lo - 2 * p; b < x2lo && r.ok(); ++b)
        for (int64_t a = -(max_weight(u) + max_weight(v)); a <= 2 * radius + shift + 2; ++a)
          if (!raw({a, b}).is_zero()) r.fail("x2 bound not certified at l = " + lv.str());
      if (!r.ok()) return r;
      auto gl = with_box(raw, 1, Interval{x2lo, std::nullopt});
      auto lhs = substitute_limit(gl, "x0", 0, "x2", "x1", -1);
      auto base = mul(monomial(v2, {lnum, 0}), yy);
      auto rhs = Lazy<FockVector>{out, lhs.sup, [base, p](const Exp& e) {
                                    return base({e[1] * p, e[0]});
                                  }};
      r = compare_on(lhs, rhs, win, "varwass", eq);
      r.detail += ", l = " + lv.str();
      return r;
    };
    if (l) {
      auto n = as_num(*l, p);
      if (!n) throw std::invalid_argument("varwass: l must lie in (1/p)Z");
      return run(*n);
    }
    for (int64_t lnum = 0; lnum <= c.budget * p; ++lnum) {
      Report r = run(lnum);
      if (r.ok()) {
        r.found = lnum;
        r.detail += " (minimal, numerator over p)";
        return r;
      }
    }
    return not_found("varwass", eq, "l", c.budget);
  });
}

Report check_transnu(const Context& c, const FockVector& u, const FockVector& w, int64_t s, int64_t radius) {
  return timed([&] {
    int64_t h = max_weight(u);
    auto a = rotate(y_series(*c.ym, nu_power(c.cls, c.p, s, u), w, "x", h), "x", s);
    auto b = y_series(*c.ym, u, w, "x", h);
    Report r = compare_on(a, b, radius_box(a.vars, radius), "transnu",
                          "lim_{x1^(1/p) -> w^s x^(1/p)} Y_M(nu^s u, x1) w = Y_M(u, x) w");
    r.detail += ", s = " + std::to_string(s);
    return r;
  });
}

Report check_mode_support(const Context& c, const FockVector& u, const FockVector& w, int64_t radius) {
  return timed([&] {
    const std::string eq = "nu u = w^q u implies Y_M(u,x) = sum_{n in q/p + Z} u_n x^(-n-1)";
    // find q with nu u = w^q u
    std::optional<int> q;
    for (int t = 0; t < c.p && !q; ++t)
      if (nu_power(c.cls, c.p, 1, u) == CycNum::root(c.p, t) * u) q = t;
    Report r;
    r.id = "mode_support";
    r.eq = eq;
    if (!q) {
      r.fail("u is not an eigenvector of nu");
      return r;
    }
    auto y = y_series(*c.ym, u, w, "x", max_weight(u));
    // exponents -n-1 with n = q/p + Z have numerators = -q mod p
    r = compare_on(y, project_integral(y, "x", -*q), radius_box(y.vars, radius), "mode_support", eq);
    r.detail += ", q = " + std::to_string(*q);
    return r;
  });
}

Report check_skew(const Context& c, const FockVector& u, const FockVector& v, int64_t radius) {
  return timed([&] {
    Report r;
    r.id = "skew";
    r.eq = "Y(u,x)v = e^(x L(-1)) Y(v,-x)u";
    const FockSpace& V = c.yv->module();
    int64_t top = max_weight(u) + max_weight(v);
    size_t n_checked = 0;
    for (int64_t n = -radius; n <= radius && r.ok(); ++n) {
      FockVector lhs = c.yv->mode(u, n, v);
      FockVector rhs;
      rhs.den = V.den;
      // v_m u vanishes once m >= wt u + wt v
      for (int64_t i = 0; n + i <= top; ++i) {
        int64_t m = n + i;
        FockVector t = c.yv->mode(v, m, u);
        for (int64_t s = 0; s < i; ++s) t = virasoro_apply(V, -1, t);
        Rat f(1);
        for (int64_t s = 2; s <= i; ++s) f = f / Rat(s);
        if ((m + 1) % 2 != 0) f = -f;
        if (!t.is_zero()) rhs += CycNum(f) * t;
      }
      ++n_checked;
      if (!(lhs == rhs)) r.fail("n = " + std::to_string(n) + ": lhs " + lhs.str() + " rhs " + rhs.str());
    }
    r.detail = std::to_string(n_checked) + " modes";
    return r;
  });
}

Report check_l_minus_one(const Context& c, const FockVector& u, const FockVector& w, int64_t radius) {
  return timed([&] {
    Report r;
    r.id = "L-1_bracket";
    r.eq = "Y(L(-1)u,x) = d/dx Y(u,x) = [L(-1), Y(u,x)]";
    const FockSpace& V = c.yv->module();
    FockVector lu = virasoro_apply(V, -1, u);
    size_t n_checked = 0;
    for (int64_t n = -radius; n <= radius && r.ok(); ++n) {
      FockVector want = CycNum(Rat(-n)) * c.yv->mode(u, n - 1, w);
      FockVector a = c.yv->mode(lu, n, w);
      FockVector b = virasoro_apply(V, -1, c.yv->mode(u, n, w)) - c.yv->mode(u, n, virasoro_apply(V, -1, w));
      ++n_checked;
      if (!(a == want)) r.fail("(L(-1)u)_" + std::to_string(n) + ": " + a.str() + " vs " + want.str());
      else if (!(b == want)) r.fail("[L(-1), u_" + std::to_string(n) + "]: " + b.str() + " vs " + want.str());
    }
    r.detail = std::to_string(n_checked) + " modes";
    return r;
  });
}

Report check_identity(const std::string& id, const Context& c, const FockVector& u, const FockVector& v,
                      const FockVector& w, int64_t radius, int64_t s) {
  if (id == "jacobi") return check_jacobi(c, u, v, w, radius);
  if (id == "weak_comm") return check_weak_comm(c, u, v, w, radius);
  if (id == "weak_assoc") return check_weak_assoc(c, u, v, w, radius);
  if (id == "mwa") return check_mwa(c, u, v, w, radius, s);
  if (id == "varwass") return check_varwass(c, u, v, w, radius);
  if (id == "transnu") return check_transnu(c, u, w, s, radius);
  if (id == "mode_support") return check_mode_support(c, u, w, radius);
  if (id == "skew") return check_skew(c, u, v, radius);
  if (id == "L-1_bracket") return check_l_minus_one(c, u, w, radius);
  throw std::invalid_argument("unknown identity " + id);
}

}  // namespace twh
