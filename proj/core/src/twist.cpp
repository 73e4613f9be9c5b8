#include "twh/twist.hpp"

#include <algorithm>
#include <chrono>

namespace twh {

Rat class_shift(int cls, int p) { return Rat(((cls % p) + p) % p, p); }

Rat g_coeff(const Rat& s, int64_t m, int64_t n) {
  struct Key {
    Rat s;
    int64_t m, n;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const { return k.s.hash() * 131 + std::hash<int64_t>()(k.m * 1009 + k.n); }
  };
  thread_local std::unordered_map<Key, Rat, KeyHash> cache;
  Key key{s, m, n};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  Rat acc(0);
  Rat t = Rat(1) - s;
  for (int64_t k = 0; k < n; ++k) {
    Rat a = t * binom_general(s, n - 1 - k) * binom_general(-s, m + 1 + k);
    Rat b = s * binom_general(s - Rat(1), n - 1 - k) * binom_general(t, m + 1 + k);
    acc += Rat(k + 1) * (a + b);
  }
  cache.emplace(key, acc);
  return acc;
}

CycNum g_value(const Heis& h, int a, int64_t m, int b, int64_t n) {
  const CycNum& H = h.eig.pair(a, b);
  if (H.is_zero()) return CycNum();
  return CycNum(g_coeff(class_shift(h.eig.cls[a], h.setup.p), m, n)) * H;
}

CycNum g_extended(const Heis& h, int a, int64_t m, int b, int64_t n) {
  const CycNum& H = h.eig.pair(a, b);
  if (H.is_zero()) return CycNum();
  Rat s = class_shift(h.eig.cls[a], h.setup.p), t = Rat(1) - s;
  Rat acc(0);
  for (int64_t k = 0; k < n; ++k) {
    if (1 - m + k < 0) continue;
    Rat x = t * binom_general(s, n - 1 - k) * binom_general(-s, 1 - m + k);
    Rat y = s * binom_general(s - Rat(1), n - 1 - k) * binom_general(t, 1 - m + k);
    acc += Rat(k + 1) * (x + y);
  }
  return CycNum(acc) * H;
}

CycNum g_oracle(const Heis& h, int a, int64_t m, int b, int64_t n, bool extended) {
  const CycNum& H = h.eig.pair(a, b);
  if (H.is_zero()) return CycNum();
  int p = h.setup.p;
  Rat s = class_shift(h.eig.cls[a], p), t = Rat(1) - s;
  Vars v3{{"x", p}, {"x0", 1}, {"x2", 1}};
  auto sq = binom_expand(v3, "x0", "x2", Rat(-2), 1, -1);
  auto first = mul(mul(binom_expand(v3, "x", "x2", s), binom_expand(v3, "x", "x0", -s)), sq);
  auto second = mul(mul(binom_expand(v3, "x", "x2", s - Rat(1)), binom_expand(v3, "x", "x0", t)), sq);
  auto f = add(scale(CycNum(t), first), scale(CycNum(s), second));
  Exp e = extended ? Exp{(m - n) * p, -m - 1, n - 1} : Exp{(-m - n) * p, m - 1, n - 1};
  return f(e) * H;
}

namespace {

// <P_r alpha, beta> with the rational form
CycNum class_pairing(const Heis& h, int r, const std::vector<Rat>& alpha, const std::vector<Rat>& beta) {
  const auto& P = h.eig.proj[r];
  int d = h.setup.d;
  CycNum acc;
  for (int i = 0; i < d; ++i) {
    CycNum pa;
    for (int j = 0; j < d; ++j)
      if (!alpha[j].is_zero()) pa += P(i, j) * CycNum(alpha[j]);
    if (pa.is_zero()) continue;
    Rat gb(0);
    for (int j = 0; j < d; ++j) gb += h.setup.gram(i, j) * beta[j];
    acc += pa * CycNum(gb);
  }
  return acc;
}

void check_dim(const Heis& h, const std::vector<Rat>& v) {
  if (static_cast<int>(v.size()) != h.setup.d) throw std::invalid_argument("vector has the wrong dimension");
}

}  // namespace

Lazy<CycNum> h_series_modes(const Heis& h, const std::vector<Rat>& alpha, const std::vector<Rat>& beta) {
  check_dim(h, alpha);
  check_dim(h, beta);
  int p = h.setup.p;
  std::vector<CycNum> cp;
  for (int r = 0; r < p; ++r) cp.push_back(class_pairing(h, r, alpha, beta));
  Vars vars{{"x1", p}, {"x2", p}};
  Support sup;
  sup.box = {Interval{std::nullopt, -p - 1}, Interval{-p + 1, std::nullopt}};
  sup.degree = Rat(-2);
  return Lazy<CycNum>{vars, sup, [cp, p](const Exp& e) {
                        // x1^(-m-1) x2^(m-1), m = (e2 + p) / p > 0
                        int64_t mn = e[1] + p;
                        if (mn <= 0 || e[0] + e[1] != -2 * p) return CycNum();
                        return CycNum(Rat(mn, p)) * cp[mn % p];
                      }};
}

Lazy<CycNum> h_series_closed(const Heis& h, const std::vector<Rat>& alpha, const std::vector<Rat>& beta) {
  check_dim(h, alpha);
  check_dim(h, beta);
  int p = h.setup.p;
  Vars vars{{"x1", p}, {"x2", p}};
  std::map<Exp, CycNum> terms;
  for (int r = 1; r <= p; ++r) {
    CycNum c = class_pairing(h, r % p, alpha, beta);
    if (c.is_zero()) continue;
    // (x2/x1)^(r/p) (1 - r/p + (r/p) x1/x2)
    terms[Exp{-r, r}] += CycNum(Rat(p - r, p)) * c;
    terms[Exp{p - r, r - p}] += CycNum(Rat(r, p)) * c;
  }
  return mul(finite_series(vars, terms), binom_expand(vars, "x1", "x2", Rat(-2), 1, -1));
}

// ---- Delta_x ----

namespace {

// K_ac(m, n) = sum_bd Hinv_ab Hinv_cd g(e_b, m, e_d, n) / (m n)
CycNum delta_kernel(const Heis& h, int a, int c, int64_t m, int64_t n) {
  const auto& inv = h.eig.pair_inv;
  int d = h.setup.d;
  CycNum acc;
  for (int b = 0; b < d; ++b) {
    if (inv(a, b).is_zero()) continue;
    for (int e = 0; e < d; ++e) {
      if (inv(c, e).is_zero()) continue;
      CycNum g = g_value(h, b, m, e, n);
      if (!g.is_zero()) acc += inv(a, b) * inv(c, e) * g;
    }
  }
  if (!acc.is_zero()) acc *= Rat(1, m * n);
  return acc;
}

}  // namespace

XSeries delta_x_apply(const Heis& h, const FockVector& v) {
  XSeries out;
  FockSpace V = h.V.with_cut(kNoCut);
  int64_t top = max_weight(v);
  int d = h.setup.d;
  for (int64_t n = 1; n < top; ++n)
    for (int c = 0; c < d; ++c) {
      FockVector t = apply_mode(V, c, n, v);
      if (t.is_zero()) continue;
      for (int64_t m = 1; m + n <= top; ++m)
        for (int a = 0; a < d; ++a) {
          CycNum k = delta_kernel(h, a, c, m, n);
          if (k.is_zero()) continue;
          FockVector u = apply_mode(V, a, m, t);
          if (u.is_zero()) continue;
          auto& slot = out[-m - n];
          slot.den = 1;
          slot += CycNum(Rat(1, 2)) * k * u;
        }
    }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

XSeries delta_x_apply(const Heis& h, const XSeries& v) {
  XSeries out;
  for (const auto& [e, vec] : v)
    for (const auto& [e2, t] : delta_x_apply(h, vec)) {
      auto& slot = out[e + e2];
      slot.den = 1;
      slot += t;
    }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

XSeries exp_delta_x(const Heis& h, const FockVector& v) {
  XSeries out{{0, v}};
  XSeries term{{0, v}};
  for (int k = 1; !term.empty(); ++k) {
    term = delta_x_apply(h, term);
    for (auto& [e, t] : term) {
      FockVector s = CycNum(Rat(1, k)) * t;
      t = s;
      auto& slot = out[e];
      slot.den = 1;
      slot += t;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

// ---- pairing formula ----

namespace {

// f_I: sum over perfect pairings of the listed positions of prod g
CycNum pairing_sum(const Heis& h, const Factors& fs, std::vector<size_t>& idx) {
  if (idx.empty()) return CycNum(1);
  if (idx.size() % 2) return CycNum();
  size_t first = idx[0];
  CycNum acc;
  for (size_t t = 1; t < idx.size(); ++t) {
    size_t other = idx[t];
    CycNum g = g_value(h, fs[first].idx, -fs[first].n, fs[other].idx, -fs[other].n);
    if (g.is_zero()) continue;
    std::vector<size_t> rest;
    for (size_t u = 1; u < idx.size(); ++u)
      if (u != t) rest.push_back(idx[u]);
    CycNum r = pairing_sum(h, fs, rest);
    if (!r.is_zero()) acc += g * r;
  }
  return acc;
}

}  // namespace

FockVector pairing_mode(const Heis& h, const Factors& fs, int64_t n_num, const FockVector& w) {
  const FockSpace M = h.M.with_cut(kNoCut);
  int p = M.den;
  size_t j = fs.size();
  if (j > 20) throw std::invalid_argument("pairing_mode: too many factors");
  FockVector out;
  out.den = p;
  // J = positions kept in the normal ordered product, the rest are paired off
  for (uint32_t mask = 0; mask < (1u << j); ++mask) {
    std::vector<size_t> paired;
    Factors kept;
    int64_t S = 0;
    for (size_t l = 0; l < j; ++l) {
      if (mask >> l & 1) {
        kept.push_back(fs[l]);
      } else {
        paired.push_back(l);
        S += -fs[l].n;
      }
    }
    if (paired.size() % 2) continue;
    CycNum f = pairing_sum(h, fs, paired);
    if (f.is_zero()) continue;
    FockVector t = nop_mode(M, kept.data(), kept.size(), n_num - S * p, w);
    if (!t.is_zero()) out += f * t;
  }
  return out;
}

FockVector PairingMap::mode(const FockVector& v, int64_t n_num, const FockVector& w) const {
  FockVector out;
  out.den = M_.den;
  for (const auto& [mono, c] : v.terms) {
    FockVector t = pairing_mode(h_, Factors(mono.begin(), mono.end()), n_num, w);
    if (!t.is_zero()) out += c * t;
  }
  return out;
}

FockVector DeltaMap::mode(const FockVector& v, int64_t n_num, const FockVector& w) const {
  FockVector out;
  out.den = W_.module().den;
  int p = out.den;
  for (const auto& [e, t] : exp_delta_x(h_, v)) {
    FockVector r = W_.mode(t, n_num + e * p, w);
    if (!r.is_zero()) out += r;
  }
  return out;
}

// ---- recursion ----

size_t RecursiveMap::KeyHash::operator()(const Key& k) const {
  size_t x = std::hash<int64_t>()(k.n);
  for (const auto& f : k.fs) x = x * 1000003u ^ static_cast<size_t>(f.n * 31 + f.idx);
  x ^= 0x9e3779b9u;
  for (const auto& f : k.w) x = x * 1000003u ^ static_cast<size_t>(f.n * 37 + f.idx);
  return x;
}

FockVector RecursiveMap::mode(const FockVector& v, int64_t n_num, const FockVector& w) const {
  FockVector out;
  out.den = M_.den;
  for (const auto& [mono, c] : v.terms) {
    FockVector t = mode_of(Factors(mono.begin(), mono.end()), n_num, w);
    if (!t.is_zero()) out += c * t;
  }
  return out;
}

FockVector RecursiveMap::mode_of(const Factors& fs, int64_t n_num, const FockVector& w) const {
  FockVector out;
  out.den = M_.den;
  for (const auto& [mono, c] : w.terms) {
    FockVector t = mode_mono(fs, n_num, mono);
    if (!t.is_zero()) out += c * t;
  }
  return out;
}

FockVector RecursiveMap::mode_mono(const Factors& fs, int64_t n_num, const Monomial& wm) const {
  const int p = M_.den;
  FockVector w = FockVector::basis(wm, p);
  if (fs.empty()) return n_num == -p ? w : FockVector{};
  if (fs.size() == 1) return nop_mode(M_, fs.data(), 1, n_num, w);
  Key key{fs, n_num, wm};
  {
    std::lock_guard<std::mutex> lk(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const Mode head = fs[0];
  const int64_t nj = -head.n;
  const Factors rest(fs.begin() + 1, fs.end());
  int64_t rest_wt = 0, rest_top = 0;
  for (const auto& f : rest) {
    rest_wt += -f.n;
    rest_top = std::max<int64_t>(rest_top, -f.n);
  }
  const int64_t W = monomial_weight(wm);
  const int64_t E = -n_num - p;  // x exponent numerator of the wanted coefficient

  Vars v2{{"x1", p}, {"x", p}};
  Support sup;
  sup.box = {Interval{}, Interval{-(rest_wt * p + W), std::nullopt}};
  const RecursiveMap* self = this;
  const FockSpace* M = &M_;
  // P(a, b) = head(m1) Y(rest)_m w with x1^a, x^b
  auto P = memo(Lazy<FockVector>{v2, sup, [=](const Exp& e) {
                                   FockVector t = self->mode_mono(rest, -e[1] - p, wm);
                                   if (t.is_zero()) return t;
                                   return apply_mode(*M, head.idx, Rat(-e[0] - p, p), t);
                                 }});
  const int64_t x1lo = -(p + W);
  int k = std::max<int64_t>(2, rest_top + 1);
  for (;; ++k) {
    if (k > 8) throw ResolvingPowerExceeded("recursive map: no resolving power <= 8 certifies the limit");
    auto Q = mul(binom_expand(v2, "x1", "x", Rat(k), 1, -1), P);
    // (x1-x)^k makes the product local; then x1 >= -(1 + wt w). Check a band below.
    int64_t K = nj + k - 1;
    bool ok = true;
    for (int64_t a = x1lo - 2 * p; a < x1lo && ok; ++a)
      if (!Q({a, E + K * p - a}).is_zero()) ok = false;
    if (!ok) continue;
    Q.sup.box[0].lo = x1lo;
    auto L = substitute_limit(Q, "x1", 0, "x", "x0");
    FockVector r = L({E, K});
    {
      std::lock_guard<std::mutex> lk(mu_);
      max_k_ = std::max(max_k_, k);
      cache_.emplace(key, r);
    }
    return r;
  }
}

Context twisted_context(const Heis& h, const VertexMap& ym, const VertexMap& yv) {
  Context c;
  c.ym = &ym;
  c.yv = &yv;
  c.cls = h.eig.cls;
  c.p = h.setup.p;
  return c;
}

Report check_jacobi_fixed(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                          int64_t radius) {
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& [mono, k] : u.terms) {
    int64_t cl = 0;
    for (const auto& f : mono) cl += c.cls[f.idx];
    if (cl % c.p != 0) throw std::invalid_argument("check_jacobi_fixed: u is not fixed by nu");
  }
  const int p = c.p;
  Vars v3{{"x0", 1}, {"x1", p}, {"x2", p}};
  auto x0inv = monomial(v3, {-1, 0, 0});
  auto t1 = mul(mul(x0inv, delta_binomial(v3, "x1", 1, "x2", -1, "x0", 1, 0, 1)),
                embed(yy_series(c, u, v, w, false), v3));
  auto t2 = mul(mul(x0inv, delta_binomial(v3, "x2", 1, "x1", -1, "x0", -1, 0, 1)),
                embed(yy_series(c, u, v, w, true), v3));
  auto lhs = add(t1, scale(CycNum(-1), t2));
  auto rhs = mul(mul(monomial(v3, {0, 0, -p}), delta_binomial(v3, "x1", 1, "x0", -1, "x2", 1, 0, 1)),
                 embed(z_series(c, u, v, w), v3));
  Report r = compare_on(lhs, rhs, radius_box(v3, radius), "jacobi_fixed",
                        "x0^-1 delta((x1-x2)/x0) Y_M(u,x1)Y_M(v,x2)w - x0^-1 delta((x2-x1)/(-x0)) Y_M(v,x2)Y_M(u,x1)w"
                        " = x2^-1 delta((x1-x0)/x2) Y_M(Y(u,x0)v,x2)w");
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace twh
