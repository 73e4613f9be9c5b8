#pragma once

#include <boost/container/small_vector.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "twh/cyc.hpp"
#include "twh/exact.hpp"
#include "twh/report.hpp"

namespace twh {

struct OutsideWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnboundedConvolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnboundedSubstitution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Var {
  std::string name;
  int den = 1;
  bool operator==(const Var&) const = default;
};
using Vars = std::vector<Var>;

// exponent numerators; the value of slot i is e[i] / vars[i].den
using Exp = boost::container::small_vector<int64_t, 4>;

struct ExpHash {
  size_t operator()(const Exp& e) const {
    size_t h = 0x345678;
    for (auto x : e) h = (h ^ static_cast<size_t>(x)) * 1000003u;
    return h;
  }
};

// closed interval of numerators, either end may be open-ended
struct Interval {
  std::optional<int64_t> lo, hi;
  static Interval point(int64_t v) { return {v, v}; }
  static Interval all() { return {}; }
  bool finite() const { return lo && hi; }
  bool contains(int64_t v) const { return (!lo || v >= *lo) && (!hi || v <= *hi); }
};
using Box = std::vector<Interval>;

// Certificate for the exact series a truncation comes from: exponents lie in
// the box, and when degree is set every exponent sums to it.
struct Support {
  Box box;
  std::optional<Rat> degree;
};

int var_index(const Vars& vars, const std::string& name);
Rat exp_value(const Vars& vars, const Exp& e, size_t i);
Rat exp_total(const Vars& vars, const Exp& e);
std::string exp_str(const Vars& vars, const Exp& e);
// numerator of value over den, if integral
std::optional<int64_t> as_num(const Rat& value, int den);
Box box_intersect(const Box& a, const Box& b);
bool box_contains(const Box& b, const Exp& e);
Box radius_box(const Vars& vars, int64_t radius);  // |value| <= radius in every slot

template <class C>
struct Lazy {
  Vars vars;
  Support sup;
  std::function<C(const Exp&)> f;
  C operator()(const Exp& e) const { return f(e); }
};

template <class C>
struct Series {
  Vars vars;
  std::map<Exp, C> terms;
  Box window;  // faithful region
  Support sup;

  C coeff(const Exp& e) const {
    if (!box_contains(window, e)) throw OutsideWindow("coefficient " + exp_str(vars, e) + " outside window");
    auto it = terms.find(e);
    return it == terms.end() ? C{} : it->second;
  }
  Lazy<C> lazy() const {
    auto self = std::make_shared<Series<C>>(*this);
    return Lazy<C>{vars, sup, [self](const Exp& e) { return self->coeff(e); }};
  }
  bool operator==(const Series& o) const { return vars == o.vars && terms == o.terms; }
};

namespace detail {

inline std::optional<int64_t> add_opt(std::optional<int64_t> a, std::optional<int64_t> b) {
  if (a && b) return *a + *b;
  return std::nullopt;
}

// Enumerate every integer point of a box (all slots finite), calling fn(e).
template <class Fn>
void for_box(const std::vector<std::pair<int64_t, int64_t>>& ranges, Exp& e, size_t i, Fn&& fn) {
  if (i == ranges.size()) {
    fn(e);
    return;
  }
  for (int64_t v = ranges[i].first; v <= ranges[i].second; ++v) {
    e[i] = v;
    for_box(ranges, e, i + 1, fn);
  }
}

// Enumerate points of `ranges` (slot `pin` ignored) completing slot `pin` so
// that the total value equals `total`.
template <class Fn>
void for_pinned(const Vars& vars, const Box& ranges, size_t pin, const Rat& total, Fn&& fn) {
  std::vector<std::pair<int64_t, int64_t>> r;
  for (size_t i = 0; i < ranges.size(); ++i) {
    if (i == pin) {
      r.push_back({0, 0});
    } else {
      if (!ranges[i].finite()) throw UnboundedConvolution("unbounded slot " + vars[i].name);
      if (*ranges[i].lo > *ranges[i].hi) return;
      r.push_back({*ranges[i].lo, *ranges[i].hi});
    }
  }
  Exp e(ranges.size(), 0);
  for_box(r, e, 0, [&](Exp& x) {
    Rat rest(0);
    for (size_t i = 0; i < x.size(); ++i)
      if (i != pin) rest += Rat(x[i], vars[i].den);
    auto n = as_num(total - rest, vars[pin].den);
    if (!n || !ranges[pin].contains(*n)) return;
    x[pin] = *n;
    fn(x);
  });
}

}  // namespace detail

// All points of `ranges` (intersected with the degree hyperplane when known).
// Throws T when some slot stays unbounded.
template <class T, class Fn>
void enumerate_region(const Vars& vars, const Box& ranges, const std::optional<Rat>& degree, Fn&& fn) {
  std::vector<size_t> open;
  for (size_t i = 0; i < ranges.size(); ++i) {
    if (ranges[i].lo && ranges[i].hi && *ranges[i].lo > *ranges[i].hi) return;
    if (!ranges[i].finite()) open.push_back(i);
  }
  if (degree) {
    if (open.size() > 1) throw T("more than one unbounded slot");
    size_t pin = 0;
    if (open.size() == 1) {
      pin = open[0];
    } else {
      if (ranges.empty()) return;
      int64_t best = -1;
      for (size_t i = 0; i < ranges.size(); ++i) {
        int64_t w = *ranges[i].hi - *ranges[i].lo;
        if (w > best) {
          best = w;
          pin = i;
        }
      }
    }
    detail::for_pinned(vars, ranges, pin, *degree, fn);
    return;
  }
  if (!open.empty()) throw T("unbounded slot " + vars[open[0]].name);
  std::vector<std::pair<int64_t, int64_t>> r;
  for (const auto& iv : ranges) r.push_back({*iv.lo, *iv.hi});
  Exp e(ranges.size(), 0);
  detail::for_box(r, e, 0, fn);
}

template <class C>
Series<C> materialize(const Lazy<C>& a, const Box& window) {
  Series<C> s;
  s.vars = a.vars;
  s.window = window;
  s.sup = a.sup;
  Box ranges = box_intersect(window, a.sup.box);
  enumerate_region<OutsideWindow>(a.vars, ranges, a.sup.degree, [&](const Exp& e) {
    C c = a(e);
    if (!is_zero(c)) s.terms.emplace(e, std::move(c));
  });
  return s;
}

template <class C>
Lazy<C> memo(const Lazy<C>& a) {
  struct State {
    std::mutex mu;
    std::unordered_map<Exp, C, ExpHash> cache;
  };
  auto st = std::make_shared<State>();
  auto f = a.f;
  return Lazy<C>{a.vars, a.sup, [st, f](const Exp& e) {
                   {
                     std::lock_guard<std::mutex> lk(st->mu);
                     auto it = st->cache.find(e);
                     if (it != st->cache.end()) return it->second;
                   }
                   C v = f(e);
                   std::lock_guard<std::mutex> lk(st->mu);
                   st->cache.emplace(e, v);
                   return v;
                 }};
}

inline void require_same_vars(const Vars& a, const Vars& b) {
  if (a != b) throw std::invalid_argument("series over different variable lists");
}

template <class A, class B>
auto mul(const Lazy<A>& a, const Lazy<B>& b) {
  using R = decltype(std::declval<A>() * std::declval<B>());
  require_same_vars(a.vars, b.vars);
  Support sup;
  for (size_t i = 0; i < a.vars.size(); ++i)
    sup.box.push_back({detail::add_opt(a.sup.box[i].lo, b.sup.box[i].lo),
                       detail::add_opt(a.sup.box[i].hi, b.sup.box[i].hi)});
  if (a.sup.degree && b.sup.degree) sup.degree = *a.sup.degree + *b.sup.degree;
  auto fa = a.f;
  auto fb = b.f;
  Vars vars = a.vars;
  Support sa = a.sup, sb = b.sup;
  return Lazy<R>{vars, sup, [=](const Exp& e) -> R {
                   R acc{};
                   Rat total = exp_total(vars, e);
                   if (sa.degree && sb.degree && total != *sa.degree + *sb.degree) return acc;
                   Box ranges(vars.size());
                   for (size_t i = 0; i < vars.size(); ++i) {
                     auto lo = sa.box[i].lo;
                     if (sb.box[i].hi && (!lo || e[i] - *sb.box[i].hi > *lo)) lo = e[i] - *sb.box[i].hi;
                     auto hi = sa.box[i].hi;
                     if (sb.box[i].lo && (!hi || e[i] - *sb.box[i].lo < *hi)) hi = e[i] - *sb.box[i].lo;
                     ranges[i] = {lo, hi};
                   }
                   std::optional<Rat> da;
                   if (sa.degree) da = *sa.degree;
                   else if (sb.degree) da = total - *sb.degree;
                   Exp e2(e.size());
                   enumerate_region<UnboundedConvolution>(vars, ranges, da, [&](const Exp& e1) {
                     A ca = fa(e1);
                     if (is_zero(ca)) return;
                     for (size_t i = 0; i < e.size(); ++i) e2[i] = e[i] - e1[i];
                     B cb = fb(e2);
                     if (is_zero(cb)) return;
                     acc += ca * cb;
                   });
                   return acc;
                 }};
}

template <class A, class B>
auto mul(const Series<A>& a, const Series<B>& b, const Box& window) {
  return materialize(mul(a.lazy(), b.lazy()), window);
}

template <class C>
Lazy<C> add(const Lazy<C>& a, const Lazy<C>& b) {
  require_same_vars(a.vars, b.vars);
  Support sup;
  for (size_t i = 0; i < a.vars.size(); ++i) {
    Interval iv;
    if (a.sup.box[i].lo && b.sup.box[i].lo) iv.lo = std::min(*a.sup.box[i].lo, *b.sup.box[i].lo);
    if (a.sup.box[i].hi && b.sup.box[i].hi) iv.hi = std::max(*a.sup.box[i].hi, *b.sup.box[i].hi);
    sup.box.push_back(iv);
  }
  if (a.sup.degree && b.sup.degree && *a.sup.degree == *b.sup.degree) sup.degree = a.sup.degree;
  auto fa = a.f, fb = b.f;
  return Lazy<C>{a.vars, sup, [fa, fb](const Exp& e) {
                   C c = fa(e);
                   c += fb(e);
                   return c;
                 }};
}

template <class C>
Series<C> add(const Series<C>& a, const Series<C>& b) {
  require_same_vars(a.vars, b.vars);
  Series<C> s;
  s.vars = a.vars;
  s.window = box_intersect(a.window, b.window);
  s.sup = add(a.lazy(), b.lazy()).sup;
  for (const auto* src : {&a, &b})
    for (const auto& [e, c] : src->terms) {
      if (!box_contains(s.window, e)) continue;
      auto [it, fresh] = s.terms.emplace(e, c);
      if (!fresh) {
        it->second += c;
        if (is_zero(it->second)) s.terms.erase(it);
      }
    }
  return s;
}

template <class S, class C>
Lazy<C> scale(const S& k, const Lazy<C>& a) {
  auto fa = a.f;
  return Lazy<C>{a.vars, a.sup, [k, fa](const Exp& e) { return C(k * fa(e)); }};
}

template <class S, class C>
Series<C> scale(const S& k, const Series<C>& a) {
  Series<C> s = a;
  s.terms.clear();
  for (const auto& [e, c] : a.terms) {
    C v = k * c;
    if (!is_zero(v)) s.terms.emplace(e, std::move(v));
  }
  return s;
}

// coefficient series of var^-1
template <class C>
Lazy<C> residue(const Lazy<C>& a, const std::string& var) {
  int iv = var_index(a.vars, var);
  Vars vars;
  Support sup;
  for (size_t i = 0; i < a.vars.size(); ++i) {
    if (static_cast<int>(i) == iv) continue;
    vars.push_back(a.vars[i]);
    sup.box.push_back(a.sup.box[i]);
  }
  if (a.sup.degree) sup.degree = *a.sup.degree + Rat(1);
  int64_t m1 = -a.vars[iv].den;
  auto fa = a.f;
  return Lazy<C>{vars, sup, [fa, iv, m1](const Exp& e) {
                   Exp full(e.begin(), e.end());
                   full.insert(full.begin() + iv, m1);
                   return fa(full);
                 }};
}

template <class C>
Series<C> residue(const Series<C>& a, const std::string& var) {
  int iv = var_index(a.vars, var);
  if (!a.window[iv].contains(-a.vars[iv].den)) throw OutsideWindow("residue: x^-1 outside window");
  Box w;
  for (size_t i = 0; i < a.vars.size(); ++i)
    if (static_cast<int>(i) != iv) w.push_back(a.window[i]);
  Series<C> s;
  auto r = residue(a.lazy(), var);
  s.vars = r.vars;
  s.sup = r.sup;
  s.window = w;
  for (const auto& [e, c] : a.terms) {
    if (e[iv] != -a.vars[iv].den) continue;
    Exp o;
    for (size_t i = 0; i < e.size(); ++i)
      if (static_cast<int>(i) != iv) o.push_back(e[i]);
    s.terms.emplace(o, c);
  }
  return s;
}

// x^(m/p) -> w_p^(s m) (sc x_C + x_D)^(m/p), expanded in nonnegative powers of x_D;
// sc = -1 needs integral powers of x
template <class C>
Lazy<C> substitute_limit(const Lazy<C>& a, const std::string& var, int64_t s, const std::string& cname,
                         const std::string& dname, int sc = 1) {
  int iv = var_index(a.vars, var);
  int p = a.vars[iv].den;
  if (sc != 1 && (sc != -1 || p != 1)) throw std::invalid_argument("substitute_limit: sign needs integral powers");
  int ic = -1, id = -1;
  for (size_t i = 0; i < a.vars.size(); ++i) {
    if (a.vars[i].name == cname) ic = static_cast<int>(i);
    if (a.vars[i].name == dname) id = static_cast<int>(i);
  }
  if (ic == iv || id == iv || cname == dname) throw std::invalid_argument("substitute_limit: bad target");
  if (ic >= 0 && a.vars[ic].den % p != 0)
    throw std::invalid_argument("substitute_limit: denominator of " + cname + " does not admit 1/" + std::to_string(p));
  Vars vars;
  std::vector<int> from;  // output slot -> input slot (or -1 for new C/D)
  Support sup;
  for (size_t i = 0; i < a.vars.size(); ++i) {
    if (static_cast<int>(i) == iv) continue;
    vars.push_back(a.vars[i]);
    from.push_back(static_cast<int>(i));
    sup.box.push_back(a.sup.box[i]);
  }
  int oc = -1, od = -1;
  for (size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].name == cname) oc = static_cast<int>(j);
    if (vars[j].name == dname) od = static_cast<int>(j);
  }
  if (oc < 0) {
    vars.push_back({cname, p});
    from.push_back(-1);
    sup.box.push_back({});
    oc = static_cast<int>(vars.size()) - 1;
  }
  if (od < 0) {
    vars.push_back({dname, 1});
    from.push_back(-1);
    sup.box.push_back({});
    od = static_cast<int>(vars.size()) - 1;
  }
  // C: upper bound survives, lower bound is lost; D: lower bound survives
  {
    const Interval& xv = a.sup.box[iv];
    Interval c;
    if (xv.hi) {
      Rat h(*xv.hi, p);
      if (ic >= 0) {
        if (a.sup.box[ic].hi) c.hi = as_num(h + Rat(*a.sup.box[ic].hi, a.vars[ic].den), vars[oc].den);
      } else {
        c.hi = as_num(h, vars[oc].den);
      }
    }
    sup.box[oc] = c;
    Interval d;
    if (id >= 0) d.lo = a.sup.box[id].lo;
    else d.lo = 0;
    sup.box[od] = d;
  }
  sup.degree = a.sup.degree;
  auto fa = a.f;
  Vars in_vars = a.vars;
  Support in_sup = a.sup;
  return Lazy<C>{vars, sup, [=](const Exp& E) -> C {
                   C acc{};
                   Exp in(in_vars.size(), 0);
                   for (size_t j = 0; j < from.size(); ++j)
                     if (from[j] >= 0) in[from[j]] = E[j];
                   Rat EC(E[oc], vars[oc].den), ED(E[od], vars[od].den);
                   auto one_k = [&](int64_t k) {
                     Rat T = EC + Rat(k);
                     auto term = [&](int64_t anum) {
                       in[iv] = anum;
                       C c = fa(in);
                       if (is_zero(c)) return;
                       Rat b = binom_general(Rat(anum, p), k);
                       if (b.is_zero()) return;
                       if (sc < 0 && (anum - k) % 2 != 0) b = -b;
                       CycNum w = CycNum::root(p, s * anum);
                       w *= b;
                       acc += w * c;
                     };
                     if (ic >= 0) {
                       const Interval& xv = in_sup.box[iv];
                       const Interval& cv = in_sup.box[ic];
                       std::optional<Rat> lo, hi;
                       if (xv.lo) lo = Rat(*xv.lo, p);
                       if (cv.hi) {
                         Rat l2 = T - Rat(*cv.hi, in_vars[ic].den);
                         if (!lo || l2 > *lo) lo = l2;
                       }
                       if (xv.hi) hi = Rat(*xv.hi, p);
                       if (cv.lo) {
                         Rat h2 = T - Rat(*cv.lo, in_vars[ic].den);
                         if (!hi || h2 < *hi) hi = h2;
                       }
                       if (!lo || !hi)
                         throw UnboundedSubstitution("substitute_limit: support of " + in_vars[iv].name +
                                                     " not certified bounded");
                       int64_t alo = (*lo * Rat(p)).floor();
                       if (Rat(alo, p) < *lo) ++alo;
                       int64_t ahi = (*hi * Rat(p)).floor();
                       for (int64_t an = alo; an <= ahi; ++an) {
                         auto bc = as_num(T - Rat(an, p), in_vars[ic].den);
                         if (!bc) continue;
                         in[ic] = *bc;
                         term(an);
                       }
                     } else {
                       auto an = as_num(T, p);
                       if (an) term(*an);
                     }
                   };
                   if (id >= 0) {
                     const Interval& dv = in_sup.box[id];
                     if (!dv.lo) throw UnboundedSubstitution("substitute_limit: " + dname + " not bounded below");
                     for (int64_t bd = *dv.lo;; ++bd) {
                       Rat bval(bd, in_vars[id].den);
                       if (bval > ED) break;
                       if (dv.hi && bd > *dv.hi) break;
                       Rat kv = ED - bval;
                       if (!kv.is_integer()) continue;
                       in[id] = bd;
                       one_k(kv.to_int());
                     }
                   } else {
                     if (ED.is_integer() && ED.sign() >= 0) one_k(ED.to_int());
                   }
                   return acc;
                 }};
}

template <class C>
Series<C> substitute_limit(const Series<C>& a, const std::string& var, int64_t s, const std::string& cname,
                           const std::string& dname, const Box& window, int sc = 1) {
  return materialize(substitute_limit(a.lazy(), var, s, cname, dname, sc), window);
}

// keep exponents of var in q/p + Z
template <class C>
Lazy<C> project_integral(const Lazy<C>& a, const std::string& var, int64_t q) {
  int iv = var_index(a.vars, var);
  int p = a.vars[iv].den;
  int64_t qq = ((q % p) + p) % p;
  auto fa = a.f;
  return Lazy<C>{a.vars, a.sup, [fa, iv, p, qq](const Exp& e) {
                   if ((((e[iv] % p) + p) % p) != qq) return C{};
                   return fa(e);
                 }};
}

template <class C>
Series<C> project_integral(const Series<C>& a, const std::string& var, int64_t q) {
  Series<C> s = a;
  int iv = var_index(a.vars, var);
  int p = a.vars[iv].den;
  int64_t qq = ((q % p) + p) % p;
  for (auto it = s.terms.begin(); it != s.terms.end();) {
    if ((((it->first[iv] % p) + p) % p) != qq) it = s.terms.erase(it);
    else ++it;
  }
  return s;
}

// x^(1/p) -> w_p^r x^(1/p) in one variable
template <class C>
Lazy<C> rotate(const Lazy<C>& a, const std::string& var, int64_t r) {
  int iv = var_index(a.vars, var);
  int p = a.vars[iv].den;
  auto fa = a.f;
  return Lazy<C>{a.vars, a.sup, [fa, iv, p, r](const Exp& e) {
                   C c = fa(e);
                   if (is_zero(c)) return c;
                   return C(CycNum::root(p, r * e[iv]) * c);
                 }};
}

// Re-express a series over a larger (or reordered) variable list; slots absent
// from the source carry exponent zero.
template <class C>
Lazy<C> embed(const Lazy<C>& a, const Vars& vars) {
  std::vector<int> src(vars.size(), -1);
  Support sup;
  for (size_t j = 0; j < vars.size(); ++j) {
    for (size_t i = 0; i < a.vars.size(); ++i)
      if (a.vars[i].name == vars[j].name) {
        if (a.vars[i].den != vars[j].den && vars[j].den % a.vars[i].den != 0)
          throw std::invalid_argument("embed: denominator mismatch for " + vars[j].name);
        src[j] = static_cast<int>(i);
      }
    if (src[j] < 0) {
      sup.box.push_back(Interval::point(0));
    } else {
      const Interval& iv = a.sup.box[src[j]];
      int64_t f = vars[j].den / a.vars[src[j]].den;
      Interval o;
      if (iv.lo) o.lo = *iv.lo * f;
      if (iv.hi) o.hi = *iv.hi * f;
      sup.box.push_back(o);
    }
  }
  for (size_t i = 0; i < a.vars.size(); ++i) {
    bool found = false;
    for (const auto& v : vars) found |= v.name == a.vars[i].name;
    if (!found) throw std::invalid_argument("embed: variable " + a.vars[i].name + " dropped");
  }
  sup.degree = a.sup.degree;
  auto fa = a.f;
  Vars in_vars = a.vars;
  return Lazy<C>{vars, sup, [=](const Exp& e) -> C {
                   Exp in(in_vars.size(), 0);
                   for (size_t j = 0; j < vars.size(); ++j) {
                     if (src[j] < 0) {
                       if (e[j] != 0) return C{};
                     } else {
                       int64_t f = vars[j].den / in_vars[src[j]].den;
                       if (e[j] % f != 0) return C{};
                       in[src[j]] = e[j] / f;
                     }
                   }
                   return fa(in);
                 }};
}

// ---- scalar constructors ----

Lazy<CycNum> monomial(const Vars& vars, const Exp& e, const CycNum& c = CycNum(1));
Lazy<CycNum> finite_series(const Vars& vars, const std::map<Exp, CycNum>& terms);
// (sA xA + sB xB)^e expanded in nonnegative integral powers of xB; sA = -1 needs integral e
Lazy<CycNum> binom_expand(const Vars& vars, const std::string& a, const std::string& b, const Rat& e, int sa = 1,
                          int sb = 1);
// delta(w_p^s (x_num / x_den)^(1/p)); den may be empty for delta(w_p^s x^(1/p))
Lazy<CycNum> delta_series(const Vars& vars, const std::string& num, const std::string& den, int64_t s, int p);
// delta(w_p^s ((sA xA + sB xB) / (sC xC))^(1/p)); sA = sC = 1 unless p = 1
Lazy<CycNum> delta_binomial(const Vars& vars, const std::string& a, int sa, const std::string& b, int sb,
                            const std::string& c, int sc, int64_t s, int p);

Series<CycNum> binom_expand(const Vars& vars, const std::string& a, const std::string& b, const Rat& e,
                            const Box& window);
Series<CycNum> delta_series(const Vars& vars, const std::string& num, const std::string& den, int64_t s, int p,
                            const Box& window);

// text form: one line per term, "(e1,e2,...)\tcoefficient"
std::string to_text(const Series<CycNum>& s);
std::map<Exp, CycNum> terms_from_text(const Vars& vars, const std::string& text, int p);

template <class C>
std::string coeff_str(const C& c);

// compare two lazy series on a window; the report keeps the first mismatch
template <class C>
Report compare_on(const Lazy<C>& lhs, const Lazy<C>& rhs, const Box& window, std::string id, std::string eq) {
  Report r;
  r.id = std::move(id);
  r.eq = std::move(eq);
  Box ranges = window;
  size_t n = 0, nz = 0;
  enumerate_region<OutsideWindow>(lhs.vars, ranges, std::nullopt, [&](const Exp& e) {
    if (!r.ok()) return;
    C a = lhs(e), b = rhs(e);
    ++n;
    if (!is_zero(a)) ++nz;
    if (!(a == b))
      r.fail("at " + exp_str(lhs.vars, e) + ": lhs " + coeff_str(a) + " rhs " + coeff_str(b));
  });
  r.detail = std::to_string(n) + " coefficients, " + std::to_string(nz) + " nonzero";
  return r;
}

template <>
inline std::string coeff_str<CycNum>(const CycNum& c) {
  return c.str();
}

}  // namespace twh
