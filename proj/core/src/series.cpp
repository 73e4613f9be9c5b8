#include "twh/series.hpp"

#include <sstream>

namespace twh {

int var_index(const Vars& vars, const std::string& name) {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown variable " + name);
}

Rat exp_value(const Vars& vars, const Exp& e, size_t i) { return Rat(e[i], vars[i].den); }

Rat exp_total(const Vars& vars, const Exp& e) {
  Rat t(0);
  for (size_t i = 0; i < e.size(); ++i) t += Rat(e[i], vars[i].den);
  return t;
}

std::string exp_str(const Vars& vars, const Exp& e) {
  std::string s = "(";
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += Rat(e[i], vars[i].den).str();
  }
  return s + ")";
}

std::optional<int64_t> as_num(const Rat& value, int den) {
  Rat t = value * Rat(den);
  if (!t.is_integer()) return std::nullopt;
  return t.to_int();
}

Box box_intersect(const Box& a, const Box& b) {
  Box r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    r[i] = a[i];
    if (b[i].lo && (!r[i].lo || *b[i].lo > *r[i].lo)) r[i].lo = b[i].lo;
    if (b[i].hi && (!r[i].hi || *b[i].hi < *r[i].hi)) r[i].hi = b[i].hi;
  }
  return r;
}

bool box_contains(const Box& b, const Exp& e) {
  for (size_t i = 0; i < e.size(); ++i)
    if (!b[i].contains(e[i])) return false;
  return true;
}

Box radius_box(const Vars& vars, int64_t radius) {
  Box b;
  for (const auto& v : vars) b.push_back({-radius * v.den, radius * v.den});
  return b;
}

Lazy<CycNum> monomial(const Vars& vars, const Exp& e, const CycNum& c) {
  Support sup;
  for (auto x : e) sup.box.push_back(Interval::point(x));
  sup.degree = exp_total(vars, e);
  Exp at = e;
  return Lazy<CycNum>{vars, sup, [at, c](const Exp& x) { return x == at ? c : CycNum(); }};
}

Lazy<CycNum> finite_series(const Vars& vars, const std::map<Exp, CycNum>& terms) {
  Support sup;
  sup.box.resize(vars.size());
  std::optional<Rat> deg;
  bool homogeneous = true;
  for (const auto& [e, c] : terms) {
    for (size_t i = 0; i < vars.size(); ++i) {
      auto& iv = sup.box[i];
      if (!iv.lo || e[i] < *iv.lo) iv.lo = e[i];
      if (!iv.hi || e[i] > *iv.hi) iv.hi = e[i];
    }
    Rat t = exp_total(vars, e);
    if (!deg) deg = t;
    else if (*deg != t) homogeneous = false;
  }
  if (terms.empty()) {
    for (auto& iv : sup.box) iv = Interval::point(0);
    deg = Rat(0);
  }
  if (homogeneous) sup.degree = deg;
  auto t = std::make_shared<std::map<Exp, CycNum>>(terms);
  return Lazy<CycNum>{vars, sup, [t](const Exp& x) {
                        auto it = t->find(x);
                        return it == t->end() ? CycNum() : it->second;
                      }};
}

namespace {

int sign_pow(int s, int64_t k) { return (s < 0 && (k % 2 != 0)) ? -1 : 1; }

}  // namespace

Lazy<CycNum> binom_expand(const Vars& vars, const std::string& a, const std::string& b, const Rat& e, int sa,
                          int sb) {
  int ia = var_index(vars, a), ib = var_index(vars, b);
  if (sa < 0 && !e.is_integer()) throw std::invalid_argument("binom_expand: (-x)^e needs integral e");
  auto ea = as_num(e, vars[ia].den);
  if (!ea) throw std::invalid_argument("binom_expand: exponent not representable in " + a);
  Support sup;
  for (size_t i = 0; i < vars.size(); ++i) sup.box.push_back(Interval::point(0));
  bool poly = e.is_integer() && e.sign() >= 0;
  sup.box[ib] = {0, poly ? std::optional<int64_t>(e.to_int() * vars[ib].den) : std::nullopt};
  sup.box[ia] = {poly ? std::optional<int64_t>(0) : std::nullopt, *ea};
  sup.degree = e;
  Vars vs = vars;
  return Lazy<CycNum>{vars, sup, [=](const Exp& x) -> CycNum {
                        for (size_t i = 0; i < x.size(); ++i)
                          if (static_cast<int>(i) != ia && static_cast<int>(i) != ib && x[i] != 0) return CycNum();
                        if (x[ib] < 0 || x[ib] % vs[ib].den != 0) return CycNum();
                        int64_t k = x[ib] / vs[ib].den;
                        if (Rat(x[ia], vs[ia].den) != e - Rat(k)) return CycNum();
                        Rat c = binom_general(e, k);
                        if (sa < 0) c *= Rat(sign_pow(sa, (e - Rat(k)).to_int()));
                        c *= Rat(sign_pow(sb, k));
                        return CycNum(c);
                      }};
}

Lazy<CycNum> delta_series(const Vars& vars, const std::string& num, const std::string& den, int64_t s, int p) {
  int in = var_index(vars, num);
  int id = den.empty() ? -1 : var_index(vars, den);
  if (vars[in].den % p != 0 || (id >= 0 && vars[id].den % p != 0))
    throw std::invalid_argument("delta_series: variable denominators must admit 1/" + std::to_string(p));
  Support sup;
  for (size_t i = 0; i < vars.size(); ++i) sup.box.push_back(Interval::point(0));
  sup.box[in] = {};
  if (id >= 0) {
    sup.box[id] = {};
    sup.degree = Rat(0);
  }
  Vars vs = vars;
  return Lazy<CycNum>{vars, sup, [=](const Exp& x) -> CycNum {
                        for (size_t i = 0; i < x.size(); ++i)
                          if (static_cast<int>(i) != in && static_cast<int>(i) != id && x[i] != 0) return CycNum();
                        Rat v(x[in], vs[in].den);
                        auto n = as_num(v, p);
                        if (!n) return CycNum();
                        if (id >= 0 && Rat(x[id], vs[id].den) != -v) return CycNum();
                        return CycNum::root(p, s * *n);
                      }};
}

Lazy<CycNum> delta_binomial(const Vars& vars, const std::string& a, int sa, const std::string& b, int sb,
                            const std::string& c, int sc, int64_t s, int p) {
  int ia = var_index(vars, a), ib = var_index(vars, b), ic = var_index(vars, c);
  if (p > 1 && (sa < 0 || sc < 0)) throw std::invalid_argument("delta_binomial: sign on a fractional power");
  if (vars[ia].den % p != 0 || vars[ic].den % p != 0)
    throw std::invalid_argument("delta_binomial: variable denominators must admit 1/" + std::to_string(p));
  Support sup;
  for (size_t i = 0; i < vars.size(); ++i) sup.box.push_back(Interval::point(0));
  sup.box[ia] = {};
  sup.box[ib] = {0, std::nullopt};
  sup.box[ic] = {};
  sup.degree = Rat(0);
  Vars vs = vars;
  return Lazy<CycNum>{vars, sup, [=](const Exp& x) -> CycNum {
                        for (size_t i = 0; i < x.size(); ++i)
                          if (static_cast<int>(i) != ia && static_cast<int>(i) != ib && static_cast<int>(i) != ic &&
                              x[i] != 0)
                            return CycNum();
                        if (x[ib] < 0 || x[ib] % vs[ib].den != 0) return CycNum();
                        int64_t k = x[ib] / vs[ib].den;
                        Rat np = -Rat(x[ic], vs[ic].den);  // n/p
                        auto n = as_num(np, p);
                        if (!n) return CycNum();
                        if (Rat(x[ia], vs[ia].den) != np - Rat(k)) return CycNum();
                        Rat coef = binom_general(np, k) * Rat(sign_pow(sb, k));
                        if (p == 1) {
                          coef *= Rat(sign_pow(sa, *n - k));
                          coef *= Rat(sign_pow(sc, *n));
                        }
                        CycNum w = CycNum::root(p, s * *n);
                        w *= coef;
                        return w;
                      }};
}

Series<CycNum> binom_expand(const Vars& vars, const std::string& a, const std::string& b, const Rat& e,
                            const Box& window) {
  int ib = var_index(vars, b);
  auto l = binom_expand(vars, a, b, e);
  bool poly = e.is_integer() && e.sign() >= 0;
  if (!poly && !window[ib].hi) throw OutsideWindow("binom_expand: window must be finite in " + b);
  return materialize(l, window);
}

Series<CycNum> delta_series(const Vars& vars, const std::string& num, const std::string& den, int64_t s, int p,
                            const Box& window) {
  return materialize(delta_series(vars, num, den, s, p), window);
}

std::string to_text(const Series<CycNum>& s) {
  std::ostringstream os;
  for (const auto& [e, c] : s.terms) {
    os << exp_str(s.vars, e) << '\t';
    auto co = c.coords();
    if (c.is_rational()) {
      os << co[0];
    } else {
      for (size_t i = 0; i < co.size(); ++i) os << (i ? " " : "") << co[i];
    }
    os << '\n';
  }
  return os.str();
}

std::map<Exp, CycNum> terms_from_text(const Vars& vars, const std::string& text, int p) {
  std::map<Exp, CycNum> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.front() != '(') throw std::invalid_argument("bad series line: " + line);
    std::string tup = line.substr(1, line.find(')') - 1);
    Exp e;
    std::istringstream ts(tup);
    std::string tok;
    size_t i = 0;
    while (std::getline(ts, tok, ',')) {
      auto n = as_num(Rat(tok), vars.at(i).den);
      if (!n) throw std::invalid_argument("exponent " + tok + " not representable");
      e.push_back(*n);
      ++i;
    }
    std::istringstream cs(line.substr(tab + 1));
    CycNum::Coeffs co;
    while (cs >> tok) co.push_back(Rat(tok));
    out.emplace(e, co.size() == 1 ? CycNum(co[0]) : CycNum(p, co));
  }
  return out;
}

}  // namespace twh
