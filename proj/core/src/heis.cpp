#include "twh/heis.hpp"

#include <algorithm>

namespace twh {

namespace {

int64_t mod(int64_t a, int64_t m) { return ((a % m) + m) % m; }

Matrix<Rat> rat_identity(int d) { return Matrix<Rat>::identity(d); }

}  // namespace

Setup preset(const std::string& name, int d, int weight_cut) {
  Setup s;
  s.weight_cut = weight_cut;
  if (name == "identity") {
    s.d = d;
    s.gram = rat_identity(d);
    s.nu = rat_identity(d);
    s.p = 1;
  } else if (name == "neg1") {
    s.d = d;
    s.gram = rat_identity(d);
    s.nu = Rat(-1) * rat_identity(d);
    s.p = 2;
  } else if (name == "cyclic") {
    s.d = d;
    s.gram = rat_identity(d);
    s.nu = Matrix<Rat>(d, d);
    for (int i = 0; i < d; ++i) s.nu((i + 1) % d, i) = Rat(1);
    s.p = d;
  } else {
    throw SetupError("unknown preset " + name);
  }
  return s;
}

Heis make_setup(const Setup& s, bool strict) {
  const int d = s.d, p = s.p;
  if (d < 1 || p < 1) throw SetupError("need d >= 1 and p >= 1");
  if (static_cast<int>(s.gram.rows()) != d || static_cast<int>(s.gram.cols()) != d ||
      static_cast<int>(s.nu.rows()) != d || static_cast<int>(s.nu.cols()) != d)
    throw SetupError("matrix shapes do not match d = " + std::to_string(d));
  if (!(s.gram == s.gram.transpose())) throw NotSymmetric("gram matrix is not symmetric");
  if (s.gram.det().is_zero()) throw Degenerate("gram matrix is degenerate");
  if (!(s.nu.transpose() * s.gram * s.nu == s.gram)) throw NotIsometry("nu does not preserve the form");
  if (!(s.nu.pow(p) == rat_identity(d))) throw WrongPeriod("nu^p != 1");
  if (strict)
    for (int q = 1; q < p; ++q)
      if (s.nu.pow(q) == rat_identity(d)) throw WrongPeriod("nu has period " + std::to_string(q));

  Heis h;
  h.setup = s;
  EigenData& e = h.eig;
  Matrix<CycNum> nu = to_cyc(s.nu), g = to_cyc(s.gram);
  std::vector<Matrix<CycNum>> powers{Matrix<CycNum>::identity(d)};
  for (int k = 1; k < p; ++k) powers.push_back(powers.back() * nu);
  for (int r = 0; r < p; ++r) {
    Matrix<CycNum> pr(d, d);
    for (int k = 0; k < p; ++k) pr = pr + CycNum::root(p, -r * k) * powers[k];
    pr = CycNum(Rat(1, p)) * pr;
    e.proj.push_back(pr);
  }
  std::vector<std::vector<CycNum>> cols;
  e.dims.assign(p, 0);
  for (int r = 0; r < p; ++r)
    for (int j = 0; j < d; ++j) {
      std::vector<CycNum> c(d);
      for (int i = 0; i < d; ++i) c[i] = e.proj[r](i, j);
      Matrix<CycNum> trial(d, cols.size() + 1);
      for (size_t k = 0; k < cols.size(); ++k)
        for (int i = 0; i < d; ++i) trial(i, k) = cols[k][i];
      for (int i = 0; i < d; ++i) trial(i, cols.size()) = c[i];
      if (trial.rank() == cols.size() + 1) {
        cols.push_back(c);
        e.cls.push_back(r);
        ++e.dims[r];
      }
    }
  e.basis = Matrix<CycNum>(d, d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i) e.basis(i, k) = cols[k][i];
  e.pair = e.basis.transpose() * g * e.basis;
  e.pair_inv = *e.pair.inverse();

  int64_t cut = s.weight_cut;
  h.V = FockSpace{1, p, std::vector<int>(d, 0), e.pair, cut, false};
  h.M = FockSpace{p, p, e.cls, e.pair, cut * p, true};
  h.S = FockSpace{1, 1, std::vector<int>(d, 0), g, cut, false};
  return h;
}

bool FockSpace::allowed(int idx, int64_t n) const { return mod(n - cls[idx], den) == 0; }

FockVector FockVector::basis(const Monomial& m, int den, const CycNum& c) {
  FockVector v;
  v.den = den;
  v.add(m, c);
  return v;
}

void FockVector::add(const Monomial& m, const CycNum& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

FockVector& FockVector::operator+=(const FockVector& o) {
  if (terms.empty()) den = o.den;
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  if (terms.empty()) den = o.den;
  for (const auto& [m, c] : o.terms) add(m, -c);
  return *this;
}

FockVector operator*(const CycNum& k, const FockVector& v) {
  FockVector r;
  r.den = v.den;
  if (k.is_zero()) return r;
  for (const auto& [m, c] : v.terms) r.terms.emplace(m, k * c);
  return r;
}

std::string monomial_str(const Monomial& m, int den) {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& x : m) {
    if (!s.empty()) s += " ";
    s += "a" + std::to_string(x.idx) + "(" + Rat(x.n, den).str() + ")";
  }
  return s;
}

int64_t monomial_weight(const Monomial& m) {
  int64_t w = 0;
  for (const auto& x : m) w -= x.n;
  return w;
}

std::string FockVector::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*" + monomial_str(m, den);
  }
  return s;
}

FockVector apply_mode(const FockSpace& sp, int idx, int64_t n, const FockVector& w) {
  FockVector out;
  out.den = sp.den;
  if (idx < 0 || idx >= sp.d()) throw SectorMismatch("mode index out of range");
  if (!sp.allowed(idx, n) || n == 0) return out;
  if (n < 0) {
    for (const auto& [m, c] : w.terms) {
      if (monomial_weight(m) - n > sp.cut)
        throw WeightOverflow("weight " + Rat(monomial_weight(m) - n, sp.den).str() + " above cut");
      Monomial r = m;
      Mode x{n, idx};
      r.insert(std::upper_bound(r.begin(), r.end(), x), x);
      out.add(r, c);
    }
    return out;
  }
  Rat val(n, sp.den);
  for (const auto& [m, c] : w.terms)
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i].n != -n) continue;
      const CycNum& g = sp.pair(idx, m[i].idx);
      if (g.is_zero()) continue;
      Monomial r = m;
      r.erase(r.begin() + i);
      CycNum k = g * c;
      k *= val;
      out.add(r, k);
    }
  return out;
}

FockVector apply_mode(const FockSpace& sp, int idx, const Rat& n, const FockVector& w) {
  auto num = as_num(n, sp.den);
  if (!num) throw SectorMismatch("mode " + n.str() + " not in (1/" + std::to_string(sp.den) + ")Z");
  return apply_mode(sp, idx, *num, w);
}

ModeOp normal_order(const std::vector<ModeFactor>& fs) {
  ModeOp op;
  for (const auto& f : fs)
    if (f.n.sign() < 0) op.factors.push_back(f);
  for (const auto& f : fs)
    if (f.n.sign() >= 0) op.factors.push_back(f);
  return op;
}

FockVector apply(const FockSpace& sp, const ModeOp& op, const FockVector& w) {
  FockVector v = w;
  for (auto it = op.factors.rbegin(); it != op.factors.rend(); ++it) v = apply_mode(sp, it->idx, it->n, v);
  return op.scalar * v;
}

namespace {

void partitions(const FockSpace& sp, int64_t left, Mode floor, Monomial& cur, std::vector<Monomial>& out) {
  if (left == 0) {
    out.push_back(cur);
    return;
  }
  // modes in nondecreasing (n, idx) order, so the first mode is the most negative
  for (int64_t n = std::max(floor.n, -left); n <= -1; ++n)
    for (int i = 0; i < sp.d(); ++i) {
      Mode x{n, i};
      if (x < floor || !sp.allowed(i, n)) continue;
      cur.push_back(x);
      partitions(sp, left + n, x, cur, out);
      cur.pop_back();
    }
}

}  // namespace

std::vector<Monomial> graded_basis(const FockSpace& sp, int64_t weight_num) {
  if (weight_num > sp.cut) throw WeightOverflow("graded piece above cut");
  std::vector<Monomial> out;
  if (weight_num < 0) return out;
  Monomial cur;
  partitions(sp, weight_num, Mode{-weight_num, 0}, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> basis_up_to(const FockSpace& sp, int64_t weight_num) {
  std::vector<Monomial> out;
  for (int64_t w = 0; w <= weight_num; ++w) {
    auto b = graded_basis(sp, w);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

}  // namespace twh
