#include "twh/dplus.hpp"

#include <chrono>
#include <sstream>

namespace twh {

DPoly poly_trim(DPoly f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
  return f;
}

DPoly poly_mul(const DPoly& a, const DPoly& b) {
  if (a.empty() || b.empty()) return {};
  DPoly c(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(c));
}

DPoly poly_add(const DPoly& a, const DPoly& b) {
  DPoly c(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return poly_trim(std::move(c));
}

DPoly poly_scale(const Rat& k, const DPoly& a) {
  DPoly c;
  for (const auto& x : a) c.push_back(k * x);
  return poly_trim(std::move(c));
}

DPoly poly_shift(const DPoly& f, int64_t n) {
  // Horner in (D + n)
  DPoly r;
  DPoly lin{Rat(n), Rat(1)};
  for (size_t i = f.size(); i-- > 0;) r = poly_add(poly_mul(r, lin), DPoly{f[i]});
  return r;
}

Rat poly_eval(const DPoly& f, const Rat& x) {
  Rat r(0);
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

void DiffOp::normalize() {
  for (auto it = terms.begin(); it != terms.end();) {
    it->second = poly_trim(std::move(it->second));
    if (it->second.empty()) it = terms.erase(it);
    else ++it;
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  for (const auto& [m, f] : o.terms) terms[m] = poly_add(terms[m], f);
  central += o.central;
  normalize();
  return *this;
}

DiffOp operator*(const Rat& k, const DiffOp& a) {
  DiffOp r;
  for (const auto& [m, f] : a.terms) r.terms[m] = poly_scale(k, f);
  r.central = k * a.central;
  r.normalize();
  return r;
}

std::string DiffOp::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, f] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "t^" << m << "*(";
    bool any = false;
    for (size_t i = 0; i < f.size(); ++i) {
      if (f[i].is_zero()) continue;
      if (any) os << " + ";
      any = true;
      os << f[i].str();
      if (i) os << "*D^" << i;
    }
    os << ")";
  }
  if (!central.is_zero() || first) os << (first ? "" : " + ") << central.str() << "*c";
  return os.str();
}

namespace {

Rat psi_terms(int64_t m, const DPoly& f, int64_t n, const DPoly& g) {
  if (m + n != 0 || m == 0) return Rat(0);
  if (m < 0) return -psi_terms(n, g, m, f);
  Rat s(0);
  for (int64_t i = 1; i <= m; ++i) s += poly_eval(f, Rat(-i)) * poly_eval(g, Rat(m - i));
  return s;
}

DPoly power(const DPoly& f, int e) {
  DPoly r{Rat(1)};
  for (int i = 0; i < e; ++i) r = poly_mul(r, f);
  return r;
}

// (D+k)^i D^(i+1)
DPoly lbar_poly(int64_t k, int i) { return poly_mul(power(DPoly{Rat(k), Rat(1)}, i), power(DPoly{Rat(0), Rat(1)}, i + 1)); }

}  // namespace

Rat psi(const DiffOp& a, const DiffOp& b) {
  Rat s(0);
  for (const auto& [m, f] : a.terms)
    for (const auto& [n, g] : b.terms) s += psi_terms(m, f, n, g);
  return s;
}

DiffOp bracket(const DiffOp& a, const DiffOp& b) {
  DiffOp r;
  for (const auto& [m, f] : a.terms)
    for (const auto& [n, g] : b.terms) {
      DPoly t = poly_add(poly_mul(poly_shift(f, n), g), poly_scale(Rat(-1), poly_mul(poly_shift(g, m), f)));
      r.terms[m + n] = poly_add(r.terms[m + n], t);
    }
  r.central = Rat(-1, 2) * psi(a, b);
  r.normalize();
  return r;
}

DiffOp L_symbol(int64_t n, int r) {
  if (r < 0) throw std::invalid_argument("L_symbol: r < 0");
  DiffOp a;
  a.terms[n] = poly_scale(Rat(r % 2 ? 1 : -1), lbar_poly(n, r));
  a.normalize();
  return a;
}

Rat lbar_shift(int r) { return Rat(r % 2 ? -1 : 1, 2) * zeta_negative(1 + 2 * r); }

DiffOp Lbar_symbol(int64_t n, int r) {
  DiffOp a = L_symbol(n, r);
  if (n == 0) a.central = lbar_shift(r);
  return a;
}

std::vector<Rat> expand_in_Lbar(const DiffOp& a, int64_t k) {
  std::vector<Rat> out;
  auto it = a.terms.find(k);
  if (it == a.terms.end()) return out;
  DPoly f = it->second;
  while (!f.empty()) {
    size_t deg = f.size() - 1;
    if (deg % 2 == 0)
      throw NotInSubalgebra("t^" + std::to_string(k) + " component has a term of even degree " + std::to_string(deg));
    int i = static_cast<int>((deg - 1) / 2);
    if (out.size() <= static_cast<size_t>(i)) out.resize(i + 1, Rat(0));
    Rat c = f.back() * Rat(i % 2 ? 1 : -1);  // leading coefficient of L_k^(i) is (-1)^(i+1)
    out[i] = c;
    f = poly_add(f, poly_scale(-c, L_symbol(k, i).terms.begin()->second));
  }
  return out;
}

LbarExpansion expand_in_Lbar(const DiffOp& a) {
  LbarExpansion e;
  e.central = a.central;
  for (const auto& [k, f] : a.terms) {
    auto c = expand_in_Lbar(a, k);
    if (k == 0)
      for (size_t i = 0; i < c.size(); ++i) e.central -= c[i] * lbar_shift(static_cast<int>(i));
    e.coeffs[k] = std::move(c);
  }
  return e;
}

Rat pure_monomial_central(int r, int s, int64_t m) {
  int q = r + s;
  Rat f = factorial(q + 1);
  return f * f / (Rat(2) * factorial(2 * q + 3)) * Rat(m).pow(2 * q + 3);
}

// ---- corrections ----

namespace {

using Ser = std::vector<Rat>;

Ser ser_div(const Ser& a, const Ser& b, size_t n) {
  Ser q(n + 1, Rat(0));
  Rat inv = b[0].inv();
  for (size_t i = 0; i <= n; ++i) {
    Rat s = i < a.size() ? a[i] : Rat(0);
    for (size_t j = 1; j <= i && j < b.size(); ++j) s -= b[j] * q[i - j];
    q[i] = s * inv;
  }
  return q;
}

}  // namespace

std::vector<Rat> correction_series(const std::vector<int>& dims, int p, int order) {
  size_t n = static_cast<size_t>(order) + 2;
  // A(u) = sum_k dim_k e^(-k u/p), 1 - e^-u = u Q(u)
  Ser A(n + 1, Rat(0)), Q(n + 1, Rat(0));
  for (size_t k = 0; k < dims.size(); ++k) {
    Rat a(-static_cast<int64_t>(k), p), t(1);
    for (size_t i = 0; i <= n; ++i) {
      A[i] += Rat(dims[k]) * t;
      t = t * a / Rat(static_cast<int64_t>(i + 1));
    }
  }
  for (size_t i = 0; i <= n; ++i) Q[i] = Rat(i % 2 ? -1 : 1) / factorial(static_cast<int>(i + 1));
  Ser R = ser_div(A, Q, n);
  // G = sum r_j u^(j-1); -(1/2) G' has u^j coefficient -(1/2)(j+1) r_(j+2)
  std::vector<Rat> c;
  for (int j = 0; j <= order; ++j) c.push_back(Rat(-1, 2) * Rat(j + 1) * R[j + 2]);
  return c;
}

std::vector<Rat> correction_series_bernoulli(const std::vector<int>& dims, int p, int order) {
  std::vector<Rat> c;
  for (int j = 0; j <= order; ++j) {
    Rat s(0);
    for (size_t k = 0; k < dims.size(); ++k)
      if (dims[k]) s += Rat(dims[k]) * bernoulli_poly(j + 2, Rat(1) - Rat(static_cast<int64_t>(k), p));
    c.push_back(Rat(-1, 2) * s * Rat(j + 1) / factorial(j + 2));
  }
  return c;
}

Rat correction(const std::vector<int>& dims, int p, int r1, int r2) {
  int N = r1 + r2;
  Rat s(0);
  for (size_t k = 0; k < dims.size(); ++k)
    if (dims[k]) s += Rat(dims[k]) * bernoulli_poly(N + 2, Rat(1) - Rat(static_cast<int64_t>(k), p));
  return Rat(r2 % 2 ? 1 : -1, 2) * s / Rat(N + 2);
}

// ---- representations ----

namespace {

std::pair<std::vector<int>, int> space_dims(const Heis& h, bool twisted) {
  if (twisted) return {h.eig.dims, h.setup.p};
  return {{h.setup.d}, 1};
}

}  // namespace

FockVector rep_apply(const Heis& h, bool twisted, int64_t n, int r1, int r2, const FockVector& w) {
  const FockSpace sp = (twisted ? h.M : h.V).with_cut(kNoCut);
  const int den = sp.den;
  const auto& inv = h.eig.pair_inv;
  int64_t nn = n * den;
  int64_t reach = std::abs(nn) + max_weight(w) + den;
  FockVector out;
  out.den = den;
  for (int a = 0; a < sp.d(); ++a)
    for (int b = 0; b < sp.d(); ++b) {
      if (inv(a, b).is_zero()) continue;
      for (int64_t j = -reach; j <= reach; ++j) {
        int64_t k = nn - j;
        if (j == 0 || k == 0 || !sp.allowed(a, j) || !sp.allowed(b, k)) continue;
        // annihilators to the right
        FockVector t;
        if (j > 0 && k < 0) t = apply_mode(sp, b, k, apply_mode(sp, a, j, w));
        else t = apply_mode(sp, a, j, apply_mode(sp, b, k, w));
        if (t.is_zero()) continue;
        Rat c = Rat(1, 2) * Rat(j, den).pow(r1) * Rat(k, den).pow(r2);
        out += (inv(a, b) * CycNum(c)) * t;
      }
    }
  if (n == 0) {
    auto [dims, p] = space_dims(h, twisted);
    Rat c = correction(dims, p, r1, r2);
    if (!c.is_zero()) out += CycNum(c) * w;
  }
  return out;
}

OperatorSlice rep_slice(const Heis& h, bool twisted, int64_t n, int r1, int r2, int64_t src_weight) {
  const FockSpace sp = (twisted ? h.M : h.V).with_cut(kNoCut);
  return make_slice(sp, src_weight, -n * sp.den,
                    [&](const FockVector& w) { return rep_apply(h, twisted, n, r1, r2, w); });
}

OperatorSlice rep_untwisted(const Heis& h, int64_t n, int r, int64_t src_weight) {
  return rep_slice(h, false, n, r, r, src_weight);
}

OperatorSlice rep_twisted(const Heis& h, int64_t n, int r1, int r2, int64_t src_weight) {
  return rep_slice(h, true, n, r1, r2, src_weight);
}

const Matrix<CycNum>& RepCache::slice(int64_t n, int r, int64_t src_weight) {
  auto key = std::make_tuple(n, r, src_weight);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(key, rep_slice(h_, twisted_, n, r, r, src_weight).m).first->second;
}

namespace {

size_t piece_size(const FockSpace& sp, int64_t w) {
  if (w < 0) return 0;
  return graded_basis(sp.with_cut(kNoCut), w).size();
}

}  // namespace

Matrix<CycNum> RepCache::rho(const DiffOp& a, int64_t src_weight) {
  return rho(a, a.terms.empty() ? 0 : a.terms.begin()->first, src_weight);
}

Matrix<CycNum> RepCache::rho(const DiffOp& a, int64_t k, int64_t src_weight) {
  const FockSpace& sp = space();
  if (a.terms.size() > 1 || (!a.terms.empty() && a.terms.begin()->first != k))
    throw std::invalid_argument("rho: operator is not homogeneous of degree " + std::to_string(k));
  size_t rows = piece_size(sp, src_weight - k * sp.den), cols = piece_size(sp, src_weight);
  Matrix<CycNum> m(rows, cols);
  if (rows == 0 || cols == 0) return m;
  LbarExpansion e = expand_in_Lbar(a);
  if (!e.coeffs.empty()) {
    const auto& c = e.coeffs.begin()->second;
    for (size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) m = m + CycNum(c[i]) * slice(k, static_cast<int>(i), src_weight);
  }
  // c acts as d
  if (!e.central.is_zero()) {
    if (k != 0) throw std::invalid_argument("rho: central term on a nonzero degree");
    m = m + CycNum(e.central * Rat(h_.setup.d)) * Matrix<CycNum>::identity(cols);
  }
  return m;
}

Report check_rep_bracket(RepCache& rc, const DiffOp& a, const DiffOp& b, int64_t max_weight) {
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.id = rc.space().twisted ? "rep_twisted" : "rep_untwisted";
  r.eq = "rho([a,b]) = [rho(a), rho(b)], c -> d";
  const int den = rc.space().den;
  auto deg = [](const DiffOp& x) { return x.terms.empty() ? int64_t(0) : x.terms.begin()->first; };
  DiffOp ab = bracket(a, b);
  int64_t ka = deg(a), kb = deg(b);
  size_t entries = 0;
  for (int64_t w = 0; w <= max_weight && r.ok(); ++w) {
    size_t cols = piece_size(rc.space(), w);
    if (cols == 0) continue;
    size_t rows = piece_size(rc.space(), w - (ka + kb) * den);
    Matrix<CycNum> lhs(rows, cols);
    if (rows) {
      if (w - kb * den >= 0) lhs = lhs + rc.rho(a, w - kb * den) * rc.rho(b, w);
      if (w - ka * den >= 0) lhs = lhs - rc.rho(b, w - ka * den) * rc.rho(a, w);
    }
    Matrix<CycNum> rhs = rc.rho(ab, ka + kb, w);
    entries += rows * cols;
    if (!(lhs == rhs))
      r.fail("weight " + Rat(w, den).str() + ": [rho(a),rho(b)] = " + lhs.str() + " but rho([a,b]) = " + rhs.str());
  }
  r.detail = std::to_string(entries) + " matrix entries, [a,b] = " + ab.str();
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Report check_offdiagonal(const Heis& h, bool twisted, int max_total, int64_t max_n, int64_t max_weight) {
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.id = "offdiagonal";
  r.eq = "L^(r1,r2)(n) = L^(r2,r1)(n), L^(r1+1,r2)(n) + L^(r1,r2+1)(n) = n L^(r1,r2)(n)";
  const FockSpace sp = (twisted ? h.M : h.V).with_cut(kNoCut);
  size_t checked = 0;
  for (const auto& b : basis_up_to(sp, max_weight)) {
    FockVector w = FockVector::basis(b, sp.den);
    for (int64_t n = -max_n; n <= max_n; ++n)
      for (int r1 = 0; r1 < max_total; ++r1)
        for (int r2 = 0; r1 + r2 < max_total; ++r2) {
          FockVector a = rep_apply(h, twisted, n, r1, r2, w);
          if (!(a == rep_apply(h, twisted, n, r2, r1, w)))
            r.fail("swap at n = " + std::to_string(n) + " r = (" + std::to_string(r1) + "," + std::to_string(r2) +
                   ") on " + w.str());
          FockVector s = rep_apply(h, twisted, n, r1 + 1, r2, w) + rep_apply(h, twisted, n, r1, r2 + 1, w);
          if (!(s == CycNum(Rat(n)) * a))
            r.fail("raising at n = " + std::to_string(n) + " r = (" + std::to_string(r1) + "," + std::to_string(r2) +
                   ") on " + w.str());
          ++checked;
        }
  }
  r.detail = std::to_string(checked) + " (vector, n, r1, r2) cases";
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Rat vacuum_delta(const Heis& h, int k) {
  FockVector vac = h.M.vacuum();
  FockVector v = rep_apply(h, true, 0, k, k, vac);
  Rat e(0);
  if (!v.is_zero()) {
    if (v.terms.size() != 1 || !v.terms.begin()->first.empty())
      throw std::logic_error("vacuum_delta: twisted vacuum is not an eigenvector");
    e = v.terms.begin()->second.rational();
  }
  // L_0^(k) = Lbar_0^(k) - shift c, c -> d
  e -= lbar_shift(k) * Rat(h.setup.d);
  return k % 2 ? -e : e;
}

std::vector<Rat> corollary_closed(const std::vector<int>& dims, int p, int order) {
  size_t n = static_cast<size_t>(order) + 1;
  // numerator x N1(x), denominator 1 - e^x = x D1(x)
  Ser N1(n + 1, Rat(0)), D1(n + 1, Rat(0));
  for (size_t k = 0; k < dims.size(); ++k) {
    if (!dims[k]) continue;
    Rat q(static_cast<int64_t>(k), p);
    for (size_t i = 0; i <= n; ++i)
      N1[i] += Rat(dims[k]) * q.pow(static_cast<int64_t>(i + 1)) / factorial(static_cast<int>(i + 1));
  }
  for (size_t i = 0; i <= n; ++i) D1[i] = Rat(-1) / factorial(static_cast<int>(i + 1));
  Ser R = ser_div(N1, D1, n);
  std::vector<Rat> c;
  for (int j = 0; j <= order; ++j) c.push_back(Rat(1, 2) * Rat(j + 1) * R[j + 1]);
  return c;
}

Report check_corollary(const Heis& h, int order) {
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.id = "corollary";
  r.eq = "sum_k delta(L_0^(k)) x^(2k)/(2k)! = (1/2) d/dx sum_k (e^(kx/p) - 1) dim h_(k) / (1 - e^x)";
  auto closed = corollary_closed(h.eig.dims, h.setup.p, order);
  size_t nz = 0;
  for (int j = 0; j <= order; ++j) {
    Rat lhs = j % 2 ? Rat(0) : vacuum_delta(h, j / 2) / factorial(j);
    if (!lhs.is_zero()) ++nz;
    if (lhs != closed[j])
      r.fail("x^" + std::to_string(j) + ": assembled " + lhs.str() + " closed form " + closed[j].str());
  }
  r.detail = "through x^" + std::to_string(order) + ", " + std::to_string(nz) + " nonzero coefficients";
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace twh
