#include "twh/cyc.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace twh {

namespace {

using Poly = std::vector<int64_t>;

Poly poly_div_exact(Poly num, const Poly& den) {
  // den monic
  int n = static_cast<int>(num.size()) - 1;
  int m = static_cast<int>(den.size()) - 1;
  Poly q(n - m + 1, 0);
  for (int i = n; i >= m; --i) {
    int64_t c = num[i];
    q[i - m] = c;
    if (c == 0) continue;
    for (int j = 0; j <= m; ++j) num[i - m + j] -= c * den[j];
  }
  for (int i = 0; i < m; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic division not exact");
  return q;
}

std::unique_ptr<Cyclo> build(int p) {
  auto c = std::make_unique<Cyclo>();
  c->p = p;
  c->poly = cyclotomic_poly(p);
  c->phi = static_cast<int>(c->poly.size()) - 1;
  int phi = c->phi;
  // x^phi = -sum poly[i] x^i
  std::vector<int64_t> cur(phi);
  for (int i = 0; i < phi; ++i) cur[i] = -c->poly[i];
  for (int k = phi; k <= 2 * phi - 2; ++k) {
    c->red.push_back(cur);
    // multiply by x
    std::vector<int64_t> nxt(phi, 0);
    int64_t top = cur[phi - 1];
    for (int i = phi - 1; i >= 1; --i) nxt[i] = cur[i - 1];
    nxt[0] = 0;
    for (int i = 0; i < phi; ++i) nxt[i] -= top * c->poly[i];
    cur = nxt;
  }
  return c;
}

constexpr int kFast = 64;
std::array<std::once_flag, kFast + 1> g_once;
std::array<std::unique_ptr<Cyclo>, kFast + 1> g_fast;
std::mutex g_mu;
std::map<int, std::unique_ptr<Cyclo>> g_slow;

}  // namespace

std::vector<int64_t> cyclotomic_poly(int p) {
  if (p < 1) throw std::invalid_argument("cyclotomic_poly: p must be positive");
  Poly num(p + 1, 0);
  num[0] = -1;
  num[p] = 1;
  for (int d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    num = poly_div_exact(num, cyclotomic_poly(d));
  }
  return num;
}

const Cyclo& cyclo(int p) {
  if (p < 1) throw std::invalid_argument("cyclo: p must be positive");
  if (p <= kFast) {
    std::call_once(g_once[p], [p] { g_fast[p] = build(p); });
    return *g_fast[p];
  }
  std::lock_guard<std::mutex> lk(g_mu);
  auto& slot = g_slow[p];
  if (!slot) slot = build(p);
  return *slot;
}

CycNum::CycNum(const Rat& r, int p) : c_(&cyclo(p)), a_(c_->phi) { a_[0] = r; }

CycNum::CycNum(int p, Coeffs coeffs) : c_(&cyclo(p)), a_(c_->phi) {
  int phi = c_->phi;
  // reduce from the top using x^phi = -sum poly[i] x^i
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= phi; --k) {
    if (coeffs[k].is_zero()) continue;
    Rat t = coeffs[k];
    for (int i = 0; i < phi; ++i) {
      if (c_->poly[i] != 0) coeffs[k - phi + i] -= t * Rat(c_->poly[i]);
    }
    coeffs[k] = Rat(0);
  }
  for (int i = 0; i < phi && i < static_cast<int>(coeffs.size()); ++i) a_[i] = coeffs[i];
}

CycNum CycNum::root(int p, int64_t k) {
  int64_t e = ((k % p) + p) % p;
  Coeffs c(e + 1);
  c[e] = Rat(1);
  return CycNum(p, std::move(c));
}

bool CycNum::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool CycNum::is_one() const {
  if (!a_[0].is_one()) return false;
  for (size_t i = 1; i < a_.size(); ++i)
    if (!a_[i].is_zero()) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (size_t i = 1; i < a_.size(); ++i)
    if (!a_[i].is_zero()) return false;
  return true;
}

Rat CycNum::rational() const {
  if (!is_rational()) throw std::domain_error("CycNum: not rational: " + str());
  return a_[0];
}

const Cyclo* CycNum::common(const CycNum& a, const CycNum& b) {
  if (a.c_ == b.c_) return a.c_;
  if (a.c_->p == 1) return b.c_;
  if (b.c_->p == 1) return a.c_;
  throw std::invalid_argument("CycNum: mixing orders " + std::to_string(a.c_->p) + " and " +
                              std::to_string(b.c_->p));
}

void CycNum::lift(const Cyclo* c) {
  if (c_ == c) return;
  Rat r = a_[0];
  c_ = c;
  a_.assign(c->phi, Rat(0));
  a_[0] = r;
}

CycNum CycNum::promoted(int p) const {
  CycNum r(*this);
  if (r.c_->p == p) return r;
  if (r.c_->p != 1) throw std::invalid_argument("CycNum: cannot promote");
  r.lift(&cyclo(p));
  return r;
}

CycNum CycNum::operator-() const {
  CycNum r(*this);
  for (auto& x : r.a_) x = -x;
  return r;
}

CycNum& CycNum::operator+=(const CycNum& o) {
  const Cyclo* c = common(*this, o);
  lift(c);
  if (o.c_ == c) {
    for (size_t i = 0; i < a_.size(); ++i)
      if (!o.a_[i].is_zero()) a_[i] += o.a_[i];
  } else {
    a_[0] += o.a_[0];
  }
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) { return *this += -o; }

CycNum& CycNum::operator*=(const Rat& r) {
  for (auto& x : a_) x *= r;
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) {
  if (o.c_->p == 1) return *this *= o.a_[0];
  if (c_->p == 1) {
    Rat r = a_[0];
    *this = o;
    return *this *= r;
  }
  const Cyclo* c = common(*this, o);
  int phi = c->phi;
  if (phi == 1) {
    a_[0] *= o.a_[0];
    return *this;
  }
  std::vector<Rat> prod(2 * phi - 1);
  for (int i = 0; i < phi; ++i) {
    if (a_[i].is_zero()) continue;
    for (int j = 0; j < phi; ++j) {
      if (o.a_[j].is_zero()) continue;
      prod[i + j] += a_[i] * o.a_[j];
    }
  }
  for (int i = 0; i < phi; ++i) a_[i] = prod[i];
  for (int k = phi; k <= 2 * phi - 2; ++k) {
    if (prod[k].is_zero()) continue;
    const auto& red = c->red[k - phi];
    for (int i = 0; i < phi; ++i)
      if (red[i] != 0) a_[i] += prod[k] * Rat(red[i]);
  }
  return *this;
}

CycNum CycNum::inv() const {
  if (is_zero()) throw std::domain_error("CycNum: division by zero");
  int phi = c_->phi;
  if (phi == 1) return CycNum(a_[0].inv(), c_->p);
  // columns: this * x^j; solve M y = e_0
  std::vector<std::vector<Rat>> m(phi, std::vector<Rat>(phi + 1));
  for (int j = 0; j < phi; ++j) {
    Coeffs xj(j + 1);
    xj[j] = Rat(1);
    CycNum col = *this * CycNum(c_->p, xj);
    for (int i = 0; i < phi; ++i) m[i][j] = col.a_[i];
  }
  m[0][phi] = Rat(1);
  for (int col = 0; col < phi; ++col) {
    int piv = -1;
    for (int r = col; r < phi; ++r)
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("CycNum::inv: singular multiplication matrix");
    std::swap(m[piv], m[col]);
    Rat ip = m[col][col].inv();
    for (int k = col; k <= phi; ++k) m[col][k] *= ip;
    for (int r = 0; r < phi; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Rat f = m[r][col];
      for (int k = col; k <= phi; ++k) m[r][k] -= f * m[col][k];
    }
  }
  CycNum r(Rat(0), c_->p);
  for (int i = 0; i < phi; ++i) r.a_[i] = m[i][phi];
  return r;
}

CycNum CycNum::pow(int64_t e) const {
  if (e < 0) return inv().pow(-e);
  CycNum result(Rat(1), c_->p), base(*this);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

CycNum CycNum::galois(int64_t k) const {
  int p = c_->p;
  CycNum r(Rat(0), p);
  for (int i = 0; i < c_->phi; ++i) {
    if (a_[i].is_zero()) continue;
    CycNum t = root(p, k * i);
    t *= a_[i];
    r += t;
  }
  return r;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.c_ == b.c_) return a.a_ == b.a_;
  if (a.c_->p == 1) return b.is_rational() && b.a_[0] == a.a_[0];
  if (b.c_->p == 1) return a.is_rational() && a.a_[0] == b.a_[0];
  return false;
}

std::vector<std::string> CycNum::coords() const {
  std::vector<std::string> out;
  for (const auto& x : a_) out.push_back(x.frac());
  return out;
}

std::string CycNum::str() const {
  if (is_rational()) return a_[0].frac();
  std::string s = "[";
  for (size_t i = 0; i < a_.size(); ++i) {
    if (i) s += ", ";
    s += a_[i].frac();
  }
  return s + "]";
}

size_t CycNum::hash() const {
  size_t h = is_rational() ? 0 : static_cast<size_t>(c_->p);
  size_t n = is_rational() ? 1 : a_.size();
  for (size_t i = 0; i < n; ++i) h = h * 1000003u ^ a_[i].hash();
  return h;
}

std::ostream& operator<<(std::ostream& os, const CycNum& c) { return os << c.str(); }

}  // namespace twh
