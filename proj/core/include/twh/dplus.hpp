#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "twh/voa.hpp"

namespace twh {

struct NotInSubalgebra : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// polynomial in D, low degree first, no trailing zeros
using DPoly = std::vector<Rat>;

DPoly poly_trim(DPoly f);
DPoly poly_mul(const DPoly& a, const DPoly& b);
DPoly poly_add(const DPoly& a, const DPoly& b);
DPoly poly_scale(const Rat& k, const DPoly& a);
DPoly poly_shift(const DPoly& f, int64_t n);  // f(D + n)
Rat poly_eval(const DPoly& f, const Rat& x);

// sum_m t^m f_m(D) + central c
struct DiffOp {
  std::map<int64_t, DPoly> terms;
  Rat central;

  void normalize();
  bool is_zero() const { return terms.empty() && central.is_zero(); }
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms == b.terms && a.central == b.central; }
  DiffOp& operator+=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator*(const Rat& k, const DiffOp& a);
  std::string str() const;
};

// Psi(t^m f, t^n g) = delta_{m+n,0} sum_{i=1..m} f(-i) g(m-i) for m > 0, antisymmetric
Rat psi(const DiffOp& a, const DiffOp& b);
// commutator plus the central term -(1/2) Psi
DiffOp bracket(const DiffOp& a, const DiffOp& b);

// L_n^(r) = (-1)^(r+1) t^n (D+n)^r D^(r+1)
DiffOp L_symbol(int64_t n, int r);
// (-1)^r zeta(-1-2r) / 2
Rat lbar_shift(int r);
DiffOp Lbar_symbol(int64_t n, int r);

// a = sum_k sum_i coeff[k][i] Lbar_k^(i) + central c
struct LbarExpansion {
  std::map<int64_t, std::vector<Rat>> coeffs;
  Rat central;
};
LbarExpansion expand_in_Lbar(const DiffOp& a);
// the t^k part only; its central share is zero unless k = 0
std::vector<Rat> expand_in_Lbar(const DiffOp& a, int64_t k);

// (r+s+1)!^2 / (2 (2(r+s)+3)!) m^(2(r+s)+3)
Rat pure_monomial_central(int r, int s, int64_t m);

// ---- corrections ----

// Taylor coefficients c_0..c_order in u of
//   -(1/2) d/du sum_k dim_k e^(-k u / p) / (1 - e^-u) - (1/2) d u^-2
std::vector<Rat> correction_series(const std::vector<int>& dims, int p, int order);
// the same through Bernoulli polynomials
std::vector<Rat> correction_series_bernoulli(const std::vector<int>& dims, int p, int order);
// constant added to the normal ordered L^(r1,r2)(0); untwisted spaces use dims = {d}, p = 1
Rat correction(const std::vector<int>& dims, int p, int r1, int r2);

// ---- representations ----

// rho(Lbar^(r1,r2)(n)) on S (twisted = false) or S[nu]
FockVector rep_apply(const Heis& h, bool twisted, int64_t n, int r1, int r2, const FockVector& w);
OperatorSlice rep_slice(const Heis& h, bool twisted, int64_t n, int r1, int r2, int64_t src_weight);
OperatorSlice rep_untwisted(const Heis& h, int64_t n, int r, int64_t src_weight);
OperatorSlice rep_twisted(const Heis& h, int64_t n, int r1, int r2, int64_t src_weight);

// rho(a) on the graded piece of weight src_weight (numerator), through expand_in_Lbar, c -> d
class RepCache {
 public:
  RepCache(const Heis& h, bool twisted) : h_(h), twisted_(twisted) {}
  const FockSpace& space() const { return twisted_ ? h_.M : h_.V; }
  const Matrix<CycNum>& slice(int64_t n, int r, int64_t src_weight);
  Matrix<CycNum> rho(const DiffOp& a, int64_t src_weight);
  // k: the t-degree, needed when a = 0
  Matrix<CycNum> rho(const DiffOp& a, int64_t k, int64_t src_weight);

 private:
  const Heis& h_;
  bool twisted_;
  std::map<std::tuple<int64_t, int, int64_t>, Matrix<CycNum>> cache_;
};

// rho([a, b]) = [rho(a), rho(b)] on all graded pieces up to max_weight (numerator)
Report check_rep_bracket(RepCache& rc, const DiffOp& a, const DiffOp& b, int64_t max_weight);

// off-diagonal generators: L^(r1,r2)(n) = L^(r2,r1)(n) and
// L^(r1+1,r2)(n) + L^(r1,r2+1)(n) = n L^(r1,r2)(n), for r1 + r2 < max_total
Report check_offdiagonal(const Heis& h, bool twisted, int max_total, int64_t max_n, int64_t max_weight);

// (-1)^k times the L_0^(k) eigenvalue on the twisted vacuum
Rat vacuum_delta(const Heis& h, int k);
// Delta(x) = sum_k delta_k x^(2k) / (2k)! against (1/2) d/dx sum_k (e^(kx/p) - 1) dim_k / (1 - e^x)
Report check_corollary(const Heis& h, int order);
// Taylor coefficients of the closed form through x^order
std::vector<Rat> corollary_closed(const std::vector<int>& dims, int p, int order);

}  // namespace twh
