#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "twh/voa.hpp"

namespace twh {

// the recursive construction found no certified resolving power within its cap
struct ResolvingPowerExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// nu-eigenvalue w^c written as w^(p s), s = c/p in [0,1)
Rat class_shift(int cls, int p);

// g(e_a, m, e_b, n, x) = G(s_a, m, n) <e_a, e_b> x^(-m-n), with
// G(s,m,n) = sum_{k<n} (k+1) [(1-s) C(s,n-1-k) C(-s,m+1+k) + s C(s-1,n-1-k) C(1-s,m+1+k)]
Rat g_coeff(const Rat& s, int64_t m, int64_t n);
CycNum g_value(const Heis& h, int a, int64_t m, int b, int64_t n);
// the same double residue at first index -m (m >= 0); x power m - n
CycNum g_extended(const Heis& h, int a, int64_t m, int b, int64_t n);
// windowed three-variable series evaluation of the same residues
CycNum g_oracle(const Heis& h, int a, int64_t m, int b, int64_t n, bool extended = false);

// h(alpha, beta, x1, x2) over (x1, x2) with den p; alpha, beta in standard coordinates
Lazy<CycNum> h_series_modes(const Heis& h, const std::vector<Rat>& alpha, const std::vector<Rat>& beta);
Lazy<CycNum> h_series_closed(const Heis& h, const std::vector<Rat>& alpha, const std::vector<Rat>& beta);

// x exponent -> vector in the algebra
using XSeries = std::map<int64_t, FockVector>;
XSeries delta_x_apply(const Heis& h, const XSeries& v);
XSeries delta_x_apply(const Heis& h, const FockVector& v);
XSeries exp_delta_x(const Heis& h, const FockVector& v);

// ---- twisted vertex operators ----

using Factors = std::vector<Mode>;  // algebra modes (n < 0), in the written order

// closed pairing formula: sum_J f_(J^c)(x) :prod_J ...: with f_I a sum over pairings
FockVector pairing_mode(const Heis& h, const Factors& fs, int64_t n_num, const FockVector& w);

class PairingMap : public VertexMap {
 public:
  explicit PairingMap(const Heis& h) : h_(h), M_(h.M.with_cut(kNoCut)) {}
  const FockSpace& module() const override { return M_; }
  FockVector mode(const FockVector& v, int64_t n_num, const FockVector& w) const override;

 private:
  const Heis& h_;
  FockSpace M_;
};

// W(e^Delta_x v, x)
class DeltaMap : public VertexMap {
 public:
  explicit DeltaMap(const Heis& h) : h_(h), W_(h.M.with_cut(kNoCut)) {}
  const FockSpace& module() const override { return W_.module(); }
  FockVector mode(const FockVector& v, int64_t n_num, const FockVector& w) const override;

 private:
  const Heis& h_;
  NopMap W_;
};

// recursive construction: peel the first factor with the formal limit
//   Y(a(-n) v', x) = Res_x0 x0^-n lim_{x1^(1/p) -> (x+x0)^(1/p)} (((x1-x)/x0)^k Y(a(-1)1, x1) Y(v', x))
class RecursiveMap : public VertexMap {
 public:
  explicit RecursiveMap(const Heis& h) : h_(h), M_(h.M.with_cut(kNoCut)) {}
  const FockSpace& module() const override { return M_; }
  FockVector mode(const FockVector& v, int64_t n_num, const FockVector& w) const override;
  FockVector mode_of(const Factors& fs, int64_t n_num, const FockVector& w) const;
  // largest resolving power used so far
  int max_k() const { return max_k_; }

 private:
  FockVector mode_mono(const Factors& fs, int64_t n_num, const Monomial& w) const;

  const Heis& h_;
  FockSpace M_;
  struct Key {
    Factors fs;
    int64_t n;
    Monomial w;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const;
  };
  mutable std::mutex mu_;
  mutable std::unordered_map<Key, FockVector, KeyHash> cache_;
  mutable int max_k_ = 0;
};

// checker context for S[nu] with the given module map
Context twisted_context(const Heis& h, const VertexMap& ym, const VertexMap& yv);

// twisted Jacobi with the delta sum replaced by one delta, valid when nu u = u
Report check_jacobi_fixed(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                          int64_t radius);

}  // namespace twh
