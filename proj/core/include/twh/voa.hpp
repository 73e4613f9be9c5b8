#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twh/heis.hpp"
#include "twh/report.hpp"
#include "twh/series.hpp"

namespace twh {

// largest weight numerator among the monomials of v (0 for v = 0)
int64_t max_weight(const FockVector& v);
std::map<int64_t, FockVector> homogeneous_parts(const FockVector& v);

// nu^r on the algebra, nu acting on index i by w_p^cls[i]
FockVector nu_power(const std::vector<int>& cls, int p, int64_t r, const FockVector& u);

// Coefficient of x^(-N-1), N = n_num / M.den, in the normal ordered product
//   : prod_l (1/(k_l-1)!) (d/dx)^(k_l-1) phi_(idx_l)(x) : w
// where factor l is the algebra mode (idx_l, -k_l).
FockVector nop_mode(const FockSpace& M, const Mode* factors, size_t j, int64_t n_num, const FockVector& w);

class VertexMap {
 public:
  virtual ~VertexMap() = default;
  virtual const FockSpace& module() const = 0;
  // coefficient of x^(-N-1) in Y(v, x) w, N = n_num / module().den
  virtual FockVector mode(const FockVector& v, int64_t n_num, const FockVector& w) const = 0;
};

// the normal ordered product map: Y on S when M is the algebra, W on S[nu]
class NopMap : public VertexMap {
 public:
  explicit NopMap(FockSpace M) : M_(std::move(M)) {}
  const FockSpace& module() const override { return M_; }
  FockVector mode(const FockVector& v, int64_t n_num, const FockVector& w) const override;

 private:
  FockSpace M_;
};

FockVector vertex_mode(const FockSpace& V, const FockVector& v, int64_t n, const FockVector& w);

// conformal vector (1/2) sum pair_inv_ab e_a(-1) e_b(-1) 1
FockVector conformal_vector(const FockSpace& V);
// (1/2) sum_ab pair_inv_ab sum_j :e_a(j) e_b(n-j): on an untwisted space
FockVector virasoro_apply(const FockSpace& V, int64_t n, const FockVector& w);

// one mode as an exact matrix between graded pieces; columns index src, rows dst
struct OperatorSlice {
  int64_t src_weight = 0, dst_weight = 0;  // numerators
  std::vector<Monomial> src, dst;
  Matrix<CycNum> m;
};
OperatorSlice make_slice(const FockSpace& sp, int64_t src_weight, int64_t shift,
                         const std::function<FockVector(const FockVector&)>& op);
OperatorSlice virasoro_mode(const FockSpace& V, int64_t n, int64_t src_weight);

// x^-n coefficient of X(v, x) = Y(x^L(0) v, x)
FockVector homogeneous_mode(const FockSpace& V, const FockVector& v, int64_t n, const FockVector& w);
// Y[u, y] v = Y(e^(y L(0)) u, e^y - 1) v through y^order: exponent -> vector
std::map<int64_t, FockVector> cylinder_image(const FockSpace& V, const FockVector& u, const FockVector& v,
                                             int64_t order);

// ---- windowed checks ----

// everything a checker needs about one module: Y_M, Y on the algebra, nu
struct Context {
  const VertexMap* ym = nullptr;
  const VertexMap* yv = nullptr;
  std::vector<int> cls;
  int p = 1;
  int budget = 8;  // cap for the k / l searches
};

// Y_M(v, x) w over var (den p)
Lazy<FockVector> y_series(const VertexMap& Y, const FockVector& v, const FockVector& w, const std::string& var,
                          int64_t v_weight);
// Y_M(u, x1) Y_M(v, x2) w, or Y_M(v, x2) Y_M(u, x1) w when swapped
Lazy<FockVector> yy_series(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                           bool swapped);
// Y_M(Y(u, x0) v, x2) w over (x0 den 1, x2 den p)
Lazy<FockVector> z_series(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w);

Report check_jacobi(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                    int64_t radius);
Report check_weak_comm(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                       int64_t radius, std::optional<int> k = std::nullopt);
Report check_weak_assoc(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                        int64_t radius, std::optional<Rat> l = std::nullopt);
Report check_mwa(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w, int64_t radius,
                 int64_t s = 0, std::optional<int> k = std::nullopt);
Report check_varwass(const Context& c, const FockVector& u, const FockVector& v, const FockVector& w,
                     int64_t radius, std::optional<Rat> l = std::nullopt);
Report check_transnu(const Context& c, const FockVector& u, const FockVector& w, int64_t s, int64_t radius);
Report check_mode_support(const Context& c, const FockVector& u, const FockVector& w, int64_t radius);
// untwisted only
Report check_skew(const Context& c, const FockVector& u, const FockVector& v, int64_t radius);
Report check_l_minus_one(const Context& c, const FockVector& u, const FockVector& w, int64_t radius);

// the full check list by name: jacobi skew weak_comm weak_assoc L-1_bracket mwa varwass transnu mode_support
Report check_identity(const std::string& id, const Context& c, const FockVector& u, const FockVector& v,
                      const FockVector& w, int64_t radius, int64_t s = 0);

}  // namespace twh
