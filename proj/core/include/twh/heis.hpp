#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "twh/matrix.hpp"
#include "twh/series.hpp"

namespace twh {

struct SetupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotSymmetric : SetupError {
  using SetupError::SetupError;
};
struct Degenerate : SetupError {
  using SetupError::SetupError;
};
struct NotIsometry : SetupError {
  using SetupError::SetupError;
};
struct WrongPeriod : SetupError {
  using SetupError::SetupError;
};
struct SectorMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WeightOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Setup {
  int d = 1;
  Matrix<Rat> gram;
  Matrix<Rat> nu;
  int p = 1;
  int weight_cut = 4;
};

// identity (p = 1), neg1 (nu = -1, p = 2), cyclic (coordinate shift, d = p)
Setup preset(const std::string& name, int d, int weight_cut = 4);

struct EigenData {
  std::vector<Matrix<CycNum>> proj;  // P_r, r = 0..p-1
  Matrix<CycNum> basis;              // columns: eigenvectors in standard coordinates
  std::vector<int> cls;              // nu e_i = w^cls[i] e_i
  std::vector<int> dims;             // dim h_(r)
  Matrix<CycNum> pair;               // <e_i, e_j>
  Matrix<CycNum> pair_inv;
};

// one creation or annihilation factor; n is a numerator over the space denominator
struct Mode {
  int64_t n;
  int idx;
  auto operator<=>(const Mode&) const = default;
};
using Monomial = boost::container::small_vector<Mode, 4>;

class FockVector {
 public:
  std::map<Monomial, CycNum> terms;
  int den = 1;

  FockVector() = default;
  static FockVector basis(const Monomial& m, int den, const CycNum& c = CycNum(1));

  void add(const Monomial& m, const CycNum& c);
  bool is_zero() const { return terms.empty(); }
  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(const CycNum& k, const FockVector& v);
  friend bool operator==(const FockVector& a, const FockVector& b) { return a.terms == b.terms; }
  std::string str() const;
};

inline bool is_zero(const FockVector& v) { return v.is_zero(); }

template <>
inline std::string coeff_str<FockVector>(const FockVector& v) {
  return v.str();
}

std::string monomial_str(const Monomial& m, int den);
int64_t monomial_weight(const Monomial& m);  // numerator over den

// Fock space of a Heisenberg algebra with modes in (1/den)Z; index i carries
// modes congruent to cls[i] mod den.
struct FockSpace {
  int den = 1;
  int order = 1;  // scalars live in Q(w_order)
  std::vector<int> cls;
  Matrix<CycNum> pair;
  int64_t cut = 0;  // largest allowed weight numerator
  bool twisted = false;

  int d() const { return static_cast<int>(cls.size()); }
  bool allowed(int idx, int64_t n) const;
  FockVector vacuum() const { return FockVector::basis({}, den); }
  FockSpace with_cut(int64_t c) const {
    FockSpace s = *this;
    s.cut = c;
    return s;
  }
};

// cut used by internal engines; the user cut is only enforced at the boundary
inline constexpr int64_t kNoCut = int64_t(1) << 40;

struct Heis {
  Setup setup;
  EigenData eig;
  FockSpace V;  // the algebra S in eigen coordinates
  FockSpace M;  // S[nu]
  FockSpace S;  // the algebra S in the standard basis (rational pairing)
};

Heis make_setup(const Setup& s, bool strict = false);

// [e_i(m), e_j(n)] = pair_ij m delta_{m+n,0}; n >= 0 annihilates (n = 0 acts as 0)
FockVector apply_mode(const FockSpace& sp, int idx, int64_t n, const FockVector& w);
FockVector apply_mode(const FockSpace& sp, int idx, const Rat& n, const FockVector& w);

struct ModeFactor {
  int idx;
  Rat n;
};
struct ModeOp {
  CycNum scalar = CycNum(1);
  std::vector<ModeFactor> factors;  // leftmost acts last
};
ModeOp normal_order(const std::vector<ModeFactor>& fs);
FockVector apply(const FockSpace& sp, const ModeOp& op, const FockVector& w);

// monomials of weight num/den in lexicographic order of their sorted mode lists
std::vector<Monomial> graded_basis(const FockSpace& sp, int64_t weight_num);
// all graded pieces 0..cut
std::vector<Monomial> basis_up_to(const FockSpace& sp, int64_t weight_num);

}  // namespace twh
