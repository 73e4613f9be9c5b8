#pragma once

#include <boost/container/small_vector.hpp>

#include <string>
#include <vector>

#include "twh/rat.hpp"

namespace twh {

// Phi_p and the reduction table x^k mod Phi_p for phi <= k <= 2*phi-2.
struct Cyclo {
  int p = 1;
  int phi = 1;
  std::vector<int64_t> poly;              // monic, low degree first, size phi+1
  std::vector<std::vector<int64_t>> red;  // red[k - phi]
};

const Cyclo& cyclo(int p);
std::vector<int64_t> cyclotomic_poly(int p);

// Element of Q(w_p), w_p = exp(2 pi i / p), stored in the power basis
// 1, w, ..., w^(phi-1) reduced modulo Phi_p.
class CycNum {
 public:
  using Coeffs = boost::container::small_vector<Rat, 2>;

  CycNum() : c_(&cyclo(1)), a_(1) {}
  CycNum(const Rat& r) : c_(&cyclo(1)), a_(1, r) {}  // NOLINT
  CycNum(int v) : CycNum(Rat(v)) {}                  // NOLINT
  CycNum(const Rat& r, int p);
  CycNum(int p, Coeffs coeffs);  // reduces a polynomial of any degree

  static CycNum root(int p, int64_t k);

  int order() const { return c_->p; }
  int degree() const { return c_->phi; }
  const Coeffs& coeffs() const { return a_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rat rational() const;  // throws unless is_rational()

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator*=(const Rat& r);
  CycNum& operator/=(const CycNum& o) { return *this *= o.inv(); }
  CycNum inv() const;
  CycNum pow(int64_t e) const;
  // image under w -> w^k (k coprime to p); k = -1 gives complex conjugation
  CycNum galois(int64_t k) const;

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
  friend bool operator==(const CycNum& a, const CycNum& b);

  // rationals print as num/den; otherwise one num/den per power-basis coordinate
  std::string str() const;
  std::vector<std::string> coords() const;
  size_t hash() const;

  CycNum promoted(int p) const;

 private:
  static const Cyclo* common(const CycNum& a, const CycNum& b);
  void lift(const Cyclo* c);

  const Cyclo* c_;
  Coeffs a_;
};

inline bool is_zero(const CycNum& c) { return c.is_zero(); }

std::ostream& operator<<(std::ostream& os, const CycNum& c);

}  // namespace twh
