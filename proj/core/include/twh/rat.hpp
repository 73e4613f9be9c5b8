#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

namespace twh {

// Exact rational. Values whose numerator and denominator fit in int64 stay
// inline; anything larger lives in an mpq_class.
class Rat {
 public:
  Rat() = default;
  Rat(int v) : n_(v) {}  // NOLINT
  Rat(long v) : n_(v) {}  // NOLINT
  Rat(long long v) : n_(v) {}  // NOLINT
  Rat(int64_t num, int64_t den);
  explicit Rat(const mpq_class& q);
  explicit Rat(const std::string& s);

  Rat(const Rat& o) : n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rat(Rat&&) noexcept = default;
  Rat& operator=(const Rat& o) {
    if (this != &o) {
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rat& operator=(Rat&&) noexcept = default;

  bool is_zero() const { return !big_ && n_ == 0; }
  bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
  bool is_integer() const;
  int sign() const;
  bool small() const { return !big_; }

  mpz_class num() const;
  mpz_class den() const;
  mpq_class mpq() const;
  // only valid when small()
  int64_t snum() const { return n_; }
  int64_t sden() const { return d_; }

  // exact conversion; throws if not an integer that fits
  int64_t to_int() const;

  std::string str() const;   // "n" or "n/d"
  std::string frac() const;  // always "n/d"
  size_t hash() const;

  Rat operator-() const;
  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b);
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

  Rat inv() const;
  Rat abs() const { return sign() < 0 ? -*this : *this; }
  Rat pow(int64_t e) const;
  // floor of the value as an integer (must fit int64)
  int64_t floor() const;

 private:
  void set_big(mpq_class q);
  void demote();

  int64_t n_ = 0;
  int64_t d_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline bool is_zero(const Rat& r) { return r.is_zero(); }

std::ostream& operator<<(std::ostream& os, const Rat& r);

struct RatHash {
  size_t operator()(const Rat& r) const { return r.hash(); }
};

Rat factorial(int n);

}  // namespace twh
