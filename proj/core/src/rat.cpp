#include "twh/rat.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace twh {

namespace {

using i128 = __int128;
constexpr int64_t kMax = std::numeric_limits<int64_t>::max();

bool fits(i128 v) { return v <= kMax && v >= -static_cast<i128>(kMax); }

uint64_t uabs(int64_t v) { return v < 0 ? static_cast<uint64_t>(-v) : static_cast<uint64_t>(v); }

mpq_class small_mpq(int64_t n, int64_t d) {
  mpq_class q(static_cast<long>(n), static_cast<unsigned long>(d));
  return q;
}

}  // namespace

Rat::Rat(int64_t num, int64_t den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  if (num == std::numeric_limits<int64_t>::min() || den == std::numeric_limits<int64_t>::min()) {
    mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q.canonicalize();
    set_big(q);
    return;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int64_t g = static_cast<int64_t>(std::gcd(uabs(num), uabs(den)));
  if (g > 1) {
    num /= g;
    den /= g;
  }
  n_ = num;
  d_ = den;
}

Rat::Rat(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  set_big(std::move(c));
}

Rat::Rat(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rat: cannot parse '" + s + "'");
  if (q.get_den() == 0) throw std::domain_error("Rat: zero denominator");
  q.canonicalize();
  set_big(std::move(q));
}

void Rat::set_big(mpq_class q) {
  const mpz_class& nn = q.get_num();
  const mpz_class& dd = q.get_den();
  if (nn.fits_slong_p() && dd.fits_slong_p() && nn != std::numeric_limits<long>::min()) {
    n_ = nn.get_si();
    d_ = dd.get_si();
    big_.reset();
  } else {
    n_ = 0;
    d_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
  }
}

void Rat::demote() {
  if (big_) {
    mpq_class q = std::move(*big_);
    big_.reset();
    set_big(std::move(q));
  }
}

mpq_class Rat::mpq() const { return big_ ? *big_ : small_mpq(n_, d_); }
mpz_class Rat::num() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(n_)); }
mpz_class Rat::den() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(d_)); }

bool Rat::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

int Rat::sign() const {
  if (big_) return sgn(*big_);
  return (n_ > 0) - (n_ < 0);
}

int64_t Rat::to_int() const {
  if (big_ || d_ != 1) throw std::domain_error("Rat: not a small integer: " + str());
  return n_;
}

int64_t Rat::floor() const {
  if (big_) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
    if (!f.fits_slong_p()) throw std::overflow_error("Rat::floor overflow");
    return f.get_si();
  }
  int64_t q = n_ / d_;
  if (n_ % d_ != 0 && n_ < 0) --q;
  return q;
}

std::string Rat::str() const {
  if (big_) return big_->get_str();
  if (d_ == 1) return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

std::string Rat::frac() const {
  if (big_) return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  return std::to_string(n_) + "/" + std::to_string(d_);
}

size_t Rat::hash() const {
  if (big_) {
    return std::hash<std::string>()(big_->get_str());
  }
  uint64_t h = static_cast<uint64_t>(n_) * 0x9E3779B97F4A7C15ULL;
  h ^= static_cast<uint64_t>(d_) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
  return static_cast<size_t>(h);
}

Rat Rat::operator-() const {
  Rat r;
  if (big_) {
    r.set_big(-*big_);
  } else {
    r.n_ = -n_;
    r.d_ = d_;
  }
  return r;
}

Rat& Rat::operator+=(const Rat& o) {
  if (!big_ && !o.big_) {
    if (d_ == 1 && o.d_ == 1) {
      int64_t s;
      if (!__builtin_add_overflow(n_, o.n_, &s) && s != std::numeric_limits<int64_t>::min()) {
        n_ = s;
        return *this;
      }
    } else {
      uint64_t g = std::gcd(static_cast<uint64_t>(d_), static_cast<uint64_t>(o.d_));
      if (g == 1) {
        i128 num = static_cast<i128>(n_) * o.d_ + static_cast<i128>(o.n_) * d_;
        i128 den = static_cast<i128>(d_) * o.d_;
        if (fits(num) && fits(den)) {
          n_ = static_cast<int64_t>(num);
          d_ = static_cast<int64_t>(den);
          return *this;
        }
      } else {
        int64_t gg = static_cast<int64_t>(g);
        int64_t s = d_ / gg;
        i128 t = static_cast<i128>(n_) * (o.d_ / gg) + static_cast<i128>(o.n_) * s;
        if (t == 0) {
          n_ = 0;
          d_ = 1;
          return *this;
        }
        i128 ta = t < 0 ? -t : t;
        uint64_t tm = static_cast<uint64_t>(ta % static_cast<i128>(g));
        int64_t g2 = static_cast<int64_t>(std::gcd(tm, g));
        i128 num = t / g2;
        i128 den = static_cast<i128>(s) * (o.d_ / g2);
        if (fits(num) && fits(den)) {
          n_ = static_cast<int64_t>(num);
          d_ = static_cast<int64_t>(den);
          return *this;
        }
      }
    }
  }
  set_big(mpq() + o.mpq());
  return *this;
}

Rat& Rat::operator-=(const Rat& o) { return *this += -o; }

Rat& Rat::operator*=(const Rat& o) {
  if (!big_ && !o.big_) {
    if (n_ == 0 || o.n_ == 0) {
      n_ = 0;
      d_ = 1;
      return *this;
    }
    int64_t g1 = static_cast<int64_t>(std::gcd(uabs(n_), static_cast<uint64_t>(o.d_)));
    int64_t g2 = static_cast<int64_t>(std::gcd(uabs(o.n_), static_cast<uint64_t>(d_)));
    i128 num = static_cast<i128>(n_ / g1) * (o.n_ / g2);
    i128 den = static_cast<i128>(d_ / g2) * (o.d_ / g1);
    if (fits(num) && fits(den)) {
      n_ = static_cast<int64_t>(num);
      d_ = static_cast<int64_t>(den);
      return *this;
    }
  }
  set_big(mpq() * o.mpq());
  return *this;
}

Rat Rat::inv() const {
  if (is_zero()) throw std::domain_error("Rat: division by zero");
  Rat r;
  if (big_) {
    r.set_big(1 / *big_);
  } else if (n_ < 0) {
    r.n_ = -d_;
    r.d_ = -n_;
  } else {
    r.n_ = d_;
    r.d_ = n_;
  }
  return r;
}

Rat& Rat::operator/=(const Rat& o) { return *this *= o.inv(); }

Rat Rat::pow(int64_t e) const {
  if (e < 0) return inv().pow(-e);
  Rat result(1), base(*this);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical storage: big values never fit inline
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.n_) * b.d_;
    i128 r = static_cast<i128>(b.n_) * a.d_;
    return l <=> r;
  }
  int c = cmp(a.mpq(), b.mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat factorial(int n) {
  Rat r(1);
  for (int i = 2; i <= n; ++i) r *= Rat(i);
  return r;
}

}  // namespace twh
