#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

#include "hwr/errors.hpp"

namespace hwr {

// Exact rational number kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral T>
  Rational(T v) : v_(static_cast<long>(v)) {}

  template <std::unsigned_integral T>
  Rational(T v) : v_(static_cast<unsigned long>(v)) {}

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw division_by_zero("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  template <std::integral A, std::integral B>
  Rational(A num, B den) : Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

  explicit Rational(const mpz_class& v) : v_(v) {}
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  // Accepts "p", "-p", "p/q" with decimal integers.
  static Rational parse(std::string_view text) {
    std::size_t slash = text.find('/');
    auto parse_int = [&](std::string_view part, std::size_t offset) {
      std::size_t i = 0;
      if (i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
      if (i == part.size()) throw parse_error("expected integer", offset + i);
      for (std::size_t j = i; j < part.size(); ++j) {
        if (part[j] < '0' || part[j] > '9') throw parse_error("unexpected character in rational", offset + j);
      }
      std::string digits(part);
      if (digits[0] == '+') digits.erase(0, 1);
      return mpz_class(digits, 10);
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text, 0));
    mpz_class num = parse_int(text.substr(0, slash), 0);
    mpz_class den = parse_int(text.substr(slash + 1), slash + 1);
    if (den == 0) throw parse_error("zero denominator", slash + 1);
    return Rational(num, den);
  }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& value() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  std::string to_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw division_by_zero("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class v_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& base, long e) {
  if (e < 0) {
    if (base.is_zero()) throw division_by_zero("zero to a negative power");
    return Rational(1) / pow(base, -e);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), static_cast<unsigned long>(e));
  return Rational(num, den);
}

inline Rational factorial(std::size_t n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r);
}

inline Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

// Generalized binomial coefficient rho (rho-1) ... (rho-k+1) / k!.
inline Rational binomial(const Rational& rho, std::size_t k) {
  Rational r(1);
  for (std::size_t i = 0; i < k; ++i) r *= (rho - Rational(i)) / Rational(i + 1);
  return r;
}

// n (n-1) ... (n-k+1)
inline Rational falling(const Rational& n, std::size_t k) {
  Rational r(1);
  for (std::size_t i = 0; i < k; ++i) r *= n - Rational(i);
  return r;
}

}  // namespace hwr
