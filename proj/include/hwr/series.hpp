#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hwr/errors.hpp"
#include "hwr/rational.hpp"

namespace hwr {

inline constexpr std::size_t infinite_order = std::numeric_limits<std::size_t>::max();

// Formal power series known modulo x^(trunc+1).
class Series {
 public:
  Series() : coeffs_(1) {}

  explicit Series(std::size_t trunc) : coeffs_(trunc + 1) {}

  // Pads with zeros or drops coefficients beyond trunc.
  Series(std::vector<Rational> coeffs, std::size_t trunc) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(trunc + 1);
  }

  Series(std::initializer_list<Rational> coeffs, std::size_t trunc)
      : Series(std::vector<Rational>(coeffs), trunc) {}

  static Series zero(std::size_t trunc) { return Series(trunc); }
  static Series constant(const Rational& c, std::size_t trunc) { return monomial(0, c, trunc); }
  static Series one(std::size_t trunc) { return constant(Rational(1), trunc); }
  static Series x(std::size_t trunc) { return monomial(1, Rational(1), trunc); }

  static Series monomial(std::size_t k, const Rational& c, std::size_t trunc) {
    Series s(trunc);
    if (k <= trunc) s.coeffs_[k] = c;
    return s;
  }

  std::size_t trunc() const { return coeffs_.size() - 1; }

  const Rational& operator[](std::size_t n) const { return coeffs_[n]; }

  const Rational& at(std::size_t n) const {
    if (n > trunc()) throw out_of_range("coefficient index " + std::to_string(n) + " beyond truncation");
    return coeffs_[n];
  }

  std::span<const Rational> coeffs() const { return coeffs_; }

  Series truncated(std::size_t n) const {
    if (n > trunc()) throw out_of_range("cannot raise truncation order");
    return Series(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n) + 1), n);
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
  }

 private:
  std::vector<Rational> coeffs_;
};

inline std::size_t order(const Series& f) {
  for (std::size_t n = 0; n <= f.trunc(); ++n) {
    if (!f[n].is_zero()) return n;
  }
  return infinite_order;
}

// Order up to which a and b agree, or infinite_order if they agree on the whole common prefix.
inline std::size_t agreement_order(const Series& a, const Series& b) {
  std::size_t n = std::min(a.trunc(), b.trunc());
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] != b[i]) return i;
  }
  return infinite_order;
}

// Equality on the common prefix.
inline bool operator==(const Series& a, const Series& b) { return agreement_order(a, b) == infinite_order; }

// 2^(-ord(f-g)), zero when they agree on the common prefix.
inline Rational distance(const Series& a, const Series& b) {
  std::size_t k = agreement_order(a, b);
  if (k == infinite_order) return Rational(0);
  return pow(Rational(1, 2), static_cast<long>(k));
}

inline Series operator+(const Series& a, const Series& b) {
  std::size_t n = std::min(a.trunc(), b.trunc());
  std::vector<Rational> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = a[i] + b[i];
  return Series(std::move(c), n);
}

inline Series operator-(const Series& a) {
  std::vector<Rational> c(a.trunc() + 1);
  for (std::size_t i = 0; i <= a.trunc(); ++i) c[i] = -a[i];
  return Series(std::move(c), a.trunc());
}

inline Series operator-(const Series& a, const Series& b) {
  std::size_t n = std::min(a.trunc(), b.trunc());
  std::vector<Rational> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = a[i] - b[i];
  return Series(std::move(c), n);
}

inline Series operator*(const Rational& s, const Series& a) {
  std::vector<Rational> c(a.trunc() + 1);
  for (std::size_t i = 0; i <= a.trunc(); ++i) c[i] = s * a[i];
  return Series(std::move(c), a.trunc());
}

inline Series operator*(const Series& a, const Series& b) {
  std::size_t n = std::min(a.trunc(), b.trunc());
  std::size_t oa = order(a), ob = order(b);
  std::vector<Rational> c(n + 1);
  if (oa == infinite_order || ob == infinite_order) return Series(std::move(c), n);
  for (std::size_t i = oa; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = ob; i + j <= n; ++j) {
      if (!b[j].is_zero()) c[i + j] += a[i] * b[j];
    }
  }
  return Series(std::move(c), n);
}

inline Series inverse(const Series& f) {
  if (f[0].is_zero()) throw non_unit("series has zero constant term");
  std::size_t n = f.trunc();
  std::vector<Rational> b(n + 1);
  Rational inv0 = Rational(1) / f[0];
  b[0] = inv0;
  for (std::size_t k = 1; k <= n; ++k) {
    Rational acc;
    for (std::size_t j = 1; j <= k; ++j) {
      if (!f[j].is_zero()) acc += f[j] * b[k - j];
    }
    b[k] = -acc * inv0;
  }
  return Series(std::move(b), n);
}

// Integer power; negative exponents require a unit.
inline Series pow(const Series& f, long e) {
  if (e < 0) return pow(inverse(f), -e);
  Series result = Series::one(f.trunc());
  Series base = f;
  auto k = static_cast<unsigned long>(e);
  while (k > 0) {
    if (k & 1UL) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

// Divides by x^k, assuming the first k coefficients vanish; the truncation drops by k.
inline Series shift_down(const Series& f, std::size_t k) {
  if (k > f.trunc()) throw out_of_range("shift beyond truncation");
  for (std::size_t i = 0; i < k; ++i) {
    if (!f[i].is_zero()) throw non_unit("series is not divisible by x^" + std::to_string(k));
  }
  return Series(std::vector<Rational>(f.coeffs().begin() + static_cast<std::ptrdiff_t>(k), f.coeffs().end()),
                f.trunc() - k);
}

// Multiplies by x^k; the truncation rises by k.
inline Series shift_up(const Series& f, std::size_t k) {
  std::vector<Rational> c(k);
  c.insert(c.end(), f.coeffs().begin(), f.coeffs().end());
  return Series(std::move(c), f.trunc() + k);
}

// f(g(x)); requires g(0) = 0.
inline Series compose(const Series& f, const Series& g) {
  if (!g[0].is_zero()) throw composition_domain("inner series has nonzero constant term");
  std::size_t n = std::min(f.trunc(), g.trunc());
  Series inner = g.truncated(n);
  Series r = Series::constant(f[n], n);
  for (std::size_t k = n; k-- > 0;) {
    r = r * inner;
    r = r + Series::constant(f[k], n);
  }
  return r;
}

// Compositional inverse of a proper series, by Lagrange inversion.
inline Series revert(const Series& f) {
  if (!f[0].is_zero() || f.trunc() < 1 || f[1].is_zero()) {
    throw not_proper("reversion needs f(0) = 0 and f'(0) != 0");
  }
  std::size_t n = f.trunc();
  Series u = inverse(shift_down(f, 1));
  std::vector<Rational> r(n + 1);
  Series p = u;
  for (std::size_t k = 1; k <= n; ++k) {
    r[k] = p[k - 1] / Rational(k);
    if (k < n) p = p * u;
  }
  return Series(std::move(r), n);
}

// f^rho for f(0) = 1 via the binomial series in (f - 1).
inline Series pow(const Series& f, const Rational& rho) {
  if (f[0] != Rational(1)) throw base_not_unit1("rational power needs constant term 1");
  std::size_t n = f.trunc();
  Series h = f - Series::one(n);
  Series result = Series::one(n);
  Series hk = Series::one(n);
  Rational c(1);
  for (std::size_t k = 1; k <= n; ++k) {
    hk = hk * h;
    if (hk.is_zero()) break;
    c *= (rho - Rational(k - 1)) / Rational(k);
    if (c.is_zero()) break;
    result = result + c * hk;
  }
  return result;
}

inline Series exp(const Series& f) {
  if (!f[0].is_zero()) throw exp_domain("exp needs zero constant term");
  std::size_t n = f.trunc();
  std::vector<Rational> e(n + 1);
  e[0] = Rational(1);
  for (std::size_t m = 1; m <= n; ++m) {
    Rational acc;
    for (std::size_t k = 1; k <= m; ++k) {
      if (!f[k].is_zero()) acc += Rational(k) * f[k] * e[m - k];
    }
    e[m] = acc / Rational(m);
  }
  return Series(std::move(e), n);
}

inline Series log(const Series& f) {
  if (f[0] != Rational(1)) throw log_domain("log needs constant term 1");
  std::size_t n = f.trunc();
  std::vector<Rational> l(n + 1);
  for (std::size_t m = 1; m <= n; ++m) {
    Rational acc = Rational(m) * f[m];
    for (std::size_t k = 1; k < m; ++k) {
      if (!f[m - k].is_zero()) acc -= Rational(k) * l[k] * f[m - k];
    }
    l[m] = acc / Rational(m);
  }
  return Series(std::move(l), n);
}

// Exact to order trunc-1.
inline Series derivative(const Series& f) {
  if (f.trunc() == 0) throw out_of_range("derivative of a series known only to order 0");
  std::vector<Rational> d(f.trunc());
  for (std::size_t k = 1; k <= f.trunc(); ++k) d[k - 1] = Rational(k) * f[k];
  return Series(std::move(d), f.trunc() - 1);
}

// Exact to order trunc+1, zero constant of integration.
inline Series antiderivative(const Series& f) {
  std::vector<Rational> a(f.trunc() + 2);
  for (std::size_t k = 0; k <= f.trunc(); ++k) a[k + 1] = f[k] / Rational(k + 1);
  return Series(std::move(a), f.trunc() + 1);
}

// Reference sequence (c_n): ordinary c_n = 1, exponential c_n = n!, or custom.
class RefSeq {
 public:
  enum class Kind { ordinary, exponential, custom };

  static RefSeq ordinary() { return RefSeq(Kind::ordinary, {}); }
  static RefSeq exponential() { return RefSeq(Kind::exponential, {}); }

  static RefSeq custom(std::vector<Rational> values) {
    if (values.empty() || values[0] != Rational(1)) throw invalid_ref_seq("c_0 must be 1");
    for (const auto& v : values) {
      if (v.is_zero()) throw invalid_ref_seq("reference terms must be nonzero");
    }
    return RefSeq(Kind::custom, std::move(values));
  }

  Kind kind() const { return kind_; }

  std::string name() const {
    switch (kind_) {
      case Kind::ordinary: return "ogf";
      case Kind::exponential: return "egf";
      default: return "custom";
    }
  }

  Rational operator()(std::size_t n) const {
    switch (kind_) {
      case Kind::ordinary: return Rational(1);
      case Kind::exponential: return factorial(n);
      default:
        if (n >= values_.size()) throw out_of_range("custom reference sequence too short");
        return values_[n];
    }
  }

  const std::vector<Rational>& values() const { return values_; }

  friend bool operator==(const RefSeq& a, const RefSeq& b) {
    return a.kind_ == b.kind_ && a.values_ == b.values_;
  }

 private:
  RefSeq(Kind k, std::vector<Rational> v) : kind_(k), values_(std::move(v)) {}

  Kind kind_;
  std::vector<Rational> values_;
};

// c_n [x^n] f
inline Rational coefficient(const Series& f, std::size_t n, const RefSeq& c) { return c(n) * f.at(n); }

// Series whose generalized coefficients c_n [x^n] are the given values.
inline Series from_gf_coefficients(std::span<const Rational> values, const RefSeq& c, std::size_t trunc) {
  std::vector<Rational> plain(trunc + 1);
  for (std::size_t n = 0; n < values.size() && n <= trunc; ++n) plain[n] = values[n] / c(n);
  return Series(std::move(plain), trunc);
}

}  // namespace hwr
