#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "hwr/errors.hpp"
#include "hwr/matrix.hpp"
#include "hwr/rational.hpp"
#include "hwr/series.hpp"

namespace hwr::riordan {

// (g, f) with respect to a reference sequence c; d(n,k) = c_n [x^n] g f^k / c_k.
class RiordanArray {
 public:
  RiordanArray(Series g, Series f, RefSeq c) : g_(std::move(g)), f_(std::move(f)), c_(std::move(c)) {
    if (g_[0].is_zero()) throw not_unit("g(0) must be nonzero");
    if (!f_[0].is_zero()) throw has_constant_term("f(0) must be zero");
    std::size_t n = std::min(g_.trunc(), f_.trunc());
    g_ = g_.truncated(n);
    f_ = f_.truncated(n);
  }

  const Series& g() const { return g_; }
  const Series& f() const { return f_; }
  const RefSeq& ref() const { return c_; }
  std::size_t trunc() const { return g_.trunc(); }
  bool proper() const { return trunc() >= 1 && !f_[1].is_zero(); }

  friend bool operator==(const RiordanArray& a, const RiordanArray& b) {
    return a.c_ == b.c_ && a.g_ == b.g_ && a.f_ == b.f_;
  }

 private:
  Series g_;
  Series f_;
  RefSeq c_;
};

inline RiordanArray make(const Series& g, const Series& f, const RefSeq& c) { return RiordanArray(g, f, c); }

inline Rational entry(const RiordanArray& t, std::size_t n, std::size_t k) {
  if (n > t.trunc() || k > t.trunc()) throw out_of_range("entry beyond truncation");
  if (k > n) return Rational(0);
  Series col = t.g() * pow(t.f(), static_cast<long>(k));
  return t.ref()(n) * col[n] / t.ref()(k);
}

// Square corner of size n_max + 1, built column by column.
inline RowFiniteMatrix matrix(const RiordanArray& t, std::size_t n_max) {
  if (n_max > t.trunc()) throw out_of_range("matrix corner beyond truncation");
  std::size_t s = n_max + 1;
  std::vector<std::vector<Rational>> m(s, std::vector<Rational>(s));
  Series col = t.g();
  for (std::size_t k = 0; k < s; ++k) {
    if (k > 0) col = col * t.f();
    Rational ck = t.ref()(k);
    for (std::size_t n = 0; n < s; ++n) {
      if (!col[n].is_zero()) m[n][k] = t.ref()(n) * col[n] / ck;
    }
  }
  return RowFiniteMatrix(std::move(m));
}

// Rows 0..n_max, entries k <= n.
inline std::vector<std::vector<Rational>> triangle(const RiordanArray& t, std::size_t n_max) {
  RowFiniteMatrix m = matrix(t, n_max);
  std::vector<std::vector<Rational>> rows(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t k = 0; k <= n; ++k) rows[n].push_back(m(n, k));
  }
  return rows;
}

// g (h o f), the image of h under the array.
inline Series apply(const RiordanArray& t, const Series& h) {
  if (!t.proper()) throw not_proper("array action needs a proper array");
  return t.g() * compose(h, t.f());
}

inline RiordanArray multiply(const RiordanArray& a, const RiordanArray& b) {
  if (!(a.ref() == b.ref())) throw ref_seq_mismatch("arrays use different reference sequences");
  return RiordanArray(a.g() * compose(b.g(), a.f()), compose(b.f(), a.f()), a.ref());
}

inline RiordanArray operator*(const RiordanArray& a, const RiordanArray& b) { return multiply(a, b); }

inline RiordanArray inverse(const RiordanArray& t) {
  if (!t.proper()) throw not_proper("inverse needs a proper array");
  Series fbar = revert(t.f());
  return RiordanArray(hwr::inverse(compose(t.g(), fbar)), fbar, t.ref());
}

inline RiordanArray identity(std::size_t trunc, const RefSeq& c = RefSeq::ordinary()) {
  return RiordanArray(Series::one(trunc), Series::x(trunc), c);
}

struct AZPair {
  Series a;
  Series z;
};

// A(y) = y / fbar(y), Z(y) = (1 - g0 / g(fbar(y))) / fbar(y).
inline AZPair az_sequences(const RiordanArray& t) {
  if (!t.proper()) throw not_proper("A- and Z-sequences need a proper array");
  Series fbar = revert(t.f());
  Series fbar_over_y = shift_down(fbar, 1);
  Series a = hwr::inverse(fbar_over_y);
  std::size_t n = t.trunc();
  Series num = Series::one(n) - t.g()[0] * hwr::inverse(compose(t.g(), fbar));
  Series z = shift_down(num, 1) * hwr::inverse(fbar_over_y);
  return {a, z};
}

// Replays d(n,k) = sum_j a_j d(n-1,k+j-1) and d(n,0) = sum_j z_j d(n-1,j) for 1 <= n <= n_max.
// Entries are read with the reference weights removed, c_k d(n,k) / c_n, which is where the
// recurrences hold for every reference sequence; for ordinary arrays these are the entries themselves.
inline bool replay_az(const RiordanArray& t, const AZPair& az, std::size_t n_max) {
  if (n_max > t.trunc() || n_max > az.a.trunc() + 1 || n_max > az.z.trunc() + 1) {
    throw out_of_range("replay order beyond truncation");
  }
  RowFiniteMatrix m = matrix(t, n_max);
  auto d = [&](std::size_t n, std::size_t k) { return k > n_max ? Rational(0) : m(n, k) * t.ref()(k) / t.ref()(n); };
  for (std::size_t n = 1; n <= n_max; ++n) {
    Rational z;
    for (std::size_t j = 0; j <= n - 1; ++j) z += az.z[j] * d(n - 1, j);
    if (z != d(n, 0)) return false;
    for (std::size_t k = 1; k <= n; ++k) {
      Rational s;
      for (std::size_t j = 0; k + j - 1 <= n - 1; ++j) s += az.a[j] * d(n - 1, k + j - 1);
      if (s != d(n, k)) return false;
    }
  }
  return true;
}

inline RiordanArray iteration_matrix(const Series& f, const RefSeq& c) {
  return RiordanArray(Series::one(f.trunc()), f, c);
}

// sum_k B(n,k) f_k = n! [x^n] f(g(x)), with Bell-polynomial entries from the exponential array (1, g).
inline bool faa_di_bruno_check(const Series& f, const Series& g, std::size_t n) {
  RiordanArray bell = iteration_matrix(g, RefSeq::exponential());
  RowFiniteMatrix m = matrix(bell, n);
  Rational lhs;
  for (std::size_t k = 0; k <= n; ++k) lhs += m(n, k) * coefficient(f, k, RefSeq::exponential());
  return lhs == coefficient(compose(f, g), n, RefSeq::exponential());
}

namespace named {

inline RiordanArray pascal(std::size_t n) {
  Series geo(std::vector<Rational>(n + 1, Rational(1)), n);
  return RiordanArray(geo, shift_up(geo, 1).truncated(n), RefSeq::ordinary());
}

// (1/(1 - m x), x/(1 - m x)), the m-th power of the Pascal array.
inline RiordanArray pascal_power(long m, std::size_t n) {
  Series g = hwr::inverse(Series({Rational(1), Rational(-m)}, n));
  return RiordanArray(g, shift_up(g, 1).truncated(n), RefSeq::ordinary());
}

inline RiordanArray pascal_exp(std::size_t n) {
  return RiordanArray(exp(Series::x(n)), Series::x(n), RefSeq::exponential());
}

inline RiordanArray stirling2(std::size_t n) {
  return RiordanArray(Series::one(n), exp(Series::x(n)) - Series::one(n), RefSeq::exponential());
}

inline RiordanArray stirling1(std::size_t n) {
  return RiordanArray(Series::one(n), log(Series({Rational(1), Rational(1)}, n)), RefSeq::exponential());
}

inline RiordanArray appell(const Series& g, const RefSeq& c = RefSeq::ordinary()) {
  return RiordanArray(g, Series::x(g.trunc()), c);
}

inline RiordanArray bell(const Series& g, const RefSeq& c = RefSeq::ordinary()) {
  return RiordanArray(g, shift_up(g, 1).truncated(g.trunc()), c);
}

inline RiordanArray lagrange(const Series& f, const RefSeq& c = RefSeq::ordinary()) {
  return RiordanArray(Series::one(f.trunc()), f, c);
}

// (g^rho, x g) for g(0) = 1.
inline RiordanArray power_rho(const Series& g, const Rational& rho, const RefSeq& c = RefSeq::ordinary()) {
  return RiordanArray(pow(g, rho), shift_up(g, 1).truncated(g.trunc()), c);
}

// (1, -x)
inline RiordanArray sign_flip(std::size_t n, const RefSeq& c = RefSeq::ordinary()) {
  return RiordanArray(Series::one(n), Series::monomial(1, Rational(-1), n), c);
}

}  // namespace named

}  // namespace hwr::riordan
