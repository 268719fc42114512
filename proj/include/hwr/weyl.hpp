#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hwr/errors.hpp"
#include "hwr/matrix.hpp"
#include "hwr/rational.hpp"
#include "hwr/series.hpp"

namespace hwr::weyl {

// A = annihilation a, B = creation a+, C = central element c.
enum class Letter : char { A = 'A', B = 'B', C = 'C' };

class BosonWord {
 public:
  BosonWord() = default;
  explicit BosonWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static BosonWord from_letters(std::string_view s) {
    std::vector<Letter> l;
    for (char ch : s) {
      switch (ch) {
        case 'A': l.push_back(Letter::A); break;
        case 'B': l.push_back(Letter::B); break;
        case 'C': l.push_back(Letter::C); break;
        default: throw parse_error("expected A, B or C", l.size());
      }
    }
    return BosonWord(std::move(l));
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }

  long count(Letter x) const { return std::count(letters_.begin(), letters_.end(), x); }
  long excess() const { return count(Letter::B) - count(Letter::A); }

  std::string str() const {
    std::string s;
    for (Letter x : letters_) s.push_back(static_cast<char>(x));
    return s;
  }

  friend bool operator==(const BosonWord&, const BosonWord&) = default;

 private:
  std::vector<Letter> letters_;
};

namespace detail {

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  std::vector<Letter> parse() {
    auto out = sequence();
    skip_space();
    if (pos_ != s_.size()) throw parse_error("unexpected ')'", pos_);
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::vector<Letter> sequence() {
    std::vector<Letter> out;
    for (;;) {
      skip_space();
      if (pos_ == s_.size() || s_[pos_] == ')') return out;
      auto f = factor();
      out.insert(out.end(), f.begin(), f.end());
    }
  }

  std::vector<Letter> factor() {
    std::vector<Letter> base;
    char ch = s_[pos_];
    if (ch == '(') {
      std::size_t open = pos_++;
      base = sequence();
      if (pos_ == s_.size()) throw parse_error("unclosed '('", open);
      ++pos_;
    } else if (ch == 'a') {
      ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '+') {
        ++pos_;
        base = {Letter::B};
      } else {
        base = {Letter::A};
      }
    } else if (ch == 'b') {
      ++pos_;
      base = {Letter::B};
    } else if (ch == 'c') {
      ++pos_;
      base = {Letter::C};
    } else {
      throw parse_error(std::string("unexpected character '") + ch + "'", pos_);
    }
    std::size_t k = exponent();
    std::vector<Letter> out;
    for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
  }

  std::size_t exponent() {
    if (pos_ >= s_.size() || s_[pos_] != '^') return 1;
    ++pos_;
    std::size_t start = pos_;
    std::size_t k = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      k = k * 10 + static_cast<std::size_t>(s_[pos_] - '0');
      if (k > 100000) throw parse_error("exponent too large", start);
      ++pos_;
    }
    if (pos_ == start) throw parse_error("expected exponent after '^'", start);
    if (k == 0) throw parse_error("exponent must be at least 1", start);
    return k;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Tokens a | a+ | b | c, each optionally followed by ^k; groups may be parenthesized.
inline BosonWord parse_word(std::string_view s) { return BosonWord(detail::WordParser(s).parse()); }

// hw: the central element is evaluated at 1; env: its powers are tracked.
enum class Mode { hw, env };

// (a+)^i a^j c^m
struct Monomial {
  unsigned i = 0;
  unsigned j = 0;
  unsigned m = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

class NormalForm {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit NormalForm(Mode mode = Mode::hw) : mode_(mode) {}

  NormalForm(const Terms& terms, Mode mode) : mode_(mode) {
    for (const auto& [key, c] : terms) add(key, c);
  }

  static NormalForm identity(Mode mode = Mode::hw) { return monomial(0, 0, 0, Rational(1), mode); }

  static NormalForm monomial(unsigned i, unsigned j, unsigned m, const Rational& c, Mode mode = Mode::hw) {
    NormalForm n(mode);
    n.add({i, j, m}, c);
    return n;
  }

  Mode mode() const { return mode_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(unsigned i, unsigned j, unsigned m = 0) const {
    auto it = terms_.find({i, j, m});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  // Common value of i - j, if every term shares it.
  std::optional<long> excess() const {
    std::optional<long> e;
    for (const auto& [key, c] : terms_) {
      long d = static_cast<long>(key.i) - static_cast<long>(key.j);
      if (e && *e != d) return std::nullopt;
      e = d;
    }
    return e;
  }

  bool is_homogeneous() const { return !terms_.empty() && excess().has_value(); }

  // Evaluates the central element at 1.
  NormalForm to_hw() const {
    NormalForm n(Mode::hw);
    for (const auto& [key, c] : terms_) n.add({key.i, key.j, 0}, c);
    return n;
  }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;

  friend NormalForm operator+(const NormalForm& a, const NormalForm& b) {
    check_modes(a, b);
    NormalForm r = a;
    for (const auto& [key, c] : b.terms_) r.add(key, c);
    return r;
  }

  friend NormalForm operator*(const Rational& s, const NormalForm& a) {
    NormalForm r(a.mode_);
    for (const auto& [key, c] : a.terms_) r.add(key, s * c);
    return r;
  }

  friend NormalForm operator-(const NormalForm& a, const NormalForm& b) { return a + Rational(-1) * b; }

  static void check_modes(const NormalForm& a, const NormalForm& b) {
    if (a.mode_ != b.mode_) throw mode_mismatch("normal forms in different modes");
  }

  // Accumulates c into the term; zero results are erased.
  void add(Monomial key, const Rational& c) {
    if (mode_ == Mode::hw) key.m = 0;
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

 private:
  Mode mode_;
  Terms terms_;
};

// (a+)^k a^l c^p (a+)^r a^s c^q = sum_i i! C(l,i) C(r,i) (a+)^(k+r-i) a^(l+s-i) c^(p+q+i)
inline NormalForm nf_multiply(const NormalForm& u, const NormalForm& v) {
  NormalForm::check_modes(u, v);
  NormalForm out(u.mode());
  for (const auto& [x, cx] : u.terms()) {
    for (const auto& [y, cy] : v.terms()) {
      unsigned top = std::min(x.j, y.i);
      Rational base = cx * cy;
      for (unsigned i = 0; i <= top; ++i) {
        Rational w = factorial(i) * binomial(x.j, i) * binomial(y.i, i);
        out.add({x.i + y.i - i, x.j + y.j - i, x.m + y.m + i}, base * w);
      }
    }
  }
  return out;
}

inline NormalForm operator*(const NormalForm& u, const NormalForm& v) { return nf_multiply(u, v); }

inline NormalForm letter_form(Letter x, Mode mode) {
  switch (x) {
    case Letter::A: return NormalForm::monomial(0, 1, 0, Rational(1), mode);
    case Letter::B: return NormalForm::monomial(1, 0, 0, Rational(1), mode);
    default: return NormalForm::monomial(0, 0, 1, Rational(1), mode);
  }
}

inline NormalForm normal_order(const BosonWord& w, Mode mode = Mode::hw) {
  NormalForm r = NormalForm::identity(mode);
  for (Letter x : w.letters()) r = nf_multiply(r, letter_form(x, mode));
  return r;
}

inline NormalForm lie_bracket(const NormalForm& u, const NormalForm& v) {
  return nf_multiply(u, v) - nf_multiply(v, u);
}

inline NormalForm nf_power(const NormalForm& u, std::size_t n) {
  NormalForm r = NormalForm::identity(u.mode());
  NormalForm base = u;
  while (n > 0) {
    if (n & 1U) r = nf_multiply(r, base);
    n >>= 1;
    if (n > 0) base = nf_multiply(base, base);
  }
  return r;
}

// Generalized Stirling numbers of a homogeneous element.
struct GSTable {
  NormalForm omega;
  long excess = 0;
  std::vector<std::vector<Rational>> rows;

  std::size_t n_max() const { return rows.size() - 1; }

  Rational at(std::size_t n, std::size_t k) const {
    if (n >= rows.size() || k >= rows[n].size()) return Rational(0);
    return rows[n][k];
  }

  // Square corner of the table.
  RowFiniteMatrix matrix(std::size_t size) const {
    std::vector<std::vector<Rational>> m(size, std::vector<Rational>(size));
    for (std::size_t n = 0; n < size; ++n) {
      for (std::size_t k = 0; k < size; ++k) m[n][k] = at(n, k);
    }
    return RowFiniteMatrix(std::move(m));
  }
};

// Non-negative excess E: omega^n = (a+)^(nE) sum_k S(n,k) (a+)^k a^k.
// Negative excess:     omega^n = (sum_k S(n,k) (a+)^k a^k) a^(n|E|).
inline GSTable gen_stirling(const NormalForm& omega, std::size_t n_max) {
  NormalForm w = omega.to_hw();
  if (!w.is_homogeneous()) throw not_homogeneous("generalized Stirling numbers need a homogeneous element");
  GSTable t{w, *w.excess(), {}};
  long e = t.excess;
  NormalForm power = NormalForm::identity();
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) power = nf_multiply(power, w);
    std::vector<Rational> row;
    for (const auto& [key, c] : power.terms()) {
      unsigned k = e >= 0 ? key.j : key.i;
      if (row.size() <= k) row.resize(k + 1);
      row[k] = c;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// S(n,k) = (1/k!) sum_{j=0..k} (-1)^(k-j) C(k,j) h(j)^n with h(j) = sum_{m>=1} alpha(m) j(j-1)...(j-m+1).
// alpha[0] is the coefficient of (a+)^1 a^1.
inline Rational balanced_stirling_explicit(const std::vector<Rational>& alpha, std::size_t n, std::size_t k) {
  auto h = [&](std::size_t j) {
    Rational s;
    for (std::size_t m = 1; m <= alpha.size(); ++m) s += alpha[m - 1] * falling(Rational(j), m);
    return s;
  };
  Rational sum;
  for (std::size_t j = 0; j <= k; ++j) {
    Rational term = binomial(static_cast<long>(k), static_cast<long>(j)) * pow(h(j), static_cast<long>(n));
    if ((k - j) % 2 == 1) term = -term;
    sum += term;
  }
  return sum / factorial(k);
}

// Bargmann-Fock matrix: column k holds the image of x^k / c_k under a+ -> x, a -> d/dx,
// read in generalized coefficients c_n [x^n].
inline RowFiniteMatrix to_matrix(const NormalForm& u, std::size_t size, const RefSeq& c) {
  NormalForm w = u.to_hw();
  std::vector<std::vector<Rational>> m(size, std::vector<Rational>(size));
  for (std::size_t k = 0; k < size; ++k) {
    for (const auto& [key, coef] : w.terms()) {
      if (key.j > k) continue;
      std::size_t n = k - key.j + key.i;
      if (n >= size) continue;
      m[n][k] += coef * falling(Rational(k), key.j) * c(n) / c(k);
    }
  }
  return RowFiniteMatrix(std::move(m));
}

}  // namespace hwr::weyl
