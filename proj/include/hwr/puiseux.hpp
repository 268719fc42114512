#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

#include "hwr/errors.hpp"
#include "hwr/rational.hpp"
#include "hwr/series.hpp"

namespace hwr {

// Series in x^(1/ram): coeffs[i] multiplies x^((lo + i) / ram). Exponents past the
// last stored slot are unknown.
class PuiseuxSeries {
 public:
  PuiseuxSeries(std::size_t ram, long lo, std::vector<Rational> coeffs)
      : ram_(ram), lo_(lo), coeffs_(std::move(coeffs)) {
    if (ram_ == 0) throw out_of_range("ramification must be positive");
    if (coeffs_.empty()) throw out_of_range("Puiseux series needs at least one coefficient slot");
    normalize();
  }

  static PuiseuxSeries from_series(const Series& f) {
    return PuiseuxSeries(1, 0, std::vector<Rational>(f.coeffs().begin(), f.coeffs().end()));
  }

  // Builds from nonzero terms; every exponent in [low, known_through] absent from terms is zero.
  static PuiseuxSeries from_terms(const std::map<Rational, Rational>& terms, const Rational& low,
                                  const Rational& known_through) {
    if (known_through < low) throw out_of_range("empty known range");
    mpz_class ram = lcm(low.denominator(), known_through.denominator());
    for (const auto& [e, c] : terms) {
      if (!c.is_zero()) ram = lcm(ram, e.denominator());
    }
    Rational r(ram);
    long lo = (low * r).numerator().get_si();
    long hi = (known_through * r).numerator().get_si();
    std::vector<Rational> coeffs(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [e, c] : terms) {
      if (e < low || e > known_through || c.is_zero()) continue;
      long idx = (e * r).numerator().get_si() - lo;
      coeffs[static_cast<std::size_t>(idx)] += c;
    }
    return PuiseuxSeries(ram.get_ui(), lo, std::move(coeffs));
  }

  std::size_t ram() const { return ram_; }
  long lo() const { return lo_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational low_exponent() const { return Rational(lo_, static_cast<long>(ram_)); }
  Rational known_through() const {
    return Rational(lo_ + static_cast<long>(coeffs_.size()) - 1, static_cast<long>(ram_));
  }

  Rational coefficient(const Rational& e) const {
    if (e > known_through()) throw out_of_range("exponent beyond known range");
    Rational idx = e * Rational(static_cast<long>(ram_)) - Rational(lo_);
    if (idx.sign() < 0 || !idx.is_integer()) return Rational(0);
    return coeffs_[idx.numerator().get_ui()];
  }

  std::map<Rational, Rational> terms() const {
    std::map<Rational, Rational> t;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!coeffs_[i].is_zero()) t.emplace(Rational(lo_ + static_cast<long>(i), static_cast<long>(ram_)), coeffs_[i]);
    }
    return t;
  }

  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    Rational hi = std::min(a.known_through(), b.known_through());
    auto ta = a.terms(), tb = b.terms();
    auto in_range = [&](const std::map<Rational, Rational>& t) {
      std::map<Rational, Rational> out;
      for (const auto& [e, c] : t) {
        if (e <= hi) out.emplace(e, c);
      }
      return out;
    };
    return in_range(ta) == in_range(tb);
  }

 private:
  void normalize() {
    long g = std::gcd(static_cast<long>(ram_), lo_);
    for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i) {
      if (!coeffs_[i].is_zero()) g = std::gcd(g, static_cast<long>(i));
    }
    if (g <= 1) return;
    std::vector<Rational> reduced;
    for (std::size_t i = 0; i < coeffs_.size(); i += static_cast<std::size_t>(g)) reduced.push_back(coeffs_[i]);
    ram_ /= static_cast<std::size_t>(g);
    lo_ /= g;
    coeffs_ = std::move(reduced);
  }

  std::size_t ram_;
  long lo_;
  std::vector<Rational> coeffs_;
};

// x^rho U
inline PuiseuxSeries mu(const PuiseuxSeries& u, const Rational& rho) {
  std::map<Rational, Rational> shifted;
  for (const auto& [e, c] : u.terms()) shifted.emplace(e + rho, c);
  return PuiseuxSeries::from_terms(shifted, u.low_exponent() + rho, u.known_through() + rho);
}

inline PuiseuxSeries mu_inverse(const PuiseuxSeries& u, const Rational& rho) { return mu(u, -rho); }

// G U with G an ordinary power series.
inline PuiseuxSeries operator*(const Series& g, const PuiseuxSeries& u) {
  std::map<Rational, Rational> out;
  for (const auto& [e, c] : u.terms()) {
    for (std::size_t j = 0; j <= g.trunc(); ++j) {
      if (!g[j].is_zero()) out[e + Rational(j)] += c * g[j];
    }
  }
  Rational low = u.low_exponent();
  Rational hi = std::min(u.known_through(), low + Rational(g.trunc()));
  return PuiseuxSeries::from_terms(out, low, hi);
}

// U(x g(x)) for g(0) = 1, using (x g)^e = x^e g^e term by term.
inline PuiseuxSeries substitute_xg(const PuiseuxSeries& u, const Series& g) {
  std::map<Rational, Rational> out;
  for (const auto& [e, c] : u.terms()) {
    Series ge = pow(g, e);
    for (std::size_t j = 0; j <= ge.trunc(); ++j) {
      if (!ge[j].is_zero()) out[e + Rational(j)] += c * ge[j];
    }
  }
  Rational low = u.low_exponent();
  Rational hi = std::min(u.known_through(), low + Rational(g.trunc()));
  return PuiseuxSeries::from_terms(out, low, hi);
}

}  // namespace hwr
