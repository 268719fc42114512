#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hwr/rational.hpp"
#include "hwr/series.hpp"

namespace hwr::sequences {

// n! [z^n] (1 - a z^e)^(-b), the counting sequence of an EGF (1 - a z^e)^(-b) - 1 read with a leading 1.
struct CountingEgf {
  std::string name;
  Rational a;
  Rational b;
  std::size_t e = 1;
  std::string oeis;
  // Published prefix; its values sit at n = offset, offset + e, offset + 2e, ...
  std::vector<long> published;
  std::size_t offset = 0;
};

inline CountingEgf family(long d) {
  CountingEgf s{"d=" + std::to_string(d), Rational(d), Rational(1, d), 1, "", {}, 0};
  if (d == 2) {
    s.oeis = "A001147";
    s.published = {1, 1, 3, 15, 105, 945, 10395, 135135, 2027025, 34459425};
  } else if (d == 3) {
    s.oeis = "A007559";
    s.published = {1, 4, 28, 280, 3640, 58240, 1106560, 24344320, 608608000, 17041024000};
    s.offset = 1;
  }
  return s;
}

inline CountingEgf quadruple_factorial() {
  return {"(1-4z)^(-1/2)", Rational(4), Rational(1, 2), 1, "A001813",
          {1, 2, 12, 120, 1680, 30240, 665280, 17297280, 518918400}, 0};
}

inline CountingEgf binary_mappings() {
  return {"(1-2z^2)^(-1/2)", Rational(2), Rational(1, 2), 2, "A126934",
          {1, 2, 36, 1800, 176400, 28576800, 6915585600, 2337467932800}, 0};
}

// (n!/k!) (b)_k a^k with n = e k, zero when e does not divide n.
inline Rational product_route(const CountingEgf& s, std::size_t n) {
  if (n % s.e != 0) return Rational(0);
  std::size_t k = n / s.e;
  Rational v = factorial(n) / factorial(k);
  for (std::size_t j = 0; j < k; ++j) v *= (s.b + Rational(j)) * s.a;
  return v;
}

inline std::vector<Rational> egf_route(const CountingEgf& s, std::size_t n_max) {
  Series base = Series::one(n_max) - Series::monomial(s.e, s.a, n_max);
  Series f = pow(base, -s.b);
  std::vector<Rational> out;
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(coefficient(f, n, RefSeq::exponential()));
  return out;
}

struct SeqCheck {
  std::vector<Rational> values;
  bool routes_agree = false;
  std::optional<bool> published_match;
};

inline SeqCheck check(const CountingEgf& s, std::size_t n_max) {
  std::size_t need = s.published.empty() ? 0 : s.offset + (s.published.size() - 1) * s.e;
  std::size_t top = std::max(n_max, need);
  std::vector<Rational> egf = egf_route(s, top);
  SeqCheck out;
  out.routes_agree = true;
  for (std::size_t n = 0; n <= top; ++n) {
    if (product_route(s, n) != egf[n]) out.routes_agree = false;
  }
  if (!s.published.empty()) {
    bool ok = true;
    for (std::size_t i = 0; i < s.published.size(); ++i) {
      if (egf[s.offset + i * s.e] != Rational(s.published[i])) ok = false;
    }
    out.published_match = ok;
  }
  out.values.assign(egf.begin(), egf.begin() + static_cast<std::ptrdiff_t>(n_max) + 1);
  return out;
}

}  // namespace hwr::sequences
