#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "hwr/errors.hpp"
#include "hwr/matrix.hpp"
#include "hwr/rational.hpp"
#include "hwr/series.hpp"
#include "hwr/weyl.hpp"

namespace hwr::flows {

// First-order operator q(x) d/dx + v(x).
struct FieldOp {
  Series q;
  Series v;
};

// x^n d/dx + r x^(n-1), n >= 1.
inline FieldOp monomial_op(std::size_t n, const Rational& r, std::size_t trunc) {
  if (n == 0) throw unsupported_degree("monomial field needs n >= 1");
  return {Series::monomial(n, Rational(1), trunc), Series::monomial(n - 1, r, trunc)};
}

// U f = g (f o s)
struct Flow {
  Series s;
  Series g;
  Rational lambda;
};

inline Series act(const Flow& u, const Series& f) { return u.g * compose(f, u.s); }

// (q d/dx + v) f. When q(0) = 0 the result keeps the truncation of f.
inline Series field_apply(const FieldOp& op, const Series& f) {
  std::size_t n = std::min({op.q.trunc(), op.v.trunc(), f.trunc()});
  if (!op.q[0].is_zero()) {
    if (n == 0) throw out_of_range("field action needs truncation >= 1");
    --n;
  }
  std::vector<Rational> out(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    Rational acc;
    for (std::size_t j = 0; j <= m + 1 && j <= op.q.trunc(); ++j) {
      std::size_t i = m + 1 - j;
      if (i > f.trunc() || op.q[j].is_zero() || f[i].is_zero()) continue;
      acc += op.q[j] * Rational(i) * f[i];
    }
    for (std::size_t j = 0; j <= m; ++j) {
      if (!op.v[j].is_zero() && !f[m - j].is_zero()) acc += op.v[j] * f[m - j];
    }
    out[m] = acc;
  }
  return Series(std::move(out), n);
}

// sum_{j<=N} lambda^j / j! (q d/dx + v)^j f; each step raises the order, so the sum is exact.
inline Series exp_field_action(const FieldOp& op, const Rational& lambda, const Series& f) {
  if (order(op.q) < 2 || order(op.v) < 1) {
    throw degree_too_low("exponential action needs ord(q) >= 2 and ord(v) >= 1");
  }
  std::size_t n = std::min({op.q.trunc(), op.v.trunc(), f.trunc()});
  Series term = f.truncated(n);
  Series sum = term;
  for (std::size_t j = 1; j <= n; ++j) {
    term = (lambda / Rational(j)) * field_apply(op, term);
    if (term.is_zero()) break;
    sum = sum + term;
  }
  return sum;
}

// x (1 - (n-1) lambda x^(n-1))^(-1/(n-1)), the substitution generated by x^n d/dx.
inline Series substitution_factor(std::size_t n, const Rational& lambda, std::size_t trunc) {
  if (n < 2) throw unsupported_degree("substitution factor needs n >= 2");
  auto d = static_cast<long>(n - 1);
  Series base = Series::one(trunc) - Series::monomial(n - 1, Rational(d) * lambda, trunc);
  return shift_up(pow(base, Rational(-1, d)), 1).truncated(trunc);
}

// f(x + lambda) for a polynomial given by its coefficients.
inline Series translate(const std::vector<Rational>& poly, const Rational& lambda, std::size_t trunc) {
  std::vector<Rational> out(trunc + 1);
  for (std::size_t p = 0; p < poly.size(); ++p) {
    if (poly[p].is_zero()) continue;
    for (std::size_t i = 0; i <= p && i <= trunc; ++i) {
      out[i] += poly[p] * binomial(static_cast<long>(p), static_cast<long>(i)) * pow(lambda, static_cast<long>(p - i));
    }
  }
  return Series(std::move(out), trunc);
}

// A truncated series counts as a polynomial only when its top known coefficient vanishes.
inline Series translate(const Series& f, const Rational& lambda) {
  if (!f[f.trunc()].is_zero()) throw not_polynomial("translation needs a polynomial input");
  return translate(std::vector<Rational>(f.coeffs().begin(), f.coeffs().end()), lambda, f.trunc());
}

// f(t x)
inline Series homothety(const Series& f, const Rational& t) {
  std::vector<Rational> out(f.trunc() + 1);
  Rational tp(1);
  for (std::size_t p = 0; p <= f.trunc(); ++p, tp *= t) out[p] = f[p] * tp;
  return Series(std::move(out), f.trunc());
}

// f(x / (1 - lambda x))
inline Series homography(const Series& f, const Rational& lambda) {
  std::size_t n = f.trunc();
  Series s = shift_up(inverse(Series({Rational(1), -lambda}, n)), 1).truncated(n);
  return compose(f, s);
}

enum class Variant { plus, minus };

// Flow of (l-k) x^(k+l+1) d/dx + theta x^(k+l), the image of [a+^(k+1) a + r a+^k, a+^(l+1) a + s a+^l]
// with theta = s l - r k (plus) or -(r k + s l) (minus).
inline Flow prefunction_general(long k, long l, const Rational& r, const Rational& s, const Rational& lambda,
                                Variant variant, std::size_t trunc) {
  if (k < 0 || l < 0) throw unsupported_degree("bracket degrees must be non-negative");
  if (k == l) return {Series::x(trunc), Series::one(trunc), lambda};
  Rational c(l - k);
  Rational n(k + l);
  Rational theta = variant == Variant::plus ? s * Rational(l) - r * Rational(k) : -(r * Rational(k) + s * Rational(l));
  Series base = Series::one(trunc) - Series::monomial(static_cast<std::size_t>(k + l), c * n * lambda, trunc);
  Series sub = shift_up(pow(base, Rational(-1) / n), 1).truncated(trunc);
  Series g = pow(base, -theta / (c * n));
  return {sub, g, lambda};
}

// Flow of x^n d/dx + r x^(n-1): s from the substitution factor and g = (s/x)^r.
inline Flow conjugacy_prefunction(std::size_t n, const Rational& r, const Rational& lambda, std::size_t trunc) {
  Series s = substitution_factor(n, lambda, trunc + 1);
  Series g = pow(shift_down(s, 1), r);
  return {s.truncated(trunc), g, lambda};
}

// [q1 d + v1, q2 d + v2] = (q1 q2' - q2 q1') d + (q1 v2' - q2 v1')
inline FieldOp field_bracket(const FieldOp& a, const FieldOp& b) {
  Series q = a.q * derivative(b.q) - b.q * derivative(a.q);
  Series v = a.q * derivative(b.v) - b.q * derivative(a.v);
  return {q, v};
}

// Column k holds g phi^k / c_k in generalized coefficients.
inline RowFiniteMatrix sheffer_matrix(const Series& g, const Series& phi, const RefSeq& c, std::size_t size) {
  if (g[0] != Rational(1)) throw non_unit("Sheffer matrix needs g(0) = 1");
  if (!phi[0].is_zero()) throw has_constant_term("Sheffer matrix needs phi(0) = 0");
  std::vector<std::vector<Rational>> m(size, std::vector<Rational>(size));
  Series col = g;
  for (std::size_t k = 0; k < size; ++k) {
    if (k > 0) col = col * phi;
    for (std::size_t n = 0; n < size && n <= col.trunc(); ++n) {
      if (!col[n].is_zero()) m[n][k] = c(n) * col[n] / c(k);
    }
  }
  return RowFiniteMatrix(std::move(m));
}

// 1, 1/2, ..., 1/count
inline std::vector<Rational> lambda_samples(std::size_t count) {
  std::vector<Rational> out;
  for (std::size_t i = 1; i <= count; ++i) out.emplace_back(1, static_cast<long>(i));
  return out;
}

// Coefficient of lambda^j of a family polynomial in lambda, recovered by exact interpolation
// through the given samples.
inline Series lambda_coefficient(const std::vector<Rational>& samples, const std::vector<Series>& values,
                                 std::size_t j) {
  std::size_t m = samples.size();
  if (m == 0 || values.size() != m) throw out_of_range("interpolation needs matching samples and values");
  std::size_t n = values[0].trunc();
  for (const auto& v : values) n = std::min(n, v.trunc());
  std::vector<Rational> out(n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    // Lagrange basis polynomial prod_{t != i} (L - s_t) / (s_i - s_t), expanded in powers of L.
    std::vector<Rational> basis{Rational(1)};
    Rational denom(1);
    for (std::size_t t = 0; t < m; ++t) {
      if (t == i) continue;
      std::vector<Rational> next(basis.size() + 1);
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= samples[t] * basis[d];
      }
      basis = std::move(next);
      denom *= samples[i] - samples[t];
    }
    if (j >= basis.size()) continue;
    Rational w = basis[j] / denom;
    for (std::size_t x = 0; x <= n; ++x) out[x] += w * values[i][x];
  }
  return Series(std::move(out), n);
}

namespace detail {

inline bool hw_at_most_one(const weyl::NormalForm& w) {
  return std::all_of(w.terms().begin(), w.terms().end(), [](const auto& t) { return t.first.j <= 1; });
}

// q and v of a homogeneous element with all terms of degree at most one in a.
inline FieldOp field_of(const weyl::NormalForm& w, long e, std::size_t trunc) {
  auto ue = static_cast<std::size_t>(e);
  return {Series::monomial(ue + 1, w.coeff(static_cast<unsigned>(ue + 1), 1), trunc),
          Series::monomial(ue, w.coeff(static_cast<unsigned>(ue), 0), trunc)};
}

}  // namespace detail

struct EquivReport {
  bool sheffer = false;       // (i): column k of the Stirling matrix has EGF g phi^k / k!
  bool substitution = false;  // (ii): exp(lambda omega) x^p = g(lambda x^E) (x (1 + phi(lambda x^E)))^p
  std::optional<bool> flow_agrees;  // first-order elements: the same action from the flows closed form

  bool holds() const { return sheffer == substitution && flow_agrees.value_or(true) && (!flow_agrees || sheffer); }
};

// Evaluates both conditions for x^p, p <= p_max, with g and phi read off columns 0 and 1 of the
// generalized Stirling matrix. Excess zero is handled formally in lambda; the samples are then unused.
inline EquivReport verify_equiv_report(const weyl::NormalForm& omega, const std::vector<Rational>& samples,
                                       std::size_t p_max, std::size_t trunc) {
  weyl::NormalForm w = omega.to_hw();
  if (!w.is_homogeneous()) throw not_homogeneous("equivalence check needs a homogeneous element");
  long e = *w.excess();
  if (e < 0) throw negative_excess("equivalence check needs non-negative excess");
  std::size_t big_n = trunc;
  std::size_t n_max = e == 0 ? big_n : big_n / static_cast<std::size_t>(e);
  weyl::GSTable table = weyl::gen_stirling(w, n_max);

  auto column = [&](std::size_t k) {
    std::vector<Rational> c(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) c[n] = table.at(n, k) / factorial(n);
    return Series(std::move(c), n_max);
  };
  Series g = column(0);
  Series phi = column(1) * inverse(g);

  EquivReport report;
  report.sheffer = true;
  Series phik = Series::one(n_max);
  for (std::size_t k = 0; k <= p_max; ++k) {
    if (!(column(k) == (Rational(1) / factorial(k)) * (g * phik))) report.sheffer = false;
    phik = phik * phi;
  }

  // sum_k S(n,k) p!/(p-k)!
  auto weight = [&](std::size_t n, std::size_t p) {
    Rational s;
    for (std::size_t k = 0; k <= p; ++k) s += table.at(n, k) * falling(Rational(p), k);
    return s;
  };

  report.substitution = true;
  if (e == 0) {
    Series one_plus_phi = Series::one(n_max) + phi;
    for (std::size_t p = 0; p <= p_max; ++p) {
      std::vector<Rational> lhs(n_max + 1);
      for (std::size_t n = 0; n <= n_max; ++n) lhs[n] = weight(n, p) / factorial(n);
      if (!(Series(lhs, n_max) == g * pow(one_plus_phi, static_cast<long>(p)))) report.substitution = false;
    }
    return report;
  }

  auto ue = static_cast<std::size_t>(e);
  bool first_order = detail::hw_at_most_one(w);
  if (first_order) report.flow_agrees = true;
  Rational alpha = w.coeff(static_cast<unsigned>(ue + 1), 1);
  Rational beta = w.coeff(static_cast<unsigned>(ue), 0);
  FieldOp op = first_order ? detail::field_of(w, e, big_n) : FieldOp{};
  for (const Rational& lambda : samples) {
    // h(t) -> h(lambda x^E)
    auto spread = [&](const Series& h) {
      std::vector<Rational> out(big_n + 1);
      Rational lp(1);
      for (std::size_t n = 0; n * ue <= big_n && n <= h.trunc(); ++n, lp *= lambda) out[n * ue] = h[n] * lp;
      return Series(std::move(out), big_n);
    };
    Series g_x = spread(g);
    Series one_plus_phi_x = Series::one(big_n) + spread(phi);
    std::optional<Flow> closed;
    if (first_order && !alpha.is_zero()) closed = conjugacy_prefunction(ue + 1, beta / alpha, alpha * lambda, big_n);
    for (std::size_t p = 0; p <= p_max && p <= big_n; ++p) {
      std::vector<Rational> lhs(big_n + 1);
      Rational lp(1);
      for (std::size_t n = 0; p + n * ue <= big_n; ++n, lp *= lambda) {
        lhs[p + n * ue] = lp / factorial(n) * weight(n, p);
      }
      Series via_matrix(std::move(lhs), big_n);
      Series xp = Series::monomial(p, Rational(1), big_n);
      Series rhs = g_x * xp * pow(one_plus_phi_x, static_cast<long>(p));
      if (!(via_matrix == rhs)) report.substitution = false;
      if (first_order) {
        if (!(exp_field_action(op, lambda, xp) == via_matrix)) report.flow_agrees = false;
        if (closed && !(act(*closed, xp) == via_matrix)) report.flow_agrees = false;
      }
    }
  }
  return report;
}

// Equivalence check: conditions (i) and (ii) agree, and first-order elements satisfy both.
inline bool verify_equiv(const weyl::NormalForm& omega, const std::vector<Rational>& samples, std::size_t p_max,
                         std::size_t trunc) {
  return verify_equiv_report(omega, samples, p_max, trunc).holds();
}

// Group law of the flow of x^n d/dx + r x^(n-1) on every ordered pair of samples.
inline bool group_law_holds(std::size_t n, const Rational& r, const std::vector<Rational>& samples, std::size_t trunc) {
  std::vector<Flow> flows;
  for (const auto& l : samples) flows.push_back(conjugacy_prefunction(n, r, l, trunc));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = 0; j < samples.size(); ++j) {
      Flow sum = conjugacy_prefunction(n, r, samples[i] + samples[j], trunc);
      const Flow& a = flows[i];
      const Flow& b = flows[j];
      if (!(compose(b.s, a.s) == sum.s)) return false;
      if (!(a.g * compose(b.g, a.s) == sum.g)) return false;
    }
  }
  return true;
}

}  // namespace hwr::flows
