#pragma once

#include <cstddef>
#include <optional>

#include "hwr/errors.hpp"
#include "hwr/flows.hpp"
#include "hwr/puiseux.hpp"
#include "hwr/rational.hpp"
#include "hwr/riordan.hpp"
#include "hwr/series.hpp"

namespace hwr::striped {

// Element of G(n, rho): materializes as (g^rho, x g) with g = (1 - mu n lambda x^n)^(-1/n).
struct StripedElement {
  long n = 1;
  Rational rho;
  Rational mu;
  Rational lambda;

  bool is_identity() const { return mu.is_zero(); }

  friend bool operator==(const StripedElement&, const StripedElement&) = default;
};

// (1 - mu n lambda x^n)^(-1/n)
inline Series stripe_base(long n, const Rational& mu, const Rational& lambda, std::size_t trunc) {
  if (n < 1) throw unsupported_degree("stripe index must be positive");
  Series base = Series::one(trunc) - Series::monomial(static_cast<std::size_t>(n), mu * Rational(n) * lambda, trunc);
  return pow(base, Rational(-1, n));
}

inline riordan::RiordanArray materialize(const StripedElement& e, std::size_t trunc,
                                         const RefSeq& c = RefSeq::ordinary()) {
  Series g = stripe_base(e.n, e.mu, e.lambda, trunc);
  return riordan::RiordanArray(pow(g, e.rho), shift_up(g, 1).truncated(trunc), c);
}

// Whether two elements materialize to the same array, decided on the parameters.
inline bool same_array(const StripedElement& a, const StripedElement& b) {
  bool ta = (a.mu * a.lambda).is_zero();
  bool tb = (b.mu * b.lambda).is_zero();
  if (ta || tb) return ta && tb;
  return a.n == b.n && a.rho == b.rho && a.mu * a.lambda == b.mu * b.lambda;
}

// Every entry with n - k not divisible by nu vanishes.
inline bool stripe_check(const riordan::RiordanArray& t, std::size_t nu) {
  if (nu == 0) throw out_of_range("stripe width must be positive");
  RowFiniteMatrix m = riordan::matrix(t, t.trunc());
  for (std::size_t n = 0; n < m.size(); ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      if ((n - k) % nu != 0 && !m(n, k).is_zero()) return false;
    }
  }
  return true;
}

// L^m inside G(n, rho)
inline StripedElement comp_power(const StripedElement& e, long m) { return {e.n, e.rho, e.mu * Rational(m), e.lambda}; }

// (k, r, sigma) . (l, s, tau) = (k + l, (s l - r k)/(l - k), sigma tau (l - k)); identity when l = k.
inline StripedElement qmul(const StripedElement& a, const StripedElement& b) {
  if (a.lambda != b.lambda) throw lambda_mismatch("quasigroup product needs a common lambda");
  long m = b.n - a.n;
  if (m == 0) return {a.n + b.n, Rational(0), Rational(0), a.lambda};
  Rational rho = (b.rho * Rational(b.n) - a.rho * Rational(a.n)) / Rational(m);
  return {a.n + b.n, rho, a.mu * b.mu * Rational(m), a.lambda};
}

struct WitnessReport {
  StripedElement left;   // t1 . (t2 . t3)
  StripedElement right;  // (t1 . t2) . t3
  bool nestings_differ = false;
  bool stripes_match = false;
  Rational phi_left;
  Rational phi_right;
  bool phi_differ = false;
  bool arrays_differ = false;
};

inline WitnessReport weak_assoc_witness(const StripedElement& t1, const StripedElement& t2, const StripedElement& t3) {
  WitnessReport r;
  r.left = qmul(t1, qmul(t2, t3));
  r.right = qmul(qmul(t1, t2), t3);
  r.nestings_differ = !(r.left == r.right);
  long total = t1.n + t2.n + t3.n;
  r.stripes_match = r.left.n == total && r.right.n == total;
  r.phi_left = r.left.rho;
  r.phi_right = r.right.rho;
  r.phi_differ = r.phi_left != r.phi_right;
  r.arrays_differ = !same_array(r.left, r.right);
  return r;
}

// Class (k, r; sigma) in the semigroup of stripes; mu = 0 is the identity class.
struct GClass {
  long n = 1;
  Rational rho;
  Rational mu;

  bool is_identity() const { return mu.is_zero(); }
  friend bool operator==(const GClass&, const GClass&) = default;
};

inline GClass sgmul(const GClass& a, const GClass& b) {
  long m = b.n - a.n;
  Rational mu = a.mu * b.mu * Rational(m);
  if (mu.is_zero()) return {a.n + b.n, Rational(0), Rational(0)};
  Rational rho = (b.rho * Rational(b.n) - a.rho * Rational(a.n)) / Rational(m);
  return {a.n + b.n, rho, mu};
}

struct SgAssocReport {
  GClass left;
  GClass right;
  bool equal = false;
};

inline SgAssocReport sg_assoc_report(const GClass& a, const GClass& b, const GClass& c) {
  SgAssocReport r{sgmul(a, sgmul(b, c)), sgmul(sgmul(a, b), c)};
  r.equal = r.left == r.right;
  return r;
}

// Element generated by the bracket [a+^(k+1) a + r a+^k, a+^(l+1) a + s a+^l].
inline StripedElement from_bracket(long k, long l, const Rational& r, const Rational& s, const Rational& lambda,
                                   flows::Variant variant) {
  if (k == l) return {k + l, Rational(0), Rational(0), lambda};
  Rational m(l - k);
  Rational theta = variant == flows::Variant::plus ? s * Rational(l) - r * Rational(k) : -(r * Rational(k) + s * Rational(l));
  return {k + l, theta / m, m, lambda};
}

// mu_{rho1}^{-1}(psi(mu_{rho1} U)) against g^(rho1+rho2) U(x g), with psi(V) = g^rho2 V(x g).
inline bool automorphy_check(const Rational& rho1, const Rational& rho2, const Series& g, const PuiseuxSeries& u,
                             std::size_t trunc) {
  Series gt = g.truncated(std::min(trunc, g.trunc()));
  PuiseuxSeries lifted = mu(u, rho1);
  PuiseuxSeries acted = pow(gt, rho2) * substitute_xg(lifted, gt);
  PuiseuxSeries lhs = mu_inverse(acted, rho1);
  PuiseuxSeries rhs = pow(gt, rho1 + rho2) * substitute_xg(u, gt);
  return lhs == rhs;
}

}  // namespace hwr::striped
