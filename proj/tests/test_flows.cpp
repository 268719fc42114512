#include <catch_amalgamated.hpp>

#include <random>

#include "hwr/flows.hpp"
#include "hwr/io.hpp"
#include "hwr/riordan.hpp"
#include "support/oracles.hpp"

using hwr::Rational;
using hwr::RefSeq;
using hwr::Series;
using namespace hwr::flows;
namespace weyl = hwr::weyl;

namespace {

Series xp(std::size_t p, std::size_t n) { return Series::monomial(p, Rational(1), n); }

weyl::NormalForm word(const char* s) { return weyl::normal_order(weyl::parse_word(s), weyl::Mode::hw); }

// sum_j lambda^j / j! f^(j), for polynomial f
Series taylor_shift(const Series& f, const Rational& lambda) {
  Series out = f;
  Series d = f;
  Rational w(1);
  for (std::size_t j = 1; j <= f.trunc(); ++j) {
    d = derivative(d);
    w *= lambda / Rational(j);
    std::vector<Rational> padded(d.coeffs().begin(), d.coeffs().end());
    out = out + w * Series(padded, f.trunc());
  }
  return out;
}

}  // namespace

TEST_CASE("substitution factor and closed-form flows", "[flows]") {
  Rational l(1, 3);
  CHECK(substitution_factor(2, l, 8) == shift_up(hwr::inverse(Series({Rational(1), -l}, 8)), 1));
  CHECK_THROWS_AS(substitution_factor(1, l, 8), hwr::unsupported_degree);

  Series poly({2, -1, 0, 3, 0, 0}, 5);
  CHECK(translate(poly, l) == taylor_shift(poly, l));
  CHECK(translate(poly, Rational(0)) == poly);
  CHECK(translate(translate(poly, l), Rational(2)) == translate(poly, l + Rational(2)));
  CHECK_THROWS_AS(translate(Series({1, 1}, 1), l), hwr::not_polynomial);

  std::mt19937 rng(41);
  Series f = oracle::random_series(rng, 10);
  CHECK(homothety(homothety(f, Rational(2)), Rational(-1, 3)) == homothety(f, Rational(-2, 3)));
  for (std::size_t p = 0; p <= 10; ++p) CHECK(homothety(xp(p, 10), Rational(3))[p] == hwr::pow(Rational(3), long(p)));

  FieldOp x2d{xp(2, 10), Series::zero(10)};
  CHECK(homography(f, l) == exp_field_action(x2d, l, f));
  CHECK(homography(homography(f, l), Rational(2)) == homography(f, l + Rational(2)));
}

TEST_CASE("exponential field action", "[flows]") {
  Rational l(2, 5);
  FieldOp op{xp(2, 12), xp(1, 12)};
  CHECK(exp_field_action(op, l, Series::one(12)) == hwr::inverse(Series({Rational(1), -l}, 12)));
  CHECK(field_apply(op, xp(3, 12)) == Rational(4) * xp(4, 12));
  CHECK_THROWS_AS(exp_field_action(FieldOp{xp(1, 8), xp(1, 8)}, l, Series::one(8)), hwr::degree_too_low);
  CHECK_THROWS_AS(exp_field_action(FieldOp{xp(2, 8), Series::one(8)}, l, Series::one(8)), hwr::degree_too_low);
  CHECK_THROWS_AS(monomial_op(0, Rational(1), 8), hwr::unsupported_degree);
  // a nonzero q(0) loses one order
  CHECK(field_apply(FieldOp{Series::one(6), Series::zero(6)}, xp(3, 6)).trunc() == 5);
}

TEST_CASE("prefunctions of brackets", "[flows]") {
  Rational l(1, 4);
  const std::size_t n = 14;
  struct Case {
    long k, l;
    Rational r, s;
    Variant v;
  };
  std::vector<Case> cases{{1, 2, 1, 1, Variant::plus},   {1, 2, 3, 1, Variant::plus}, {2, 1, 1, 2, Variant::plus},
                          {0, 3, 2, -1, Variant::plus},  {1, 2, 3, 1, Variant::minus}, {2, 0, Rational(1, 2), 5, Variant::minus}};
  for (const auto& c : cases) {
    Flow u = prefunction_general(c.k, c.l, c.r, c.s, l, c.v, n);
    Rational theta = c.v == Variant::plus ? c.s * Rational(c.l) - c.r * Rational(c.k)
                                          : -(c.r * Rational(c.k) + c.s * Rational(c.l));
    auto e = static_cast<std::size_t>(c.k + c.l);
    FieldOp field{Rational(c.l - c.k) * xp(e + 1, n), theta * xp(e, n)};
    if (c.v == Variant::plus) {
      FieldOp br = field_bracket(monomial_op(static_cast<std::size_t>(c.k + 1), c.r, n + 1),
                                 monomial_op(static_cast<std::size_t>(c.l + 1), c.s, n + 1));
      CHECK(br.q == field.q);
      CHECK(br.v == field.v);
    }
    for (std::size_t p = 0; p <= 8; ++p) CHECK(act(u, xp(p, n)) == exp_field_action(field, l, xp(p, n)));
  }
  // (1,2,1,1): g = (1 - 3 lambda x^3)^(-1/3)
  Flow u = prefunction_general(1, 2, 1, 1, l, Variant::plus, 9);
  CHECK(u.g == pow(Series({Rational(1), 0, 0, Rational(-3, 4)}, 9), Rational(-1, 3)));
  CHECK(u.s == shift_up(u.g, 1));
  // (1,2,3,1): theta = -1 and g = (1 - 3 lambda x^3)^(1/3)
  Flow w = prefunction_general(1, 2, 3, 1, l, Variant::plus, 9);
  CHECK(w.g == pow(Series({Rational(1), 0, 0, Rational(-3, 4)}, 9), Rational(1, 3)));
  Flow id = prefunction_general(2, 2, 1, 1, l, Variant::plus, 9);
  CHECK(id.s == Series::x(9));
  CHECK(id.g == Series::one(9));
}

TEST_CASE("conjugacy prefunction matches the exponential action", "[flows][property]") {
  const std::size_t trunc = 14;
  for (std::size_t n : {2, 3, 4}) {
    for (long r : {0, 1, 2}) {
      for (const Rational& l : {Rational(1, 3), Rational(-2)}) {
        Flow u = conjugacy_prefunction(n, Rational(r), l, trunc);
        FieldOp op = monomial_op(n, Rational(r), trunc);
        for (std::size_t p = 0; p <= 8; ++p) CHECK(act(u, xp(p, trunc)) == exp_field_action(op, l, xp(p, trunc)));
      }
    }
  }
  // s^k (1 - k lambda x^k) = x^k for the flow of x^(k+1) d/dx
  for (std::size_t k = 1; k <= 4; ++k) {
    Rational l(3, 7);
    Series s = substitution_factor(k + 1, l, 16);
    Series one_minus = Series::one(16) - Series::monomial(k, Rational(long(k)) * l, 16);
    CHECK(pow(s, long(k)) * one_minus == xp(k, 16));
  }
}

TEST_CASE("flows satisfy the group law", "[flows][property]") {
  auto samples = lambda_samples(6);
  samples.push_back(Rational(-3, 2));
  for (std::size_t n : {2, 3}) {
    for (long r : {0, 1, -2}) CHECK(group_law_holds(n, Rational(r), samples, 12));
  }
  // the check is not vacuous: a mismatched pair fails
  Flow a = conjugacy_prefunction(2, Rational(1), Rational(1), 8);
  Flow b = conjugacy_prefunction(2, Rational(1), Rational(2), 8);
  CHECK_FALSE(compose(b.s, a.s) == conjugacy_prefunction(2, Rational(1), Rational(4), 8).s);
}

TEST_CASE("tangent at lambda = 0 is the field", "[flows]") {
  const std::size_t trunc = 8;
  auto samples = lambda_samples(trunc + 1);
  std::mt19937 rng(42);
  for (std::size_t n : {2, 3}) {
    FieldOp op = monomial_op(n, Rational(2), trunc);
    Series f = oracle::random_series(rng, trunc);
    std::vector<Series> values;
    for (const auto& l : samples) values.push_back(act(conjugacy_prefunction(n, Rational(2), l, trunc), f));
    CHECK(lambda_coefficient(samples, values, 0) == f);
    CHECK(lambda_coefficient(samples, values, 1) == field_apply(op, f));
    CHECK(lambda_coefficient(samples, values, 2) == Rational(1, 2) * field_apply(op, field_apply(op, f)));
  }
}

TEST_CASE("field brackets and Sheffer matrices", "[flows]") {
  FieldOp br = field_bracket(FieldOp{xp(2, 8), Series::zero(8)}, FieldOp{xp(3, 8), Series::zero(8)});
  CHECK(br.q == xp(4, 7));
  CHECK(br.v.is_zero());
  std::mt19937 rng(43);
  for (const RefSeq& c : {RefSeq::ordinary(), RefSeq::exponential()}) {
    Series g = oracle::random_series(rng, 10);
    g = g - g[0] * Series::one(10) + Series::one(10);
    Series phi = oracle::random_proper(rng, 10);
    CHECK(sheffer_matrix(g, phi, c, 11) == hwr::riordan::matrix(hwr::riordan::make(g, phi, c), 10));
  }
  CHECK_THROWS_AS(sheffer_matrix(Series({2}, 3), Series::x(3), RefSeq::ordinary(), 3), hwr::non_unit);
  CHECK_THROWS_AS(sheffer_matrix(Series::one(3), Series({1, 1}, 3), RefSeq::ordinary(), 3), hwr::has_constant_term);
}

TEST_CASE("matrix route and substitution route are equivalent", "[flows]") {
  auto samples = lambda_samples(3);
  std::vector<weyl::NormalForm> first{word("ba"), word("bba"), word("bbba"), word("bba") + Rational(2) * word("b"),
                                      Rational(-1, 2) * word("bbba") + Rational(3) * word("bb")};
  for (const auto& w : first) {
    auto report = verify_equiv_report(w, samples, 6, 14);
    INFO(hwr::io::pretty(w));
    if (*w.excess() > 0) {
      REQUIRE(report.flow_agrees.has_value());
      CHECK(*report.flow_agrees);
    }
    CHECK(report.sheffer);
    CHECK(report.substitution);
    CHECK(report.holds());
  }
  auto second = verify_equiv_report(word("bbbaa"), samples, 6, 14);
  CHECK_FALSE(second.sheffer);
  CHECK_FALSE(second.substitution);
  CHECK_FALSE(second.flow_agrees.has_value());
  CHECK(second.holds());
  CHECK(verify_equiv(word("bbaa"), samples, 6, 12));
  CHECK_THROWS_AS(verify_equiv(word("baa"), samples, 4, 8), hwr::negative_excess);
  CHECK_THROWS_AS(verify_equiv(word("ba") + word("b"), samples, 4, 8), hwr::not_homogeneous);
}

TEST_CASE("flow report round trip", "[flows][io]") {
  Flow u = conjugacy_prefunction(3, Rational(2), Rational(1, 7), 10);
  auto j = hwr::io::json::parse(hwr::io::flow_report(3, Rational(2), u).dump());
  CHECK(j["n"] == 3);
  CHECK(j["lambda"] == "1/7");
  CHECK(hwr::io::series_from(j["s"]) == u.s);
  CHECK(hwr::io::series_from(j["g"]) == u.g);
}
