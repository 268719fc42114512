#include <catch_amalgamated.hpp>

#include <random>

#include "hwr/io.hpp"
#include "hwr/riordan.hpp"
#include "support/oracles.hpp"

using hwr::Rational;
using hwr::RefSeq;
using hwr::RowFiniteMatrix;
using hwr::Series;
using namespace hwr::riordan;

namespace {

RiordanArray random_array(std::mt19937& rng, std::size_t n, const RefSeq& c) {
  Series g = oracle::random_series(rng, n);
  if (g[0].is_zero()) g = g + Series::one(n);
  return make(g, oracle::random_proper(rng, n), c);
}

RefSeq custom_ref() {
  std::vector<Rational> c{Rational(1)};
  for (long i = 1; i <= 20; ++i) c.emplace_back(i * i + 1, 2);
  return RefSeq::custom(c);
}

}  // namespace

TEST_CASE("Pascal array and its powers", "[riordan]") {
  auto p = named::pascal(20);
  auto expect = oracle::pascal_table(20);
  for (std::size_t n = 0; n <= 20; ++n) {
    for (std::size_t k = 0; k <= 20; ++k) CHECK(entry(p, n, k) == expect[n][k]);
  }
  auto p16 = named::pascal(16);
  auto pinv = inverse(p16);
  for (long m = -3; m <= 3; ++m) {
    RiordanArray prod = identity(16);
    for (long i = 0; i < (m < 0 ? -m : m); ++i) prod = prod * (m < 0 ? pinv : p16);
    CHECK(prod == named::pascal_power(m, 16));
    CHECK(matrix(prod, 16) == matrix(named::pascal_power(m, 16), 16));
  }
  auto sp = p16 * named::sign_flip(16);
  CHECK(sp * sp == identity(16));
}

TEST_CASE("Stirling arrays are mutually inverse", "[riordan]") {
  auto s2 = named::stirling2(12);
  auto s1 = named::stirling1(12);
  CHECK(s2 * s1 == identity(12, RefSeq::exponential()));
  CHECK(s1 * s2 == identity(12, RefSeq::exponential()));
  CHECK(entry(s2, 4, 2) == Rational(7));
  auto t2 = oracle::stirling2_table(12);
  auto t1 = oracle::stirling1_table(12);
  for (std::size_t n = 0; n <= 12; ++n) {
    for (std::size_t k = 0; k <= 12; ++k) {
      CHECK(entry(s2, n, k) == t2[n][k]);
      CHECK(entry(s1, n, k) == t1[n][k]);
    }
  }
  // rows of the first-kind array are falling factorials
  for (std::size_t n = 0; n <= 10; ++n) {
    for (long x = -3; x <= 6; ++x) {
      Rational row;
      for (std::size_t k = 0; k <= n; ++k) row += entry(s1, n, k) * hwr::pow(Rational(x), static_cast<long>(k));
      CHECK(row == hwr::falling(Rational(x), n));
    }
  }
  CHECK(matrix(named::pascal_exp(10), 10) == matrix(named::pascal(10), 10));
}

TEST_CASE("construction errors", "[riordan]") {
  CHECK_THROWS_AS(make(Series({0, 1}, 4), Series::x(4), RefSeq::ordinary()), hwr::not_unit);
  CHECK_THROWS_AS(make(Series::one(4), Series({1, 1}, 4), RefSeq::ordinary()), hwr::has_constant_term);
  auto np = make(Series::one(4), Series::monomial(2, Rational(1), 4), RefSeq::ordinary());
  CHECK_FALSE(np.proper());
  CHECK(entry(np, 4, 2) == Rational(1));
  CHECK_THROWS_AS(apply(np, Series::one(4)), hwr::not_proper);
  CHECK_THROWS_AS(inverse(np), hwr::not_proper);
  CHECK_THROWS_AS(entry(named::pascal(4), 5, 0), hwr::out_of_range);
  CHECK_THROWS_AS(named::pascal(4) * named::stirling2(4), hwr::ref_seq_mismatch);
}

TEST_CASE("group axioms and the matrix representation", "[riordan][property]") {
  std::mt19937 rng(31);
  for (const RefSeq& c : {RefSeq::ordinary(), RefSeq::exponential(), custom_ref()}) {
    for (int trial = 0; trial < 6; ++trial) {
      auto a = random_array(rng, 12, c), b = random_array(rng, 12, c), d = random_array(rng, 12, c);
      CHECK((a * b) * d == a * (b * d));
      CHECK(a * identity(12, c) == a);
      CHECK(identity(12, c) * a == a);
      CHECK(a * inverse(a) == identity(12, c));
      CHECK(inverse(a) * a == identity(12, c));
      CHECK(matrix(a * b, 12) == matrix(a, 12) * matrix(b, 12));
    }
  }
}

TEST_CASE("diagonal, bivariate identity and the fundamental theorem", "[riordan][property]") {
  std::mt19937 rng(32);
  for (const RefSeq& c : {RefSeq::ordinary(), RefSeq::exponential(), custom_ref()}) {
    auto t = random_array(rng, 10, c);
    for (std::size_t n = 0; n <= 10; ++n) {
      CHECK(entry(t, n, n) == t.g()[0] * hwr::pow(t.f()[1], static_cast<long>(n)));
    }
    // sum_k d(n,k) (c_k [x^k] h) = c_n [x^n] g (h o f)
    Series h = oracle::random_series(rng, 10);
    Series image = apply(t, h);
    RowFiniteMatrix m = matrix(t, 10);
    for (std::size_t n = 0; n <= 10; ++n) {
      Rational s;
      for (std::size_t k = 0; k <= n; ++k) s += m(n, k) * coefficient(h, k, c);
      CHECK(s == coefficient(image, n, c));
    }
  }
  for (int trial = 0; trial < 5; ++trial) {
    auto t = random_array(rng, 10, RefSeq::ordinary());
    for (const Rational& y : {Rational(2), Rational(-1, 3)}) {
      Series gen = t.g() * hwr::inverse(Series::one(10) - y * t.f());
      for (std::size_t n = 0; n <= 10; ++n) {
        Rational s;
        for (std::size_t k = 0; k <= n; ++k) s += entry(t, n, k) * hwr::pow(y, static_cast<long>(k));
        CHECK(s == gen[n]);
      }
    }
  }
}

TEST_CASE("A- and Z-sequences", "[riordan]") {
  auto p = named::pascal(15);
  auto az = az_sequences(p);
  CHECK(az.a == Series({1, 1}, 14));
  CHECK(az.z == Series::one(14));
  CHECK(replay_az(p, az, 15));
  auto s2 = named::stirling2(12);
  CHECK(replay_az(s2, az_sequences(s2), 12));
  std::mt19937 rng(33);
  for (int trial = 0; trial < 4; ++trial) {
    auto t = random_array(rng, 12, trial % 2 ? RefSeq::exponential() : RefSeq::ordinary());
    auto seqs = az_sequences(t);
    CHECK(replay_az(t, seqs, 12));
    // f = x A(f) and g = g0 / (1 - x Z(f))
    CHECK(t.f() == hwr::shift_up(compose(seqs.a, t.f()), 1));
    CHECK(t.g() == t.g()[0] * hwr::inverse(Series::one(12) - hwr::shift_up(compose(seqs.z, t.f()), 1)));
  }
  // a corrupted sequence must not replay
  auto bad = az;
  bad.a = bad.a + Series::monomial(3, Rational(1), 14);
  CHECK_FALSE(replay_az(p, bad, 15));
}

TEST_CASE("iteration matrices and Faa di Bruno", "[riordan][property]") {
  std::mt19937 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    Series f = oracle::random_series(rng, 10);
    Series g = oracle::random_series(rng, 10, 1);
    for (std::size_t n = 0; n <= 10; ++n) CHECK(faa_di_bruno_check(f, g, n));
    Series u = oracle::random_proper(rng, 10), v = oracle::random_proper(rng, 10);
    CHECK(iteration_matrix(u, RefSeq::ordinary()) * iteration_matrix(v, RefSeq::ordinary()) ==
          iteration_matrix(compose(v, u), RefSeq::ordinary()));
  }
}

TEST_CASE("named constructors", "[riordan]") {
  Series g({1, 2, -1, 3}, 8);
  CHECK(named::appell(g).f() == Series::x(8));
  CHECK(named::bell(g).f() == hwr::shift_up(g, 1));
  CHECK(named::power_rho(g, Rational(1)) == named::bell(g));
  CHECK(named::power_rho(g, Rational(0)).g() == Series::one(8));
  CHECK(named::power_rho(g, Rational(1, 2)).g() * named::power_rho(g, Rational(1, 2)).g() == g);
  CHECK(named::lagrange(Series::x(8)) == identity(8));
  CHECK(named::pascal_power(1, 8) == named::pascal(8));
  CHECK(named::pascal_power(0, 8) == identity(8));
}

TEST_CASE("triangle output round trips", "[riordan][io]") {
  auto rows = triangle(named::stirling2(6), 4);
  REQUIRE(rows.size() == 5);
  CHECK(hwr::io::triangle_pretty(rows).find("0 1 7 6 1") != std::string::npos);
  auto j = hwr::io::triangle_json(rows, RefSeq::exponential());
  CHECK(j["c"] == "egf");
  CHECK(hwr::io::triangle_from(hwr::io::json::parse(j.dump())) == rows);
  auto inv = triangle(inverse(named::pascal(5)), 5);
  CHECK(hwr::io::triangle_csv(inv).find("1,-2,1") != std::string::npos);
}
