#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "twistsig/errors.hpp"
#include "twistsig/qseries.hpp"

using namespace twistsig;

namespace {

QSeries poly(std::vector<std::pair<Rational, Rational>> pairs, long order = 10) {
  return series_from_pairs(pairs, Rational(order));
}

QSeries random_series(std::mt19937_64& rng, std::int64_t lattice, int order, bool unit) {
  std::uniform_int_distribution<int> pick(0, 2);
  std::map<QSeries::Index, Rational> terms;
  for (std::int64_t k = 0; k < order * lattice; ++k) {
    if (pick(rng) == 0) terms[k] = oracle::random_rational(rng, 9, 4);
  }
  if (unit) {
    Rational c0 = oracle::random_rational(rng, 5, 3);
    terms[0] = c0.is_zero() ? Rational(1) : c0;
  }
  return QSeries::from_terms(lattice, Rational(order), std::move(terms));
}

std::vector<Rational> dense(const QSeries& s) {
  std::vector<Rational> out(static_cast<std::size_t>(s.limit()));
  for (const auto& [k, c] : s.terms()) out[static_cast<std::size_t>(k)] = c;
  return out;
}

}  // namespace

TEST_CASE("series_add cancels and scales") {
  const QSeries a = poly({{0, 1}, {1, 1}});
  const QSeries b = poly({{0, 1}, {1, -1}});
  CHECK(series_add(a, b) == poly({{0, 2}}));
  CHECK(series_add(a, a, Rational(-1)).is_zero());
  CHECK(series_add(a, b).order() == Rational(10));
}

TEST_CASE("series_add takes the smaller order and the lcm lattice") {
  const QSeries a = series_from_pairs({{Rational(1, 2), 3}}, Rational(4), 2);
  const QSeries b = series_from_pairs({{Rational(1, 3), 1}}, Rational(3), 3);
  const QSeries s = series_add(a, b);
  CHECK(s.order() == Rational(3));
  CHECK(s.lattice() == 6);
  CHECK(coefficient_at(s, Rational(1, 2)) == Rational(3));
  CHECK(coefficient_at(s, Rational(1, 3)) == Rational(1));
}

TEST_CASE("series_mul examples") {
  CHECK(series_mul(poly({{0, 1}, {1, 1}}), poly({{0, 1}, {1, -1}})) == poly({{0, 1}, {2, -1}}));
  CHECK(series_mul(poly({{0, 2}, {1, 48}}), poly({{0, 2}, {1, 48}})) == poly({{0, 4}, {1, 192}, {2, 2304}}));
}

TEST_CASE("series_mul truncation follows valuations") {
  const QSeries a = series_from_pairs({{1, 1}}, Rational(5));
  const QSeries b = series_from_pairs({{0, 1}, {2, 1}}, Rational(3));
  // a known below 5, valuation 1; b known below 3, valuation 0 -> min(5, 4)
  CHECK(series_mul(a, b).order() == Rational(4));
}

TEST_CASE("series_inv examples") {
  const QSeries g = series_inv(poly({{0, 1}, {1, -1}}));
  for (int n = 0; n < 10; ++n) CHECK(coefficient_at(g, Rational(n)) == Rational(1));

  const QSeries d = series_from_pairs({{0, 1}, {Rational(1, 2), 24}, {1, 276}}, Rational(3, 2));
  const QSeries di = series_inv(d);
  CHECK(di == series_from_pairs({{0, 1}, {Rational(1, 2), -24}, {1, 300}}, Rational(3, 2)));

  CHECK(series_inv(poly({{0, 2}})) == poly({{0, Rational(1, 2)}}));
  CHECK_THROWS_AS(series_inv(poly({{1, 1}})), NotInvertibleError);
}

TEST_CASE("series_pow") {
  CHECK(series_pow(poly({{0, 1}, {1, 1}}), 0) == poly({{0, 1}}));
  CHECK(series_pow(poly({{0, 1}, {1, 1}}), 3) == poly({{0, 1}, {1, 3}, {2, 3}, {3, 1}}));
  CHECK(series_pow(poly({{0, 1}, {1, -1}}), -1) == series_inv(poly({{0, 1}, {1, -1}})));
  CHECK_THROWS_AS(series_pow(poly({{1, 1}}), -2), NotInvertibleError);
}

TEST_CASE("coefficient_at refuses to read past the truncation") {
  const QSeries one = poly({{0, 1}});
  CHECK(coefficient_at(one, Rational(3)) == Rational(0));
  CHECK_THROWS_AS(coefficient_at(one, Rational(10)), TruncationError);
  CHECK(coefficient_at(one, Rational(11, 2)) == Rational(0));
  CHECK_THROWS_AS(coefficient_at(one, Rational(1, 48)), InvalidArgument);
}

TEST_CASE("product_expand") {
  // q prod (1 - q^n)^24
  const QSeries delta = product_expand({{Rational(0), Rational(1), -1, 24}}, Rational(9)).shifted(Rational(1));
  CHECK(coefficient_at(delta, Rational(1)) == Rational(1));
  CHECK(coefficient_at(delta, Rational(2)) == Rational(-24));
  CHECK(coefficient_at(delta, Rational(3)) == Rational(252));

  // theta_3(0, tau) = sum_n q^{n^2/2}
  const QSeries theta3 =
      product_expand({{Rational(0), Rational(1), -1, 1}, {Rational(-1, 2), Rational(1), 1, 2}}, Rational(3));
  CHECK(theta3 == series_from_pairs({{0, 1}, {Rational(1, 2), 2}, {2, 2}}, Rational(3)));

  CHECK(product_expand({}, Rational(5)) == poly({{0, 1}}, 5));
  CHECK_THROWS_AS(product_expand({{Rational(-1), Rational(1), 1, 1}}, Rational(3)), DivergentProductError);
  CHECK_THROWS_AS(product_expand({{Rational(1), Rational(0), 1, 1}}, Rational(3)), DivergentProductError);
}

TEST_CASE("product_expand with negative exponents inverts the product") {
  const QSeries p = product_expand({{Rational(0), Rational(1), -1, 3}}, Rational(8));
  const QSeries q = product_expand({{Rational(0), Rational(1), -1, -3}}, Rational(8));
  CHECK(series_mul(p, q) == poly({{0, 1}}, 8));
}

TEST_CASE("text and json rendering") {
  const QSeries e2 = poly({{0, 1}, {1, -24}, {2, -72}, {3, -96}}, 10);
  CHECK(to_text(e2) == "1 - 24q - 72q^2 - 96q^3 + O(q^10)");
  const QSeries d2 = series_from_pairs({{0, Rational(-1, 8)}, {Rational(1, 2), -3}, {1, -1}}, Rational(3, 2));
  CHECK(to_text(d2) == "-1/8 - 3q^{1/2} - q + O(q^{3/2})");
  CHECK(to_text(zero_series(Rational(4))) == "O(q^4)");

  const auto doc = to_json(d2);
  CHECK(doc["lattice"] == 24);
  CHECK(doc["order"] == "3/2");
  CHECK(doc["terms"][0][0] == "0");
  CHECK(doc["terms"][0][1] == "-1/8");
  CHECK(doc["terms"][1][0] == "1/2");
  CHECK(qseries_from_json(doc) == d2);
}

TEST_CASE("json loading rejects malformed documents") {
  CHECK_THROWS_AS(qseries_from_json(nlohmann::json::parse(R"({"order": "x", "terms": []})")), InvalidArgument);
  CHECK_THROWS_AS(qseries_from_json(nlohmann::json::parse(R"({"order": "2", "terms": [["3", "1"]]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(qseries_from_json(nlohmann::json::parse(R"({"lattice": 2, "order": "2", "terms": [["1/3", "1"]]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(qseries_from_json(nlohmann::json::parse(R"({"terms": []})")), InvalidArgument);
}

TEST_CASE("property: ring axioms on random truncated series") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 30; ++trial) {
    const int order = 1 + trial % 6;
    const QSeries a = random_series(rng, 2, order, false);
    const QSeries b = random_series(rng, 3, order, false);
    const QSeries c = random_series(rng, 1, order, false);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    // distributivity holds exactly at the common certified order
    const QSeries lhs = a * (b + c);
    const QSeries rhs = a * b + a * c;
    const Rational o = min(lhs.order(), rhs.order());
    CHECK(lhs.truncated(o) == rhs.truncated(o));
  }
}

TEST_CASE("property: a * inv(a) = 1 for random units") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int order = 1 + trial % 6;
    const QSeries a = random_series(rng, 2, order, true);
    CHECK(series_mul(a, series_inv(a)) == constant_series(Rational(1), Rational(order), 2));
  }
}

TEST_CASE("property: coefficients match a dense convolution oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int order = 1 + trial % 5;
    const QSeries a = random_series(rng, 4, order, true);
    const QSeries b = random_series(rng, 4, order, true);
    const Rational s = oracle::random_rational(rng, 5, 5);
    const auto da = dense(a);
    const auto db = dense(b);
    const auto prod = oracle::convolve(da, db, da.size());
    const QSeries m = series_mul(a, b);
    const QSeries sum = series_add(a, b, s);
    for (std::size_t k = 0; k < da.size(); ++k) {
      const Rational e(static_cast<long>(k), 4);
      CHECK(coefficient_at(m, e) == prod[k]);
      CHECK(coefficient_at(sum, e) == da[k] + s * db[k]);
    }
  }
}

TEST_CASE("property: lattice promotion commutes with arithmetic") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const QSeries a = random_series(rng, 1, 5, true);
    const QSeries b = random_series(rng, 1, 5, true);
    const QSeries fine = series_mul(a.promoted(24), series_inv(b.promoted(24)));
    const QSeries coarse = series_mul(a, series_inv(b));
    CHECK(fine.lattice() == 24);
    CHECK(coarse.lattice() == 1);
    CHECK(fine == coarse);
    for (int n = 0; n < 5; ++n) CHECK(coefficient_at(fine, Rational(n)) == coefficient_at(coarse, Rational(n)));
  }
}
