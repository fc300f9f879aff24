#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistsig/rational.hpp"
#include "twistsig/truncated_series.hpp"

namespace twistsig {

/// q-series with exact rational coefficients, the home of every modular-form
/// expansion in the library.
using QSeries = TruncatedSeries<Rational>;

inline constexpr std::int64_t kDefaultLattice = 24;
inline const Rational kDefaultOrder{10};

QSeries zero_series(const Rational& order, std::int64_t lattice = kDefaultLattice);
QSeries constant_series(const Rational& c, const Rational& order, std::int64_t lattice = kDefaultLattice);

/// c * q^exponent, truncated at order.
QSeries monomial_series(const Rational& c, const Rational& exponent, const Rational& order,
                        std::int64_t lattice = kDefaultLattice);

/// Builds a series from (exponent, coefficient) pairs; exponents are promoted
/// onto the lattice lcm(lattice, denominators).
QSeries series_from_pairs(const std::vector<std::pair<Rational, Rational>>& pairs, const Rational& order,
                          std::int64_t lattice = kDefaultLattice);

/// a + scalar * b.
QSeries series_add(const QSeries& a, const QSeries& b, const Rational& scalar = Rational(1));
QSeries series_mul(const QSeries& a, const QSeries& b);
QSeries series_inv(const QSeries& a);
QSeries series_pow(const QSeries& a, long e);

/// Coefficient at q^e. Throws TruncationError when e >= order.
Rational coefficient_at(const QSeries& a, const Rational& e);

/// One factor family of an infinite product:
///   prod_{j >= 1} (1 + sign * q^(shift + step * j))^exponent.
struct ProductTerm {
  Rational shift;
  Rational step;
  int sign = 1;
  long exponent = 1;
};

/// Expands a finite list of product families through the given order.
QSeries product_expand(const std::vector<ProductTerm>& terms, const Rational& order,
                       std::int64_t lattice = kDefaultLattice);

/// "1 - 24q - 72q^2 + O(q^4)"; fractional exponents render as q^{1/2}.
std::string to_text(const QSeries& s);

/// {"lattice": 24, "order": "10", "terms": [["exponent", "coefficient"], ...]}
nlohmann::json to_json(const QSeries& s);
QSeries qseries_from_json(const nlohmann::json& doc);

}  // namespace twistsig
