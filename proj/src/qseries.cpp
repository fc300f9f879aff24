#include "twistsig/qseries.hpp"

#include <map>
#include <numeric>
#include <sstream>

#include "twistsig/errors.hpp"

namespace twistsig {

namespace {

std::int64_t lattice_for(const Rational& e, std::int64_t lattice) {
  return std::lcm(lattice, e.denominator().get_si());
}

}  // namespace

QSeries zero_series(const Rational& order, std::int64_t lattice) { return QSeries(lattice, order); }

QSeries constant_series(const Rational& c, const Rational& order, std::int64_t lattice) {
  return QSeries::from_terms(lattice, order, {{0, c}});
}

QSeries monomial_series(const Rational& c, const Rational& exponent, const Rational& order,
                        std::int64_t lattice) {
  if (exponent.sign() < 0) throw InvalidArgument("negative exponent " + exponent.str());
  const std::int64_t l = lattice_for(exponent, lattice);
  const QSeries shape(l, order);
  return QSeries::from_terms(l, order, {{shape.index_of(exponent), c}});
}

QSeries series_from_pairs(const std::vector<std::pair<Rational, Rational>>& pairs, const Rational& order,
                          std::int64_t lattice) {
  std::int64_t l = lattice;
  for (const auto& [e, c] : pairs) l = lattice_for(e, l);
  const QSeries shape(l, order);
  std::map<QSeries::Index, Rational> terms;
  for (const auto& [e, c] : pairs) {
    if (e.sign() < 0) throw InvalidArgument("negative exponent " + e.str());
    terms[shape.index_of(e)] += c;
  }
  return QSeries::from_terms(l, order, std::move(terms));
}

QSeries series_add(const QSeries& a, const QSeries& b, const Rational& scalar) {
  return a.plus_scaled(b, scalar);
}

QSeries series_mul(const QSeries& a, const QSeries& b) { return a * b; }

QSeries series_inv(const QSeries& a) { return a.inverse(); }

QSeries series_pow(const QSeries& a, long e) {
  if (e < 0) return series_pow(series_inv(a), -e);
  QSeries result = constant_series(Rational(1), a.order(), a.lattice());
  QSeries base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Rational coefficient_at(const QSeries& a, const Rational& e) {
  if (e.sign() < 0) return Rational(0);
  const Rational* c = a.find(e);
  return c ? *c : Rational(0);
}

QSeries product_expand(const std::vector<ProductTerm>& terms, const Rational& order, std::int64_t lattice) {
  std::int64_t l = lattice;
  for (const auto& t : terms) {
    if (t.sign != 1 && t.sign != -1) throw InvalidArgument("product sign must be +1 or -1");
    if (t.step.sign() <= 0) {
      throw DivergentProductError("product step must be positive, got " + t.step.str());
    }
    if ((t.shift + t.step).sign() <= 0) {
      throw DivergentProductError("factor (1 + sign*q^" + (t.shift + t.step).str() +
                                  ") does not tend to 1; the product diverges");
    }
    l = lattice_for(t.shift, lattice_for(t.step, l));
  }
  QSeries out = constant_series(Rational(1), order, l);
  for (const auto& t : terms) {
    for (long j = 1;; ++j) {
      const Rational a = t.shift + t.step * Rational(j);
      if (a >= order) break;
      // (1 + s q^a)^e = sum_k C(e, k) s^k q^{ka}
      std::vector<std::pair<Rational, Rational>> pairs;
      for (long k = 0; Rational(k) * a < order; ++k) {
        Rational c = binomial(Rational(t.exponent), k);
        if (t.sign < 0 && (k & 1)) c = -c;
        if (c.is_zero() && t.exponent >= 0 && k > t.exponent) break;
        pairs.emplace_back(Rational(k) * a, c);
      }
      out = out * series_from_pairs(pairs, order, l);
    }
  }
  return out;
}

namespace {

std::string exponent_text(const Rational& e) {
  if (e == Rational(1)) return "q";
  if (e.is_integer()) return "q^" + e.str();
  return "q^{" + e.str() + "}";
}

}  // namespace

std::string to_text(const QSeries& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : s.terms()) {
    const Rational e = s.exponent(k);
    const Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (e.is_zero()) {
      os << mag.str();
    } else if (mag == Rational(1)) {
      os << exponent_text(e);
    } else if (mag.is_integer()) {
      os << mag.str() << exponent_text(e);
    } else {
      os << "(" << mag.str() << ")" << exponent_text(e);
    }
  }
  const Rational& o = s.order();
  const std::string tail = "O(" + (o.is_integer() ? "q^" + o.str() : "q^{" + o.str() + "}") + ")";
  if (first) return tail;
  os << " + " << tail;
  return os.str();
}

nlohmann::json to_json(const QSeries& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : s.terms()) terms.push_back({s.exponent(k).str(), c.str()});
  return {{"lattice", s.lattice()}, {"order", s.order().str()}, {"terms", terms}};
}

QSeries qseries_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw InvalidArgument("series document must be a JSON object");
    const std::int64_t lattice = doc.contains("lattice") ? doc.at("lattice").get<std::int64_t>() : kDefaultLattice;
    if (lattice <= 0) throw InvalidArgument("series lattice must be positive");
    const Rational order = Rational::parse(doc.at("order").get<std::string>());
    std::vector<std::pair<Rational, Rational>> pairs;
    for (const auto& t : doc.at("terms")) {
      if (!t.is_array() || t.size() != 2) throw InvalidArgument("series term must be [exponent, coefficient]");
      const Rational e = Rational::parse(t[0].get<std::string>());
      if (e >= order) throw InvalidArgument("series term at q^" + e.str() + " lies beyond the order");
      pairs.emplace_back(e, Rational::parse(t[1].get<std::string>()));
    }
    QSeries s = series_from_pairs(pairs, order, lattice);
    if (s.lattice() != lattice) {
      throw InvalidArgument("series term exponent is not on the declared lattice (1/" + std::to_string(lattice) +
                            ")Z");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed series document: ") + e.what());
  }
}

}  // namespace twistsig
