#include "twistsig/genus.hpp"

#include <cctype>
#include <string>

#include "twistsig/errors.hpp"

namespace twistsig {

namespace {

constexpr std::int64_t kStreamLattice = 2;

using PSeries = TruncatedSeries<PClass>;

PSeries unit_series(const FactorShape& shape, const Rational& order) {
  std::map<PSeries::Index, PClass> terms;
  terms.emplace(0, PClass::constant(shape, Rational(1)));
  return PSeries::from_terms(kStreamLattice, order, std::move(terms));
}

/// Lambda_t(T~) with t = sign * q^e, as a series in q.
PSeries lambda_factor(const std::vector<BundleChar>& lam, int sign, const Rational& e, const Rational& order) {
  std::map<PSeries::Index, PClass> terms;
  for (std::size_t j = 0; j < lam.size(); ++j) {
    const Rational exponent = e * Rational(static_cast<long>(j));
    if (exponent >= order) break;
    const Rational s = (sign < 0 && j % 2 == 1) ? Rational(-1) : Rational(1);
    terms.emplace((exponent * Rational(kStreamLattice)).to_int64(), lam[j].ch() * s);
  }
  return PSeries::from_terms(kStreamLattice, order, std::move(terms));
}

/// Lambda^j(T~) for every j a stream of this order can reach.
std::vector<BundleChar> reduced_exterior_powers(const FactorShape& shape, const Rational& order) {
  const BundleChar reduced = tangent_char(shape) - BundleChar::trivial(shape, shape.total_dim());
  const int n = static_cast<int>((order * Rational(kStreamLattice)).floor().get_si());
  return power_operations(PowerKind::Exterior, n, reduced);
}

/// prod_{j>=1} Lambda_{sign q^{shift + j}}(T~), or its S-version when
/// `symmetric` (S_t = 1 / Lambda_{-t}).
PSeries family(const std::vector<BundleChar>& lam, const Rational& shift, int sign, bool symmetric,
               const FactorShape& shape, const Rational& order) {
  PSeries out = unit_series(shape, order);
  for (long j = 1;; ++j) {
    const Rational e = shift + Rational(j);
    if (e >= order) break;
    out = out * (symmetric ? lambda_factor(lam, -sign, e, order).inverse() : lambda_factor(lam, sign, e, order));
  }
  return out;
}

}  // namespace

BundleStream::BundleStream(FactorShape shape, TruncatedSeries<PClass> series)
    : shape_(std::move(shape)), series_(std::move(series)) {
  for (const auto& [k, c] : series_.terms()) {
    if (!(c.shape() == shape_)) throw ShapeMismatchError("stream coefficient has a different factor shape");
  }
}

BundleChar BundleStream::coefficient(const Rational& e) const {
  const PClass* c = series_.find(e);
  return c ? BundleChar(*c) : BundleChar::trivial(shape_, 0);
}

BundleStream theta_stream(const FactorShape& shape, const Rational& order) {
  const auto lam = reduced_exterior_powers(shape, order);
  return BundleStream(shape, family(lam, Rational(0), 1, true, shape, order));
}

BundleStream liu_wang_stream(LiuWang which, int a, int b, const FactorShape& shape, const Rational& order) {
  const bool zero_one = a == 0 && b == 1;
  const bool one_zero = a == 1 && b == 0;
  if (!zero_one && !one_zero) {
    throw InvalidArgument("Liu-Wang streams are implemented for (a, b) = (0, 1) and (1, 0) only, got (" +
                          std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  const auto lam = reduced_exterior_powers(shape, order);
  const Rational whole(0);
  const Rational half(-1, 2);
  PSeries s = family(lam, whole, 1, true, shape, order);
  const auto times = [&](const Rational& shift, int sign) { s = s * family(lam, shift, sign, false, shape, order); };
  if (which == LiuWang::Theta1 && zero_one) {
    times(half, 1);
    times(half, -1);
  } else if (which == LiuWang::Theta2 && zero_one) {
    times(whole, 1);
    times(half, 1);
  } else if (which == LiuWang::Theta1) {
    times(whole, 1);
  } else {
    times(half, -1);
  }
  return BundleStream(shape, std::move(s));
}

QSeries genus_pairing(WeightClass weight, const BundleStream& stream, const ManifoldSpec& m) {
  const FactorShape shape = m.shape();
  if (!(shape == stream.shape())) {
    throw ShapeMismatchError("stream shape " + to_string(stream.shape()) + " does not match manifold shape " +
                             to_string(shape));
  }
  const PClass w = weight == WeightClass::Ahat ? ahat_class(shape) : lhat_class(shape);
  const auto tables = m.tables();
  const auto& series = stream.series();
  std::map<QSeries::Index, Rational> terms;
  for (const auto& [k, c] : series.terms()) terms.emplace(k, integrate_top(w * c, tables));
  return QSeries::from_terms(series.lattice(), series.order(), std::move(terms));
}

QSeries witten_genus(const ManifoldSpec& m, const Rational& order) {
  return genus_pairing(WeightClass::Ahat, theta_stream(m.shape(), order), m);
}

BundleChar parse_twist(std::string_view expr, const FactorShape& shape) {
  const BundleChar t = tangent_char(shape);
  BundleChar total = BundleChar::trivial(shape, 0);
  std::size_t i = 0;
  const auto skip = [&] {
    while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  const auto fail = [&](const std::string& why) -> BundleChar {
    throw InvalidArgument("bad twist expression '" + std::string(expr) + "': " + why);
  };
  bool first = true;
  skip();
  if (i == expr.size()) fail("empty");
  while (i < expr.size()) {
    long sign = 1;
    if (expr[i] == '+' || expr[i] == '-') {
      sign = expr[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected + or - at position " + std::to_string(i));
    }
    first = false;
    long coeff = 1;
    bool have_number = false;
    if (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
      std::size_t j = i;
      while (j < expr.size() && std::isdigit(static_cast<unsigned char>(expr[j]))) ++j;
      if (j - i > 12) fail("coefficient too large");
      coeff = std::stol(std::string(expr.substr(i, j - i)));
      have_number = true;
      i = j;
      skip();
      if (i < expr.size() && expr[i] == '*') {
        ++i;
        skip();
      }
    }
    const auto atom_at = [&](std::string_view name) { return expr.substr(i, name.size()) == name; };
    BundleChar atom = BundleChar::trivial(shape, 1);
    if (atom_at("L2T")) {
      atom = power_operation(PowerKind::Exterior, 2, t);
      i += 3;
    } else if (atom_at("S2T")) {
      atom = power_operation(PowerKind::Symmetric, 2, t);
      i += 3;
    } else if (atom_at("TxT")) {
      atom = t * t;
      i += 3;
    } else if (atom_at("T")) {
      atom = t;
      i += 1;
    } else if (!have_number) {
      fail("unknown token at position " + std::to_string(i));
    }
    total = total + bundle_scale(atom, sign * coeff);
    skip();
  }
  return total;
}

Rational twisted_signature(const ManifoldSpec& m, const BundleChar& twist) {
  return integrate_top(lhat_class(m.shape()) * twist.ch(), m.tables());
}

Rational twisted_signature(const ManifoldSpec& m, std::string_view twist) {
  return twisted_signature(m, parse_twist(twist, m.shape()));
}

Rational dirac_index(const ManifoldSpec& m, const BundleChar& twist) {
  return integrate_top(ahat_class(m.shape()) * twist.ch(), m.tables());
}

Rational dirac_index(const ManifoldSpec& m, std::string_view twist) {
  return dirac_index(m, parse_twist(twist, m.shape()));
}

}  // namespace twistsig
