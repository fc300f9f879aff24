#include "twistsig/modforms.hpp"

#include <algorithm>

#include "twistsig/errors.hpp"

namespace twistsig {

std::string_view group_name(ModularGroup g) {
  switch (g) {
    case ModularGroup::SL2Z: return "SL2Z";
    case ModularGroup::QuasiSL2Z: return "quasi-SL2Z";
    case ModularGroup::Gamma0_2: return "Gamma_0(2)";
    case ModularGroup::GammaUpper0_2: return "Gamma^0(2)";
  }
  return "?";
}

std::string_view basis_name(BasisTag tag) {
  switch (tag) {
    case BasisTag::TateW12: return "tate_w12";
    case BasisTag::GammaUpper02W12: return "gamma02_w12";
    case BasisTag::GammaLower02W12: return "gamma_0_2_w12";
  }
  return "?";
}

// Akiyama-Tanigawa; agrees with the B_1 = +1/2 convention, which only
// differs from the usual one at n = 1.
Rational bernoulli_number(int n) {
  if (n < 2 || n % 2 != 0) {
    throw InvalidArgument("Bernoulli number index must be even and >= 2, got " + std::to_string(n));
  }
  std::vector<Rational> a(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
  }
  return a[0];
}

namespace {

// Coefficients at exponents n = 1 .. below order.
long integer_limit(const Rational& order) {
  const mpz_class f = order.floor();
  return order.is_integer() ? f.get_si() : f.get_si() + 1;
}

mpz_class divisor_power_sum(long n, unsigned long power) {
  mpz_class s = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), power);
    s += t;
  }
  return s;
}

}  // namespace

ModularForm eisenstein_series(int k, const Rational& order) {
  if (k < 1) throw InvalidArgument("Eisenstein index k must be >= 1");
  const Rational factor = Rational(4 * k) / bernoulli_number(2 * k);
  std::map<QSeries::Index, Rational> terms{{0, Rational(1)}};
  const long lim = integer_limit(order);
  for (long n = 1; n < lim; ++n) {
    terms[n] = -factor * Rational(divisor_power_sum(n, static_cast<unsigned long>(2 * k - 1)));
  }
  ModularForm f;
  f.weight = 2 * k;
  f.group = k == 1 ? ModularGroup::QuasiSL2Z : ModularGroup::SL2Z;
  f.expansion = QSeries::from_terms(1, order, std::move(terms)).promoted(kDefaultLattice);
  return f;
}

ModularForm discriminant_series(const Rational& order) {
  const QSeries e4 = eisenstein_series(2, order).expansion;
  const QSeries e6 = eisenstein_series(3, order).expansion;
  const QSeries via_eisenstein =
      series_add(series_pow(e4, 3), series_pow(e6, 2), Rational(-1)).scaled(Rational(1, 1728));

  QSeries via_product = zero_series(order);
  if (order > Rational(1)) {
    via_product = product_expand({{Rational(0), Rational(1), -1, 24}}, order - Rational(1)).shifted(Rational(1));
  }
  if (!(via_eisenstein == via_product)) {
    throw InconsistencyError("Delta: (E4^3 - E6^2)/1728 and q*prod(1-q^n)^24 disagree: " + to_text(via_eisenstein) +
                             " vs " + to_text(via_product));
  }
  ModularForm f;
  f.weight = 12;
  f.group = ModularGroup::SL2Z;
  f.expansion = via_product;
  return f;
}

QSeries theta_null_series(int j, const Rational& order) {
  const Rational half(1, 2);
  switch (j) {
    case 1: {
      // 2 q^{1/8} prod (1 - q^j)(1 + q^j)^2
      const Rational lead(1, 8);
      if (order <= lead) return zero_series(order);
      return product_expand({{Rational(0), Rational(1), -1, 1}, {Rational(0), Rational(1), 1, 2}}, order - lead)
          .shifted(lead)
          .scaled(Rational(2));
    }
    case 2:
      return product_expand({{Rational(0), Rational(1), -1, 1}, {-half, Rational(1), -1, 2}}, order);
    case 3:
      return product_expand({{Rational(0), Rational(1), -1, 1}, {-half, Rational(1), 1, 2}}, order);
    default:
      throw InvalidArgument("theta-null index must be 1, 2 or 3 (theta(0, tau) vanishes), got " +
                            std::to_string(j));
  }
}

QSeries delta_epsilon_divisor_sum(LevelTwoForm which, const Rational& order) {
  // delta_2 and eps_2 live on q^{n/2}; the others on q^n.
  const bool half = which == LevelTwoForm::Delta2 || which == LevelTwoForm::Eps2;
  const std::int64_t lattice = half ? 2 : 1;
  const long lim = (QSeries(lattice, order)).limit();
  std::map<QSeries::Index, Rational> terms;
  switch (which) {
    case LevelTwoForm::Delta1: terms[0] = Rational(1, 4); break;
    case LevelTwoForm::Eps1: terms[0] = Rational(1, 16); break;
    case LevelTwoForm::Delta2: terms[0] = Rational(-1, 8); break;
    case LevelTwoForm::Eps2: break;
  }
  for (long n = 1; n < lim; ++n) {
    mpz_class s = 0;
    for (long d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      const mpz_class dz = d;
      switch (which) {
        case LevelTwoForm::Delta1:
        case LevelTwoForm::Delta2:
          if (d % 2 == 1) s += dz;
          break;
        case LevelTwoForm::Eps1:
          s += (d % 2 == 0 ? 1 : -1) * dz * dz * dz;
          break;
        case LevelTwoForm::Eps2:
          if ((n / d) % 2 == 1) s += dz * dz * dz;
          break;
      }
    }
    switch (which) {
      case LevelTwoForm::Delta1: terms[n] = Rational(6) * Rational(s); break;
      case LevelTwoForm::Delta2: terms[n] = Rational(-3) * Rational(s); break;
      default: terms[n] = Rational(s); break;
    }
  }
  return QSeries::from_terms(lattice, order, std::move(terms)).promoted(kDefaultLattice);
}

ModularForm delta_epsilon_series(LevelTwoForm which, const Rational& order) {
  const auto fourth = [&](int j) { return series_pow(theta_null_series(j, order), 4); };
  QSeries built = zero_series(order);
  ModularForm f;
  switch (which) {
    case LevelTwoForm::Delta1:
      built = (fourth(2) + fourth(3)).scaled(Rational(1, 8));
      f.weight = 2;
      f.group = ModularGroup::Gamma0_2;
      break;
    case LevelTwoForm::Eps1:
      built = (fourth(2) * fourth(3)).scaled(Rational(1, 16));
      f.weight = 4;
      f.group = ModularGroup::Gamma0_2;
      break;
    case LevelTwoForm::Delta2:
      built = (fourth(1) + fourth(3)).scaled(Rational(-1, 8));
      f.weight = 2;
      f.group = ModularGroup::GammaUpper0_2;
      break;
    case LevelTwoForm::Eps2:
      built = (fourth(1) * fourth(3)).scaled(Rational(1, 16));
      f.weight = 4;
      f.group = ModularGroup::GammaUpper0_2;
      break;
  }
  built = built.truncated(order);
  const QSeries closed = delta_epsilon_divisor_sum(which, order);
  if (!(built == closed)) {
    throw InconsistencyError("theta-product and divisor-sum expansions disagree: " + to_text(built) + " vs " +
                             to_text(closed));
  }
  f.expansion = built;
  return f;
}

namespace {

void finish_fit(BasisFit& fit, const QSeries& residual) {
  fit.verified_order = residual.order();
  fit.in_span = residual.is_zero();
  if (!fit.in_span) fit.first_residual = residual.valuation();
}

}  // namespace

BasisFit fit_weight12_sl2z(const QSeries& s) {
  if (s.order() < Rational(3)) {
    throw TruncationError("SL2(Z) weight-12 fit needs the series through order 3, got order " + s.order().str());
  }
  for (const auto& [k, c] : s.terms()) {
    if (!s.exponent(k).is_integer()) {
      throw InvalidArgument("SL2(Z) weight-12 fit needs integer exponents, found q^" + s.exponent(k).str());
    }
  }
  const QSeries e4cubed = series_pow(eisenstein_series(2, s.order()).expansion, 3);
  const QSeries delta = discriminant_series(s.order()).expansion;
  const Rational m = coefficient_at(s, Rational(0));
  const Rational n = coefficient_at(s, Rational(1)) - m * coefficient_at(e4cubed, Rational(1));
  const QSeries residual = series_add(series_add(s, e4cubed, -m), delta, -n);

  BasisFit fit;
  fit.basis = BasisTag::TateW12;
  fit.coefficients = {m, n};
  finish_fit(fit, residual);
  return fit;
}

std::vector<QSeries> gamma_upper_basis(const Rational& order) {
  const QSeries d = delta_epsilon_series(LevelTwoForm::Delta2, order).expansion.scaled(Rational(8));
  const QSeries e = delta_epsilon_series(LevelTwoForm::Eps2, order).expansion;
  std::vector<QSeries> basis;
  for (int r = 0; r <= 3; ++r) basis.push_back((series_pow(d, 6 - 2 * r) * series_pow(e, r)).truncated(order));
  return basis;
}

std::vector<QSeries> gamma_lower_basis(const Rational& order) {
  const QSeries d = delta_epsilon_series(LevelTwoForm::Delta1, order).expansion.scaled(Rational(8));
  const QSeries e = delta_epsilon_series(LevelTwoForm::Eps1, order).expansion;
  std::vector<QSeries> basis;
  for (int r = 0; r <= 3; ++r) {
    basis.push_back((series_pow(d, 6 - 2 * r) * series_pow(e, r)).truncated(order).scaled(pow(Rational(2), -12)));
  }
  return basis;
}

BasisFit fit_weight12_gamma_upper0_2(const QSeries& s) {
  if (s.order() < Rational(2)) {
    throw TruncationError("Gamma^0(2) weight-12 fit needs the series through order 2, got order " +
                          s.order().str());
  }
  const std::vector<QSeries> basis = gamma_upper_basis(s.order());
  // Basis element r starts at q^{r/2} with leading coefficient 1: triangular.
  std::vector<Rational> h(4);
  for (int r = 0; r <= 3; ++r) {
    const Rational e(r, 2);
    Rational c = coefficient_at(s.promoted(std::lcm<std::int64_t>(s.lattice(), 2)), e);
    for (int i = 0; i < r; ++i) c -= h[i] * coefficient_at(basis[i], e);
    h[r] = c / coefficient_at(basis[r], e);
  }
  QSeries residual = s;
  for (int r = 0; r <= 3; ++r) residual = series_add(residual, basis[r], -h[r]);

  BasisFit fit;
  fit.basis = BasisTag::GammaUpper02W12;
  fit.coefficients = h;
  finish_fit(fit, residual);
  return fit;
}

BasisFit fit_weight12_gamma_lower0_2(const QSeries& s) {
  if (s.order() < Rational(4)) {
    throw TruncationError("Gamma_0(2) weight-12 fit needs the series through order 4, got order " +
                          s.order().str());
  }
  const std::vector<QSeries> basis = gamma_lower_basis(s.order());
  // Exact Gaussian elimination on the q^0..q^3 coefficients.
  std::vector<std::vector<Rational>> a(4, std::vector<Rational>(5));
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 4; ++col) a[row][col] = coefficient_at(basis[col], Rational(row));
    a[row][4] = coefficient_at(s, Rational(row));
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    while (pivot < 4 && a[pivot][col].is_zero()) ++pivot;
    if (pivot == 4) throw InconsistencyError("Gamma_0(2) weight-12 basis is singular on q^0..q^3");
    std::swap(a[pivot], a[col]);
    for (int row = 0; row < 4; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      const Rational f = a[row][col] / a[col][col];
      for (int k = col; k < 5; ++k) a[row][k] -= f * a[col][k];
    }
  }
  std::vector<Rational> h(4);
  for (int r = 0; r < 4; ++r) h[r] = a[r][4] / a[r][r];
  QSeries residual = s;
  for (int r = 0; r <= 3; ++r) residual = series_add(residual, basis[r], -h[r]);

  BasisFit fit;
  fit.basis = BasisTag::GammaLower02W12;
  fit.coefficients = h;
  finish_fit(fit, residual);
  return fit;
}

QSeries transport_gamma02(const std::vector<Rational>& h, const Rational& order) {
  if (h.size() != 4) throw InvalidArgument("transport needs exactly 4 coefficients");
  const std::vector<QSeries> basis = gamma_lower_basis(order);
  QSeries out = zero_series(order);
  for (int r = 0; r <= 3; ++r) out = series_add(out, basis[r], h[r]);
  return out;
}

const std::vector<std::string>& named_form_list() {
  static const std::vector<std::string> names{"E2",     "E4",     "E6",   "delta_disc", "theta1", "theta2",
                                              "theta3", "delta1", "eps1", "delta2",     "eps2"};
  return names;
}

QSeries named_form(std::string_view name, const Rational& order) {
  if (name == "E2") return eisenstein_series(1, order).expansion;
  if (name == "E4") return eisenstein_series(2, order).expansion;
  if (name == "E6") return eisenstein_series(3, order).expansion;
  if (name == "delta_disc") return discriminant_series(order).expansion;
  if (name == "theta1") return theta_null_series(1, order);
  if (name == "theta2") return theta_null_series(2, order);
  if (name == "theta3") return theta_null_series(3, order);
  if (name == "delta1") return delta_epsilon_series(LevelTwoForm::Delta1, order).expansion;
  if (name == "eps1") return delta_epsilon_series(LevelTwoForm::Eps1, order).expansion;
  if (name == "delta2") return delta_epsilon_series(LevelTwoForm::Delta2, order).expansion;
  if (name == "eps2") return delta_epsilon_series(LevelTwoForm::Eps2, order).expansion;
  throw InvalidArgument("unknown form '" + std::string(name) + "'");
}

nlohmann::json to_json(const BasisFit& fit) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : fit.coefficients) coeffs.push_back(c.str());
  nlohmann::json doc{{"basis", std::string(basis_name(fit.basis))},
                     {"coefficients", coeffs},
                     {"in_span", fit.in_span},
                     {"verified_order", fit.verified_order.str()}};
  if (fit.first_residual) doc["first_residual"] = fit.first_residual->str();
  return doc;
}

}  // namespace twistsig
