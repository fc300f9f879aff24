#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "twistsig/qseries.hpp"

namespace twistsig {

enum class ModularGroup { SL2Z, QuasiSL2Z, Gamma0_2, GammaUpper0_2 };

std::string_view group_name(ModularGroup g);

/// A q-expansion tagged with the weight and group it is known to belong to.
/// The tags are asserted by the constructor that produced the form; they are
/// never inferred from the coefficients.
struct ModularForm {
  int weight = 0;
  ModularGroup group = ModularGroup::SL2Z;
  QSeries expansion{kDefaultLattice, Rational(0)};
};

/// B_n for even n >= 2 (B_2 = 1/6, B_4 = -1/30).
Rational bernoulli_number(int n);

/// E_{2k} = 1 - (4k / B_{2k}) sum_n sigma_{2k-1}(n) q^n.
ModularForm eisenstein_series(int k, const Rational& order);

/// Delta = q prod_{n>=1} (1 - q^n)^24, cross-checked against (E4^3 - E6^2)/1728.
ModularForm discriminant_series(const Rational& order);

/// theta_j(0, tau) for j in {1, 2, 3}; theta(0, tau) vanishes and is excluded.
QSeries theta_null_series(int j, const Rational& order);

enum class LevelTwoForm { Delta1, Eps1, Delta2, Eps2 };

/// delta_1, eps_1 (Gamma_0(2)) and delta_2, eps_2 (Gamma^0(2)) built from the
/// theta-null products and verified against their divisor-sum expansions.
ModularForm delta_epsilon_series(LevelTwoForm which, const Rational& order);

/// Divisor-sum expansion of the same forms, independent of the theta products.
QSeries delta_epsilon_divisor_sum(LevelTwoForm which, const Rational& order);

enum class BasisTag { TateW12, GammaUpper02W12, GammaLower02W12 };

std::string_view basis_name(BasisTag tag);

struct BasisFit {
  BasisTag basis = BasisTag::TateW12;
  std::vector<Rational> coefficients;
  Rational verified_order;
  bool in_span = false;
  /// Lowest exponent of the nonzero residual, when not in span.
  std::optional<Rational> first_residual;
};

/// Fits s = m E4^3 + n Delta from the q^0 and q^1 coefficients and verifies
/// the residual below s.order(). Needs order >= 3 and integer exponents.
BasisFit fit_weight12_sl2z(const QSeries& s);

/// The Gamma^0(2) weight-12 basis (8 delta_2)^{6-2r} eps_2^r, r = 0..3.
std::vector<QSeries> gamma_upper_basis(const Rational& order);

/// Fits s = sum_r h_r (8 delta_2)^{6-2r} eps_2^r. Needs order >= 2.
BasisFit fit_weight12_gamma_upper0_2(const QSeries& s);

/// The Gamma_0(2) side 2^{-12} (8 delta_1)^{6-2r} eps_1^r, r = 0..3.
std::vector<QSeries> gamma_lower_basis(const Rational& order);

/// Fits s = 2^{-12} sum_r h_r (8 delta_1)^{6-2r} eps_1^r from q^0..q^3.
/// Needs order >= 4.
BasisFit fit_weight12_gamma_lower0_2(const QSeries& s);

/// 2^{-12} sum_r h_r (8 delta_1)^{6-2r} eps_1^r: the Gamma_0(2) partner of a
/// Gamma^0(2) form with coordinates h.
QSeries transport_gamma02(const std::vector<Rational>& h, const Rational& order);

/// CLI-facing names: E2 E4 E6 delta_disc theta1 theta2 theta3 delta1 eps1
/// delta2 eps2.
QSeries named_form(std::string_view name, const Rational& order);
const std::vector<std::string>& named_form_list();

nlohmann::json to_json(const BasisFit& fit);

}  // namespace twistsig
