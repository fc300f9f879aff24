#pragma once

#include <string_view>

#include "twistsig/charring.hpp"
#include "twistsig/manifolds.hpp"
#include "twistsig/qseries.hpp"

namespace twistsig {

/// q-series whose coefficients are virtual bundles, stored through their
/// Chern characters.
class BundleStream {
 public:
  BundleStream(FactorShape shape, TruncatedSeries<PClass> series);

  const FactorShape& shape() const { return shape_; }
  const TruncatedSeries<PClass>& series() const { return series_; }
  const Rational& order() const { return series_.order(); }

  /// Coefficient bundle at q^e (the zero bundle when absent). Throws
  /// TruncationError at or beyond the order.
  BundleChar coefficient(const Rational& e) const;

 private:
  FactorShape shape_;
  TruncatedSeries<PClass> series_;
};

/// Theta(T_C M) = prod_{n>=1} S_{q^n}(T~), T~ = T_C M - dim M.
BundleStream theta_stream(const FactorShape& shape, const Rational& order);

enum class LiuWang { Theta1, Theta2 };

/// Liu-Wang elements with V = TM for (a, b) in {(0, 1), (1, 0)}:
///   Theta_1(0,1) = Theta (x) prod_r Lambda_{q^{r-1/2}}(T~) (x) prod_s Lambda_{-q^{s-1/2}}(T~)
///   Theta_2(0,1) = Theta (x) prod_m Lambda_{q^m}(T~)       (x) prod_r Lambda_{q^{r-1/2}}(T~)
///   Theta_1(1,0) = Theta (x) prod_m Lambda_{q^m}(T~)
///   Theta_2(1,0) = Theta (x) prod_s Lambda_{-q^{s-1/2}}(T~)
BundleStream liu_wang_stream(LiuWang which, int a, int b, const FactorShape& shape, const Rational& order);

enum class WeightClass { Ahat, Lhat };

/// sum_e q^e int_M weight_class * ch(stream[e]).
QSeries genus_pairing(WeightClass weight, const BundleStream& stream, const ManifoldSpec& m);

/// int_M A-hat ch(Theta(T_C M)).
QSeries witten_genus(const ManifoldSpec& m, const Rational& order);

/// Parses twist expressions such as "L2T-47T+900" over the tangent bundle of
/// `shape`. Atoms: 1, T, L2T, S2T, TxT; integer coefficients; + and -.
BundleChar parse_twist(std::string_view expr, const FactorShape& shape);

/// Sig(M, V) = int_M L-hat ch(V).
Rational twisted_signature(const ManifoldSpec& m, const BundleChar& twist);
Rational twisted_signature(const ManifoldSpec& m, std::string_view twist);

/// Ind(D (x) V) = int_M A-hat ch(V).
Rational dirac_index(const ManifoldSpec& m, const BundleChar& twist);
Rational dirac_index(const ManifoldSpec& m, std::string_view twist);

}  // namespace twistsig
