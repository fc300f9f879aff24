#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "twistsig/rational.hpp"
#include "twistsig/truncated_series.hpp"

namespace twistsig {

/// Dimensions of the factors of a product manifold; each a positive multiple
/// of 4. Factor i carries Pontryagin variables p_1 .. p_{dim_i / 4}.
class FactorShape {
 public:
  static constexpr std::size_t kMaxSlots = 16;

  explicit FactorShape(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  std::size_t factors() const { return dims_.size(); }
  int total_dim() const;
  /// Number of Pontryagin variables (and top weight) of factor i.
  int top(std::size_t i) const { return dims_[i] / 4; }
  /// Slot of p_1 of factor i in the packed monomial.
  std::size_t offset(std::size_t i) const { return offsets_[i]; }
  std::size_t slots() const { return slots_; }

  friend bool operator==(const FactorShape& a, const FactorShape& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t slots_ = 0;
};

std::string to_string(const FactorShape& shape);

/// Packed exponents of all Pontryagin variables of a shape.
struct Monomial {
  std::array<std::uint8_t, FactorShape::kMaxSlots> e{};
  auto operator<=>(const Monomial&) const = default;
};

/// Exponents of p_1 .. p_top of a single factor; the key type of
/// Pontryagin-number tables.
using FactorMonomial = std::vector<int>;

/// "p1^2*p2"; the empty monomial renders as "1".
std::string monomial_key(const FactorMonomial& m);
/// Inverse of monomial_key for a factor with `top` variables.
FactorMonomial parse_monomial_key(std::string_view key, int top);

/// Every monomial of weighted degree exactly dim (a multiple of 4): the
/// entries a Pontryagin-number table must cover.
std::vector<FactorMonomial> top_monomials(int dim);

using PontryaginTable = std::map<FactorMonomial, Rational>;

/// Rational polynomial in per-factor Pontryagin classes, truncated factor by
/// factor: a monomial whose weight in factor i exceeds dim_i / 4 is zero.
class PClass {
 public:
  explicit PClass(FactorShape shape);

  static PClass constant(const FactorShape& shape, const Rational& c);
  /// p_j of factor i.
  static PClass pontryagin(const FactorShape& shape, std::size_t factor, int j);

  const FactorShape& shape() const { return shape_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational constant_term() const;

  /// Adds c * m unless m is truncated away.
  void add_term(const Monomial& m, const Rational& c);

  /// Component of cohomological degree `degree` (a multiple of 4).
  PClass degree_part(int degree) const;
  /// Cohomological degree of m.
  int degree(const Monomial& m) const;
  /// Weight of m in factor i (sum of j * exponent of p_j).
  int factor_weight(const Monomial& m, std::size_t factor) const;
  FactorMonomial factor_part(const Monomial& m, std::size_t factor) const;
  Monomial make_monomial(const std::vector<FactorMonomial>& parts) const;

  /// Multiplies the degree-4j component by f(j).
  template <class F>
  PClass graded_scale(F&& f) const {
    PClass out(shape_);
    for (const auto& [m, c] : terms_) out.add_term(m, c * f(degree(m) / 4));
    return out;
  }

  PClass& operator+=(const PClass& o);
  PClass& operator-=(const PClass& o);

  friend PClass operator+(PClass a, const PClass& b) { return a += b; }
  friend PClass operator-(PClass a, const PClass& b) { return a -= b; }
  friend PClass operator*(const PClass& a, const PClass& b);
  friend PClass operator*(const PClass& a, const Rational& s);
  friend PClass operator*(const Rational& s, const PClass& a) { return a * s; }
  friend bool operator==(const PClass& a, const PClass& b) { return a.shape_ == b.shape_ && a.terms_ == b.terms_; }

  /// "16 + 4/3*p1 + ..."; variables of factor i > 1 are written p1_2 etc.
  std::string str() const;

 private:
  bool fits(const Monomial& m) const;

  FactorShape shape_;
  std::map<Monomial, Rational> terms_;
};

/// Same as a * b; throws ShapeMismatchError for different shapes.
PClass pclass_mul(const PClass& a, const PClass& b);

/// Inverse of a class with nonzero constant term (the rest is nilpotent).
PClass inverse(const PClass& a);

template <>
struct CoeffTraits<PClass> {
  static bool is_zero(const PClass& c) { return c.is_zero(); }
  static PClass inverse(const PClass& c) { return twistsig::inverse(c); }
};

/// Power sums s_1 .. s_top of the squared Chern roots of factor i, written in
/// that factor's Pontryagin classes (Newton's identities). Index 0 is unused.
std::vector<PClass> pontryagin_power_sums(const FactorShape& shape, std::size_t factor);

/// prod_i A-hat(T N_i), from x/2 / sinh(x/2).
PClass ahat_class(const FactorShape& shape);
/// prod_i L-hat(T N_i), from x / tanh(x/2); degree 0 of a dim-d factor is 2^{d/2}.
PClass lhat_class(const FactorShape& shape);

/// Virtual bundle seen through its Chern character; the rank is the
/// degree-0 coefficient of ch.
class BundleChar {
 public:
  explicit BundleChar(PClass ch);

  static BundleChar trivial(const FactorShape& shape, long rank);

  const PClass& ch() const { return ch_; }
  const FactorShape& shape() const { return ch_.shape(); }
  Rational rank() const { return ch_.constant_term(); }

  friend BundleChar operator+(const BundleChar& a, const BundleChar& b);
  friend BundleChar operator-(const BundleChar& a, const BundleChar& b);
  /// Tensor product.
  friend BundleChar operator*(const BundleChar& a, const BundleChar& b);
  friend BundleChar operator*(long n, const BundleChar& a);
  friend bool operator==(const BundleChar& a, const BundleChar& b) { return a.ch_ == b.ch_; }

 private:
  PClass ch_;
};

/// Complexification of a real bundle of even rank whose Pontryagin classes
/// are the variables of factor i.
BundleChar real_bundle_char(const FactorShape& shape, std::size_t factor, int rank);

/// ch(T_C M) = sum_i ch(T_C N_i).
BundleChar tangent_char(const FactorShape& shape);

/// psi^k: scales the degree-4j component by k^{2j}.
BundleChar adams_operation(int k, const BundleChar& v);

enum class PowerKind { Exterior, Symmetric };

/// Lambda^n v or S^n v through the Newton recursion on Adams operations.
BundleChar power_operation(PowerKind kind, int n, const BundleChar& v);
/// Lambda^0 v .. Lambda^n v (or S^i v) in one pass.
std::vector<BundleChar> power_operations(PowerKind kind, int n, const BundleChar& v);

enum class CombineOp { Add, Subtract, Tensor };

BundleChar bundle_combine(CombineOp op, const BundleChar& a, const BundleChar& b);
/// n copies of a (n may be negative).
BundleChar bundle_scale(const BundleChar& a, long n);

/// Pairs the top-degree part of c with per-factor Pontryagin-number tables:
/// only monomials of exactly top weight in every factor contribute.
Rational integrate_top(const PClass& c, const std::vector<PontryaginTable>& tables);

}  // namespace twistsig
