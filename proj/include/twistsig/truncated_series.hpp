#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>

#include "twistsig/errors.hpp"
#include "twistsig/rational.hpp"

namespace twistsig {

// Coefficient hooks for TruncatedSeries. A coefficient ring C must provide
// copy, +=, C * C and C * Rational; the traits add zero test and unit inverse.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static bool is_zero(const Rational& c) { return c.is_zero(); }
  static Rational inverse(const Rational& c) {
    if (c.is_zero()) throw NotInvertibleError("series with zero constant term is not invertible");
    return Rational(1) / c;
  }
};

/// Truncated formal series in q with exponents on (1/lattice)Z.
///
/// The series is known exactly for every exponent strictly below order();
/// only nonzero coefficients are stored, keyed by exponent * lattice.
template <class C>
class TruncatedSeries {
 public:
  using Index = std::int64_t;
  using Traits = CoeffTraits<C>;

  TruncatedSeries(std::int64_t lattice, Rational order) : lattice_(lattice), order_(std::move(order)) {
    if (lattice_ <= 0) throw InvalidArgument("lattice denominator must be positive");
    if (order_.sign() < 0) throw InvalidArgument("truncation order must be nonnegative");
  }

  /// Builds a series from (index -> coefficient) pairs. Zero coefficients and
  /// indices at or beyond the order are dropped; negative indices are rejected.
  static TruncatedSeries from_terms(std::int64_t lattice, Rational order, std::map<Index, C> terms) {
    TruncatedSeries out(lattice, std::move(order));
    const Index lim = out.limit();
    for (auto& [k, c] : terms) {
      if (k < 0) throw InvalidArgument("negative exponent in truncated series");
      if (k >= lim || Traits::is_zero(c)) continue;
      out.terms_.emplace(k, std::move(c));
    }
    return out;
  }

  std::int64_t lattice() const { return lattice_; }
  const Rational& order() const { return order_; }
  const std::map<Index, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational exponent(Index k) const { return Rational(k, lattice_); }

  /// First index that is no longer certified: indices k < limit() are known.
  Index limit() const {
    const Rational scaled = order_ * Rational(lattice_);
    mpz_class c = scaled.floor();
    if (!scaled.is_integer()) c += 1;
    return c.get_si();
  }

  /// Lowest exponent with a nonzero coefficient, or order() for the zero series.
  Rational valuation() const { return terms_.empty() ? order_ : exponent(terms_.begin()->first); }

  /// Index of exponent e on this lattice; throws when e is off the lattice.
  Index index_of(const Rational& e) const {
    const Rational scaled = e * Rational(lattice_);
    if (!scaled.is_integer()) {
      throw InvalidArgument("exponent " + e.str() + " is not on the lattice (1/" + std::to_string(lattice_) + ")Z");
    }
    return scaled.to_int64();
  }

  /// Coefficient lookup; nullptr means a certified zero.
  const C* find(const Rational& e) const {
    if (e >= order_) {
      throw TruncationError("coefficient at q^" + e.str() + " requested but series is only known below q^" +
                            order_.str());
    }
    const auto it = terms_.find(index_of(e));
    return it == terms_.end() ? nullptr : &it->second;
  }

  TruncatedSeries promoted(std::int64_t new_lattice) const {
    if (new_lattice == lattice_) return *this;
    if (new_lattice % lattice_ != 0) {
      throw InvalidArgument("lattice " + std::to_string(new_lattice) + " is not a multiple of " +
                            std::to_string(lattice_));
    }
    const std::int64_t f = new_lattice / lattice_;
    TruncatedSeries out(new_lattice, order_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k * f, c);
    return out;
  }

  /// Forgets everything at or above new_order, which may not exceed order().
  TruncatedSeries truncated(const Rational& new_order) const {
    if (new_order > order_) {
      throw TruncationError("cannot extend a series known below q^" + order_.str() + " to q^" + new_order.str());
    }
    TruncatedSeries out(lattice_, new_order);
    const Index lim = out.limit();
    for (const auto& [k, c] : terms_) {
      if (k >= lim) break;
      out.terms_.emplace(k, c);
    }
    return out;
  }

  /// Multiplication by q^e, e >= 0. The lattice is promoted if needed.
  TruncatedSeries shifted(const Rational& e) const {
    if (e.sign() < 0) throw InvalidArgument("negative shift would create a Laurent tail");
    const std::int64_t den = e.denominator().get_si();
    const TruncatedSeries base = promoted(std::lcm(lattice_, den));
    TruncatedSeries out(base.lattice_, order_ + e);
    const Index s = base.index_of(e);
    for (const auto& [k, c] : base.terms_) out.terms_.emplace(k + s, c);
    return out;
  }

  TruncatedSeries scaled(const Rational& s) const {
    TruncatedSeries out(lattice_, order_);
    if (s.is_zero()) return out;
    for (const auto& [k, c] : terms_) {
      C v = c * s;
      if (!Traits::is_zero(v)) out.terms_.emplace(k, std::move(v));
    }
    return out;
  }

  /// this + s * other.
  TruncatedSeries plus_scaled(const TruncatedSeries& other, const Rational& s) const {
    const std::int64_t l = std::lcm(lattice_, other.lattice_);
    const TruncatedSeries a = promoted(l);
    const TruncatedSeries b = other.promoted(l);
    TruncatedSeries out(l, min(order_, other.order_));
    const Index lim = out.limit();
    std::map<Index, C> acc;
    for (const auto& [k, c] : a.terms_) {
      if (k >= lim) break;
      acc.emplace(k, c);
    }
    if (!s.is_zero()) {
      for (const auto& [k, c] : b.terms_) {
        if (k >= lim) break;
        accumulate(acc, k, c * s);
      }
    }
    for (auto& [k, c] : acc) {
      if (!Traits::is_zero(c)) out.terms_.emplace(k, std::move(c));
    }
    return out;
  }

  /// Cauchy product; the result is certified below
  /// min(order(a) + valuation(b), order(b) + valuation(a)).
  friend TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y) {
    const std::int64_t l = std::lcm(x.lattice_, y.lattice_);
    const TruncatedSeries a = x.promoted(l);
    const TruncatedSeries b = y.promoted(l);
    TruncatedSeries out(l, min(x.order_ + y.valuation(), y.order_ + x.valuation()));
    const Index lim = out.limit();
    std::map<Index, C> acc;
    for (const auto& [ka, ca] : a.terms_) {
      if (ka >= lim) break;
      for (const auto& [kb, cb] : b.terms_) {
        if (ka + kb >= lim) break;
        accumulate(acc, ka + kb, ca * cb);
      }
    }
    for (auto& [k, c] : acc) {
      if (!Traits::is_zero(c)) out.terms_.emplace(k, std::move(c));
    }
    return out;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.plus_scaled(b, Rational(1));
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.plus_scaled(b, Rational(-1));
  }

  /// Multiplicative inverse; needs an invertible constant term.
  TruncatedSeries inverse() const {
    const auto it0 = terms_.find(0);
    if (it0 == terms_.end()) {
      throw NotInvertibleError("series with zero constant term is not invertible");
    }
    const C inv0 = Traits::inverse(it0->second);
    TruncatedSeries out(lattice_, order_);
    const Index lim = limit();
    std::map<Index, C> b;
    b.emplace(0, inv0);
    for (Index n = 1; n < lim; ++n) {
      bool any = false;
      C sum = inv0 * Rational(0);
      for (const auto& [k, ak] : terms_) {
        if (k == 0) continue;
        if (k > n) break;
        const auto bj = b.find(n - k);
        if (bj == b.end()) continue;
        sum += ak * bj->second;
        any = true;
      }
      if (!any) continue;
      C bn = (inv0 * sum) * Rational(-1);
      if (!Traits::is_zero(bn)) b.emplace(n, std::move(bn));
    }
    for (auto& [k, c] : b) {
      if (!Traits::is_zero(c)) out.terms_.emplace(k, std::move(c));
    }
    return out;
  }

  /// Equality of the certified data: same order and same coefficients at the
  /// same exponents (the lattice is representation only).
  friend bool operator==(const TruncatedSeries& x, const TruncatedSeries& y) {
    if (x.order_ != y.order_) return false;
    const std::int64_t l = std::lcm(x.lattice_, y.lattice_);
    const TruncatedSeries a = x.promoted(l);
    const TruncatedSeries b = y.promoted(l);
    return a.terms_ == b.terms_;
  }

 private:
  static void accumulate(std::map<Index, C>& acc, Index k, C value) {
    const auto it = acc.find(k);
    if (it == acc.end()) {
      acc.emplace(k, std::move(value));
    } else {
      it->second += value;
    }
  }

  std::int64_t lattice_;
  Rational order_;
  std::map<Index, C> terms_;
};

}  // namespace twistsig
