#pragma once

// Test-only reference computations. Nothing here calls into the series or
// class machinery it is used to check.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "twistsig/charring.hpp"
#include "twistsig/rational.hpp"

namespace oracle {

using twistsig::Rational;

/// B_n from sum_{j=0}^{n} C(n+1, j) B_j = 0 with B_0 = 1.
inline std::vector<Rational> bernoulli_table(int n) {
  std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
  b[0] = Rational(1);
  for (int m = 1; m <= n; ++m) {
    Rational s(0);
    for (int j = 0; j < m; ++j) s += twistsig::binomial(Rational(m + 1), j) * b[j];
    b[m] = -s / Rational(m + 1);
  }
  return b;
}

/// Coefficients of prod_{n>=1} (1 - q^n)^power, dense through q^{len-1}.
inline std::vector<std::int64_t> eta_power(int power, int len) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(len), 0);
  c[0] = 1;
  for (int n = 1; n < len; ++n) {
    for (int rep = 0; rep < power; ++rep) {
      for (int k = len - 1; k >= n; --k) c[k] -= c[k - n];
    }
  }
  return c;
}

/// Dense convolution of coefficient vectors, truncated to `len`.
inline std::vector<Rational> convolve(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t len) {
  std::vector<Rational> out(len);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// Polynomial in formal Chern roots x_1..x_r, truncated above total degree
/// `max_deg` in x (cohomological degree 2 * max_deg).
class RootPoly {
 public:
  using Key = std::vector<int>;

  RootPoly(int roots, int max_deg) : roots_(roots), max_deg_(max_deg) {}

  static RootPoly constant(int roots, int max_deg, const Rational& c) {
    RootPoly p(roots, max_deg);
    p.add(Key(static_cast<std::size_t>(roots), 0), c);
    return p;
  }

  /// exp(sign * scale * x_i).
  static RootPoly exp_root(int roots, int max_deg, int i, int sign, int scale = 1) {
    RootPoly p(roots, max_deg);
    Rational fact(1);
    Rational mult(sign * scale);
    for (int k = 0; k <= max_deg; ++k) {
      if (k > 0) fact *= Rational(k);
      Key key(static_cast<std::size_t>(roots), 0);
      key[static_cast<std::size_t>(i)] = k;
      p.add(key, twistsig::pow(mult, k) / fact);
    }
    return p;
  }

  /// sum_k c_k x_i^{2k} for a series in y = x_i^2.
  static RootPoly even_series(int roots, int max_deg, int i, const std::vector<Rational>& c) {
    RootPoly p(roots, max_deg);
    for (std::size_t k = 0; k < c.size(); ++k) {
      Key key(static_cast<std::size_t>(roots), 0);
      key[static_cast<std::size_t>(i)] = static_cast<int>(2 * k);
      p.add(key, c[k]);
    }
    return p;
  }

  void add(const Key& k, const Rational& c) {
    int deg = 0;
    for (int e : k) deg += e;
    if (deg > max_deg_ || c.is_zero()) return;
    auto& slot = terms_[k];
    slot += c;
    if (slot.is_zero()) terms_.erase(k);
  }

  RootPoly operator+(const RootPoly& o) const {
    RootPoly out = *this;
    for (const auto& [k, c] : o.terms_) out.add(k, c);
    return out;
  }
  RootPoly operator-(const RootPoly& o) const { return *this + o * Rational(-1); }
  RootPoly operator*(const Rational& s) const {
    RootPoly out(roots_, max_deg_);
    for (const auto& [k, c] : terms_) out.add(k, c * s);
    return out;
  }
  RootPoly operator*(const RootPoly& o) const {
    RootPoly out(roots_, max_deg_);
    for (const auto& [ka, ca] : terms_) {
      for (const auto& [kb, cb] : o.terms_) {
        Key k(ka.size());
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
        out.add(k, ca * cb);
      }
    }
    return out;
  }
  bool operator==(const RootPoly& o) const { return terms_ == o.terms_; }

  int roots() const { return roots_; }
  int max_deg() const { return max_deg_; }
  const std::map<Key, Rational>& terms() const { return terms_; }

 private:
  int roots_;
  int max_deg_;
  std::map<Key, Rational> terms_;
};

/// Substitutes p_j -> e_j(x_1^2, .., x_r^2) into a class on a single-factor
/// shape.
inline RootPoly substitute(const twistsig::PClass& c, int roots, int max_deg) {
  const int top = c.shape().top(0);
  // e_j of squared roots, j = 0..top
  std::vector<RootPoly> e(static_cast<std::size_t>(top) + 1, RootPoly(roots, max_deg));
  e[0] = RootPoly::constant(roots, max_deg, Rational(1));
  for (int i = 0; i < roots; ++i) {
    RootPoly sq(roots, max_deg);
    RootPoly::Key k(static_cast<std::size_t>(roots), 0);
    k[static_cast<std::size_t>(i)] = 2;
    sq.add(k, Rational(1));
    for (int j = top; j >= 1; --j) e[j] = e[j] + e[j - 1] * sq;
  }
  RootPoly out(roots, max_deg);
  for (const auto& [m, coeff] : c.terms()) {
    RootPoly term = RootPoly::constant(roots, max_deg, coeff);
    const auto part = c.factor_part(m, 0);
    for (std::size_t j = 0; j < part.size(); ++j) {
      for (int rep = 0; rep < part[j]; ++rep) term = term * e[j + 1];
    }
    out = out + term;
  }
  return out;
}

/// Elementary symmetric (or complete homogeneous) polynomials of the given
/// variables, indices 0..n.
inline std::vector<RootPoly> elementary(const std::vector<RootPoly>& z, int n, int roots, int max_deg) {
  std::vector<RootPoly> e(static_cast<std::size_t>(n) + 1, RootPoly(roots, max_deg));
  e[0] = RootPoly::constant(roots, max_deg, Rational(1));
  for (const auto& v : z) {
    for (int j = n; j >= 1; --j) e[j] = e[j] + e[j - 1] * v;
  }
  return e;
}

inline std::vector<RootPoly> complete(const std::vector<RootPoly>& z, int n, int roots, int max_deg) {
  std::vector<RootPoly> h(static_cast<std::size_t>(n) + 1, RootPoly(roots, max_deg));
  h[0] = RootPoly::constant(roots, max_deg, Rational(1));
  for (const auto& v : z) {
    // multiply by 1/(1 - v t): h_j += v h_{j-1}, ascending
    for (int j = 1; j <= n; ++j) h[j] = h[j] + h[j - 1] * v;
  }
  return h;
}

// e^{x_i} and e^{-x_i} for every root: the weights of the complexified bundle.
inline std::vector<RootPoly> weights(int roots, int max_deg, int scale = 1) {
  std::vector<RootPoly> w;
  for (int i = 0; i < roots; ++i) {
    w.push_back(RootPoly::exp_root(roots, max_deg, i, 1, scale));
    w.push_back(RootPoly::exp_root(roots, max_deg, i, -1, scale));
  }
  return w;
}

inline RootPoly sum(const std::vector<RootPoly>& v, int roots, int max_deg) {
  RootPoly s(roots, max_deg);
  for (const auto& p : v) s = s + p;
  return s;
}

inline Rational random_rational(std::mt19937_64& rng, int num_bound, int den_bound) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound);
  std::uniform_int_distribution<int> den(1, den_bound);
  return Rational(num(rng), den(rng));
}

}  // namespace oracle
