#include "twistsig/rational.hpp"

#include <limits>
#include <ostream>

#include "twistsig/errors.hpp"

namespace twistsig {

namespace {

bool valid_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_integer_text(text, true)) {
      throw InvalidArgument("not a rational number: '" + std::string(text) + "'");
    }
    return Rational(parse_integer(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!valid_integer_text(num, true) || !valid_integer_text(den, false)) {
    throw InvalidArgument("not a rational number: '" + std::string(text) + "'");
  }
  const mpz_class d = parse_integer(den);
  if (d == 0) throw InvalidArgument("rational with zero denominator: '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

std::int64_t Rational::to_int64() const {
  if (!is_integer()) throw InvalidArgument("expected an integer, got " + str());
  const mpz_class& n = v_.get_num();
  if (!n.fits_slong_p()) throw InvalidArgument("integer out of range: " + str());
  return n.get_si();
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw NotInvertibleError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base.is_zero()) throw NotInvertibleError("negative power of zero");
    return pow(Rational(1) / base, -exponent);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational binomial(const Rational& top, long k) {
  if (k < 0) return Rational(0);
  Rational out(1);
  for (long i = 0; i < k; ++i) {
    out *= (top - Rational(i));
    out /= Rational(i + 1);
  }
  return out;
}

mpz_class residue(const Rational& integer_value, const mpz_class& m) {
  if (!integer_value.is_integer()) {
    throw InvalidArgument("residue of a non-integer: " + integer_value.str());
  }
  if (m <= 0) throw InvalidArgument("modulus must be positive");
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), integer_value.numerator().get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace twistsig
