#include "twistsig/charring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "twistsig/errors.hpp"
#include "twistsig/qseries.hpp"

namespace twistsig {

FactorShape::FactorShape(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidArgument("a factor shape needs at least one factor");
  for (int d : dims_) {
    if (d < 4 || d % 4 != 0) {
      throw InvalidArgument("factor dimension must be a positive multiple of 4, got " + std::to_string(d));
    }
    offsets_.push_back(slots_);
    slots_ += static_cast<std::size_t>(d / 4);
  }
  if (slots_ > kMaxSlots) {
    throw InvalidArgument("shape " + twistsig::to_string(*this) + " needs " + std::to_string(slots_) +
                          " Pontryagin variables; at most " + std::to_string(kMaxSlots) + " are supported");
  }
}

int FactorShape::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

std::string to_string(const FactorShape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.factors(); ++i) {
    if (i) out += ",";
    out += std::to_string(shape.dims()[i]);
  }
  return out + "]";
}

std::string monomial_key(const FactorMonomial& m) {
  std::string out;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += "p" + std::to_string(j + 1);
    if (m[j] > 1) out += "^" + std::to_string(m[j]);
  }
  return out.empty() ? "1" : out;
}

FactorMonomial parse_monomial_key(std::string_view key, int top) {
  FactorMonomial m(static_cast<std::size_t>(top), 0);
  if (key == "1") return m;
  const auto bad = [&](const std::string& why) {
    return InvalidArgument("bad monomial key '" + std::string(key) + "': " + why);
  };
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const std::size_t star = std::min(key.find('*', pos), key.size());
    const std::string_view tok = key.substr(pos, star - pos);
    if (tok.size() < 2 || tok[0] != 'p') throw bad("expected p<j> or p<j>^<e>");
    const std::size_t caret = tok.find('^');
    const std::string_view idx = tok.substr(1, caret == std::string_view::npos ? tok.size() - 1 : caret - 1);
    const std::string_view ex = caret == std::string_view::npos ? std::string_view("1") : tok.substr(caret + 1);
    const auto digits = [](std::string_view s) {
      return !s.empty() && s.size() < 4 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!digits(idx) || !digits(ex)) throw bad("expected p<j> or p<j>^<e>");
    const int j = std::stoi(std::string(idx));
    const int e = std::stoi(std::string(ex));
    if (j < 1 || j > top) throw bad("p" + std::to_string(j) + " does not exist in this factor");
    if (e < 1) throw bad("exponent must be positive");
    m[static_cast<std::size_t>(j - 1)] += e;
    pos = star + 1;
  }
  return m;
}

std::vector<FactorMonomial> top_monomials(int dim) {
  if (dim < 4 || dim % 4 != 0) throw InvalidArgument("dimension must be a positive multiple of 4");
  const int top = dim / 4;
  std::vector<FactorMonomial> out;
  FactorMonomial cur(static_cast<std::size_t>(top), 0);
  // Partitions of top by largest part first.
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int j = std::min(remaining, max_part); j >= 1; --j) {
      ++cur[static_cast<std::size_t>(j - 1)];
      rec(remaining - j, j);
      --cur[static_cast<std::size_t>(j - 1)];
    }
  };
  rec(top, top);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// PClass

PClass::PClass(FactorShape shape) : shape_(std::move(shape)) {}

PClass PClass::constant(const FactorShape& shape, const Rational& c) {
  PClass out(shape);
  out.add_term(Monomial{}, c);
  return out;
}

PClass PClass::pontryagin(const FactorShape& shape, std::size_t factor, int j) {
  if (factor >= shape.factors()) throw InvalidArgument("factor index out of range");
  if (j < 1 || j > shape.top(factor)) {
    throw InvalidArgument("p" + std::to_string(j) + " does not exist on a factor of dimension " +
                          std::to_string(shape.dims()[factor]));
  }
  Monomial m;
  m.e[shape.offset(factor) + static_cast<std::size_t>(j - 1)] = 1;
  PClass out(shape);
  out.add_term(m, Rational(1));
  return out;
}

Rational PClass::constant_term() const {
  const auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int PClass::factor_weight(const Monomial& m, std::size_t factor) const {
  int w = 0;
  const std::size_t off = shape_.offset(factor);
  for (int j = 1; j <= shape_.top(factor); ++j) w += j * m.e[off + static_cast<std::size_t>(j - 1)];
  return w;
}

int PClass::degree(const Monomial& m) const {
  int w = 0;
  for (std::size_t i = 0; i < shape_.factors(); ++i) w += factor_weight(m, i);
  return 4 * w;
}

FactorMonomial PClass::factor_part(const Monomial& m, std::size_t factor) const {
  const std::size_t off = shape_.offset(factor);
  FactorMonomial out(static_cast<std::size_t>(shape_.top(factor)));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = m.e[off + j];
  return out;
}

Monomial PClass::make_monomial(const std::vector<FactorMonomial>& parts) const {
  if (parts.size() != shape_.factors()) throw ShapeMismatchError("monomial has the wrong number of factors");
  Monomial m;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].size() != static_cast<std::size_t>(shape_.top(i))) {
      throw ShapeMismatchError("monomial part has the wrong number of variables");
    }
    for (std::size_t j = 0; j < parts[i].size(); ++j) {
      if (parts[i][j] < 0 || parts[i][j] > 255) throw InvalidArgument("monomial exponent out of range");
      m.e[shape_.offset(i) + j] = static_cast<std::uint8_t>(parts[i][j]);
    }
  }
  return m;
}

bool PClass::fits(const Monomial& m) const {
  for (std::size_t i = 0; i < shape_.factors(); ++i) {
    if (factor_weight(m, i) > shape_.top(i)) return false;
  }
  return true;
}

void PClass::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero() || !fits(m)) return;
  const auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PClass PClass::degree_part(int deg) const {
  PClass out(shape_);
  for (const auto& [m, c] : terms_) {
    if (degree(m) == deg) out.terms_.emplace(m, c);
  }
  return out;
}

PClass& PClass::operator+=(const PClass& o) {
  if (!(shape_ == o.shape_)) throw ShapeMismatchError("adding classes of shapes " + to_string(shape_) + " and " + to_string(o.shape_));
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PClass& PClass::operator-=(const PClass& o) {
  if (!(shape_ == o.shape_)) throw ShapeMismatchError("subtracting classes of shapes " + to_string(shape_) + " and " + to_string(o.shape_));
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PClass operator*(const PClass& a, const PClass& b) {
  if (!(a.shape_ == b.shape_)) {
    throw ShapeMismatchError("multiplying classes of shapes " + to_string(a.shape_) + " and " + to_string(b.shape_));
  }
  PClass out(a.shape_);
  const std::size_t slots = a.shape_.slots();
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m;
      for (std::size_t s = 0; s < slots; ++s) m.e[s] = static_cast<std::uint8_t>(ma.e[s] + mb.e[s]);
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

PClass operator*(const PClass& a, const Rational& s) {
  PClass out(a.shape_);
  if (s.is_zero()) return out;
  for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, c * s);
  return out;
}

std::string PClass::str() const {
  if (terms_.empty()) return "0";
  // Increasing degree, then monomial order.
  std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const auto& x, const auto& y) { return degree(x.first) < degree(y.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    std::string vars;
    for (std::size_t i = 0; i < shape_.factors(); ++i) {
      const FactorMonomial part = factor_part(m, i);
      for (std::size_t j = 0; j < part.size(); ++j) {
        if (part[j] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += "p" + std::to_string(j + 1);
        if (shape_.factors() > 1) vars += "_" + std::to_string(i + 1);
        if (part[j] > 1) vars += "^" + std::to_string(part[j]);
      }
    }
    const Rational mag = abs(c);
    os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
    first = false;
    if (vars.empty()) {
      os << mag.str();
    } else if (mag == Rational(1)) {
      os << vars;
    } else {
      os << mag.str() << "*" << vars;
    }
  }
  return os.str();
}

PClass pclass_mul(const PClass& a, const PClass& b) { return a * b; }

PClass inverse(const PClass& a) {
  const Rational c0 = a.constant_term();
  if (c0.is_zero()) throw NotInvertibleError("class with zero constant term is not invertible");
  // 1/(c0 + N) = (1/c0) sum_k (-N/c0)^k, N nilpotent.
  const PClass n = (a - PClass::constant(a.shape(), c0)) * (Rational(-1) / c0);
  PClass sum = PClass::constant(a.shape(), Rational(1));
  PClass power = sum;
  while (true) {
    power = power * n;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * (Rational(1) / c0);
}

// ---------------------------------------------------------------------------
// Multiplicative sequences

std::vector<PClass> pontryagin_power_sums(const FactorShape& shape, std::size_t factor) {
  const int top = shape.top(factor);
  std::vector<PClass> s(static_cast<std::size_t>(top) + 1, PClass(shape));
  // s_k = sum_{i=1}^{k-1} (-1)^{i-1} p_i s_{k-i} + (-1)^{k-1} k p_k
  for (int k = 1; k <= top; ++k) {
    PClass acc(shape);
    for (int i = 1; i < k; ++i) {
      const PClass t = PClass::pontryagin(shape, factor, i) * s[static_cast<std::size_t>(k - i)];
      acc += (i % 2 == 1) ? t : t * Rational(-1);
    }
    const PClass pk = PClass::pontryagin(shape, factor, k) * Rational(k);
    acc += (k % 2 == 1) ? pk : pk * Rational(-1);
    s[static_cast<std::size_t>(k)] = acc;
  }
  return s;
}

namespace {

// Coefficients l_1..l_top of log Q(y) for a series Q with Q(0) = 1.
std::vector<Rational> log_coefficients(const QSeries& q, int top) {
  const Rational order(top + 1);
  const QSeries u = series_add(q.truncated(order), constant_series(Rational(1), order, 1), Rational(-1));
  QSeries log = zero_series(order, 1);
  QSeries power = constant_series(Rational(1), order, 1);
  for (int n = 1; n <= top; ++n) {
    power = power * u;
    log = series_add(log, power, Rational(n % 2 == 1 ? 1 : -1, n));
  }
  std::vector<Rational> out(static_cast<std::size_t>(top) + 1);
  for (int k = 1; k <= top; ++k) out[static_cast<std::size_t>(k)] = coefficient_at(log, Rational(k));
  return out;
}

// prod_i c^{d_i/2} prod_roots Q(x^2), Q(0) = 1, in the Pontryagin classes.
PClass multiplicative_class(const FactorShape& shape, const QSeries& q, const Rational& root_constant) {
  PClass total = PClass::constant(shape, Rational(1));
  for (std::size_t i = 0; i < shape.factors(); ++i) {
    const int top = shape.top(i);
    const std::vector<Rational> l = log_coefficients(q, top);
    const std::vector<PClass> s = pontryagin_power_sums(shape, i);
    PClass x(shape);
    for (int k = 1; k <= top; ++k) x += s[static_cast<std::size_t>(k)] * l[static_cast<std::size_t>(k)];
    // exp(x) with x nilpotent of order > top.
    PClass e = PClass::constant(shape, Rational(1));
    PClass power = e;
    for (int n = 1; n <= top; ++n) {
      power = power * x * Rational(1, n);
      e += power;
    }
    total = total * e * pow(root_constant, shape.dims()[i] / 2);
  }
  return total;
}

// sinh(t)/t and cosh(t) at t = x/2, as series in y = x^2.
QSeries sinhc_half(int top) {
  std::map<QSeries::Index, Rational> terms;
  Rational fact(1);  // (2k+1)!
  for (int k = 0; k <= top; ++k) {
    if (k > 0) fact *= Rational((2 * k) * (2 * k + 1));
    terms[k] = Rational(1) / (pow(Rational(4), k) * fact);
  }
  return QSeries::from_terms(1, Rational(top + 1), std::move(terms));
}

QSeries cosh_half(int top) {
  std::map<QSeries::Index, Rational> terms;
  Rational fact(1);  // (2k)!
  for (int k = 0; k <= top; ++k) {
    if (k > 0) fact *= Rational((2 * k - 1) * (2 * k));
    terms[k] = Rational(1) / (pow(Rational(4), k) * fact);
  }
  return QSeries::from_terms(1, Rational(top + 1), std::move(terms));
}

int max_top(const FactorShape& shape) {
  int t = 0;
  for (std::size_t i = 0; i < shape.factors(); ++i) t = std::max(t, shape.top(i));
  return t;
}

}  // namespace

PClass ahat_class(const FactorShape& shape) {
  const int top = max_top(shape);
  return multiplicative_class(shape, series_inv(sinhc_half(top)), Rational(1));
}

PClass lhat_class(const FactorShape& shape) {
  const int top = max_top(shape);
  // x / tanh(x/2) = 2 cosh(x/2) / (sinh(x/2) / (x/2))
  return multiplicative_class(shape, cosh_half(top) * series_inv(sinhc_half(top)), Rational(2));
}

// ---------------------------------------------------------------------------
// Bundles

BundleChar::BundleChar(PClass ch) : ch_(std::move(ch)) {
  if (!ch_.constant_term().is_integer()) {
    throw InvalidArgument("virtual bundle rank must be an integer, got " + ch_.constant_term().str());
  }
}

BundleChar BundleChar::trivial(const FactorShape& shape, long rank) {
  return BundleChar(PClass::constant(shape, Rational(rank)));
}

BundleChar operator+(const BundleChar& a, const BundleChar& b) { return BundleChar(a.ch_ + b.ch_); }
BundleChar operator-(const BundleChar& a, const BundleChar& b) { return BundleChar(a.ch_ - b.ch_); }
BundleChar operator*(const BundleChar& a, const BundleChar& b) { return BundleChar(a.ch_ * b.ch_); }
BundleChar operator*(long n, const BundleChar& a) { return BundleChar(a.ch_ * Rational(n)); }

BundleChar real_bundle_char(const FactorShape& shape, std::size_t factor, int rank) {
  if (rank < 0 || rank % 2 != 0) throw InvalidArgument("real bundle rank must be even and nonnegative");
  // sum over roots of e^{x} + e^{-x} = rank + sum_k 2 s_k / (2k)!
  const std::vector<PClass> s = pontryagin_power_sums(shape, factor);
  PClass ch = PClass::constant(shape, Rational(rank));
  Rational fact(1);
  for (int k = 1; k <= shape.top(factor); ++k) {
    fact *= Rational((2 * k - 1) * (2 * k));
    ch += s[static_cast<std::size_t>(k)] * (Rational(2) / fact);
  }
  return BundleChar(std::move(ch));
}

BundleChar tangent_char(const FactorShape& shape) {
  PClass ch(shape);
  for (std::size_t i = 0; i < shape.factors(); ++i) ch += real_bundle_char(shape, i, shape.dims()[i]).ch();
  return BundleChar(std::move(ch));
}

BundleChar adams_operation(int k, const BundleChar& v) {
  if (k < 1) throw InvalidArgument("Adams operation index must be positive");
  return BundleChar(v.ch().graded_scale([k](int j) { return pow(Rational(k), 2 * j); }));
}

std::vector<BundleChar> power_operations(PowerKind kind, int n, const BundleChar& v) {
  if (n < 0) throw InvalidArgument("power operation degree must be nonnegative");
  std::vector<PClass> psi;  // psi[i] = ch(psi^i v), i >= 1
  psi.emplace_back(v.shape());
  for (int i = 1; i <= n; ++i) psi.push_back(adams_operation(i, v).ch());
  std::vector<PClass> out;
  out.push_back(PClass::constant(v.shape(), Rational(1)));
  // m ch(Lambda^m) = sum_i (-1)^{i-1} ch(Lambda^{m-i}) ch(psi^i)
  // m ch(S^m)      = sum_i           ch(S^{m-i})      ch(psi^i)
  for (int m = 1; m <= n; ++m) {
    PClass acc(v.shape());
    for (int i = 1; i <= m; ++i) {
      const PClass t = out[static_cast<std::size_t>(m - i)] * psi[static_cast<std::size_t>(i)];
      const bool negate = kind == PowerKind::Exterior && i % 2 == 0;
      acc += negate ? t * Rational(-1) : t;
    }
    out.push_back(acc * Rational(1, m));
  }
  std::vector<BundleChar> bundles;
  const Rational r = v.rank();
  for (int m = 0; m <= n; ++m) {
    BundleChar b(std::move(out[static_cast<std::size_t>(m)]));
    const Rational expected = kind == PowerKind::Exterior ? binomial(r, m) : binomial(r + Rational(m - 1), m);
    if (b.rank() != expected) {
      throw InconsistencyError("power operation rank " + b.rank().str() + " differs from the counting formula " +
                               expected.str());
    }
    bundles.push_back(std::move(b));
  }
  return bundles;
}

BundleChar power_operation(PowerKind kind, int n, const BundleChar& v) {
  return power_operations(kind, n, v).back();
}

BundleChar bundle_combine(CombineOp op, const BundleChar& a, const BundleChar& b) {
  switch (op) {
    case CombineOp::Add: return a + b;
    case CombineOp::Subtract: return a - b;
    case CombineOp::Tensor: return a * b;
  }
  throw InvalidArgument("unknown combine operation");
}

BundleChar bundle_scale(const BundleChar& a, long n) { return n * a; }

Rational integrate_top(const PClass& c, const std::vector<PontryaginTable>& tables) {
  const FactorShape& shape = c.shape();
  if (tables.size() != shape.factors()) {
    throw ShapeMismatchError("expected " + std::to_string(shape.factors()) + " Pontryagin tables, got " +
                             std::to_string(tables.size()));
  }
  Rational total(0);
  for (const auto& [m, coeff] : c.terms()) {
    bool top = true;
    for (std::size_t i = 0; i < shape.factors() && top; ++i) top = c.factor_weight(m, i) == shape.top(i);
    if (!top) continue;
    Rational value = coeff;
    for (std::size_t i = 0; i < shape.factors(); ++i) {
      const FactorMonomial part = c.factor_part(m, i);
      const auto it = tables[i].find(part);
      if (it == tables[i].end()) {
        throw InvalidArgument("Pontryagin table of factor " + std::to_string(i + 1) + " has no entry for " +
                              monomial_key(part));
      }
      value *= it->second;
    }
    total += value;
  }
  return total;
}

}  // namespace twistsig
