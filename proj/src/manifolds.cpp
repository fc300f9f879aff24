#include "twistsig/manifolds.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "twistsig/errors.hpp"

namespace twistsig {

int ManifoldSpec::dim() const {
  int d = 0;
  for (const auto& f : factors) d += f.dim;
  return d;
}

FactorShape ManifoldSpec::shape() const {
  std::vector<int> dims;
  for (const auto& f : factors) dims.push_back(f.dim);
  return FactorShape(std::move(dims));
}

std::vector<PontryaginTable> ManifoldSpec::tables() const {
  std::vector<PontryaginTable> out;
  for (const auto& f : factors) out.push_back(f.numbers);
  return out;
}

void validate(const ManifoldSpec& m) {
  if (m.factors.empty()) throw InvalidArgument("manifold '" + m.name + "' has no factors");
  (void)m.shape();  // dimension and slot checks
  for (std::size_t i = 0; i < m.factors.size(); ++i) {
    const FactorSpec& f = m.factors[i];
    const std::string where = "manifold '" + m.name + "' factor " + std::to_string(i + 1);
    const auto wanted = top_monomials(f.dim);
    const std::set<FactorMonomial> wanted_set(wanted.begin(), wanted.end());
    for (const auto& mono : wanted) {
      if (!f.numbers.contains(mono)) throw InvalidArgument(where + " is missing the number " + monomial_key(mono));
    }
    for (const auto& [mono, value] : f.numbers) {
      if (!wanted_set.contains(mono)) {
        throw InvalidArgument(where + " has " + monomial_key(mono) + ", which is not a top-degree monomial");
      }
      if (!value.is_integer()) {
        throw InvalidArgument(where + ": " + monomial_key(mono) + " = " + value.str() + " is not an integer");
      }
      if (f.p1_vanishes && mono[0] > 0 && !value.is_zero()) {
        throw InvalidArgument(where + " claims p1 = 0 but " + monomial_key(mono) + " = " + value.str());
      }
    }
    if (m.string_flag && !f.p1_vanishes) {
      throw InvalidArgument(where + " does not have p1 = 0, so the manifold cannot be string");
    }
  }
}

namespace {

FactorSpec dim8(long p1sq, long p2, bool p1_vanishes) {
  return FactorSpec{8, {{{2, 0}, Rational(p1sq)}, {{0, 1}, Rational(p2)}}, p1_vanishes};
}

ManifoldSpec single(std::string name, FactorSpec f) {
  const bool s = f.p1_vanishes;
  return ManifoldSpec{std::move(name), {std::move(f)}, s};
}

}  // namespace

ManifoldSpec catalog_manifold(std::string_view name) {
  if (name == "B8") {
    const auto [p1sq, p2] = derive_b8_table();
    return single("B8", dim8(p1sq.to_int64(), p2.to_int64(), false));
  }
  if (name == "HP2") return single("HP2", dim8(4, 7, false));
  if (name == "M08") return single("M08", dim8(0, 1440, true));
  // kM08: Pontryagin numbers add under connected sum
  if (name.size() > 3 && name.substr(name.size() - 3) == "M08") {
    const std::string_view digits = name.substr(0, name.size() - 3);
    long k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && k >= 1) {
      return single(std::string(name), dim8(0, 1440 * k, true));
    }
  }
  throw InvalidArgument("unknown catalog manifold '" + std::string(name) + "' (known: B8, HP2, M08, kM08)");
}

std::vector<std::string> catalog_names() { return {"B8", "HP2", "M08"}; }

std::pair<Rational, Rational> derive_b8_table() {
  // Sig = (-p1^2 + 7 p2)/45 = 0 and A-hat = (7 p1^2 - 4 p2)/5760 = 1, by Cramer's rule.
  const Rational a11(-1), a12(7), b1(0);
  const Rational a21(7), a22(-4), b2(5760);
  const Rational det = a11 * a22 - a12 * a21;
  return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det};
}

ManifoldSpec product_manifold(const std::vector<ManifoldSpec>& specs) {
  if (specs.empty()) throw InvalidArgument("product of an empty list of manifolds");
  if (specs.size() == 1) return specs.front();
  ManifoldSpec out;
  out.string_flag = true;
  for (const auto& s : specs) {
    if (!out.name.empty()) out.name += "x";
    out.name += s.name;
    for (const auto& f : s.factors) {
      out.factors.push_back(f);
      out.string_flag = out.string_flag && f.p1_vanishes;
    }
  }
  (void)out.shape();
  return out;
}

Rational oracle_8d(Oracle8d which, const Rational& p1sq, const Rational& p2) {
  switch (which) {
    case Oracle8d::Sig: return (Rational(7) * p2 - p1sq) / Rational(45);
    case Oracle8d::SigT: return (Rational(112) * p1sq - Rational(64) * p2) / Rational(45);
    case Oracle8d::SigL2T: return (Rational(692) * p1sq + Rational(196) * p2) / Rational(45);
    case Oracle8d::Ahat: return (Rational(7) * p1sq - Rational(4) * p2) / Rational(5760);
  }
  throw InvalidArgument("unknown 8-dimensional oracle");
}

Rational oracle_8d(Oracle8d which, const FactorSpec& factor) {
  if (factor.dim != 8) throw InvalidArgument("closed forms need an 8-dimensional factor, got " + std::to_string(factor.dim));
  return oracle_8d(which, factor.numbers.at({2, 0}), factor.numbers.at({0, 1}));
}

Rational product_sig_lambda2(const std::vector<SignatureTriple>& factors) {
  if (factors.empty()) throw InvalidArgument("product_sig_lambda2 needs at least one factor");
  const std::size_t n = factors.size();
  Rational total(0);
  for (std::size_t i = 0; i < n; ++i) {
    Rational t = factors[i].sig_l2t;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) t *= factors[j].sig;
    }
    total += t;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational u = factors[i].sig_t * factors[j].sig_t;
      for (std::size_t p = 0; p < n; ++p) {
        if (p != i && p != j) u *= factors[p].sig;
      }
      total += u;
    }
  }
  return total;
}

AlmostParallelizable almost_parallelizable(int k, const Rational& order) {
  if (k < 1) throw InvalidArgument("almost-parallelizable M_0^{4k} needs k >= 1");
  const Rational scale = pow(Rational(2), 2 * k + 1) * (pow(Rational(2), 2 * k - 1) - Rational(1));
  const Rational ratio = bernoulli_number(2 * k) / Rational(4 * k);
  const Rational a(k % 2 == 0 ? 1 : 2);
  AlmostParallelizable out;
  out.sig = a * scale * abs(Rational(ratio.numerator()));
  out.ahat = -out.sig / scale;
  out.witten = eisenstein_series(k, order);
  out.witten.expansion = out.witten.expansion.scaled(out.ahat);
  return out;
}

nlohmann::json to_json(const ManifoldSpec& m) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : m.factors) {
    nlohmann::json numbers = nlohmann::json::object();
    for (const auto& [mono, value] : f.numbers) numbers[monomial_key(mono)] = value.str();
    factors.push_back({{"dim", f.dim}, {"p1_vanishes", f.p1_vanishes}, {"numbers", numbers}});
  }
  return {{"name", m.name}, {"string", m.string_flag}, {"factors", factors}};
}

ManifoldSpec manifold_from_json(const nlohmann::json& doc) {
  try {
    ManifoldSpec m;
    m.name = doc.at("name").get<std::string>();
    m.string_flag = doc.at("string").get<bool>();
    for (const auto& f : doc.at("factors")) {
      FactorSpec spec;
      spec.dim = f.at("dim").get<int>();
      if (spec.dim < 4 || spec.dim % 4 != 0) {
        throw InvalidArgument("factor dimension must be a positive multiple of 4, got " + std::to_string(spec.dim));
      }
      spec.p1_vanishes = f.at("p1_vanishes").get<bool>();
      for (const auto& [key, value] : f.at("numbers").items()) {
        const Rational v = value.is_string() ? Rational::parse(value.get<std::string>()) : Rational(value.get<long>());
        spec.numbers[parse_monomial_key(key, spec.dim / 4)] = v;
      }
      m.factors.push_back(std::move(spec));
    }
    validate(m);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed manifold document: ") + e.what());
  }
}

ManifoldSpec load_manifold(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open manifold file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
  return manifold_from_json(doc);
}

void save_manifold(const ManifoldSpec& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write manifold file '" + path + "'");
  out << to_json(m).dump(2) << '\n';
}

ManifoldSpec resolve_manifold(std::string_view ref) {
  const auto colon = ref.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("manifold reference '" + std::string(ref) + "' must be catalog:NAME, product:A,B,.. or file:PATH");
  }
  const std::string_view kind = ref.substr(0, colon);
  const std::string_view rest = ref.substr(colon + 1);
  if (kind == "catalog") return catalog_manifold(rest);
  if (kind == "file") return load_manifold(std::string(rest));
  if (kind == "product") {
    std::vector<ManifoldSpec> parts;
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const auto end = comma == std::string_view::npos ? rest.size() : comma;
      parts.push_back(catalog_manifold(rest.substr(start, end - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return product_manifold(parts);
  }
  throw InvalidArgument("unknown manifold reference kind '" + std::string(kind) + "'");
}

}  // namespace twistsig
