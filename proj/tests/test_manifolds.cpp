#include <doctest.h>

#include <cstdio>
#include <random>

#include "oracles.hpp"
#include "twistsig/errors.hpp"
#include "twistsig/manifolds.hpp"

using namespace twistsig;

namespace {

Rational p1sq(const ManifoldSpec& m) { return m.factors.at(0).numbers.at({2, 0}); }
Rational p2(const ManifoldSpec& m) { return m.factors.at(0).numbers.at({0, 1}); }

// Ring-integration route for the four 8-dimensional numbers.
Rational integrated(Oracle8d which, const PontryaginTable& table) {
  const FactorShape s({8});
  const BundleChar t = tangent_char(s);
  switch (which) {
    case Oracle8d::Sig: return integrate_top(lhat_class(s), {table});
    case Oracle8d::SigT: return integrate_top(lhat_class(s) * t.ch(), {table});
    case Oracle8d::SigL2T:
      return integrate_top(lhat_class(s) * power_operation(PowerKind::Exterior, 2, t).ch(), {table});
    case Oracle8d::Ahat: return integrate_top(ahat_class(s), {table});
  }
  return Rational(0);
}

}  // namespace

TEST_CASE("catalog entries") {
  const ManifoldSpec b8 = catalog_manifold("B8");
  CHECK(p1sq(b8) == Rational(896));
  CHECK(p2(b8) == Rational(128));
  CHECK_FALSE(b8.string_flag);
  const ManifoldSpec hp2 = catalog_manifold("HP2");
  CHECK(p1sq(hp2) == Rational(4));
  CHECK(p2(hp2) == Rational(7));
  CHECK_FALSE(hp2.string_flag);
  const ManifoldSpec m08 = catalog_manifold("M08");
  CHECK(p1sq(m08) == Rational(0));
  CHECK(p2(m08) == Rational(1440));
  CHECK(m08.string_flag);
  CHECK(m08.dim() == 8);

  const ManifoldSpec three = catalog_manifold("3M08");
  CHECK(p2(three) == Rational(4320));
  CHECK(three.string_flag);
  CHECK_THROWS_AS(catalog_manifold("K3"), InvalidArgument);
  CHECK_THROWS_AS(catalog_manifold("0M08"), InvalidArgument);
  CHECK_THROWS_AS(catalog_manifold("xM08"), InvalidArgument);
  for (const auto& name : catalog_names()) CHECK_NOTHROW(validate(catalog_manifold(name)));
}

TEST_CASE("Bott manifold numbers from Sig = 0 and A-hat = 1") {
  const auto [a, b] = derive_b8_table();
  CHECK(a == Rational(896));
  CHECK(b == Rational(128));
  CHECK(oracle_8d(Oracle8d::Sig, a, b) == Rational(0));
  CHECK(oracle_8d(Oracle8d::Ahat, a, b) == Rational(1));
}

TEST_CASE("8-dimensional example table, closed form and integration") {
  struct Row {
    const char* name;
    long sig, sig_t, sig_l2t, ahat;
  };
  const Row rows[] = {{"B8", 0, 2048, 14336, 1}, {"HP2", 1, 0, 92, 0}, {"M08", 224, -2048, 6272, -1}};
  for (const auto& row : rows) {
    const ManifoldSpec m = catalog_manifold(row.name);
    const FactorSpec& f = m.factors[0];
    const std::pair<Oracle8d, long> expected[] = {
        {Oracle8d::Sig, row.sig}, {Oracle8d::SigT, row.sig_t}, {Oracle8d::SigL2T, row.sig_l2t}, {Oracle8d::Ahat, row.ahat}};
    for (const auto& [which, value] : expected) {
      CHECK(oracle_8d(which, f) == Rational(value));
      CHECK(integrated(which, f.numbers) == Rational(value));
    }
  }
}

TEST_CASE("property: closed forms agree with integration on random integer tables") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> pick(-5000, 5000);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational a(pick(rng));
    const Rational b(pick(rng));
    const PontryaginTable table{{{2, 0}, a}, {{0, 1}, b}};
    for (auto which : {Oracle8d::Sig, Oracle8d::SigT, Oracle8d::SigL2T, Oracle8d::Ahat}) {
      CHECK(oracle_8d(which, a, b) == integrated(which, table));
    }
  }
}

TEST_CASE("products") {
  const ManifoldSpec m3 = product_manifold({catalog_manifold("M08"), catalog_manifold("M08"), catalog_manifold("M08")});
  CHECK(m3.dim() == 24);
  CHECK(m3.string_flag);
  CHECK(m3.name == "M08xM08xM08");
  const ManifoldSpec bhh = product_manifold({catalog_manifold("B8"), catalog_manifold("HP2"), catalog_manifold("HP2")});
  CHECK(bhh.dim() == 24);
  CHECK_FALSE(bhh.string_flag);
  CHECK(product_manifold({catalog_manifold("HP2")}) == catalog_manifold("HP2"));
  CHECK_THROWS_AS(product_manifold({}), InvalidArgument);
  CHECK(resolve_manifold("product:B8,HP2,HP2") == bhh);
  CHECK(resolve_manifold("catalog:M08") == catalog_manifold("M08"));
  CHECK_THROWS_AS(resolve_manifold("M08"), InvalidArgument);
  CHECK_THROWS_AS(resolve_manifold("shop:M08"), InvalidArgument);
}

TEST_CASE("signature of Lambda^2 T on products from factor data") {
  const SignatureTriple b8{0, 2048, 14336};
  const SignatureTriple hp2{1, 0, 92};
  const SignatureTriple m08{224, -2048, 6272};
  CHECK(product_sig_lambda2({b8, hp2, hp2}) == Rational(14336));
  const Rational expected = Rational(3 * 6272) * Rational(224 * 224) + Rational(3) * Rational(2048L * 2048L) * Rational(224);
  CHECK(product_sig_lambda2({m08, m08, m08}) == expected);
  CHECK(expected == Rational(3762683904L));
  CHECK(product_sig_lambda2({hp2}) == Rational(92));
  CHECK_THROWS_AS(product_sig_lambda2({}), InvalidArgument);
}

TEST_CASE("almost-parallelizable manifolds") {
  const auto a2 = almost_parallelizable(2, Rational(6));
  CHECK(a2.sig == Rational(224));
  CHECK(a2.ahat == Rational(-1));
  CHECK(a2.witten.weight == 4);
  CHECK(a2.witten.expansion == eisenstein_series(2, Rational(6)).expansion.scaled(Rational(-1)));
  // k odd doubles the signature
  const auto a1 = almost_parallelizable(1, Rational(3));
  CHECK(a1.sig == Rational(16));
  CHECK(a1.ahat == Rational(-2));
  const auto a3 = almost_parallelizable(3, Rational(3));
  CHECK(a3.sig == Rational(7936));
  CHECK(a3.ahat == Rational(-2));
  // p1 = 0 and Sig = 224 recover p2 = 1440 through the closed form
  CHECK(Rational(224) * Rational(45) / Rational(7) == Rational(1440));
  CHECK(oracle_8d(Oracle8d::Sig, Rational(0), Rational(1440)) == a2.sig);
  CHECK(oracle_8d(Oracle8d::Ahat, Rational(0), Rational(1440)) == a2.ahat);
  CHECK_THROWS_AS(almost_parallelizable(0), InvalidArgument);
}

TEST_CASE("manifold json round trip and validation") {
  const auto doc = to_json(catalog_manifold("HP2"));
  CHECK(doc["factors"][0]["numbers"]["p1^2"] == "4");
  CHECK(doc["factors"][0]["numbers"]["p2"] == "7");
  CHECK(doc["string"] == false);

  const ManifoldSpec m3 = resolve_manifold("product:M08,M08,M08");
  CHECK(manifold_from_json(to_json(m3)) == m3);

  auto bad = to_json(catalog_manifold("HP2"));
  bad["string"] = true;
  CHECK_THROWS_AS(manifold_from_json(bad), InvalidArgument);

  auto lying = to_json(catalog_manifold("HP2"));
  lying["factors"][0]["p1_vanishes"] = true;
  CHECK_THROWS_AS(manifold_from_json(lying), InvalidArgument);

  auto missing = to_json(catalog_manifold("HP2"));
  missing["factors"][0]["numbers"].erase("p2");
  CHECK_THROWS_AS(manifold_from_json(missing), InvalidArgument);

  auto fractional = to_json(catalog_manifold("HP2"));
  fractional["factors"][0]["numbers"]["p2"] = "7/2";
  CHECK_THROWS_AS(manifold_from_json(fractional), InvalidArgument);

  CHECK_THROWS_AS(manifold_from_json(nlohmann::json::parse(R"({"name": "x"})")), InvalidArgument);

  const std::string path = "test_manifolds_roundtrip.json";
  save_manifold(m3, path);
  CHECK(load_manifold(path) == m3);
  CHECK(resolve_manifold("file:" + path) == m3);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_manifold("does/not/exist.json"), InvalidArgument);
}
