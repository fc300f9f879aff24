#include <doctest.h>

#include <map>

#include "twistsig/errors.hpp"
#include "twistsig/modforms.hpp"
#include "twistsig/verify.hpp"

using namespace twistsig;

namespace {

ManifoldSpec triple(const char* a, const char* b, const char* c) {
  return product_manifold({catalog_manifold(a), catalog_manifold(b), catalog_manifold(c)});
}

void require_clean(const std::vector<CheckReport>& reports) {
  for (const auto& r : flatten(reports)) {
    INFO(render_report({r}, ReportFormat::Text));
    CHECK_FALSE(r.asserted_failure());
  }
}

const CheckReport* find(const std::vector<CheckReport>& reports, const std::string& id, const std::string& inputs) {
  static std::vector<CheckReport> flat;
  flat = flatten(reports);
  for (const auto& r : flat) {
    if (r.check_id == id && r.inputs == inputs) return &r;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("report relation and status") {
  const CheckReport eq = make_report("a", "x", Rational(5), Rational(5));
  CHECK(eq.passed);
  CHECK_FALSE(eq.asserted_failure());
  const CheckReport mod = make_report("b", "x", Rational(14336), Rational(0), 3);
  CHECK_FALSE(mod.passed);
  CHECK(mod.asserted_failure());
  CHECK(make_report("c", "x", Rational(-1), Rational(2), 3).passed);
  CHECK_FALSE(make_report("d", "x", Rational(1, 2), Rational(1, 2), 3).passed);
  CHECK(make_report("e", "x", Rational(1), Rational(1), std::nullopt, Expect::Fail).asserted_failure());
  CHECK_FALSE(make_report("f", "x", Rational(1), Rational(2), std::nullopt, Expect::Record).asserted_failure());
  CHECK_FALSE(make_report("g", "x", Rational(1), QSeries::from_terms(1, Rational(1), {{0, Rational(1)}})).passed);
}

TEST_CASE("text rendering") {
  CHECK(render_report({}, ReportFormat::Text).find("checks: 0") == 0);
  CHECK(render_report({}, ReportFormat::Text).find('\n') == render_report({}, ReportFormat::Text).size() - 1);
  const CheckReport r =
      make_report("thm01", "B8xHP2xHP2", Rational(14336), Rational(0), 3, Expect::Fail, "non-string control");
  const std::string text = render_report({r}, ReportFormat::Text);
  CHECK(text.find("XFAIL thm01: 2 ≠ 0 (mod 3) [non-string control] (B8xHP2xHP2)") != std::string::npos);
  CHECK(render_report({make_report("x", "", Rational(3), Rational(3))}, ReportFormat::Text).find("PASS x: 3 = 3") !=
        std::string::npos);

  CheckReport parent = make_report("p", "", Rational(1), Rational(1));
  parent.parts.push_back(make_report("p/q", "", Rational(1), Rational(2)));
  CHECK(flatten({parent}).size() == 2);
  CHECK(any_asserted_failure({parent}));
  CHECK(render_report({parent}, ReportFormat::Text).find("FAIL p/q: 1 ≠ 2") != std::string::npos);
}

TEST_CASE("json rendering") {
  const nlohmann::json j = report_json({make_report("thm01", "M", Rational(-744), Rational(0), 3)});
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["check_id"] == "thm01");
  CHECK(j[0]["left"] == "-744");
  CHECK(j[0]["modulus"] == 3);
  CHECK(j[0]["passed"] == true);
  CHECK(j[0]["expect"] == "pass");
  CHECK(nlohmann::json::parse(render_report({}, ReportFormat::Json)).empty());
}

TEST_CASE("mod 3 congruence on the cube of the Milnor-Kervaire manifold") {
  const ManifoldSpec m3 = triple("M08", "M08", "M08");
  const CheckReport r = check_theorem_0_1(m3);
  CHECK(r.passed);
  CHECK(r.expect == Expect::Pass);
  CHECK(std::get<Rational>(r.left) == Rational(3762683904L));
  CHECK(std::get<Rational>(r.right) == Rational(-744));
  CHECK_THROWS_AS(check_theorem_0_1(catalog_manifold("M08")), InvalidArgument);
}

TEST_CASE("non-string control fails the congruence") {
  const CheckReport r = check_theorem_0_1(triple("B8", "HP2", "HP2"));
  CHECK_FALSE(r.passed);
  CHECK(r.expect == Expect::Record);
  CHECK_FALSE(r.asserted_failure());
  CHECK_THROWS_AS(check_lemma_2_2(triple("B8", "HP2", "HP2")), InvalidArgument);
}

TEST_CASE("proof chains on a string product") {
  const ManifoldSpec m = triple("M08", "2M08", "3M08");
  require_clean({check_lemma_2_1(m)});
  const CheckReport l22 = check_lemma_2_2(m, Rational(4));
  require_clean({l22});
  // the order-4 run also fits R1 in the lower basis
  bool lower = false;
  for (const auto& p : l22.parts) lower = lower || p.check_id.rfind("lemma22/r1_fit", 0) == 0;
  CHECK(lower);
  require_clean({check_lemma_2_3(m)});
  require_clean(check_divisibility_suite(m));
}

TEST_CASE("2^11 identity holds exactly without the string condition") {
  const CheckReport r = check_lemma_2_3(triple("B8", "HP2", "HP2"));
  CHECK(r.passed);
  CHECK(std::get<Rational>(r.left) == Rational(2048));
  for (const auto& p : r.parts) CHECK(p.passed);
}

TEST_CASE("invariant and example suites") {
  require_clean(invariant_checks());
  const auto examples = example_checks();
  require_clean(examples);
  const CheckReport* thm = find(examples, "thm01", "B8xHP2xHP2");
  REQUIRE(thm != nullptr);
  CHECK(thm->expect == Expect::Fail);
  CHECK_FALSE(thm->passed);
  const CheckReport* fit = find(examples, "witten_fit", "B8xHP2xHP2");
  REQUIRE(fit != nullptr);
  CHECK_FALSE(fit->passed);
}

TEST_CASE("string sweep") {
  const auto reports = string_sweep();
  require_clean(reports);
  std::size_t thm = 0;
  for (const auto& r : reports) thm += r.check_id == "thm01";
  CHECK(thm == 35);
}

TEST_CASE("random 2^11 identity sweep is reproducible") {
  const auto a = random_lemma_2_3_sweep(7, 6);
  const auto b = random_lemma_2_3_sweep(7, 6);
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].inputs == b[i].inputs);
  require_clean(a);
}

TEST_CASE("run_all turns errors into failing reports") {
  const auto reports = run_all({catalog_manifold("M08")});
  for (const auto& r : flatten(reports)) CHECK(r.note.rfind("error", 0) != 0);
  require_clean(reports);

  const auto suite = run_suite(Suite::Theorem, {triple("B8", "HP2", "HP2")}, 1);
  CHECK_FALSE(any_asserted_failure(suite));
}

TEST_CASE("stream cache returns the same object") {
  const FactorShape s({8, 8, 8});
  const BundleStream& a = cached_stream(StreamKind::Theta1_01, s, Rational(2));
  const BundleStream& b = cached_stream(StreamKind::Theta1_01, s, Rational(2));
  CHECK(&a == &b);
  CHECK(a.series() == liu_wang_stream(LiuWang::Theta1, 0, 1, s, Rational(2)).series());
}

TEST_CASE("verdicts do not depend on the series order") {
  const std::vector<ManifoldSpec> specs{triple("M08", "M08", "4M08")};
  const auto low = flatten(run_all(specs, Rational(3)));
  const auto high = flatten(run_all(specs, Rational(5)));
  std::map<std::string, bool> verdict;
  for (const auto& r : high) verdict[r.check_id + "|" + r.inputs] = r.passed;
  for (const auto& r : low) {
    const auto it = verdict.find(r.check_id + "|" + r.inputs);
    REQUIRE(it != verdict.end());
    CHECK(it->second == r.passed);
  }
  CHECK(high.size() > low.size());
  CHECK(flatten(run_all({})).size() == flatten(invariant_checks()).size());
}
