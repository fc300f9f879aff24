#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "twistsig/genus.hpp"
#include "twistsig/manifolds.hpp"
#include "twistsig/qseries.hpp"

namespace twistsig {

/// Exact number, q-series, or characteristic class (for bundle identities).
using CheckValue = std::variant<Rational, QSeries, PClass>;

/// What the suite asserts about a check: that the relation holds, that it
/// fails (a control whose hypothesis is deliberately violated), or nothing.
enum class Expect { Pass, Fail, Record };

struct CheckReport {
  std::string check_id;
  std::string inputs;
  CheckValue left{Rational(0)};
  CheckValue right{Rational(0)};
  std::optional<long> modulus;
  bool passed = false;
  Expect expect = Expect::Pass;
  std::string note;
  /// Intermediate relations of a proof chain, reported alongside.
  std::vector<CheckReport> parts;

  /// True when the outcome contradicts the expectation.
  bool asserted_failure() const;
};

/// Builds a report; `passed` is left == right, or left = right mod modulus.
CheckReport make_report(std::string id, std::string inputs, CheckValue left, CheckValue right,
                        std::optional<long> modulus = std::nullopt, Expect expect = Expect::Pass,
                        std::string note = {});

inline const Rational kDefaultVerifyOrder{3};

/// Sig(M, Lambda^2 T) = Ind(D (x) T) mod 3 on a 24-manifold. Asserted for
/// string input, recorded otherwise.
CheckReport check_theorem_0_1(const ManifoldSpec& m);

/// 3 | Sig(M, Lambda^2 T) and 24 | Ind(D (x) T) (24-dim), and
/// 2048 | Sig(N, T) for every 8-dimensional factor.
std::vector<CheckReport> check_divisibility_suite(const ManifoldSpec& m);

/// int A-hat ch(S^2 T) = int A-hat ch(-T + 196884), with its mod 3 shadow.
CheckReport check_lemma_2_1(const ManifoldSpec& m);

/// int L-hat ch(Lambda^2 T - T) = int A-hat ch(Lambda^2 T - S^2 T + T) mod 3,
/// with the basis-fit chain as parts. String input only.
CheckReport check_lemma_2_2(const ManifoldSpec& m, const Rational& order = kDefaultVerifyOrder);

/// int L-hat ch(T) = 2^11 int A-hat ch(Lambda^2 T - 47 T + 900), exactly.
CheckReport check_lemma_2_3(const ManifoldSpec& m, const Rational& order = kDefaultVerifyOrder);

/// Modular-form and lambda-ring invariants that need no manifold.
std::vector<CheckReport> invariant_checks(const Rational& order = Rational(10));

/// The worked examples on B8, HP2, M08 and their products, including the
/// non-string controls that must fail.
std::vector<CheckReport> example_checks();

/// Every string check on k1 M08 x k2 M08 x k3 M08, 1 <= k1 <= k2 <= k3 <= 5.
std::vector<CheckReport> string_sweep(const Rational& order = kDefaultVerifyOrder);

/// The 2^11 identity on `count` random products of three catalog factors.
std::vector<CheckReport> random_lemma_2_3_sweep(std::uint64_t seed, int count,
                                                const Rational& order = kDefaultVerifyOrder);

/// All manifold checks on each spec, then the invariant suites. Errors are
/// turned into failing reports instead of aborting the run.
std::vector<CheckReport> run_all(const std::vector<ManifoldSpec>& specs, const Rational& order = kDefaultVerifyOrder);

enum class Suite { All, Theorem, Lemmas, Examples };

/// CLI entry: `specs` empty means the default catalog products plus sweeps.
std::vector<CheckReport> run_suite(Suite suite, const std::vector<ManifoldSpec>& specs, std::uint64_t seed,
                                   const Rational& order = kDefaultVerifyOrder);

std::vector<CheckReport> flatten(const std::vector<CheckReport>& reports);
bool any_asserted_failure(const std::vector<CheckReport>& reports);

enum class ReportFormat { Text, Json };

/// Text: a summary header, then one "PASS/FAIL/XFAIL/XPASS id: ..." line per
/// check (parts included). Json: a flat list of check objects.
std::string render_report(const std::vector<CheckReport>& reports, ReportFormat format);
nlohmann::json report_json(const std::vector<CheckReport>& reports);

/// Shape-keyed stream cache shared by all checks; streams depend on the
/// factor shape and order only.
enum class StreamKind { Theta, Theta1_01, Theta2_01, Theta1_10, Theta2_10 };
const BundleStream& cached_stream(StreamKind kind, const FactorShape& shape, const Rational& order);

}  // namespace twistsig
