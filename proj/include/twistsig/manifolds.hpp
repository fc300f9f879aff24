#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "twistsig/charring.hpp"
#include "twistsig/modforms.hpp"

namespace twistsig {

/// One factor of a product manifold, known only through its top-degree
/// Pontryagin numbers.
struct FactorSpec {
  int dim = 0;
  PontryaginTable numbers;
  bool p1_vanishes = false;

  friend bool operator==(const FactorSpec&, const FactorSpec&) = default;
};

struct ManifoldSpec {
  std::string name;
  std::vector<FactorSpec> factors;
  bool string_flag = false;

  int dim() const;
  FactorShape shape() const;
  std::vector<PontryaginTable> tables() const;

  friend bool operator==(const ManifoldSpec&, const ManifoldSpec&) = default;
};

/// Throws InvalidArgument unless every table covers exactly the top monomials
/// of its dimension with integer values, p1_vanishes factors have zero
/// p1-entries, and string_flag implies p1_vanishes everywhere.
void validate(const ManifoldSpec& m);

/// B8 (Bott manifold), HP2, M08 (Milnor-Kervaire plumbing), or "kM08" for the
/// connected sum of k copies of M08.
ManifoldSpec catalog_manifold(std::string_view name);
std::vector<std::string> catalog_names();

/// (p1^2, p2) of B8 from Sig = 0 and A-hat = 1.
std::pair<Rational, Rational> derive_b8_table();

ManifoldSpec product_manifold(const std::vector<ManifoldSpec>& specs);

enum class Oracle8d { Sig, SigT, SigL2T, Ahat };

/// Closed-form 8-dimensional characteristic numbers in p1^2 and p2.
Rational oracle_8d(Oracle8d which, const Rational& p1sq, const Rational& p2);
/// Same, reading the numbers from a dimension-8 factor.
Rational oracle_8d(Oracle8d which, const FactorSpec& factor);

struct SignatureTriple {
  Rational sig;
  Rational sig_t;
  Rational sig_l2t;
};

/// Sig(prod N_i, Lambda^2 T) from the factors' Sig, Sig(T), Sig(Lambda^2 T).
Rational product_sig_lambda2(const std::vector<SignatureTriple>& factors);

struct AlmostParallelizable {
  Rational sig;
  Rational ahat;
  ModularForm witten;
};

/// Signature, A-hat genus and Witten genus of the 4k-dimensional
/// almost-parallelizable Milnor-Kervaire manifold M_0^{4k}.
AlmostParallelizable almost_parallelizable(int k, const Rational& order = kDefaultOrder);

nlohmann::json to_json(const ManifoldSpec& m);
ManifoldSpec manifold_from_json(const nlohmann::json& doc);
ManifoldSpec load_manifold(const std::string& path);
void save_manifold(const ManifoldSpec& m, const std::string& path);

/// catalog:NAME, product:NAME,NAME,... (catalog names), or file:PATH.
ManifoldSpec resolve_manifold(std::string_view ref);

}  // namespace twistsig
