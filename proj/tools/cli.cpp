#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "twistsig/errors.hpp"
#include "twistsig/genus.hpp"
#include "twistsig/modforms.hpp"
#include "twistsig/verify.hpp"

namespace twistsig::cli {

namespace {

constexpr const char* kDefaultOrder = "6";

/// "E4^3*E6" and friends: a product of named forms with optional powers.
QSeries form_product(const std::string& expr, const Rational& order) {
  std::optional<QSeries> out;
  std::stringstream ss(expr);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    long power = 1;
    const auto caret = factor.find('^');
    std::string name = factor.substr(0, caret);
    if (caret != std::string::npos) {
      const std::string p = factor.substr(caret + 1);
      if (p.empty() || p.size() > 6 || p.find_first_not_of("0123456789") != std::string::npos) {
        throw InvalidArgument("bad exponent in form expression '" + expr + "'");
      }
      power = std::stol(p);
    }
    const QSeries f = series_pow(named_form(name, order), power);
    out = out ? series_mul(*out, f) : f;
  }
  if (!out) throw InvalidArgument("empty form expression");
  return *out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fit_text(const BasisFit& fit) {
  std::string s = std::string(basis_name(fit.basis)) + ":";
  for (const auto& c : fit.coefficients) s += " " + c.str();
  if (fit.in_span) return s + " (in span through q^" + fit.verified_order.str() + ")\n";
  s += " (not in span";
  if (fit.first_residual) s += ", first residual at q^" + fit.first_residual->str();
  return s + ")\n";
}

}  // namespace

Outcome parse_and_dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Exact q-series, genera and twisted signatures", "twistsig"};
  app.require_subcommand(1);

  std::string form, order_text = kDefaultOrder, verify_order = "3", basis, input, manifold_ref, twist, suite = "all";
  std::vector<std::string> manifold_refs;
  std::string action, path;
  std::uint64_t seed = 1;
  bool json = false;

  auto* expand = app.add_subcommand("expand", "q-expansion of a named form or product of forms");
  expand->add_option("--form", form, "E2 E4 E6 delta_disc theta1..3 delta1 eps1 delta2 eps2, e.g. E4^3*E6")
      ->required();
  expand->add_option("--order", order_text, "truncation order");
  expand->add_flag("--json", json);

  auto* fit = app.add_subcommand("fit", "fit a series in a weight-12 basis");
  fit->add_option("--basis", basis, "sl2z12 or g02w12")->required()->check(CLI::IsMember({"sl2z12", "g02w12"}));
  auto* fit_input = fit->add_option("--input", input, "series JSON file");
  auto* fit_form = fit->add_option("--form", form, "form expression");
  fit_input->excludes(fit_form);
  fit->add_option("--order", order_text, "truncation order for --form");
  fit->add_flag("--json", json);

  auto* manifold = app.add_subcommand("manifold", "show or save a manifold spec");
  manifold->add_option("action", action, "show or save")->required()->check(CLI::IsMember({"show", "save"}));
  manifold->add_option("ref", manifold_ref, "catalog:NAME, product:A,B,C or file:PATH")->required();
  manifold->add_option("path", path, "output file for save");

  auto* witten = app.add_subcommand("witten", "Witten genus q-series");
  witten->add_option("--manifold", manifold_ref)->required();
  witten->add_option("--order", order_text, "truncation order");
  witten->add_flag("--json", json);

  auto* sig = app.add_subcommand("sig", "twisted signature");
  auto* index = app.add_subcommand("index", "twisted Dirac index");
  for (auto* sub : {sig, index}) {
    sub->add_option("--manifold", manifold_ref)->required();
    sub->add_option("--twist", twist, "e.g. L2T-47T+900")->default_val("1");
  }

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"all", "thm01", "lemmas", "examples"}));
  verify->add_option("--manifold", manifold_refs, "manifolds to check instead of the defaults");
  verify->add_option("--seed", seed, "seed for random product sweeps");
  verify->add_option("--order", verify_order, "series order for the proof chains");
  verify->add_flag("--json", json);

  Outcome result;
  std::ostringstream out, err;
  std::vector<const char*> argv{"twistsig"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    result.status = app.exit(e, out, err);
    if (result.status != 0) {
      result.status = 2;
      err << app.help();
    }
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    const Rational order = Rational::parse(order_text);
    if (*expand) {
      const QSeries s = form_product(form, order);
      out << (json ? to_json(s).dump() : to_text(s)) << "\n";
    } else if (*fit) {
      if (input.empty() && form.empty()) throw InvalidArgument("fit needs --input or --form");
      const QSeries s = input.empty() ? form_product(form, order) : qseries_from_json(nlohmann::json::parse(read_file(input)));
      const BasisFit f = basis == "sl2z12" ? fit_weight12_sl2z(s) : fit_weight12_gamma_upper0_2(s);
      out << (json ? to_json(f).dump() + "\n" : fit_text(f));
    } else if (*manifold) {
      const ManifoldSpec m = resolve_manifold(manifold_ref);
      if (action == "show") {
        out << to_json(m).dump(2) << "\n";
      } else {
        if (path.empty()) throw InvalidArgument("manifold save needs an output path");
        save_manifold(m, path);
        out << "saved " << m.name << " to " << path << "\n";
      }
    } else if (*witten) {
      const QSeries w = witten_genus(resolve_manifold(manifold_ref), order);
      out << (json ? to_json(w).dump() : to_text(w)) << "\n";
    } else if (*sig || *index) {
      const ManifoldSpec m = resolve_manifold(manifold_ref);
      out << (*sig ? twisted_signature(m, twist) : dirac_index(m, twist)).str() << "\n";
    } else if (*verify) {
      std::vector<ManifoldSpec> specs;
      for (const auto& ref : manifold_refs) specs.push_back(resolve_manifold(ref));
      const Suite which = suite == "all"      ? Suite::All
                          : suite == "thm01"  ? Suite::Theorem
                          : suite == "lemmas" ? Suite::Lemmas
                                              : Suite::Examples;
      const auto reports = run_suite(which, specs, seed, Rational::parse(verify_order));
      out << render_report(reports, json ? ReportFormat::Json : ReportFormat::Text);
      result.status = any_asserted_failure(reports) ? 1 : 0;
    }
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    result.status = 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    result.status = 1;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace twistsig::cli
