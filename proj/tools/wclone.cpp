// Command-line front end. Every subcommand prints exactly one JSON document
// on stdout; diagnostics go to stderr.
//
// Exit status: 0 success, 1 negative verdict, 2 usage or input error,
// 3 resource cap exceeded, 4 internal error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "wclone/counterexamples.hpp"
#include "wclone/errors.hpp"
#include "wclone/galois.hpp"
#include "wclone/improve.hpp"
#include "wclone/json_io.hpp"
#include "wclone/reductions.hpp"
#include "wclone/vcsp.hpp"

namespace fs = std::filesystem;
using wclone::io::Json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kCap = 3, kInternal = 4 };

struct Output {
  Json doc;
  int status = kOk;
};

wclone::Language load_language(const std::string& path) {
  return wclone::io::language_from_json(wclone::io::read_json_file(path), path + ":");
}

wclone::WeightedRelation load_relation(const std::string& path) {
  return wclone::io::relation_from_json(wclone::io::read_json_file(path), path + ":");
}

wclone::VcspInstance load_instance(const std::string& path) {
  return wclone::io::instance_from_json(wclone::io::read_json_file(path), fs::path(path).parent_path(),
                                        path + ":");
}

std::vector<wclone::Weighting> load_weightings(const std::string& path) {
  const Json j = wclone::io::read_json_file(path);
  const std::string where = path + ":";
  std::vector<wclone::Weighting> out;
  const Json* list = &j;
  std::string base = where;
  if (j.is_object() && j.contains("weightings")) {
    list = &j["weightings"];
    base = where + "/weightings";
  }
  if (list->is_array()) {
    for (std::size_t i = 0; i < list->size(); ++i) {
      out.push_back(wclone::io::weighting_from_json((*list)[i], base + "/" + std::to_string(i)));
    }
  } else {
    out.push_back(wclone::io::weighting_from_json(j, where));
  }
  return out;
}

Json error_doc(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted clones and valued constraint languages over finite domains"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> op_cap;
  std::optional<std::uint64_t> assignment_cap;
  app.add_option("--op-cap", op_cap, "Cap on enumerated operations (default 65536, env WCLONE_OP_CAP)");
  app.add_option("--assignment-cap", assignment_cap, "Cap on enumerated assignments (default 1048576)");

  wclone::Limits limits;
  std::function<Output()> run;

  std::string language_path, relation_path, weighting_path, instance_path, certificate_path;
  std::string candidate_path, require_path, gamma_name, opt_name, epsilon_text;
  int arity = 0;
  int arity_cap = 0;
  bool no_identity = false;

  // pol
  auto* pol_cmd = app.add_subcommand("pol", "k-ary polymorphisms of a language");
  pol_cmd->add_option("--language", language_path, "Language file")->required()->check(CLI::ExistingFile);
  pol_cmd->add_option("--arity", arity, "Arity k")->required()->check(CLI::PositiveNumber);
  pol_cmd->callback([&] {
    run = [&] {
      const wclone::Language lang = load_language(language_path);
      const auto ops = wclone::pol(lang, arity, limits).of_arity(arity);
      Json list = Json::array();
      for (const auto& f : ops) list.push_back(wclone::io::to_json(f));
      return Output{Json{{"d", lang.domain()}, {"k", arity}, {"count", ops.size()}, {"operations", list}}};
    };
  });

  // wpol-check
  auto* check_cmd = app.add_subcommand("wpol-check", "Is a weighting a weighted polymorphism?");
  check_cmd->add_option("--weighting", weighting_path, "Weighting file")->required()->check(CLI::ExistingFile);
  auto* rel_opt = check_cmd->add_option("--relation", relation_path, "Single relation file")->check(CLI::ExistingFile);
  auto* lang_opt = check_cmd->add_option("--language", language_path, "Language file")->check(CLI::ExistingFile);
  rel_opt->excludes(lang_opt);
  check_cmd->callback([&] {
    run = [&] {
      const wclone::Weighting w =
          wclone::io::weighting_from_json(wclone::io::read_json_file(weighting_path), weighting_path + ":");
      wclone::Language lang(w.domain());
      if (!relation_path.empty()) {
        lang.add("relation", load_relation(relation_path));
      } else if (!language_path.empty()) {
        lang = load_language(language_path);
      } else {
        throw wclone::InvalidArgument("one of --relation or --language is required");
      }
      Json per = Json::object();
      bool all = true;
      for (const auto& [name, gamma] : lang) {
        const bool ok = wclone::is_weighted_polymorphism(w, gamma);
        per[name] = ok;
        all = all && ok;
      }
      return Output{Json{{"weighted_polymorphism", all}, {"relations", per}}, all ? kOk : kNegative};
    };
  });

  // wpol-find
  auto* find_cmd = app.add_subcommand("wpol-find", "Search for a k-ary weighted polymorphism");
  find_cmd->add_option("--language", language_path, "Language file")->required()->check(CLI::ExistingFile);
  find_cmd->add_option("--arity", arity, "Arity k")->required()->check(CLI::PositiveNumber);
  find_cmd->add_option("--require-positive", require_path, "Operation file that must get weight >= 1")
      ->check(CLI::ExistingFile);
  find_cmd->callback([&] {
    run = [&] {
      const wclone::Language lang = load_language(language_path);
      std::optional<wclone::Operation> required;
      if (!require_path.empty()) {
        required = wclone::io::operation_from_json(wclone::io::read_json_file(require_path),
                                                   require_path + ":", lang.domain(), arity);
      }
      const auto found = wclone::find_weighted_polymorphism(lang, arity, required, limits);
      if (found.weighting) {
        return Output{Json{{"found", true}, {"weighting", wclone::io::to_json(*found.weighting)}}};
      }
      return Output{Json{{"found", false}, {"farkas", wclone::io::to_json(found.farkas)}}, kNegative};
    };
  });

  // improve-rows
  auto* rows_cmd = app.add_subcommand("improve-rows", "Improvement vectors gamma[X] over Pol^(k)");
  rows_cmd->add_option("--language", language_path, "Language file")->required()->check(CLI::ExistingFile);
  rows_cmd->add_option("--arity", arity, "Arity k")->required()->check(CLI::PositiveNumber);
  rows_cmd->callback([&] {
    run = [&] {
      return Output{wclone::io::to_json(wclone::improvement_rows(load_language(language_path), arity, limits))};
    };
  });

  // imp-member
  auto* imp_cmd = app.add_subcommand("imp-member", "Is a relation in the weighted relational clone?");
  imp_cmd->add_option("--language", language_path, "Language file")->required()->check(CLI::ExistingFile);
  imp_cmd->add_option("--relation", relation_path, "Target relation file")->required()->check(CLI::ExistingFile);
  imp_cmd->callback([&] {
    run = [&] {
      const auto verdict =
          wclone::imp_membership(load_language(language_path), load_relation(relation_path), limits);
      const bool member = std::holds_alternative<wclone::MemberCertificate>(verdict);
      return Output{wclone::io::to_json(verdict), member ? kOk : kNegative};
    };
  });

  // wclone-member
  auto* wc_cmd = app.add_subcommand("wclone-member", "Is a weighting in the weighted clone of a set?");
  wc_cmd->add_option("--weightings", weighting_path, "Weighting set file (array or single weighting)")
      ->required()
      ->check(CLI::ExistingFile);
  wc_cmd->add_option("--candidate", candidate_path, "Candidate weighting file")->required()->check(CLI::ExistingFile);
  wc_cmd->add_option("--arity-cap", arity_cap, "Clone generation arity cap")->check(CLI::NonNegativeNumber);
  wc_cmd->callback([&] {
    run = [&] {
      const auto set = load_weightings(weighting_path);
      const wclone::Weighting mu =
          wclone::io::weighting_from_json(wclone::io::read_json_file(candidate_path), candidate_path + ":");
      const auto verdict = wclone::wclone_membership(set, mu, arity_cap, limits);
      const bool member = std::holds_alternative<wclone::WcloneMember>(verdict);
      return Output{wclone::io::to_json(verdict), member ? kOk : kNegative};
    };
  });

  // express
  auto* expr_cmd = app.add_subcommand("express", "Rebuild a relation from a membership certificate");
  expr_cmd->add_option("--language", language_path, "Language file")->required()->check(CLI::ExistingFile);
  expr_cmd->add_option("--certificate", certificate_path, "Certificate or imp-member output")
      ->required()
      ->check(CLI::ExistingFile);
  expr_cmd->callback([&] {
    run = [&] {
      const wclone::Language lang = load_language(language_path);
      Json j = wclone::io::read_json_file(certificate_path);
      std::string where = certificate_path + ":";
      if (j.is_object() && j.contains("certificate")) {
        j = Json(j["certificate"]);
        where += "/certificate";
      }
      const auto cert = wclone::io::member_certificate_from_json(j, lang.domain(), where);
      return Output{wclone::io::to_json(wclone::express_from_certificate(cert, lang, limits))};
    };
  });

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Exact brute-force minimum of an instance");
  solve_cmd->add_option("--instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->callback([&] {
    run = [&] {
      const auto sol = wclone::solve(load_instance(instance_path), limits);
      return Output{wclone::io::to_json(sol), sol.argmin ? kOk : kNegative};
    };
  });

  // delta
  auto* delta_cmd = app.add_subcommand("delta", "Smallest gap between distinct finite objective values");
  delta_cmd->add_option("--instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  delta_cmd->callback([&] {
    run = [&] {
      const auto gap = wclone::delta(load_instance(instance_path), limits);
      return Output{Json{{"delta", gap ? wclone::io::to_json(*gap) : Json(nullptr)}}};
    };
  });

  // reduce-opt
  auto* ropt_cmd = app.add_subcommand("reduce-opt", "Replace Opt(gamma) constraints by copies of gamma");
  ropt_cmd->add_option("--instance", instance_path, "Instance file")->required()->check(CLI::ExistingFile);
  ropt_cmd->add_option("--gamma", gamma_name, "Name of gamma in the language")->required();
  ropt_cmd->add_option("--opt-relation", opt_name, "Name of Opt(gamma) in the language")->required();
  ropt_cmd->add_flag("--no-identity", no_identity, "Fail instead of returning the identity transform");
  ropt_cmd->callback([&] {
    run = [&] {
      return Output{wclone::io::to_json(
          wclone::reduce_opt(load_instance(instance_path), gamma_name, opt_name, !no_identity))};
    };
  });

  // reduce-scale
  auto* rscale_cmd = app.add_subcommand("reduce-scale", "Replace scaled constraints by unscaled copies");
  rscale_cmd->add_option("--instance", instance_path, "Scaled instance file")->required()->check(CLI::ExistingFile);
  rscale_cmd->add_option("--epsilon", epsilon_text, "Additive error bound, a positive rational")->required();
  rscale_cmd->callback([&] {
    run = [&] {
      const wclone::ScaledInstance inst = wclone::io::scaled_instance_from_json(
          wclone::io::read_json_file(instance_path), fs::path(instance_path).parent_path(), instance_path + ":");
      wclone::Rational eps;
      try {
        eps = wclone::parse_rational(epsilon_text);
      } catch (const wclone::Error& e) {
        throw wclone::ParseError("--epsilon", e.what());
      }
      return Output{wclone::io::to_json(wclone::reduce_scale(inst, eps))};
    };
  });

  // counterexample
  std::string kind = "narrowing";
  std::string lower_text, upper_text, outer_lower_text, outer_upper_text;
  std::optional<int> level;
  int ce_arity = 1;
  auto* ce_cmd = app.add_subcommand("counterexample", "Constructions on {0,1,2} around a bracketed parameter");
  ce_cmd->add_option("--kind", kind, "narrowing | containment | omega | language")
      ->check(CLI::IsMember({"narrowing", "containment", "omega", "language"}));
  ce_cmd->add_option("--lower", lower_text, "Lower end u of the bracket");
  ce_cmd->add_option("--upper", upper_text, "Upper end v of the bracket");
  ce_cmd->add_option("--level", level, "Use the sqrt(2) convergent bracket of this level")
      ->check(CLI::NonNegativeNumber);
  ce_cmd->add_option("--outer-lower", outer_lower_text, "Looser bracket lower end (containment)");
  ce_cmd->add_option("--outer-upper", outer_upper_text, "Looser bracket upper end (containment)");
  ce_cmd->add_option("--arity", ce_arity, "Arity k of the weighting cone")->check(CLI::PositiveNumber);
  ce_cmd->callback([&] {
    run = [&] {
      auto q = [](const std::string& flag, const std::string& s) {
        try {
          return wclone::parse_rational(s);
        } catch (const wclone::Error& e) {
          throw wclone::ParseError(flag, e.what());
        }
      };
      wclone::BracketedParam bracket;
      if (level) {
        bracket = wclone::sqrt2_bracket(*level);
      } else if (!lower_text.empty() && !upper_text.empty()) {
        bracket = wclone::make_bracket(q("--lower", lower_text), q("--upper", upper_text));
      } else {
        bracket = wclone::sqrt2_bracket(0);
      }
      const Json b{{"lower", wclone::io::to_json(bracket.lower)},
                   {"upper", wclone::io::to_json(bracket.upper)},
                   {"description", bracket.description}};
      if (kind == "language") {
        wclone::Language lang(wclone::kCounterexampleDomain);
        lang.add("mu_minus", wclone::mu_minus(bracket.lower));
        lang.add("mu_plus", wclone::mu_plus(bracket.upper));
        return Output{wclone::io::to_json(lang)};
      }
      if (kind == "omega") {
        const auto fam = wclone::omega_family(bracket.lower, bracket.upper);
        Json checks = Json::object();
        auto check = [&](const char* name, const wclone::Weighting& w) {
          checks[name] = Json{{"at_lower", wclone::satisfies_family_inequality(w, bracket.lower)},
                              {"at_upper", wclone::satisfies_family_inequality(w, bracket.upper)}};
        };
        check("omega0", fam.omega0);
        check("mu_upper", fam.mu_upper);
        check("mu_lower", fam.mu_lower);
        check("outsider", fam.outsider);
        return Output{Json{{"bracket", b}, {"family", wclone::io::to_json(fam)}, {"checks", checks}}};
      }
      if (kind == "containment") {
        if (outer_lower_text.empty() || outer_upper_text.empty()) {
          throw wclone::InvalidArgument("containment needs --outer-lower and --outer-upper");
        }
        const auto outer = wclone::make_bracket(q("--outer-lower", outer_lower_text),
                                                q("--outer-upper", outer_upper_text));
        const auto report = wclone::bracket_containment(bracket, outer, ce_arity, limits);
        return Output{Json{{"bracket", b}, {"containment", wclone::io::to_json(report)}},
                      report.contained ? kOk : kNegative};
      }
      const auto report = wclone::narrowing_check(bracket.lower, bracket.upper, ce_arity, limits);
      return Output{Json{{"bracket", b}, {"narrowing", wclone::io::to_json(report)}},
                    report.all_infeasible ? kOk : kNegative};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_doc("usage", e.what()).dump(2) << "\n";
    app.exit(e);
    return kUsage;
  }

  if (const char* env = std::getenv("WCLONE_OP_CAP"); env && !op_cap) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      op_cap = v;
    } catch (const std::exception&) {
      std::cout << error_doc("usage", "WCLONE_OP_CAP is not an unsigned integer").dump(2) << "\n";
      std::cerr << "error: WCLONE_OP_CAP is not an unsigned integer\n";
      return kUsage;
    }
  }
  if (op_cap) limits.op_cap = *op_cap;
  if (assignment_cap) limits.assignment_cap = *assignment_cap;

  try {
    const Output out = run();
    std::cout << out.doc.dump(2) << "\n";
    return out.status;
  } catch (const wclone::CapExceeded& e) {
    Json doc = error_doc("cap_exceeded", e.what());
    doc["error"]["quantity"] = e.quantity();
    doc["error"]["d"] = e.domain();
    doc["error"]["k"] = e.arity();
    doc["error"]["required"] = e.overflowed() ? Json(nullptr) : Json(e.required());
    doc["error"]["cap"] = e.cap();
    std::cout << doc.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const wclone::ParseError& e) {
    Json doc = error_doc("parse", e.what());
    doc["error"]["where"] = e.where();
    std::cout << doc.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const wclone::ImproperWeighting& e) {
    std::cout << error_doc("improper_weighting", e.what()).dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const wclone::InvalidArgument& e) {
    std::cout << error_doc("invalid_argument", e.what()).dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cout << error_doc("internal", e.what()).dump(2) << "\n";
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
