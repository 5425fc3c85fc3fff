// srlproj: command-line front end.
// Exit codes: 0 ok/pass, 1 semantic fail, 2 parse or invalid input,
// 3 atom cap exceeded, 4 query error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "srlproj/cli/repro.hpp"
#include "srlproj/lang/fragments.hpp"
#include "srlproj/lang/parser.hpp"
#include "srlproj/learning/mle.hpp"
#include "srlproj/projectivity/projectivity.hpp"
#include "srlproj/semantics/query.hpp"
#include "srlproj/stats/stats.hpp"

namespace {

using namespace srlproj;

enum Exit { kOk = 0, kFail = 1, kInput = 2, kCap = 3, kQuery = 4 };

struct Config {
  std::string model_path;
  std::string world_path;
  std::string dialect;
  std::vector<std::string> params;
  int n = 0;
  int m = 0;
  int k = 0;
  double tol = kDefaultTolerance;
  std::size_t cap = 0;
  std::string json_path;
  std::string mode = "exact";
  std::string query_text;
  std::string evidence;
  std::string repro_case;
};

ParamVector parse_params(const std::vector<std::string>& items) {
  ParamVector out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("--param expects name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw InvalidArgument("--param value for '" + name + "' is not a number");
    out[name] = value;
  }
  return out;
}

Model load_model(const Config& c) {
  std::optional<Dialect> dialect;
  if (!c.dialect.empty()) {
    dialect = dialect_from_name(c.dialect);
    if (!dialect) throw InvalidArgument("unknown dialect '" + c.dialect + "'");
  }
  return Model::from_spec(load_model_file(c.model_path, dialect), c.model_path);
}

World load_world(const std::string& path, std::optional<Signature> sig = std::nullopt) {
  return parse_world(read_text_file(path), std::move(sig));
}

void emit(const Config& c, const nlohmann::json& j) {
  const auto text = j.dump(2);
  std::cout << text << "\n";
  if (!c.json_path.empty()) {
    std::ofstream out(c.json_path);
    if (!out) throw InvalidArgument("cannot write '" + c.json_path + "'");
    out << text << "\n";
  }
}

int cmd_check(const Config& c) {
  const auto model = load_model(c);
  const auto report = check_projective_fragment(*model.spec());
  emit(c, report.to_json());
  return report.projective ? kOk : kFail;
}

int cmd_project(const Config& c) {
  const auto model = load_model(c);
  const int n_max = c.n > 0 ? c.n : (model.signature().max_arity() >= 2 ? 4 : 6);
  const auto report = test_projective(model, parse_params(c.params), n_max, c.tol);
  emit(c, report.to_json());
  return report.projective ? kOk : kFail;
}

int cmd_query(const Config& c) {
  const auto model = load_model(c);
  std::string target = c.query_text;
  std::string evidence = c.evidence;
  if (const auto bar = target.find('|'); bar != std::string::npos) {
    if (!evidence.empty()) throw QueryError("evidence given both after '|' and with --evidence");
    evidence = target.substr(bar + 1);
    target = target.substr(0, bar);
  }
  const auto q = parse_query(model.signature(), target, evidence);
  const double p = query(model.distribution(c.n, parse_params(c.params)), q);
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& lit : q.evidence) ev.push_back(to_string(model.signature(), lit));
  emit(c, {{"n", c.n}, {"target", to_string(model.signature(), q.target)}, {"evidence", ev}, {"probability", json_number(p)}});
  return kOk;
}

int cmd_counts(const Config& c) {
  const auto world = load_world(c.world_path);
  emit(c, complete_counts(world, c.k).to_json());
  return kOk;
}

int cmd_lemma1(const Config& c) {
  const auto world = load_world(c.world_path);
  const auto& sig = world.signature();
  require_within_cap(static_cast<std::size_t>(sig.atom_count(c.k)));
  auto rows = nlohmann::json::array();
  bool all = true;
  for (const auto& pattern : enumerate_worlds(sig, c.k)) {
    const auto r = verify_lemma1(world, c.m, pattern);
    all = all && r.equal;
    auto row = r.to_json();
    row["pattern"] = pattern.encoding();
    rows.push_back(row);
  }
  emit(c, {{"n", world.domain_size()}, {"m", c.m}, {"k", c.k}, {"rows", rows}, {"all_equal", all}});
  return all ? kOk : kFail;
}

int cmd_mle(const Config& c) {
  const auto model = load_model(c);
  const auto world = load_world(c.world_path, model.signature());
  Objective objective;
  if (c.mode == "exact") {
    objective = exact_objective(model, world);
  } else if (c.mode == "marginal") {
    if (c.n <= 0) throw InvalidArgument("--mode marginal needs --n");
    objective = marginal_objective(model, world, c.n);
  } else {
    if (c.m <= 0) throw InvalidArgument("--mode subsample needs --m");
    objective = subsample_objective(model, world, c.m);
  }
  auto j = mle(objective).to_json();
  j["mode"] = c.mode;
  emit(c, j);
  return kOk;
}

int cmd_repro(const Config& c) {
  const auto table = repro::run(c.repro_case);
  std::cout << table.render();
  if (!c.json_path.empty()) {
    std::ofstream out(c.json_path);
    if (!out) throw InvalidArgument("cannot write '" + c.json_path + "'");
    out << table.to_json().dump(2) << "\n";
  }
  return table.pass() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact semantics, projectivity checks and sampling-consistent learning for small relational models"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--dialect", c.dialect, "Model language: rbn, mln or problog (default: from file extension)");
  app.add_option("--param", c.params, "Parameter assignment name=value (repeatable)");
  app.add_option("--tol", c.tol, "Tolerance")->check(CLI::PositiveNumber);
  app.add_option("--cap", c.cap, "Maximum number of ground atoms to enumerate")->check(CLI::Range(1, 40));
  app.add_option("--json", c.json_path, "Also write the JSON result to this file");

  auto* check = app.add_subcommand("check", "Static projective-fragment check");
  check->add_option("model", c.model_path)->required();

  auto* project = app.add_subcommand("project", "Exchangeability and projectivity by exact marginalization");
  project->add_option("model", c.model_path)->required();
  project->add_option("--n", c.n, "Largest domain size tested")->check(CLI::PositiveNumber);

  auto* q = app.add_subcommand("query", "Conditional probability P(target | evidence) at domain size n");
  q->add_option("model", c.model_path)->required();
  q->add_option("query", c.query_text, "Target literal, optionally followed by '| evidence'")->required();
  q->add_option("--evidence", c.evidence, "Comma-separated evidence literals");
  q->add_option("--n", c.n)->required()->check(CLI::PositiveNumber);

  auto* counts = app.add_subcommand("counts", "Complete k-count statistics of a world");
  counts->add_option("world", c.world_path)->required();
  counts->add_option("--k", c.k)->required()->check(CLI::PositiveNumber);

  auto* lemma = app.add_subcommand("lemma1", "Exact check of the subsample count identity for every pattern over [k]");
  lemma->add_option("world", c.world_path)->required();
  lemma->add_option("--m", c.m)->required()->check(CLI::PositiveNumber);
  lemma->add_option("--k", c.k)->required()->check(CLI::PositiveNumber);

  auto* fit = app.add_subcommand("mle", "Maximum-likelihood estimate from an observed world");
  fit->add_option("model", c.model_path)->required();
  fit->add_option("world", c.world_path)->required();
  fit->add_option("--mode", c.mode)->check(CLI::IsMember({"exact", "marginal", "subsample"}));
  fit->add_option("--n", c.n, "Full domain size for --mode marginal")->check(CLI::PositiveNumber);
  fit->add_option("--m", c.m, "Sample size for --mode subsample")->check(CLI::PositiveNumber);

  auto* rep = app.add_subcommand("repro", "Recompute a table of reference numbers");
  rep->add_option("case", c.repro_case)->required()->check(CLI::IsMember(repro::case_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    std::optional<ScopedAtomCap> cap;
    if (c.cap > 0) cap.emplace(c.cap);
    if (check->parsed()) return cmd_check(c);
    if (project->parsed()) return cmd_project(c);
    if (q->parsed()) return cmd_query(c);
    if (counts->parsed()) return cmd_counts(c);
    if (lemma->parsed()) return cmd_lemma1(c);
    if (fit->parsed()) return cmd_mle(c);
    return cmd_repro(c);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const QueryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kQuery;
  } catch (const ParseError& e) {
    const auto& file = c.model_path.empty() ? c.world_path : c.model_path;
    std::cerr << file << ":" << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}
