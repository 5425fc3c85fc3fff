#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "srlproj/lang/ast.hpp"

namespace srlproj {

struct Violation {
  std::string message;
  SourceLoc loc;
};

/// Outcome of a purely syntactic projective-fragment check.
struct FragmentReport {
  Dialect dialect = Dialect::kRbn;
  bool projective = true;
  std::vector<Violation> violations;

  nlohmann::json to_json() const {
    auto v = nlohmann::json::array();
    for (const auto& x : violations) v.push_back({{"message", x.message}, {"line", x.loc.line}, {"column", x.loc.column}});
    return {{"dialect", dialect_name(dialect)}, {"projective", projective}, {"violations", v}};
  }
};

namespace detail {

inline void find_combination_functions(const ProbFormula& f, const std::string& rel, std::vector<Violation>& out) {
  if (const auto* ite = std::get_if<IfThenElse>(&f.node)) {
    find_combination_functions(*ite->then_branch, rel, out);
    find_combination_functions(*ite->else_branch, rel, out);
  } else if (const auto* nor = std::get_if<NoisyOr>(&f.node)) {
    out.push_back({"noisy-or combination function in the formula for '" + rel + "'", f.loc});
    find_combination_functions(*nor->body, rel, out);
  }
}

inline void collect_atoms(const BoolFormula& f, std::vector<const Atom*>& out) {
  if (const auto* atom = std::get_if<Atom>(&f.node)) {
    out.push_back(atom);
  } else if (const auto* neg = std::get_if<Not>(&f.node)) {
    collect_atoms(*neg->operand, out);
  } else {
    const auto& parts = std::holds_alternative<And>(f.node) ? std::get<And>(f.node).operands : std::get<Or>(f.node).operands;
    for (const auto& p : parts) collect_atoms(*p, out);
  }
}

}  // namespace detail

/// Passes iff no combination function occurs anywhere.
inline FragmentReport check_rbn_projective(const RbnSpec& spec) {
  FragmentReport report{Dialect::kRbn, true, {}};
  for (const auto& rule : spec.rules) {
    detail::find_combination_functions(*rule.formula, spec.signature[rule.relation].name, report.violations);
  }
  report.projective = report.violations.empty();
  return report;
}

/// Passes iff within every formula all atoms carry the same variable set.
inline FragmentReport check_mln_projective(const MlnSpec& spec) {
  FragmentReport report{Dialect::kMln, true, {}};
  for (const auto& wf : spec.formulas) {
    std::vector<const Atom*> atoms;
    detail::collect_atoms(*wf.formula, atoms);
    std::set<int> all;
    for (const auto* a : atoms) all.insert(a->vars.begin(), a->vars.end());
    for (const auto* a : atoms) {
      const std::set<int> own(a->vars.begin(), a->vars.end());
      if (own == all) continue;
      std::string missing;
      for (int v : all) {
        if (!own.count(v)) missing += (missing.empty() ? "" : ", ") + wf.var_names[static_cast<std::size_t>(v)];
      }
      report.violations.push_back(
          {"atom of '" + spec.signature[a->relation].name + "' lacks variable(s) " + missing + " used elsewhere in the formula",
           a->loc});
    }
  }
  report.projective = report.violations.empty();
  return report;
}

/// Passes iff every clause body uses only variables of its head.
inline FragmentReport check_problog_projective(const ProblogSpec& spec) {
  FragmentReport report{Dialect::kProblog, true, {}};
  for (const auto& c : spec.clauses) {
    const std::set<int> head(c.head.vars.begin(), c.head.vars.end());
    std::set<int> reported;
    for (const auto& b : c.body) {
      for (int v : b.vars) {
        if (head.count(v) || !reported.insert(v).second) continue;
        report.violations.push_back({"body variable " + c.var_names[static_cast<std::size_t>(v)] + " of the clause for '" +
                                         spec.signature[c.head.relation].name + "' does not occur in its head",
                                     b.loc});
      }
    }
  }
  report.projective = report.violations.empty();
  return report;
}

inline FragmentReport check_projective_fragment(const ModelSpec& spec) {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RbnSpec>) return check_rbn_projective(s);
        else if constexpr (std::is_same_v<T, MlnSpec>) return check_mln_projective(s);
        else return check_problog_projective(s);
      },
      spec);
}

}  // namespace srlproj
