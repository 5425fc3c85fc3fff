#pragma once

#include <charconv>
#include <string>

#include "srlproj/lang/ast.hpp"

namespace srlproj {

namespace detail {

// Shortest text that parses back to the same double.
inline std::string exact_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos && s.find("inf") == std::string::npos) s += ".0";
  return s;
}

inline std::string value_text(const Value& v) {
  if (const auto* p = std::get_if<Param>(&v)) return "$" + p->name;
  return exact_number(std::get<double>(v));
}

inline std::string atom_text(const Signature& sig, const Atom& atom, const std::vector<std::string>& names) {
  std::string out = sig[atom.relation].name;
  if (atom.vars.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < atom.vars.size(); ++i) {
    if (i > 0) out += ',';
    out += names[static_cast<std::size_t>(atom.vars[i])];
  }
  return out + ')';
}

inline std::string formula_text(const Signature& sig, const ProbFormula& f, const std::vector<std::string>& names) {
  const auto nested = [&](const ProbFormulaPtr& g) {
    const auto text = formula_text(sig, *g, names);
    return (std::holds_alternative<double>(g->node) || std::holds_alternative<Param>(g->node)) ? text : "(" + text + ")";
  };
  if (const auto* c = std::get_if<double>(&f.node)) return exact_number(*c);
  if (const auto* p = std::get_if<Param>(&f.node)) return "$" + p->name;
  if (const auto* ite = std::get_if<IfThenElse>(&f.node)) {
    std::string out = "if ";
    for (std::size_t i = 0; i < ite->condition.size(); ++i) {
      if (i > 0) out += " & ";
      if (!ite->condition[i].positive) out += '!';
      out += atom_text(sig, ite->condition[i].atom, names);
    }
    return out + " : " + nested(ite->then_branch) + " else : " + nested(ite->else_branch);
  }
  const auto& nor = std::get<NoisyOr>(f.node);
  return "noisy-or{ " + formula_text(sig, *nor.body, names) + " | " + names[static_cast<std::size_t>(nor.bound_var)] +
         " }";
}

inline std::string formula_text(const Signature& sig, const BoolFormula& f, const std::vector<std::string>& names,
                                int parent_precedence = 0) {
  // precedence: or 1, and 2, not/atom 3
  if (const auto* atom = std::get_if<Atom>(&f.node)) return atom_text(sig, *atom, names);
  if (const auto* neg = std::get_if<Not>(&f.node)) return "!" + formula_text(sig, *neg->operand, names, 3);
  const bool is_and = std::holds_alternative<And>(f.node);
  const auto& parts = is_and ? std::get<And>(f.node).operands : std::get<Or>(f.node).operands;
  const int precedence = is_and ? 2 : 1;
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += is_and ? " ^ " : " v ";
    // Nested operators of equal precedence keep their grouping.
    out += formula_text(sig, *parts[i], names, precedence + 1);
  }
  return parent_precedence > precedence ? "(" + out + ")" : out;
}

}  // namespace detail

inline std::string print_model(const RbnSpec& spec) {
  std::string out;
  for (const auto& rule : spec.rules) {
    const auto& rel = spec.signature[rule.relation];
    Atom head{rule.relation, {}, {}};
    for (int i = 0; i < rel.arity; ++i) head.vars.push_back(i);
    out += detail::atom_text(spec.signature, head, rule.var_names) + " <- " +
           detail::formula_text(spec.signature, *rule.formula, rule.var_names) + ";\n";
  }
  return out;
}

inline std::string print_model(const MlnSpec& spec) {
  std::string out;
  for (const auto& wf : spec.formulas) {
    out += detail::formula_text(spec.signature, *wf.formula, wf.var_names) + " :: " + detail::value_text(wf.weight) + ";\n";
  }
  return out;
}

inline std::string print_model(const ProblogSpec& spec) {
  std::string out;
  for (const auto& f : spec.facts) {
    out += detail::value_text(f.label) + " :: " + detail::atom_text(spec.signature, f.atom, f.var_names) + ".\n";
  }
  for (const auto& c : spec.clauses) {
    out += detail::atom_text(spec.signature, c.head, c.var_names);
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      out += (i == 0 ? " :- " : ", ") + detail::atom_text(spec.signature, c.body[i], c.var_names);
    }
    out += ".\n";
  }
  if (spec.observable.size() != spec.signature.size()) {
    for (std::size_t r : spec.observable) {
      out += "observable " + spec.signature[r].name + "/" + std::to_string(spec.signature[r].arity) + ".\n";
    }
  }
  return out;
}

inline std::string print_model(const ModelSpec& spec) {
  return std::visit([](const auto& s) { return print_model(s); }, spec);
}

}  // namespace srlproj
