#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "srlproj/core/signature.hpp"
#include "srlproj/errors.hpp"

namespace srlproj {

enum class Dialect { kRbn, kMln, kProblog };

inline const char* dialect_name(Dialect d) {
  switch (d) {
    case Dialect::kRbn: return "rbn";
    case Dialect::kMln: return "mln";
    case Dialect::kProblog: return "problog";
  }
  return "?";
}

/// Named parameter assignment θ.
using ParamVector = std::map<std::string, double>;

struct Param {
  std::string name;
  friend bool operator==(const Param&, const Param&) = default;
};

/// A probability, label or weight: either a constant or a free parameter.
using Value = std::variant<double, Param>;

/// Atom over rule-local variables; `vars` index the rule's variable table.
struct Atom {
  std::size_t relation = 0;
  std::vector<int> vars;
  SourceLoc loc;
};

struct Literal {
  Atom atom;
  bool positive = true;
};

// ---------------------------------------------------------------- RBN

struct ProbFormula;
using ProbFormulaPtr = std::shared_ptr<const ProbFormula>;

struct IfThenElse {
  std::vector<Literal> condition;  // conjunction
  ProbFormulaPtr then_branch;
  ProbFormulaPtr else_branch;
};

/// 1 - prod over y in [n] of (1 - body[bound_var := y]).
struct NoisyOr {
  ProbFormulaPtr body;
  int bound_var = 0;
};

struct ProbFormula {
  std::variant<double, Param, IfThenElse, NoisyOr> node;
  SourceLoc loc;
};

struct RbnRule {
  std::size_t relation = 0;
  // Head variables occupy slots 0..arity-1, noisy-or bound variables follow.
  std::vector<std::string> var_names;
  ProbFormulaPtr formula;
  SourceLoc loc;
};

/// rules[i] defines signature relation i; rules only reference relations
/// with smaller index.
struct RbnSpec {
  Signature signature;
  std::vector<RbnRule> rules;
};

// ---------------------------------------------------------------- MLN

struct BoolFormula;
using BoolFormulaPtr = std::shared_ptr<const BoolFormula>;

struct Not {
  BoolFormulaPtr operand;
};
struct And {
  std::vector<BoolFormulaPtr> operands;
};
struct Or {
  std::vector<BoolFormulaPtr> operands;
};

struct BoolFormula {
  std::variant<Atom, Not, And, Or> node;
};

struct WeightedFormula {
  BoolFormulaPtr formula;
  Value weight;
  std::vector<std::string> var_names;  // in order of first occurrence
  SourceLoc loc;
};

struct MlnSpec {
  Signature signature;
  std::vector<WeightedFormula> formulas;
};

// ---------------------------------------------------------------- ProbLog

struct LabeledFact {
  Value label;
  Atom atom;
  std::vector<std::string> var_names;
  SourceLoc loc;
};

struct Clause {
  Atom head;
  std::vector<Atom> body;
  std::vector<std::string> var_names;  // head variables first
  SourceLoc loc;
};

struct ProblogSpec {
  Signature signature;
  std::vector<LabeledFact> facts;
  std::vector<Clause> clauses;
  std::vector<std::size_t> observable;  // ascending relation indices
};

using ModelSpec = std::variant<RbnSpec, MlnSpec, ProblogSpec>;

inline Dialect dialect_of(const ModelSpec& spec) { return static_cast<Dialect>(spec.index()); }

inline const Signature& signature_of(const ModelSpec& spec) {
  return std::visit([](const auto& s) -> const Signature& { return s.signature; }, spec);
}

// ------------------------------------------------- structural equality

inline bool same_atom(const Atom& a, const Atom& b) { return a.relation == b.relation && a.vars == b.vars; }

inline bool same_literals(const std::vector<Literal>& a, const std::vector<Literal>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].positive != b[i].positive || !same_atom(a[i].atom, b[i].atom)) return false;
  }
  return true;
}

inline bool same_structure(const ProbFormula& a, const ProbFormula& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* c = std::get_if<double>(&a.node)) return *c == std::get<double>(b.node);
  if (const auto* p = std::get_if<Param>(&a.node)) return *p == std::get<Param>(b.node);
  if (const auto* ite = std::get_if<IfThenElse>(&a.node)) {
    const auto& other = std::get<IfThenElse>(b.node);
    return same_literals(ite->condition, other.condition) && same_structure(*ite->then_branch, *other.then_branch) &&
           same_structure(*ite->else_branch, *other.else_branch);
  }
  const auto& x = std::get<NoisyOr>(a.node);
  const auto& y = std::get<NoisyOr>(b.node);
  return x.bound_var == y.bound_var && same_structure(*x.body, *y.body);
}

inline bool same_structure(const BoolFormula& a, const BoolFormula& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* atom = std::get_if<Atom>(&a.node)) return same_atom(*atom, std::get<Atom>(b.node));
  if (const auto* neg = std::get_if<Not>(&a.node)) return same_structure(*neg->operand, *std::get<Not>(b.node).operand);
  const auto& xs = a.node.index() == 2 ? std::get<And>(a.node).operands : std::get<Or>(a.node).operands;
  const auto& ys = b.node.index() == 2 ? std::get<And>(b.node).operands : std::get<Or>(b.node).operands;
  if (xs.size() != ys.size()) return false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!same_structure(*xs[i], *ys[i])) return false;
  }
  return true;
}

inline bool same_structure(const RbnSpec& a, const RbnSpec& b) {
  if (!(a.signature == b.signature) || a.rules.size() != b.rules.size()) return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    if (a.rules[i].relation != b.rules[i].relation || !same_structure(*a.rules[i].formula, *b.rules[i].formula)) {
      return false;
    }
  }
  return true;
}

inline bool same_structure(const MlnSpec& a, const MlnSpec& b) {
  if (!(a.signature == b.signature) || a.formulas.size() != b.formulas.size()) return false;
  for (std::size_t i = 0; i < a.formulas.size(); ++i) {
    if (!(a.formulas[i].weight == b.formulas[i].weight) || !same_structure(*a.formulas[i].formula, *b.formulas[i].formula)) {
      return false;
    }
  }
  return true;
}

inline bool same_structure(const ProblogSpec& a, const ProblogSpec& b) {
  if (!(a.signature == b.signature) || a.facts.size() != b.facts.size() || a.clauses.size() != b.clauses.size() ||
      a.observable != b.observable) {
    return false;
  }
  for (std::size_t i = 0; i < a.facts.size(); ++i) {
    if (!(a.facts[i].label == b.facts[i].label) || !same_atom(a.facts[i].atom, b.facts[i].atom)) return false;
  }
  for (std::size_t i = 0; i < a.clauses.size(); ++i) {
    const auto& x = a.clauses[i];
    const auto& y = b.clauses[i];
    if (!same_atom(x.head, y.head) || x.body.size() != y.body.size()) return false;
    for (std::size_t j = 0; j < x.body.size(); ++j) {
      if (!same_atom(x.body[j], y.body[j])) return false;
    }
  }
  return true;
}

inline bool same_structure(const ModelSpec& a, const ModelSpec& b) {
  if (a.index() != b.index()) return false;
  return std::visit([&](const auto& x) { return same_structure(x, std::get<std::decay_t<decltype(x)>>(b)); }, a);
}

}  // namespace srlproj
