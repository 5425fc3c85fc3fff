#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <optional>
#include <string>
#include <string_view>

#include "srlproj/lang/ast.hpp"
#include "srlproj/lang/lexer.hpp"

namespace srlproj {

namespace detail {

class RelationTable {
 public:
  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < relations_.size(); ++i) {
      if (relations_[i].name == name) return i;
    }
    return std::nullopt;
  }

  std::size_t intern(const std::string& name, int arity, SourceLoc loc) {
    if (const auto i = find(name)) {
      check_arity(*i, arity, loc);
      return *i;
    }
    relations_.push_back({name, arity});
    return relations_.size() - 1;
  }

  void check_arity(std::size_t i, int arity, SourceLoc loc) const {
    if (relations_[i].arity != arity) {
      throw ArityError("'" + relations_[i].name + "' used with " + std::to_string(arity) + " arguments, declared with " +
                           std::to_string(relations_[i].arity),
                       loc);
    }
  }

  const std::vector<Relation>& relations() const { return relations_; }

 private:
  std::vector<Relation> relations_;
};

/// Variable table of one rule/formula.
class VarScope {
 public:
  explicit VarScope(std::vector<std::string>& names) : names_(names) {}

  std::optional<int> lookup(const std::string& name) const {
    for (auto it = visible_.rbegin(); it != visible_.rend(); ++it) {
      if (names_[static_cast<std::size_t>(*it)] == name) return *it;
    }
    return std::nullopt;
  }

  int add(const std::string& name) {
    names_.push_back(name);
    visible_.push_back(static_cast<int>(names_.size()) - 1);
    return visible_.back();
  }

  int lookup_or_add(const std::string& name) {
    if (const auto v = lookup(name)) return *v;
    return add(name);
  }

  void hide_last() { visible_.pop_back(); }

 private:
  std::vector<std::string>& names_;
  std::vector<int> visible_;
};

struct RawAtom {
  std::string name;
  std::vector<std::string> args;
  SourceLoc loc;
};

inline bool is_keyword(const std::string& s) {
  return s == "if" || s == "else" || s == "noisy-or" || s == "observable";
}

inline RawAtom parse_raw_atom(TokenStream& ts) {
  const auto& head = ts.expect(TokenKind::kIdent, "relation name");
  if (is_keyword(head.text)) throw SyntaxError("keyword '" + head.text + "' used as relation name", head.loc);
  RawAtom atom{head.text, {}, head.loc};
  if (!ts.accept_punct("(")) return atom;
  if (ts.accept_punct(")")) return atom;
  do {
    const auto& arg = ts.peek();
    if (arg.kind == TokenKind::kIdent || arg.kind == TokenKind::kNumber) {
      throw SyntaxError("domain constant '" + arg.text + "' not allowed; arguments must be variables", arg.loc);
    }
    atom.args.push_back(ts.expect(TokenKind::kVariable, "variable").text);
  } while (ts.accept_punct(","));
  ts.expect_punct(")");
  return atom;
}

inline double parse_number(TokenStream& ts) {
  const bool negative = ts.accept_punct("-");
  const auto& tok = ts.expect(TokenKind::kNumber, "number");
  try {
    const double v = std::stod(tok.text);
    return negative ? -v : v;
  } catch (const std::exception&) {
    throw SyntaxError("malformed number '" + tok.text + "'", tok.loc);
  }
}

// number | $name | bare lower-case name
inline Value parse_value(TokenStream& ts, bool probability) {
  const auto loc = ts.peek().loc;
  if (ts.peek().kind == TokenKind::kDollar) return Param{ts.next().text};
  if (ts.peek().kind == TokenKind::kIdent && !is_keyword(ts.peek().text) && !ts.is_punct("(", 1)) {
    return Param{ts.next().text};
  }
  const double v = parse_number(ts);
  if (probability && !(v >= 0.0 && v <= 1.0)) throw SyntaxError("probability " + std::to_string(v) + " outside [0,1]", loc);
  return v;
}

// Statement terminator; optional after the last statement.
inline void expect_terminator(TokenStream& ts, std::string_view term) {
  if (ts.at_end()) return;
  ts.expect_punct(term);
}

// ------------------------------------------------------------------ RBN

class RbnParser {
 public:
  explicit RbnParser(std::string_view text) : ts_(tokenize(text)) {}

  RbnSpec parse() {
    std::vector<RbnRule> rules;
    while (!ts_.at_end()) rules.push_back(parse_rule());
    if (forward_ref_) {
      const auto& [name, loc] = *forward_ref_;
      if (table_.find(name)) throw StratificationError("'" + name + "' referenced before its definition", loc);
      throw SyntaxError("undefined relation '" + name + "'", loc);
    }
    for (const auto& [name, arity, loc] : pending_arity_) table_.check_arity(*table_.find(name), arity, loc);
    return RbnSpec{Signature(table_.relations()), std::move(rules)};
  }

 private:
  RbnRule parse_rule() {
    const auto head = parse_raw_atom(ts_);
    if (table_.find(head.name)) throw SyntaxError("relation '" + head.name + "' defined twice", head.loc);
    RbnRule rule;
    rule.loc = head.loc;
    VarScope scope(rule.var_names);
    for (const auto& v : head.args) {
      if (scope.lookup(v)) throw SyntaxError("repeated head variable '" + v + "'", head.loc);
      scope.add(v);
    }
    current_ = head.name;
    ts_.expect_punct("<-");
    rule.formula = parse_formula(scope, false);
    expect_terminator(ts_, ";");
    rule.relation = table_.intern(head.name, static_cast<int>(head.args.size()), head.loc);
    current_.clear();
    return rule;
  }

  ProbFormulaPtr parse_formula(VarScope& scope, bool inside_noisy_or) {
    const auto loc = ts_.peek().loc;
    if (ts_.accept_punct("(")) {
      auto inner = parse_formula(scope, inside_noisy_or);
      ts_.expect_punct(")");
      return inner;
    }
    if (ts_.accept_keyword("if")) {
      IfThenElse ite;
      ite.condition = parse_conjunction(scope);
      ts_.expect_punct(":");
      ite.then_branch = parse_formula(scope, inside_noisy_or);
      if (ts_.accept_keyword("else")) {
        ts_.accept_punct(":");
        ite.else_branch = parse_formula(scope, inside_noisy_or);
      } else if (inside_noisy_or) {
        ite.else_branch = std::make_shared<const ProbFormula>(ProbFormula{0.0, ts_.peek().loc});
      } else {
        ts_.fail("expected 'else'");
      }
      return std::make_shared<const ProbFormula>(ProbFormula{std::move(ite), loc});
    }
    if (ts_.accept_keyword("noisy-or")) {
      ts_.expect_punct("{");
      const auto bound = find_bound_variable();
      if (scope.lookup(bound.text)) {
        throw SyntaxError("noisy-or variable '" + bound.text + "' already bound", bound.loc);
      }
      NoisyOr nor;
      nor.bound_var = scope.add(bound.text);
      nor.body = parse_formula(scope, true);
      scope.hide_last();
      ts_.expect_punct("|");
      ts_.expect(TokenKind::kVariable, "variable");
      ts_.expect_punct("}");
      return std::make_shared<const ProbFormula>(ProbFormula{std::move(nor), loc});
    }
    return std::make_shared<const ProbFormula>(ProbFormula{std::visit([](auto v) -> decltype(ProbFormula::node) { return v; },
                                                                      parse_value(ts_, true)),
                                                           loc});
  }

  // The variable after the '|' that closes the current noisy-or.
  Token find_bound_variable() const {
    int depth = 0;
    for (std::size_t k = 0;; ++k) {
      const auto& t = ts_.peek(k);
      if (t.kind == TokenKind::kEnd) ts_.fail("unterminated noisy-or");
      if (t.kind != TokenKind::kPunct) continue;
      if (t.text == "{") ++depth;
      if (t.text == "}") --depth;
      if (t.text == "|" && depth == 0) {
        const auto& var = ts_.peek(k + 1);
        if (var.kind != TokenKind::kVariable) throw SyntaxError("expected variable after '|'", var.loc);
        return var;
      }
    }
  }

  std::vector<Literal> parse_conjunction(VarScope& scope) {
    std::vector<Literal> lits;
    do {
      Literal lit;
      lit.positive = !ts_.accept_punct("!");
      const auto raw = parse_raw_atom(ts_);
      lit.atom.loc = raw.loc;
      lit.atom.relation = resolve(raw);
      for (const auto& v : raw.args) {
        const auto slot = scope.lookup(v);
        if (!slot) throw SyntaxError("variable '" + v + "' is neither a head variable nor a noisy-or variable", raw.loc);
        lit.atom.vars.push_back(*slot);
      }
      lits.push_back(std::move(lit));
    } while (ts_.accept_punct("&"));
    return lits;
  }

  std::size_t resolve(const RawAtom& raw) {
    if (raw.name == current_) throw StratificationError("'" + raw.name + "' refers to itself", raw.loc);
    if (const auto i = table_.find(raw.name)) {
      table_.check_arity(*i, static_cast<int>(raw.args.size()), raw.loc);
      return *i;
    }
    if (!forward_ref_) forward_ref_ = std::make_pair(raw.name, raw.loc);
    pending_arity_.emplace_back(raw.name, static_cast<int>(raw.args.size()), raw.loc);
    return static_cast<std::size_t>(-1);
  }

  TokenStream ts_;
  RelationTable table_;
  std::string current_;
  std::optional<std::pair<std::string, SourceLoc>> forward_ref_;
  std::vector<std::tuple<std::string, int, SourceLoc>> pending_arity_;
};

// ------------------------------------------------------------------ MLN

class MlnParser {
 public:
  explicit MlnParser(std::string_view text) : ts_(tokenize(text)) {}

  MlnSpec parse() {
    std::vector<WeightedFormula> formulas;
    while (!ts_.at_end()) {
      WeightedFormula wf;
      wf.loc = ts_.peek().loc;
      VarScope scope(wf.var_names);
      wf.formula = parse_disjunction(scope);
      ts_.expect_punct("::");
      wf.weight = parse_value(ts_, false);
      expect_terminator(ts_, ";");
      formulas.push_back(std::move(wf));
    }
    return MlnSpec{Signature(table_.relations()), std::move(formulas)};
  }

 private:
  BoolFormulaPtr parse_disjunction(VarScope& scope) {
    std::vector<BoolFormulaPtr> parts{parse_conjunction(scope)};
    while (ts_.accept_keyword("v")) parts.push_back(parse_conjunction(scope));
    if (parts.size() == 1) return parts.front();
    return std::make_shared<const BoolFormula>(BoolFormula{Or{std::move(parts)}});
  }

  BoolFormulaPtr parse_conjunction(VarScope& scope) {
    std::vector<BoolFormulaPtr> parts{parse_unary(scope)};
    while (ts_.accept_punct("^") || ts_.accept_punct(",")) parts.push_back(parse_unary(scope));
    if (parts.size() == 1) return parts.front();
    return std::make_shared<const BoolFormula>(BoolFormula{And{std::move(parts)}});
  }

  BoolFormulaPtr parse_unary(VarScope& scope) {
    if (ts_.accept_punct("!")) return std::make_shared<const BoolFormula>(BoolFormula{Not{parse_unary(scope)}});
    if (ts_.accept_punct("(")) {
      auto inner = parse_disjunction(scope);
      ts_.expect_punct(")");
      return inner;
    }
    const auto raw = parse_raw_atom(ts_);
    Atom atom;
    atom.loc = raw.loc;
    atom.relation = table_.intern(raw.name, static_cast<int>(raw.args.size()), raw.loc);
    for (const auto& v : raw.args) atom.vars.push_back(scope.lookup_or_add(v));
    return std::make_shared<const BoolFormula>(BoolFormula{std::move(atom)});
  }

  TokenStream ts_;
  RelationTable table_;
};

// -------------------------------------------------------------- ProbLog

class ProblogParser {
 public:
  explicit ProblogParser(std::string_view text) : ts_(tokenize(text)) {}

  ProblogSpec parse() {
    ProblogSpec spec;
    std::vector<std::pair<std::size_t, SourceLoc>> declared;
    while (!ts_.at_end()) {
      const auto loc = ts_.peek().loc;
      if (ts_.is_keyword("observable") && ts_.peek(1).kind == TokenKind::kIdent) {
        ts_.next();
        const auto& name = ts_.next();
        ts_.expect_punct("/");
        const auto& arity = ts_.expect(TokenKind::kNumber, "arity");
        if (arity.text.find_first_not_of("0123456789") != std::string::npos) {
          throw SyntaxError("arity must be a non-negative integer", arity.loc);
        }
        declared.emplace_back(table_.intern(name.text, std::stoi(arity.text), name.loc), name.loc);
        ts_.expect_punct(".");
        continue;
      }
      const bool labeled = ts_.peek().kind == TokenKind::kNumber || ts_.peek().kind == TokenKind::kDollar ||
                           ts_.is_punct("-") || (ts_.peek().kind == TokenKind::kIdent && ts_.is_punct("::", 1));
      if (labeled) {
        LabeledFact fact;
        fact.loc = loc;
        fact.label = parse_value(ts_, true);
        ts_.expect_punct("::");
        VarScope scope(fact.var_names);
        fact.atom = resolve(parse_raw_atom(ts_), scope);
        ts_.expect_punct(".");
        spec.facts.push_back(std::move(fact));
        continue;
      }
      Clause clause;
      clause.loc = loc;
      VarScope scope(clause.var_names);
      clause.head = resolve(parse_raw_atom(ts_), scope);
      if (ts_.accept_punct(":-")) {
        do {
          clause.body.push_back(resolve(parse_raw_atom(ts_), scope));
        } while (ts_.accept_punct(","));
      }
      ts_.expect_punct(".");
      spec.clauses.push_back(std::move(clause));
    }
    canonicalize_order(spec, declared);

    std::vector<int> role(spec.signature.size(), 0);  // 1 fact, 2 clause head
    for (const auto& f : spec.facts) role[f.atom.relation] |= 1;
    for (const auto& c : spec.clauses) {
      role[c.head.relation] |= 2;
      if (role[c.head.relation] == 3) {
        throw SyntaxError("'" + spec.signature[c.head.relation].name + "' is both a labeled fact and a clause head",
                          c.loc);
      }
    }
    check_acyclic(spec);

    if (declared.empty()) {
      for (std::size_t i = 0; i < spec.signature.size(); ++i) spec.observable.push_back(i);
    } else {
      for (const auto& d : declared) spec.observable.push_back(d.first);
      std::sort(spec.observable.begin(), spec.observable.end());
      spec.observable.erase(std::unique(spec.observable.begin(), spec.observable.end()), spec.observable.end());
    }
    return spec;
  }

 private:
  Atom resolve(const RawAtom& raw, VarScope& scope) {
    Atom atom;
    atom.loc = raw.loc;
    atom.relation = table_.intern(raw.name, static_cast<int>(raw.args.size()), raw.loc);
    for (const auto& v : raw.args) atom.vars.push_back(scope.lookup_or_add(v));
    return atom;
  }

  // Signature order: first appearance among facts, then clauses, then
  // observable declarations, so that printing preserves it.
  void canonicalize_order(ProblogSpec& spec, std::vector<std::pair<std::size_t, SourceLoc>>& declared) const {
    const auto& rels = table_.relations();
    std::vector<std::size_t> order;
    std::vector<std::size_t> new_index(rels.size(), rels.size());
    const auto touch = [&](std::size_t r) {
      if (new_index[r] == rels.size()) {
        new_index[r] = order.size();
        order.push_back(r);
      }
    };
    for (const auto& f : spec.facts) touch(f.atom.relation);
    for (const auto& c : spec.clauses) {
      touch(c.head.relation);
      for (const auto& b : c.body) touch(b.relation);
    }
    for (const auto& d : declared) touch(d.first);
    for (auto& f : spec.facts) f.atom.relation = new_index[f.atom.relation];
    for (auto& c : spec.clauses) {
      c.head.relation = new_index[c.head.relation];
      for (auto& b : c.body) b.relation = new_index[b.relation];
    }
    for (auto& d : declared) d.first = new_index[d.first];
    std::vector<Relation> reordered;
    for (std::size_t r : order) reordered.push_back(rels[r]);
    spec.signature = Signature(std::move(reordered));
  }

  static void check_acyclic(const ProblogSpec& spec) {
    const std::size_t r = spec.signature.size();
    std::vector<std::vector<std::pair<std::size_t, SourceLoc>>> deps(r);
    for (const auto& c : spec.clauses) {
      for (const auto& b : c.body) deps[c.head.relation].emplace_back(b.relation, c.loc);
    }
    std::vector<int> state(r, 0);
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
      state[v] = 1;
      for (const auto& [w, loc] : deps[v]) {
        if (state[w] == 1) {
          throw StratificationError("clause dependency cycle through '" + spec.signature[w].name + "'", loc);
        }
        if (state[w] == 0) visit(w);
      }
      state[v] = 2;
    };
    for (std::size_t v = 0; v < r; ++v) {
      if (state[v] == 0) visit(v);
    }
  }

  TokenStream ts_;
  RelationTable table_;
};

}  // namespace detail

inline RbnSpec parse_rbn(std::string_view text) { return detail::RbnParser(text).parse(); }
inline MlnSpec parse_mln(std::string_view text) { return detail::MlnParser(text).parse(); }
inline ProblogSpec parse_problog(std::string_view text) { return detail::ProblogParser(text).parse(); }

inline ModelSpec parse_model(std::string_view text, Dialect dialect) {
  switch (dialect) {
    case Dialect::kRbn: return parse_rbn(text);
    case Dialect::kMln: return parse_mln(text);
    case Dialect::kProblog: return parse_problog(text);
  }
  throw InvalidArgument("unknown dialect");
}

inline std::optional<Dialect> dialect_from_name(std::string_view name) {
  if (name == "rbn") return Dialect::kRbn;
  if (name == "mln") return Dialect::kMln;
  if (name == "problog" || name == "plp") return Dialect::kProblog;
  return std::nullopt;
}

/// Dialect implied by a `.rbn`, `.mln` or `.plp` file name.
inline std::optional<Dialect> dialect_from_path(std::string_view path) {
  const auto dot = path.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  return dialect_from_name(path.substr(dot + 1));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Reads a model file; the dialect defaults to the one implied by the
/// file extension.
inline ModelSpec load_model_file(const std::string& path, std::optional<Dialect> dialect = std::nullopt) {
  if (!dialect) dialect = dialect_from_path(path);
  if (!dialect) throw InvalidArgument("cannot infer dialect of '" + path + "'; use .rbn, .mln or .plp");
  return parse_model(read_text_file(path), *dialect);
}

}  // namespace srlproj
