#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "srlproj/core/distribution.hpp"
#include "srlproj/lang/params.hpp"

namespace srlproj {

/// RBN grounded over [n]. Each ground atom's probability is evaluated from
/// the truth values of atoms of earlier relations, which precede it in
/// canonical order, so Q^(n) is built by the chain rule one atom at a time.
class RbnEngine {
 public:
  RbnEngine(const RbnSpec& spec, int n) : signature_(spec.signature), n_(n), params_(parameter_info(spec)) {
    if (n < 1) throw DimensionError("domain size must be at least 1");
    atom_count_ = signature_.atom_count(n);
    if (atom_count_ > 64) throw CapExceeded(atom_count_, 64);
    for (const auto& rule : spec.rules) {
      Compiled c;
      c.slots = rule.var_names.size();
      c.root = compile(*rule.formula, c);
      rules_.push_back(std::move(c));
    }
    atom_relation_.reserve(atom_count_);
    for (std::size_t r = 0; r < signature_.size(); ++r) {
      const auto count = int_pow(static_cast<std::uint64_t>(n), signature_[r].arity);
      for (std::uint64_t i = 0; i < count; ++i) atom_relation_.push_back(r);
    }
  }

  const Signature& signature() const { return signature_; }
  int domain_size() const { return n_; }
  const std::vector<ParamInfo>& parameters() const { return params_; }

  /// P(atom true | earlier atoms as in `bits`).
  double atom_probability(std::uint64_t atom, Encoding bits, std::span<const double> values) const {
    const auto rel = atom_relation_[atom];
    const auto& rule = rules_[rel];
    int binding[kMaxSlots];
    auto local = atom - signature_.offset(rel, n_);
    for (int j = signature_[rel].arity - 1; j >= 0; --j) {
      binding[j] = static_cast<int>(local % static_cast<std::uint64_t>(n_));
      local /= static_cast<std::uint64_t>(n_);
    }
    return eval(rule, rule.root, bits, binding, values);
  }

  Distribution distribution(const ParamVector& theta) const {
    require_within_cap(static_cast<std::size_t>(atom_count_));
    const auto values = resolve_parameters(params_, theta);
    std::vector<double> table(std::size_t{1} << atom_count_);
    table[0] = 1.0;
    for (std::uint64_t a = 0; a < atom_count_; ++a) {
      const std::size_t half = std::size_t{1} << a;
      for (std::size_t w = 0; w < half; ++w) {
        const double p = atom_probability(a, w, values);
        table[w | half] = table[w] * p;
        table[w] *= 1.0 - p;
      }
    }
    return Distribution(signature_, n_, std::move(table));
  }

  /// log Q(ω) without enumerating Ω^(n).
  double log_probability(Encoding world, const ParamVector& theta) const {
    const auto values = resolve_parameters(params_, theta);
    double total = 0.0;
    for (std::uint64_t a = 0; a < atom_count_; ++a) {
      const double p = atom_probability(a, world, values);
      total += std::log((world >> a & 1U) ? p : 1.0 - p);
    }
    return total;
  }

 private:
  static constexpr int kMaxSlots = 16;

  struct Lit {
    std::uint64_t offset;
    std::vector<int> vars;
    bool positive;
  };

  struct Node {
    enum class Kind { kConst, kParam, kIte, kNoisyOr } kind = Kind::kConst;
    double value = 0.0;
    std::size_t param = 0;
    std::vector<Lit> condition;
    int first = -1;   // then-branch or noisy-or body
    int second = -1;  // else-branch
    int bound = -1;
  };

  struct Compiled {
    std::vector<Node> nodes;
    int root = -1;
    std::size_t slots = 0;
  };

  int compile(const ProbFormula& f, Compiled& c) const {
    if (c.slots > kMaxSlots) throw InvalidArgument("too many variables in RBN formula");
    Node node;
    if (const auto* v = std::get_if<double>(&f.node)) {
      node.value = *v;
    } else if (const auto* p = std::get_if<Param>(&f.node)) {
      node.kind = Node::Kind::kParam;
      for (std::size_t i = 0; i < params_.size(); ++i) {
        if (params_[i].name == p->name) node.param = i;
      }
    } else if (const auto* ite = std::get_if<IfThenElse>(&f.node)) {
      node.kind = Node::Kind::kIte;
      for (const auto& lit : ite->condition) {
        node.condition.push_back({signature_.offset(lit.atom.relation, n_), lit.atom.vars, lit.positive});
      }
      node.first = compile(*ite->then_branch, c);
      node.second = compile(*ite->else_branch, c);
    } else {
      const auto& nor = std::get<NoisyOr>(f.node);
      node.kind = Node::Kind::kNoisyOr;
      node.bound = nor.bound_var;
      node.first = compile(*nor.body, c);
    }
    c.nodes.push_back(std::move(node));
    return static_cast<int>(c.nodes.size()) - 1;
  }

  double eval(const Compiled& c, int index, Encoding bits, int* binding, std::span<const double> values) const {
    const Node& node = c.nodes[static_cast<std::size_t>(index)];
    switch (node.kind) {
      case Node::Kind::kConst: return node.value;
      case Node::Kind::kParam: return values[node.param];
      case Node::Kind::kIte: {
        for (const auto& lit : node.condition) {
          std::uint64_t local = 0;
          for (int v : lit.vars) local = local * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(binding[v]);
          const bool truth = (bits >> (lit.offset + local)) & 1U;
          if (truth != lit.positive) return eval(c, node.second, bits, binding, values);
        }
        return eval(c, node.first, bits, binding, values);
      }
      case Node::Kind::kNoisyOr: {
        double none = 1.0;
        for (int y = 0; y < n_; ++y) {
          binding[node.bound] = y;
          none *= 1.0 - eval(c, node.first, bits, binding, values);
        }
        return 1.0 - none;
      }
    }
    return 0.0;
  }

  Signature signature_;
  int n_;
  std::vector<ParamInfo> params_;
  std::uint64_t atom_count_ = 0;
  std::vector<Compiled> rules_;
  std::vector<std::size_t> atom_relation_;
};

inline Distribution rbn_distribution(const RbnSpec& spec, int n, const ParamVector& theta) {
  require_within_cap(static_cast<std::size_t>(spec.signature.atom_count(n)));
  return RbnEngine(spec, n).distribution(theta);
}

}  // namespace srlproj
