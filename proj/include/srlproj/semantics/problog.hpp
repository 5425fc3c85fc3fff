#pragma once

#include <cmath>
#include <vector>

#include "srlproj/core/distribution.hpp"
#include "srlproj/lang/params.hpp"
#include "srlproj/semantics/mln.hpp"

namespace srlproj {

/// ProbLog program grounded over [n]. Each ground labeled fact is an
/// independent coin; a world is the least model of the true facts plus the
/// ground clauses.
class ProblogEngine {
 public:
  ProblogEngine(const ProblogSpec& spec, int n)
      : signature_(spec.signature), n_(n), params_(parameter_info(spec)), observable_(spec.observable) {
    if (n < 1) throw DimensionError("domain size must be at least 1");
    atom_count_ = signature_.atom_count(n);
    if (atom_count_ > 64) throw CapExceeded(atom_count_, 64);

    for (std::size_t i = 0; i < spec.facts.size(); ++i) {
      const auto& fact = spec.facts[i];
      detail::for_each_tuple(n, fact.var_names.size(), [&](const std::vector<int>& sub) {
        facts_.push_back({ground(fact.atom, sub), i});
      });
    }
    labels_.reserve(spec.facts.size());
    for (const auto& f : spec.facts) labels_.push_back(f.label);

    // Ground clauses in relation-dependency order so one sweep reaches the
    // fixpoint; the loop still iterates until nothing changes.
    std::vector<std::size_t> order = topological_relations(spec);
    for (std::size_t rel : order) {
      for (const auto& c : spec.clauses) {
        if (c.head.relation != rel) continue;
        detail::for_each_tuple(n, c.var_names.size(), [&](const std::vector<int>& sub) {
          GroundClause g{ground(c.head, sub), 0};
          for (const auto& b : c.body) g.body_mask |= Encoding{1} << ground(b, sub);
          clauses_.push_back(g);
        });
      }
    }
  }

  const Signature& signature() const { return signature_; }
  int domain_size() const { return n_; }
  std::size_t ground_fact_count() const { return facts_.size(); }

  Signature observable_signature() const {
    std::vector<Relation> rels;
    for (std::size_t r : observable_) rels.push_back(signature_[r]);
    return Signature(std::move(rels));
  }

  /// Least model containing `facts` (an encoding over the full signature).
  Encoding least_model(Encoding facts) const {
    Encoding bits = facts;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& g : clauses_) {
        const Encoding head = Encoding{1} << g.head;
        if (!(bits & head) && (bits & g.body_mask) == g.body_mask) {
          bits |= head;
          changed = true;
        }
      }
    }
    return bits;
  }

  /// Relations that are heads of labeled facts.
  std::vector<bool> fact_relations() const {
    std::vector<bool> out(signature_.size(), false);
    for (const auto& f : facts_) out[signature_.atom_at(f.atom, n_).relation] = true;
    return out;
  }

  const std::vector<Value>& labels() const { return labels_; }

  /// Ground fact instances as (atom index, labeled-fact index).
  std::vector<std::pair<std::uint64_t, std::size_t>> ground_facts() const {
    std::vector<std::pair<std::uint64_t, std::size_t>> out;
    for (const auto& f : facts_) out.emplace_back(f.atom, f.fact);
    return out;
  }

  Distribution distribution(const ParamVector& theta, bool project_to_observable) const {
    const auto values = resolve_parameters(params_, theta);
    require_within_cap(facts_.size());
    std::vector<double> prob(facts_.size());
    for (std::size_t i = 0; i < facts_.size(); ++i) {
      const auto& label = labels_[facts_[i].fact];
      if (const auto* c = std::get_if<double>(&label)) {
        prob[i] = *c;
      } else {
        for (std::size_t j = 0; j < params_.size(); ++j) {
          if (params_[j].name == std::get<Param>(label).name) prob[i] = values[j];
        }
      }
    }

    Signature out_sig = signature_;
    std::vector<std::size_t> kept(signature_.size());
    for (std::size_t r = 0; r < kept.size(); ++r) kept[r] = r;
    if (project_to_observable) {
      out_sig = observable_signature();
      kept = observable_;
    }
    const auto out_atoms = out_sig.atom_count(n_);
    require_within_cap(static_cast<std::size_t>(out_atoms));
    const auto gather = AtomGather::project(signature_, kept, n_);
    std::vector<double> table(std::size_t{1} << out_atoms, 0.0);

    // Depth-first over fact choices: fixed, deterministic summation order.
    const auto visit = [&](auto&& self, std::size_t depth, Encoding bits, double p) -> void {
      if (p == 0.0) return;
      if (depth == facts_.size()) {
        table[gather(least_model(bits))] += p;
        return;
      }
      self(self, depth + 1, bits, p * (1.0 - prob[depth]));
      self(self, depth + 1, bits | (Encoding{1} << facts_[depth].atom), p * prob[depth]);
    };
    visit(visit, 0, 0, 1.0);
    return Distribution(out_sig, n_, std::move(table));
  }

 private:
  struct GroundFact {
    std::uint64_t atom;
    std::size_t fact;
  };
  struct GroundClause {
    std::uint64_t head;
    Encoding body_mask;
  };

  std::uint64_t ground(const Atom& a, const std::vector<int>& sub) const {
    GroundAtom ga{a.relation, {}};
    for (int v : a.vars) ga.args.push_back(sub[static_cast<std::size_t>(v)]);
    return signature_.atom_index(ga, n_);
  }

  static std::vector<std::size_t> topological_relations(const ProblogSpec& spec) {
    const std::size_t r = spec.signature.size();
    std::vector<std::vector<std::size_t>> deps(r);
    for (const auto& c : spec.clauses) {
      for (const auto& b : c.body) deps[c.head.relation].push_back(b.relation);
    }
    std::vector<std::size_t> order;
    std::vector<bool> done(r, false);
    const auto visit = [&](auto&& self, std::size_t v) -> void {
      if (done[v]) return;
      done[v] = true;
      for (std::size_t w : deps[v]) self(self, w);
      order.push_back(v);
    };
    for (std::size_t v = 0; v < r; ++v) visit(visit, v);
    return order;
  }

  Signature signature_;
  int n_;
  std::vector<ParamInfo> params_;
  std::vector<std::size_t> observable_;
  std::uint64_t atom_count_ = 0;
  std::vector<GroundFact> facts_;
  std::vector<Value> labels_;
  std::vector<GroundClause> clauses_;
};

inline Distribution problog_distribution(const ProblogSpec& spec, int n, const ParamVector& theta,
                                         bool project_to_observable) {
  return ProblogEngine(spec, n).distribution(theta, project_to_observable);
}

}  // namespace srlproj
