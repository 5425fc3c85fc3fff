#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "srlproj/core/distribution.hpp"
#include "srlproj/lang/params.hpp"

namespace srlproj {

namespace detail {

inline bool eval_bool(const BoolFormula& f, const std::function<bool(const Atom&)>& truth) {
  if (const auto* atom = std::get_if<Atom>(&f.node)) return truth(*atom);
  if (const auto* neg = std::get_if<Not>(&f.node)) return !eval_bool(*neg->operand, truth);
  if (const auto* conj = std::get_if<And>(&f.node)) {
    return std::all_of(conj->operands.begin(), conj->operands.end(), [&](const auto& g) { return eval_bool(*g, truth); });
  }
  const auto& disj = std::get<Or>(f.node);
  return std::any_of(disj.operands.begin(), disj.operands.end(), [&](const auto& g) { return eval_bool(*g, truth); });
}

// Calls `visit` with every tuple in [n]^k, lexicographically.
inline void for_each_tuple(int n, std::size_t k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> t(k, 0);
  while (true) {
    visit(t);
    std::size_t j = k;
    while (j > 0 && t[j - 1] == n - 1) t[--j] = 0;
    if (j == 0) return;
    ++t[j - 1];
  }
}

}  // namespace detail

/// MLN grounded over [n]. Substitutions range over all of [n]^v, repeated
/// elements included. The per-world formula counts N_i(ω) are tabulated
/// once; distributions for any weight vector then cost one pass.
class MlnEngine {
 public:
  MlnEngine(const MlnSpec& spec, int n) : signature_(spec.signature), n_(n), params_(parameter_info(spec)) {
    if (n < 1) throw DimensionError("domain size must be at least 1");
    atom_count_ = signature_.atom_count(n);
    require_within_cap(static_cast<std::size_t>(atom_count_));
    for (const auto& wf : spec.formulas) weights_.push_back(wf.weight);
    std::vector<GroundFormula> ground;
    for (std::size_t i = 0; i < spec.formulas.size(); ++i) ground_formula(spec.formulas[i], i, ground);

    const std::size_t worlds = std::size_t{1} << atom_count_;
    counts_.assign(worlds * formula_count(), 0);
    for (std::size_t w = 0; w < worlds; ++w) {
      auto* row = &counts_[w * formula_count()];
      for (const auto& g : ground) {
        std::size_t idx = 0;
        for (std::size_t b = 0; b < g.atoms.size(); ++b) idx |= ((w >> g.atoms[b]) & 1U) << b;
        row[g.formula] += g.table[idx];
      }
    }
  }

  const Signature& signature() const { return signature_; }
  int domain_size() const { return n_; }
  std::size_t formula_count() const { return weights_.size(); }

  /// N_i(ω): number of true groundings of formula i.
  std::vector<int> counts(Encoding world) const {
    const auto* row = &counts_[world * formula_count()];
    return {row, row + formula_count()};
  }

  std::vector<double> log_weights(const ParamVector& theta) const {
    const auto values = resolve_parameters(params_, theta);
    std::vector<double> w(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (const auto* c = std::get_if<double>(&weights_[i])) {
        w[i] = *c;
      } else {
        const auto& name = std::get<Param>(weights_[i]).name;
        for (std::size_t j = 0; j < params_.size(); ++j) {
          if (params_[j].name == name) w[i] = values[j];
        }
      }
    }
    const std::size_t worlds = std::size_t{1} << atom_count_;
    std::vector<double> out(worlds, 0.0);
    for (std::size_t e = 0; e < worlds; ++e) {
      const auto* row = &counts_[e * formula_count()];
      double s = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * row[i];
      out[e] = s;
    }
    return out;
  }

  Distribution distribution(const ParamVector& theta) const {
    auto lw = log_weights(theta);
    const double top = *std::max_element(lw.begin(), lw.end());
    double z = 0.0;
    for (double& x : lw) z += (x = std::exp(x - top));
    for (double& x : lw) x /= z;
    return Distribution(signature_, n_, std::move(lw));
  }

 private:
  struct GroundFormula {
    std::size_t formula;
    std::vector<std::uint64_t> atoms;  // distinct atom indices
    std::vector<std::uint8_t> table;   // truth value per assignment to `atoms`
  };

  void ground_formula(const WeightedFormula& wf, std::size_t index, std::vector<GroundFormula>& out) const {
    detail::for_each_tuple(n_, wf.var_names.size(), [&](const std::vector<int>& sub) {
      GroundFormula g{index, {}, {}};
      const auto atom_of = [&](const Atom& a) {
        GroundAtom ga{a.relation, {}};
        for (int v : a.vars) ga.args.push_back(sub[static_cast<std::size_t>(v)]);
        return signature_.atom_index(ga, n_);
      };
      std::function<void(const BoolFormula&)> collect = [&](const BoolFormula& f) {
        if (const auto* a = std::get_if<Atom>(&f.node)) {
          const auto idx = atom_of(*a);
          if (std::find(g.atoms.begin(), g.atoms.end(), idx) == g.atoms.end()) g.atoms.push_back(idx);
        } else if (const auto* neg = std::get_if<Not>(&f.node)) {
          collect(*neg->operand);
        } else {
          const auto& parts = std::holds_alternative<And>(f.node) ? std::get<And>(f.node).operands : std::get<Or>(f.node).operands;
          for (const auto& p : parts) collect(*p);
        }
      };
      collect(*wf.formula);
      if (g.atoms.size() > 16) throw InvalidArgument("MLN formula grounds to more than 16 distinct atoms");
      g.table.resize(std::size_t{1} << g.atoms.size());
      for (std::size_t assign = 0; assign < g.table.size(); ++assign) {
        g.table[assign] = detail::eval_bool(*wf.formula, [&](const Atom& a) {
          const auto pos = std::find(g.atoms.begin(), g.atoms.end(), atom_of(a)) - g.atoms.begin();
          return ((assign >> pos) & 1U) != 0;
        });
      }
      out.push_back(std::move(g));
    });
  }

  Signature signature_;
  int n_;
  std::vector<ParamInfo> params_;
  std::uint64_t atom_count_ = 0;
  std::vector<Value> weights_;
  std::vector<std::uint32_t> counts_;  // worlds x formulas
};

inline Distribution mln_distribution(const MlnSpec& spec, int n, const ParamVector& theta) {
  return MlnEngine(spec, n).distribution(theta);
}

}  // namespace srlproj
