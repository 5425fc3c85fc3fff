#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "srlproj/lang/fragments.hpp"
#include "srlproj/learning/consistency.hpp"

namespace srlproj {

/// log L^(m)(θ|ω) = Σ_l c(m,l) Σ_ω̃ C_ω̃(ω)·f_ω̃(θ[ω̃]) with c(m,l) = 1.
/// f_ω̃ is 1/l! times the log-probability of the atoms over [l] that use
/// every element of [l], evaluated on ω̃.
class LogLikDecomposition {
 public:
  struct Term {
    Encoding pattern = 0;
    std::set<std::string> params;  // θ[ω̃]
  };

  LogLikDecomposition(RbnSpec spec, int k) : spec_(std::move(spec)), k_(k) {
    for (int l = 1; l <= k_; ++l) {
      std::vector<Term> level;
      std::vector<std::uint64_t> atoms;
      for (std::uint64_t i = 0; i < spec_.signature.atom_count(l); ++i) {
        const auto atom = spec_.signature.atom_at(i, l);
        if (std::set<int>(atom.args.begin(), atom.args.end()).size() == static_cast<std::size_t>(l)) atoms.push_back(i);
      }
      for (Encoding e = 0; e < (Encoding{1} << spec_.signature.atom_count(l)); ++e) {
        Term t{e, {}};
        for (auto i : atoms) evaluate_atom(World(spec_.signature, l, e), spec_.signature.atom_at(i, l), {}, &t.params);
        level.push_back(std::move(t));
      }
      surjective_.push_back(std::move(atoms));
      levels_.push_back(std::move(level));
    }
  }

  int k() const { return k_; }
  const RbnSpec& spec() const { return spec_; }
  double c(int /*m*/, int /*l*/) const { return 1.0; }
  const std::vector<Term>& level(int l) const { return levels_.at(static_cast<std::size_t>(l - 1)); }

  /// θ[l]: union of θ[ω̃] over the level.
  std::set<std::string> level_params(int l) const {
    std::set<std::string> out;
    for (const auto& t : level(l)) out.insert(t.params.begin(), t.params.end());
    return out;
  }

  /// Levels use pairwise disjoint parameter sets.
  bool separable() const {
    for (int a = 1; a <= k_; ++a) {
      for (int b = a + 1; b <= k_; ++b) {
        const auto pa = level_params(a);
        for (const auto& p : level_params(b))
          if (pa.count(p)) return false;
      }
    }
    return true;
  }

  double f(int l, Encoding pattern, const ParamVector& theta) const {
    const World w(spec_.signature, l, pattern);
    double total = 0.0;
    for (auto i : surjective_[static_cast<std::size_t>(l - 1)]) {
      const double p = evaluate_atom(w, spec_.signature.atom_at(i, l), theta, nullptr);
      const double q = w.holds_index(i) ? p : 1.0 - p;
      total += std::log(q);
    }
    double fact = 1.0;
    for (int j = 2; j <= l; ++j) fact *= j;
    return total / fact;
  }

  /// Level-l part c(m,l)·Σ_ω̃ C_ω̃(ω)·f_ω̃ computed from precomputed counts.
  double level_value(const CountStatistics& counts, int l, const ParamVector& theta) const {
    double total = 0.0;
    for (const auto& [pattern, count] : counts.levels.at(static_cast<std::size_t>(l - 1))) {
      total += static_cast<double>(count) * f(l, pattern, theta);
    }
    return c(0, l) * total;
  }

  double evaluate(const World& world, const ParamVector& theta) const {
    if (world.domain_size() < k_) throw DimensionError("world smaller than the largest arity");
    const auto counts = complete_counts(world, k_);
    double total = 0.0;
    for (int l = 1; l <= k_; ++l) total += level_value(counts, l, theta);
    return total;
  }

 private:
  // Evaluates the rule for `atom` on `world`, collecting parameters on the
  // taken branch when `used` is set (values then are ignored).
  double evaluate_atom(const World& world, const GroundAtom& atom, const ParamVector& theta,
                       std::set<std::string>* used) const {
    const auto& rule = spec_.rules[atom.relation];
    const ProbFormula* f = rule.formula.get();
    while (true) {
      if (const auto* c = std::get_if<double>(&f->node)) return *c;
      if (const auto* p = std::get_if<Param>(&f->node)) {
        if (used) {
          used->insert(p->name);
          return 0.5;
        }
        const auto it = theta.find(p->name);
        if (it == theta.end()) throw MissingParameter(p->name);
        return it->second;
      }
      const auto& ite = std::get<IfThenElse>(f->node);
      bool holds = true;
      for (const auto& lit : ite.condition) {
        GroundAtom g{lit.atom.relation, {}};
        for (int v : lit.atom.vars) g.args.push_back(atom.args[static_cast<std::size_t>(v)]);
        if (world.holds(g) != lit.positive) {
          holds = false;
          break;
        }
      }
      f = (holds ? ite.then_branch : ite.else_branch).get();
    }
  }

  RbnSpec spec_;
  int k_;
  std::vector<std::vector<std::uint64_t>> surjective_;
  std::vector<std::vector<Term>> levels_;
};

/// Requires a noisy-or-free RBN with unary-or-higher relations, m at least the
/// largest arity, and every parameter occurring once.
inline LogLikDecomposition decompose_loglik(const RbnSpec& spec, int m) {
  const auto report = check_rbn_projective(spec);
  if (!report.projective) throw NotInFragment("model uses a combination function: " + report.violations.front().message);
  for (std::size_t r = 0; r < spec.signature.size(); ++r) {
    if (spec.signature[r].arity == 0) throw NotInFragment("nullary relation '" + spec.signature[r].name + "'");
  }
  for (const auto& [name, where] : parameter_occurrences(spec)) {
    if (where.size() > 1) {
      throw SeparabilityError("parameter '" + name + "' occurs " + std::to_string(where.size()) + " times", name);
    }
  }
  const int k = spec.signature.max_arity();
  if (m < k) throw DimensionError("m = " + std::to_string(m) + " is below the largest arity " + std::to_string(k));
  return LogLikDecomposition(spec, k);
}

struct Prop6Report {
  bool separable = false;
  bool identity = true;
  double identity_gap = 0.0;  // worst per-level gap over probe θ
  EquationCheck consistency;
  bool pass = false;

  nlohmann::json to_json() const {
    return {{"separable", separable},
            {"identity", identity},
            {"identity_gap", json_number(identity_gap)},
            {"consistency", consistency.to_json()},
            {"pass", pass}};
  }
};

/// Checks E_ω[log L_l^(m)] = (c(m,l)/c(n,l))·m!(n−l)!/((m−l)!n!)·log L_l^(n)(ω')
/// per level at the probe points, plus the consistency verdict.
inline Prop6Report verify_prop6(const LogLikDecomposition& dec, const World& source, int m,
                                const std::vector<ParamVector>& probes, const MleOptions& options = {}) {
  const int n = source.domain_size();
  if (m > n || m < dec.k()) throw DimensionError("need k <= m <= n");
  Prop6Report r;
  r.separable = dec.separable();
  const auto samples = enumerate_subsamples(source, m);
  std::vector<CountStatistics> sample_counts;
  for (const auto& s : samples) sample_counts.push_back(complete_counts(s.world, dec.k()));
  const auto source_counts = complete_counts(source, dec.k());
  for (const auto& theta : probes) {
    for (int l = 1; l <= dec.k(); ++l) {
      double lhs = 0.0;
      for (const auto& c : sample_counts) lhs += dec.level_value(c, l, theta);
      lhs /= static_cast<double>(samples.size());
      const double scale = dec.c(m, l) / dec.c(n, l) * static_cast<double>(detail::falling_factorial(m, l)) /
                           static_cast<double>(detail::falling_factorial(n, l));
      const double rhs = scale * dec.level_value(source_counts, l, theta);
      if (lhs == rhs) continue;  // covers matching infinities
      const double gap = std::abs(lhs - rhs);
      r.identity_gap = std::max(r.identity_gap, std::isnan(gap) ? INFINITY : gap);
    }
  }
  r.identity = r.identity_gap <= 1e-9;
  r.consistency = check_consistency(Model::from_spec(dec.spec(), "decomposed"), source, m, options);
  r.pass = r.identity && r.consistency.pass;
  return r;
}

}  // namespace srlproj
