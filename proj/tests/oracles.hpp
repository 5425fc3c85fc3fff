#pragma once

#include <cmath>
#include <functional>
#include <set>

#include "srlproj/core/distribution.hpp"
#include "srlproj/lang/ast.hpp"

namespace srlproj::testing {

// Naive MLN: walks every substitution by recursion and every formula through
// the World API, then normalizes in linear space.
inline Distribution mln_oracle(const MlnSpec& spec, int n, const ParamVector& theta) {
  std::vector<double> weights;
  for (const auto& wf : spec.formulas) {
    weights.push_back(std::holds_alternative<double>(wf.weight) ? std::get<double>(wf.weight)
                                                                : theta.at(std::get<Param>(wf.weight).name));
  }
  std::vector<double> unnorm;
  for (const auto& w : enumerate_worlds(spec.signature, n)) {
    double exponent = 0.0;
    for (std::size_t f = 0; f < spec.formulas.size(); ++f) {
      const auto& wf = spec.formulas[f];
      std::vector<int> sub(wf.var_names.size(), 0);
      std::function<bool(const BoolFormula&)> eval = [&](const BoolFormula& g) -> bool {
        if (const auto* a = std::get_if<Atom>(&g.node)) {
          GroundAtom ga{a->relation, {}};
          for (int v : a->vars) ga.args.push_back(sub[static_cast<std::size_t>(v)]);
          return w.holds(ga);
        }
        if (const auto* neg = std::get_if<Not>(&g.node)) return !eval(*neg->operand);
        if (const auto* conj = std::get_if<And>(&g.node)) {
          for (const auto& o : conj->operands)
            if (!eval(*o)) return false;
          return true;
        }
        for (const auto& o : std::get<Or>(g.node).operands)
          if (eval(*o)) return true;
        return false;
      };
      int count = 0;
      std::function<void(std::size_t)> walk = [&](std::size_t k) {
        if (k == sub.size()) {
          count += eval(*wf.formula) ? 1 : 0;
          return;
        }
        for (int a = 0; a < n; ++a) {
          sub[k] = a;
          walk(k + 1);
        }
      };
      walk(0);
      exponent += weights[f] * count;
    }
    unnorm.push_back(std::exp(exponent));
  }
  double z = 0.0;
  for (double u : unnorm) z += u;
  for (double& u : unnorm) u /= z;
  return Distribution(spec.signature, n, std::move(unnorm));
}

// Counts matching tuples by walking [n]^k and skipping repeats.
inline std::uint64_t ordered_count_oracle(const World& world, const World& pattern) {
  const int n = world.domain_size();
  const int k = pattern.domain_size();
  std::vector<int> t(static_cast<std::size_t>(k), 0);
  std::uint64_t count = 0;
  while (true) {
    if (std::set<int>(t.begin(), t.end()).size() == t.size() && restrict_world(world, t) == pattern) ++count;
    int i = k - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == n - 1) t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return count;
    ++t[static_cast<std::size_t>(i)];
  }
}

}  // namespace srlproj::testing
