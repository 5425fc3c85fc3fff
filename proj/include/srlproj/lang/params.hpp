#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "srlproj/lang/ast.hpp"

namespace srlproj {

enum class ParamKind {
  kProbability,  // open interval (0,1)
  kWeight,       // any real
  kPositive,     // (0, inf)
};

struct ParamInfo {
  std::string name;
  ParamKind kind = ParamKind::kProbability;

  friend bool operator==(const ParamInfo&, const ParamInfo&) = default;
};

namespace detail {

inline void collect_params(const ProbFormula& f, const std::function<void(const std::string&)>& sink) {
  if (const auto* p = std::get_if<Param>(&f.node)) {
    sink(p->name);
  } else if (const auto* ite = std::get_if<IfThenElse>(&f.node)) {
    collect_params(*ite->then_branch, sink);
    collect_params(*ite->else_branch, sink);
  } else if (const auto* nor = std::get_if<NoisyOr>(&f.node)) {
    collect_params(*nor->body, sink);
  }
}

inline void collect_params(const Value& v, const std::function<void(const std::string&)>& sink) {
  if (const auto* p = std::get_if<Param>(&v)) sink(p->name);
}

}  // namespace detail

/// For each parameter, the indices of the rules (RBN), formulas (MLN) or
/// labeled facts (ProbLog) it occurs in; one entry per occurrence.
inline std::map<std::string, std::vector<std::size_t>> parameter_occurrences(const ModelSpec& spec) {
  std::map<std::string, std::vector<std::size_t>> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RbnSpec>) {
          for (std::size_t i = 0; i < s.rules.size(); ++i) {
            detail::collect_params(*s.rules[i].formula, [&](const std::string& n) { out[n].push_back(i); });
          }
        } else if constexpr (std::is_same_v<T, MlnSpec>) {
          for (std::size_t i = 0; i < s.formulas.size(); ++i) {
            detail::collect_params(s.formulas[i].weight, [&](const std::string& n) { out[n].push_back(i); });
          }
        } else {
          for (std::size_t i = 0; i < s.facts.size(); ++i) {
            detail::collect_params(s.facts[i].label, [&](const std::string& n) { out[n].push_back(i); });
          }
        }
      },
      spec);
  return out;
}

/// All parameter names, sorted.
inline std::vector<std::string> free_parameters(const ModelSpec& spec) {
  std::vector<std::string> names;
  for (const auto& [name, uses] : parameter_occurrences(spec)) names.push_back(name);
  return names;
}

inline std::vector<ParamInfo> parameter_info(const ModelSpec& spec) {
  const auto kind = dialect_of(spec) == Dialect::kMln ? ParamKind::kWeight : ParamKind::kProbability;
  std::vector<ParamInfo> out;
  for (auto& name : free_parameters(spec)) out.push_back({std::move(name), kind});
  return out;
}

/// Checks that θ assigns every parameter a value in its domain; returns the
/// values in `params` order.
inline std::vector<double> resolve_parameters(const std::vector<ParamInfo>& params, const ParamVector& theta) {
  std::vector<double> values;
  for (const auto& p : params) {
    const auto it = theta.find(p.name);
    if (it == theta.end()) throw MissingParameter(p.name);
    const double v = it->second;
    const bool ok = p.kind == ParamKind::kProbability ? (v > 0.0 && v < 1.0)
                    : p.kind == ParamKind::kPositive  ? (v > 0.0 && std::isfinite(v))
                                                      : std::isfinite(v);
    if (!ok) {
      throw InvalidParameter("value " + std::to_string(v) + " for '" + p.name + "' outside its domain");
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace srlproj
