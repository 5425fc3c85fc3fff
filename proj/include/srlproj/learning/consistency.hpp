#pragma once

#include <json.hpp>

#include "srlproj/learning/mle.hpp"

namespace srlproj {

inline constexpr double kArgmaxTolerance = 1e-4;

/// E_ω[argmax_θ log L^(m)(θ|ω)] over all induced m-subsamples of ω'. Each
/// subsample contributes its refined maximizer.
inline ParamVector expected_argmax(const Model& model, const World& source, int m, const MleOptions& options = {}) {
  const auto samples = enumerate_subsamples(source, m);
  ParamVector mean;
  for (const auto& p : model.parameters()) mean[p.name] = 0.0;
  for (const auto& s : samples) {
    const auto r = mle(exact_objective(model, s.world), options);
    for (auto& [k, v] : mean) v += r.theta.at(k);
  }
  for (auto& [_, v] : mean) v /= static_cast<double>(samples.size());
  return mean;
}

struct EquationCheck {
  std::vector<ParamVector> lhs;
  std::vector<ParamVector> rhs;
  double distance = 0.0;
  bool pass = false;

  nlohmann::json to_json() const {
    const auto point = [](const ParamVector& t) {
      nlohmann::json j = nlohmann::json::object();
      for (const auto& [k, v] : t) j[k] = json_number(v);
      return j;
    };
    return {{"lhs", point(lhs.front())}, {"rhs", point(rhs.front())}, {"distance", json_number(distance)}, {"pass", pass}};
  }
};

/// unbiasedness: mean of the subsample argmaxes against the full-world argmax.
/// consistency: argmax of the expected subsample log-likelihood against the same.
struct SamplingReport {
  EquationCheck unbiasedness;
  EquationCheck consistency;
  MleResult full;
  MleResult expected;

  nlohmann::json to_json() const { return {{"unbiasedness", unbiasedness.to_json()}, {"consistency", consistency.to_json()}}; }
};

inline EquationCheck check_unbiasedness(const Model& model, const World& source, int m, const MleOptions& options = {}) {
  const auto full = mle(exact_objective(model, source), options);
  EquationCheck c{{expected_argmax(model, source, m, options)}, full.argmax_set, 0.0, false};
  c.distance = hausdorff(c.lhs, c.rhs);
  c.pass = c.distance <= kArgmaxTolerance;
  return c;
}

inline EquationCheck check_consistency(const Model& model, const World& source, int m, const MleOptions& options = {}) {
  const auto full = mle(exact_objective(model, source), options);
  const auto expected = mle(subsample_objective(model, source, m), options);
  EquationCheck c{expected.argmax_set, full.argmax_set, 0.0, false};
  c.distance = hausdorff(c.lhs, c.rhs);
  c.pass = c.distance <= kArgmaxTolerance;
  return c;
}

inline SamplingReport check_sampling(const Model& model, const World& source, int m, const MleOptions& options = {}) {
  SamplingReport r;
  r.full = mle(exact_objective(model, source), options);
  r.expected = mle(subsample_objective(model, source, m), options);
  r.unbiasedness = {{expected_argmax(model, source, m, options)}, r.full.argmax_set, 0.0, false};
  r.unbiasedness.distance = hausdorff(r.unbiasedness.lhs, r.unbiasedness.rhs);
  r.unbiasedness.pass = r.unbiasedness.distance <= kArgmaxTolerance;
  r.consistency = {r.expected.argmax_set, r.full.argmax_set, 0.0, false};
  r.consistency.distance = hausdorff(r.consistency.lhs, r.consistency.rhs);
  r.consistency.pass = r.consistency.distance <= kArgmaxTolerance;
  return r;
}

}  // namespace srlproj
