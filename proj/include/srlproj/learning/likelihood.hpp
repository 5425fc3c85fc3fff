#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "srlproj/semantics/model.hpp"
#include "srlproj/stats/stats.hpp"

namespace srlproj {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log Q^(m)_θ(ω).
inline double loglik(const Model& model, const World& world, const ParamVector& theta) {
  return model.log_probability(world, theta);
}

/// log of the Q^(n) mass whose restriction to [m] is ω, from a given table.
inline double marginal_loglik(const Distribution& dist, const World& world) {
  const int n = dist.domain_size();
  const int m = world.domain_size();
  if (m > n) throw DimensionError("observed domain larger than n");
  if (!(world.signature() == dist.signature())) throw DimensionError("world signature does not match the model");
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  std::iota(map.begin(), map.begin() + m, 0);
  const auto gather = AtomGather::relabel(dist.signature(), n, m, map);
  double mass = 0.0;
  for (Encoding e = 0; e < dist.size(); ++e) {
    if (gather(e) == world.encoding()) mass += dist[e];
  }
  return mass > 0.0 ? std::log(mass) : kNegInf;
}

/// log Q^(n)_θ of the worlds over [n] whose restriction to [m] is ω.
inline double marginal_loglik(const Model& model, const World& world, int n, const ParamVector& theta) {
  if (world.domain_size() > n) throw DimensionError("observed domain larger than n");
  if (world.domain_size() == n) return loglik(model, world, theta);
  return marginal_loglik(model.distribution(n, theta), world);
}

/// Mean of loglik over all induced m-subsamples of ω'.
inline double expected_sample_loglik(const Model& model, const World& source, int m, const ParamVector& theta) {
  const auto samples = enumerate_subsamples(source, m);
  double total = 0.0;
  for (const auto& s : samples) {
    const double l = loglik(model, s.world, theta);
    if (l == kNegInf) return kNegInf;
    total += l;
  }
  return total / static_cast<double>(samples.size());
}

/// A scalar function of the model parameters to be maximized.
struct Objective {
  std::string description;
  std::vector<ParamInfo> params;
  std::function<double(const ParamVector&)> value;
};

inline Objective exact_objective(const Model& model, const World& world) {
  return {"exact", model.parameters(), [=](const ParamVector& t) { return loglik(model, world, t); }};
}

inline Objective marginal_objective(const Model& model, const World& world, int n) {
  if (world.domain_size() > n) throw DimensionError("observed domain larger than n");
  return {"marginal", model.parameters(), [=](const ParamVector& t) { return marginal_loglik(model, world, n, t); }};
}

inline Objective subsample_objective(const Model& model, const World& source, int m) {
  const auto samples = enumerate_subsamples(source, m);
  return {"subsample", model.parameters(), [=](const ParamVector& t) {
            double total = 0.0;
            for (const auto& s : samples) {
              const double l = loglik(model, s.world, t);
              if (l == kNegInf) return kNegInf;
              total += l;
            }
            return total / static_cast<double>(samples.size());
          }};
}

}  // namespace srlproj
