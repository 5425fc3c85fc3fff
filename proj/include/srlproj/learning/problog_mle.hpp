#pragma once

#include <algorithm>
#include <set>

#include <json.hpp>

#include "srlproj/core/io.hpp"
#include "srlproj/lang/printer.hpp"
#include "srlproj/semantics/problog.hpp"

namespace srlproj {

struct ProblogMle {
  std::vector<double> fact_estimates;  // per labeled fact, unclamped frequency
  ParamVector theta;                   // pooled per parameter, clamped

  nlohmann::json to_json() const {
    nlohmann::json facts = nlohmann::json::array();
    for (double v : fact_estimates) facts.push_back(json_number(v));
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [k, v] : theta) t[k] = json_number(v);
    return {{"facts", facts}, {"theta", t}};
  }
};

/// Under full observability a labeled fact's estimate is the fraction of its
/// groundings that are true in ω. Parameters shared by several facts pool
/// their groundings.
inline ProblogMle problog_complete_mle(const ProblogSpec& spec, const World& world, double clamp = 1e-9) {
  if (spec.observable.size() != spec.signature.size()) {
    throw NotFullyObservable("latent relations make the likelihood a sum over hidden facts; it does not decompose");
  }
  if (!(world.signature() == spec.signature)) throw DimensionError("world signature does not match the model");
  const ProblogEngine engine(spec, world.domain_size());
  const auto ground = engine.ground_facts();
  std::set<std::uint64_t> seen;
  Encoding fact_bits = 0;
  for (const auto& [atom, fact] : ground) {
    if (!seen.insert(atom).second) {
      throw InvalidArgument("two labeled facts share the ground atom " +
                            spec.signature.atom_to_string(spec.signature.atom_at(atom, world.domain_size())));
    }
    if (world.holds_index(atom)) fact_bits |= Encoding{1} << atom;
  }
  // Fact-relation atoms never produced by a fact are impossible, and derived
  // relations must equal the least model.
  if (engine.least_model(fact_bits) != world.encoding()) {
    throw ZeroProbabilityWorld("world is not the least model of its fact atoms");
  }
  ProblogMle out;
  std::vector<double> hits(spec.facts.size(), 0.0), totals(spec.facts.size(), 0.0);
  for (const auto& [atom, fact] : ground) {
    totals[fact] += 1.0;
    hits[fact] += world.holds_index(atom) ? 1.0 : 0.0;
  }
  std::map<std::string, std::pair<double, double>> pooled;
  for (std::size_t i = 0; i < spec.facts.size(); ++i) {
    out.fact_estimates.push_back(hits[i] / totals[i]);
    if (const auto* p = std::get_if<Param>(&spec.facts[i].label)) {
      pooled[p->name].first += hits[i];
      pooled[p->name].second += totals[i];
    }
  }
  for (const auto& [name, ht] : pooled) out.theta[name] = std::clamp(ht.first / ht.second, clamp, 1.0 - clamp);
  return out;
}

}  // namespace srlproj
