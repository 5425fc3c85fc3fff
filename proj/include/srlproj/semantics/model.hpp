#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>

#include "srlproj/semantics/mln.hpp"
#include "srlproj/semantics/problog.hpp"
#include "srlproj/semantics/rbn.hpp"

namespace srlproj {

/// A parametric family {Q^(n)_θ}: either a parsed model specification or a
/// hand-written family function. Copies share grounded engines, which are
/// built on first use per domain size.
class Model {
 public:
  using Family = std::function<Distribution(int n, const ParamVector& theta)>;

  static Model from_spec(ModelSpec spec, std::string id = "model") {
    auto state = std::make_shared<State>();
    state->id = std::move(id);
    state->params = parameter_info(spec);
    if (const auto* plp = std::get_if<ProblogSpec>(&spec)) {
      std::vector<Relation> rels;
      for (std::size_t r : plp->observable) rels.push_back(plp->signature[r]);
      state->signature = Signature(std::move(rels));
    } else {
      state->signature = signature_of(spec);
    }
    state->spec = std::move(spec);
    return Model(std::move(state));
  }

  static Model custom(std::string id, Signature signature, std::vector<ParamInfo> params, Family family) {
    auto state = std::make_shared<State>();
    state->id = std::move(id);
    state->signature = std::move(signature);
    state->params = std::move(params);
    state->family = std::move(family);
    return Model(std::move(state));
  }

  const std::string& id() const { return state_->id; }
  /// Signature of the distributions this model produces (observable part).
  const Signature& signature() const { return state_->signature; }
  const std::vector<ParamInfo>& parameters() const { return state_->params; }
  const ModelSpec* spec() const { return state_->spec ? &*state_->spec : nullptr; }

  Distribution distribution(int n, const ParamVector& theta) const {
    if (state_->family) return state_->family(n, theta);
    require_within_cap(static_cast<std::size_t>(signature().atom_count(n)));
    return std::visit(
        [&](const auto& engine) -> Distribution {
          using T = std::decay_t<decltype(*engine)>;
          if constexpr (std::is_same_v<T, ProblogEngine>) {
            return engine->distribution(theta, true);
          } else {
            return engine->distribution(theta);
          }
        },
        engine(n));
  }

  /// log Q^(n)_θ(ω); -inf for impossible worlds. RBNs are evaluated by the
  /// chain rule directly, other models through their distribution.
  double log_probability(const World& world, const ParamVector& theta) const {
    if (!(world.signature() == signature())) throw DimensionError("world signature does not match the model");
    const int n = world.domain_size();
    if (state_->spec && std::holds_alternative<RbnSpec>(*state_->spec)) {
      return std::get<std::shared_ptr<const RbnEngine>>(engine(n))->log_probability(world.encoding(), theta);
    }
    return std::log(distribution(n, theta)[world.encoding()]);
  }

 private:
  using Engine = std::variant<std::shared_ptr<const RbnEngine>, std::shared_ptr<const MlnEngine>,
                              std::shared_ptr<const ProblogEngine>>;

  struct State {
    std::string id;
    Signature signature;
    std::vector<ParamInfo> params;
    std::optional<ModelSpec> spec;
    Family family;
    std::mutex mutex;
    std::map<int, Engine> engines;
  };

  explicit Model(std::shared_ptr<State> state) : state_(std::move(state)) {}

  Engine engine(int n) const {
    std::lock_guard lock(state_->mutex);
    if (const auto it = state_->engines.find(n); it != state_->engines.end()) return it->second;
    Engine built = std::visit(
        [&](const auto& s) -> Engine {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, RbnSpec>) return std::make_shared<const RbnEngine>(s, n);
          else if constexpr (std::is_same_v<T, MlnSpec>) return std::make_shared<const MlnEngine>(s, n);
          else return std::make_shared<const ProblogEngine>(s, n);
        },
        *state_->spec);
    state_->engines.emplace(n, built);
    return built;
  }

  std::shared_ptr<State> state_;
};

}  // namespace srlproj
