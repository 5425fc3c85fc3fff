#pragma once

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "srlproj/core/world.hpp"

namespace srlproj {

inline constexpr double kDefaultTolerance = 1e-9;

/// Dense probability table over all worlds of a signature at domain size n,
/// indexed by world encoding.
class Distribution {
 public:
  Distribution(Signature signature, int n, std::vector<double> probs)
      : signature_(std::move(signature)), n_(n), probs_(std::move(probs)) {
    if (n < 1) throw DimensionError("domain size must be at least 1");
    const auto atoms = signature_.atom_count(n);
    if (atoms >= 63 || probs_.size() != (std::size_t{1} << atoms)) {
      throw DimensionError("probability table has " + std::to_string(probs_.size()) + " entries, expected 2^" +
                           std::to_string(atoms));
    }
    double total = 0.0;
    for (double p : probs_) {
      if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("negative or non-finite probability");
      total += p;
    }
    if (std::abs(total - 1.0) > kDefaultTolerance) {
      throw InvalidArgument("probabilities sum to " + std::to_string(total));
    }
  }

  /// Point mass on one world.
  static Distribution point_mass(const World& world) {
    const auto count = world_count(world.signature(), world.domain_size());
    std::vector<double> probs(static_cast<std::size_t>(count), 0.0);
    probs[world.encoding()] = 1.0;
    return Distribution(world.signature(), world.domain_size(), std::move(probs));
  }

  static Distribution uniform(const Signature& signature, int n) {
    const auto count = world_count(signature, n);
    return Distribution(signature, n, std::vector<double>(static_cast<std::size_t>(count), 1.0 / static_cast<double>(count)));
  }

  const Signature& signature() const { return signature_; }
  int domain_size() const { return n_; }
  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }
  double operator[](Encoding e) const { return probs_[e]; }

  double probability(const World& world) const {
    if (!(world.signature() == signature_) || world.domain_size() != n_) {
      throw DimensionError("world does not belong to this distribution's space");
    }
    return probs_[world.encoding()];
  }

 private:
  Signature signature_;
  int n_;
  std::vector<double> probs_;
};

/// Max-norm distance. Both sides must live on the same space.
inline double max_deviation(const Distribution& a, const Distribution& b) {
  if (!(a.signature() == b.signature()) || a.domain_size() != b.domain_size()) {
    throw DimensionError("comparing distributions over different spaces");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// Marginal on the atoms whose arguments all lie in [m]. Sums run in
/// ascending source-encoding order.
inline Distribution marginalize(const Distribution& dist, int m) {
  const int n = dist.domain_size();
  if (m < 1 || m > n) {
    throw DimensionError("cannot marginalize from domain " + std::to_string(n) + " to " + std::to_string(m));
  }
  if (m == n) return dist;
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  std::iota(map.begin(), map.begin() + m, 0);
  const auto gather = AtomGather::relabel(dist.signature(), n, m, map);
  std::vector<double> out(static_cast<std::size_t>(world_count(dist.signature(), m)), 0.0);
  for (std::size_t e = 0; e < dist.size(); ++e) out[gather(e)] += dist[e];
  return Distribution(dist.signature(), m, std::move(out));
}

}  // namespace srlproj
