#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "srlproj/core/io.hpp"
#include "srlproj/semantics/model.hpp"

namespace srlproj {

using Rational = boost::rational<std::int64_t>;

namespace detail {

// Visits every injective k-tuple over [n] in lexicographic order.
inline void for_each_injective(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> tuple;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void()> rec = [&] {
    if (static_cast<int>(tuple.size()) == k) {
      visit(tuple);
      return;
    }
    for (int a = 0; a < n; ++a) {
      if (used[static_cast<std::size_t>(a)]) continue;
      used[static_cast<std::size_t>(a)] = true;
      tuple.push_back(a);
      rec();
      tuple.pop_back();
      used[static_cast<std::size_t>(a)] = false;
    }
  };
  rec();
}

// Visits k-subsets of [n] as ascending vectors, lexicographically.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> subset(static_cast<std::size_t>(k));
  std::iota(subset.begin(), subset.end(), 0);
  while (true) {
    visit(subset);
    int i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Source atom index (over [n]) for each atom over [k] under tuple i.
inline std::vector<std::uint64_t> induced_sources(const Signature& sig, int n, const std::vector<int>& tuple) {
  const int k = static_cast<int>(tuple.size());
  std::vector<std::uint64_t> out(static_cast<std::size_t>(sig.atom_count(k)));
  for (std::uint64_t j = 0; j < out.size(); ++j) {
    auto atom = sig.atom_at(j, k);
    for (int& a : atom.args) a = tuple[static_cast<std::size_t>(a)];
    out[j] = sig.atom_index(atom, n);
  }
  return out;
}

inline Encoding induced_encoding(Encoding bits, const std::vector<std::uint64_t>& sources) {
  Encoding out = 0;
  for (std::size_t j = 0; j < sources.size(); ++j) out |= ((bits >> sources[j]) & 1U) << j;
  return out;
}

inline std::int64_t falling_factorial(int n, int k) {
  std::int64_t out = 1;
  for (int i = 0; i < k; ++i) out *= n - i;
  return out;
}

inline std::int64_t binomial(int n, int k) {
  std::int64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace detail

/// Number of distinct-element tuples i with ω restricted to i equal to ω̃.
inline std::uint64_t ordered_count(const World& world, const World& pattern) {
  if (!(world.signature() == pattern.signature())) throw DimensionError("signatures differ");
  const int n = world.domain_size();
  const int k = pattern.domain_size();
  if (k < 1 || k > n) throw DimensionError("pattern size must lie in [1, n]");
  std::uint64_t count = 0;
  detail::for_each_injective(n, k, [&](const std::vector<int>& t) {
    count += detail::induced_encoding(world.encoding(), detail::induced_sources(world.signature(), n, t)) ==
             pattern.encoding();
  });
  return count;
}

/// Counts C_ω̃(ω) for every ω̃ over [l], 1 ≤ l ≤ k; zero counts are omitted.
struct CountStatistics {
  int k = 0;
  std::vector<std::map<Encoding, std::uint64_t>> levels;  // levels[l-1]

  std::uint64_t count(int l, Encoding pattern) const {
    const auto& level = levels.at(static_cast<std::size_t>(l - 1));
    const auto it = level.find(pattern);
    return it == level.end() ? 0 : it->second;
  }

  std::uint64_t level_sum(int l) const {
    std::uint64_t s = 0;
    for (const auto& [_, c] : levels.at(static_cast<std::size_t>(l - 1))) s += c;
    return s;
  }

  friend bool operator==(const CountStatistics&, const CountStatistics&) = default;
  friend auto operator<=>(const CountStatistics&, const CountStatistics&) = default;

  nlohmann::json to_json() const {
    nlohmann::json out{{"k", k}, {"levels", nlohmann::json::array()}};
    for (std::size_t l = 0; l < levels.size(); ++l) {
      auto counts = nlohmann::json::array();
      for (const auto& [world, c] : levels[l]) counts.push_back({{"world", world}, {"count", c}});
      out["levels"].push_back({{"l", l + 1}, {"counts", counts}});
    }
    return out;
  }
};

inline CountStatistics complete_counts(const World& world, int k) {
  const int n = world.domain_size();
  if (k < 1 || k > n) throw DimensionError("k must lie in [1, n]");
  require_within_cap(static_cast<std::size_t>(world.signature().atom_count(k)));
  CountStatistics out;
  out.k = k;
  for (int l = 1; l <= k; ++l) {
    std::map<Encoding, std::uint64_t> level;
    detail::for_each_injective(n, l, [&](const std::vector<int>& t) {
      ++level[detail::induced_encoding(world.encoding(), detail::induced_sources(world.signature(), n, t))];
    });
    out.levels.push_back(std::move(level));
  }
  return out;
}

struct Subsample {
  std::vector<int> subset;  // ascending; element subset[j] becomes j
  World world;
};

/// All C(n,m) induced substructures, each with weight 1/C(n,m).
inline std::vector<Subsample> enumerate_subsamples(const World& world, int m) {
  const int n = world.domain_size();
  if (m < 1 || m > n) throw DimensionError("sample size must lie in [1, n]");
  std::vector<Subsample> out;
  detail::for_each_subset(n, m, [&](const std::vector<int>& s) { out.push_back({s, restrict_world(world, s)}); });
  return out;
}

struct Lemma1Result {
  Rational lhs;
  Rational rhs;
  bool equal = false;

  nlohmann::json to_json() const {
    const auto str = [](const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); };
    return {{"lhs", str(lhs)},
            {"rhs", str(rhs)},
            {"lhs_value", boost::rational_cast<double>(lhs)},
            {"rhs_value", boost::rational_cast<double>(rhs)},
            {"equal", equal}};
  }
};

/// E_ω[C_ω̃(ω)·(m−k)!/m!] over induced m-subsamples of ω' against
/// C_ω̃(ω')·(n−k)!/n!, both exact.
inline Lemma1Result verify_lemma1(const World& source, int m, const World& pattern) {
  const int n = source.domain_size();
  const int k = pattern.domain_size();
  if (!(k <= m && m <= n) || k < 1) throw DimensionError("need 1 <= k <= m <= n");
  Rational total = 0;
  const auto samples = enumerate_subsamples(source, m);
  for (const auto& s : samples) {
    total += Rational(static_cast<std::int64_t>(ordered_count(s.world, pattern)), detail::falling_factorial(m, k));
  }
  Lemma1Result out;
  out.lhs = total / static_cast<std::int64_t>(samples.size());
  out.rhs = Rational(static_cast<std::int64_t>(ordered_count(source, pattern)), detail::falling_factorial(n, k));
  out.equal = out.lhs == out.rhs;
  return out;
}

struct CountDeterminationResult {
  bool determined = true;
  std::size_t classes = 0;
  double worst = 0.0;
  std::optional<std::pair<Encoding, Encoding>> witness;  // same counts, different probability

  nlohmann::json to_json() const {
    nlohmann::json out{{"determined", determined}, {"classes", classes}, {"worst", json_number(worst)}};
    if (witness) out["witness"] = {witness->first, witness->second};
    return out;
  }
};

/// Whether Q^(n)_θ(ω) depends on ω only through its complete k-counts.
inline CountDeterminationResult verify_count_determination(const Model& model, const ParamVector& theta, int n, int k,
                                                           double tol = kDefaultTolerance) {
  const auto dist = model.distribution(n, theta);
  std::map<CountStatistics, std::pair<Encoding, Encoding>> extremes;  // argmin, argmax of Q per class
  for (const auto& w : enumerate_worlds(model.signature(), n)) {
    const auto stats = complete_counts(w, k);
    const auto [it, fresh] = extremes.try_emplace(stats, w.encoding(), w.encoding());
    if (fresh) continue;
    if (dist[w.encoding()] < dist[it->second.first]) it->second.first = w.encoding();
    if (dist[w.encoding()] > dist[it->second.second]) it->second.second = w.encoding();
  }
  CountDeterminationResult out;
  out.classes = extremes.size();
  for (const auto& [_, pair] : extremes) {
    const double gap = dist[pair.second] - dist[pair.first];
    if (gap > out.worst) {
      out.worst = gap;
      out.witness = pair;
    }
  }
  out.determined = out.worst <= tol;
  if (out.determined) out.witness.reset();
  return out;
}

}  // namespace srlproj
