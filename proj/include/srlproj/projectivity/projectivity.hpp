#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srlproj/core/io.hpp"
#include "srlproj/semantics/catalog.hpp"
#include "srlproj/semantics/query.hpp"

namespace srlproj {

struct ExchangeabilityResult {
  bool exchangeable = true;
  double worst = 0.0;
  // Where the worst gap occurs: swap (i, i+1) applied to `world`.
  int swap = -1;
  Encoding world = 0;
};

/// Adjacent transpositions generate S_n, so checking them suffices.
inline ExchangeabilityResult test_exchangeable(const Distribution& dist, double tol = kDefaultTolerance) {
  ExchangeabilityResult out;
  const int n = dist.domain_size();
  for (int i = 0; i + 1 < n; ++i) {
    const auto gather = permutation_gather(dist.signature(), n, Permutation::transposition(n, i, i + 1));
    for (Encoding e = 0; e < dist.size(); ++e) {
      const double gap = std::abs(dist[gather(e)] - dist[e]);
      if (gap > out.worst) {
        out.worst = gap;
        out.swap = i;
        out.world = e;
      }
    }
  }
  out.exchangeable = out.worst <= tol;
  return out;
}

struct ProjectivityPair {
  int n = 0;
  int m = 0;
  double deviation = 0.0;
};

struct ProjectivityReport {
  std::string model;
  std::vector<ProjectivityPair> pairs;
  bool exchangeable = true;
  bool projective = true;
  double tolerance = kDefaultTolerance;
  double worst_exchangeability = 0.0;

  double max_deviation() const {
    double worst = 0.0;
    for (const auto& p : pairs) worst = std::max(worst, p.deviation);
    return worst;
  }

  nlohmann::json to_json() const {
    nlohmann::json out;
    out["model"] = model;
    out["pairs"] = nlohmann::json::array();
    for (const auto& p : pairs) out["pairs"].push_back({{"n", p.n}, {"m", p.m}, {"deviation", json_number(p.deviation)}});
    out["exchangeable"] = exchangeable;
    out["projective"] = projective;
    out["tolerance"] = tolerance;
    return out;
  }
};

/// Compares Q^(n)↓[m] with Q^(m) for every 1 ≤ m < n ≤ n_max.
inline ProjectivityReport test_projective(const Model& model, const ParamVector& theta, int n_max,
                                          double tol = kDefaultTolerance) {
  if (n_max < 1) throw DimensionError("n_max must be at least 1");
  require_within_cap(static_cast<std::size_t>(model.signature().atom_count(n_max)));
  ProjectivityReport report;
  report.model = model.id();
  report.tolerance = tol;
  std::vector<Distribution> dists;
  for (int n = 1; n <= n_max; ++n) {
    dists.push_back(model.distribution(n, theta));
    const auto ex = test_exchangeable(dists.back(), tol);
    report.worst_exchangeability = std::max(report.worst_exchangeability, ex.worst);
    report.exchangeable = report.exchangeable && ex.exchangeable;
  }
  for (int n = 2; n <= n_max; ++n) {
    for (int m = 1; m < n; ++m) {
      const auto& source = dists[static_cast<std::size_t>(n - 1)];
      report.pairs.push_back({n, m, max_deviation(marginalize(source, m), dists[static_cast<std::size_t>(m - 1)])});
    }
  }
  report.projective = report.exchangeable && report.max_deviation() <= tol;
  return report;
}

namespace detail {

inline double no_edges_conditional(const Distribution& d, const std::string& target, const std::string& edge) {
  std::string evidence;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (!evidence.empty()) evidence += ",";
      evidence += "!" + edge + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
  }
  return query(d, parse_query(d.signature(), target, evidence));
}

}  // namespace detail

/// Q^(n)_w(a(0) | no edges among {0,1}) for `a(X) ^ e(X,Y) :: w`.
inline double q_mln(int n, double w) {
  if (n < 2) throw DimensionError("q_mln needs n >= 2");
  return detail::no_edges_conditional(catalog::example3_mln().distribution(n, {{"w", w}}), "a(0)", "e");
}

/// The same conditional for the noisy-or RBN.
inline double q_rbn(int n, double theta) {
  if (n < 2) throw DimensionError("q_rbn needs n >= 2");
  return detail::no_edges_conditional(catalog::noisy_or_rbn().distribution(n, {{"theta", theta}}), "a(0)", "edge");
}

/// Evenly spaced grid lo, lo+step, ..., hi (computed as lo + i·step).
inline std::vector<double> linear_grid(double lo, double hi, double step) {
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

/// Default search grid per parameter kind; these bounds are a choice, not Θ.
inline std::vector<double> default_grid(ParamKind kind) {
  switch (kind) {
    case ParamKind::kProbability: {
      std::vector<double> g;
      for (int i = 1; i <= 999; ++i) g.push_back(i / 1000.0);
      return g;
    }
    case ParamKind::kWeight: {
      std::vector<double> g;
      for (int i = -1000; i <= 1000; ++i) g.push_back(i / 100.0);
      return g;
    }
    case ParamKind::kPositive: {
      std::vector<double> g;
      for (int i = 1; i <= 1000; ++i) g.push_back(i / 100.0);
      return g;
    }
  }
  return {};
}

struct WitnessResult {
  double minimum = std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::quiet_NaN();
  bool certificate = false;  // minimum ≥ 10·tol: no θ' on the grid matches
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  std::size_t grid_size = 0;
  double tolerance = kDefaultTolerance;

  nlohmann::json to_json() const {
    return {{"minimum", json_number(minimum)}, {"best", json_number(best)},
            {"certificate", certificate},       {"grid", {{"lo", grid_lo}, {"hi", grid_hi}, {"points", grid_size}}},
            {"tolerance", tolerance}};
  }
};

/// min over θ' in `grid` of ‖Q^(n)_θ↓[m] − Q^(m)_θ'‖∞ for a one-parameter
/// family. Grid points the family rejects at size m are skipped.
inline WitnessResult structural_witness(const Model& model, int n, int m, double theta, std::vector<double> grid = {},
                                        double tol = kDefaultTolerance) {
  if (model.parameters().size() != 1) throw InvalidArgument("structural witness needs a one-parameter family");
  if (m < 1 || m >= n) throw DimensionError("need 1 <= m < n");
  const auto& name = model.parameters().front().name;
  if (grid.empty()) grid = default_grid(model.parameters().front().kind);
  const auto target = marginalize(model.distribution(n, {{name, theta}}), m);
  WitnessResult out;
  out.tolerance = tol;
  out.grid_size = grid.size();
  out.grid_lo = *std::min_element(grid.begin(), grid.end());
  out.grid_hi = *std::max_element(grid.begin(), grid.end());
  for (double t : grid) {
    std::optional<Distribution> candidate;
    try {
      candidate = model.distribution(m, {{name, t}});
    } catch (const InvalidParameter&) {
      continue;
    }
    const double dev = max_deviation(target, *candidate);
    if (dev < out.minimum) {
      out.minimum = dev;
      out.best = t;
    }
  }
  out.certificate = out.minimum >= 10.0 * tol;
  return out;
}

}  // namespace srlproj
