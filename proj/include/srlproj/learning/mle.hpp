#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "srlproj/core/io.hpp"
#include "srlproj/learning/likelihood.hpp"

namespace srlproj {

struct MleOptions {
  int grid_points = 101;
  double probability_lo = 1e-9;
  double probability_hi = 1.0 - 1e-9;
  double weight_lo = -10.0;
  double weight_hi = 10.0;
  double positive_lo = 1e-6;
  double positive_hi = 10.0;
  double xtol = 1e-11;
  int max_sweeps = 200;
  double flat_tol = 1e-9;  // grid points this close to the best join the argmax set
  std::size_t max_full_grid_dims = 2;
};

struct BoundHit {
  std::string param;
  bool lower = true;
  double value = 0.0;
};

struct MleResult {
  ParamVector theta;
  double loglik = kNegInf;
  std::vector<BoundHit> boundary;
  bool converged = false;
  int iterations = 0;
  long evaluations = 0;
  std::vector<ParamVector> argmax_set;  // refined point first

  bool at_boundary(const std::string& name) const {
    return std::any_of(boundary.begin(), boundary.end(), [&](const auto& b) { return b.param == name; });
  }

  nlohmann::json to_json() const {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [k, v] : theta) t[k] = json_number(v);
    auto b = nlohmann::json::array();
    for (const auto& h : boundary) {
      b.push_back({{"param", h.param}, {"side", h.lower ? "lower" : "upper"}, {"value", json_number(h.value)}});
    }
    return {{"theta", t},
            {"loglik", json_number(loglik)},
            {"boundary", b},
            {"converged", converged},
            {"iterations", iterations},
            {"argmax_set_size", argmax_set.size()}};
  }
};

namespace detail {

struct Box {
  std::vector<double> lo, hi;
};

inline Box parameter_box(const std::vector<ParamInfo>& params, const MleOptions& o) {
  Box b;
  for (const auto& p : params) {
    switch (p.kind) {
      case ParamKind::kProbability:
        b.lo.push_back(o.probability_lo);
        b.hi.push_back(o.probability_hi);
        break;
      case ParamKind::kWeight:
        b.lo.push_back(o.weight_lo);
        b.hi.push_back(o.weight_hi);
        break;
      case ParamKind::kPositive:
        b.lo.push_back(o.positive_lo);
        b.hi.push_back(o.positive_hi);
        break;
    }
  }
  return b;
}

// Evenly spaced over [lo, hi]; probability grids land on i/(G-1) with the
// ends pulled in to the clamps.
inline std::vector<double> axis_grid(double lo, double hi, int points, bool unit) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    g.push_back(unit ? std::clamp(t, lo, hi) : lo + (hi - lo) * t);
  }
  return g;
}

// Maximizes a unimodal f on [a, b].
template <typename F>
double golden_section(F&& f, double a, double b, double xtol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

}  // namespace detail

/// Grid scan then derivative-free refinement. One or two parameters get a
/// full grid; more use coordinate-wise grid sweeps. Refinement is golden
/// section per coordinate, repeated until the point stops moving.
inline MleResult mle(const Objective& objective, const MleOptions& options = {}) {
  const auto& params = objective.params;
  const std::size_t d = params.size();
  if (d < 1 || d > 8) throw InvalidArgument("mle supports 1 to 8 parameters");
  const auto box = detail::parameter_box(params, options);
  MleResult out;
  const auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    ParamVector t;
    for (std::size_t i = 0; i < d; ++i) t[params[i].name] = x[i];
    const double v = objective.value(t);
    return std::isnan(v) ? kNegInf : v;
  };
  std::vector<std::vector<double>> axes;
  for (std::size_t i = 0; i < d; ++i) {
    axes.push_back(detail::axis_grid(box.lo[i], box.hi[i], options.grid_points, params[i].kind == ParamKind::kProbability));
  }

  std::vector<double> best(d);
  double best_value = kNegInf;
  std::vector<std::pair<std::vector<double>, double>> probes;
  if (d <= options.max_full_grid_dims) {
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      std::vector<double> x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = axes[i][idx[i]];
      const double v = eval(x);
      probes.emplace_back(x, v);
      if (v > best_value) {
        best_value = v;
        best = x;
      }
      std::size_t i = d;
      while (i > 0 && ++idx[i - 1] == axes[i - 1].size()) idx[--i] = 0;
      if (i == 0) break;
    }
  } else {
    for (std::size_t i = 0; i < d; ++i) best[i] = axes[i][axes[i].size() / 2];
    best_value = eval(best);
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      bool moved = false;
      for (std::size_t i = 0; i < d; ++i) {
        auto x = best;
        for (double g : axes[i]) {
          x[i] = g;
          const double v = eval(x);
          if (v > best_value) {
            best_value = v;
            best = x;
            moved = true;
          }
        }
      }
      if (!moved) break;
    }
  }
  if (best_value == kNegInf) throw NoMaximum("objective is -inf or undefined on the whole grid");

  // Coordinate-wise golden section, starting within one grid step.
  std::vector<double> radius(d);
  for (std::size_t i = 0; i < d; ++i) radius[i] = (box.hi[i] - box.lo[i]) / (options.grid_points - 1);
  for (out.iterations = 1; out.iterations <= options.max_sweeps; ++out.iterations) {
    double moved = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double a = std::max(box.lo[i], best[i] - radius[i]);
      const double b = std::min(box.hi[i], best[i] + radius[i]);
      auto x = best;
      const auto along = [&](double v) {
        x[i] = v;
        return eval(x);
      };
      const double candidate = detail::golden_section(along, a, b, options.xtol);
      const double v = along(candidate);
      if (v > best_value) {
        moved = std::max(moved, std::abs(candidate - best[i]));
        best_value = v;
        best[i] = candidate;
      }
    }
    if (moved <= options.xtol) {
      out.converged = true;
      break;
    }
    for (std::size_t i = 0; i < d; ++i) radius[i] = std::max(4.0 * moved, 1e-6);
  }
  out.iterations = std::min(out.iterations, options.max_sweeps);

  // Snap maxima sitting against a bound onto it.
  for (std::size_t i = 0; i < d; ++i) {
    for (const bool lower : {true, false}) {
      const double bound = lower ? box.lo[i] : box.hi[i];
      if (std::abs(best[i] - bound) > 1e-6) continue;
      auto x = best;
      x[i] = bound;
      const double v = eval(x);
      if (v >= best_value - 1e-12) {
        best = x;
        best_value = std::max(best_value, v);
        out.boundary.push_back({params[i].name, lower, bound});
      }
    }
  }

  const auto to_params = [&](const std::vector<double>& x) {
    ParamVector t;
    for (std::size_t i = 0; i < d; ++i) t[params[i].name] = x[i];
    return t;
  };
  out.theta = to_params(best);
  out.loglik = best_value;
  out.argmax_set.push_back(out.theta);
  for (const auto& [x, v] : probes) {
    if (v >= best_value - options.flat_tol && x != best) out.argmax_set.push_back(to_params(x));
  }
  return out;
}

/// Largest coordinate difference.
inline double param_distance(const ParamVector& a, const ParamVector& b) {
  double worst = 0.0;
  for (const auto& [k, v] : a) worst = std::max(worst, std::abs(v - b.at(k)));
  return worst;
}

inline double hausdorff(const std::vector<ParamVector>& a, const std::vector<ParamVector>& b) {
  const auto directed = [](const auto& from, const auto& to) {
    double worst = 0.0;
    for (const auto& x : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& y : to) nearest = std::min(nearest, param_distance(x, y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace srlproj
