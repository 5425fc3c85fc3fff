#pragma once

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "srlproj/learning/consistency.hpp"
#include "srlproj/learning/likelihood.hpp"
#include "srlproj/projectivity/projectivity.hpp"
#include "srlproj/stats/stats.hpp"

namespace srlproj::repro {

struct Row {
  std::string quantity;
  std::string value;
  std::string expected;
  bool pass = false;
};

struct Table {
  std::string title;
  std::vector<Row> rows;

  bool pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
  }

  void check(std::string quantity, double value, double expected, double tol) {
    rows.push_back({std::move(quantity), format_sig12(value), format_sig12(expected) + " ± " + format_sig12(tol),
                    std::abs(value - expected) <= tol});
  }

  void check_flag(std::string quantity, bool value, bool expected) {
    rows.push_back({std::move(quantity), value ? "true" : "false", expected ? "true" : "false", value == expected});
  }

  std::string render() const {
    // Display width in code points, so '±' counts once.
    const auto width = [](const std::string& s) {
      return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char ch) { return (ch & 0xC0) != 0x80; }));
    };
    std::size_t w0 = 8, w1 = 5, w2 = 8;
    for (const auto& r : rows) {
      w0 = std::max(w0, width(r.quantity));
      w1 = std::max(w1, width(r.value));
      w2 = std::max(w2, width(r.expected));
    }
    const auto pad = [&](std::string s, std::size_t w) { return s + std::string(w > width(s) ? w - width(s) : 0, ' '); };
    std::string out = title + "\n";
    out += pad("quantity", w0) + "  " + pad("value", w1) + "  " + pad("expected", w2) + "  status\n";
    for (const auto& r : rows) {
      out += pad(r.quantity, w0) + "  " + pad(r.value, w1) + "  " + pad(r.expected, w2) + "  " +
             (r.pass ? "ok" : "MISMATCH") + "\n";
    }
    out += pass() ? "result: ok\n" : "result: MISMATCH\n";
    return out;
  }

  nlohmann::json to_json() const {
    auto rows_json = nlohmann::json::array();
    for (const auto& r : rows) {
      rows_json.push_back({{"quantity", r.quantity}, {"value", r.value}, {"expected", r.expected}, {"pass", r.pass}});
    }
    return {{"case", title}, {"rows", rows_json}, {"pass", pass()}};
  }
};

inline std::string fmt(const char* pattern, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

// red(0..n/2-1) true, everything else false.
inline World half_red_world(int n) {
  World w(Signature({{"red", 1}, {"edge", 2}}), n);
  for (int i = 0; i < n / 2; ++i) w = w.with({0, {i}}, true);
  return w;
}

inline Table mln_eq6() {
  Table t{"mln-eq6", {}};
  for (double w : {-2.0, -1.0, 0.0, 1.0, 2.0}) t.check(fmt("q(2, %g)", w, 0), q_mln(2, w), 0.5, 1e-12);
  for (double w : {0.5, 1.2}) {
    const double q2 = q_mln(2, w), q3 = q_mln(3, w), q4 = q_mln(4, w);
    t.rows.push_back({fmt("q(3, %g) - q(2, %g)", w, w), format_sig12(q3 - q2), ">= 1e-06", q3 - q2 >= 1e-6});
    t.rows.push_back({fmt("q(4, %g) - q(3, %g)", w, w), format_sig12(q4 - q3), ">= 1e-06", q4 - q3 >= 1e-6});
  }
  return t;
}

inline Table rbn_noisyor() {
  Table t{"rbn-noisyor", {}};
  for (double theta : {0.1, 0.5, 0.9}) t.check(fmt("q(2, %g)", theta, 0), q_rbn(2, theta), 0.0, 1e-12);
  const double q3 = q_rbn(3, 0.5);
  t.rows.push_back({"q(3, 0.5)", format_sig12(q3), "> 0.001", q3 > 1e-3});
  const double q4 = q_rbn(4, 0.5);
  t.rows.push_back({"q(4, 0.5)", format_sig12(q4), "> 0", q4 > 0.0});
  return t;
}

inline Table shared_param() {
  Table t{"shared-param", {}};
  const auto model = catalog::shared_param_rbn();
  const auto source = half_red_world(4);
  const auto report = check_sampling(model, source, 2);
  t.check("theta* (expected subsample objective)", report.expected.theta.at("theta"), 1.0 / 6, 1e-5);
  t.check("theta** (full world, n=4)", report.full.theta.at("theta"), 0.1, 1e-5);
  t.check("E[argmax] over subsamples", report.unbiasedness.lhs.front().at("theta"), 1.0 / 6, 1e-5);
  t.check_flag("unbiasedness holds", report.unbiasedness.pass, false);
  t.check_flag("consistency holds", report.consistency.pass, false);
  return t;
}

inline Table two_param() {
  Table t{"two-param", {}};
  const auto model = catalog::two_param_rbn();
  const auto source = half_red_world(4);
  const auto report = check_sampling(model, source, 2);
  for (const auto* r : {&report.expected, &report.full}) {
    const std::string which = r == &report.full ? "full world" : "expected subsample";
    t.check("theta_r (" + which + ")", r->theta.at("theta_r"), 0.5, 1e-5);
    t.check_flag("theta_e at lower bound (" + which + ")", r->at_boundary("theta_e") && r->theta.at("theta_e") <= 1e-9,
                 true);
  }
  t.check_flag("unbiasedness holds", report.unbiasedness.pass, true);
  t.check_flag("consistency holds", report.consistency.pass, true);
  return t;
}

inline Table lemma1(std::uint64_t seed = 2024, int instances = 50) {
  Table t{"lemma1", {}};
  const Signature sig({{"red", 1}, {"edge", 2}});
  std::mt19937_64 rng(seed);
  for (int i = 0; i < instances; ++i) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int m = 1 + static_cast<int>(rng() % n);
    const int k = 1 + static_cast<int>(rng() % m);
    const World source(sig, n, rng() & ((Encoding{1} << sig.atom_count(n)) - 1));
    World pattern(sig, k, rng() & ((Encoding{1} << sig.atom_count(k)) - 1));
    if (i % 2 == 0) {
      std::vector<int> idx(static_cast<std::size_t>(k));
      std::iota(idx.begin(), idx.end(), 0);
      pattern = restrict_world(source, idx);
    }
    const auto r = verify_lemma1(source, m, pattern);
    const auto str = [](const Rational& q) { return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator()); };
    t.rows.push_back({"n=" + std::to_string(n) + " m=" + std::to_string(m) + " k=" + std::to_string(k) +
                          " pattern=" + std::to_string(pattern.encoding()),
                      str(r.lhs), str(r.rhs), r.equal});
  }
  return t;
}

inline Table prop4() {
  Table t{"prop4", {}};
  const std::vector<std::pair<Model, ParamVector>> models = {
      {catalog::erdos_renyi(), {{"p", 0.3}}},
      {catalog::clique_empty(), {}},
      {catalog::block_rbn(), {}},
      {catalog::red_edge_problog(), {}},
  };
  for (const auto& [model, theta] : models) {
    for (int n : {3, 4}) {
      // One marginalization serves every ω; it equals marginal_loglik per world.
      const auto marginal = marginalize(model.distribution(n, theta), 2);
      double worst = 0.0;
      for (const auto& w : enumerate_worlds(model.signature(), 2)) {
        const double a = marginal[w.encoding()] > 0.0 ? std::log(marginal[w.encoding()]) : kNegInf;
        const double b = loglik(model, w, theta);
        if (a == b) continue;
        worst = std::max(worst, std::abs(a - b));
      }
      t.check(model.id() + " n=" + std::to_string(n) + " max |ML - L|", worst, 0.0, 1e-9);
    }
  }
  return t;
}

inline const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names{"mln-eq6", "rbn-noisyor", "shared-param", "two-param", "lemma1", "prop4"};
  return names;
}

inline Table run(const std::string& name) {
  if (name == "mln-eq6") return mln_eq6();
  if (name == "rbn-noisyor") return rbn_noisyor();
  if (name == "shared-param") return shared_param();
  if (name == "two-param") return two_param();
  if (name == "lemma1") return lemma1();
  if (name == "prop4") return prop4();
  throw InvalidArgument("unknown repro case '" + name + "'");
}

}  // namespace srlproj::repro
