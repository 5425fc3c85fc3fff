#pragma once

#include <cmath>
#include <string>

#include "srlproj/lang/parser.hpp"
#include "srlproj/semantics/model.hpp"

namespace srlproj::catalog {

// The example models; models/*.{rbn,mln,plp} carry the same programs.

inline constexpr const char* kBlockRbn =
    "red(X) <- 0.3;\n"
    "black(X) <- if red(X) : 0 else : 0.5;\n"
    "edge(X,Y) <- if red(X) & red(Y) : 0.7 else if black(X) & black(Y) : 0.4 else : 0.05;\n";

inline constexpr const char* kBlockParamsRbn =
    "red(X) <- $r;\n"
    "black(X) <- if red(X) : 0 else : $b;\n"
    "edge(X,Y) <- if red(X) & red(Y) : $p_rr else if black(X) & black(Y) : $p_bb else : $p_other;\n";

inline constexpr const char* kNoisyOrRbn =
    "edge(X,Y) <- 0.5;\n"
    "a(X) <- noisy-or{ if edge(X,Y) : $theta | Y };\n";

inline constexpr const char* kSharedParamRbn = "red(X) <- $theta;\nedge(X,Y) <- $theta;\n";
inline constexpr const char* kTwoParamRbn = "red(X) <- $theta_r;\nedge(X,Y) <- $theta_e;\n";
inline constexpr const char* kErdosRenyiRbn = "e(X,Y) <- $p;\n";

inline constexpr const char* kHomophilyMln =
    "edge(X,Y) ^ red(X) ^ red(Y) :: 1.2;\n"
    "edge(X,Y) ^ red(X) ^ !red(Y) :: -0.2;\n";
inline constexpr const char* kExample3Mln = "a(X) ^ e(X,Y) :: $w;\n";
inline constexpr const char* kFragmentMln = "red(X) ^ edge(X,X) :: -1.5;\nedge(X,Y) ^ edge(Y,X) :: 0.8;\n";

inline constexpr const char* kRedEdgeProblog = "0.8 :: red(X).\nedge(X,Y) :- red(X), red(Y).\n";
inline constexpr const char* kLatentRuleProblog =
    "0.8 :: red(X).\n"
    "0.5 :: rule(X,Y).\n"
    "edge(X,Y) :- red(X), red(Y), rule(X,Y).\n"
    "observable red/1.\nobservable edge/2.\n";
inline constexpr const char* kCliqueEmptyProblog = "0.5 :: c.\ne(X,Y) :- c.\nobservable e/2.\n";

inline Model block_rbn() { return Model::from_spec(parse_rbn(kBlockRbn), "block-rbn"); }
inline Model block_params_rbn() { return Model::from_spec(parse_rbn(kBlockParamsRbn), "block-params-rbn"); }
inline Model noisy_or_rbn() { return Model::from_spec(parse_rbn(kNoisyOrRbn), "noisy-or-rbn"); }
inline Model shared_param_rbn() { return Model::from_spec(parse_rbn(kSharedParamRbn), "shared-param-rbn"); }
inline Model two_param_rbn() { return Model::from_spec(parse_rbn(kTwoParamRbn), "two-param-rbn"); }
inline Model erdos_renyi() { return Model::from_spec(parse_rbn(kErdosRenyiRbn), "erdos-renyi"); }
inline Model homophily_mln() { return Model::from_spec(parse_mln(kHomophilyMln), "homophily-mln"); }
inline Model example3_mln() { return Model::from_spec(parse_mln(kExample3Mln), "example3-mln"); }
inline Model fragment_mln() { return Model::from_spec(parse_mln(kFragmentMln), "fragment-mln"); }
inline Model red_edge_problog() { return Model::from_spec(parse_problog(kRedEdgeProblog), "red-edge-problog"); }
inline Model latent_rule_problog() { return Model::from_spec(parse_problog(kLatentRuleProblog), "latent-rule-problog"); }
inline Model clique_empty() { return Model::from_spec(parse_problog(kCliqueEmptyProblog), "clique-empty"); }

/// Sparse random graphs: every directed edge (self-loops included) present
/// independently with probability θ/n. Needs 0 < θ < n.
inline Model sparse_graph() {
  const Signature sig({{"e", 2}});
  return Model::custom("sparse-graph", sig, {{"theta", ParamKind::kPositive}}, [sig](int n, const ParamVector& theta) {
    const double t = resolve_parameters({{"theta", ParamKind::kPositive}}, theta).front();
    const double p = t / n;
    if (!(p < 1.0)) throw InvalidParameter("sparse graph needs theta < n");
    const auto atoms = sig.atom_count(n);
    require_within_cap(static_cast<std::size_t>(atoms));
    std::vector<double> probs(std::size_t{1} << atoms);
    for (std::size_t e = 0; e < probs.size(); ++e) {
      const int k = std::popcount(e);
      probs[e] = std::pow(p, k) * std::pow(1.0 - p, static_cast<double>(atoms) - k);
    }
    return Distribution(sig, n, std::move(probs));
  });
}

}  // namespace srlproj::catalog
