#include <gtest/gtest.h>

#include <random>

#include "srlproj/learning/decomposition.hpp"
#include "srlproj/learning/problog_mle.hpp"
#include "srlproj/semantics/catalog.hpp"
#include "test_support.hpp"

namespace srlproj {
namespace {

const Signature kRedEdge({{"red", 1}, {"edge", 2}});
const Signature kE({{"e", 2}});

// red(0..n/2-1), no edges.
World half_red(int n) {
  World w(kRedEdge, n);
  for (int i = 0; i < n / 2; ++i) w = w.with({0, {i}}, true);
  return w;
}

World random_world(const Signature& sig, int n, std::mt19937_64& rng) {
  return World(sig, n, rng() & ((Encoding{1} << sig.atom_count(n)) - 1));
}

// (1/4)((4lθ̄+2lθ) + 2(4lθ̄+lθ+lθ̄) + (4lθ̄+2lθ̄))
double eq12_closed_form(double t) {
  const double l = std::log(t);
  const double lb = std::log(1.0 - t);
  return 0.25 * ((4 * lb + 2 * l) + 2 * (4 * lb + l + lb) + (4 * lb + 2 * lb));
}

TEST(LoglikTest, Examples) {
  const auto shared = catalog::shared_param_rbn();
  EXPECT_NEAR(loglik(shared, World(kRedEdge, 2), {{"theta", 0.5}}), 6 * std::log(0.5), 1e-12);
  const double t = 0.3;
  EXPECT_NEAR(loglik(shared, World(kRedEdge, 2, 0b11), {{"theta", t}}),
              2 * std::log(t) + 4 * std::log(1 - t), 1e-12);
  EXPECT_NEAR(loglik(catalog::erdos_renyi(), World(kE, 2, 0b1111), {{"p", 0.25}}), 4 * std::log(0.25), 1e-12);
}

TEST(LoglikTest, ZeroProbabilityIsNegInf) {
  EXPECT_EQ(loglik(catalog::red_edge_problog(), World(kRedEdge, 1, 0b01), {}), kNegInf);
}

TEST(MarginalLoglikTest, ProjectiveErdosRenyi) {
  std::mt19937_64 rng(3);
  const auto model = catalog::erdos_renyi();
  for (int i = 0; i < 5; ++i) {
    const auto w = random_world(kE, 2, rng);
    EXPECT_NEAR(marginal_loglik(model, w, 4, {{"p", 0.3}}), loglik(model, w, {{"p", 0.3}}), 1e-9);
  }
}

TEST(MarginalLoglikTest, AgreesWithMarginalTable) {
  const auto model = catalog::red_edge_problog();
  const auto big = model.distribution(3, {});
  const auto table = marginalize(big, 2);
  for (const auto& w : enumerate_worlds(model.signature(), 2)) {
    const double expected = table[w.encoding()] > 0.0 ? std::log(table[w.encoding()]) : kNegInf;
    EXPECT_EQ(marginal_loglik(big, w), expected);
    EXPECT_EQ(marginal_loglik(model, w, 3, {}), expected);
  }
}

TEST(MarginalLoglikTest, SameDomainIsIdentity) {
  const auto model = catalog::block_rbn();
  const World w(model.signature(), 2, 0b10100011);
  EXPECT_EQ(marginal_loglik(model, w, 2, {}), loglik(model, w, {}));
}

TEST(MarginalLoglikTest, HomophilyDiffers) {
  const auto model = catalog::homophily_mln();
  const World w(model.signature(), 2, 0b111011);
  const auto q3 = model.distribution(3, {});
  double mass = 0.0;
  for (const auto& big : enumerate_worlds(model.signature(), 3)) {
    if (restrict_world(big, {0, 1}) == w) mass += q3.probability(big);
  }
  const double marginal = marginal_loglik(model, w, 3, {});
  EXPECT_NEAR(marginal, std::log(mass), 1e-12);
  EXPECT_GT(std::abs(marginal - loglik(model, w, {})), 1e-6);
}

TEST(ExpectedSampleLoglikTest, MatchesEq12) {
  const auto model = catalog::shared_param_rbn();
  const auto source = half_red(4);
  for (int i = 1; i <= 20; ++i) {
    const double t = i / 21.0;
    EXPECT_NEAR(expected_sample_loglik(model, source, 2, {{"theta", t}}), eq12_closed_form(t), 1e-12) << t;
  }
}

TEST(ExpectedSampleLoglikTest, FullSampleAndUniform) {
  std::mt19937_64 rng(9);
  const auto shared = catalog::shared_param_rbn();
  const auto w = random_world(kRedEdge, 3, rng);
  EXPECT_NEAR(expected_sample_loglik(shared, w, 3, {{"theta", 0.2}}), loglik(shared, w, {{"theta", 0.2}}), 1e-12);
  const auto er = catalog::erdos_renyi();
  const auto g = random_world(kE, 4, rng);
  EXPECT_NEAR(expected_sample_loglik(er, g, 2, {{"p", 0.5}}), -4 * std::log(2.0), 1e-12);
}

TEST(MleTest, SharedParameterNumbers) {
  const auto model = catalog::shared_param_rbn();
  const auto source = half_red(4);
  EXPECT_NEAR(mle(subsample_objective(model, source, 2)).theta.at("theta"), 1.0 / 6, 1e-6);
  const auto full = mle(exact_objective(model, source));
  EXPECT_NEAR(full.theta.at("theta"), 0.1, 1e-6);
  EXPECT_TRUE(full.converged);
  EXPECT_TRUE(full.boundary.empty());
  EXPECT_NEAR(expected_argmax(model, source, 2).at("theta"), 1.0 / 6, 1e-6);
}

TEST(MleTest, TwoParameterVariant) {
  const auto model = catalog::two_param_rbn();
  const auto source = half_red(4);
  for (const auto& objective : {exact_objective(model, source), subsample_objective(model, source, 2)}) {
    const auto r = mle(objective);
    EXPECT_NEAR(r.theta.at("theta_r"), 0.5, 1e-6) << objective.description;
    EXPECT_EQ(r.theta.at("theta_e"), 1e-9) << objective.description;
    ASSERT_EQ(r.boundary.size(), 1U);
    EXPECT_EQ(r.boundary[0].param, "theta_e");
    EXPECT_TRUE(r.boundary[0].lower);
  }
}

TEST(MleTest, BernoulliFrequency) {
  std::mt19937_64 rng(17);
  const auto model = catalog::erdos_renyi();
  for (int i = 0; i < 5; ++i) {
    const auto w = random_world(kE, 3, rng);
    const int k = std::popcount(w.encoding());
    if (k == 0 || k == 9) continue;
    EXPECT_NEAR(mle(exact_objective(model, w)).theta.at("p"), k / 9.0, 1e-6);
  }
}

TEST(MleTest, ReportsAtLeastGridValues) {
  const auto model = catalog::shared_param_rbn();
  const auto r = mle(exact_objective(model, half_red(4)));
  for (int i = 1; i < 100; ++i) EXPECT_GE(r.loglik, loglik(model, half_red(4), {{"theta", i / 100.0}}));
}

TEST(MleTest, FlatObjectiveReturnsSet) {
  const Objective flat{"flat", {{"p", ParamKind::kProbability}}, [](const ParamVector&) { return -1.0; }};
  EXPECT_EQ(mle(flat).argmax_set.size(), 101U);
}

TEST(MleTest, WeightsAndNoMaximum) {
  const Objective concave{"q", {{"w", ParamKind::kWeight}}, [](const ParamVector& t) {
                            const double d = t.at("w") - 1.2345;
                            return -d * d;
                          }};
  EXPECT_NEAR(mle(concave).theta.at("w"), 1.2345, 1e-6);
  const Objective dead{"dead", {{"p", ParamKind::kProbability}}, [](const ParamVector&) { return kNegInf; }};
  EXPECT_THROW(mle(dead), NoMaximum);
}

TEST(MleTest, ThreeParametersCoordinateSearch) {
  const Objective bowl{"bowl",
                       {{"a", ParamKind::kProbability}, {"b", ParamKind::kProbability}, {"c", ParamKind::kWeight}},
                       [](const ParamVector& t) {
                         const double x = t.at("a") - 0.3, y = t.at("b") - 0.71, z = t.at("c") + 2.5;
                         return -(x * x + y * y + z * z + 0.5 * x * y);
                       }};
  const auto r = mle(bowl);
  EXPECT_NEAR(r.theta.at("a"), 0.3, 1e-6);
  EXPECT_NEAR(r.theta.at("b"), 0.71, 1e-6);
  EXPECT_NEAR(r.theta.at("c"), -2.5, 1e-6);
}

TEST(MleTest, Json) {
  const auto j = mle(exact_objective(catalog::two_param_rbn(), half_red(4))).to_json();
  EXPECT_TRUE(j.contains("theta"));
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_EQ(j["boundary"][0]["param"], "theta_e");
}

TEST(ExpectedArgmaxTest, ErdosRenyi) {
  std::mt19937_64 rng(21);
  const auto model = catalog::erdos_renyi();
  const auto w = random_world(kE, 3, rng);
  EXPECT_NEAR(expected_argmax(model, w, 3).at("p"), mle(exact_objective(model, w)).theta.at("p"), 1e-12);
  EXPECT_EQ(expected_argmax(model, World(kE, 4), 2).at("p"), 1e-9);
}

TEST(SamplingTest, SharedParameterFailsBoth) {
  const auto r = check_sampling(catalog::shared_param_rbn(), half_red(4), 2);
  EXPECT_FALSE(r.unbiasedness.pass);
  EXPECT_FALSE(r.consistency.pass);
  EXPECT_NEAR(r.consistency.distance, 1.0 / 6 - 0.1, 1e-6);
  EXPECT_FALSE(check_unbiasedness(catalog::shared_param_rbn(), half_red(4), 2).pass);
}

TEST(SamplingTest, TwoParameterPassesBoth) {
  const auto model = catalog::two_param_rbn();
  EXPECT_TRUE(check_unbiasedness(model, half_red(4), 2).pass);
  EXPECT_TRUE(check_consistency(model, half_red(4), 2).pass);
}

// With self-loops a 2-subsample holds 2 loops and 2 off-diagonal pairs,
// while the full graph over [4] holds 4 and 12; loops are oversampled.
TEST(SamplingTest, ErdosRenyiSelfLoopBias) {
  std::mt19937_64 rng(99);
  const auto model = catalog::erdos_renyi();
  for (int trial = 0; trial < 5; ++trial) {
    const auto w = random_world(kE, 4, rng);
    int diag = 0, off = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) (i == j ? diag : off) += w.holds({0, {i, j}});
    if (diag + off == 0 || diag + off == 16) continue;
    const auto r = check_sampling(model, w, 2);
    EXPECT_NEAR(r.expected.theta.at("p"), off / 24.0 + diag / 8.0, 1e-6);
    EXPECT_NEAR(r.full.theta.at("p"), (off + diag) / 16.0, 1e-6);
    EXPECT_EQ(r.consistency.pass, off == 3 * diag);
  }
  // Loops and pairs in the full-graph proportion: consistent.
  World balanced(kE, 4);
  for (const auto& [i, j] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {2, 3}, {3, 1}}) {
    balanced = balanced.with({0, {i, j}}, true);
  }
  EXPECT_TRUE(check_consistency(model, balanced, 2).pass);
}

TEST(SamplingTest, VerdictInvariantUnderRelabeling) {
  const auto model = catalog::shared_param_rbn();
  const Permutation pi(std::vector<int>{3, 1, 0, 2});
  EXPECT_EQ(check_consistency(model, apply_permutation(half_red(4), pi), 2).pass,
            check_consistency(model, half_red(4), 2).pass);
  const auto two = catalog::two_param_rbn();
  EXPECT_TRUE(check_consistency(two, apply_permutation(half_red(4), pi), 2).pass);
}

TEST(DecompositionTest, BlockModelReassembles) {
  const auto spec = parse_rbn(catalog::kBlockParamsRbn);
  const auto dec = decompose_loglik(spec, 2);
  EXPECT_EQ(dec.k(), 2);
  EXPECT_FALSE(dec.separable());  // edge(X,X) shares parameters with edge(X,Y)
  const auto model = Model::from_spec(spec);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int probe = 0; probe < 5; ++probe) {
    const ParamVector theta{{"r", u(rng)}, {"b", u(rng)}, {"p_rr", u(rng)}, {"p_bb", u(rng)}, {"p_other", u(rng)}};
    for (const auto& w : enumerate_worlds(spec.signature, 2)) {
      const double direct = loglik(model, w, theta);
      const double value = dec.evaluate(w, theta);
      if (direct == kNegInf) {
        EXPECT_EQ(value, kNegInf);
      } else {
        EXPECT_NEAR(value, direct, 1e-9);
      }
    }
  }
}

TEST(DecompositionTest, Rejections) {
  try {
    decompose_loglik(parse_rbn(catalog::kSharedParamRbn), 2);
    FAIL() << "expected SeparabilityError";
  } catch (const SeparabilityError& e) {
    EXPECT_EQ(e.parameter(), "theta");
  }
  EXPECT_THROW(decompose_loglik(parse_rbn(catalog::kNoisyOrRbn), 2), NotInFragment);
  EXPECT_THROW(decompose_loglik(parse_rbn(catalog::kTwoParamRbn), 1), DimensionError);
}

TEST(DecompositionTest, SeparableModels) {
  EXPECT_TRUE(decompose_loglik(parse_rbn("red(X) <- $a;\nblue(X) <- if red(X) : $b else : $c;"), 2).separable());
  EXPECT_TRUE(decompose_loglik(parse_rbn("red(X) <- $r;\nedge(X,Y) <- if red(X) & red(Y) : 0.5 else : 0.2;"), 2)
                  .separable());
  const auto dec = decompose_loglik(parse_rbn(catalog::kTwoParamRbn), 2);
  EXPECT_EQ(dec.level_params(1), (std::set<std::string>{"theta_e", "theta_r"}));
  EXPECT_EQ(dec.level_params(2), (std::set<std::string>{"theta_e"}));
}

TEST(Prop6Test, TwoParameterHalfRedWorld) {
  const auto dec = decompose_loglik(parse_rbn(catalog::kTwoParamRbn), 2);
  const std::vector<ParamVector> probes{{{"theta_r", 0.3}, {"theta_e", 0.6}}, {{"theta_r", 0.8}, {"theta_e", 0.1}}};
  const auto r = verify_prop6(dec, half_red(4), 2, probes);
  EXPECT_TRUE(r.identity);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(verify_prop6(dec, half_red(4), 4, probes).pass);
}

TEST(Prop6Test, SeparableModelOnRandomWorlds) {
  const auto spec = parse_rbn("red(X) <- $r;\nedge(X,Y) <- if red(X) & red(Y) : 0.5 else : 0.2;");
  const auto dec = decompose_loglik(spec, 2);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 3; ++trial) {
    const auto r = verify_prop6(dec, random_world(spec.signature, 4, rng), 2, {{{"r", 0.4}}, {{"r", 0.7}}});
    EXPECT_TRUE(r.identity);
    EXPECT_TRUE(r.pass) << r.to_json().dump();
  }
}

TEST(Prop6Test, LevelIdentityHoldsWithoutSeparability) {
  const auto spec = parse_rbn(catalog::kBlockParamsRbn);
  const auto dec = decompose_loglik(spec, 2);
  // A world with positive probability: no node both red and black.
  World w(spec.signature, 4);
  for (const auto& a : std::vector<GroundAtom>{{0, {0}}, {0, {2}}, {1, {1}}, {2, {0, 2}}, {2, {1, 1}}, {2, {3, 0}}}) {
    w = w.with(a, true);
  }
  const std::vector<ParamVector> probes{{{"r", 0.4}, {"b", 0.5}, {"p_rr", 0.3}, {"p_bb", 0.6}, {"p_other", 0.2}}};
  const auto r = verify_prop6(dec, w, 2, probes);
  EXPECT_FALSE(r.separable);
  EXPECT_TRUE(r.identity);
  EXPECT_LT(r.identity_gap, 1e-9);
}

TEST(ProblogMleTest, RedFrequency) {
  const auto spec = parse_problog(catalog::kRedEdgeProblog);
  World w(spec.signature, 4);
  for (int i = 0; i < 3; ++i) {
    w = w.with({0, {i}}, true);
    for (int j = 0; j < 3; ++j) w = w.with({1, {i, j}}, true);
  }
  const auto r = problog_complete_mle(spec, w);
  ASSERT_EQ(r.fact_estimates.size(), 1U);
  EXPECT_DOUBLE_EQ(r.fact_estimates[0], 0.75);
  // Oracle: maximize the exact likelihood of the parameterized program.
  const auto param = Model::from_spec(parse_problog("$p :: red(X).\nedge(X,Y) :- red(X), red(Y).\n"));
  const auto grid = mle(exact_objective(param, w));
  EXPECT_NEAR(grid.theta.at("p"), 0.75, 1e-6);
  EXPECT_DOUBLE_EQ(problog_complete_mle(std::get<ProblogSpec>(*param.spec()), w).theta.at("p"),
                   0.75);
}

TEST(ProblogMleTest, AllRedClamps) {
  const auto spec = parse_problog("$p :: red(X).\nedge(X,Y) :- red(X), red(Y).\n");
  const World all(spec.signature, 2, 0b111111);
  const auto r = problog_complete_mle(spec, all);
  EXPECT_EQ(r.fact_estimates[0], 1.0);
  EXPECT_EQ(r.theta.at("p"), 1.0 - 1e-9);
}

TEST(ProblogMleTest, Rejections) {
  const auto latent = parse_problog(catalog::kLatentRuleProblog);
  EXPECT_THROW(problog_complete_mle(latent, World(latent.signature, 2)), NotFullyObservable);
  const auto spec = parse_problog(catalog::kRedEdgeProblog);
  EXPECT_THROW(problog_complete_mle(spec, World(spec.signature, 2, 0b000001)), ZeroProbabilityWorld);
  EXPECT_THROW(problog_complete_mle(spec, World(spec.signature, 2, 0b001000)), ZeroProbabilityWorld);
}

}  // namespace
}  // namespace srlproj
