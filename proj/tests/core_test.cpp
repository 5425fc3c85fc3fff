#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "srlproj/core/distribution.hpp"
#include "srlproj/core/io.hpp"

namespace srlproj {
namespace {

const Signature kRedEdge({{"red", 1}, {"edge", 2}});
const Signature kEdge({{"edge", 2}});

World make_world(const Signature& sig, int n, std::initializer_list<GroundAtom> atoms) {
  World w(sig, n);
  for (const auto& a : atoms) w = w.with(a, true);
  return w;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

// Relabels atom by atom through the world API only.
World permute_oracle(const World& w, const Permutation& pi) {
  World out(w.signature(), w.domain_size());
  for (auto atom : w.true_atoms()) {
    for (int& a : atom.args) a = pi(a);
    out = out.with(atom, true);
  }
  return out;
}

TEST(SignatureTest, CanonicalAtomOrder) {
  EXPECT_EQ(kRedEdge.atom_count(2), 6U);
  EXPECT_EQ(kRedEdge.atom_index({0, {1}}, 2), 1U);
  EXPECT_EQ(kRedEdge.atom_index({1, {0, 0}}, 2), 2U);
  EXPECT_EQ(kRedEdge.atom_index({1, {0, 1}}, 2), 3U);
  EXPECT_EQ(kRedEdge.atom_index({1, {1, 0}}, 2), 4U);
  for (std::uint64_t i = 0; i < kRedEdge.atom_count(3); ++i) {
    EXPECT_EQ(kRedEdge.atom_index(kRedEdge.atom_at(i, 3), 3), i);
  }
  EXPECT_THROW(Signature({{"r", 1}, {"r", 2}}), InvalidArgument);
  EXPECT_THROW(Signature({{"r", -1}}), InvalidArgument);
}

TEST(EnumerateWorldsTest, Counts) {
  EXPECT_EQ(std::ranges::distance(enumerate_worlds(kEdge, 1)), 2);
  EXPECT_EQ(std::ranges::distance(enumerate_worlds(kRedEdge, 2)), 64);
  EXPECT_EQ(std::ranges::distance(enumerate_worlds(Signature({{"red", 1}}), 3)), 8);
  Encoding expected = 0;
  for (const auto& w : enumerate_worlds(kRedEdge, 2)) EXPECT_EQ(w.encoding(), expected++);
}

TEST(EnumerateWorldsTest, CapExceeded) {
  ScopedAtomCap cap(10);
  EXPECT_THROW(enumerate_worlds(kRedEdge, 3), CapExceeded);
  EXPECT_NO_THROW(enumerate_worlds(kRedEdge, 2));
}

TEST(WorldTest, EncodingRoundTrip) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& w : enumerate_worlds(kRedEdge, n)) {
      World rebuilt(kRedEdge, n);
      for (const auto& atom : w.true_atoms()) rebuilt = rebuilt.with(atom, true);
      EXPECT_EQ(rebuilt, w);
    }
  }
}

TEST(ApplyPermutationTest, Examples) {
  const auto w = make_world(kEdge, 2, {{0, {0, 1}}});
  EXPECT_EQ(apply_permutation(w, Permutation({1, 0})), make_world(kEdge, 2, {{0, {1, 0}}}));

  const auto v = make_world(kRedEdge, 3, {{0, {0}}, {1, {0, 2}}});
  EXPECT_EQ(apply_permutation(v, Permutation::identity(3)), v);
  const Permutation cycle({1, 2, 0});
  EXPECT_EQ(apply_permutation(v, cycle), permute_oracle(v, cycle));
  EXPECT_EQ(apply_permutation(v, cycle), make_world(kRedEdge, 3, {{0, {1}}, {1, {1, 0}}}));
}

TEST(ApplyPermutationTest, MatchesOracleAndIsGroupAction) {
  const auto perms = all_permutations(3);
  for (const auto& w : enumerate_worlds(kRedEdge, 3)) {
    if (w.encoding() % 7 != 0) continue;
    for (const auto& p : perms) {
      ASSERT_EQ(apply_permutation(w, p), permute_oracle(w, p));
      for (const auto& q : perms) {
        EXPECT_EQ(apply_permutation(apply_permutation(w, q), p), apply_permutation(w, p.compose(q)));
      }
    }
  }
}

TEST(RestrictWorldTest, Examples) {
  const auto w = make_world(kEdge, 3, {{0, {0, 1}}});
  EXPECT_EQ(restrict_world(w, {0, 1}), make_world(kEdge, 2, {{0, {0, 1}}}));
  EXPECT_EQ(restrict_world(w, {1, 0}), make_world(kEdge, 2, {{0, {1, 0}}}));
  EXPECT_EQ(restrict_world(w, {1, 2}), World(kEdge, 2));
  EXPECT_THROW(restrict_world(w, {1, 1}), DuplicateIndex);
  EXPECT_THROW(restrict_world(w, {0, 3}), DimensionError);
}

TEST(RestrictWorldTest, CommutesWithPermutation) {
  const auto perms = all_permutations(3);
  const std::vector<std::vector<int>> tuples = {{0}, {2}, {0, 1}, {2, 0}, {1, 2}, {0, 1, 2}, {2, 1, 0}};
  for (const auto& w : enumerate_worlds(kRedEdge, 3)) {
    for (const auto& p : perms) {
      const auto inv = p.inverse();
      for (const auto& t : tuples) {
        std::vector<int> pulled;
        for (int i : t) pulled.push_back(inv(i));
        ASSERT_EQ(restrict_world(apply_permutation(w, p), t), restrict_world(w, pulled));
      }
    }
  }
}

Distribution erdos_renyi_oracle(int n, double p) {
  const auto atoms = kEdge.atom_count(n);
  std::vector<double> probs(std::size_t{1} << atoms);
  for (std::size_t e = 0; e < probs.size(); ++e) {
    const int edges = std::popcount(e);
    probs[e] = std::pow(p, edges) * std::pow(1 - p, static_cast<double>(atoms) - edges);
  }
  return Distribution(kEdge, n, probs);
}

Distribution clique_empty(int n) {
  std::vector<double> probs(std::size_t{1} << kEdge.atom_count(n), 0.0);
  probs.front() += 0.5;
  probs.back() += 0.5;
  return Distribution(kEdge, n, probs);
}

TEST(MarginalizeTest, Examples) {
  const auto er = erdos_renyi_oracle(3, 0.5);
  EXPECT_LE(max_deviation(marginalize(er, 3), er), 0.0);
  const auto m2 = marginalize(er, 2);
  ASSERT_EQ(m2.size(), 16U);
  for (double p : m2.probs()) EXPECT_NEAR(p, 1.0 / 16, 1e-12);

  const auto ce = marginalize(clique_empty(3), 2);
  EXPECT_NEAR(ce[0], 0.5, 1e-12);
  EXPECT_NEAR(ce[15], 0.5, 1e-12);
  EXPECT_LE(max_deviation(ce, clique_empty(2)), 1e-12);

  EXPECT_THROW(marginalize(er, 4), DimensionError);
}

TEST(MarginalizeTest, Composes) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = 3;
  std::vector<double> probs(std::size_t{1} << kRedEdge.atom_count(n));
  double total = 0;
  for (double& p : probs) total += (p = unit(rng));
  for (double& p : probs) p /= total;
  const Distribution q(kRedEdge, n, probs);
  for (int m = 1; m <= n; ++m) {
    const auto qm = marginalize(q, m);
    for (int k = 1; k <= m; ++k) {
      EXPECT_LE(max_deviation(marginalize(qm, k), marginalize(q, k)), 1e-9);
    }
  }
}

TEST(DistributionTest, RejectsUnnormalized) {
  EXPECT_THROW(Distribution(kEdge, 1, {0.5, 0.6}), InvalidArgument);
  EXPECT_THROW(Distribution(kEdge, 1, {1.0}), DimensionError);
}

TEST(WorldIoTest, ParseAndFormat) {
  const auto w = parse_world("domain 3\n// comment\nred(0).\nedge(0,2).\n", kRedEdge);
  EXPECT_EQ(w, make_world(kRedEdge, 3, {{0, {0}}, {1, {0, 2}}}));
  EXPECT_EQ(parse_world(format_world(w), kRedEdge), w);
  EXPECT_EQ(parse_world(format_world(w, true)), w);

  const auto inferred = parse_world("domain 2\nedge(1,0).\n");
  EXPECT_EQ(inferred.signature(), kEdge);
  EXPECT_THROW(parse_world("red(0).\n"), SyntaxError);
  EXPECT_THROW(parse_world("domain 2\nred(5).\n"), SyntaxError);
  EXPECT_THROW(parse_world("domain 2\nred(0,1).\n", kRedEdge), ArityError);
}

TEST(WorldIoTest, DistributionJson) {
  const auto j = distribution_to_json(clique_empty(1));
  ASSERT_EQ(j.size(), 2U);
  EXPECT_EQ(j[1]["world"], 1);
  EXPECT_DOUBLE_EQ(j[1]["p"].get<double>(), 0.5);
}

}  // namespace
}  // namespace srlproj
