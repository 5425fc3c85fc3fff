#include <gtest/gtest.h>

#include "srlproj/lang/fragments.hpp"
#include "srlproj/lang/params.hpp"
#include "srlproj/lang/parser.hpp"
#include "srlproj/lang/printer.hpp"
#include "test_support.hpp"

namespace srlproj {
namespace {

using testing::load_fixture;
using testing::load_fixture_as;

TEST(ParseRbnTest, BlockModel) {
  const auto spec = load_fixture_as<RbnSpec>("block.rbn");
  ASSERT_EQ(spec.rules.size(), 3U);
  EXPECT_EQ(spec.signature.relations(), (std::vector<Relation>{{"red", 1}, {"black", 1}, {"edge", 2}}));
  const auto& edge = std::get<IfThenElse>(spec.rules[2].formula->node);
  EXPECT_EQ(edge.condition.size(), 2U);
  EXPECT_EQ(std::get<double>(edge.then_branch->node), 0.7);
  const auto& inner = std::get<IfThenElse>(edge.else_branch->node);
  EXPECT_EQ(std::get<double>(inner.else_branch->node), 0.05);
}

TEST(ParseRbnTest, NoisyOrDefaultsElseToZero) {
  const auto spec = parse_rbn("edge(X,Y) <- 0.5;\na(X) <- noisy-or{ if edge(X,Y) : $theta | Y };");
  const auto& nor = std::get<NoisyOr>(spec.rules[1].formula->node);
  EXPECT_EQ(nor.bound_var, 1);
  const auto& ite = std::get<IfThenElse>(nor.body->node);
  EXPECT_EQ(std::get<Param>(ite.then_branch->node).name, "theta");
  EXPECT_EQ(std::get<double>(ite.else_branch->node), 0.0);
}

TEST(ParseRbnTest, Errors) {
  EXPECT_THROW(parse_rbn("a(X) <- if b(X) : 0.1 else : 0.2;\nb(X) <- 0.5;"), StratificationError);
  EXPECT_THROW(parse_rbn("a(X) <- if a(X) : 0.1 else : 0.2;"), StratificationError);
  EXPECT_THROW(parse_rbn("a(X) <- if b(X) : 0.1 else : 0.2;"), SyntaxError);
  EXPECT_THROW(parse_rbn("b(X) <- 0.5;\na(X) <- if b(X,X) : 0.1 else : 0.2;"), ArityError);
  EXPECT_THROW(parse_rbn("a(X) <- 1.5;"), SyntaxError);
  EXPECT_THROW(parse_rbn("b(X) <- 0.5;\na(X) <- if b(Y) : 0.1 else : 0.2;"), SyntaxError);
  EXPECT_THROW(parse_rbn("b(X) <- 0.5;\na(X) <- if b(X) : 0.1;"), SyntaxError);
  EXPECT_THROW(parse_rbn("a(X) <- 0.5;\na(X) <- 0.5;"), SyntaxError);
  EXPECT_THROW(parse_rbn("a(X,X) <- 0.5;"), SyntaxError);
  EXPECT_THROW(parse_rbn("e(X,Y) <- 0.5;\na(X) <- noisy-or{ if e(X,X) : 0.2 | X };"), SyntaxError);
  try {
    parse_rbn("a(X) <- 0.5;\nb(X) <- if a(X) ? 0.1 else : 0.2;");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.location().line, 2);
    EXPECT_EQ(e.location().column, 17);
  }
}

TEST(ParseMlnTest, Example3) {
  const auto spec = parse_mln("a(X) ^ e(X,Y) :: w");
  ASSERT_EQ(spec.formulas.size(), 1U);
  EXPECT_EQ(std::get<Param>(spec.formulas[0].weight).name, "w");
  EXPECT_EQ(spec.formulas[0].var_names, (std::vector<std::string>{"X", "Y"}));
  EXPECT_EQ(spec.signature.relations(), (std::vector<Relation>{{"a", 1}, {"e", 2}}));
}

TEST(ParseMlnTest, ConnectivesAndErrors) {
  const auto spec = parse_mln("!a(X) v b(X) ^ a(X) :: -0.5;\n(a(X) v b(X)) ^ !b(X) :: 1e-1;");
  EXPECT_TRUE(std::holds_alternative<Or>(spec.formulas[0].formula->node));
  EXPECT_TRUE(std::holds_alternative<And>(spec.formulas[1].formula->node));
  EXPECT_EQ(std::get<double>(spec.formulas[0].weight), -0.5);
  EXPECT_THROW(parse_mln("a(X) ^ a(X,Y) :: 1;"), ArityError);
  EXPECT_THROW(parse_mln("a(X) ^ e(X,bob) :: 1;"), SyntaxError);
  EXPECT_THROW(parse_mln("a(X) ^ :: 1;"), SyntaxError);
}

TEST(ParseProblogTest, RedEdge) {
  const auto spec = parse_problog("0.8 :: red(X).  edge(X,Y) :- red(X), red(Y).");
  ASSERT_EQ(spec.facts.size(), 1U);
  ASSERT_EQ(spec.clauses.size(), 1U);
  EXPECT_EQ(std::get<double>(spec.facts[0].label), 0.8);
  EXPECT_EQ(spec.clauses[0].body.size(), 2U);
  EXPECT_EQ(spec.observable, (std::vector<std::size_t>{0, 1}));
}

TEST(ParseProblogTest, LatentRule) {
  const auto spec = load_fixture_as<ProblogSpec>("latent_rule.plp");
  EXPECT_EQ(spec.signature.relations(), (std::vector<Relation>{{"red", 1}, {"rule", 2}, {"edge", 2}}));
  EXPECT_EQ(spec.observable, (std::vector<std::size_t>{0, 2}));
}

TEST(ParseProblogTest, Errors) {
  EXPECT_THROW(parse_problog("0.8 :: red(bob)."), SyntaxError);
  EXPECT_THROW(parse_problog("0.5 :: a(X).\na(X) :- b(X)."), SyntaxError);
  EXPECT_THROW(parse_problog("a(X) :- b(X).\nb(X) :- a(X)."), StratificationError);
  EXPECT_THROW(parse_problog("a(X) :- a(X)."), StratificationError);
  EXPECT_THROW(parse_problog("1.2 :: a(X)."), SyntaxError);
  EXPECT_THROW(parse_problog("0.5 :: a(X).\nb(X) :- a(X,X)."), ArityError);
  EXPECT_THROW(parse_problog("0.5 :: a(X)\nb(X) :- a(X)."), SyntaxError);
}

TEST(FragmentTest, Rbn) {
  EXPECT_TRUE(check_rbn_projective(load_fixture_as<RbnSpec>("block.rbn")).projective);
  const auto report = check_rbn_projective(load_fixture_as<RbnSpec>("block_noisyor.rbn"));
  EXPECT_FALSE(report.projective);
  ASSERT_EQ(report.violations.size(), 1U);
  EXPECT_EQ(report.violations[0].loc.line, 6);
  EXPECT_NE(report.violations[0].message.find("noisy-or"), std::string::npos);
  EXPECT_TRUE(check_rbn_projective(RbnSpec{}).projective);
}

TEST(FragmentTest, Mln) {
  EXPECT_TRUE(check_mln_projective(load_fixture_as<MlnSpec>("fragment.mln")).projective);
  const auto report = check_mln_projective(load_fixture_as<MlnSpec>("homophily.mln"));
  EXPECT_FALSE(report.projective);
  EXPECT_NE(report.violations[0].message.find("lacks variable(s) Y"), std::string::npos);
  EXPECT_TRUE(check_mln_projective(parse_mln("red(X) :: 1.0;")).projective);
  EXPECT_FALSE(check_mln_projective(load_fixture_as<MlnSpec>("example3.mln")).projective);
}

TEST(FragmentTest, Problog) {
  EXPECT_TRUE(check_problog_projective(load_fixture_as<ProblogSpec>("red_edge.plp")).projective);
  EXPECT_TRUE(check_problog_projective(load_fixture_as<ProblogSpec>("latent_rule.plp")).projective);
  const auto report = check_problog_projective(parse_problog("0.5 :: edge(X,Y).\na(X) :- edge(X,Y)."));
  EXPECT_FALSE(report.projective);
  ASSERT_EQ(report.violations.size(), 1U);
  EXPECT_NE(report.violations[0].message.find("variable Y"), std::string::npos);
}

TEST(FreeParametersTest, Examples) {
  EXPECT_EQ(free_parameters(load_fixture("shared_param.rbn")), (std::vector<std::string>{"theta"}));
  EXPECT_EQ(free_parameters(load_fixture("two_param.rbn")), (std::vector<std::string>{"theta_e", "theta_r"}));
  EXPECT_TRUE(free_parameters(parse_rbn("e(X,Y) <- 0.5;")).empty());
  EXPECT_EQ(free_parameters(load_fixture("example3.mln")), (std::vector<std::string>{"w"}));
  EXPECT_EQ(parameter_occurrences(load_fixture("shared_param.rbn")).at("theta"), (std::vector<std::size_t>{0, 1}));
}

TEST(PrintTest, RoundTripsFixtures) {
  for (const char* file : {"block.rbn", "block_params.rbn", "block_noisyor.rbn", "noisyor.rbn", "shared_param.rbn",
                           "homophily.mln", "example3.mln", "fragment.mln", "red_edge.plp", "latent_rule.plp",
                           "clique_empty.plp"}) {
    const auto spec = load_fixture(file);
    const auto text = print_model(spec);
    const auto again = parse_model(text, dialect_of(spec));
    EXPECT_TRUE(same_structure(spec, again)) << file << "\n" << text;
    EXPECT_EQ(print_model(again), text);
  }
}

TEST(PrintTest, PreservesGroupingAndOrder) {
  const auto mln = parse_mln("!(a(X) ^ b(X)) v (a(X) v b(X)) ^ !!a(X) :: 0.25;");
  EXPECT_TRUE(same_structure(mln, parse_mln(print_model(mln))));
  const auto plp = parse_problog("e(X,Y) :- c.\n0.5 :: c.\nobservable e/2.");
  EXPECT_TRUE(same_structure(plp, parse_problog(print_model(plp))));
}

}  // namespace
}  // namespace srlproj
