#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace bornoconv;

TEST(RandomInstance, Deterministic) {
  auto cfg = support::small_config(123, 5, 4, 6, 3);
  for (int t = 0; t < 50; ++t) {
    EXPECT_EQ(random_instance(cfg, t), random_instance(cfg, t));
    EXPECT_EQ(serialize_instance(random_instance(cfg, t)), serialize_instance(random_instance(cfg, t)));
  }
  auto other = cfg;
  other.seed = 124;
  int differ = 0;
  for (int t = 0; t < 20; ++t) differ += random_instance(cfg, t) == random_instance(other, t) ? 0 : 1;
  EXPECT_GT(differ, 10);
}

TEST(RandomInstance, ValidAndWithinCaps) {
  auto cfg = support::small_config(9, 5, 4, 6, 3);
  for (int t = 0; t < 300; ++t) {
    auto inst = random_instance(cfg, t);
    EXPECT_TRUE(inst.validate().empty());
    EXPECT_TRUE(FiniteMetricSpace::validate(inst.x.labels(), inst.x.matrix()).empty());
    EXPECT_TRUE(FiniteMetricSpace::validate(inst.y.labels(), inst.y.matrix()).empty());
    EXPECT_LE(inst.x.size(), 5);
    EXPECT_LE(inst.y.size(), 4);
    EXPECT_LE(inst.ds.size(), 6);
    EXPECT_LE(inst.bornology.base().size(), 3u);
    EXPECT_FALSE(inst.ideal.contains(inst.ds.all()));
    EXPECT_TRUE(Ideal::validate(inst.ideal.family()).empty());
  }
}

TEST(RandomInstance, TailIdealStrategyIsAdmissible) {
  auto cfg = support::small_config(10, 4, 3, 6, 3);
  cfg.ideal = IdealStrategy::i0;
  for (int t = 0; t < 100; ++t) {
    auto inst = random_instance(cfg, t);
    EXPECT_EQ(inst.ideal, tail_ideal(inst.ds));
    EXPECT_TRUE(is_d_admissible(inst.ideal, inst.ds));
  }
}

TEST(RandomInstance, CoversEveryOrderKind) {
  auto cfg = support::small_config(8, 3, 3, 6, 2);
  for (auto kind : {OrderKind::linear, OrderKind::tree, OrderKind::product, OrderKind::preorder}) {
    cfg.order = kind;
    for (int t = 0; t < 30; ++t) EXPECT_TRUE(random_instance(cfg, t).validate().empty());
  }
}

TEST(RandomInstance, MetricRepairKeepsPoolValuesAsUpperBounds) {
  auto cfg = support::small_config(31, 6, 2, 2, 1);
  for (int t = 0; t < 100; ++t) {
    auto inst = random_instance(cfg, t);
    const auto& d = inst.x.matrix();
    for (const auto& row : d)
      for (const auto& v : row) EXPECT_LE(v, Rational(3));
  }
}

TEST(CampaignConfig, Validation) {
  CampaignConfig c;
  EXPECT_TRUE(c.validate().empty());
  c.trials = 0;
  c.caps.gamma = 40;
  c.theorems = {"prop9.9"};
  EXPECT_EQ(c.validate().size(), 3u);
  EXPECT_THROW(certify(c), error);
  EXPECT_THROW(parse_ideal_strategy("odd"), error);
  EXPECT_THROW(parse_order_kind("odd"), error);
}

TEST(Certify, TalliesAddUpAndAreDeterministic) {
  CampaignConfig c;
  c.seed = 77;
  c.trials = 60;
  auto a = certify(c);
  c.threads = 4;
  auto b = certify(c);
  for (const auto& name : c.theorems) {
    const auto& ta = a.tallies.at(name);
    EXPECT_EQ(ta.total(), c.trials) << name;
    EXPECT_EQ(ta.pass, b.tallies.at(name).pass) << name;
    EXPECT_EQ(ta.fail, b.tallies.at(name).fail) << name;
    EXPECT_EQ(ta.skipped, b.tallies.at(name).skipped) << name;
  }
  EXPECT_EQ(to_json(a)["counterexamples"], to_json(b)["counterexamples"]);
  EXPECT_EQ(a.degenerate_pairs, b.degenerate_pairs);
}

TEST(Certify, SinglePropertyAllPass) {
  CampaignConfig c;
  c.trials = 50;
  c.theorems = {"prop3.2"};
  auto r = certify(c);
  EXPECT_EQ(r.tallies.at("prop3.2").pass, 50);
  EXPECT_TRUE(r.clean());
}

TEST(Certify, HypothesesAreLogged) {
  CampaignConfig c;
  c.trials = 40;
  c.theorems = {"prop3.5", "thm3.2", "thm3.3"};
  auto r = certify(c);
  for (auto h : {"continuity", "strong_uniform_continuity", "stable_under_small_enlargement", "uniform_continuity_rel"}) {
    ASSERT_TRUE(r.hypotheses.count(h)) << h;
    EXPECT_GT(r.hypotheses.at(h).first, 0);
    EXPECT_EQ(r.hypotheses.at(h).second, 0);
  }
  auto j = to_json(r);
  EXPECT_EQ(j["hypotheses"]["continuity"]["note"], "hypothesis auto-satisfied on every instance");
}

TEST(Certify, MutationIsCaughtAndCounterexamplesReverify) {
  CampaignConfig c;
  c.trials = 300;
  c.theorems = {"prop3.2"};
  c.nonstrict_mutation = true;
  auto r = certify(c);
  EXPECT_GT(r.tallies.at("prop3.2").fail, 0);
  ASSERT_FALSE(r.counterexamples.empty());
  EXPECT_LE(static_cast<int>(r.counterexamples.size()), c.max_counterexamples);
  for (const auto& cex : r.counterexamples) {
    EXPECT_TRUE(reverify(cex));
    // Without the mutation the same instance is fine.
    auto plain = cex;
    plain.nonstrict_mutation = false;
    EXPECT_FALSE(reverify(plain));
  }
}

TEST(Certify, ReportJsonShape) {
  CampaignConfig c;
  c.trials = 10;
  auto j = to_json(certify(c));
  for (auto key : {"config", "tallies", "counterexamples", "degenerate_trace", "hypotheses", "duration_ms", "clean"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["config"]["trials"], 10);
}

TEST(SearchCounterexample, ClassicalDoesNotImplyIdealWithoutAdmissibility) {
  CampaignConfig c;
  c.trials = 1000;
  c.ideal = IdealStrategy::minimal;
  c.order = OrderKind::linear;
  c.min_gamma = 2;
  auto found = search_counterexample("classical-implies-ideal", c);
  ASSERT_TRUE(found);
  EXPECT_FALSE(is_d_admissible(found->instance.ideal, found->instance.ds));
  EXPECT_TRUE(found->result.lhs);
  EXPECT_FALSE(found->result.rhs);
  EXPECT_TRUE(check_mode(found->instance, found->result.lhs_name).holds);
  EXPECT_FALSE(check_mode(found->instance, found->result.rhs_name).holds);
}

TEST(SearchCounterexample, Prop31ConverseFails) {
  CampaignConfig c;
  c.trials = 1000;
  auto found = search_counterexample("prop3.1-converse", c);
  ASSERT_TRUE(found);
  const auto& inst = found->instance;
  EXPECT_TRUE(domain_set_conv(inst, Side::lower).holds);
  EXPECT_TRUE(domain_set_conv(inst, Side::upper).holds);
  EXPECT_FALSE(p_ideal_conv(inst).holds);
}

TEST(SearchCounterexample, Prop32HasNone) {
  CampaignConfig c;
  c.trials = 300;
  EXPECT_FALSE(search_counterexample("prop3.2", c));
  EXPECT_THROW(search_counterexample("nonsense", c), error);
}

TEST(EvaluateProperty, ImplicationWithFalseAntecedentIsSkipped) {
  auto x = support::two_points();
  auto y = support::two_points("p", "q");
  auto u = support::pmap(x, y, {{"a", "p"}});
  auto far = support::pmap(x, y, {{"b", "q"}});
  auto ds = DirectedSet::linear(2);
  Instance inst{x, y, ds, minimal_ideal(ds), all_nonempty_subsets(x), {far, far}, u};
  EXPECT_EQ(evaluate_property("prop3.1", inst).outcome, Outcome::skip);
  EXPECT_EQ(evaluate_property("constant-net", inst).outcome, Outcome::pass);
}
