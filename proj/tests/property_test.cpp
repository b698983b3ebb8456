// Invariants of the convergence module as randomized properties, run
// directly on the checkers (the harness runs the same relations through
// evaluate_property in the acceptance binary).
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace bornoconv;

namespace {

constexpr int kTrials = 150;

template <typename F>
void for_instances(std::uint64_t seed, F&& f) {
  CampaignConfig cfg;
  cfg.seed = seed;
  for (int t = 0; t < kTrials; ++t) f(random_instance(cfg, t), t);
}

bool holds(const Instance& inst, std::string_view mode, const CheckOptions& o = {}) {
  return check_mode(inst, mode, o).holds;
}

}  // namespace

TEST(Properties, MapConvergenceImpliesDomainConvergence) {
  for_instances(1001, [](const Instance& inst, int t) {
    if (holds(inst, "p-minus")) {
      EXPECT_TRUE(holds(inst, "lower-set")) << t;
    }
    if (holds(inst, "p-plus")) {
      EXPECT_TRUE(holds(inst, "upper-set")) << t;
    }
  });
}

TEST(Properties, NaiveAndSupInfFormsAgree) {
  for_instances(1002, [](const Instance& inst, int t) {
    EXPECT_EQ(holds(inst, "p-plus"), holds(inst, "p-plus-supinf")) << t;
    EXPECT_EQ(holds(inst, "p-minus"), holds(inst, "p-minus-supinf")) << t;
  });
}

TEST(Properties, GraphConvergenceMatchesMapConvergence) {
  for_instances(1003, [](const Instance& inst, int t) {
    EXPECT_EQ(holds(inst, "graph-lower"), holds(inst, "p-minus")) << t;
    EXPECT_EQ(holds(inst, "graph-upper"), holds(inst, "p-plus")) << t;
  });
}

TEST(Properties, UpperConvergenceGivesPointwiseAwayFromDegenerateTraces) {
  int checked = 0;
  for_instances(1004, [&](const Instance& inst, int t) {
    auto pw = pointwise_ideal_conv(inst);
    if (!pw.degenerate_traces.empty() || !holds(inst, "p-plus")) return;
    ASSERT_TRUE(is_continuous(inst.x, inst.y, inst.limit));
    ++checked;
    EXPECT_TRUE(pw.holds) << t;
  });
  EXPECT_GT(checked, 10);
}

TEST(Properties, SupSupWithUpperDomainConditionCharacterizesUpperConvergence) {
  for_instances(1005, [](const Instance& inst, int t) {
    ASSERT_TRUE(is_strongly_uniformly_continuous(inst.x, inst.y, inst.limit, inst.bornology));
    EXPECT_EQ(holds(inst, "p-plus"), holds(inst, "sup-sup") && holds(inst, "upper-set")) << t;
    EXPECT_EQ(holds(inst, "p"), holds(inst, "sup-sup") && holds(inst, "lower-set") && holds(inst, "upper-set")) << t;
    // One direction of the sup-sup characterization holds unconditionally.
    if (holds(inst, "p-plus")) {
      EXPECT_TRUE(holds(inst, "sup-sup")) << t;
    }
  });
}

TEST(Properties, ClassicalCheckersMatchTailIdeal) {
  for_instances(1006, [](const Instance& raw, int t) {
    auto inst = raw.with_ideal(tail_ideal(raw.ds));
    for (auto m : {"classical-lower-set", "classical-upper-set", "classical-p-minus", "classical-p-plus", "classical-p"})
      EXPECT_EQ(holds(raw, m), holds(inst, ideal_counterpart(m))) << m << " " << t;
  });
}

TEST(Properties, LargerIdealKeepsTrueVerdicts) {
  for_instances(1007, [](const Instance& inst, int t) {
    // Chain {} <= I <= generated by kernel plus one index, when proper.
    std::vector<Ideal> chain = {minimal_ideal(inst.ds), inst.ideal};
    const IndexSet outside = inst.ideal.kernel().complement_in(inst.ds.all());
    if (outside.size() >= 2) {
      IndexSet k = inst.ideal.kernel();
      k.insert(outside.elements().back());
      chain.push_back(ideal_from_generators(inst.ds, {k}));
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      ASSERT_TRUE(chain[i].is_subideal_of(chain[i + 1]));
      auto small = inst.with_ideal(chain[i]);
      auto large = inst.with_ideal(chain[i + 1]);
      for (auto m : kModeNames)
        if (holds(small, m)) {
          EXPECT_TRUE(holds(large, m)) << m << " " << t;
        }
    }
  });
}

TEST(Properties, SpectrumGridEqualsFinerGrids) {
  for_instances(1008, [](const Instance& inst, int t) {
    const auto sp = distance_spectrum({&inst.x, &inst.y});
    for (int factor : {2, 7}) {
      CheckOptions fine;
      fine.grid = refined_grid(sp, factor);
      for (auto m : kModeNames) EXPECT_EQ(holds(inst, m), holds(inst, m, fine)) << m << " " << t;
    }
  });
}

TEST(Properties, ConstantNetsConvergeUnderEveryIdeal) {
  for_instances(1009, [](const Instance& raw, int t) {
    Instance inst = raw;
    inst.net.assign(inst.net.size(), inst.limit);
    for (const auto& ideal : {inst.ideal, minimal_ideal(inst.ds), tail_ideal(inst.ds)})
      for (auto m : kModeNames) EXPECT_TRUE(holds(inst.with_ideal(ideal), m)) << m << " " << t;
  });
}

TEST(Properties, WitnessIsConsistent) {
  for_instances(1010, [](const Instance& inst, int t) {
    for (auto m : kModeNames) {
      auto v = check_mode(inst, m);
      EXPECT_EQ(v.holds, !v.failing_witness.has_value()) << m << " " << t;
      if (v.failing_witness && !std::string_view(m).starts_with("classical-") && m != std::string_view("pointwise")) {
        EXPECT_FALSE(in_filter(inst.ideal, v.failing_witness->gammas)) << m << " " << t;
      }
    }
  });
}
