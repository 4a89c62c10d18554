#include <gtest/gtest.h>

#include <set>

#include "tgc/codeplan.hpp"

using namespace tgc;

namespace {

Fraction frac(int n1, int n2, int k, int c) { return computation_fraction({n1, n2, k, c}); }

}  // namespace

TEST(ComputationFraction, WorkedValues) {
  EXPECT_EQ(frac(7, 10, 5, 1), Fraction(1, 2));
  EXPECT_EQ(frac(9, 12, 3, 1), Fraction(7, 9));
  EXPECT_EQ(frac(9, 11, 4, 2), Fraction(6, 9));
  EXPECT_EQ(frac(10, 10, 5, 1), Fraction(6, 10));
  EXPECT_EQ(frac(4, 5, 4, 1), Fraction(3, 8));
  EXPECT_EQ(frac(9, 12, 4, 2), Fraction(7, 10));
}

TEST(ComputationFraction, EvenKSingleExtraServer) {
  for (int k = 4; k <= 12; k += 2) EXPECT_EQ(frac(k, k + 1, k, 1), Fraction(2 * (k - 1), k * k)) << k;
}

TEST(ComputationFraction, NineTenFourTwo) {
  // G = min(1, C'_9 = 2) = 1, so the pool has 9 servers of load 6.
  auto plan = make_plan({9, 10, 4, 2});
  EXPECT_EQ(plan.gain, 1);
  EXPECT_EQ(plan.virtual_pool, 9);
  EXPECT_EQ(plan.fraction, Fraction(6, 9));
}

TEST(ComputationFraction, RejectsInvalidTuples) {
  EXPECT_THROW(frac(4, 10, 5, 1), invalid_parameters);
  EXPECT_THROW(frac(9, 8, 4, 1), invalid_parameters);
  EXPECT_THROW(frac(9, 12, 4, 4), invalid_parameters);
  EXPECT_THROW(frac(9, 12, 4, 0), invalid_parameters);
}

TEST(ComputationFraction, NeverWorseThanBaseline) {
  for (int k = 2; k <= 8; ++k)
    for (int n2 = k; n2 <= 26; ++n2)
      for (int n1 = k; n1 <= n2; ++n1)
        for (int c = 1; c < k; ++c) {
          auto plan = make_plan({n1, n2, k, c});
          auto base = baseline_fraction(n2, k);
          ASSERT_LE(plan.fraction, base) << to_string(plan.params);
          ASSERT_EQ(plan.fraction == base, plan.gain == 0)
              << to_string(plan.params);
          ASSERT_EQ(plan.fraction, Fraction(plan.row_load, plan.q_partitions));
        }
}

TEST(ComputationFraction, MonotoneInN1) {
  Fraction prev(0);
  for (int n1 = 5; n1 <= 19; ++n1) {
    auto f = frac(n1, 19, 5, 1);
    EXPECT_GE(f, prev) << n1;
    prev = f;
  }
  EXPECT_EQ(frac(19, 19, 5, 1), Fraction(15, 19));
  EXPECT_EQ(frac(12, 19, 5, 1), Fraction(3, 4));
  EXPECT_EQ(frac(17, 19, 5, 1), Fraction(13, 17));
}

TEST(PlanGeneralC1, PaddedPool) {
  auto plan = plan_general_c1({12, 19, 5, 1});
  EXPECT_EQ(plan.p_star, 4);
  EXPECT_EQ(plan.g1, 3);
  EXPECT_EQ(plan.gain, 3);
  EXPECT_EQ(plan.virtual_pool, 16);
  EXPECT_EQ(plan.fraction, Fraction(3, 4));
}

TEST(PlanGeneralC1, CyclicBaseNeedsNoPadding) {
  for (int k = 3; k <= 7; ++k) {
    int n1 = 3 * (k - 1);
    int c = c_rows(n1, k);
    auto plan = plan_general_c1({n1, n1 + c, k, 1});
    EXPECT_EQ(plan.p_star, 0);
    EXPECT_EQ(plan.gain, c);
    EXPECT_EQ(plan.fraction, Fraction(n1 - k + 1, n1));
  }
}

TEST(PlanGeneralC1, MidRangeFloor) {
  auto plan = plan_general_c1({9, 19, 5, 1});
  EXPECT_EQ(plan.regime, Regime::mid_range_c1);
  EXPECT_GE(plan.p_star, 3);
  EXPECT_GE(plan.virtual_pool, 12);
}

TEST(PlanGeneralC1, RejectsOutOfRegime) {
  EXPECT_THROW(plan_general_c1({8, 19, 5, 1}), invalid_parameters);
  EXPECT_THROW(plan_general_c1({9, 11, 5, 1}), invalid_parameters);
  EXPECT_THROW(plan_general_c1({9, 19, 5, 2}), invalid_parameters);
}

TEST(PlanGeneralCgt1, WorkedValues) {
  auto a = plan_general_cgt1({9, 12, 4, 2});
  EXPECT_EQ(a.p_star, 1);
  EXPECT_EQ(a.gain, 2);
  EXPECT_EQ(a.fraction, Fraction(7, 10));
  auto b = plan_general_cgt1({9, 11, 4, 2});
  EXPECT_EQ(b.p_star, 0);
  EXPECT_EQ(b.gain, 2);
  EXPECT_EQ(b.fraction, Fraction(6, 9));
  EXPECT_EQ(plan_general_cgt1({9, 10, 4, 2}).gain, 1);
  EXPECT_THROW(plan_general_cgt1({9, 12, 4, 1}), invalid_parameters);
  EXPECT_THROW(plan_general_cgt1({6, 12, 4, 2}), invalid_parameters);
}

TEST(PlanRegimes, Classification) {
  EXPECT_EQ(make_plan({10, 10, 5, 1}).regime, Regime::plain_gradient);
  EXPECT_EQ(make_plan({4, 5, 4, 1}).regime, Regime::n1_eq_k_even);
  EXPECT_EQ(make_plan({7, 10, 5, 1}).regime, Regime::fractional_c1);
  EXPECT_EQ(make_plan({7, 10, 5, 3}).regime, Regime::fractional_c);
  EXPECT_EQ(make_plan({9, 12, 3, 1}).regime, Regime::cyclic_c1);
  EXPECT_EQ(make_plan({9, 12, 4, 2}).regime, Regime::cyclic_c);
  EXPECT_EQ(make_plan({7, 12, 4, 2}).regime, Regime::mid_range_c);
  EXPECT_EQ(make_plan({5, 7, 5, 1}).regime, Regime::gradient_fallback);
}

TEST(CstarLookup, TableValues) {
  EXPECT_EQ(cstar_lookup(9, 4), 2);
  EXPECT_EQ(cstar_lookup(13, 5), 3);
  EXPECT_EQ(cstar_lookup(12, 5), 2);
  EXPECT_EQ(cstar_lookup(20, 7), 4);
  EXPECT_EQ(cstar_lookup(17, 6), 0);
  EXPECT_THROW(cstar_lookup(8, 4), invalid_parameters);
}

TEST(CstarLookup, AtLeastCyclicRowsWhenNonzero) {
  for (int k = 4; k <= 20; ++k)
    for (int n1 = 3 * (k - 1); n1 <= 3 * (k - 1) + (k - 4); ++n1) {
      int v = cstar_lookup(n1, k);
      if (v != 0) EXPECT_GE(v, c_rows(n1, k)) << n1 << "," << k;
    }
}

// Overlapping C* table rows, as (p, p'); everywhere else exactly one value applies.
TEST(TableTwo, ExclusivityScan) {
  const std::set<std::pair<int, int>> overlaps{{0, 0}, {3, 1}, {4, 3}, {4, 5}, {5, 2}, {6, 6}, {6, 8},
                                               {7, 2}, {8, 3}, {8, 6}, {8, 8}, {8, 9}, {8, 11}};
  std::set<std::pair<int, int>> seen;
  for (int p = 0; p <= 8; ++p)
    for (int q = 0; q <= 40; ++q) {
      auto r = cstar_table_case(p, q);
      if (r.ambiguous) seen.insert({p, q});
      std::set<int> values;
      for (auto* m : r.matches) values.insert(m->value);
      EXPECT_EQ(values.size() > 1, r.ambiguous);
      if (!values.empty()) EXPECT_EQ(r.value, *values.begin());
    }
  EXPECT_EQ(seen, overlaps);
}

TEST(TableTwo, AmbiguityResolvesToSmallest) {
  auto r = cstar_table_case(3, 1);
  EXPECT_TRUE(r.ambiguous);
  EXPECT_EQ(r.value, 4);
  auto z = cstar_table_case(0, 0);
  EXPECT_TRUE(z.ambiguous);
  EXPECT_EQ(z.value, 2);
}
