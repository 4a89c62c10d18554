#include <gtest/gtest.h>

#include <sstream>

#include "tgc/constructions.hpp"

using namespace tgc;

namespace {

std::vector<IndexSet> supports(const SupportMatrix& m) {
  std::vector<IndexSet> out;
  for (int r = 0; r < m.rows(); ++r) out.push_back(m.row_support(r));
  return out;
}

}  // namespace

TEST(CyclicSupport, Windows) {
  auto m = cyclic_support(9, 3);
  EXPECT_EQ(m.row_support(0), (IndexSet{0, 1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(m.row_support(4), (IndexSet{0, 1, 4, 5, 6, 7, 8}));
  auto one = cyclic_support(5, 5);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(one.row_support(i), IndexSet{i});
  EXPECT_EQ(cyclic_support(4, 2).row_support(0), (IndexSet{0, 1, 2}));
  EXPECT_THROW(cyclic_support(3, 4), invalid_parameters);
}

TEST(FractionalSupport, Blocks) {
  auto m = fractional_support(4, 3);
  EXPECT_EQ(supports(m), (std::vector<IndexSet>{{0, 1}, {0, 1}, {2, 3}, {2, 3}}));
  auto m6 = fractional_support(6, 4);
  EXPECT_EQ(m6.row_support(3), (IndexSet{3, 4, 5}));
  EXPECT_THROW(fractional_support(4, 2), invalid_parameters);
}

TEST(SupportMatrix, TextRoundTrip) {
  auto m = cyclic_support(5, 3);
  std::istringstream is(m.str());
  EXPECT_EQ(SupportMatrix::parse(is), m);
  EXPECT_EQ(m.str().substr(0, 10), "5 5\n11100\n");
  std::istringstream bad("2 3\n101\n1x1\n");
  EXPECT_THROW(SupportMatrix::parse(bad), invalid_parameters);
}

TEST(TieredFractional, MembershipRule) {
  auto ts = tiered_fractional({7, 10, 5, 1});
  EXPECT_EQ(ts.q(), 8);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(ts.f.row_support(i), (IndexSet{0, 1, 2, 3}));
  for (int i = 4; i < 7; ++i) EXPECT_EQ(ts.f.row_support(i), (IndexSet{4, 5, 6, 7}));
  auto b1 = ts.b_for({1});
  ASSERT_EQ(b1.rows(), 3);
  for (int r = 0; r < 3; ++r) EXPECT_EQ(b1.row_support(r), (IndexSet{4, 5, 6, 7}));
  EXPECT_EQ(ts.b_for({5}).row_support(0), (IndexSet{0, 1, 2, 3}));
  auto even = tiered_fractional({8, 10, 5, 1});
  EXPECT_EQ(even.f.row_support(3), (IndexSet{0, 1, 2, 3}));
  EXPECT_EQ(even.f.row_support(4), (IndexSet{4, 5, 6, 7}));
  EXPECT_THROW(tiered_fractional({9, 10, 5, 1}), invalid_parameters);
  auto c2 = tiered_fractional({6, 10, 5, 2});
  EXPECT_EQ(c2.b_for({1, 2}).row_support(0), (IndexSet{4, 5, 6, 7}));
  EXPECT_EQ(c2.b_for({1, 4}).row_support(0), (IndexSet{0, 1, 2, 3}));
}

TEST(TieredCyclicBase, ExampleOne) {
  auto ts = tiered_cyclic_base(9, 3);
  EXPECT_EQ(ts.params().n2, 12);
  EXPECT_EQ(ts.f, cyclic_support(9, 3));
  EXPECT_EQ(supports(ts.b_for({1})), (std::vector<IndexSet>{
                                         {0, 2, 3, 5, 6, 7, 8}, {0, 1, 3, 4, 6, 7, 8}, {1, 2, 4, 5, 6, 7, 8}}));
  EXPECT_THROW(tiered_cyclic_base(8, 4), invalid_parameters);
}

TEST(TieredCyclicBase, StructuralProperties) {
  for (auto [n1, k] : {std::pair{9, 3}, {12, 5}, {9, 4}, {10, 4}, {15, 6}, {20, 5}}) {
    auto ts = tiered_cyclic_base(n1, k);
    for (int m = 1; m <= n1; ++m) {
      auto b = ts.b_for({m});
      EXPECT_TRUE(added_rows_cover_gaps(ts, {m}));
      EXPECT_TRUE(consecutive_property(b, 2));
      for (int r = 0; r < b.rows(); ++r) EXPECT_EQ(b.q() - b.row_weight(r), k - 1);
      for (int r = 0; r < b.rows(); ++r)
        for (int s = r + 1; s < b.rows(); ++s) EXPECT_EQ((b.row_mask(r) | b.row_mask(s)).count(), size_t(n1));
    }
  }
}

TEST(TieredCyclicBase, TwelveFive) {
  auto b = tiered_cyclic_base(12, 5).b_for({1});
  ASSERT_EQ(b.rows(), 2);
  EXPECT_EQ((b.row_mask(0) | b.row_mask(1)).count(), 12u);
}

TEST(TieredCyclicBase, SingleRowChoice) {
  // One added row: tail plus even coordinates of L_1, then high odd ones.
  auto b = detail::single_row(9, 4);
  EXPECT_EQ(b.row_support(0), (IndexSet{0, 2, 4, 6, 7, 8}));
  EXPECT_TRUE(consecutive_property(b, 2));
  auto b2 = detail::single_row(10, 3);
  EXPECT_EQ(b2.row_weight(0), 8);
  EXPECT_TRUE(consecutive_property(b2, 2));
}

TEST(Relabel, RotatesForOtherServers) {
  auto ts = tiered_cyclic_base(9, 3);
  auto b1 = ts.b_for({1});
  EXPECT_EQ(relabel_for_finished(ts, {1}), b1);
  EXPECT_EQ(ts.b_for({2}), b1.rotated(1));
  EXPECT_THROW(relabel_for_finished(ts, {1, 2}), invalid_parameters);
  EXPECT_THROW(relabel_for_finished(ts, {10}), invalid_parameters);
}

TEST(TieredN1kEven, FourServers) {
  auto ts = tiered_n1k_even(4);
  EXPECT_EQ(ts.q(), 8);
  EXPECT_EQ(supports(ts.f), (std::vector<IndexSet>{{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {0, 6, 7}}));
  EXPECT_EQ(ts.b_for({1}).row_support(0), (IndexSet{3, 5, 7}));
  EXPECT_EQ(ts.plan.fraction, Fraction(3, 8));
  // The partition only server i holds is (i-1)*2+1.
  for (int i = 0; i < 4; ++i) {
    int unique = i * 2 + 1;
    int holders = 0;
    for (int r = 0; r < 4; ++r) holders += ts.f.test(r, unique);
    EXPECT_EQ(holders, 1);
    EXPECT_TRUE(ts.f.test(i, unique));
  }
  EXPECT_THROW(tiered_n1k_even(5), invalid_parameters);
}

TEST(TieredCstar, ThreeRowTemplate) {
  auto ts = tiered_cstar(13, 5);
  EXPECT_EQ(ts.params().n2, 16);
  auto b = ts.b_for({1});
  ASSERT_EQ(b.rows(), 3);
  for (int r = 0; r < 3; ++r) EXPECT_EQ(13 - b.row_weight(r), 4);
  EXPECT_TRUE(added_rows_cover_gaps(ts, {1}));
  EXPECT_TRUE(consecutive_property(b, 2));
  EXPECT_THROW(tiered_cstar(14, 5), invalid_parameters);
  EXPECT_THROW(tiered_cstar(17, 6), invalid_parameters);
}

TEST(TieredCstar, TwoFallsBackToCyclicBase) {
  EXPECT_EQ(tiered_cstar(12, 5).b_for({1}), tiered_cyclic_base(12, 5).b_for({1}));
}

TEST(TieredCgeneral, ExampleTwo) {
  auto ts = tiered_c_general(9, 4, 2);
  EXPECT_EQ(ts.params().n2, 11);
  EXPECT_EQ(supports(ts.b_for({1, 3})), (std::vector<IndexSet>{{0, 2, 4, 6, 7, 8}, {0, 1, 3, 5, 7, 8}}));
  auto gap = c_general_gap(9, 4, 2, {1, 3});
  EXPECT_EQ(gap.g, 1);
  EXPECT_EQ(gap.start, 8);
  EXPECT_EQ(gap.shift, 8);
}

TEST(TieredCgeneral, TenServers) {
  auto gap = c_general_gap(10, 4, 2, {2, 4});
  EXPECT_EQ(gap.g, 1);
  EXPECT_EQ(gap.start, 0);
  EXPECT_EQ(gap.shift, 8);
  auto ts = tiered_c_general(10, 4, 2);
  EXPECT_EQ(supports(ts.b_for({2, 4})), (std::vector<IndexSet>{{0, 1, 3, 5, 7, 8, 9}, {0, 1, 2, 4, 6, 8, 9}}));
}

TEST(TieredCgeneral, AdjacentServersHaveTheLargestGap) {
  for (int k = 4; k <= 6; ++k)
    for (int c = 2; c < k; ++c) {
      int n1 = 2 * (k - 1) + (k - c) + 1;
      FinishedSet m;
      for (int s = 1; s <= c; ++s) m.push_back(s);
      EXPECT_EQ(c_general_gap(n1, k, c, m).g, k - c);
    }
}

TEST(TieredCgeneral, StructuralProperties) {
  for (auto [n1, k, c] : {std::tuple{9, 4, 2}, {10, 4, 2}, {11, 5, 3}, {12, 5, 2}, {10, 5, 4}}) {
    auto ts = tiered_c_general(n1, k, c);
    for_each_combination(n1, c, [&](std::span<const int> pick) {
      FinishedSet m;
      for (int x : pick) m.push_back(x + 1);
      auto b = ts.b_for(m);
      EXPECT_TRUE(added_rows_cover_gaps(ts, m));
      EXPECT_TRUE(consecutive_property(b, c + 1));
      for (int r = 0; r < b.rows(); ++r) EXPECT_EQ(n1 - b.row_weight(r), k - 1);
      for (int r = 0; r < b.rows(); ++r)
        for (int s = r + 1; s < b.rows(); ++s) EXPECT_EQ((b.row_mask(r) | b.row_mask(s)).count(), size_t(n1));
    });
  }
  EXPECT_THROW(tiered_c_general(7, 4, 2), invalid_parameters);
}

TEST(TruncateB, PrefixRows) {
  auto ts = tiered_c_general(9, 4, 2);
  auto one = truncate_b(ts, 1);
  EXPECT_EQ(one.params().n2, 10);
  auto b = one.b_for({1, 3});
  ASSERT_EQ(b.rows(), 1);
  EXPECT_EQ(b.row_support(0), (IndexSet{0, 2, 4, 6, 7, 8}));
  EXPECT_EQ(truncate_b(ts, 2).b_for({1, 3}), ts.b_for({1, 3}));
  EXPECT_THROW(truncate_b(ts, 0), invalid_parameters);
  EXPECT_THROW(truncate_b(ts, 3), invalid_parameters);
}

TEST(BuildSupport, LoadMatchesPlan) {
  for (int k = 3; k <= 6; ++k)
    for (int n2 = k + 1; n2 <= 20; ++n2)
      for (int n1 = k; n1 <= n2; ++n1)
        for (int c = 1; c < k; ++c) {
          auto plan = make_plan({n1, n2, k, c});
          auto ts = build_support(plan);
          EXPECT_EQ(ts.f.rows(), n1);
          EXPECT_EQ(ts.q(), plan.q_partitions);
          FinishedSet m;
          for (int s = 1; s <= c; ++s) m.push_back(s);
          auto b = ts.b_for(m);
          EXPECT_EQ(b.rows(), n2 - n1);
          int load = std::max(ts.f.max_row_weight(), b.max_row_weight());
          EXPECT_EQ(Fraction(load, ts.q()), plan.fraction) << to_string(plan.params);
          if (plan.construction != Construction::n1k_even) EXPECT_TRUE(added_rows_cover_gaps(ts, m)) << to_string(plan.params);
        }
}

// Q = k^2/2 leaves more uncovered coordinates than the single added row holds.
TEST(TieredN1kEven, ContainmentDoesNotHold) {
  for (int k = 4; k <= 8; k += 2) {
    auto ts = tiered_n1k_even(k);
    EXPECT_FALSE(added_rows_cover_gaps(ts, {1}));
  }
}
