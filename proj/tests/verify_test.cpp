#include <gtest/gtest.h>

#include "tgc/verify.hpp"

using namespace tgc;

namespace {

bool has_tuple(const VerificationReport& rep, const FinishedSet& m, const IndexSet& i1, const IndexSet& i2) {
  for (const auto& f : rep.failures)
    if (f.m == m && f.i1 == i1 && f.i2 == i2) return true;
  return false;
}

// Example-1 code with partition 8 removed from the first added row.
TieredSupport broken_example_one() {
  auto ts = tiered_cyclic_base(9, 3);
  ts.canonical.set(0, 8, false);
  ts.canonical.set(0, 1, true);
  return ts;
}

}  // namespace

TEST(CheckSpan, ExampleOne) {
  auto rep = check_span_tiered(instantiate(tiered_cyclic_base(9, 3), 7));
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.checked, 495u);
  EXPECT_LE(rep.worst_residual, 1e-8);
}

TEST(CheckSpan, ExampleTwo) {
  auto code = instantiate(tiered_c_general(9, 4, 2), 7);
  auto rep = check_span_tiered(code);
  EXPECT_TRUE(rep.passed()) << rep.to_text();
  EXPECT_EQ(rep.checked, tiered_tuple_count(code.params()));
  EXPECT_EQ(rep.checked, 36u * 36u);
}

TEST(CheckSpan, MissingMandatoryCoordinate) {
  auto ts = broken_example_one();
  auto rep = check_span_tiered(instantiate(ts, 7));
  EXPECT_FALSE(rep.passed());
  // Servers 1 and 2 both miss partition 8, as does the broken row.
  EXPECT_TRUE(has_tuple(rep, {1}, {2}, {1}));
  auto sup = check_support_condition(ts);
  EXPECT_FALSE(sup.passed());
}

TEST(CheckSpan, ThreadCountDoesNotChangeReport) {
  auto code = instantiate(broken_example_one(), 3);
  VerifyOptions one, four;
  four.threads = 4;
  auto a = check_span_tiered(code, one), b = check_span_tiered(code, four);
  EXPECT_EQ(a.to_text(), b.to_text());
  EXPECT_EQ(a.checked, b.checked);
}

TEST(CheckSpan, GuardExceeded) {
  VerifyOptions opt;
  opt.guard = 100;
  auto code = instantiate(tiered_cyclic_base(9, 3), 7);
  try {
    check_span_tiered(code, opt);
    FAIL();
  } catch (const guard_exceeded& e) {
    EXPECT_EQ(e.estimate(), 495.0);
  }
  EXPECT_THROW(check_support_condition(code.support(), opt), guard_exceeded);
}

TEST(CheckSupport, CyclicBaseInstances) {
  for (auto [n1, k] : {std::pair{9, 3}, {12, 5}, {9, 4}}) {
    auto ts = tiered_cyclic_base(n1, k);
    auto rep = check_support_condition(ts);
    EXPECT_TRUE(rep.passed()) << n1 << "," << k << "\n" << rep.to_text();
    EXPECT_EQ(rep.checked, tiered_tuple_count(ts.params()));
  }
}

TEST(CheckSupport, ConsecutiveZerosFail) {
  auto ts = tiered_cyclic_base(12, 5);
  // Row zeros {1,3,5,7} become {1,2,5,7}.
  ts.canonical.set(0, 2, false);
  ts.canonical.set(0, 3, true);
  EXPECT_FALSE(consecutive_property(ts.b_for({1}), 2));
  auto rep = check_support_condition(ts);
  EXPECT_FALSE(rep.passed());
  ASSERT_FALSE(rep.failures.empty());
  EXPECT_FALSE(check_span_tiered(instantiate(ts, 1)).passed());
}

TEST(CheckSupport, ReducesToConditionOneWithoutAddedRows) {
  auto f = cyclic_support(9, 3);
  EXPECT_TRUE(check_base_code(f, 9, 3).passed());
  EXPECT_EQ(check_base_code(f, 9, 3).checked, binomial(9, 3));
}

TEST(CheckSupport, AgreesWithSpanOnBuiltCodes) {
  for (auto p : {TieredParams{9, 12, 3, 1}, {9, 11, 4, 2}, {10, 12, 4, 2}, {12, 19, 5, 1}, {7, 10, 5, 1}}) {
    auto ts = build_support(p);
    auto sup = check_support_condition(ts);
    auto span = check_span_tiered(instantiate(ts, 1));
    if (sup.passed()) EXPECT_TRUE(span.passed()) << to_string(p);
  }
}

TEST(CheckBaseCode, FigureOne) {
  auto f = cyclic_support(4, 2);
  EXPECT_TRUE(check_base_code(f, 4, 2).passed());
  EXPECT_TRUE(check_base_code(instantiate_rows(f, sample_parity(4, 2, 1)), 4, 2).passed());
}

TEST(CheckBaseCode, Fractional) {
  auto f = fractional_support(4, 3);
  Matrix ones = instantiate_rows(f, std::nullopt);
  EXPECT_TRUE(check_base_code(ones, 4, 3).passed());
}

TEST(CheckBaseCode, ZeroRowFails) {
  auto f = cyclic_support(5, 3);
  for (int col = 0; col < 5; ++col) f.set(2, col, false);
  EXPECT_FALSE(check_base_code(f, 5, 3).passed());
  Matrix real = instantiate_rows(cyclic_support(5, 3), sample_parity(5, 2, 2));
  real.row(2).setZero();
  EXPECT_FALSE(check_base_code(real, 5, 3).passed());
}

TEST(TupleCount, ClosedForm) {
  EXPECT_EQ(tiered_tuple_count({9, 12, 3, 1}), 495u);
  EXPECT_EQ(tiered_tuple_count({9, 11, 4, 2}), 36u * 36u);
  std::uint64_t sum = 0;
  for (int a = 0; a <= 2; ++a) sum += binomial(8, a) * binomial(3, 2 - a);
  EXPECT_EQ(tiered_tuple_count({9, 12, 3, 1}), 9 * sum);
}

TEST(Report, TextLog) {
  auto rep = check_span_tiered(instantiate(broken_example_one(), 7));
  auto text = rep.to_text();
  EXPECT_EQ(text.rfind("span: 495 tuples checked", 0), 0u);
  EXPECT_NE(text.find("FAIL M={1} I1={2} I2={1}"), std::string::npos);
}
