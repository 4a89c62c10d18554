#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "combinatorics.hpp"
#include "error.hpp"
#include "params.hpp"

namespace tgc {

using Fraction = boost::rational<long long>;

enum class Regime {
  plain_gradient,     // n1 == n2
  n1_eq_k_even,       // c = 1, n1 = k, n2 = k + 1, k even
  fractional_c1,      // c = 1, k <= n1 <= 2(k-1) < n2
  cyclic_c1,          // c = 1, n1, n2 >= 3(k-1)
  mid_range_c1,       // c = 1, 2(k-1) < n1 < 3(k-1) <= n2
  fractional_c,       // c > 1, n1 <= 2(k-1) < n2
  cyclic_c,           // c > 1, n1 >= 2(k-1) + (k-c)
  mid_range_c,        // c > 1, 2(k-1) < n1 < 2(k-1) + (k-c) <= n2
  gradient_fallback,  // no tiered line covers the tuple
};

enum class Construction {
  plain_cyclic = 0,
  fractional = 1,
  cyclic_base = 2,
  n1k_even = 3,
  cstar = 4,
  cyclic_c = 6,
};

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::plain_gradient: return "plain-gradient";
    case Regime::n1_eq_k_even: return "n1-eq-k-even";
    case Regime::fractional_c1: return "fractional-c1";
    case Regime::cyclic_c1: return "cyclic-c1";
    case Regime::mid_range_c1: return "mid-range-c1";
    case Regime::fractional_c: return "fractional-c";
    case Regime::cyclic_c: return "cyclic-c";
    case Regime::mid_range_c: return "mid-range-c";
    case Regime::gradient_fallback: return "gradient-fallback";
  }
  return "?";
}

inline std::string_view to_string(Construction c) {
  switch (c) {
    case Construction::plain_cyclic: return "plain-cyclic";
    case Construction::fractional: return "fractional";
    case Construction::cyclic_base: return "cyclic-base";
    case Construction::n1k_even: return "n1=k-even";
    case Construction::cstar: return "cstar-template";
    case Construction::cyclic_c: return "cyclic-general-c";
  }
  return "?";
}

struct CodePlan {
  TieredParams params;
  Regime regime = Regime::plain_gradient;
  Construction construction = Construction::plain_cyclic;
  int q_partitions = 0;
  int virtual_pool = 0;  // size of the base code the phase-one rows are drawn from
  int gain = 0;          // rows taken from the pool construction's B_M
  int row_load = 0;      // max row support
  Fraction fraction{0};
  int p_star = 0;
  int g1 = 0, g2 = 0, g3 = 0;
  std::optional<int> n_plus, n_min;
};

inline Fraction baseline_fraction(int n2, int k) { return Fraction(n2 - k + 1, n2); }

inline int c_rows(int n, int k) { return floor_div(n - k + 1, k - 1); }
inline int c_rows_general(int n, int k, int c) { return floor_div(n - k + c, k - 1); }

// ---- C* table ------------------------------------------------------------

struct CstarRule {
  int value;
  bool even_p;
  std::string_view label;
  bool (*match)(int p, int q);  // q is p' = k - (p + 4)
};

namespace detail {
inline int fl(int a, int b) { return floor_div(a, b); }
inline int cl(int a, int b) { return ceil_div(a, b); }
}  // namespace detail

inline std::span<const CstarRule> cstar_rules() {
  using detail::cl;
  using detail::fl;
  static const std::array<CstarRule, 20> rows{{
      {2, true, "p=0", [](int p, int) { return p == 0; }},
      {2, true, "p'>3p", [](int p, int q) { return q > 3 * p; }},
      {3, true, "3p/2<=p'<=3p", [](int p, int q) { return 3 * p <= 2 * q && q <= 3 * p; }},
      {4, true, "p'=1 mod 3, max(0,3floor(p/4)-1)<p'<3p/2",
       [](int p, int q) { return q % 3 == 1 && std::max(0, 3 * fl(p, 4) - 1) < q && 2 * q < 3 * p; }},
      {4, true, "p'=0,2 mod 3, 2<p'<=ceil((p-1)/2)",
       [](int p, int q) { return q % 3 != 1 && 2 < q && q <= cl(p - 1, 2); }},
      {4, true, "p'=0,2 mod 3, 3ceil(p/4)-1<p'<3p/2",
       [](int p, int q) { return q % 3 != 1 && 3 * cl(p, 4) - 1 < q && 2 * q < 3 * p; }},
      {5, true, "p'=0 mod 3, ceil((p-1)/2)<p'<3p/2",
       [](int p, int q) { return q % 3 == 0 && cl(p - 1, 2) < q && 2 * q < 3 * p; }},
      {6, true, "p'=2 mod 3, ceil((p-1)/2)<p'<3p/2",
       [](int p, int q) { return q % 3 == 2 && cl(p - 1, 2) < q && 2 * q < 3 * p; }},
      {6, true, "p'=0 mod 3, 0<p'<max(0,3floor(p/4)-1)",
       [](int p, int q) { return q % 3 == 0 && 0 < q && q < std::max(0, 3 * fl(p, 4) - 1); }},
      {2, false, "p'>3(p+1)/2", [](int p, int q) { return 2 * q > 3 * (p + 1); }},
      {3, false, "3(p-1)/2<=p'<=3(p+1)/2",
       [](int p, int q) { return 3 * (p - 1) <= 2 * q && 2 * q <= 3 * (p + 1); }},
      {4, false, "p'=1 mod 3, 3floor((p-1)/4)<p'<=3(p-1)/2",
       [](int p, int q) { return q % 3 == 1 && 3 * fl(p - 1, 4) < q && 2 * q <= 3 * (p - 1); }},
      {4, false, "p'=2 mod 3, 2<=p'<=ceil(3(p-1)/2), p'!=3floor((p-1)/4)-1",
       [](int p, int q) {
         return q % 3 == 2 && 2 <= q && q <= cl(3 * (p - 1), 2) && q != 3 * fl(p - 1, 4) - 1;
       }},
      {4, false, "p'=2 mod 3, p=7 mod 8, 3(p-7)/4<p'<3(p-1)/2",
       [](int p, int q) { return q % 3 == 2 && p % 8 == 7 && 4 * q > 3 * (p - 7) && 2 * q < 3 * (p - 1); }},
      {4, false, "p'=2 mod 3, p!=7 mod 8, 6floor(p/8)-3<p'<3(p-1)/2",
       [](int p, int q) { return q % 3 == 2 && p % 8 != 7 && 6 * fl(p, 8) - 3 < q && 2 * q < 3 * (p - 1); }},
      {5, false, "p'=1 mod 3, 3ceil((p-2)/6)<p'<=3floor((p-1)/4)",
       [](int p, int q) { return q % 3 == 1 && 3 * cl(p - 2, 6) < q && q <= 3 * fl(p - 1, 4); }},
      {5, false, "p'=2 mod 3, 2<=p'<=ceil(3(p-1)/2), p'=3floor((p-1)/4)-1",
       [](int p, int q) {
         return q % 3 == 2 && 2 <= q && q <= cl(3 * (p - 1), 2) && q == 3 * fl(p - 1, 4) - 1;
       }},
      {5, false, "p'=0 mod 3, p=7 mod 8, 0<p'<=3(p-7)/4",
       [](int p, int q) { return q % 3 == 0 && p % 8 == 7 && 0 < q && 4 * q <= 3 * (p - 7); }},
      {5, false, "0<p'<=6floor(p/8)-3", [](int p, int q) { return 0 < q && q <= 6 * fl(p, 8) - 3; }},
      {6, false, "p'=1 mod 3, 0<p'<=3ceil((p-2)/6)",
       [](int p, int q) { return q % 3 == 1 && 0 < q && q <= 3 * cl(p - 2, 6); }},
  }};
  return rows;
}

struct CstarLookup {
  int value = 0;  // resolved C*
  bool ambiguous = false;
  std::vector<const CstarRule*> matches;
};

// Evaluates every C* table row for (p, p'). Overlapping rows with different
// values resolve to the smallest value and set `ambiguous`.
inline CstarLookup cstar_table_case(int p, int p_prime) {
  if (p < 0 || p_prime < 0) throw invalid_parameters("C* table needs p >= 0 and p' >= 0");
  CstarLookup out;
  bool even = p % 2 == 0;
  for (const auto& row : cstar_rules())
    if (row.even_p == even && row.match(p, p_prime)) out.matches.push_back(&row);
  if (out.matches.empty()) return out;
  int lo = out.matches.front()->value, hi = lo;
  for (auto* m : out.matches) {
    lo = std::min(lo, m->value);
    hi = std::max(hi, m->value);
  }
  out.value = lo;
  out.ambiguous = lo != hi;
  return out;
}

inline CstarLookup cstar_case(int n1, int k) {
  if (k < 2) throw invalid_parameters("k < 2");
  if (n1 < 3 * (k - 1)) throw invalid_parameters("n1 < 3(k-1)");
  int p = n1 - 3 * (k - 1);
  if (k < p + 4) throw invalid_parameters("k < p + 4 with p = n1 - 3(k-1)");
  return cstar_table_case(p, k - (p + 4));
}

inline int cstar_lookup(int n1, int k) { return cstar_case(n1, k).value; }

// Same as cstar_lookup but 0 outside the table's domain.
inline int cstar_or_zero(int n, int k) {
  if (k < 2 || n < 3 * (k - 1) || k < n - 3 * (k - 1) + 4) return 0;
  return cstar_lookup(n, k);
}

// ---- planning --------------------------------------------------------------

namespace detail {

// Rows a pool of size n can add for c = 1, and which construction provides them.
inline std::pair<int, Construction> pool_rows_c1(int n, int k) {
  int cyc = n >= 3 * (k - 1) ? c_rows(n, k) : 0;
  int cs = cstar_or_zero(n, k);
  if (cs > cyc) return {cs, Construction::cstar};
  return {cyc, Construction::cyclic_base};
}

inline void finish_gain_plan(CodePlan& plan, int gain, Construction con) {
  const auto& p = plan.params;
  plan.gain = gain;
  plan.virtual_pool = p.n2 - gain;
  plan.q_partitions = plan.virtual_pool;
  plan.row_load = plan.virtual_pool - p.k + 1;
  plan.construction = gain > 0 ? con : Construction::plain_cyclic;
  plan.fraction = Fraction(plan.row_load, plan.q_partitions);
}

inline void plan_plain(CodePlan& plan, Regime regime) {
  plan.regime = regime;
  finish_gain_plan(plan, 0, Construction::plain_cyclic);
}

inline int p_star(const TieredParams& p) {
  // ceil(n2 - n1 - (n2 - k + c) / k)
  return ceil_div(static_cast<long long>(p.k) * (p.n2 - p.n1) - (p.n2 - p.k + p.c), p.k);
}

}  // namespace detail

inline CodePlan plan_general_c1(const TieredParams& p) {
  validate(p);
  const int k = p.k, n1 = p.n1, n2 = p.n2;
  if (p.c != 1) throw invalid_parameters("c != 1");
  if (k < 2 || n1 <= 2 * (k - 1)) throw invalid_parameters("n1 <= 2(k-1)");
  if (n2 < 3 * (k - 1)) throw invalid_parameters("n2 < 3(k-1)");
  if (n1 == n2) throw invalid_parameters("n1 == n2");

  CodePlan plan;
  plan.params = p;
  const bool mid = n1 < 3 * (k - 1);
  plan.regime = mid ? Regime::mid_range_c1 : Regime::cyclic_c1;

  int ps = std::max(0, detail::p_star(p));
  if (mid) ps = std::max(ps, 3 * (k - 1) - n1);
  plan.p_star = ps;
  plan.g1 = std::max(0, std::min(n2 - (n1 + ps), c_rows(n1 + ps, k)));

  const int lo = std::max(mid ? 3 * (k - 1) : n1, n2 - 6);
  int best = 0;
  for (int x = lo; x < n2; ++x) best = std::max(best, cstar_or_zero(x, k));
  for (int x = lo; x < n2; ++x) {
    if (!plan.n_plus && cstar_or_zero(x, k) == best) plan.n_plus = x;
    if (!plan.n_min && n2 <= x + cstar_or_zero(x, k)) plan.n_min = x;
  }
  if (plan.n_plus) plan.g2 = std::max(0, std::min(n2 - *plan.n_plus, best));
  if (plan.n_min) plan.g3 = n2 - *plan.n_min;

  // A candidate gain G is kept only if a pool of n2 - G servers can supply G rows.
  int gain = 0;
  Construction con = Construction::plain_cyclic;
  for (int g : {plan.g1, plan.g2, plan.g3}) {
    if (g <= gain) continue;
    auto [rows, which] = detail::pool_rows_c1(n2 - g, k);
    if (rows >= g) {
      gain = g;
      con = which;
    }
  }
  detail::finish_gain_plan(plan, gain, con);
  return plan;
}

inline CodePlan plan_general_cgt1(const TieredParams& p) {
  validate(p);
  const int k = p.k, n1 = p.n1, n2 = p.n2, c = p.c;
  const int edge = 2 * (k - 1) + (k - c);
  if (c <= 1) throw invalid_parameters("c <= 1");
  if (n1 <= 2 * (k - 1)) throw invalid_parameters("n1 <= 2(k-1)");
  if (n2 < edge) throw invalid_parameters("n2 < 2(k-1) + (k-c)");
  if (n1 == n2) throw invalid_parameters("n1 == n2");

  CodePlan plan;
  plan.params = p;
  const bool mid = n1 < edge;
  plan.regime = mid ? Regime::mid_range_c : Regime::cyclic_c;
  int ps = std::max(0, detail::p_star(p));
  if (mid) ps = std::max(ps, edge - n1);
  plan.p_star = ps;
  int pool = n1 + ps;
  int g = pool > n2 ? 0 : std::min(n2 - pool, c_rows_general(pool, k, c));
  plan.g1 = std::max(0, g);
  detail::finish_gain_plan(plan, plan.g1, Construction::cyclic_c);
  return plan;
}

inline CodePlan make_plan(const TieredParams& p) {
  validate(p);
  const int k = p.k, n1 = p.n1, n2 = p.n2, c = p.c;
  CodePlan plan;
  plan.params = p;
  if (n1 == n2) {
    detail::plan_plain(plan, Regime::plain_gradient);
    return plan;
  }
  if (c == 1 && n1 == k && n2 == k + 1 && k % 2 == 0) {
    plan.regime = Regime::n1_eq_k_even;
    plan.construction = Construction::n1k_even;
    plan.q_partitions = k * k / 2;
    plan.virtual_pool = n1;
    plan.gain = 1;
    plan.row_load = k - 1;
    plan.fraction = Fraction(plan.row_load, plan.q_partitions);
    return plan;
  }
  if (n1 <= 2 * (k - 1) && n2 > 2 * (k - 1)) {
    plan.regime = c == 1 ? Regime::fractional_c1 : Regime::fractional_c;
    plan.construction = Construction::fractional;
    plan.q_partitions = 2 * (k - 1);
    plan.virtual_pool = n1;
    plan.gain = n2 - n1;
    plan.row_load = k - 1;
    plan.fraction = Fraction(plan.row_load, plan.q_partitions);
    return plan;
  }
  if (c == 1 && n1 > 2 * (k - 1) && n2 >= 3 * (k - 1)) return plan_general_c1(p);
  if (c > 1 && n1 > 2 * (k - 1) && n2 >= 2 * (k - 1) + (k - c)) return plan_general_cgt1(p);
  detail::plan_plain(plan, Regime::gradient_fallback);
  return plan;
}

inline Fraction computation_fraction(const TieredParams& p) { return make_plan(p).fraction; }

// "a/b" without reducing, e.g. 6/9 for row load 6 over Q = 9.
inline std::string fraction_text(int num, int den) {
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace tgc
