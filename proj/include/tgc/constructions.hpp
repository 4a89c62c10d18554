#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "codeplan.hpp"
#include "pattern.hpp"
#include "support.hpp"

namespace tgc {

// Finished phase-one servers, 1-based.
using FinishedSet = std::vector<int>;

enum class BRule {
  fixed,       // no dependence on M
  fractional,  // half chosen by membership of M
  rotate,      // canonical rows for M = {1}, rotated by m - 1
  n1k_even,    // single row built directly from m
  c_general,   // rows built directly from M
};

struct TieredSupport {
  CodePlan plan;
  SupportMatrix f;          // n1 x Q
  SupportMatrix leftover;   // pool rows that were not launched in phase one
  SupportMatrix canonical;  // pool construction's rows for M = {1} (rotate rule)
  BRule rule = BRule::fixed;
  int b_rows = 0;           // rows of every B_M, n2 - n1

  const TieredParams& params() const { return plan.params; }
  int q() const { return f.q(); }
  SupportMatrix b_for(const FinishedSet& m) const;
};

namespace detail {

inline CodePlan direct_plan(TieredParams p, Regime regime, Construction con, int q, int pool, int gain, int load) {
  CodePlan plan;
  plan.params = p;
  plan.regime = regime;
  plan.construction = con;
  plan.q_partitions = q;
  plan.virtual_pool = pool;
  plan.gain = gain;
  plan.row_load = load;
  plan.fraction = Fraction(load, q);
  return plan;
}

inline void require_nonempty_rows(const SupportMatrix& m, const char* what) {
  for (int r = 0; r < m.rows(); ++r)
    if (m.row_weight(r) == 0) throw construction_error(std::string(what) + ": empty row " + std::to_string(r));
}

// Rows with one zero per C-wide block over [0, (k-1)C) and ones on the tail.
// Row i (0-based) puts its zero at block offset (i + zero_offset) mod C.
inline SupportMatrix circulant_blocks(int n, int k, int crows, int zero_offset) {
  SupportMatrix b(crows, n);
  for (int i = 0; i < crows; ++i) {
    for (int col = 0; col < n; ++col) b.set(i, col);
    for (int blk = 0; blk < k - 1; ++blk) b.set(i, blk * crows + mod(i + zero_offset, crows), false);
  }
  return b;
}

// Single added row when only one fits: the tail [n-k+1, n-1] plus coordinates of
// L_1 = [0, n-k], even ones first, then the highest unused odd ones.
inline SupportMatrix single_row(int n, int k) {
  SupportMatrix b(1, n);
  for (int col = n - k + 1; col < n; ++col) b.set(0, col);
  int need = n - 2 * (k - 1);
  for (int col = 0; col <= n - k && need > 0; col += 2, --need) b.set(0, col);
  for (int col = (n - k) % 2 == 1 ? n - k : n - k - 1; col >= 1 && need > 0; col -= 2, --need) b.set(0, col);
  return b;
}

}  // namespace detail

// B rows of the cyclic-base construction for a pool of n servers, finished server 1.
inline SupportMatrix cyclic_base_rows(int n, int k) {
  if (k < 2 || n < 3 * (k - 1)) throw invalid_parameters("n1 < 3(k-1)");
  int crows = c_rows(n, k);
  if (crows == 1) return detail::single_row(n, k);
  return detail::circulant_blocks(n, k, crows, 1);
}

inline SupportMatrix cstar_rows(int n, int k) {
  if (k < 4) throw invalid_parameters("k < 4");
  if (n < 3 * (k - 1) || n > 3 * (k - 1) + (k - 4)) throw invalid_parameters("n1 outside [3(k-1), 3(k-1)+(k-4)]");
  int cs = cstar_lookup(n, k);
  if (cs < 2) throw invalid_parameters("C* = 0 for n1=" + std::to_string(n) + ", k=" + std::to_string(k));
  if (cs == 2) return cyclic_base_rows(n, k);
  auto t = expand_row_templates(cs, n, k);
  SupportMatrix b(cs, n);
  for (int r = 0; r < cs; ++r)
    for (int col = 0; col < n; ++col) b.set(r, col, t.rows[r][col]);
  return b;
}

inline FinishedSet normalize_finished(FinishedSet m, int n1, int c) {
  std::sort(m.begin(), m.end());
  if (static_cast<int>(m.size()) != c)
    throw invalid_parameters("finished set has " + std::to_string(m.size()) + " servers, expected c=" + std::to_string(c));
  if (std::adjacent_find(m.begin(), m.end()) != m.end()) throw invalid_parameters("finished set repeats a server");
  for (int s : m)
    if (s < 1 || s > n1) throw invalid_parameters("finished server " + std::to_string(s) + " outside [1, n1]");
  return m;
}

struct GapInfo {
  int g = 0;      // coordinates missed by every finished server
  int start = 0;  // first coordinate of the missed window (meaningful when g > 0)
  int shift = 0;  // B[x] = B*[(x + shift) mod n]
};

inline GapInfo c_general_gap(int n, int k, int c, const FinishedSet& m) {
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  for (int s : m)
    for (int j = 0; j <= n - k; ++j) covered[(s - 1 + j) % n] = 1;
  GapInfo info;
  info.g = static_cast<int>(std::count(covered.begin(), covered.end(), 0));
  int window = 0;
  if (info.g > 0) {
    for (int x = 0; x < n; ++x)
      if (!covered[x] && covered[mod(x - 1, n)]) info.start = x;
    window = info.start;
  } else {
    window = mod(m.front() + n - k, n);
  }
  int len = (n - k + c) - (k - 1) * c_rows_general(n, k, c) + (k - c);
  int mandatory_first = window - (len - (k - c));
  info.shift = mod(static_cast<long long>(n) - len - mandatory_first, n);
  return info;
}

// All C' rows of the general-c construction for a pool of n servers and finished set M.
inline SupportMatrix c_general_rows(int n, int k, int c, FinishedSet m) {
  if (c < 2) throw invalid_parameters("c < 2");
  if (n < 2 * (k - 1) + (k - c)) throw invalid_parameters("n1 < 2(k-1)+(k-c)");
  m = normalize_finished(std::move(m), n, c);
  auto gap = c_general_gap(n, k, c, m);
  auto shifted = detail::circulant_blocks(n, k, c_rows_general(n, k, c), 0);
  return shifted.rotated(-gap.shift);
}

inline SupportMatrix n1k_even_row(int k, int m) {
  if (k % 2 != 0) throw invalid_parameters("k must be even");
  if (m < 1 || m > k) throw invalid_parameters("finished server outside [1, k]");
  const int t = k - 1, h = k / 2, q = k * k / 2;
  SupportMatrix b(1, q);
  for (int j = 0; j < k; ++j)
    if (j != m - 1) b.set(0, mod(static_cast<long long>(j - 1) * h + t, q));
  return b;
}

inline SupportMatrix relabel_for_finished(const TieredSupport& ts, const FinishedSet& actual) {
  const auto& p = ts.params();
  auto m = normalize_finished(actual, p.n1, p.c);
  SupportMatrix mut(0, ts.q());
  switch (ts.rule) {
    case BRule::fixed:
      break;
    case BRule::fractional: {
      const int half = ts.q() / 2, first = (p.n1 + 1) / 2;
      bool in_first = std::all_of(m.begin(), m.end(), [&](int s) { return s <= first; });
      mut = SupportMatrix(ts.b_rows, ts.q());
      for (int r = 0; r < ts.b_rows; ++r)
        for (int col = 0; col < half; ++col) mut.set(r, in_first ? half + col : col);
      break;
    }
    case BRule::rotate:
      if (p.c != 1) throw invalid_parameters("rotation relabeling needs c = 1");
      mut = ts.canonical.rotated(m.front() - 1);
      break;
    case BRule::n1k_even:
      mut = n1k_even_row(p.k, m.front());
      break;
    case BRule::c_general:
      mut = c_general_rows(ts.plan.virtual_pool, p.k, p.c, m);
      break;
  }
  auto full = ts.leftover.stacked(mut);
  if (full.rows() < ts.b_rows) throw construction_error("not enough phase-two rows");
  return full.prefix_rows(ts.b_rows);
}

inline SupportMatrix TieredSupport::b_for(const FinishedSet& m) const { return relabel_for_finished(*this, m); }

inline TieredSupport tiered_fractional(const TieredParams& p) {
  validate(p);
  if (p.n1 > 2 * (p.k - 1)) throw invalid_parameters("n1 > 2(k-1)");
  if (p.n2 <= 2 * (p.k - 1)) throw invalid_parameters("n2 <= 2(k-1)");
  const int q = 2 * (p.k - 1), half = p.k - 1, first = (p.n1 + 1) / 2;
  TieredSupport ts;
  ts.plan = detail::direct_plan(p, p.c == 1 ? Regime::fractional_c1 : Regime::fractional_c, Construction::fractional,
                                q, p.n1, p.n2 - p.n1, half);
  ts.f = SupportMatrix(p.n1, q);
  for (int i = 0; i < p.n1; ++i)
    for (int col = 0; col < half; ++col) ts.f.set(i, (i < first ? 0 : half) + col);
  ts.leftover = SupportMatrix(0, q);
  ts.rule = BRule::fractional;
  ts.b_rows = p.n2 - p.n1;
  return ts;
}

namespace detail {

inline TieredSupport pool_code(const CodePlan& plan, SupportMatrix canonical, BRule rule) {
  const auto& p = plan.params;
  const int pool = plan.virtual_pool;
  auto cyc = cyclic_support(pool, p.k);
  TieredSupport ts;
  ts.plan = plan;
  ts.f = cyc.prefix_rows(p.n1);
  ts.leftover = cyc.row_range(p.n1, pool - p.n1);
  ts.canonical = std::move(canonical);
  ts.rule = rule;
  ts.b_rows = p.n2 - p.n1;
  return ts;
}

}  // namespace detail

inline TieredSupport tiered_cyclic_base(int n1, int k) {
  if (k < 2 || n1 < 3 * (k - 1)) throw invalid_parameters("n1 < 3(k-1)");
  int g = c_rows(n1, k);
  TieredParams p{n1, n1 + g, k, 1};
  auto plan = detail::direct_plan(p, Regime::cyclic_c1, Construction::cyclic_base, n1, n1, g, n1 - k + 1);
  return detail::pool_code(plan, cyclic_base_rows(n1, k), BRule::rotate);
}

inline TieredSupport tiered_cstar(int n1, int k) {
  auto rows = cstar_rows(n1, k);
  TieredParams p{n1, n1 + rows.rows(), k, 1};
  auto plan = detail::direct_plan(p, Regime::cyclic_c1, Construction::cstar, n1, n1, rows.rows(), n1 - k + 1);
  return detail::pool_code(plan, std::move(rows), BRule::rotate);
}

inline TieredSupport tiered_c_general(int n1, int k, int c) {
  if (c < 2 || c >= k) throw invalid_parameters("c outside [2, k-1]");
  if (n1 < 2 * (k - 1) + (k - c)) throw invalid_parameters("n1 < 2(k-1)+(k-c)");
  int g = c_rows_general(n1, k, c);
  TieredParams p{n1, n1 + g, k, c};
  auto plan = detail::direct_plan(p, Regime::cyclic_c, Construction::cyclic_c, n1, n1, g, n1 - k + 1);
  return detail::pool_code(plan, SupportMatrix(0, n1), BRule::c_general);
}

inline TieredSupport tiered_n1k_even(int k) {
  if (k < 2 || k % 2 != 0) throw invalid_parameters("k must be even");
  const int t = k - 1, h = k / 2, q = k * k / 2;
  TieredParams p{k, k + 1, k, 1};
  TieredSupport ts;
  ts.plan = detail::direct_plan(p, Regime::n1_eq_k_even, Construction::n1k_even, q, k, 1, t);
  ts.f = SupportMatrix(k, q);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < t; ++j) ts.f.set(i, (i * h + j) % q);
  ts.leftover = SupportMatrix(0, q);
  ts.rule = BRule::n1k_even;
  ts.b_rows = 1;
  return ts;
}

inline TieredSupport truncate_b(const TieredSupport& ts, int rows_needed) {
  if (rows_needed < 1) throw invalid_parameters("rows_needed < 1");
  if (rows_needed > ts.b_rows) throw invalid_parameters("rows_needed exceeds available phase-two rows");
  TieredSupport out = ts;
  out.b_rows = rows_needed;
  out.plan.params.n2 = ts.params().n1 + rows_needed;
  return out;
}

// Support code for a plan produced by make_plan.
inline TieredSupport build_support(const CodePlan& plan) {
  const auto& p = plan.params;
  TieredSupport ts;
  switch (plan.construction) {
    case Construction::fractional:
      ts = tiered_fractional(p);
      break;
    case Construction::n1k_even:
      ts = tiered_n1k_even(p.k);
      break;
    case Construction::plain_cyclic:
      ts = detail::pool_code(plan, SupportMatrix(0, plan.virtual_pool), BRule::fixed);
      break;
    case Construction::cyclic_base:
      ts = detail::pool_code(plan, cyclic_base_rows(plan.virtual_pool, p.k), BRule::rotate);
      break;
    case Construction::cstar:
      ts = detail::pool_code(plan, cstar_rows(plan.virtual_pool, p.k), BRule::rotate);
      break;
    case Construction::cyclic_c:
      ts = detail::pool_code(plan, SupportMatrix(0, plan.virtual_pool), BRule::c_general);
      break;
  }
  ts.plan = plan;
  detail::require_nonempty_rows(ts.f, "F");
  return ts;
}

inline TieredSupport build_support(const TieredParams& p) { return build_support(make_plan(p)); }

// ---- structural checks ----------------------------------------------------

// Coordinates outside every finished server's support must be in every added
// B_M row. Unlaunched cyclic rows of a larger pool are exempt.
inline bool added_rows_cover_gaps(const TieredSupport& ts, const FinishedSet& m) {
  auto b = ts.b_for(m);
  RowMask uncovered;
  for (int col = 0; col < ts.q(); ++col) uncovered.set(col);
  for (int s : m) uncovered &= ~ts.f.row_mask(s - 1);
  if (ts.rule == BRule::fixed) return true;
  for (int r = ts.leftover.rows(); r < b.rows(); ++r)
    if ((uncovered & ~b.row_mask(r)).any()) return false;
  return true;
}

// Every window of `width` cyclically consecutive coordinates meets the row.
inline bool consecutive_property(const SupportMatrix& b, int width) {
  for (int r = 0; r < b.rows(); ++r)
    for (int start = 0; start < b.q(); ++start) {
      bool hit = false;
      for (int j = 0; j < width && !hit; ++j) hit = b.test(r, (start + j) % b.q());
      if (!hit) return false;
    }
  return true;
}

}  // namespace tgc
