#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "numeric.hpp"

namespace tgc {

struct VerifyOptions {
  double tol = 1e-8;
  double rank_cutoff = 1e-10;
  std::uint64_t guard = 10'000'000;
  int threads = 1;
  std::size_t keep_failures = 100;
};

struct TupleFailure {
  FinishedSet m;
  IndexSet i1, i2;
  double residual = 0;       // span check
  int rank_rows = 0, rank_augmented = 0;
  IndexSet subset;           // support check: failing T as 0-based slots
  int union_size = 0, bound = 0;
};

struct VerificationReport {
  std::string oracle;
  std::uint64_t checked = 0;
  std::uint64_t failure_count = 0;
  std::vector<TupleFailure> failures;  // first keep_failures only
  double worst_residual = 0;

  bool passed() const { return failure_count == 0; }

  void merge(VerificationReport&& other, std::size_t keep) {
    checked += other.checked;
    failure_count += other.failure_count;
    worst_residual = std::max(worst_residual, other.worst_residual);
    for (auto& f : other.failures)
      if (failures.size() < keep) failures.push_back(std::move(f));
  }

  std::string to_text() const {
    std::ostringstream os;
    os << oracle << ": " << checked << " tuples checked, " << failure_count << " failed\n";
    for (const auto& f : failures) {
      os << "FAIL " << tuple_text(f.m, f.i1, f.i2);
      if (!f.subset.empty())
        os << " T=" << detail::set_text(f.subset) << " |union|=" << f.union_size << " < " << f.bound;
      else
        os << " residual=" << f.residual << " rank=" << f.rank_rows << "/" << f.rank_augmented;
      os << '\n';
    }
    return os.str();
  }
};

inline std::uint64_t tiered_tuple_count(const TieredParams& p) {
  unsigned __int128 n = static_cast<unsigned __int128>(binomial(p.n1, p.c)) * binomial(p.n2 - p.c, p.k - p.c);
  return n > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(n);
}

namespace detail {

inline void check_guard(std::uint64_t tuples, const VerifyOptions& opt) {
  if (tuples > opt.guard)
    throw guard_exceeded("enumeration of " + std::to_string(tuples) + " tuples exceeds the guard of " +
                             std::to_string(opt.guard),
                         static_cast<double>(tuples));
}

// Calls fn(i1, i2) for every split of k - c servers outside M. Phase-one servers
// are 1-based in [1, n1]; phase-two servers 1-based in [1, n2 - n1].
template <class F>
void for_each_completion(const TieredParams& p, const FinishedSet& m, F&& fn) {
  std::vector<int> pool;  // 0-based slots
  for (int s = 1; s <= p.n1; ++s)
    if (std::find(m.begin(), m.end(), s) == m.end()) pool.push_back(s - 1);
  for (int s = p.n1; s < p.n2; ++s) pool.push_back(s);
  IndexSet i1, i2;
  for_each_combination_of(pool, p.k - p.c, [&](std::span<const int> pick) {
    i1.clear();
    i2.clear();
    for (int slot : pick) {
      if (slot < p.n1) i1.push_back(slot + 1);
      else i2.push_back(slot - p.n1 + 1);
    }
    fn(i1, i2);
  });
}

template <class PerM>
VerificationReport sharded_over_m(const TieredParams& p, const VerifyOptions& opt, const std::string& name, PerM&& per_m) {
  std::vector<FinishedSet> sets;
  for_each_combination(p.n1, p.c, [&](std::span<const int> c) {
    FinishedSet m;
    for (int x : c) m.push_back(x + 1);
    sets.push_back(std::move(m));
  });
  std::vector<VerificationReport> parts(sets.size());
  int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(sets.size())));
  auto work = [&](int t) {
    for (std::size_t i = static_cast<std::size_t>(t); i < sets.size(); i += static_cast<std::size_t>(threads))
      parts[i] = per_m(sets[i]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  VerificationReport out;
  out.oracle = name;
  for (auto& part : parts) out.merge(std::move(part), opt.keep_failures);
  return out;
}

inline int qr_rank(const Matrix& a, double cutoff) {
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  qr.setThreshold(cutoff);
  return static_cast<int>(qr.rank());
}

// Span test of 1 against the rows `slots` of `all`, done in the coordinates of
// the row space `basis` (Q x r) and confirmed in the original space.
inline bool span_member(const Matrix& all, const Matrix& coords, const Vector& e, const IndexSet& slots,
                        const VerifyOptions& opt, double& residual, int& rank_rows, int& rank_aug) {
  const int s = static_cast<int>(slots.size());
  const int r = static_cast<int>(coords.cols());
  Matrix at(r, s), aug(r, s + 1);
  for (int j = 0; j < s; ++j) at.col(j) = coords.row(slots[j]).transpose();
  aug << at, e;
  Eigen::ColPivHouseholderQR<Matrix> qr(at);
  qr.setThreshold(opt.rank_cutoff);
  rank_rows = static_cast<int>(qr.rank());
  rank_aug = qr_rank(aug, opt.rank_cutoff);
  Vector coef = qr.solve(e);
  Vector back = Vector::Zero(all.cols());
  for (int j = 0; j < s; ++j) back += coef(j) * all.row(slots[j]).transpose();
  residual = (back - Vector::Ones(all.cols())).cwiseAbs().maxCoeff();
  return residual <= opt.tol && rank_rows == rank_aug;
}

inline void row_space(const Matrix& all, double cutoff, Matrix& coords, Vector& e) {
  Eigen::JacobiSVD<Matrix> svd(all, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) r += sv(i) > cutoff * sv(0);
  Matrix basis = svd.matrixV().leftCols(std::max(r, 1));
  coords = all * basis;
  e = basis.transpose() * Vector::Ones(all.cols());
}

}  // namespace detail

// Span condition over every (M, I1, I2) with |I1 u I2| = k - c.
inline VerificationReport check_span_tiered(const TieredCode& code, const VerifyOptions& opt = {}) {
  const auto& p = code.params();
  detail::check_guard(tiered_tuple_count(p), opt);
  return detail::sharded_over_m(p, opt, "span", [&](const FinishedSet& m) {
    VerificationReport rep;
    Matrix all = code.stacked(m), coords;
    Vector e;
    detail::row_space(all, opt.rank_cutoff, coords, e);
    IndexSet slots;
    detail::for_each_completion(p, m, [&](const IndexSet& i1, const IndexSet& i2) {
      slots.clear();
      for (int s : m) slots.push_back(s - 1);
      for (int s : i1) slots.push_back(s - 1);
      for (int s : i2) slots.push_back(p.n1 + s - 1);
      double res = 0;
      int rr = 0, ra = 0;
      bool ok = detail::span_member(all, coords, e, slots, opt, res, rr, ra);
      ++rep.checked;
      rep.worst_residual = std::max(rep.worst_residual, res);
      if (!ok) {
        ++rep.failure_count;
        if (rep.failures.size() < opt.keep_failures) {
          TupleFailure f;
          f.m = m;
          f.i1 = i1;
          f.i2 = i2;
          f.residual = res;
          f.rank_rows = rr;
          f.rank_augmented = ra;
          rep.failures.push_back(std::move(f));
        }
      }
    });
    return rep;
  });
}

namespace detail {

// Smallest nonempty T of `masks` whose union is below (q - k) + |T|, if any.
inline bool union_condition(const std::vector<RowMask>& masks, int q, int k, IndexSet& bad, int& usize, int& bound) {
  const int s = static_cast<int>(masks.size());
  std::vector<RowMask> unions(std::size_t{1} << s);
  for (std::size_t t = 1; t < unions.size(); ++t) {
    int low = std::countr_zero(t);
    unions[t] = unions[t & (t - 1)] | masks[static_cast<std::size_t>(low)];
    int size = static_cast<int>(unions[t].count());
    int need = (q - k) + std::popcount(t);
    if (size < need) {
      bad.clear();
      for (int j = 0; j < s; ++j)
        if (t >> j & 1) bad.push_back(j);
      usize = size;
      bound = need;
      return false;
    }
  }
  return true;
}

}  // namespace detail

// Combinatorial support condition. The bound is (Q - k) + |T|, which equals the
// (n1 - k) + |T| form whenever Q = n1.
inline VerificationReport check_support_condition(const TieredSupport& ts, const VerifyOptions& opt = {}) {
  const auto& p = ts.params();
  detail::check_guard(tiered_tuple_count(p), opt);
  return detail::sharded_over_m(p, opt, "support", [&](const FinishedSet& m) {
    VerificationReport rep;
    auto b = ts.b_for(m);
    std::vector<RowMask> rows;
    for (int r = 0; r < ts.f.rows(); ++r) rows.push_back(ts.f.row_mask(r));
    for (int r = 0; r < b.rows(); ++r) rows.push_back(b.row_mask(r));
    std::vector<RowMask> pick;
    IndexSet slots;
    detail::for_each_completion(p, m, [&](const IndexSet& i1, const IndexSet& i2) {
      slots.clear();
      for (int s : m) slots.push_back(s - 1);
      for (int s : i1) slots.push_back(s - 1);
      for (int s : i2) slots.push_back(p.n1 + s - 1);
      pick.clear();
      for (int s : slots) pick.push_back(rows[static_cast<std::size_t>(s)]);
      IndexSet bad;
      int usize = 0, bound = 0;
      ++rep.checked;
      if (!detail::union_condition(pick, ts.q(), p.k, bad, usize, bound)) {
        ++rep.failure_count;
        if (rep.failures.size() < opt.keep_failures) {
          TupleFailure f;
          f.m = m;
          f.i1 = i1;
          f.i2 = i2;
          for (int j : bad) f.subset.push_back(slots[static_cast<std::size_t>(j)]);
          f.union_size = usize;
          f.bound = bound;
          rep.failures.push_back(std::move(f));
        }
      }
    });
    return rep;
  });
}

// Base (n, k) gradient code: every k rows, Condition 1 on supports.
inline VerificationReport check_base_code(const SupportMatrix& f, int n, int k, const VerifyOptions& opt = {}) {
  if (f.rows() != n || k < 1 || k > n) throw invalid_parameters("check_base_code: need n rows and 1 <= k <= n");
  detail::check_guard(binomial(n, k), opt);
  VerificationReport rep;
  rep.oracle = "base-support";
  std::vector<RowMask> rows, pick;
  for (int r = 0; r < n; ++r) rows.push_back(f.row_mask(r));
  for_each_combination(n, k, [&](std::span<const int> s) {
    pick.clear();
    for (int r : s) pick.push_back(rows[static_cast<std::size_t>(r)]);
    IndexSet bad;
    int usize = 0, bound = 0;
    ++rep.checked;
    if (!detail::union_condition(pick, f.q(), k, bad, usize, bound)) {
      ++rep.failure_count;
      if (rep.failures.size() < opt.keep_failures) {
        TupleFailure fl;
        for (int j : bad) fl.subset.push_back(s[static_cast<std::size_t>(j)]);
        fl.i1.assign(s.begin(), s.end());
        fl.union_size = usize;
        fl.bound = bound;
        rep.failures.push_back(std::move(fl));
      }
    }
  });
  return rep;
}

// Base (n, k) gradient code: every k rows span the all-ones vector.
inline VerificationReport check_base_code(const Matrix& f, int n, int k, const VerifyOptions& opt = {}) {
  if (f.rows() != n || k < 1 || k > n) throw invalid_parameters("check_base_code: need n rows and 1 <= k <= n");
  detail::check_guard(binomial(n, k), opt);
  VerificationReport rep;
  rep.oracle = "base-span";
  Matrix coords;
  Vector e;
  detail::row_space(f, opt.rank_cutoff, coords, e);
  IndexSet slots;
  for_each_combination(n, k, [&](std::span<const int> s) {
    slots.assign(s.begin(), s.end());
    double res = 0;
    int rr = 0, ra = 0;
    ++rep.checked;
    bool ok = detail::span_member(f, coords, e, slots, opt, res, rr, ra);
    rep.worst_residual = std::max(rep.worst_residual, res);
    if (!ok) {
      ++rep.failure_count;
      if (rep.failures.size() < opt.keep_failures) {
        TupleFailure fl;
        fl.i1 = slots;
        fl.residual = res;
        fl.rank_rows = rr;
        fl.rank_augmented = ra;
        rep.failures.push_back(std::move(fl));
      }
    }
  });
  return rep;
}

}  // namespace tgc
