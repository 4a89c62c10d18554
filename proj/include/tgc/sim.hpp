#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "codeplan.hpp"

namespace tgc {

enum class ModelKind { se1, se2, pareto };

struct StragglerModel {
  ModelKind kind = ModelKind::se2;
  double mu_factor = 0.1;
  double shift_factor = 5;
  double fixed_shift = 100;
  double alpha = 1.5;
  double xm_factor = 1;
  bool literal_mu = false;  // rate = mu_factor * fraction instead of mean = fraction / mu_factor

  void validate() const {
    if (!(alpha > 1)) throw invalid_parameters("alpha must exceed 1");
    if (!(mu_factor > 0 && shift_factor > 0 && fixed_shift > 0 && xm_factor > 0))
      throw invalid_parameters("model factors must be positive");
  }
};

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::se1: return "se1";
    case ModelKind::se2: return "se2";
    case ModelKind::pareto: return "pa";
  }
  return "?";
}

inline ModelKind parse_model(const std::string& s) {
  if (s == "se1") return ModelKind::se1;
  if (s == "se2") return ModelKind::se2;
  if (s == "pa" || s == "pareto") return ModelKind::pareto;
  throw invalid_parameters("unknown model '" + s + "' (expected se1, se2 or pa)");
}

// u in (0, 1); a fixed u gives the same quantile for every task size.
inline double task_time_from_uniform(const StragglerModel& m, double fraction, double u) {
  if (!(fraction > 0 && fraction <= 1)) throw invalid_parameters("task fraction must lie in (0, 1]");
  switch (m.kind) {
    case ModelKind::se1:
    case ModelKind::se2: {
      double shift = m.kind == ModelKind::se1 ? m.shift_factor * fraction : m.fixed_shift;
      double mean = m.literal_mu ? 1.0 / (m.mu_factor * fraction) : fraction / m.mu_factor;
      return shift - mean * std::log(u);
    }
    case ModelKind::pareto:
      return m.xm_factor * fraction * std::pow(u, -1.0 / m.alpha);
  }
  return 0;
}

inline double open_uniform(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

inline double sample_task_time(const StragglerModel& m, double fraction, std::mt19937_64& rng) {
  return task_time_from_uniform(m, fraction, open_uniform(rng));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ trial));
}

struct TrialOutcome {
  double sct = 0;
  double suc = 0;
  double phase2_launch = 0;
  std::vector<int> finisher_order;  // launched servers (1-based) by completion time
};

namespace detail {

inline TrialOutcome settle(const std::vector<double>& launch, const std::vector<double>& done, int k) {
  TrialOutcome out;
  std::vector<int> order(done.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return done[a] < done[b]; });
  out.sct = done[static_cast<std::size_t>(order[static_cast<std::size_t>(k - 1)])];
  for (std::size_t i = 0; i < done.size(); ++i) out.suc += std::min(done[i], out.sct) - launch[i];
  for (int i : order) out.finisher_order.push_back(i + 1);
  return out;
}

}  // namespace detail

// Tiered and plain schemes driven by the same per-slot quantiles `u` (length n2).
inline std::pair<TrialOutcome, TrialOutcome> run_trial_coupled(const TieredParams& p, double frac_tiered, double frac_gc,
                                                               const StragglerModel& m, const std::vector<double>& u) {
  std::vector<double> launch(static_cast<std::size_t>(p.n1), 0.0), done(static_cast<std::size_t>(p.n1));
  for (int i = 0; i < p.n1; ++i) done[i] = task_time_from_uniform(m, frac_tiered, u[i]);
  std::vector<double> sorted = done;
  std::nth_element(sorted.begin(), sorted.begin() + (p.c - 1), sorted.end());
  double tau = p.n2 > p.n1 ? sorted[static_cast<std::size_t>(p.c - 1)] : 0.0;
  for (int i = p.n1; i < p.n2; ++i) {
    launch.push_back(tau);
    done.push_back(tau + task_time_from_uniform(m, frac_tiered, u[i]));
  }
  auto tiered = detail::settle(launch, done, p.k);
  tiered.phase2_launch = tau;

  std::vector<double> glaunch(static_cast<std::size_t>(p.n2), 0.0), gdone(static_cast<std::size_t>(p.n2));
  for (int i = 0; i < p.n2; ++i) gdone[i] = task_time_from_uniform(m, frac_gc, u[i]);
  auto grad = detail::settle(glaunch, gdone, p.k);
  return {std::move(tiered), std::move(grad)};
}

inline std::pair<TrialOutcome, TrialOutcome> run_trial(const TieredParams& p, Fraction frac_tiered, Fraction frac_gc,
                                                       const StragglerModel& m, std::mt19937_64& rng) {
  validate(p);
  std::vector<double> u(static_cast<std::size_t>(p.n2));
  for (auto& x : u) x = open_uniform(rng);
  return run_trial_coupled(p, boost::rational_cast<double>(frac_tiered), boost::rational_cast<double>(frac_gc), m, u);
}

enum class Schemes { tiered, gradient, both };

struct SimConfig {
  TieredParams params;
  StragglerModel model;
  int trials = 10000;
  std::uint64_t seed = 42;
  Schemes schemes = Schemes::both;
  int threads = 1;
  int bootstrap = 200;
};

struct SchemeStats {
  double mean_sct = 0, se_sct = 0, mean_suc = 0, se_suc = 0;
  std::vector<double> sct, suc;  // per-trial samples
};

struct SimResult {
  TieredParams params;
  std::string model;
  int trials = 0;
  std::uint64_t seed = 0;
  int tiered_load = 0, tiered_q = 0;
  SchemeStats tiered, gradient;
};

inline double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Bootstrap distribution of the sample mean; deterministic in `seed`.
inline std::vector<double> bootstrap_means(const std::vector<double>& v, int resamples, std::uint64_t seed) {
  std::vector<double> out;
  if (v.empty()) return out;
  std::mt19937_64 rng(splitmix64(seed));
  const std::uint64_t n = v.size();
  for (int b = 0; b < resamples; ++b) {
    double s = 0;
    for (std::uint64_t i = 0; i < n; ++i) s += v[static_cast<std::size_t>(rng() % n)];
    out.push_back(s / static_cast<double>(n));
  }
  return out;
}

inline double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  double m = mean_of(v), s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline double bootstrap_se(const std::vector<double>& v, int resamples, std::uint64_t seed) {
  return stddev_of(bootstrap_means(v, resamples, seed));
}

inline SimResult monte_carlo(const SimConfig& cfg) {
  validate(cfg.params);
  cfg.model.validate();
  if (cfg.trials < 1) throw invalid_parameters("trials < 1");
  const auto& p = cfg.params;
  auto plan = make_plan(p);
  double ft = boost::rational_cast<double>(plan.fraction);
  double fg = boost::rational_cast<double>(baseline_fraction(p.n2, p.k));

  SimResult res;
  res.params = p;
  res.model = to_string(cfg.model.kind);
  res.trials = cfg.trials;
  res.seed = cfg.seed;
  res.tiered_load = plan.row_load;
  res.tiered_q = plan.q_partitions;
  const auto n = static_cast<std::size_t>(cfg.trials);
  res.tiered.sct.resize(n);
  res.tiered.suc.resize(n);
  res.gradient.sct.resize(n);
  res.gradient.suc.resize(n);

  auto work = [&](std::size_t lo, std::size_t hi) {
    std::vector<double> u(static_cast<std::size_t>(p.n2));
    for (std::size_t t = lo; t < hi; ++t) {
      auto rng = trial_rng(cfg.seed, t);
      for (auto& x : u) x = open_uniform(rng);
      auto [a, b] = run_trial_coupled(p, ft, fg, cfg.model, u);
      res.tiered.sct[t] = a.sct;
      res.tiered.suc[t] = a.suc;
      res.gradient.sct[t] = b.sct;
      res.gradient.suc[t] = b.suc;
    }
  };
  int threads = std::max(1, std::min(cfg.threads, cfg.trials));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work, n * i / threads, n * (i + 1) / threads);
    for (auto& th : pool) th.join();
  }
  auto fill = [&](SchemeStats& s, std::uint64_t salt) {
    s.mean_sct = mean_of(s.sct);
    s.mean_suc = mean_of(s.suc);
    s.se_sct = bootstrap_se(s.sct, cfg.bootstrap, cfg.seed ^ salt);
    s.se_suc = bootstrap_se(s.suc, cfg.bootstrap, cfg.seed ^ (salt + 1));
  };
  fill(res.tiered, 0x100);
  fill(res.gradient, 0x200);
  return res;
}

// ---- CSV -------------------------------------------------------------------

inline const char* csv_header = "scheme,n1,n2,k,c,model,frac,mean_sct,se_sct,mean_suc,se_suc,trials,seed";

inline void write_csv_row(std::ostream& os, const SimResult& r, bool tiered) {
  const auto& p = r.params;
  const auto& s = tiered ? r.tiered : r.gradient;
  std::string frac = tiered ? fraction_text(r.tiered_load, r.tiered_q) : fraction_text(p.n2 - p.k + 1, p.n2);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%d,%d,%d,%d,%s,%s,%.10g,%.10g,%.10g,%.10g,%d,%llu", tiered ? "tiered" : "gradient",
                p.n1, p.n2, p.k, p.c, r.model.c_str(), frac.c_str(), s.mean_sct, s.se_sct, s.mean_suc, s.se_suc,
                r.trials, static_cast<unsigned long long>(r.seed));
  os << buf << '\n';
}

}  // namespace tgc
