#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tgc/tgc.hpp"

namespace fs = std::filesystem;
using namespace tgc;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify = 1;
constexpr int exit_invalid = 2;

struct Options {
  TieredParams params{0, 0, 0, 1};
  std::uint64_t seed = 42;
  double tol = 1e-8;
  int threads = 1;
  int trials = 10000;
  std::string model = "se2";
  bool literal_mu = false;
  double mu_factor = 0.1, shift_factor = 5, fixed_shift = 100, alpha = 1.5, xm_factor = 1;
  std::string format = "text";
  std::string out;
  std::string svg;
  std::string from;
  std::string report;
  std::string vary = "n1";
  std::string what = "support";
  std::vector<int> finished;
};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_parameters("cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw invalid_parameters(path + ":" + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

StragglerModel make_model(const Options& o) {
  StragglerModel m;
  m.kind = parse_model(o.model);
  m.mu_factor = o.mu_factor;
  m.shift_factor = o.shift_factor;
  m.fixed_shift = o.fixed_shift;
  m.alpha = o.alpha;
  m.xm_factor = o.xm_factor;
  m.literal_mu = o.literal_mu;
  m.validate();
  return m;
}

FinishedSet finished_or_default(const Options& o) {
  if (!o.finished.empty()) return o.finished;
  FinishedSet m;
  for (int s = 1; s <= o.params.c; ++s) m.push_back(s);
  return m;
}

std::string set_name(const FinishedSet& m) {
  std::string s;
  for (int x : m) s += (s.empty() ? "" : "-") + std::to_string(x);
  return s;
}

void warn_if_ambiguous(const CodePlan& plan) {
  if (plan.construction != Construction::cstar) return;
  auto c = cstar_case(plan.virtual_pool, plan.params.k);
  if (c.ambiguous) {
    std::cerr << "warning: C* table rows overlap for n=" << plan.virtual_pool << ", k=" << plan.params.k << ":";
    for (auto* m : c.matches) std::cerr << " [" << m->label << " -> " << m->value << "]";
    std::cerr << "; using " << c.value << "\n";
  }
}

// ---- plan ----

int cmd_plan(const Options& o) {
  auto plan = make_plan(o.params);
  warn_if_ambiguous(plan);
  const auto& p = plan.params;
  std::string frac = fraction_text(plan.row_load, plan.q_partitions);
  std::string base = fraction_text(p.n2 - p.k + 1, p.n2);
  if (o.format == "csv") {
    std::cout << "n1,n2,k,c,regime,construction,q,pool,gain,fraction,baseline\n";
    std::cout << p.n1 << ',' << p.n2 << ',' << p.k << ',' << p.c << ',' << to_string(plan.regime) << ','
              << static_cast<int>(plan.construction) << ',' << plan.q_partitions << ',' << plan.virtual_pool << ','
              << plan.gain << ',' << frac << ',' << base << '\n';
    return exit_ok;
  }
  std::cout << "params " << to_string(p) << "\n"
            << "regime " << to_string(plan.regime) << "\n"
            << "construction " << static_cast<int>(plan.construction) << " " << to_string(plan.construction) << "\n"
            << "Q " << plan.q_partitions << "\n"
            << "pool " << plan.virtual_pool << "\n"
            << "gain " << plan.gain << "\n"
            << "fraction " << frac << "\n"
            << "baseline " << base << "\n";
  return exit_ok;
}

// ---- build / dump ----

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_parameters("cannot write " + path.string());
  out << text;
}

std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

std::vector<FinishedSet> dump_sets(const TieredParams& p) {
  std::vector<FinishedSet> sets;
  if (binomial(p.n1, p.c) > 1000) {
    FinishedSet m;
    for (int s = 1; s <= p.c; ++s) m.push_back(s);
    sets.push_back(m);
    return sets;
  }
  for_each_combination(p.n1, p.c, [&](std::span<const int> c) {
    FinishedSet m;
    for (int x : c) m.push_back(x + 1);
    sets.push_back(m);
  });
  return sets;
}

int cmd_build(const Options& o) {
  if (o.out.empty()) throw invalid_parameters("--out is required");
  auto plan = make_plan(o.params);
  warn_if_ambiguous(plan);
  auto code = instantiate(build_support(plan), o.seed, o.tol);
  fs::path dir(o.out);
  fs::create_directories(dir);
  const auto& p = code.params();
  std::ostringstream params;
  params << "n1=" << p.n1 << "\nn2=" << p.n2 << "\nk=" << p.k << "\nc=" << p.c << "\nseed=" << o.seed
         << "\ntol=" << o.tol << "\n";
  write_file(dir / "params.txt", params.str());
  write_file(dir / "f.support", code.support().f.str());
  write_file(dir / "f.matrix", matrix_text(code.f()));
  if (code.parity()) write_file(dir / "h.matrix", matrix_text(code.parity()->h));
  auto sets = dump_sets(p);
  for (const auto& m : sets) {
    write_file(dir / ("b_" + set_name(m) + ".support"), code.support().b_for(m).str());
    write_file(dir / ("b_" + set_name(m) + ".matrix"), matrix_text(code.b_for(m)));
  }
  std::cout << "wrote " << (sets.size() * 2 + 3 + (code.parity() ? 1 : 0)) << " files to " << dir.string() << "\n";
  return exit_ok;
}

int cmd_dump(const Options& o) {
  auto plan = make_plan(o.params);
  auto ts = build_support(plan);
  auto m = normalize_finished(finished_or_default(o), o.params.n1, o.params.c);
  if (o.what == "support") {
    std::cout << "# F\n" << ts.f << "# B " << set_name(m) << "\n" << ts.b_for(m);
  } else if (o.what == "matrix") {
    auto code = instantiate(ts, o.seed, o.tol);
    std::cout << "# F\n" << matrix_text(code.f()) << "# B " << set_name(m) << "\n" << matrix_text(code.b_for(m));
  } else {
    throw invalid_parameters("--what must be support or matrix");
  }
  return exit_ok;
}

// ---- verify ----

nlohmann::json report_json(const VerificationReport& r) {
  nlohmann::json j;
  j["oracle"] = r.oracle;
  j["checked"] = r.checked;
  j["failed"] = r.failure_count;
  j["passed"] = r.passed();
  j["worst_residual"] = r.worst_residual;
  auto& fl = j["failures"] = nlohmann::json::array();
  for (const auto& f : r.failures) {
    nlohmann::json e{{"M", f.m}, {"I1", f.i1}, {"I2", f.i2}};
    if (!f.subset.empty()) {
      e["T"] = f.subset;
      e["union"] = f.union_size;
      e["bound"] = f.bound;
    } else {
      e["residual"] = f.residual;
      e["rank"] = f.rank_rows;
      e["rank_augmented"] = f.rank_augmented;
    }
    fl.push_back(std::move(e));
  }
  return j;
}

Matrix load_matrix(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw invalid_parameters("cannot read " + path.string());
  return read_matrix(in);
}

FinishedSet parse_set_name(const std::string& s) {
  FinishedSet m;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '-')) m.push_back(std::stoi(part));
  return m;
}

// Span check over the matrices of a build directory.
VerificationReport verify_dump(const fs::path& dir, const Options& o, TieredParams& p) {
  auto kv = read_config((dir / "params.txt").string());
  p = {std::stoi(kv.at("n1")), std::stoi(kv.at("n2")), std::stoi(kv.at("k")), std::stoi(kv.at("c"))};
  validate(p);
  Matrix f = load_matrix(dir / "f.matrix");
  if (f.rows() != p.n1) throw invalid_parameters("f.matrix does not have n1 rows");
  std::vector<std::pair<FinishedSet, fs::path>> sets;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto name = entry.path().filename().string();
    if (name.rfind("b_", 0) == 0 && entry.path().extension() == ".matrix")
      sets.emplace_back(parse_set_name(name.substr(2, name.size() - 2 - 7)), entry.path());
  }
  std::sort(sets.begin(), sets.end());
  if (sets.empty()) throw invalid_parameters("no b_*.matrix files in " + dir.string());
  VerifyOptions opt;
  opt.tol = o.tol;
  VerificationReport rep;
  rep.oracle = "span";
  for (const auto& [m, path] : sets) {
    Matrix b = load_matrix(path);
    if (b.rows() != p.n2 - p.n1 || b.cols() != f.cols()) throw invalid_parameters(path.string() + " has wrong shape");
    Matrix all(f.rows() + b.rows(), f.cols());
    all << f, b;
    Matrix coords;
    Vector e;
    detail::row_space(all, opt.rank_cutoff, coords, e);
    VerificationReport part;
    IndexSet slots;
    auto mm = normalize_finished(m, p.n1, p.c);
    detail::for_each_completion(p, mm, [&](const IndexSet& i1, const IndexSet& i2) {
      slots.clear();
      for (int s : mm) slots.push_back(s - 1);
      for (int s : i1) slots.push_back(s - 1);
      for (int s : i2) slots.push_back(p.n1 + s - 1);
      double res = 0;
      int rr = 0, ra = 0;
      ++part.checked;
      if (!detail::span_member(all, coords, e, slots, opt, res, rr, ra)) {
        ++part.failure_count;
        if (part.failures.size() < opt.keep_failures) part.failures.push_back({mm, i1, i2, res, rr, ra, {}, 0, 0});
      }
      part.worst_residual = std::max(part.worst_residual, res);
    });
    rep.merge(std::move(part), opt.keep_failures);
  }
  return rep;
}

int cmd_verify(const Options& o) {
  std::vector<VerificationReport> reports;
  TieredParams p = o.params;
  if (!o.from.empty()) {
    reports.push_back(verify_dump(o.from, o, p));
  } else {
    auto plan = make_plan(o.params);
    warn_if_ambiguous(plan);
    auto ts = build_support(plan);
    VerifyOptions opt;
    opt.tol = o.tol;
    opt.threads = o.threads;
    detail::check_guard(tiered_tuple_count(p), opt);
    reports.push_back(check_support_condition(ts, opt));
    reports.push_back(check_span_tiered(instantiate(ts, o.seed, o.tol), opt));
  }
  for (const auto& r : reports) std::cout << r.to_text();
  const auto& span = reports.back();
  bool ok = span.passed();
  std::cout << (ok ? "PASS " : "FAIL ") << to_string(p) << " " << span.checked << " tuples checked\n";
  if (!o.report.empty()) {
    nlohmann::json j;
    j["params"] = {{"n1", p.n1}, {"n2", p.n2}, {"k", p.k}, {"c", p.c}};
    j["seed"] = o.seed;
    j["passed"] = ok;
    for (const auto& r : reports) j["reports"].push_back(report_json(r));
    write_file(o.report, j.dump(2) + "\n");
  }
  return ok ? exit_ok : exit_verify;
}

// ---- simulate / sweep ----

SimResult simulate_one(const Options& o, const TieredParams& p) {
  SimConfig cfg;
  cfg.params = p;
  cfg.model = make_model(o);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  return monte_carlo(cfg);
}

std::ostream& output_stream(const Options& o, std::ofstream& file) {
  if (o.out.empty() || o.out == "-") return std::cout;
  file.open(o.out, std::ios::binary);
  if (!file) throw invalid_parameters("cannot write " + o.out);
  return file;
}

int cmd_simulate(const Options& o) {
  auto r = simulate_one(o, o.params);
  std::ofstream file;
  auto& os = output_stream(o, file);
  os << csv_header << '\n';
  write_csv_row(os, r, true);
  write_csv_row(os, r, false);
  return exit_ok;
}

struct Point {
  std::string label;
  double sct, suc;
  bool gradient;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string svg_scatter(const std::vector<Point>& pts, const std::string& title) {
  const double w = 800, h = 600, left = 90, right = 30, top = 50, bottom = 70;
  double x0 = pts.front().sct, x1 = x0, y0 = pts.front().suc, y1 = y0;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.sct);
    x1 = std::max(x1, p.sct);
    y0 = std::min(y0, p.suc);
    y1 = std::max(y1, p.suc);
  }
  double padx = (x1 - x0) * 0.08 + 1e-9, pady = (y1 - y0) * 0.08 + 1e-9;
  x0 -= padx, x1 += padx, y0 -= pady, y1 += pady;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (w - left - right); };
  auto sy = [&](double y) { return h - bottom - (y - y0) / (y1 - y0) * (h - top - bottom); };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
    << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n"
    << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" << title
    << "</text>\n"
    << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right << "\" y2=\"" << h - bottom
    << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << h - bottom
    << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    s << "<text x=\"" << fmt(sx(xv)) << "\" y=\"" << h - bottom + 20
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(xv) << "</text>\n";
    s << "<text x=\"" << left - 8 << "\" y=\"" << fmt(sy(yv) + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(yv) << "</text>\n";
  }
  s << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << h - 20
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">mean service completion time</text>\n"
    << "<text x=\"20\" y=\"" << (top + h - bottom) / 2 << "\" transform=\"rotate(-90 20 " << (top + h - bottom) / 2
    << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">mean server utilization cost</text>\n";
  for (const auto& p : pts) {
    double cx = sx(p.sct), cy = sy(p.suc);
    if (p.gradient)
      s << "<rect x=\"" << fmt(cx - 6) << "\" y=\"" << fmt(cy - 6)
        << "\" width=\"12\" height=\"12\" fill=\"#d62728\"/>\n";
    else
      s << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"5\" fill=\"#1f77b4\"/>\n";
    s << "<text x=\"" << fmt(cx + 8) << "\" y=\"" << fmt(cy - 8) << "\" font-family=\"sans-serif\" font-size=\"11\">"
      << p.label << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

int cmd_sweep(const Options& o) {
  const auto& base = o.params;
  std::vector<TieredParams> grid;
  if (o.vary == "n1") {
    if (base.n2 < base.k) throw invalid_parameters("n2 < k");
    for (int n1 = base.k; n1 <= base.n2; ++n1) grid.push_back({n1, base.n2, base.k, base.c});
  } else if (o.vary == "c") {
    for (int c = 1; c < base.k; ++c) grid.push_back({base.n1, base.n2, base.k, c});
  } else {
    throw invalid_parameters("--vary must be n1 or c");
  }
  for (const auto& p : grid) validate(p);
  std::ofstream file;
  auto& os = output_stream(o, file);
  os << csv_header << '\n';
  std::vector<Point> pts;
  std::optional<SimResult> first;
  for (const auto& p : grid) {
    auto r = simulate_one(o, p);
    write_csv_row(os, r, true);
    pts.push_back({(o.vary == "n1" ? "n1=" + std::to_string(p.n1) : "c=" + std::to_string(p.c)), r.tiered.mean_sct,
                   r.tiered.mean_suc, false});
    if (!first) first = std::move(r);
  }
  write_csv_row(os, *first, false);
  pts.push_back({"gradient", first->gradient.mean_sct, first->gradient.mean_suc, true});
  if (!o.svg.empty()) {
    std::string title = "n2=" + std::to_string(base.n2) + ", k=" + std::to_string(base.k) + ", model " + o.model +
                        (o.vary == "n1" ? ", c=" + std::to_string(base.c) : ", n1=" + std::to_string(base.n1));
    write_file(o.svg, svg_scatter(pts, title));
  }
  return exit_ok;
}

// Config values, then TGC_SEED, go in front of the user's flags; the last occurrence wins.
std::vector<std::string> expand_args(int argc, char** argv, const std::map<std::string, std::vector<std::string>>& known) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (args.empty() || !known.count(args[0])) return args;
  const auto& accepted = known.at(args[0]);
  auto accepts = [&](const std::string& key) { return std::find(accepted.begin(), accepted.end(), key) != accepted.end(); };
  std::vector<std::string> injected;
  if (!config.empty()) {
    for (const auto& [key, value] : read_config(config)) {
      bool anywhere = false;
      for (const auto& [sub, names] : known) anywhere = anywhere || std::find(names.begin(), names.end(), key) != names.end();
      if (!anywhere) throw invalid_parameters("config: unknown key '" + key + "'");
      if (!accepts(key)) continue;
      if (key == "literal-mu") {
        if (value == "true" || value == "1") injected.push_back("--literal-mu");
        continue;
      }
      injected.push_back("--" + key);
      injected.push_back(value);
    }
  }
  if (const char* env = std::getenv("TGC_SEED"); env && *env && accepts("seed")) {
    injected.push_back("--seed");
    injected.push_back(env);
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Tiered gradient codes: planning, construction, verification and simulation"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--config", "key=value file with default flag values");

  auto add_params = [&](CLI::App* s, bool need_n1 = true) {
    auto* n1 = s->add_option("--n1", o.params.n1, "servers launched in phase one");
    if (need_n1) n1->required();
    s->add_option("--n2", o.params.n2, "total servers")->required();
    s->add_option("--k", o.params.k, "completions needed")->required();
    s->add_option("--c", o.params.c, "completions that launch phase two")->default_val(1);
  };
  auto add_sim = [&](CLI::App* s) {
    s->add_option("--model", o.model, "se1, se2 or pa")->default_val("se2");
    s->add_option("--trials", o.trials)->default_val(10000);
    s->add_option("--seed", o.seed)->default_val(42);
    s->add_option("--threads", o.threads)->default_val(1);
    s->add_flag("--literal-mu", o.literal_mu, "exponential rate = mu_factor * fraction");
    s->add_option("--mu-factor", o.mu_factor)->default_val(0.1);
    s->add_option("--shift-factor", o.shift_factor)->default_val(5);
    s->add_option("--fixed-shift", o.fixed_shift)->default_val(100);
    s->add_option("--alpha", o.alpha)->default_val(1.5);
    s->add_option("--xm-factor", o.xm_factor)->default_val(1);
    s->add_option("--out", o.out, "CSV output path (default stdout)");
  };

  auto* plan = app.add_subcommand("plan", "show the plan and per-server computation");
  add_params(plan);
  plan->add_option("--format", o.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  auto* build = app.add_subcommand("build", "build and instantiate a code, dump its matrices");
  add_params(build);
  build->add_option("--seed", o.seed)->default_val(42);
  build->add_option("--tol", o.tol)->default_val(1e-8);
  build->add_option("--out", o.out, "output directory")->required();

  auto* verify = app.add_subcommand("verify", "run the support and span oracles");
  verify->add_option("--n1", o.params.n1);
  verify->add_option("--n2", o.params.n2);
  verify->add_option("--k", o.params.k);
  verify->add_option("--c", o.params.c)->default_val(1);
  verify->add_option("--seed", o.seed)->default_val(42);
  verify->add_option("--tol", o.tol)->default_val(1e-8);
  verify->add_option("--threads", o.threads)->default_val(1);
  verify->add_option("--from", o.from, "check the matrices of a build directory instead");
  verify->add_option("--report", o.report, "write a JSON summary");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo comparison with the plain gradient code");
  add_params(simulate);
  add_sim(simulate);

  auto* sweep = app.add_subcommand("sweep", "simulate over n1 or c");
  add_params(sweep, false);
  add_sim(sweep);
  sweep->add_option("--vary", o.vary, "n1 or c")->check(CLI::IsMember({"n1", "c"}));
  sweep->add_option("--svg", o.svg, "write an SVG scatter of SUC against SCT");

  auto* dump = app.add_subcommand("dump", "print support or real matrices");
  add_params(dump);
  dump->add_option("--what", o.what, "support or matrix")->check(CLI::IsMember({"support", "matrix"}));
  dump->add_option("--finished", o.finished, "finished phase-one servers (default 1..c)")->delimiter(',');
  dump->add_option("--seed", o.seed)->default_val(42);
  dump->add_option("--tol", o.tol)->default_val(1e-8);

  std::map<std::string, std::vector<std::string>> known;
  for (auto* sub : app.get_subcommands({})) {
    auto& names = known[sub->get_name()];
    for (const auto* opt : sub->get_options())
      for (const auto& ln : opt->get_lnames()) names.push_back(ln);
  }

  try {
    auto args = expand_args(argc, argv, known);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (*sweep && o.vary == "c" && o.params.n1 == 0) throw invalid_parameters("--vary c needs --n1");
    if (*sweep && o.vary == "n1") o.params.n1 = o.params.k;
    if (*verify && o.from.empty() && (o.params.n1 == 0 || o.params.n2 == 0 || o.params.k == 0))
      throw invalid_parameters("verify needs --n1, --n2 and --k or --from");
    if (*plan) return cmd_plan(o);
    if (*build) return cmd_build(o);
    if (*verify) return cmd_verify(o);
    if (*simulate) return cmd_simulate(o);
    if (*sweep) return cmd_sweep(o);
    if (*dump) return cmd_dump(o);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_invalid;
  } catch (const guard_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const invalid_parameters& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_verify;
  }
  return exit_ok;
}
