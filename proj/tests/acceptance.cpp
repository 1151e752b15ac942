// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gp_oracle.hpp"
#include "swarmbo/acquisition.hpp"
#include "swarmbo/cli.hpp"
#include "swarmbo/error.hpp"
#include "swarmbo/gp.hpp"
#include "swarmbo/io.hpp"
#include "swarmbo/local_ascent.hpp"
#include "swarmbo/pso.hpp"
#include "temp_dir.hpp"

using namespace swarmbo;
using nlohmann::json;

namespace {

// Tolerances and limits
constexpr double kOracleAbsTol = 1e-8;
constexpr double kMatern1 = 0.52399;          // Matern-5/2 at r^2 = 1, theta0 = 1
constexpr double kMaternTol = 1e-5;
constexpr double kSphereTarget = -1e-3;
constexpr double kGridSlack = 1e-3;
constexpr double kBraninOptimum = -0.397887;  // negated Branin maximum
constexpr double kBraninGap = 0.15;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0: no runtime bound
  std::function<Verdict()> check;
};

std::string fmt(double v) { return io::format_double(v); }

int invoke_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "swarmbo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

std::string write_json_file(const std::filesystem::path& p, const json& j) {
  std::ofstream(p) << j.dump(2);
  return p.string();
}

Verdict gp_oracle_equivalence() {
  Rng rng(20240601);
  double worst = 0.0;
  int instances = 0;
  for (; instances < 50; ++instances) {
    const std::size_t d = 1 + rng.next_u64() % 3;
    const std::size_t t = 1 + rng.next_u64() % 8;
    const SearchSpace unit = box_space(d, 0.0, 1.0);
    std::vector<PointVec> xs(t, PointVec(d));
    for (auto& x : xs)
      for (double& v : x) v = rng.uniform();
    std::vector<double> ys(t);
    for (double& v : ys) v = rng.uniform(-5, 5);
    std::vector<double> ls(d);
    for (double& l : ls) l = std::exp(rng.uniform(std::log(0.05), std::log(2.0)));
    const double theta0 = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    const double noise = std::exp(rng.uniform(std::log(1e-6), std::log(1.0)));
    const GpModel m = fit_model(unit, xs, ys, KernelParams{theta0, ls, noise});
    const Eigen::VectorXd y = m.train_y();
    for (int q = 0; q < 10; ++q) {
      PointVec x(d);
      for (double& v : x) v = rng.uniform();
      const auto ref = oracle::posterior(xs, y, theta0, ls, noise, x);
      const Posterior got = predict_standardized(m, x);
      worst = std::max({worst, std::abs(got.mean - ref.mean), std::abs(got.var - std::max(0.0, ref.var))});
    }
  }
  return {worst <= kOracleAbsTol, std::to_string(instances) + " instances, max abs error " + fmt(worst)};
}

Verdict kernel_ground_truth() {
  const KernelParams unit{1.0, {1.0, 1.0}, 0.0};
  const double at1 = matern52(PointVec{0.0, 0.0}, PointVec{0.6, 0.8}, unit);
  bool diag = true;
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const double theta0 = std::exp(rng.uniform(-5, 5));
    const PointVec a{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    diag = diag && matern52(a, a, KernelParams{theta0, {rng.uniform(0.01, 10), rng.uniform(0.01, 10)}, 0.0}) == theta0;
  }
  const bool ok = std::abs(at1 - kMatern1) <= kMaternTol && diag;
  return {ok, "k(r2=1) = " + fmt(at1) + ", k(a,a) == theta0 for 100 draws: " + (diag ? "yes" : "no")};
}

Verdict pso_correctness() {
  const SearchSpace space = box_space(5, -5.0, 5.0);
  PsoParams p;
  p.population = 40;
  p.max_iters = 200;
  const Fitness f = [](const PointVec& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return -s;
  };
  int hits = 0;
  bool monotone = true;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    const PsoResult r = run_pso(space, p, f, rng);
    if (r.best_fitness >= kSphereTarget) ++hits;
    worst = std::min(worst, r.best_fitness);
    monotone = monotone && std::is_sorted(r.trace.begin(), r.trace.end());
  }
  return {hits >= 9 && monotone, std::to_string(hits) + "/10 seeds >= -1e-3 (worst " + fmt(worst) +
                                     "), traces non-decreasing: " + (monotone ? "yes" : "no")};
}

Verdict stability_gate() {
  const auto direct = [](double w, double c1, double c2) {
    return -1.0 < w && w < 1.0 && 0.0 < c1 + c2 && c1 + c2 < 4.0 * (1.0 + w);
  };
  const auto accepted = [](double w, double c1, double c2) {
    PsoParams p;
    p.omega = w;
    p.c1 = c1;
    p.c2 = c2;
    try {
      check_stability(p);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  const bool reference = accepted(0.8, 1.85, 2.0);
  Rng rng(4);
  int outside = 0, inside = 0, mismatches = 0;
  while (outside < 1000) {
    const double w = rng.uniform(-3, 3), c1 = rng.uniform(-4, 10), c2 = rng.uniform(-4, 10);
    const bool truth = direct(w, c1, c2);
    (truth ? inside : outside)++;
    if (accepted(w, c1, c2) != truth) ++mismatches;
  }
  return {reference && mismatches == 0, "(0.8, 1.85, 2) accepted: " + std::string(reference ? "yes" : "no") + "; " +
                                        std::to_string(outside) + " outside / " + std::to_string(inside) +
                                        " inside triples, " + std::to_string(mismatches) + " mismatches"};
}

Verdict acquisition_quality() {
  const SearchSpace space = box_space(2, 0.0, 1.0);
  const int surfaces = 20;
  int beats_local = 0, near_grid = 0;
  Rng design(99);
  for (int s = 0; s < surfaces; ++s) {
    // random smooth response observed on a 10-point design
    double a[3], w[3][2], b[3];
    for (int k = 0; k < 3; ++k) {
      a[k] = design.uniform(0.5, 2.0);
      w[k][0] = design.uniform(-8, 8);
      w[k][1] = design.uniform(-8, 8);
      b[k] = design.uniform(0, 6.3);
    }
    std::vector<PointVec> xs;
    std::vector<double> ys;
    for (int i = 0; i < 10; ++i) {
      xs.push_back({design.uniform(), design.uniform()});
      double y = 0.0;
      for (int k = 0; k < 3; ++k) y += a[k] * std::sin(w[k][0] * xs.back()[0] + w[k][1] * xs.back()[1] + b[k]);
      ys.push_back(y);
    }
    Rng fit_rng(derive_seed(s, "gpfit"));
    const GpModel model = fit_model(space, xs, ys, fit_hyperparams(space, xs, ys, HyperfitOptions{}, fit_rng));
    const AcquisitionSpec ucb_spec{AcquisitionKind::UCB, 2.0, 0.01, 0.0};
    const Fitness acq = [&](const PointVec& x) { return evaluate(ucb_spec, model, x); };

    Rng pso_rng(derive_seed(s, "pso"));
    const double pso_value = run_pso(space, PsoParams{}, acq, pso_rng).best_fitness;
    Rng local_rng(derive_seed(s, "local"));
    const double local_value = bench::maximize_local(space, acq, {}, local_rng).best_value;
    double grid = -1e300;
    for (int i = 0; i < 100; ++i)
      for (int j = 0; j < 100; ++j) grid = std::max(grid, acq({i / 99.0, j / 99.0}));

    if (pso_value >= local_value) ++beats_local;
    if (pso_value >= grid - kGridSlack) ++near_grid;
  }
  const bool ok = beats_local * 10 >= surfaces * 9 && near_grid * 10 >= surfaces * 8;
  return {ok, "PSO >= local ascent on " + std::to_string(beats_local) + "/20, >= grid - 1e-3 on " +
                  std::to_string(near_grid) + "/20"};
}

Verdict end_to_end(const TempDir& dir) {
  const json cfg = {
      {"objective", {{"name", "branin"}, {"negate", true}}},
      {"acquisition", {{"kind", "ucb"}, {"gamma", 2.0}}},
      {"experiment",
       {{"init_count", 5},
        {"iterations", 30},
        {"seeds", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
        {"methods", json::array({{{"kind", "pso_bo"}}, {{"kind", "local_bo"}}, {{"kind", "random_search"}}})}}}};
  const auto out = dir / "compare";
  const int code = invoke_cli({"compare", "--config", write_json_file(dir / "compare.json", cfg), "--output-dir",
                               out.string(), "--jobs", "1"});
  if (code != 0) return {false, "compare exited with " + std::to_string(code)};
  const auto rep = io::read_report_json(out / "report.json");
  double pso = 0, local = 0, random = 0;
  for (const auto& m : rep.methods) {
    if (m.label == "pso_bo") pso = m.stats.ave;
    if (m.label == "local_bo") local = m.stats.ave;
    if (m.label == "random_search") random = m.stats.ave;
  }
  const bool ok = pso >= random && pso >= local && std::abs(pso - kBraninOptimum) <= kBraninGap;
  return {ok, "AVE pso_bo " + fmt(pso) + ", local_bo " + fmt(local) + ", random_search " + fmt(random)};
}

Verdict omega_sweep_shape(const TempDir& dir) {
  const json cfg = {{"objective", {{"name", "branin"}}},
                    {"experiment", {{"init_count", 5}, {"iterations", 30}, {"seeds", {1, 2, 3}}}}};
  const auto out = dir / "sweep";
  const int code =
      invoke_cli({"sweep", "--config", write_json_file(dir / "sweep.json", cfg), "--output-dir", out.string()});
  if (code != 0) return {false, "sweep exited with " + std::to_string(code)};
  const auto rows = io::read_sweep_csv(out / "sweep.csv");
  const bool finite = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return std::isfinite(r.ave_best); });
  return {rows.size() == 9 && finite, std::to_string(rows.size()) + " rows, all finite: " + (finite ? "yes" : "no")};
}

Verdict determinism(const TempDir& dir) {
  const json cfg = {{"objective", {{"name", "hartmann3"}}},
                    {"experiment", {{"init_count", 5}, {"iterations", 10}, {"seed", 31}}}};
  const auto path = write_json_file(dir / "run.json", cfg);
  const auto a = dir / "run_a", b = dir / "run_b";
  const int ca = invoke_cli({"run", "--config", path, "--output-dir", a.string(), "--jobs", "1"});
  const int cb = invoke_cli({"run", "--config", path, "--output-dir", b.string(), "--jobs", "4"});
  if (ca != 0 || cb != 0) return {false, "run exited with " + std::to_string(ca) + "/" + std::to_string(cb)};
  json ja = io::read_json(a / "result.json"), jb = io::read_json(b / "result.json");
  ja.erase("metadata");
  jb.erase("metadata");
  const bool same = ja.dump() == jb.dump();
  return {same, std::string("result.json without metadata identical for --jobs 1 and 4: ") + (same ? "yes" : "no")};
}

Verdict budget_parity(const TempDir& dir) {
  // the end-to-end comparison above plus a grid-search comparison
  const json cfg = {{"objective", {{"name", "branin"}}},
                    {"experiment",
                     {{"init_count", 4},
                      {"iterations", 12},
                      {"seeds", {1, 2, 3}},
                      {"methods", json::array({{{"kind", "pso_bo"}},
                                               {{"kind", "local_bo"}},
                                               {{"kind", "random_search"}},
                                               {{"kind", "grid_search"}, {"points_per_dim", 4}}})}}}};
  const auto out = dir / "parity";
  const int code =
      invoke_cli({"compare", "--config", write_json_file(dir / "parity.json", cfg), "--output-dir", out.string()});
  if (code != 0) return {false, "compare exited with " + std::to_string(code)};
  bool ok = true;
  std::string detail;
  for (const auto& sub : {dir / "compare", out}) {
    const auto rep = io::read_report_json(sub / "report.json");
    ok = ok && rep.budget_parity;
    for (const auto& m : rep.methods) {
      ok = ok && m.missing.empty();
      for (std::size_t e : m.evaluations) ok = ok && e == static_cast<std::size_t>(rep.budget);
    }
    detail += std::to_string(rep.methods.size()) + " methods x " + std::to_string(rep.seeds.size()) +
              " seeds at budget " + std::to_string(rep.budget) + (rep.budget_parity ? " (parity)" : " (NO parity)") + "; ";
  }
  return {ok, detail.substr(0, detail.size() - 2)};
}

}  // namespace

int main() {
  TempDir dir("swarmbo_acceptance");
  const std::vector<Criterion> criteria{
      {1, "GP oracle equivalence", 5, gp_oracle_equivalence},
      {2, "Kernel ground truth", 0, kernel_ground_truth},
      {3, "PSO correctness", 10, pso_correctness},
      {4, "Stability gate", 0, stability_gate},
      {5, "Acquisition maximization quality", 60, acquisition_quality},
      {6, "End-to-end dominance on Branin", 120, [&] { return end_to_end(dir); }},
      {7, "Omega sweep shape", 0, [&] { return omega_sweep_shape(dir); }},
      {8, "Determinism", 0, [&] { return determinism(dir); }},
      {9, "Budget parity", 0, [&] { return budget_parity(dir); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s <= 0 || secs < c.limit_s;
    const bool pass = v.pass && in_time;
    if (!pass) ++failed;
    char timing[64];
    if (c.limit_s > 0)
      std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", secs, c.limit_s);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::printf("[%s] %d. %s: %s (%s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), v.detail.c_str(), timing);
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%zu criteria passed, report complete\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
