#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "swarmbo/baselines.hpp"
#include "swarmbo/error.hpp"
#include "swarmbo/experiment.hpp"
#include "swarmbo/local_ascent.hpp"
#include "swarmbo/objectives.hpp"

using namespace swarmbo;
using namespace swarmbo::bench;

namespace {

// Reference optima evaluated independently with mpmath at 30 digits.
constexpr double kBraninMin = 0.397887357729738;
constexpr double kHartmann3Min = -3.862779787332663;
constexpr double kStyblinskiArg = -2.9035340286202334;
constexpr double kStyblinskiMinPerDim = -39.16616570377141;

ExperimentSetup branin_setup(int init, int iters, std::vector<std::uint64_t> seeds) {
  ExperimentSetup s;
  s.objective = {ObjectiveName::Branin, 2, 0.0, true};
  s.bo.space = canonical_space(s.objective);
  s.bo.init_count = init;
  s.bo.max_iterations = iters;
  s.seeds = std::move(seeds);
  return s;
}

}  // namespace

TEST_CASE("objective names") {
  for (auto n : {ObjectiveName::Sphere, ObjectiveName::Rastrigin, ObjectiveName::Branin,
                 ObjectiveName::Hartmann3, ObjectiveName::StyblinskiTang})
    CHECK(parse_objective_name(to_string(n)) == n);
  CHECK_THROWS_AS(parse_objective_name("ackley"), Error);
}

TEST_CASE("objectives at their known optima") {
  Rng rng(0);
  CHECK(eval_objective({ObjectiveName::Sphere, 3, 0.0, true}, {0, 0, 0}, rng) == 0.0);
  CHECK(eval_objective({ObjectiveName::Rastrigin, 4, 0.0, false}, {0, 0, 0, 0}, rng) == 0.0);

  const ObjectiveSpec branin{ObjectiveName::Branin, 2, 0.0, false};
  CHECK(std::abs(eval_objective(branin, {std::numbers::pi, 2.275}, rng) - kBraninMin) <= 1e-4);
  CHECK(std::abs(eval_objective(branin, {-std::numbers::pi, 12.275}, rng) - kBraninMin) <= 1e-4);
  CHECK(std::abs(eval_objective(branin, {3 * std::numbers::pi, 2.475}, rng) - kBraninMin) <= 1e-4);
  CHECK(eval_objective({ObjectiveName::Branin, 2, 0.0, true}, {std::numbers::pi, 2.275}, rng) ==
        doctest::Approx(-kBraninMin).epsilon(1e-12));

  const ObjectiveSpec h3{ObjectiveName::Hartmann3, 3, 0.0, false};
  CHECK(std::abs(eval_objective(h3, {0.114614, 0.555649, 0.852547}, rng) - kHartmann3Min) <= 1e-4);

  for (int d : {1, 2, 5}) {
    const ObjectiveSpec st{ObjectiveName::StyblinskiTang, d, 0.0, false};
    CHECK(std::abs(eval_objective(st, PointVec(d, kStyblinskiArg), rng) - kStyblinskiMinPerDim * d) <= 1e-4);
  }

  for (auto n : {ObjectiveName::Sphere, ObjectiveName::Rastrigin, ObjectiveName::Branin,
                 ObjectiveName::Hartmann3, ObjectiveName::StyblinskiTang}) {
    const ObjectiveSpec spec{n, n == ObjectiveName::Hartmann3 ? 3 : 2, 0.0, false};
    const KnownOptimum opt = known_minimum(spec);
    CHECK(std::abs(raw_value(n, opt.argmin) - opt.value) <= 1e-4);
    CHECK(optimum_for_maximization({n, spec.dims, 0.0, true}) == -opt.value);
    // the known optimum is not beaten anywhere on a coarse scan
    const SearchSpace sp = canonical_space(spec);
    Rng scan(1);
    for (int i = 0; i < 2000; ++i) CHECK(raw_value(n, sample_uniform(sp, scan)) >= opt.value - 1e-9);
  }
}

TEST_CASE("objective validation") {
  CHECK_THROWS_AS(validate_objective({ObjectiveName::Branin, 3, 0.0, true}), Error);
  CHECK_THROWS_AS(validate_objective({ObjectiveName::Hartmann3, 2, 0.0, true}), Error);
  CHECK_THROWS_AS(validate_objective({ObjectiveName::Sphere, 0, 0.0, true}), Error);
  CHECK_THROWS_AS(validate_objective({ObjectiveName::Sphere, 2, -1.0, true}), Error);
  Rng rng(0);
  CHECK_THROWS_AS(eval_objective({ObjectiveName::Sphere, 2, 0.0, true}, {0.0}, rng), Error);
  const SearchSpace b = canonical_space({ObjectiveName::Branin, 2, 0.0, true});
  CHECK(b[0].lower == -5);
  CHECK(b[0].upper == 10);
  CHECK(b[1].lower == 0);
  CHECK(b[1].upper == 15);
}

TEST_CASE("noisy objectives") {
  const ObjectiveSpec spec{ObjectiveName::Sphere, 2, 0.5, true};
  Rng rng(42);
  const PointVec x{1.0, -2.0};
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double e = eval_objective(spec, x, rng) - (-5.0);
    sum += e;
    sq += e * e;
  }
  const double mean = sum / n, var = sq / n - mean * mean;
  CHECK(std::abs(mean) <= 4 * 0.5 / std::sqrt(n));
  CHECK(var == doctest::Approx(0.25).epsilon(0.05));

  const Objective a = make_objective(spec, 9), b = make_objective(spec, 9);
  for (int i = 0; i < 10; ++i) CHECK(a(x) == b(x));
  const Objective quiet = make_objective({ObjectiveName::Sphere, 2, 0.0, true}, 9);
  CHECK(quiet(x) == -5.0);
}

TEST_CASE("local ascent") {
  const SearchSpace space{{{"a", DimKind::Real, -2, 2}, {"b", DimKind::Real, 0, 10}}};
  const Fitness quad = [](const PointVec& x) {
    return -(x[0] - 0.37) * (x[0] - 0.37) - 0.05 * (x[1] - 6.2) * (x[1] - 6.2);
  };
  Rng rng(3);
  const LocalAscentResult r = maximize_local(space, quad, {}, rng);
  CHECK(std::abs(r.best_position[0] - 0.37) <= 1e-4);
  CHECK(std::abs(r.best_position[1] - 6.2) <= 1e-4);
  CHECK(r.evaluations > 0);

  // optimum on the boundary
  const Fitness ramp = [](const PointVec& x) { return x[0] - 0.1 * x[1]; };
  const LocalAscentResult edge = maximize_local(space, ramp, {}, rng);
  CHECK(edge.best_position[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(edge.best_position[1] == doctest::Approx(0.0).epsilon(1e-9));

  LocalAscentParams bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(validate_local_params(bad), Error);
  CHECK_THROWS_AS(maximize_local(space, quad, bad, rng), Error);
  try {
    validate_local_params(bad);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidMethodParams);
  }

  Rng r1(8), r2(8);
  CHECK(maximize_local(space, quad, {}, r1).best_position == maximize_local(space, quad, {}, r2).best_position);
}

TEST_CASE("run_local_bo is deterministic and budgeted") {
  BoConfig c;
  c.space = box_space(1, 0.0, 1.0);
  c.init_count = 3;
  c.max_iterations = 4;
  c.seed = 5;
  int calls = 0;
  const Objective f = [&](const PointVec& x) {
    ++calls;
    return std::sin(7 * x[0]);
  };
  const BoResult a = run_local_bo(c, f);
  CHECK(calls == 7);
  const BoResult b = run_local_bo(c, f);
  CHECK(a.best_point == b.best_point);
  CHECK(a.incumbent_trace == b.incumbent_trace);
}

TEST_CASE("random search") {
  const SearchSpace sp = box_space(2, -5, 5);
  Rng rng(1);
  int calls = 0;
  PointVec seen;
  const SearchResult one = run_random_search(
      sp, [&](const PointVec& x) { ++calls; seen = x; return x[0] + x[1]; }, 1, rng);
  CHECK(calls == 1);
  CHECK(one.best_point == seen);
  CHECK(one.best_value == seen[0] + seen[1]);

  const SearchResult c = run_random_search(sp, [](const PointVec&) { return 3.5; }, 50, rng);
  CHECK(c.best_value == 3.5);
  CHECK(c.evaluations == 50);
  CHECK(c.incumbent_trace.size() == 50);

  int good = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng r(seed);
    const SearchResult s = run_random_search(
        sp, [](const PointVec& x) { return -(x[0] * x[0] + x[1] * x[1]); }, 10000, r);
    CHECK(std::is_sorted(s.incumbent_trace.begin(), s.incumbent_trace.end()));
    if (s.best_value >= -0.05) ++good;
  }
  CHECK(good >= 9);
  CHECK_THROWS_AS(run_random_search(sp, [](const PointVec&) { return 0.0; }, 0, rng), Error);
}

TEST_CASE("grid search") {
  std::vector<PointVec> seen;
  const auto record = [&](const PointVec& x) { seen.push_back(x); return -std::abs(x[0] - 0.4); };

  const SearchResult r = run_grid_search(box_space(1, 0.0, 1.0), record, 3);
  CHECK(seen == std::vector<PointVec>{{0.0}, {0.5}, {1.0}});
  CHECK(r.best_point == PointVec{0.5});
  CHECK(r.evaluations == 3);

  for (int ppd : {3, 7, 50}) {
    seen.clear();
    run_grid_search(SearchSpace{{{"k", DimKind::Integer, 2, 4}}}, record, ppd);
    std::set<double> values;
    for (const auto& x : seen) values.insert(x[0]);
    CHECK(values == std::set<double>{2.0, 3.0, 4.0});
  }
  CHECK(grid_size(SearchSpace{{{"k", DimKind::Integer, 2, 4}}}, 50) == 3);
  seen.clear();
  run_grid_search(SearchSpace{{{"k", DimKind::Integer, 2, 4}}}, record, 2);
  CHECK(seen == std::vector<PointVec>{{2.0}, {4.0}});

  const SearchSpace mixed{{{"k", DimKind::Integer, 1, 100}, {"x", DimKind::Real, 0, 1}}};
  CHECK(grid_size(mixed, 5) == 25);
  for (const auto& axis : grid_axes(mixed, 5)) CHECK(axis.size() == 5);

  try {
    grid_size(box_space(7, 0, 1), 10);
    FAIL("expected GridTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridTooLarge);
  }
  CHECK_THROWS_AS(run_grid_search(box_space(1, 0, 1), record, 1), Error);
}

TEST_CASE("summarize") {
  const std::vector<double> same{2.5, 2.5, 2.5};
  const Aggregate a = summarize(same);
  CHECK(a.max == 2.5);
  CHECK(a.min == 2.5);
  CHECK(a.ave == 2.5);

  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> v(1 + rng.next_u64() % 12);
    for (double& x : v) x = rng.uniform(-1e3, 1e3);
    const Aggregate s = summarize(v);
    CHECK(s.min <= s.ave);
    CHECK(s.ave <= s.max);
    CHECK(s.max == *std::max_element(v.begin(), v.end()));
    CHECK(s.min == *std::min_element(v.begin(), v.end()));
  }
  CHECK(std::isnan(summarize(std::vector<double>{}).ave));
}

TEST_CASE("parallel_for covers every index once") {
  for (int jobs : {1, 2, 5}) {
    std::vector<int> hits(37, 0);
    parallel_for(hits.size(), jobs, [&](std::size_t i) { ++hits[i]; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  CHECK_THROWS(parallel_for(4, 2, [](std::size_t i) {
    if (i == 2) throw std::runtime_error("x");
  }));
}

TEST_CASE("run_experiment") {
  ExperimentSetup s = branin_setup(3, 2, {1, 2, 3});
  MethodSpec pso{MethodKind::PsoBo};
  pso.pso.population = 10;
  pso.pso.max_iters = 20;
  MethodSpec local{MethodKind::LocalBo};
  local.local.restarts = 2;
  MethodSpec random{MethodKind::RandomSearch};
  const std::vector<MethodSpec> methods{pso, local, random};

  const ExperimentReport rep = run_experiment(methods, s);
  CHECK(rep.budget == 5);
  CHECK(rep.budget_parity);
  REQUIRE(rep.methods.size() == 3);
  CHECK(rep.methods[0].label == "pso_bo");
  for (const auto& m : rep.methods) {
    CHECK(m.missing.empty());
    CHECK(m.seeds == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(m.evaluations == std::vector<std::size_t>(3, 5));
    CHECK(m.stats.min <= m.stats.ave);
    CHECK(m.stats.ave <= m.stats.max);
    const Aggregate again = summarize(m.per_seed_best);
    CHECK(again.max == m.stats.max);
    CHECK(again.min == m.stats.min);
    CHECK(again.ave == m.stats.ave);
    for (std::size_t i = 0; i < m.traces.size(); ++i) {
      CHECK(m.traces[i].size() == 5);
      CHECK(m.traces[i].back() == m.per_seed_best[i]);
    }
  }

  s.jobs = 3;
  const ExperimentReport par = run_experiment(methods, s);
  for (std::size_t i = 0; i < 3; ++i) CHECK(par.methods[i].per_seed_best == rep.methods[i].per_seed_best);

  SUBCASE("grid parity") {
    ExperimentSetup g = branin_setup(4, 5, {1, 2});
    MethodSpec grid{MethodKind::GridSearch};
    grid.points_per_dim = 3;
    const ExperimentReport gr = run_experiment({random, grid}, g);
    CHECK(gr.budget_parity);
    CHECK(gr.methods[1].evaluations == std::vector<std::size_t>(2, 9));
    grid.points_per_dim = 4;
    CHECK_THROWS_AS(run_experiment({random, grid}, g), Error);
  }

  SUBCASE("failed cells are reported missing") {
    ExperimentSetup bad = branin_setup(3, 2, {1, 2});
    bad.bo.space = box_space(3, 0.0, 1.0);
    const ExperimentReport r = run_experiment({random}, bad);
    CHECK(r.methods[0].missing == std::vector<std::uint64_t>{1, 2});
    CHECK(r.methods[0].per_seed_best.empty());
    CHECK(std::isnan(r.methods[0].stats.ave));
  }

  SUBCASE("preconditions") {
    ExperimentSetup one = branin_setup(3, 2, {1});
    CHECK_THROWS_AS(run_experiment(methods, one), Error);
    CHECK_THROWS_AS(run_experiment({}, s), Error);
  }
}

TEST_CASE("omega_sweep") {
  ExperimentSetup s = branin_setup(3, 2, {1, 2});
  s.bo.pso.population = 8;
  s.bo.pso.max_iters = 10;
  std::vector<double> omegas;
  for (int i = 1; i <= 9; ++i) omegas.push_back(i / 10.0);
  const auto rows = omega_sweep(s, omegas);
  REQUIRE(rows.size() == 9);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].omega == omegas[i]);
    CHECK(std::isfinite(rows[i].ave_best));
  }

  const auto a = omega_sweep(s, {0.5});
  const auto b = omega_sweep(s, {0.5});
  CHECK(a[0].ave_best == b[0].ave_best);

  try {
    omega_sweep(s, {0.5, 1.5});
    FAIL("expected StabilityViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StabilityViolation);
    CHECK(std::string(e.what()).find("1.5") != std::string::npos);
  }
}
