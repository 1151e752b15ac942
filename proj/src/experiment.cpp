#include "swarmbo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "swarmbo/error.hpp"

namespace swarmbo::bench {

std::string_view to_string(MethodKind kind) noexcept {
  switch (kind) {
    case MethodKind::PsoBo: return "pso_bo";
    case MethodKind::LocalBo: return "local_bo";
    case MethodKind::RandomSearch: return "random_search";
    case MethodKind::GridSearch: return "grid_search";
  }
  return "unknown";
}

MethodKind parse_method_kind(std::string_view text) {
  for (auto k : {MethodKind::PsoBo, MethodKind::LocalBo, MethodKind::RandomSearch,
                 MethodKind::GridSearch}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorCode::InvalidMethodParams, "unknown method '" + std::string(text) + "'");
}

Aggregate summarize(std::span<const double> values) noexcept {
  if (values.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan};
  }
  Aggregate a{values.front(), values.front(), 0.0};
  double sum = 0.0;
  for (double v : values) {
    a.max = std::max(a.max, v);
    a.min = std::min(a.min, v);
    sum += v;
  }
  a.ave = sum / static_cast<double>(values.size());
  // keep min <= ave <= max under rounding
  a.ave = std::clamp(a.ave, a.min, a.max);
  return a;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void validate_methods(const std::vector<MethodSpec>& methods, const ExperimentSetup& setup) {
  if (methods.empty()) throw Error(ErrorCode::InvalidMethodParams, "no methods given");
  validate_objective(setup.objective);
  validate_bo_config(setup.bo);
  for (const auto& m : methods) {
    switch (m.kind) {
      case MethodKind::PsoBo: validate_pso_params(m.pso); break;
      case MethodKind::LocalBo: validate_local_params(m.local); break;
      case MethodKind::RandomSearch: break;
      case MethodKind::GridSearch: {
        const auto size = grid_size(setup.bo.space, m.points_per_dim, m.grid_cap);
        if (size != static_cast<std::size_t>(setup.budget())) {
          throw Error(ErrorCode::InvalidMethodParams,
                      "grid_search lattice has " + std::to_string(size) +
                          " points but the evaluation budget is " +
                          std::to_string(setup.budget()));
        }
        break;
      }
    }
  }
}

CellResult run_cell(const MethodSpec& method, const ExperimentSetup& setup, std::uint64_t seed) {
  std::size_t count = 0;
  const Objective base = make_objective(setup.objective, derive_seed(seed, "noise"));
  const Objective counted = [&](const PointVec& x) {
    ++count;
    return base(x);
  };

  BoConfig cfg = setup.bo;
  cfg.seed = seed;
  CellResult cell;
  switch (method.kind) {
    case MethodKind::PsoBo: {
      cfg.pso = method.pso;
      const BoResult r = run_bo(cfg, counted);
      cell.best = r.best_value;
      cell.trace = r.incumbent_trace;
      break;
    }
    case MethodKind::LocalBo: {
      const BoResult r = run_local_bo(cfg, counted, method.local);
      cell.best = r.best_value;
      cell.trace = r.incumbent_trace;
      break;
    }
    case MethodKind::RandomSearch: {
      Rng rng(derive_seed(seed, "random"));
      const SearchResult r = run_random_search(cfg.space, counted, setup.budget(), rng);
      cell.best = r.best_value;
      cell.trace = r.incumbent_trace;
      break;
    }
    case MethodKind::GridSearch: {
      const SearchResult r =
          run_grid_search(cfg.space, counted, method.points_per_dim, method.grid_cap);
      cell.best = r.best_value;
      cell.trace = r.incumbent_trace;
      break;
    }
  }
  cell.evaluations = count;
  return cell;
}

ExperimentReport run_experiment(const std::vector<MethodSpec>& methods,
                                const ExperimentSetup& setup) {
  validate_methods(methods, setup);
  if (setup.seeds.size() < 2) throw Error(ErrorCode::InvalidParams, "need at least 2 seeds");

  const std::size_t n_seeds = setup.seeds.size();
  const std::size_t n_cells = methods.size() * n_seeds;
  std::vector<CellResult> cells(n_cells);
  std::vector<std::string> errors(n_cells);

  parallel_for(n_cells, setup.jobs, [&](std::size_t i) {
    const auto& method = methods[i / n_seeds];
    const auto seed = setup.seeds[i % n_seeds];
    try {
      cells[i] = run_cell(method, setup, seed);
    } catch (const std::exception& e) {
      errors[i] = e.what();
      if (errors[i].empty()) errors[i] = "unknown failure";
    }
  });

  ExperimentReport report;
  report.objective = std::string(to_string(setup.objective.name));
  report.budget = setup.budget();
  report.seeds = setup.seeds;
  report.budget_parity = true;

  for (std::size_t m = 0; m < methods.size(); ++m) {
    MethodReport mr;
    mr.label = methods[m].name();
    mr.kind = methods[m].kind;
    for (std::size_t s = 0; s < n_seeds; ++s) {
      const std::size_t i = m * n_seeds + s;
      if (!errors[i].empty()) {
        std::clog << "swarmbo: warning: " << mr.label << " seed " << setup.seeds[s]
                  << " failed and is excluded: " << errors[i] << "\n";
        mr.missing.push_back(setup.seeds[s]);
        continue;
      }
      mr.seeds.push_back(setup.seeds[s]);
      mr.per_seed_best.push_back(cells[i].best);
      mr.traces.push_back(std::move(cells[i].trace));
      mr.evaluations.push_back(cells[i].evaluations);
      if (cells[i].evaluations != static_cast<std::size_t>(report.budget)) {
        report.budget_parity = false;
      }
    }
    mr.stats = summarize(mr.per_seed_best);
    report.methods.push_back(std::move(mr));
  }
  return report;
}

std::vector<SweepRow> omega_sweep(const ExperimentSetup& setup, const std::vector<double>& omegas) {
  if (omegas.empty()) throw Error(ErrorCode::InvalidParams, "omega list is empty");
  if (setup.seeds.empty()) throw Error(ErrorCode::InvalidParams, "seed list is empty");
  for (double omega : omegas) {
    if (!in_stability_region(omega, setup.bo.pso.c1, setup.bo.pso.c2)) {
      std::ostringstream msg;
      msg << "omega = " << omega << " with c1 + c2 = " << setup.bo.pso.c1 + setup.bo.pso.c2
          << " is outside the stability region";
      throw Error(ErrorCode::StabilityViolation, msg.str());
    }
  }
  validate_objective(setup.objective);
  validate_bo_config(setup.bo);

  const std::size_t n_seeds = setup.seeds.size();
  std::vector<double> best(omegas.size() * n_seeds);
  parallel_for(best.size(), setup.jobs, [&](std::size_t i) {
    MethodSpec method;
    method.kind = MethodKind::PsoBo;
    method.pso = setup.bo.pso;
    method.pso.omega = omegas[i / n_seeds];
    best[i] = run_cell(method, setup, setup.seeds[i % n_seeds]).best;
  });

  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    double sum = 0.0;
    for (std::size_t s = 0; s < n_seeds; ++s) sum += best[k * n_seeds + s];
    rows.push_back({omegas[k], sum / static_cast<double>(n_seeds)});
  }
  return rows;
}

}  // namespace swarmbo::bench
