#include "swarmbo/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <string_view>

#include "swarmbo/error.hpp"

namespace swarmbo::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::ConfigError, "'" + path + "': " + message);
}

/// One JSON object of the config, with key whitelisting and typed getters.
class Section {
 public:
  Section(const json& j, std::string path, std::initializer_list<std::string_view> keys)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
    const std::set<std::string_view> allowed(keys);
    for (const auto& [key, value] : j_.items()) {
      if (!allowed.contains(key)) fail(child(key), "unknown key");
    }
  }

  std::string child(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool has(std::string_view key) const {
    return j_.contains(key) && !j_.at(std::string(key)).is_null();
  }
  const json& at(std::string_view key) const { return j_.at(std::string(key)); }

  void number(std::string_view key, double& out) const {
    if (!has(key)) return;
    if (!at(key).is_number()) fail(child(key), "expected a number");
    out = at(key).get<double>();
  }

  void integer(std::string_view key, int& out) const {
    if (!has(key)) return;
    if (!at(key).is_number_integer()) fail(child(key), "expected an integer");
    out = at(key).get<int>();
  }

  void boolean(std::string_view key, bool& out) const {
    if (!has(key)) return;
    if (!at(key).is_boolean()) fail(child(key), "expected true or false");
    out = at(key).get<bool>();
  }

  void string(std::string_view key, std::string& out) const {
    if (!has(key)) return;
    if (!at(key).is_string()) fail(child(key), "expected a string");
    out = at(key).get<std::string>();
  }

  void bounds(std::string_view key, std::pair<double, double>& out) const {
    if (!has(key)) return;
    const json& v = at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      fail(child(key), "expected [lower, upper]");
    }
    out = {v[0].get<double>(), v[1].get<double>()};
    if (!(out.first > 0.0 && out.first < out.second)) {
      fail(child(key), "expected 0 < lower < upper");
    }
  }

 private:
  const json& j_;
  std::string path_;
};

std::uint64_t as_seed(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0)) {
    fail(path, "expected a non-negative integer seed");
  }
  return v.get<std::uint64_t>();
}

PsoParams parse_pso(const json& j, const std::string& path, PsoParams p) {
  Section s(j, path,
            {"omega", "c1", "c2", "population", "max_iters", "vmax_fraction", "tol", "patience"});
  s.number("omega", p.omega);
  s.number("c1", p.c1);
  s.number("c2", p.c2);
  s.integer("population", p.population);
  s.integer("max_iters", p.max_iters);
  s.number("vmax_fraction", p.vmax_fraction);
  s.number("tol", p.tol);
  s.integer("patience", p.patience);
  return p;
}

json pso_json(const PsoParams& p) {
  return {{"omega", p.omega},           {"c1", p.c1},
          {"c2", p.c2},                 {"population", p.population},
          {"max_iters", p.max_iters},   {"vmax_fraction", p.vmax_fraction},
          {"tol", p.tol},               {"patience", p.patience}};
}

void parse_objective(const json& j, RunConfig& cfg) {
  Section s(j, "objective", {"name", "dims", "noise_std", "negate"});
  if (!s.has("name")) fail("objective.name", "required");
  std::string name;
  s.string("name", name);
  try {
    cfg.objective.name = bench::parse_objective_name(name);
  } catch (const Error& e) {
    fail("objective.name", "unknown objective '" + name + "'");
  }
  cfg.objective.dims = cfg.objective.name == bench::ObjectiveName::Branin      ? 2
                       : cfg.objective.name == bench::ObjectiveName::Hartmann3 ? 3
                                                                               : 2;
  s.integer("dims", cfg.objective.dims);
  s.number("noise_std", cfg.objective.noise_std);
  s.boolean("negate", cfg.objective.negate);
}

void parse_space(const json& j, RunConfig& cfg) {
  if (!j.is_array()) fail("space", "expected an array of dimensions");
  SearchSpace space;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "space[" + std::to_string(i) + "]";
    Section s(j[i], path, {"name", "type", "lower", "upper"});
    for (auto key : {"name", "type", "lower", "upper"}) {
      if (!s.has(key)) fail(s.child(key), "required");
    }
    DimensionSpec dim;
    std::string type;
    s.string("name", dim.name);
    s.string("type", type);
    if (type == "real") {
      dim.kind = DimKind::Real;
    } else if (type == "integer") {
      dim.kind = DimKind::Integer;
    } else {
      fail(s.child("type"), "expected \"real\" or \"integer\"");
    }
    s.number("lower", dim.lower);
    s.number("upper", dim.upper);
    space.dims.push_back(dim);
  }
  cfg.space = std::move(space);
}

void parse_acquisition(const json& j, RunConfig& cfg) {
  Section s(j, "acquisition", {"kind", "gamma", "xi"});
  std::string kind = "ucb";
  s.string("kind", kind);
  if (kind == "ucb") {
    cfg.acquisition.kind = AcquisitionKind::UCB;
  } else if (kind == "ei") {
    cfg.acquisition.kind = AcquisitionKind::EI;
  } else if (kind == "pi") {
    cfg.acquisition.kind = AcquisitionKind::PI;
  } else {
    fail("acquisition.kind", "expected \"ucb\", \"ei\" or \"pi\"");
  }
  s.number("gamma", cfg.acquisition.gamma);
  s.number("xi", cfg.acquisition.xi);
  if (cfg.acquisition.gamma < 0.0) fail("acquisition.gamma", "must be >= 0");
  if (cfg.acquisition.xi < 0.0) fail("acquisition.xi", "must be >= 0");
}

void parse_gp(const json& j, RunConfig& cfg) {
  Section s(j, "gp", {"theta0_bounds", "lengthscale_bounds", "noise_var_bounds", "noise_var", "fit_pso"});
  s.bounds("theta0_bounds", cfg.gp_bounds.theta0);
  s.bounds("lengthscale_bounds", cfg.gp_bounds.lengthscale);
  s.bounds("noise_var_bounds", cfg.gp_bounds.noise_var);
  if (s.has("noise_var")) {
    double v = 0.0;
    s.number("noise_var", v);
    if (v < 0.0) fail("gp.noise_var", "must be >= 0");
    cfg.noise_var = v;
  }
  if (s.has("fit_pso")) cfg.gp_fit_pso = parse_pso(s.at("fit_pso"), "gp.fit_pso", cfg.gp_fit_pso);
}

bench::MethodSpec parse_method(const json& j, const std::string& path, const RunConfig& cfg) {
  Section s(j, path, {"kind", "label", "pso", "restarts", "max_steps", "fd_step", "initial_step",
                      "points_per_dim", "grid_cap"});
  if (!s.has("kind")) fail(s.child("kind"), "required");
  std::string kind;
  s.string("kind", kind);
  bench::MethodSpec m;
  try {
    m.kind = bench::parse_method_kind(kind);
  } catch (const Error&) {
    fail(s.child("kind"),
         "expected \"pso_bo\", \"local_bo\", \"random_search\" or \"grid_search\"");
  }
  s.string("label", m.label);
  m.pso = s.has("pso") ? parse_pso(s.at("pso"), s.child("pso"), cfg.pso) : cfg.pso;
  s.integer("restarts", m.local.restarts);
  s.integer("max_steps", m.local.max_steps);
  s.number("fd_step", m.local.fd_step);
  s.number("initial_step", m.local.initial_step);
  s.integer("points_per_dim", m.points_per_dim);
  if (s.has("grid_cap")) {
    int cap = 0;
    s.integer("grid_cap", cap);
    if (cap < 1) fail(s.child("grid_cap"), "must be >= 1");
    m.grid_cap = static_cast<std::size_t>(cap);
  }
  return m;
}

void parse_experiment(const json& j, RunConfig& cfg) {
  Section s(j, "experiment", {"init_count", "iterations", "seed", "seeds", "methods", "omegas"});
  s.integer("init_count", cfg.init_count);
  s.integer("iterations", cfg.iterations);
  if (cfg.init_count < 1) fail("experiment.init_count", "must be >= 1");
  if (cfg.iterations < 1) fail("experiment.iterations", "must be >= 1");
  if (s.has("seed")) cfg.seed = as_seed(s.at("seed"), "experiment.seed");
  if (s.has("seeds")) {
    const json& seeds = s.at("seeds");
    if (!seeds.is_array()) fail("experiment.seeds", "expected an array");
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      cfg.seeds.push_back(as_seed(seeds[i], "experiment.seeds[" + std::to_string(i) + "]"));
    }
  }
  if (s.has("omegas")) {
    const json& omegas = s.at("omegas");
    if (!omegas.is_array()) fail("experiment.omegas", "expected an array");
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      if (!omegas[i].is_number()) fail("experiment.omegas[" + std::to_string(i) + "]", "expected a number");
      cfg.omegas.push_back(omegas[i].get<double>());
    }
  }
  if (s.has("methods")) {
    const json& methods = s.at("methods");
    if (!methods.is_array()) fail("experiment.methods", "expected an array");
    for (std::size_t i = 0; i < methods.size(); ++i) {
      cfg.methods.push_back(
          parse_method(methods[i], "experiment.methods[" + std::to_string(i) + "]", cfg));
    }
  }
}

std::string_view acquisition_name(AcquisitionKind k) {
  switch (k) {
    case AcquisitionKind::UCB: return "ucb";
    case AcquisitionKind::EI: return "ei";
    case AcquisitionKind::PI: return "pi";
  }
  return "ucb";
}

}  // namespace

std::vector<double> default_omegas() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

SearchSpace RunConfig::search_space() const {
  return space ? *space : bench::canonical_space(objective);
}

RunConfig parse_config(const json& doc) {
  Section root(doc, "", {"objective", "space", "acquisition", "pso", "gp", "experiment", "output_dir"});
  if (!root.has("objective")) fail("objective", "required section is missing");

  RunConfig cfg;
  parse_objective(root.at("objective"), cfg);
  if (root.has("space")) parse_space(root.at("space"), cfg);
  if (root.has("acquisition")) parse_acquisition(root.at("acquisition"), cfg);
  if (root.has("pso")) cfg.pso = parse_pso(root.at("pso"), "pso", cfg.pso);
  if (root.has("gp")) parse_gp(root.at("gp"), cfg);
  // methods inherit the top-level pso block, so parse it first
  if (root.has("experiment")) parse_experiment(root.at("experiment"), cfg);
  root.string("output_dir", cfg.output_dir);

  try {
    bench::validate_objective(cfg.objective);
    const SearchSpace space = cfg.search_space();
    validate_space(space);
    if (space.size() != static_cast<std::size_t>(cfg.objective.dims)) {
      fail("space", "has " + std::to_string(space.size()) + " dimensions but the objective takes " +
                        std::to_string(cfg.objective.dims));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    throw Error(ErrorCode::ConfigError, e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    // nlohmann messages carry "at line L, column C"
    throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  json space = json::array();
  for (const auto& d : cfg.search_space().dims) {
    space.push_back({{"name", d.name},
                     {"type", d.kind == DimKind::Integer ? "integer" : "real"},
                     {"lower", d.lower},
                     {"upper", d.upper}});
  }
  json methods = json::array();
  for (const auto& m : cfg.methods) {
    json mj = {{"kind", bench::to_string(m.kind)}, {"label", m.name()}};
    switch (m.kind) {
      case bench::MethodKind::PsoBo: mj["pso"] = pso_json(m.pso); break;
      case bench::MethodKind::LocalBo:
        mj["restarts"] = m.local.restarts;
        mj["max_steps"] = m.local.max_steps;
        mj["fd_step"] = m.local.fd_step;
        mj["initial_step"] = m.local.initial_step;
        break;
      case bench::MethodKind::GridSearch:
        mj["points_per_dim"] = m.points_per_dim;
        mj["grid_cap"] = m.grid_cap;
        break;
      case bench::MethodKind::RandomSearch: break;
    }
    methods.push_back(mj);
  }
  json experiment = {{"init_count", cfg.init_count},
                     {"iterations", cfg.iterations},
                     {"seeds", cfg.seeds},
                     {"methods", methods},
                     {"omegas", cfg.omegas}};
  if (cfg.seed) experiment["seed"] = *cfg.seed;
  json gp = {{"theta0_bounds", {cfg.gp_bounds.theta0.first, cfg.gp_bounds.theta0.second}},
             {"lengthscale_bounds",
              {cfg.gp_bounds.lengthscale.first, cfg.gp_bounds.lengthscale.second}},
             {"noise_var_bounds", {cfg.gp_bounds.noise_var.first, cfg.gp_bounds.noise_var.second}},
             {"fit_pso", pso_json(cfg.gp_fit_pso)}};
  if (cfg.noise_var) gp["noise_var"] = *cfg.noise_var;
  return {{"objective",
           {{"name", bench::to_string(cfg.objective.name)},
            {"dims", cfg.objective.dims},
            {"noise_std", cfg.objective.noise_std},
            {"negate", cfg.objective.negate}}},
          {"space", space},
          {"acquisition",
           {{"kind", acquisition_name(cfg.acquisition.kind)},
            {"gamma", cfg.acquisition.gamma},
            {"xi", cfg.acquisition.xi}}},
          {"pso", pso_json(cfg.pso)},
          {"gp", gp},
          {"experiment", experiment},
          {"output_dir", cfg.output_dir}};
}

BoConfig to_bo_config(const RunConfig& cfg, std::uint64_t seed) {
  BoConfig bo;
  bo.space = cfg.search_space();
  bo.acquisition = cfg.acquisition;
  bo.pso = cfg.pso;
  bo.init_count = cfg.init_count;
  bo.max_iterations = cfg.iterations;
  bo.seed = seed;
  bo.noise_var = cfg.noise_var;
  bo.gp_bounds = cfg.gp_bounds;
  bo.gp_fit_pso = cfg.gp_fit_pso;
  return bo;
}

bench::ExperimentSetup to_setup(const RunConfig& cfg, std::vector<std::uint64_t> seeds, int jobs) {
  bench::ExperimentSetup setup;
  setup.objective = cfg.objective;
  setup.bo = to_bo_config(cfg, 0);
  setup.seeds = std::move(seeds);
  setup.jobs = jobs;
  return setup;
}

}  // namespace swarmbo::cli
