#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ccf/adaptation.hpp"
#include "ccf/ccb.hpp"
#include "ccf/contracts.hpp"
#include "ccf/errors.hpp"
#include "ccf/io.hpp"
#include "ccf/price_opt.hpp"
#include "ccf/scenario.hpp"
#include "ccf/simulation.hpp"
#include "ccf/stats.hpp"

namespace ccf {

using json = nlohmann::json;

struct ClimateDataConfig {
  std::string path;  // resolved against the config file's directory
  std::string location = "northeast";
  std::vector<std::string> scenarios;  // empty = every scenario of the location, uniform
  std::vector<double> weights;
  double noise_sigma = 0.0;
  std::optional<int> pool_first_year;  // default: first year in the table
  std::optional<int> pool_last_year;   // default: last year in the table
  std::size_t pooled_samples = 10000;
};

struct CCBRunConfig {
  CCBSpec spec{};
  std::size_t n_sims = 2000;
  ScheduleOptions schedule{};
  PathSampling sampling{};
  std::size_t path_samples = 200;         // paths written to the cumulative-return file
  std::uint64_t evaluation_seed_offset = 1;  // fresh-seed re-evaluation uses master_seed + offset
};

struct SweepConfig {
  std::string key;
  std::vector<json> values;
};

struct ExperimentConfig {
  std::uint64_t master_seed = 20220101;
  std::string output_dir = "out";
  SimulationConfig simulation = default_simulation_config();
  BootstrapOptions bootstrap{};
  PriceOptimizerOptions price_optimizer{};
  ClimateDataConfig climate_data{};
  CCBRunConfig ccb{};
  std::size_t histogram_bins = 30;
  std::size_t wealth_path_samples = 10;
  std::optional<SweepConfig> sweep;
  json document;  // effective document after overrides, used for hashing

  std::string hash() const { return hex64(fnv1a64(document.dump())); }
};

namespace config_detail {

// Allowed keys per section. Anything else is rejected.
inline const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"", {"master_seed", "output_dir", "ladder", "simulation", "adaptation", "bootstrap",
            "price_optimizer", "climate_data", "ccb", "output", "sweep"}},
      {"simulation", {"initial_assets", "risk_free_rate", "period_years", "n_periods", "n_replications",
                      "prices", "allocation_A", "allocation_B"}},
      {"adaptation", {"return_table", "upper_discount", "lower_discount", "discounts_on", "historical_on",
                      "decay"}},
      {"adaptation.decay", {"midpoint_years", "steepness", "horizon_years"}},
      {"bootstrap", {"n_resamples", "level"}},
      {"price_optimizer", {"budget", "tolerance", "upper_multiple", "lower", "upper", "initial_step"}},
      {"climate_data", {"path", "location", "scenario_weights", "noise_sigma", "pool_first_year",
                        "pool_last_year", "pooled_samples"}},
      {"ccb", {"lifetime_years", "start_year", "discount_rate", "market_rate", "min_rate", "max_rate",
               "granularity", "initial_fixed_years", "blend_lambda", "n_sims", "tolerance_rel", "budget",
               "stratified", "coherent_paths", "path_samples", "evaluation_seed_offset"}},
      {"output", {"histogram_bins", "wealth_path_samples"}},
      {"sweep", {"key", "values"}},
  };
  return s;
}

inline void check_keys(const json& obj, const std::string& section) {
  const auto& allowed = schema().at(section);
  const std::string prefix = section.empty() ? "" : section + ".";
  if (!obj.is_object()) throw ConfigError("'" + (section.empty() ? std::string("<root>") : section) + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + prefix + key + "'");
    const std::string sub = prefix + key;
    if (schema().count(sub) && !value.is_null()) check_keys(value, sub);
  }
}

template <class T>
T get(const json& obj, const std::string& key, const std::string& field, T fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("field '" + field + "' has the wrong type");
  }
}

inline double get_number(const json& obj, const std::string& key, const std::string& field, double fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  if (!obj.at(key).is_number()) throw ConfigError("field '" + field + "' must be a number");
  return obj.at(key).get<double>();
}

inline long long get_int(const json& obj, const std::string& key, const std::string& field, long long fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  const auto& v = obj.at(key);
  if (v.is_number_integer() || v.is_number_unsigned()) return v.get<long long>();
  if (v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>())))
    return static_cast<long long>(v.get<double>());
  throw ConfigError("field '" + field + "' must be an integer");
}

inline std::size_t get_count(const json& obj, const std::string& key, const std::string& field,
                             std::size_t fallback, std::size_t minimum) {
  const auto v = get_int(obj, key, field, static_cast<long long>(fallback));
  if (v < static_cast<long long>(minimum))
    throw ConfigError("field '" + field + "' must be >= " + std::to_string(minimum));
  return static_cast<std::size_t>(v);
}

inline bool get_bool(const json& obj, const std::string& key, const std::string& field, bool fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  if (!obj.at(key).is_boolean()) throw ConfigError("field '" + field + "' must be true or false");
  return obj.at(key).get<bool>();
}

// {"scenario name": number} -> per-rank vector, defaulting unnamed ranks.
inline ScenarioVector scenario_map(const json& v, const ScenarioLadder& ladder, const std::string& field,
                                   double fallback) {
  if (!v.is_object()) throw ConfigError("field '" + field + "' must map scenario names to numbers");
  ScenarioVector out(ladder.size(), fallback);
  for (const auto& [name, x] : v.items()) {
    std::size_t rank = 0;
    try {
      rank = ladder.id(name).rank;
    } catch (const DomainError&) {
      throw ConfigError("field '" + field + "' names unknown scenario '" + name + "'");
    }
    if (!x.is_number()) throw ConfigError("field '" + field + "." + name + "' must be a number");
    out[rank] = x.get<double>();
  }
  return out;
}

inline ScenarioVector allocation(const json& sim, const std::string& key, const ScenarioLadder& ladder,
                                 const ScenarioVector* same_as) {
  const std::string field = "simulation." + key;
  if (!sim.contains(key) || sim.at(key).is_null())
    return same_as ? *same_as : spread_allocation(ladder);
  const auto& v = sim.at(key);
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "spread") return spread_allocation(ladder);
    if (s == "same_as_A" && same_as) return *same_as;
    try {
      return single_allocation(ladder, ladder.id(s).rank);
    } catch (const DomainError&) {
      throw ConfigError("field '" + field + "' must be \"spread\", \"same_as_A\", a scenario name, or a map");
    }
  }
  return scenario_map(v, ladder, field, 0.0);
}

inline std::string joined(const std::vector<std::string>& parts, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += (i ? "." : "") + parts[i];
  return s;
}

inline std::vector<std::string> split_path(const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string p;
  while (std::getline(ss, p, '.')) parts.push_back(p);
  return parts;
}

}  // namespace config_detail

// Resolves a `--set` key to a dotted path. Undotted keys that are not
// top-level fields are looked up across sections and must be unambiguous,
// so `n_replications` means `simulation.n_replications`.
inline std::vector<std::string> resolve_key(const std::string& key) {
  using namespace config_detail;
  if (key.empty()) throw ConfigError("empty override key");
  auto parts = split_path(key);
  if (parts.size() > 1) {
    // Only validate the section; leaves inside free-form maps (prices,
    // return_table, ...) are checked when the document is parsed.
    if (!schema().at("").count(parts[0])) throw ConfigError("unknown override key '" + key + "'");
    return parts;
  }
  if (schema().at("").count(key)) return parts;
  std::vector<std::string> hits;
  for (const auto& [section, keys] : schema())
    if (!section.empty() && keys.count(key)) hits.push_back(section);
  if (hits.size() != 1)
    throw ConfigError(hits.empty() ? "unknown override key '" + key + "'"
                                   : "ambiguous override key '" + key + "'; use a dotted path");
  auto path = split_path(hits[0]);
  path.push_back(key);
  return path;
}

// Applies `key=value`; the value is parsed as JSON when possible, otherwise
// taken as a string.
inline void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' must look like key=value");
  const auto path = resolve_key(assignment.substr(0, eq));
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json* node = &doc;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto& child = (*node)[path[i]];
    if (child.is_null()) child = json::object();
    if (!child.is_object())
      throw ConfigError("override '" + assignment + "': '" + config_detail::joined(path, i + 1) + "' is not an object");
    node = &child;
  }
  (*node)[path.back()] = std::move(value);
}

inline void apply_override(json& doc, const std::string& key, const json& value) {
  const auto path = resolve_key(key);
  json* node = &doc;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto& child = (*node)[path[i]];
    if (child.is_null()) child = json::object();
    node = &child;
  }
  (*node)[path.back()] = value;
}

// Validates the whole document and builds the typed config. Any problem is
// reported as ConfigError naming the field.
inline ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir = {}) {
  using namespace config_detail;
  check_keys(doc, "");
  ExperimentConfig cfg;
  cfg.document = doc;

  try {
    const long long seed = get_int(doc, "master_seed", "master_seed", static_cast<long long>(cfg.master_seed));
    if (seed < 0) throw ConfigError("field 'master_seed' must be >= 0");
    cfg.master_seed = static_cast<std::uint64_t>(seed);
    cfg.output_dir = get<std::string>(doc, "output_dir", "output_dir", cfg.output_dir);

    // Ladder first: every scenario-keyed map depends on it.
    ScenarioLadder ladder = default_ladder();
    if (doc.contains("ladder") && !doc.at("ladder").is_null()) {
      const auto& arr = doc.at("ladder");
      if (!arr.is_array() || arr.empty()) throw ConfigError("field 'ladder' must be a non-empty array");
      std::vector<ScenarioSpec> specs;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& e = arr[i];
        const std::string f = "ladder[" + std::to_string(i) + "]";
        if (!e.is_object()) throw ConfigError("field '" + f + "' must be an object");
        for (const auto& [k, _] : e.items())
          if (k != "name" && k != "probability") throw ConfigError("unknown key '" + f + "." + k + "'");
        if (!e.contains("name") || !e.at("name").is_string()) throw ConfigError("field '" + f + ".name' must be a string");
        if (!e.contains("probability") || !e.at("probability").is_number())
          throw ConfigError("field '" + f + ".probability' must be a number");
        specs.push_back({e.at("name").get<std::string>(), e.at("probability").get<double>()});
      }
      try {
        ladder = ScenarioLadder(std::move(specs));
      } catch (const DomainError& e) {
        throw ConfigError(std::string("field 'ladder': ") + e.what());
      }
    }

    auto& sim = cfg.simulation;
    sim = SimulationConfig{};
    sim.ladder = ladder;
    sim.master_seed = cfg.master_seed;
    const json s = doc.value("simulation", json::object());
    sim.initial_assets = get_number(s, "initial_assets", "simulation.initial_assets", 1e8);
    sim.risk_free_rate = get_number(s, "risk_free_rate", "simulation.risk_free_rate", 0.01);
    sim.period_years = static_cast<int>(get_int(s, "period_years", "simulation.period_years", 10));
    sim.n_periods = static_cast<int>(get_int(s, "n_periods", "simulation.n_periods", 5));
    sim.n_replications = get_count(s, "n_replications", "simulation.n_replications", 500, 1);
    if (sim.period_years < 1) throw ConfigError("field 'simulation.period_years' must be >= 1");
    if (sim.n_periods < 1) throw ConfigError("field 'simulation.n_periods' must be >= 1");
    if (sim.risk_free_rate < 0.0) throw ConfigError("field 'simulation.risk_free_rate' must be >= 0");

    const auto floors = minimum_prices(ladder, sim.risk_free_rate, sim.period_years);
    if (!s.contains("prices") || s.at("prices").is_null() ||
        (s.at("prices").is_string() && s.at("prices").get<std::string>() == "minimum")) {
      sim.prices = floors;
    } else if (s.at("prices").is_object()) {
      sim.prices = floors;
      const auto given = scenario_map(s.at("prices"), ladder, "simulation.prices", -1.0);
      for (std::size_t k = 0; k < given.size(); ++k)
        if (given[k] != -1.0) sim.prices[k] = given[k];
    } else {
      throw ConfigError("field 'simulation.prices' must be \"minimum\" or a map of scenario prices");
    }
    sim.allocation_A = allocation(s, "allocation_A", ladder, nullptr);
    sim.allocation_B = allocation(s, "allocation_B", ladder, &sim.allocation_A);

    const json a = doc.value("adaptation", json::object());
    ScenarioVector table = default_return_table().values();
    if (a.contains("return_table") && !a.at("return_table").is_null()) {
      table = scenario_map(a.at("return_table"), ladder, "adaptation.return_table", -1.0);
      for (std::size_t k = 0; k < table.size(); ++k)
        if (table[k] == -1.0) throw ConfigError("field 'adaptation.return_table' is missing scenario '" + ladder.name(k) + "'");
    } else if (ladder.size() != table.size()) {
      throw ConfigError("field 'adaptation.return_table' is required for a custom ladder");
    }
    try {
      sim.adaptation.table = AdaptationReturnTable(table);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("field 'adaptation.return_table': ") + e.what());
    }
    sim.adaptation.discounts.upper = get_number(a, "upper_discount", "adaptation.upper_discount", 0.5);
    sim.adaptation.discounts.lower = get_number(a, "lower_discount", "adaptation.lower_discount", 0.75);
    sim.adaptation.flags.discounts_on = get_bool(a, "discounts_on", "adaptation.discounts_on", true);
    sim.adaptation.flags.historical_on = get_bool(a, "historical_on", "adaptation.historical_on", true);
    const json d = a.value("decay", json::object());
    sim.adaptation.decay.midpoint_years = get_number(d, "midpoint_years", "adaptation.decay.midpoint_years", 20.0);
    sim.adaptation.decay.steepness = get_number(d, "steepness", "adaptation.decay.steepness", 0.15);
    sim.adaptation.decay.horizon_years = get_number(d, "horizon_years", "adaptation.decay.horizon_years", 40.0);
    try {
      sim.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("simulation: ") + e.what());
    }

    const json b = doc.value("bootstrap", json::object());
    cfg.bootstrap.n_resamples = get_count(b, "n_resamples", "bootstrap.n_resamples", 1000, 1);
    cfg.bootstrap.level = get_number(b, "level", "bootstrap.level", 0.95);
    if (!(cfg.bootstrap.level > 0.0 && cfg.bootstrap.level < 1.0))
      throw ConfigError("field 'bootstrap.level' must be in (0, 1)");
    cfg.bootstrap.seed = cfg.master_seed;

    const json po = doc.value("price_optimizer", json::object());
    auto& popt = cfg.price_optimizer;
    popt.budget = get_count(po, "budget", "price_optimizer.budget", 2000, 1);
    popt.tolerance = get_number(po, "tolerance", "price_optimizer.tolerance", -1.0);
    popt.initial_step = get_number(po, "initial_step", "price_optimizer.initial_step", 0.25);
    popt.bounds.upper_multiple = get_number(po, "upper_multiple", "price_optimizer.upper_multiple", 10.0);
    if (!(popt.initial_step > 0.0 && popt.initial_step <= 1.0))
      throw ConfigError("field 'price_optimizer.initial_step' must be in (0, 1]");
    if (!(popt.bounds.upper_multiple > 0.0)) throw ConfigError("field 'price_optimizer.upper_multiple' must be > 0");
    // Bounds are checked against the price floors when the optimizer runs, so
    // infeasible bounds surface as an optimization error rather than a
    // config error.
    if (po.contains("lower") && !po.at("lower").is_null())
      popt.bounds.lower = scenario_map(po.at("lower"), ladder, "price_optimizer.lower", 0.0);
    if (po.contains("upper") && !po.at("upper").is_null()) {
      popt.bounds.upper.resize(ladder.size());
      for (std::size_t k = 0; k < ladder.size(); ++k) popt.bounds.upper[k] = floors[k] * popt.bounds.upper_multiple;
      const auto given = scenario_map(po.at("upper"), ladder, "price_optimizer.upper", -1.0);
      for (std::size_t k = 0; k < given.size(); ++k)
        if (given[k] != -1.0) popt.bounds.upper[k] = given[k];
    }

    const json cd = doc.value("climate_data", json::object());
    auto& data = cfg.climate_data;
    data.path = get<std::string>(cd, "path", "climate_data.path", "");
    if (!data.path.empty() && std::filesystem::path(data.path).is_relative() && !base_dir.empty())
      data.path = (base_dir / data.path).lexically_normal().string();
    data.location = get<std::string>(cd, "location", "climate_data.location", data.location);
    if (cd.contains("scenario_weights") && !cd.at("scenario_weights").is_null()) {
      const auto& w = cd.at("scenario_weights");
      if (!w.is_object() || w.empty()) throw ConfigError("field 'climate_data.scenario_weights' must be a non-empty map");
      double total = 0.0;
      for (const auto& [name, x] : w.items()) {
        if (!x.is_number() || x.get<double>() < 0.0)
          throw ConfigError("field 'climate_data.scenario_weights." + name + "' must be a number >= 0");
        data.scenarios.push_back(name);
        data.weights.push_back(x.get<double>());
        total += x.get<double>();
      }
      if (!(total > 0.0)) throw ConfigError("field 'climate_data.scenario_weights' must have a positive total");
      for (auto& x : data.weights) x /= total;
    }
    data.noise_sigma = get_number(cd, "noise_sigma", "climate_data.noise_sigma", 0.0);
    if (!(data.noise_sigma >= 0.0)) throw ConfigError("field 'climate_data.noise_sigma' must be >= 0");
    if (cd.contains("pool_first_year") && !cd.at("pool_first_year").is_null())
      data.pool_first_year = static_cast<int>(get_int(cd, "pool_first_year", "climate_data.pool_first_year", 0));
    if (cd.contains("pool_last_year") && !cd.at("pool_last_year").is_null())
      data.pool_last_year = static_cast<int>(get_int(cd, "pool_last_year", "climate_data.pool_last_year", 0));
    data.pooled_samples = get_count(cd, "pooled_samples", "climate_data.pooled_samples", 10000, 1);

    const json c = doc.value("ccb", json::object());
    auto& spec = cfg.ccb.spec;
    spec.lifetime_years = static_cast<int>(get_int(c, "lifetime_years", "ccb.lifetime_years", 25));
    spec.start_year = static_cast<int>(get_int(c, "start_year", "ccb.start_year", 2022));
    spec.discount_rate = get_number(c, "discount_rate", "ccb.discount_rate", 0.01);
    spec.market_rate = get_number(c, "market_rate", "ccb.market_rate", 0.04);
    spec.min_rate = get_number(c, "min_rate", "ccb.min_rate", 0.01);
    spec.max_rate = get_number(c, "max_rate", "ccb.max_rate", 0.07);
    spec.granularity = get_count(c, "granularity", "ccb.granularity", 15, 2);
    spec.initial_fixed_years = static_cast<int>(get_int(c, "initial_fixed_years", "ccb.initial_fixed_years", 0));
    spec.blend_lambda = get_number(c, "blend_lambda", "ccb.blend_lambda", 1.0);
    // min <= market <= max is a feasibility question for the structuring
    // step; everything else about the term sheet is validated here.
    {
      CCBSpec probe = spec;
      probe.min_rate = std::min({spec.min_rate, spec.market_rate, spec.max_rate});
      probe.max_rate = std::max({spec.min_rate, spec.market_rate, spec.max_rate});
      try {
        probe.validate();
      } catch (const DomainError& e) {
        throw ConfigError(std::string("ccb: ") + e.what());
      }
    }
    cfg.ccb.n_sims = get_count(c, "n_sims", "ccb.n_sims", 2000, 1);
    cfg.ccb.schedule.tolerance_rel = get_number(c, "tolerance_rel", "ccb.tolerance_rel", 1e-3);
    if (!(cfg.ccb.schedule.tolerance_rel > 0.0)) throw ConfigError("field 'ccb.tolerance_rel' must be > 0");
    cfg.ccb.schedule.budget = get_count(c, "budget", "ccb.budget", 20000, 1);
    cfg.ccb.sampling.stratified = get_bool(c, "stratified", "ccb.stratified", true);
    cfg.ccb.sampling.coherent = get_bool(c, "coherent_paths", "ccb.coherent_paths", false);
    cfg.ccb.path_samples = get_count(c, "path_samples", "ccb.path_samples", 200, 0);
    cfg.ccb.evaluation_seed_offset = get_count(c, "evaluation_seed_offset", "ccb.evaluation_seed_offset", 1, 1);

    const json o = doc.value("output", json::object());
    cfg.histogram_bins = get_count(o, "histogram_bins", "output.histogram_bins", 30, 1);
    cfg.wealth_path_samples = get_count(o, "wealth_path_samples", "output.wealth_path_samples", 10, 0);

    if (doc.contains("sweep") && !doc.at("sweep").is_null()) {
      const auto& sw = doc.at("sweep");
      SweepConfig sc;
      sc.key = get<std::string>(sw, "key", "sweep.key", "");
      if (sc.key.empty()) throw ConfigError("field 'sweep.key' is required");
      if (resolve_key(sc.key).front() == "sweep") throw ConfigError("field 'sweep.key' cannot target the sweep itself");
      if (!sw.contains("values") || !sw.at("values").is_array() || sw.at("values").empty())
        throw ConfigError("field 'sweep.values' must be a non-empty array");
      for (const auto& v : sw.at("values")) sc.values.push_back(v);
      cfg.sweep = std::move(sc);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config file '" + path + "' is not valid JSON");
  return doc;
}

// Loads, applies overrides in order, and validates.
inline ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {}) {
  json doc = path.empty() ? json::object() : read_json_file(path);
  for (const auto& o : overrides) apply_override(doc, o);
  const auto base = path.empty() ? std::filesystem::path{} : std::filesystem::path(path).parent_path();
  return parse_config(doc, base);
}

}  // namespace ccf
