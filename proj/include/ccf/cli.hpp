#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ccf/ccb.hpp"
#include "ccf/climate_data.hpp"
#include "ccf/config.hpp"
#include "ccf/contracts.hpp"
#include "ccf/errors.hpp"
#include "ccf/io.hpp"
#include "ccf/plot.hpp"
#include "ccf/price_opt.hpp"
#include "ccf/simulation.hpp"
#include "ccf/stats.hpp"

namespace ccf::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kDataError = 3,
  kInfeasible = 4,
};

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string data_path;
  bool render_plots = false;
};

namespace detail {

inline std::string column_name(const std::string& scenario) {
  std::string s = scenario;
  std::replace(s.begin(), s.end(), ' ', '_');
  return s;
}

inline ExperimentConfig load(const CommonOptions& o) {
  auto sets = o.sets;
  if (o.seed) sets.push_back("master_seed=" + std::to_string(*o.seed));
  auto cfg = load_config(o.config_path, sets);
  if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
  return cfg;
}

inline json contract_json(const SimulationConfig& sim, std::size_t k, const ScenarioVector& allocation) {
  return json{{"principal", sim.initial_assets * allocation[k]},
              {"price", sim.prices[k]},
              {"trigger_name", sim.ladder.name(k)},
              {"term_years", sim.period_years}};
}

// Contracts written each period, one per allocated trigger scenario.
inline json contracts_json(const SimulationConfig& sim) {
  json sold = json::array(), bought = json::array();
  for (std::size_t k = 0; k < sim.ladder.size(); ++k) {
    if (sim.allocation_A[k] > 0.0) sold.push_back(contract_json(sim, k, sim.allocation_A));
    if (sim.allocation_B[k] > 0.0) bought.push_back(contract_json(sim, k, sim.allocation_B));
  }
  return json{{"sold_by_A", sold}, {"bought_by_B", bought}};
}

inline CsvDocument histogram_csv(std::span<const double> xs, std::size_t n_bins) {
  CsvDocument doc({"bin_lower", "bin_upper", "count"});
  for (const auto& b : histogram(xs, n_bins)) doc.row(b.lower, b.upper, b.count);
  return doc;
}

inline void write_manifest(OutputDir& out, const std::string& command, const std::string& config_hash,
                           std::uint64_t seed, const std::string& started_at) {
  json files = json::array();
  for (const auto& f : out.files())
    files.push_back({{"file", f.name}, {"bytes", f.bytes}, {"fnv1a64", f.fnv1a64}});
  json m{{"tool", "ccf"},
         {"tool_version", std::string(kToolVersion)},
         {"command", command},
         {"config_hash", config_hash},
         {"master_seed", seed},
         {"started_at", started_at},
         {"finished_at", utc_timestamp()},
         {"outputs", files}};
  write_file_atomic(out.root() / "run_manifest.json", m.dump(2) + "\n");
}

inline std::string sweep_suffix(const ExperimentConfig& cfg, std::size_t i) {
  return cfg.sweep ? "_sweep" + std::to_string(i) : "";
}

}  // namespace detail

// simulate: replicated Adapter/Backer runs, optionally swept over one key.
inline int cmd_simulate(const CommonOptions& o, std::ostream& log) {
  const auto started = utc_timestamp();
  const auto base = detail::load(o);

  std::vector<ExperimentConfig> runs;
  if (base.sweep) {
    for (const auto& v : base.sweep->values) {
      json doc = base.document;
      doc.erase("sweep");
      apply_override(doc, base.sweep->key, v);
      const auto dir = o.config_path.empty() ? std::filesystem::path{} : std::filesystem::path(o.config_path).parent_path();
      auto c = parse_config(doc, dir);
      c.output_dir = base.output_dir;
      runs.push_back(std::move(c));
    }
  } else {
    runs.push_back(base);
  }

  struct Run {
    BatchResult batch;
    OutcomeStats a, b;
  };
  std::vector<Run> results;
  for (const auto& c : runs) {
    Run r{run_batch(c.simulation, true), {}, {}};
    r.a = bootstrap_ci(r.batch.outcomes_A, c.bootstrap);
    r.b = bootstrap_ci(r.batch.outcomes_B, c.bootstrap);
    results.push_back(std::move(r));
  }

  OutputDir out(base.output_dir);
  CsvDocument summary({"sweep_key", "sweep_value", "n_replications", "mean_A", "se_A", "ci_low_A", "ci_high_A",
                       "mean_B", "se_B", "ci_low_B", "ci_high_B", "ci_level"});
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& c = runs[i];
    const auto& r = results[i];
    const auto& ladder = c.simulation.ladder;
    const auto suffix = detail::sweep_suffix(base, i);

    std::vector<std::string> header{"replication", "outcome_A", "outcome_B"};
    for (std::size_t k = 0; k < ladder.size(); ++k) header.push_back("triggers_" + detail::column_name(ladder.name(k)));
    CsvDocument reps(header);
    for (const auto& rep : r.batch.replications) {
      std::vector<std::string> row{fmt_num(rep.replication), fmt_num(rep.outcome_A), fmt_num(rep.outcome_B)};
      for (int t : rep.triggers) row.push_back(std::to_string(t));
      reps.row(row);
    }
    out.write("replications" + suffix + ".csv", reps);

    CsvDocument paths({"replication", "period", "realized_scenario", "wealth_A", "wealth_B", "wealth_B_risk_free"});
    const auto n_paths = std::min(c.wealth_path_samples, r.batch.replications.size());
    for (std::size_t p = 0; p < n_paths; ++p) {
      const auto& rep = r.batch.replications[p];
      for (std::size_t t = 0; t < rep.wealth_A.size(); ++t)
        paths.row(p, t, t == 0 ? std::string() : ladder.name(rep.realized[t - 1]), rep.wealth_A[t], rep.wealth_B[t],
                  rep.wealth_B_risk_free[t]);
    }
    out.write("wealth_paths" + suffix + ".csv", paths);
    out.write("histogram_outcome_A" + suffix + ".csv", detail::histogram_csv(r.batch.outcomes_A, c.histogram_bins));
    out.write("histogram_outcome_B" + suffix + ".csv", detail::histogram_csv(r.batch.outcomes_B, c.histogram_bins));
    out.write("contracts" + suffix + ".json", detail::contracts_json(c.simulation).dump(2) + "\n");

    summary.row(base.sweep ? base.sweep->key : std::string(), base.sweep ? base.sweep->values[i].dump() : std::string(),
                r.a.n, r.a.mean, r.a.standard_error, r.a.ci.lower, r.a.ci.upper, r.b.mean, r.b.standard_error,
                r.b.ci.lower, r.b.ci.upper, r.a.ci.level);

    if (o.render_plots) {
      const auto ha = histogram(r.batch.outcomes_A, c.histogram_bins);
      const auto hb = histogram(r.batch.outcomes_B, c.histogram_bins);
      out.write("plots/outcome_A" + suffix + ".svg", histogram_svg(ha, "Change in A's assets", "outcome_A", &r.a.mean));
      out.write("plots/outcome_B" + suffix + ".svg", histogram_svg(hb, "B vs risk-free", "outcome_B", &r.b.mean));
    }
    log << "run " << i << (base.sweep ? " (" + base.sweep->key + "=" + base.sweep->values[i].dump() + ")" : "")
        << ": mean outcome_A " << fmt_num(r.a.mean) << " [" << fmt_num(r.a.ci.lower) << ", " << fmt_num(r.a.ci.upper)
        << "], mean outcome_B " << fmt_num(r.b.mean) << "\n";
  }
  out.write("summary.csv", summary);
  detail::write_manifest(out, "simulate", base.hash(), base.master_seed, started);
  return kOk;
}

inline int cmd_optimize_prices(const CommonOptions& o, std::ostream& log) {
  const auto started = utc_timestamp();
  const auto cfg = detail::load(o);
  const auto& sim = cfg.simulation;
  const auto rep = optimize_prices(sim, cfg.price_optimizer);

  SimulationConfig at_min = sim, at_opt = sim;
  at_min.prices = rep.floors;
  at_opt.prices = rep.prices;
  const auto batch_min = run_batch(at_min, false);
  const auto batch_opt = run_batch(at_opt, false);

  OutputDir out(cfg.output_dir);
  CsvDocument table({"scenario", "cumulative_probability", "minimum_price", "optimized_price", "allocation_A",
                     "allocation_B"});
  for (std::size_t k = 0; k < sim.ladder.size(); ++k)
    table.row(sim.ladder.name(k), sim.ladder.cumulative(k), rep.floors[k], rep.prices[k], sim.allocation_A[k],
              sim.allocation_B[k]);
  out.write("price_table.csv", table);

  for (const auto& [name, batch] : {std::pair{"minimum_prices", &batch_min}, std::pair{"optimized_prices", &batch_opt}}) {
    CsvDocument doc({"replication", "outcome_A", "outcome_B"});
    for (std::size_t r = 0; r < batch->outcomes_A.size(); ++r) doc.row(r, batch->outcomes_A[r], batch->outcomes_B[r]);
    out.write(std::string("outcomes_") + name + ".csv", doc);
  }

  const double total_years = static_cast<double>(sim.n_periods) * sim.period_years;
  json prices = json::object();
  for (auto k : rep.optimized) prices[sim.ladder.name(k)] = rep.prices[k];
  json report{
      {"objective", rep.objective},
      {"objective_definition", "|mean outcome_A - mean outcome_B|"},
      {"tolerance", rep.tolerance},
      {"within_tolerance", rep.within_tolerance},
      {"evaluations", rep.evaluations},
      {"optimized_prices", prices},
      {"minimum_price_start", {{"mean_A", rep.start.mean_A}, {"mean_B", rep.start.mean_B}, {"gap", rep.start.gap()}}},
      {"optimized", {{"mean_A", rep.best.mean_A}, {"mean_B", rep.best.mean_B}, {"se_A", rep.best.se_A},
                     {"se_B", rep.best.se_B}, {"gap", rep.best.gap()}}},
      {"annualized_outperformance", rep.annualized_outperformance},
      {"annualized_total_return", rep.annualized_total_return},
      {"annualization",
       {{"total_years", total_years},
        {"formula", "((W0 + G + E_B) / (W0 + G))^(1/total_years) - 1, G = n_periods * W0 * ((1+s)^period_years - 1)"},
        {"total_return_formula", "((W0 + G + E_B) / W0)^(1/total_years) - 1"}}},
      {"config", {{"n_replications", sim.n_replications}, {"n_periods", sim.n_periods},
                  {"period_years", sim.period_years}, {"initial_assets", sim.initial_assets},
                  {"risk_free_rate", sim.risk_free_rate},
                  {"upper_discount", sim.adaptation.discounts.upper},
                  {"lower_discount", sim.adaptation.discounts.lower},
                  {"discounts_on", sim.adaptation.flags.discounts_on},
                  {"historical_on", sim.adaptation.flags.historical_on},
                  {"master_seed", sim.master_seed}}}};
  out.write("optimizer_report.json", report.dump(2) + "\n");
  at_opt.prices = rep.prices;
  out.write("contracts.json", detail::contracts_json(at_opt).dump(2) + "\n");
  if (o.render_plots) {
    std::vector<double> opt_prices;
    for (auto k : rep.optimized) opt_prices.push_back(rep.prices[k]);
    out.write("plots/optimized_prices.svg", bars_svg(opt_prices, "Optimized prices", "allocated scenario", "payout multiple"));
    const auto ha = histogram(batch_opt.outcomes_A, cfg.histogram_bins);
    const auto hb = histogram(batch_opt.outcomes_B, cfg.histogram_bins);
    out.write("plots/optimized_outcome_A.svg", histogram_svg(ha, "A at optimized prices", "outcome_A"));
    out.write("plots/optimized_outcome_B.svg", histogram_svg(hb, "B at optimized prices", "outcome_B"));
  }
  detail::write_manifest(out, "optimize-prices", cfg.hash(), cfg.master_seed, started);

  log << "gap |E_A - E_B|: " << fmt_num(rep.start.gap()) << " at minimum prices -> " << fmt_num(rep.objective)
      << " after " << rep.evaluations << " evaluations\n"
      << "annualized outperformance " << fmt_num(rep.annualized_outperformance) << ", total return "
      << fmt_num(rep.annualized_total_return) << "\n";
  return rep.within_tolerance ? kOk : kInfeasible;
}

struct CcbInputs {
  ProjectionTable table;
  YearlySampler sampler;
  std::vector<int> pool_years;
};

// Ingests the projections and checks that every key the run will touch exists.
inline CcbInputs prepare_ccb_inputs(const ExperimentConfig& cfg, const std::string& data_path) {
  if (data_path.empty()) throw ConfigError("structure-ccb needs --data or climate_data.path");
  auto table = ingest_csv(data_path);
  const auto& cd = cfg.climate_data;
  auto scenarios = cd.scenarios.empty() ? table.scenarios(cd.location) : cd.scenarios;
  if (scenarios.empty()) throw CoverageError("no projections for location '" + cd.location + "'");
  int first = std::numeric_limits<int>::max(), last = std::numeric_limits<int>::min();
  for (const auto& s : scenarios)
    for (int y : table.years(cd.location, s)) {
      first = std::min(first, y);
      last = std::max(last, y);
    }
  if (first > last) throw CoverageError("no projections for the configured scenarios at '" + cd.location + "'");
  first = cd.pool_first_year.value_or(first);
  last = cd.pool_last_year.value_or(last);
  if (first > last) throw ConfigError("climate_data pool year range is empty");

  auto gaps = table.missing(cd.location, scenarios, first, last);
  for (auto& g : table.missing(cd.location, scenarios, cfg.ccb.spec.start_year, cfg.ccb.spec.last_year()))
    if (std::find(gaps.begin(), gaps.end(), g) == gaps.end()) gaps.push_back(std::move(g));
  if (!gaps.empty()) {
    std::string msg = std::to_string(gaps.size()) + " missing projection key(s):";
    for (const auto& g : gaps) msg += " " + to_string(g);
    throw CoverageError(msg);
  }
  YearlySampler sampler = cd.scenarios.empty() ? YearlySampler::uniform(scenarios, cd.noise_sigma)
                                               : YearlySampler(cd.scenarios, cd.weights, cd.noise_sigma);
  return {std::move(table), std::move(sampler), year_range(first, last)};
}

inline int cmd_structure_ccb(const CommonOptions& o, std::ostream& log) {
  const auto started = utc_timestamp();
  const auto cfg = detail::load(o);
  const auto data_path = o.data_path.empty() ? cfg.climate_data.path : o.data_path;
  const auto in = prepare_ccb_inputs(cfg, data_path);
  const auto& spec = cfg.ccb.spec;
  const auto& loc = cfg.climate_data.location;

  auto pool_rng = make_stream(cfg.master_seed, StreamKind::pooled);
  const auto pooled = pooled_distribution(in.table, loc, in.pool_years, in.sampler, cfg.climate_data.pooled_samples, pool_rng);
  const auto bins = quantile_bins(pooled, spec.granularity);
  const auto paths = simulate_climate_paths(in.table, loc, in.sampler, spec, cfg.ccb.n_sims, cfg.master_seed, cfg.ccb.sampling);
  const auto rep = optimize_schedule(spec, bins, paths, cfg.ccb.schedule);
  const auto est = expected_npv(rep.schedule, paths, spec, bins);
  const auto fresh_seed = cfg.master_seed + cfg.ccb.evaluation_seed_offset;
  const auto fresh = expected_npv(rep.schedule, in.table, loc, in.sampler, spec, bins, cfg.ccb.n_sims, fresh_seed,
                                  cfg.ccb.sampling);

  std::vector<double> path_means(paths.n_paths);
  std::size_t above = 0;
  for (std::size_t i = 0; i < paths.n_paths; ++i) {
    path_means[i] = paths.path_mean(i);
    if (est.path_npv[i] > rep.target) ++above;
  }
  const double rho = paths.n_paths > 1 ? spearman(path_means, est.path_npv) : 0.0;

  OutputDir out(cfg.output_dir);
  out.write("pooled_histogram.csv", detail::histogram_csv(pooled, cfg.histogram_bins));

  CsvDocument bins_csv({"bin_index", "bottom_label", "lower_edge", "upper_edge"});
  for (std::size_t k = 0; k < bins.count(); ++k)
    bins_csv.row(k, bins.labels[k], k == 0 ? -std::numeric_limits<double>::infinity() : bins.edges[k - 1],
                 k + 1 == bins.count() ? std::numeric_limits<double>::infinity() : bins.edges[k]);
  out.write("bins.csv", bins_csv);

  CsvDocument sched({"bin_index", "bottom_label", "coupon_rate"});
  for (std::size_t k = 0; k < bins.count(); ++k) sched.row(k, bins.labels[k], rep.schedule.rates[k]);
  out.write("schedule.csv", sched);

  CsvDocument totals({"path", "mean_climate_value", "total_return"});
  for (std::size_t i = 0; i < paths.n_paths; ++i) totals.row(i, path_means[i], est.path_npv[i]);
  out.write("total_returns.csv", totals);
  out.write("total_return_histogram.csv", detail::histogram_csv(est.path_npv, cfg.histogram_bins));

  const auto discount = discount_factors(spec.discount_rate, spec.lifetime_years);
  CsvDocument cum({"series", "path", "mean_climate_value", "year_index", "calendar_year", "climate_value", "bin",
                   "coupon_rate", "cumulative_return"});
  {
    double acc = 0.0;
    for (int t = 1; t <= spec.lifetime_years; ++t) {
      acc += spec.market_rate * discount[static_cast<std::size_t>(t - 1)];
      cum.row("traditional", 0, std::string(), t, spec.start_year + t - 1, std::string(), std::string(),
              spec.market_rate, acc);
    }
  }
  for (std::size_t i = 0; i < std::min(cfg.ccb.path_samples, paths.n_paths); ++i) {
    const auto p = paths.path(i);
    double acc = 0.0;
    for (std::size_t t = 0; t < p.size(); ++t) {
      const auto b = bin_of(p[t], bins);
      const double c = coupon_for_bin(static_cast<int>(t + 1), b, rep.schedule, spec);
      acc += c * discount[t];
      cum.row("ccb", i, path_means[i], static_cast<int>(t + 1), spec.start_year + static_cast<int>(t), p[t], b, c, acc);
    }
  }
  out.write("cumulative_paths.csv", cum);

  json report{
      {"target_npv", rep.target},
      {"expected_npv", est.mean},
      {"expected_npv_se", est.standard_error},
      {"fresh_seed", fresh_seed},
      {"fresh_expected_npv", fresh.mean},
      {"fresh_expected_npv_se", fresh.standard_error},
      {"fresh_abs_error", std::abs(fresh.mean - rep.target)},
      {"tolerance", rep.tolerance},
      {"within_tolerance", rep.within_tolerance},
      {"achievable_npv_range", {rep.achievable_low, rep.achievable_high}},
      {"evaluations", rep.evaluations},
      {"schedule", rep.schedule.rates},
      {"bin_edges", bins.edges},
      {"bin_labels", bins.labels},
      {"bins_degenerate", bins.degenerate},
      {"bin_tie_handling", "samples jittered by +U[0,1e-9) to order ties; edges at raw k/G quantile values; coincident edges replaced by the jittered value or the next double and flagged degenerate"},
      {"n_sims", paths.n_paths},
      {"sampling", {{"stratified", cfg.ccb.sampling.stratified}, {"coherent_paths", cfg.ccb.sampling.coherent},
                    {"noise_sigma", in.sampler.sigma()}}},
      {"fraction_paths_above_traditional", static_cast<double>(above) / static_cast<double>(paths.n_paths)},
      {"spearman_climate_vs_return", rho},
      {"pooled_skewness", pooled.size() >= 3 ? skewness(pooled) : 0.0},
      {"conventions", "annual coupons in arrears on unit principal, principal at maturity, annual discounting"}};
  out.write("ccb_report.json", report.dump(2) + "\n");

  if (o.render_plots) {
    const auto hp = histogram(pooled, cfg.histogram_bins);
    out.write("plots/pooled_distribution.svg", histogram_svg(hp, "Pooled climate outcomes", "climate value"));
    out.write("plots/schedule.svg", bars_svg(rep.schedule.rates, "Coupon rate per climate bin", "bin", "rate"));
    const auto ht = histogram(est.path_npv, cfg.histogram_bins);
    out.write("plots/total_returns.svg", histogram_svg(ht, "CCB total return (NPV)", "NPV per unit principal", &rep.target));
  }
  detail::write_manifest(out, "structure-ccb", cfg.hash(), cfg.master_seed, started);

  log << "target NPV " << fmt_num(rep.target) << ", expected " << fmt_num(est.mean) << " (fresh seed "
      << fmt_num(fresh.mean) << "), tolerance " << fmt_num(rep.tolerance) << "\n";
  if (!rep.within_tolerance) {
    log << "schedule search ended outside tolerance\n";
    return kInfeasible;
  }
  return kOk;
}

inline int cmd_ingest(const CommonOptions& o, std::ostream& log) {
  const auto started = utc_timestamp();
  std::string path = o.data_path;
  std::string hash;
  std::uint64_t seed = 0;
  if (!o.config_path.empty() || !o.sets.empty()) {
    const auto cfg = detail::load(o);
    if (path.empty()) path = cfg.climate_data.path;
    hash = cfg.hash();
    seed = cfg.master_seed;
  }
  if (path.empty()) throw ConfigError("ingest needs --data or climate_data.path");
  const auto table = ingest_csv(path);
  const auto cov = coverage(table);

  CsvDocument doc({"location", "scenario", "first_year", "last_year", "n_years", "contiguous"});
  for (const auto& c : cov) doc.row(c.location, c.scenario, c.first_year, c.last_year, c.n_years, c.contiguous);
  log << path << ": " << table.size() << " records, " << cov.size() << " (location, scenario) series\n" << doc.str();
  if (!o.out_dir.empty()) {
    OutputDir out(o.out_dir);
    out.write("coverage.csv", doc);
    out.write("ingest_report.json", json{{"path", path}, {"records", table.size()}, {"series", cov.size()}}.dump(2) + "\n");
    detail::write_manifest(out, "ingest", hash.empty() ? hex64(fnv1a64(path)) : hash, seed, started);
  }
  return kOk;
}

// Entry point shared by the ccf binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Climate-contingent instrument simulation and structuring"};
  app.require_subcommand(1);
  CommonOptions o;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", o.config_path, "Experiment config (JSON)");
    if (needs_config) c->required();
    sub->add_option("--set", o.sets, "Override a config field, key=value (repeatable)");
    sub->add_option("--seed", seed, "Master seed (overrides master_seed)");
    sub->add_option("--out-dir", o.out_dir, "Output directory (overrides output_dir)");
    sub->add_flag("--render-plots", o.render_plots, "Also write SVG charts");
  };
  auto* simulate = app.add_subcommand("simulate", "Run replicated Adapter/Backer simulations");
  add_common(simulate, true);
  auto* optimize = app.add_subcommand("optimize-prices", "Search contract prices that equalize expected outcomes");
  add_common(optimize, true);
  auto* structure = app.add_subcommand("structure-ccb", "Solve a climate-contingent bond coupon schedule");
  add_common(structure, true);
  structure->add_option("--data", o.data_path, "Projection CSV (overrides climate_data.path)");
  auto* ingest = app.add_subcommand("ingest", "Validate a projection CSV and report coverage");
  add_common(ingest, false);
  ingest->add_option("--data", o.data_path, "Projection CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    log << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  for (auto* sub : {simulate, optimize, structure, ingest})
    if (sub->count("--seed")) o.seed = seed;

  try {
    if (*simulate) return cmd_simulate(o, log);
    if (*optimize) return cmd_optimize_prices(o, log);
    if (*structure) return cmd_structure_ccb(o, log);
    return cmd_ingest(o, log);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace ccf::cli
