// Command-line front end: single runs, benchmark campaigns, byte-exact
// replay verification, SVG charting, and map validation.

#include "idionet/episode.hpp"
#include "idionet/experiments.hpp"
#include "idionet/idiotope.hpp"
#include "idionet/records.hpp"
#include "idionet/svgplot.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace idionet;

namespace {

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("IDIONET_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::runtime_error("IDIONET_SEED is not an integer");
    }
  }
  return 1;
}

immune::Matrix resolve_paratope(const std::string& spec, std::string& label) {
  if (auto seed = paratope::seed_for(spec)) {
    label = spec;
    return paratope::initial(*seed);
  }
  // Anything else is read as a matrix file in the idiotope text format.
  label = fs::path(spec).stem().string();
  auto m = idiotope::parse(records::read_file(spec));
  return m;
}

struct RunOptions {
  std::string controller = "I_D";
  std::string world = "m1";
  std::optional<std::uint64_t> seed;
  std::string paratope = "D1";
  std::string idiotope_path;
  std::string out_dir;
  double b = immune::Config{}.b;
  double k1 = immune::Config{}.k1;
  double k2 = immune::Config{}.k2;
  double r_success = rl::Config{}.reward;
  double r_failure = rl::Config{}.penalty;
  double max_time = episode::Config{}.max_time;
};

void add_model_flags(CLI::App* cmd, RunOptions& opt) {
  cmd->add_option("--b", opt.b, "concentration gain");
  cmd->add_option("--k1", opt.k1, "suppression weight");
  cmd->add_option("--k2", opt.k2, "concentration decay");
  cmd->add_option("--r-success", opt.r_success, "reinforcement reward step");
  cmd->add_option("--r-failure", opt.r_failure, "reinforcement penalty step");
  cmd->add_option("--max-time", opt.max_time, "episode time limit, seconds");
  cmd->add_option("--idiotope", opt.idiotope_path,
                  "idiotope matrix file (default: built-in)");
}

episode::Config make_config(const RunOptions& opt) {
  episode::Config cfg;
  cfg.immune.b = opt.b;
  cfg.immune.k1 = opt.k1;
  cfg.immune.k2 = opt.k2;
  cfg.rl.reward = opt.r_success;
  cfg.rl.penalty = opt.r_failure;
  cfg.max_time = opt.max_time;
  if (!opt.idiotope_path.empty())
    cfg.idiotope = idiotope::load(opt.idiotope_path);
  return cfg;
}

int cmd_run(const RunOptions& opt) {
  const auto controller = arbitration::parse_controller(opt.controller);
  if (!controller) {
    std::cerr << "unknown controller '" << opt.controller << "'\n";
    return 1;
  }
  auto src = world::resolve_map_text(opt.world);
  const auto map = world::parse_map(src.text, src.name);
  std::string label;
  const auto paratope0 = resolve_paratope(opt.paratope, label);
  const auto seed = resolve_seed(opt.seed);

  auto record = episode::run_episode(*controller, map, paratope0, label, seed,
                                     make_config(opt));
  record.world_text = src.text;

  std::printf(
      "%s  world=%s  paratope=%s  seed=%llu  %s  t=%.1fs  stalls=%d  "
      "doors=%d  ticks=%llu  alt_rate=%.4f\n",
      record.controller.c_str(), record.world_name.c_str(),
      record.paratope_label.c_str(),
      static_cast<unsigned long long>(record.seed),
      record.completed ? "completed" : "timed out", record.duration,
      record.stalls, record.doors_passed,
      static_cast<unsigned long long>(record.stats.ticks), record.mu_rate());

  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    const fs::path base = fs::path(opt.out_dir) /
                          (record.controller + "_" + record.world_name + "_" +
                           label + "_" + std::to_string(seed));
    records::write_file(base.string() + ".json",
                        records::record_to_json(record).dump(2) + "\n");
    records::write_file(base.string() + ".trace.csv",
                        records::trace_to_csv(record));
    std::printf("wrote %s.json and %s.trace.csv\n", base.string().c_str(),
                base.string().c_str());
  }
  return 0;
}

struct CampaignOptions {
  std::string world = "m1";
  std::optional<std::uint64_t> seed;
  std::string controllers;  // comma list, empty = all
  std::string paratopes;    // comma list, empty = world default
  int runs = 6;
  int jobs = 1;
  std::string out_dir = "campaign_out";
  std::string config_path;
  bool write_records = false;
  RunOptions model;
};

std::vector<std::string> split_list(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Key-value campaign config, one setting per line, '#' comments. `scheme`
// lines override one selector table row:
//   scheme R8 boosted 50 25 12.5 12.5
void apply_config_file(experiments::Campaign& c, const std::string& path) {
  std::istringstream in(records::read_file(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string key;
    if (!(row >> key)) continue;
    const auto fail = [&](const std::string& why) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                               why);
    };
    if (key == "b") row >> c.run_config.immune.b;
    else if (key == "k1") row >> c.run_config.immune.k1;
    else if (key == "k2") row >> c.run_config.immune.k2;
    else if (key == "r_success") row >> c.run_config.rl.reward;
    else if (key == "r_failure") row >> c.run_config.rl.penalty;
    else if (key == "max_time") row >> c.run_config.max_time;
    else if (key == "runs") row >> c.runs_per_paratope;
    else if (key == "base_seed") row >> c.base_seed;
    else if (key == "jobs") row >> c.jobs;
    else if (key == "idiotope") {
      std::string p;
      row >> p;
      c.run_config.idiotope = idiotope::load(p);
    } else if (key == "paratopes") {
      std::string list;
      row >> list;
      c.paratopes.clear();
      for (const auto& name : split_list(list))
        c.paratopes.push_back(experiments::named_paratope(name));
    } else if (key == "controllers") {
      std::string list;
      row >> list;
      c.controllers.clear();
      for (const auto& name : split_list(list)) {
        const auto id = arbitration::parse_controller(name);
        if (!id) fail("unknown controller '" + name + "'");
        c.controllers.push_back(*id);
      }
    } else if (key == "scheme") {
      std::string name, which;
      arbitration::RankShares shares;
      if (!(row >> name >> which >> shares.mu >> shares.ranks[0] >>
            shares.ranks[1] >> shares.ranks[2]))
        fail("scheme needs: <controller> base|boosted <mu> <r1> <r2> <r3>");
      const auto id = arbitration::parse_controller(name);
      if (!id) fail("unknown controller '" + name + "'");
      auto& scheme =
          c.scheme_overrides
              .try_emplace(arbitration::name_of(*id),
                           arbitration::default_scheme(*id))
              .first->second;
      if (which == "base") scheme.base = shares;
      else if (which == "boosted") scheme.boosted = shares;
      else fail("expected base|boosted, got '" + which + "'");
    } else {
      fail("unknown setting '" + key + "'");
    }
    if (row.fail()) fail("bad value for '" + key + "'");
  }
}

void print_summary(const experiments::WorldSummary& s) {
  std::printf("world %s   phi=%s\n", s.world.c_str(),
              s.phi.defined ? records::format_double(s.phi.value).c_str()
                            : "undefined");
  std::printf("%-5s %5s %5s %10s %8s %10s %8s %7s %7s\n", "ctrl", "runs",
              "done", "mean_t", "stalls", "fitness", "alt%", "good%", "bad%");
  for (const auto& c : s.controllers)
    std::printf("%-5s %5d %5d %10.1f %8.2f %10.2f %8.2f %7.1f %7.1f\n",
                c.controller.c_str(), c.runs, c.completed, c.mean_duration,
                c.mean_stalls, c.mean_f, 100.0 * c.mean_mu_rate, c.good_pct,
                c.bad_pct);
  if (!s.significance.empty()) {
    std::printf("\nconfidence that I_D beats each rival (one-tailed):\n");
    std::printf("%-5s %10s %10s %10s\n", "ctrl", "duration", "stalls",
                "fitness");
    std::map<std::string, std::map<std::string, double>> by;
    for (const auto& row : s.significance)
      by[row.controller][row.metric] = row.level_pct;
    for (const auto& [ctrl, metrics] : by) {
      std::printf("%-5s", ctrl.c_str());
      for (const char* m : {"duration", "stalls", "fitness"}) {
        const auto it = metrics.find(m);
        if (it == metrics.end()) std::printf(" %9s?", "");
        else std::printf(" %9.1f%%", it->second);
      }
      std::printf("\n");
    }
  }
}

int cmd_campaign(const CampaignOptions& opt) {
  auto campaign = experiments::default_campaign(opt.world);
  campaign.base_seed = resolve_seed(opt.seed);
  campaign.runs_per_paratope = opt.runs;
  campaign.jobs = opt.jobs;
  campaign.run_config = make_config(opt.model);
  if (!opt.controllers.empty()) {
    campaign.controllers.clear();
    for (const auto& name : split_list(opt.controllers)) {
      const auto id = arbitration::parse_controller(name);
      if (!id) {
        std::cerr << "unknown controller '" << name << "'\n";
        return 1;
      }
      campaign.controllers.push_back(*id);
    }
  }
  if (!opt.paratopes.empty()) {
    campaign.paratopes.clear();
    for (const auto& name : split_list(opt.paratopes))
      campaign.paratopes.push_back(experiments::named_paratope(name));
  }
  if (!opt.config_path.empty()) apply_config_file(campaign, opt.config_path);

  const auto t0 = std::chrono::steady_clock::now();
  auto result = experiments::run_campaign(campaign);
  const auto elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  print_summary(result.summary);
  std::printf("\n%zu runs in %.1fs\n", result.records.size(), elapsed);

  fs::create_directories(opt.out_dir);
  const fs::path out(opt.out_dir);
  records::write_file(out / "summary.json",
                      records::summary_to_json(result.summary).dump(2) + "\n");
  records::write_file(out / "runs.csv",
                      records::runs_to_csv(result.summary));
  if (opt.write_records) {
    fs::create_directories(out / "records");
    for (const auto& rec : result.records) {
      const fs::path base =
          out / "records" /
          (rec.controller + "_" + rec.paratope_label + "_" +
           std::to_string(rec.seed));
      records::write_file(base.string() + ".json",
                          records::record_to_json(rec).dump(2) + "\n");
      records::write_file(base.string() + ".trace.csv",
                          records::trace_to_csv(rec));
    }
  }
  std::printf("wrote %s\n", (out / "summary.json").string().c_str());
  return 0;
}

int cmd_replay(const std::string& record_path) {
  const auto j = nlohmann::json::parse(records::read_file(record_path));
  const auto spec = records::replay_spec_from_json(j);
  auto record = episode::run_episode(spec.controller, spec.map,
                                     spec.initial_paratope,
                                     spec.paratope_label, spec.seed,
                                     spec.config);
  const auto fresh = records::trace_to_csv(record);

  fs::path trace_path = record_path;
  trace_path.replace_extension();  // strip .json
  trace_path += ".trace.csv";
  if (!fs::exists(trace_path)) {
    std::cerr << "no stored trace at " << trace_path << "\n";
    return 1;
  }
  const auto stored = records::read_file(trace_path);

  const auto& res = j.at("result");
  const bool headline_ok =
      record.completed == res.at("completed").get<bool>() &&
      record.duration == res.at("duration").get<double>() &&
      record.stalls == res.at("stalls").get<int>();
  if (fresh == stored && headline_ok) {
    std::printf("MATCH  %s  %zu ticks, %zu trace bytes\n", record_path.c_str(),
                record.trace.size(), fresh.size());
    return 0;
  }
  if (fresh != stored) {
    // locate the first divergent line for the report
    std::istringstream a(stored), b(fresh);
    std::string la, lb;
    int line = 0;
    while (true) {
      const bool ga = static_cast<bool>(std::getline(a, la));
      const bool gb = static_cast<bool>(std::getline(b, lb));
      if (!ga && !gb) break;
      if (la != lb || ga != gb) {
        std::printf("MISMATCH  %s  first divergence at line %d (tick %d)\n",
                    record_path.c_str(), line + 1, line - 1);
        std::printf("  stored: %s\n  replay: %s\n",
                    ga ? la.c_str() : "<eof>", gb ? lb.c_str() : "<eof>");
        return 1;
      }
      ++line;
    }
  }
  std::printf("MISMATCH  %s  headline results differ\n", record_path.c_str());
  return 1;
}

int cmd_plot(const std::string& summary_path, const std::string& out_dir) {
  const auto j = nlohmann::json::parse(records::read_file(summary_path));
  experiments::WorldSummary s;
  s.world = j.at("world").get<std::string>();
  s.phi.value = j.at("phi").at("value").get<double>();
  s.phi.defined = j.at("phi").at("defined").get<bool>();
  for (const auto& c : j.at("controllers")) {
    experiments::ControllerSummary cs;
    cs.controller = c.at("controller").get<std::string>();
    cs.runs = c.at("runs").get<int>();
    cs.completed = c.at("completed").get<int>();
    cs.mean_duration = c.at("mean_duration").get<double>();
    cs.mean_stalls = c.at("mean_stalls").get<double>();
    cs.mean_f = c.at("mean_fitness").get<double>();
    cs.mean_mu_rate = c.at("mean_mu_rate").get<double>();
    cs.good_pct = c.at("good_pct").get<double>();
    cs.bad_pct = c.at("bad_pct").get<double>();
    cs.stalled_tick_share = c.at("stalled_tick_share").get<double>();
    cs.mu_rate_stalled = c.at("mu_rate_stalled").get<double>();
    cs.mu_rate_free = c.at("mu_rate_free").get<double>();
    s.controllers.push_back(cs);
  }
  for (const auto& r : j.at("significance")) {
    experiments::SignificanceRow row;
    row.controller = r.at("controller").get<std::string>();
    row.metric = r.at("metric").get<std::string>();
    row.t = r.at("t").get<double>();
    row.dof = r.at("dof").get<double>();
    row.p = r.at("p").get<double>();
    row.level_pct = r.at("level_pct").get<double>();
    row.significant_95 = r.at("significant_95").get<bool>();
    row.significant_99 = r.at("significant_99").get<bool>();
    row.significant_999 = r.at("significant_999").get<bool>();
    s.significance.push_back(row);
  }
  fs::create_directories(out_dir);
  const fs::path out(out_dir);
  records::write_file(out / "fitness.svg", svg::fitness_chart(s));
  records::write_file(out / "alt_rate.svg", svg::mu_chart(s));
  records::write_file(out / "significance.svg", svg::significance_chart(s));
  std::printf("wrote fitness.svg, alt_rate.svg, significance.svg in %s\n",
              out_dir.c_str());
  return 0;
}

int cmd_validate_map(const std::string& spec) {
  const auto src = world::resolve_map_text(spec);
  const auto map = world::parse_map(src.text, src.name);
  std::printf(
      "%s: ok  walls=%zu obstacles=%zu doors=%zu start=(%.2f, %.2f) "
      "heading=%.2f goal_vertices=%zu\n",
      map.name.c_str(), map.walls.size(), map.obstacles.size(),
      map.doors.size(), map.start.x, map.start.y, map.start_heading,
      map.goal.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"idiotypic-network robot controller testbed"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "run one episode");
  run->add_option("--controller", run_opt.controller,
                  "I_D or R1..R9 (default I_D)");
  run->add_option("--world", run_opt.world, "built-in id (m1, m2) or map file");
  run->add_option("--seed", run_opt.seed,
                  "run seed (default: IDIONET_SEED env, then 1)");
  run->add_option("--paratope", run_opt.paratope,
                  "D1|D2|D3 or a matrix file");
  run->add_option("--out", run_opt.out_dir,
                  "directory for the record JSON and trace CSV");
  add_model_flags(run, run_opt);

  CampaignOptions camp_opt;
  auto* camp = app.add_subcommand("campaign", "run the benchmark protocol");
  camp->add_option("--world", camp_opt.world, "built-in id or map file");
  camp->add_option("--seed", camp_opt.seed,
                   "base seed (default: IDIONET_SEED env, then 1)");
  camp->add_option("--controllers", camp_opt.controllers,
                   "comma list (default: all ten)");
  camp->add_option("--paratopes", camp_opt.paratopes,
                   "comma list of D1|D2|D3 (default: world pairing)");
  camp->add_option("--runs", camp_opt.runs, "repeats per paratope");
  camp->add_option("--jobs", camp_opt.jobs, "worker threads");
  camp->add_option("--out", camp_opt.out_dir, "output directory");
  camp->add_option("--config", camp_opt.config_path,
                   "campaign config file (key value lines)");
  camp->add_flag("--records", camp_opt.write_records,
                 "also write one record JSON + trace CSV per run");
  add_model_flags(camp, camp_opt.model);

  std::string record_path;
  auto* replay = app.add_subcommand(
      "replay", "re-run a record and byte-compare its trace");
  replay->add_option("record", record_path, "record JSON path")->required();

  std::string summary_path, plot_out = "plots";
  auto* plot = app.add_subcommand("plot", "render summary.json to SVG charts");
  plot->add_option("summary", summary_path, "summary JSON path")->required();
  plot->add_option("--out", plot_out, "output directory");

  std::string map_spec;
  auto* vmap = app.add_subcommand("validate-map", "parse and check a map");
  vmap->add_option("map", map_spec, "built-in id or map file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*run) return cmd_run(run_opt);
    if (*camp) return cmd_campaign(camp_opt);
    if (*replay) return cmd_replay(record_path);
    if (*plot) return cmd_plot(summary_path, plot_out);
    if (*vmap) return cmd_validate_map(map_spec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
