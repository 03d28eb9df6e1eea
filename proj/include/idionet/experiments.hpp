#pragma once

// Campaign harness: seeded batches of runs per controller, fitness and
// classification bookkeeping, and the significance table against the
// idiotypic controller.
//
// Fitness blends completion time with stall count: F = (T + phi * sigma) / 2,
// where phi = mean(T) / mean(sigma) over every completed run in the world, so
// one stall costs about the world's average seconds-per-stall. Lower is
// better. A run is "good" when it beats the world's mean F; the worst tenth
// (ties included) is "bad".

#include "idionet/episode.hpp"
#include "idionet/paratope.hpp"
#include "idionet/stats.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace idionet::experiments {

struct PhiResult {
  double value = 0.0;
  bool defined = false;
};

// phi over completed runs only; all-zero stall counts leave it undefined and
// fitness degrades to T / 2.
inline PhiResult compute_phi(std::span<const double> durations,
                             std::span<const double> stall_counts) {
  if (durations.empty() || durations.size() != stall_counts.size()) return {};
  const double mean_sigma = stats::mean(stall_counts);
  if (mean_sigma <= 0.0) return {0.0, false};
  return {stats::mean(durations) / mean_sigma, true};
}

inline double fitness(double duration, double stall_count, const PhiResult& phi) {
  return 0.5 * (duration + phi.value * stall_count);
}

struct RunClass {
  bool good = false;
  bool bad = false;
};

// Good: strictly better than the mean F. Bad: the worst tenth by F, with
// boundary ties expanding the bad set.
inline std::vector<RunClass> classify_runs(std::span<const double> f) {
  std::vector<RunClass> out(f.size());
  if (f.empty()) return out;
  const double mean_f = stats::mean(f);
  std::vector<double> sorted(f.begin(), f.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const auto slots = static_cast<std::size_t>(
      std::floor(static_cast<double>(f.size()) * 0.10));
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i].good = f[i] < mean_f;
    if (slots > 0) out[i].bad = f[i] >= sorted[slots - 1];
  }
  return out;
}

struct ParatopeSpec {
  std::string label;
  std::uint64_t seed = 0;
};

inline ParatopeSpec named_paratope(const std::string& label) {
  if (auto seed = paratope::seed_for(label)) return {label, *seed};
  throw std::invalid_argument("unknown paratope label '" + label + "'");
}

struct Campaign {
  world::Map map;
  std::string map_text;
  std::vector<arbitration::ControllerId> controllers{
      arbitration::kAllControllers.begin(), arbitration::kAllControllers.end()};
  std::vector<ParatopeSpec> paratopes;
  int runs_per_paratope = 6;
  std::uint64_t base_seed = 1;
  episode::Config run_config;
  std::map<std::string, arbitration::Scheme> scheme_overrides;
  int jobs = 1;
};

// The default benchmark protocol: every controller, two initial paratopes,
// six repeats each. m1 pairs seeds D1/D2, m2 pairs D1/D3.
inline Campaign default_campaign(const std::string& world_spec) {
  Campaign c;
  auto src = world::resolve_map_text(world_spec);
  c.map = world::parse_map(src.text, src.name);
  c.map_text = std::move(src.text);
  if (c.map.name == "m2")
    c.paratopes = {named_paratope("D1"), named_paratope("D3")};
  else
    c.paratopes = {named_paratope("D1"), named_paratope("D2")};
  return c;
}

struct RunTask {
  arbitration::ControllerId controller;
  ParatopeSpec paratope;
  int repeat = 0;
  std::uint64_t seed = 0;
};

inline std::vector<RunTask> plan_runs(const Campaign& c) {
  std::vector<RunTask> tasks;
  for (std::size_t ci = 0; ci < c.controllers.size(); ++ci)
    for (const auto& pt : c.paratopes)
      for (int rep = 0; rep < c.runs_per_paratope; ++rep)
        tasks.push_back({c.controllers[ci], pt, rep,
                         derive_seed(c.base_seed, ci, pt.seed,
                                     static_cast<std::uint64_t>(rep))});
  return tasks;
}

struct RunRow {
  std::string controller;
  std::string paratope;
  std::uint64_t seed = 0;
  bool completed = false;
  double duration = 0.0;
  int stalls = 0;
  double f = 0.0;  // valid when completed
  double mu_rate = 0.0;
  bool good = false;
  bool bad = false;
};

struct ControllerSummary {
  std::string controller;
  int runs = 0;
  int completed = 0;
  double mean_duration = 0.0;
  double mean_stalls = 0.0;
  double mean_f = 0.0;
  double mean_mu_rate = 0.0;
  double good_pct = 0.0;
  double bad_pct = 0.0;
  double stalled_tick_share = 0.0;  // fraction of ticks inside a stall window
  double mu_rate_stalled = 0.0;
  double mu_rate_free = 0.0;
};

struct SignificanceRow {
  std::string controller;  // compared against I_D
  std::string metric;      // duration | stalls | fitness
  double t = 0.0;
  double dof = 0.0;
  double p = 0.5;          // H1: mean(I_D) < mean(controller)
  double level_pct = 50.0;  // (1 - p) * 100
  bool significant_95 = false;
  bool significant_99 = false;
  bool significant_999 = false;
};

struct WorldSummary {
  std::string world;
  PhiResult phi;
  std::vector<ControllerSummary> controllers;
  std::vector<SignificanceRow> significance;
  std::vector<RunRow> runs;
};

struct CampaignResult {
  WorldSummary summary;
  std::vector<episode::RunRecord> records;
};

inline episode::RunRecord execute_task(const Campaign& c, const RunTask& task) {
  episode::Config cfg = c.run_config;
  const auto it = c.scheme_overrides.find(arbitration::name_of(task.controller));
  if (it != c.scheme_overrides.end()) cfg.scheme_override = it->second;
  auto record = episode::run_episode(
      task.controller, c.map, paratope::initial(task.paratope.seed),
      task.paratope.label, task.seed, cfg);
  record.world_text = c.map_text;
  return record;
}

inline WorldSummary summarize_campaign(const Campaign& c,
                                       const std::vector<episode::RunRecord>& records) {
  WorldSummary summary;
  summary.world = c.map.name;

  std::vector<double> completed_t, completed_sigma;
  for (const auto& r : records)
    if (r.completed) {
      completed_t.push_back(r.duration);
      completed_sigma.push_back(static_cast<double>(r.stalls));
    }
  summary.phi = compute_phi(completed_t, completed_sigma);

  std::vector<double> completed_f;
  for (const auto& r : records)
    if (r.completed)
      completed_f.push_back(
          fitness(r.duration, static_cast<double>(r.stalls), summary.phi));
  const auto classes = classify_runs(completed_f);

  std::size_t fi = 0;
  for (const auto& r : records) {
    RunRow row;
    row.controller = r.controller;
    row.paratope = r.paratope_label;
    row.seed = r.seed;
    row.completed = r.completed;
    row.duration = r.completed ? r.duration : r.config.max_time;
    row.stalls = r.stalls;
    row.mu_rate = r.mu_rate();
    if (r.completed) {
      row.f = completed_f[fi];
      row.good = classes[fi].good;
      row.bad = classes[fi].bad;
      ++fi;
    }
    summary.runs.push_back(std::move(row));
  }

  std::map<std::string, std::vector<const episode::RunRecord*>> by_controller;
  for (const auto& r : records) by_controller[r.controller].push_back(&r);

  std::map<std::string, std::vector<double>> t_samples, sigma_samples, f_samples;
  for (const auto& id : c.controllers) {
    const auto name = arbitration::name_of(id);
    ControllerSummary cs;
    cs.controller = name;
    std::int64_t ticks = 0, mu = 0, stalled_ticks = 0, mu_stalled = 0;
    int goods = 0, bads = 0;
    double sum_t = 0, sum_sigma = 0, sum_f = 0, sum_mu = 0;
    for (const auto* r : by_controller[name]) {
      ++cs.runs;
      ticks += r->stats.ticks;
      mu += r->stats.mu_count;
      stalled_ticks += r->stats.stalled_ticks;
      mu_stalled += r->stats.mu_count_stalled;
      if (!r->completed) continue;
      ++cs.completed;
      sum_t += r->duration;
      sum_sigma += r->stalls;
      const double f = fitness(r->duration, static_cast<double>(r->stalls), summary.phi);
      sum_f += f;
      sum_mu += r->mu_rate();
      t_samples[name].push_back(r->duration);
      sigma_samples[name].push_back(static_cast<double>(r->stalls));
      f_samples[name].push_back(f);
    }
    for (const auto& row : summary.runs)
      if (row.controller == name && row.completed) {
        goods += row.good ? 1 : 0;
        bads += row.bad ? 1 : 0;
      }
    if (cs.completed > 0) {
      cs.mean_duration = sum_t / cs.completed;
      cs.mean_stalls = sum_sigma / cs.completed;
      cs.mean_f = sum_f / cs.completed;
      cs.mean_mu_rate = sum_mu / cs.completed;
      cs.good_pct = 100.0 * goods / cs.completed;
      cs.bad_pct = 100.0 * bads / cs.completed;
    }
    if (ticks > 0) {
      cs.stalled_tick_share = static_cast<double>(stalled_ticks) / ticks;
      arbitration::SelectionStats agg{ticks, mu, stalled_ticks, mu_stalled};
      cs.mu_rate_stalled = agg.mu_rate_stalled();
      cs.mu_rate_free = agg.mu_rate_free();
    }
    summary.controllers.push_back(std::move(cs));
  }

  const std::string base = arbitration::name_of(arbitration::ControllerId::idiotypic);
  if (t_samples.count(base) && t_samples[base].size() >= 2) {
    for (const auto& id : c.controllers) {
      const auto name = arbitration::name_of(id);
      if (name == base || t_samples[name].size() < 2) continue;
      const std::array<std::pair<std::string, const std::map<std::string, std::vector<double>>*>, 3>
          metrics{{{"duration", &t_samples}, {"stalls", &sigma_samples}, {"fitness", &f_samples}}};
      for (const auto& [metric, samples] : metrics) {
        const auto w = stats::welch_less(samples->at(base), samples->at(name));
        summary.significance.push_back({name, metric, w.t, w.dof, w.p,
                                        (1.0 - w.p) * 100.0, w.significant_95,
                                        w.significant_99, w.significant_999});
      }
    }
  }
  return summary;
}

// Runs are independent, so they parcel out to a small worker pool; records
// land in task order regardless of scheduling, keeping campaign outputs
// deterministic for a given base seed.
inline CampaignResult run_campaign(const Campaign& c) {
  const auto tasks = plan_runs(c);
  std::vector<episode::RunRecord> records(tasks.size());
  const int jobs = std::max(1, c.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      records[i] = execute_task(c, tasks[i]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < tasks.size();
           i = next.fetch_add(1))
        records[i] = execute_task(c, tasks[i]);
    };
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  return {summarize_campaign(c, records), std::move(records)};
}

}  // namespace idionet::experiments
