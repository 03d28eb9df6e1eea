#include "idionet/experiments.hpp"

#include "idionet/records.hpp"

#include <catch_amalgamated.hpp>

#include <set>
#include <vector>

using namespace idionet;

TEST_CASE("phi is the pooled seconds-per-stall exchange rate") {
  const std::vector<double> t{200.0, 236.0};
  const std::vector<double> sigma{20.0, 22.0};
  const auto phi = experiments::compute_phi(t, sigma);
  REQUIRE(phi.defined);
  REQUIRE(phi.value == Catch::Approx(218.0 / 21.0));

  REQUIRE_FALSE(experiments::compute_phi({}, {}).defined);
  const std::vector<double> none{0.0, 0.0};
  const auto flat = experiments::compute_phi(t, none);
  REQUIRE_FALSE(flat.defined);
  // with no stalls anywhere, fitness degrades to half the duration
  REQUIRE(experiments::fitness(218.0, 21.0, flat) == Catch::Approx(109.0));
}

TEST_CASE("fitness blends time and stalls at the campaign exchange rate") {
  // ten completed runs pooling to 2997 s and 448 stalls
  const std::vector<double> t{218, 305, 280, 413, 337, 266, 297, 301, 290, 290};
  const std::vector<double> sigma{21, 40, 35, 77, 52, 39, 41, 44, 38, 61};
  double sum_t = 0, sum_s = 0;
  for (double v : t) sum_t += v;
  for (double v : sigma) sum_s += v;
  REQUIRE(sum_t == 2997.0);
  REQUIRE(sum_s == 448.0);

  const auto phi = experiments::compute_phi(t, sigma);
  REQUIRE(phi.defined);
  REQUIRE(phi.value == Catch::Approx(2997.0 / 448.0).margin(1e-12));
  // 218 s with 21 stalls: F = (218 + 21 * 2997/448) / 2 exactly
  REQUIRE(experiments::fitness(218.0, 21.0, phi) ==
          Catch::Approx(179.2421875).margin(1e-9));
}

TEST_CASE("classification splits good and bad runs") {
  const std::vector<double> f{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  const auto classes = experiments::classify_runs(f);
  int goods = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    goods += classes[i].good ? 1 : 0;
    REQUIRE(classes[i].bad == (i == 9));  // one slot, worst run only
  }
  REQUIRE(goods == 5);
}

TEST_CASE("boundary ties expand the bad set") {
  const std::vector<double> f{1, 2, 3, 4, 5, 6, 7, 8, 9, 9};
  const auto classes = experiments::classify_runs(f);
  REQUIRE(classes[8].bad);
  REQUIRE(classes[9].bad);
  REQUIRE_FALSE(classes[7].bad);
}

TEST_CASE("tiny and degenerate fitness pools classify sanely") {
  const std::vector<double> two{3.0, 4.0};
  const auto small = experiments::classify_runs(two);
  REQUIRE(small[0].good);   // beats the mean of 3.5
  REQUIRE_FALSE(small[1].good);
  REQUIRE_FALSE(small[0].bad);  // floor(2 * 0.10) = 0 slots
  REQUIRE_FALSE(small[1].bad);

  const std::vector<double> equal(10, 5.0);
  for (const auto& c : experiments::classify_runs(equal)) {
    REQUIRE_FALSE(c.good);  // nothing beats the mean strictly
    REQUIRE(c.bad);         // everything ties the cut line
  }
}

TEST_CASE("the default protocol plans 120 distinct seeded runs") {
  const auto c = experiments::default_campaign("m1");
  REQUIRE(c.map.name == "m1");
  REQUIRE_FALSE(c.map_text.empty());
  REQUIRE(c.paratopes.size() == 2);
  REQUIRE(c.paratopes[0].label == "D1");
  REQUIRE(c.paratopes[1].label == "D2");

  const auto tasks = experiments::plan_runs(c);
  REQUIRE(tasks.size() == 120);
  std::set<std::uint64_t> seeds;
  for (const auto& t : tasks) seeds.insert(t.seed);
  REQUIRE(seeds.size() == 120);

  // planning is pure: the same campaign yields the same seeds
  const auto again = experiments::plan_runs(c);
  for (std::size_t i = 0; i < tasks.size(); ++i)
    REQUIRE(tasks[i].seed == again[i].seed);

  REQUIRE(experiments::default_campaign("m2").paratopes[1].label == "D3");
  REQUIRE_THROWS_AS(experiments::named_paratope("D9"), std::invalid_argument);
}

TEST_CASE("campaign records land in task order with the world attached") {
  auto c = experiments::default_campaign("m1");
  c.controllers = {arbitration::ControllerId::idiotypic,
                   arbitration::ControllerId::r1};
  c.paratopes = {experiments::named_paratope("D1")};
  c.runs_per_paratope = 2;
  c.run_config.max_time = 30.0;

  const auto tasks = experiments::plan_runs(c);
  const auto result = experiments::run_campaign(c);
  REQUIRE(result.records.size() == 4);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    REQUIRE(result.records[i].seed == tasks[i].seed);
    REQUIRE(result.records[i].controller ==
            arbitration::name_of(tasks[i].controller));
    REQUIRE(result.records[i].world_text == c.map_text);
  }
  REQUIRE(result.summary.world == "m1");
  REQUIRE(result.summary.controllers.size() == 2);
  REQUIRE(result.summary.runs.size() == 4);
  for (const auto& row : result.summary.runs)
    if (!row.completed) REQUIRE(row.duration == 30.0);
}

TEST_CASE("worker pools reproduce the serial campaign exactly") {
  auto c = experiments::default_campaign("m1");
  c.controllers = {arbitration::ControllerId::r1,
                   arbitration::ControllerId::r6};
  c.paratopes = {experiments::named_paratope("D2")};
  c.runs_per_paratope = 3;
  c.run_config.max_time = 25.0;

  c.jobs = 1;
  const auto serial = experiments::run_campaign(c);
  c.jobs = 2;
  const auto parallel = experiments::run_campaign(c);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i)
    REQUIRE(records::record_to_json(serial.records[i]) ==
            records::record_to_json(parallel.records[i]));
}

TEST_CASE("scheme overrides reach the named controller") {
  auto c = experiments::default_campaign("m1");
  c.controllers = {arbitration::ControllerId::r1};
  c.paratopes = {experiments::named_paratope("D1")};
  c.runs_per_paratope = 1;
  c.run_config.max_time = 20.0;
  arbitration::Scheme always{arbitration::AltChoice::uniform_other,
                             arbitration::Branch::none,
                             {100.0, {0.0, 0.0, 0.0}},
                             {100.0, {0.0, 0.0, 0.0}}};
  c.scheme_overrides["R1"] = always;

  const auto result = experiments::run_campaign(c);
  REQUIRE(result.records.size() == 1);
  const auto& stats = result.records[0].stats;
  REQUIRE(stats.ticks > 0);
  REQUIRE(stats.mu_count == stats.ticks);  // every tick diverts
}

TEST_CASE("the significance table compares each rival against the baseline") {
  experiments::Campaign c;
  c.map = world::resolve_map("m1");
  c.controllers = {arbitration::ControllerId::idiotypic,
                   arbitration::ControllerId::r1,
                   arbitration::ControllerId::r2};

  auto make = [](const std::string& name, bool completed, double duration,
                 int stalls) {
    episode::RunRecord r;
    r.controller = name;
    r.completed = completed;
    r.duration = duration;
    r.stalls = stalls;
    r.stats.ticks = 100;
    return r;
  };
  std::vector<episode::RunRecord> records;
  records.push_back(make("I_D", true, 100, 1));
  records.push_back(make("I_D", true, 110, 2));
  records.push_back(make("I_D", true, 120, 3));
  records.push_back(make("R1", true, 200, 4));
  records.push_back(make("R1", true, 210, 5));
  records.push_back(make("R1", true, 220, 6));
  records.push_back(make("R2", true, 300, 7));  // one completion: excluded
  records.push_back(make("R2", false, 0, 0));

  const auto summary = experiments::summarize_campaign(c, records);
  REQUIRE(summary.phi.defined);
  REQUIRE(summary.significance.size() == 3);  // R1 x {duration, stalls, fitness}
  for (const auto& row : summary.significance) {
    REQUIRE(row.controller == "R1");
    REQUIRE(row.t < 0.0);  // baseline mean is smaller
    REQUIRE(row.p < 0.05);
    REQUIRE(row.level_pct == Catch::Approx((1.0 - row.p) * 100.0));
    REQUIRE(row.significant_95);
  }
  // per-controller means cover completed runs only
  for (const auto& cs : summary.controllers)
    if (cs.controller == "R2") {
      REQUIRE(cs.runs == 2);
      REQUIRE(cs.completed == 1);
      REQUIRE(cs.mean_duration == Catch::Approx(300.0));
    }
}

TEST_CASE("without a completed baseline there is no significance table") {
  experiments::Campaign c;
  c.map = world::resolve_map("m1");
  c.controllers = {arbitration::ControllerId::idiotypic,
                   arbitration::ControllerId::r1};
  episode::RunRecord incomplete;
  incomplete.controller = "I_D";
  episode::RunRecord done;
  done.controller = "R1";
  done.completed = true;
  done.duration = 50.0;
  done.stalls = 1;
  std::vector<episode::RunRecord> records{incomplete, incomplete, done, done};
  const auto summary = experiments::summarize_campaign(c, records);
  REQUIRE(summary.significance.empty());
}
