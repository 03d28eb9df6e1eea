#pragma once

// One navigation episode: sense -> antigens -> reinforce last action ->
// select -> drive, at 0.5 s per cycle, until the goal region is entered or
// the time budget runs out. All randomness comes from one stream seeded by
// the run seed, so a record replays byte-for-byte.

#include "idionet/actions.hpp"
#include "idionet/arbitration.hpp"
#include "idionet/idiotope.hpp"
#include "idionet/rl.hpp"
#include "idionet/rng.hpp"
#include "idionet/sensing.hpp"
#include "idionet/simulator.hpp"
#include "idionet/worldmap.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace idionet::episode {

struct Config {
  idionet::immune::Config immune;
  idionet::rl::Config rl;
  double max_time = sim::kDefaultTimeout;        // s
  idionet::immune::Matrix idiotope;              // defaults to the canonical matrix
  std::optional<arbitration::Scheme> scheme_override;

  Config() : idiotope(idionet::idiotope::canonical()) {}
};

struct TickTrace {
  double t = 0.0;  // s at tick start
  std::vector<int> presenting;
  int dominant = -1;
  int alpha = 0;
  int chosen = 0;
  bool mu_event = false;
  bool stalled = false;   // a stall antigen presented this tick
  double reward = 0.0;    // reinforcement earned by this tick's action
  sim::Pose pose;         // end-of-tick pose
};

struct RunRecord {
  std::string controller;
  std::string world_name;
  std::string world_text;
  std::uint64_t seed = 0;
  std::string paratope_label;
  immune::Matrix initial_paratope;
  Config config;

  bool completed = false;
  double duration = 0.0;  // s, valid when completed
  int stalls = 0;         // stall onset events
  int doors_passed = 0;
  int concentration_resets = 0;
  arbitration::SelectionStats stats;
  std::vector<TickTrace> trace;

  double mu_rate() const { return stats.mu_rate(); }
};

// Test/diagnostic hook, invoked after each tick.
struct TickView {
  int tick;
  const sensing::Summary& summary;
  const std::vector<int>& presenting;
  int dominant;
  const arbitration::Selection& selection;
  const immune::Concentrations* concentrations;  // null for R controllers
  const immune::Matrix& paratope;
  const sim::Pose& pose;
  bool collided;
};
using TickObserver = std::function<void(const TickView&)>;

inline bool has_stall_antigen(const std::vector<int>& presenting) {
  return std::find(presenting.begin(), presenting.end(), sensing::stalled) !=
             presenting.end() ||
         std::find(presenting.begin(), presenting.end(),
                   sensing::blocked_behind) != presenting.end();
}

inline RunRecord run_episode(arbitration::ControllerId controller_id,
                             const world::Map& map,
                             immune::Matrix initial_paratope,
                             std::string paratope_label, std::uint64_t seed,
                             const Config& cfg,
                             const TickObserver& observer = {}) {
  cfg.immune.validate();
  RunRecord rec;
  rec.controller = arbitration::name_of(controller_id);
  rec.world_name = map.name;
  rec.seed = seed;
  rec.paratope_label = std::move(paratope_label);
  rec.initial_paratope = initial_paratope;
  rec.config = cfg;

  sim::Arena arena(map);
  sim::Pose pose{map.start, map.start_heading};
  immune::Matrix paratope = std::move(initial_paratope);
  arbitration::Controller controller(controller_id, cfg.immune, cfg.idiotope,
                                     cfg.scheme_override);
  Rng rng(seed);

  sensing::Summary prev_summary;
  std::vector<int> prev_presenting;
  int prev_dominant = -1;
  int prev_chosen = -1;
  bool last_failed = false;
  double last_move = 1.0;  // pre-run sentinel: "was moving"
  int zero_streak = 0;
  bool was_stalled = false;

  const auto max_ticks =
      static_cast<std::int64_t>(std::floor(cfg.max_time / sim::kTick + 1e-9));
  for (std::int64_t tick = 0; tick < max_ticks; ++tick) {
    const auto laser = sim::raycast_laser(pose, arena.solids());
    const auto sonar = sim::sonar_rear(pose, arena.solids());
    const auto blob = sim::camera_blob(pose, arena.solids(), arena.markers());
    const sensing::Summary summary =
        sim::summarize(laser, sonar, blob, last_move, zero_streak);

    auto presenting = sensing::detect_antigens(summary);
    if (presenting.empty()) presenting.push_back(sensing::clear_ahead);
    const int dominant = sensing::dominant_of(presenting);

    if (tick > 0) {
      const auto outcome = rl::evaluate(prev_summary, summary, prev_dominant, cfg.rl);
      paratope = rl::apply(std::move(paratope), prev_chosen, prev_dominant,
                           outcome.score);
      rec.trace.back().reward = outcome.score;
      last_failed = !outcome.success;
    }

    const bool window = has_stall_antigen(presenting) ||
                        (tick > 0 && has_stall_antigen(prev_presenting));
    const auto selection =
        controller.choose(paratope, presenting, dominant, last_failed, window, rng);
    arbitration::record(controller.stats(), selection.chosen, selection.alpha,
                        window);
    if (selection.concentration_reset) ++rec.concentration_resets;

    const bool stalled_now = has_stall_antigen(presenting);
    if (stalled_now && !was_stalled) ++rec.stalls;
    was_stalled = stalled_now;

    const auto cmd = actions::command_for(selection.chosen, summary);
    const auto moved = sim::step(pose, cmd, arena.solids());
    arena.process_motion(moved.path, sim::kRobotRadius);
    pose = moved.pose;
    last_move = moved.displacement;
    zero_streak = last_move < sensing::kMoveEpsilon ? zero_streak + 1 : 0;

    rec.trace.push_back({static_cast<double>(tick) * sim::kTick, presenting,
                         dominant, selection.alpha, selection.chosen,
                         selection.mu_event, stalled_now, 0.0, pose});

    if (observer) {
      const auto* conc = controller.network()
                             ? &controller.network()->concentrations()
                             : nullptr;
      observer(TickView{static_cast<int>(tick), summary, presenting, dominant,
                        selection, conc, paratope, pose, moved.collided});
    }

    prev_summary = summary;
    prev_presenting = std::move(presenting);
    prev_dominant = dominant;
    prev_chosen = selection.chosen;

    if (geom::point_in_polygon(map.goal, pose.position)) {
      rec.completed = true;
      rec.duration = static_cast<double>(tick + 1) * sim::kTick;
      break;
    }
  }

  rec.doors_passed = arena.doors_passed();
  rec.stats = controller.stats();
  return rec;
}

}  // namespace idionet::episode
