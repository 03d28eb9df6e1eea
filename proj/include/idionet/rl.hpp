#pragma once

// Per-tick reinforcement of the paratope matrix.
//
// After an action executes, the before/after sensor summaries are compared
// and a signed score is added to the paratope cell of the antibody that acted
// and the antigen that was dominant when it was chosen. Entries are clamped
// to [0, 1]; repeated failure drives a match to zero, success can rebuild it.

#include "idionet/immune.hpp"
#include "idionet/sensing.hpp"

#include <algorithm>
#include <cmath>

namespace idionet::rl {

struct Config {
  double reward = 0.05;   // magnitude added on success
  double penalty = 0.05;  // magnitude subtracted on failure
};

struct Outcome {
  double score = 0.0;
  bool success = true;  // neutral counts as success
};

inline Outcome evaluate(const sensing::Summary& before, const sensing::Summary& after,
                        int dominant_before, const Config& cfg = {}) {
  const auto antigens_before = sensing::detect_antigens(before);
  const auto antigens_after = sensing::detect_antigens(after);
  const auto has = [](const std::vector<int>& v, int a) {
    return std::find(v.begin(), v.end(), a) != v.end();
  };

  // Ending the tick stalled trumps everything else.
  if (has(antigens_after, sensing::stalled) ||
      has(antigens_after, sensing::blocked_behind))
    return {-cfg.penalty, false};

  const bool cleared = !has(antigens_after, dominant_before);
  const bool urgency_dropped =
      sensing::max_priority(antigens_after) < sensing::max_priority(antigens_before);
  if (cleared || urgency_dropped) return {cfg.reward, true};

  if (dominant_before == sensing::marker_seen && before.blob && after.blob &&
      std::abs(after.blob->bearing) < std::abs(before.blob->bearing))
    return {cfg.reward, true};

  const bool obstacle_context =
      dominant_before == sensing::object_left ||
      dominant_before == sensing::object_centre ||
      dominant_before == sensing::object_right || dominant_before == sensing::confined;
  if (obstacle_context && after.z_min < before.z_min) return {-cfg.penalty, false};

  return {0.0, true};
}

[[nodiscard]] inline immune::Matrix apply(immune::Matrix paratope, int antibody,
                                          int dominant, double score) {
  double v = paratope(antibody, dominant);
  v = std::max(0.0, v + score);
  paratope(antibody, dominant) = std::clamp(v, 0.0, 1.0);
  return paratope;
}

}  // namespace idionet::rl
