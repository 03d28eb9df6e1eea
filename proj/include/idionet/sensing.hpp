#pragma once

// Antigen extraction from one tick's sensor summary.
//
// Bearings follow the pan convention used throughout: negative = left of the
// robot's heading, positive = right, zero = dead ahead.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace idionet::sensing {

inline constexpr double kObjectDistance = 0.55;  // laser minimum below this flags a nearby object
inline constexpr double kClutterAverage = 0.45;  // laser average below this flags an enclosed spot
inline constexpr double kRearBlocked = 0.35;     // rear sonar average below this flags a blocked rear
inline constexpr double kMoveEpsilon = 1e-4;     // per-tick displacement treated as standing still

enum Antigen : int {
  object_left = 0,
  object_centre = 1,
  object_right = 2,
  clear_ahead = 3,
  confined = 4,
  stalled = 5,
  blocked_behind = 6,
  marker_seen = 7,
};

// Urgency ranks; higher wins dominance, index breaks ties.
inline constexpr std::array<int, 8> kPriority{2, 2, 2, 0, 3, 4, 5, 1};

struct Blob {
  double bearing = 0.0;  // radians, negative = left
  double area = 0.0;     // pixels-equivalent apparent size
};

struct Summary {
  double z_min = 0.0;  // laser minimum, m
  double z_av = 0.0;   // laser average, m
  double z_max = 0.0;  // laser maximum, m
  int r_min = 1;       // forward subsector (1..6) holding the laser minimum
  double z_min_bearing = 0.0;  // radians
  double z_max_bearing = 0.0;  // radians
  double e_av = 0.0;           // rear sonar average, m
  std::optional<Blob> blob;
  double distance_moved = 0.0;  // m since the previous tick
  int standstill_ticks = 0;     // consecutive ticks (incl. latest) without movement
};

// Forward subsectors split [-90 deg, +90 deg] into six 30-degree slices,
// numbered 1..6 left to right; the +90 edge belongs to slice 6.
inline int subsector_of(double bearing_deg) {
  const int idx = 1 + static_cast<int>(std::floor((bearing_deg + 90.0) / 30.0));
  return std::clamp(idx, 1, 6);
}

inline std::vector<int> detect_antigens(const Summary& s) {
  std::vector<int> out;
  if (s.z_min < kObjectDistance) {
    if (s.r_min <= 2)
      out.push_back(object_left);
    else if (s.r_min <= 4)
      out.push_back(object_centre);
    else
      out.push_back(object_right);
  }
  out.push_back(s.z_av >= kClutterAverage ? clear_ahead : confined);
  if (s.standstill_ticks >= 2) {
    out.push_back(stalled);
    if (s.e_av < kRearBlocked) out.push_back(blocked_behind);
  }
  if (s.blob) out.push_back(marker_seen);
  return out;  // built in ascending antigen order
}

inline int dominant_of(const std::vector<int>& presenting) {
  if (presenting.empty())
    throw std::invalid_argument("dominant_of: empty presenting set");
  int best = presenting.front();
  for (int a : presenting)
    if (kPriority[static_cast<std::size_t>(a)] >
        kPriority[static_cast<std::size_t>(best)])
      best = a;
  return best;
}

inline int max_priority(const std::vector<int>& presenting) {
  int best = -1;
  for (int a : presenting)
    best = std::max(best, kPriority[static_cast<std::size_t>(a)]);
  return best;
}

}  // namespace idionet::sensing
