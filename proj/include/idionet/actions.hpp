#pragma once

// The sixteen antibody behaviors and their motor commands.

#include "idionet/sensing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string_view>

namespace idionet::actions {

inline constexpr double kMaxLinearSpeed = 2.0;          // m/s, "M"
inline constexpr double kMaxTurnRate = std::numbers::pi / 2.0;      // rad/s
inline constexpr double kSteerGain = 2.0;               // rad/s per rad of bearing error

struct MotorCommand {
  double linear = 0.0;   // m/s
  double angular = 0.0;  // rad/s, positive = counterclockwise (left)
};

enum class Kind {
  fixed,         // constant turn rate and speed
  seek_open,     // steer toward the longest laser return
  avoid_near,    // steer away from the shortest laser return
  track_marker,  // steer toward the camera blob
};

struct Action {
  int id;
  std::string_view name;
  Kind kind;
  double angular_dps;  // fixed kinds only
  double linear_mps;
};

inline const std::array<Action, 16>& catalogue() {
  static const std::array<Action, 16> table{{
      {0, "reverse_spin_right", Kind::fixed, -90.0, -0.15},
      {1, "bear_right_slow", Kind::fixed, -15.0, 0.06},
      {2, "bear_left_slow", Kind::fixed, 15.0, 0.06},
      {3, "ahead_fast", Kind::fixed, 0.0, kMaxLinearSpeed / 2.0},
      {4, "veer_left_fast", Kind::fixed, 15.0, kMaxLinearSpeed / 2.0},
      {5, "veer_right_fast", Kind::fixed, -15.0, kMaxLinearSpeed / 2.0},
      {6, "turn_right_slow", Kind::fixed, -35.0, 0.06},
      {7, "turn_left_slow", Kind::fixed, 35.0, 0.06},
      {8, "turn_left_fast", Kind::fixed, 35.0, kMaxLinearSpeed / 2.0},
      {9, "turn_right_fast", Kind::fixed, -35.0, kMaxLinearSpeed / 2.0},
      {10, "reverse_spin_left", Kind::fixed, 90.0, -0.15},
      {11, "seek_open", Kind::seek_open, 0.0, kMaxLinearSpeed},
      {12, "avoid_near", Kind::avoid_near, 0.0, kMaxLinearSpeed / 2.0},
      {13, "track_marker", Kind::track_marker, 0.0, kMaxLinearSpeed},
      {14, "reverse_right", Kind::fixed, -25.0, -0.15},
      {15, "reverse_left", Kind::fixed, 25.0, -0.15},
  }};
  return table;
}

// Bearing sign is pan-style (negative = left); a left target therefore needs
// a positive (counterclockwise) turn rate, hence the sign flip.
inline double steer_toward(double bearing_rad) {
  return std::clamp(-kSteerGain * bearing_rad, -kMaxTurnRate, kMaxTurnRate);
}

inline double steer_away(double bearing_rad) { return -steer_toward(bearing_rad); }

inline MotorCommand command_for(const Action& action, const sensing::Summary& s) {
  switch (action.kind) {
    case Kind::seek_open:
      return {action.linear_mps, steer_toward(s.z_max_bearing)};
    case Kind::avoid_near:
      return {action.linear_mps, steer_away(s.z_min_bearing)};
    case Kind::track_marker:
      return {action.linear_mps, s.blob ? steer_toward(s.blob->bearing) : 0.0};
    case Kind::fixed:
    default: {
      const double w = action.angular_dps * std::numbers::pi / 180.0;
      const double v =
          std::clamp(action.linear_mps, -kMaxLinearSpeed, kMaxLinearSpeed);
      return {v, std::clamp(w, -kMaxTurnRate, kMaxTurnRate)};
    }
  }
}

inline MotorCommand command_for(int antibody, const sensing::Summary& s) {
  return command_for(catalogue()[static_cast<std::size_t>(antibody)], s);
}

}  // namespace idionet::actions
