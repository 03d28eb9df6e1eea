#pragma once

// Kinematics and sensor models for the 2D world.
//
// The robot is a disc driven by unicycle kinematics, integrated in fixed
// substeps. On any contact with a solid it stops dead for the rest of the
// tick and the tick's movement reads as zero — stalls are how the antigen
// layer learns about collisions. The forward laser sweeps 181 rays from the
// disc centre; the 8 rear sonars are hull-mounted, so their readings measure
// from the body's edge (a rear ring on the perimeter, like the hardware the
// ranges were modeled on). Bearings are pan-style: negative = left.

#include "idionet/actions.hpp"
#include "idionet/geometry.hpp"
#include "idionet/sensing.hpp"
#include "idionet/worldmap.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace idionet::sim {

inline constexpr double kTick = 0.5;          // s, one control cycle
inline constexpr double kSubstep = 0.05;      // s, integration step
inline constexpr double kRobotRadius = 0.25;  // m
inline constexpr int kLaserRays = 181;        // 1-degree steps over [-90, +90]
inline constexpr double kLaserRange = 8.0;    // m
inline constexpr int kSonarRays = 8;
inline constexpr double kSonarRange = 5.0;        // m, measured from the hull
inline constexpr double kCameraFov = std::numbers::pi / 3.0;  // 60 degrees total
inline constexpr double kCameraRange = 6.0;       // m
inline constexpr double kDefaultTimeout = 1800.0;  // s
inline constexpr double kDoorClearance = 0.02;     // m beyond the radius before sealing

struct Pose {
  geom::Vec2 position;
  double heading = 0.0;  // radians, world frame
};

// Pan bearing b (negative = left) maps to world angle heading - b.
inline double ray_world_angle(double heading, double bearing_rad) {
  return heading - bearing_rad;
}

inline double laser_bearing_rad(int ray) {
  return (static_cast<double>(ray) - 90.0) * std::numbers::pi / 180.0;
}

inline std::vector<double> raycast_laser(const Pose& pose,
                                         std::span<const geom::Segment> solids) {
  std::vector<double> ranges(kLaserRays, kLaserRange);
  for (int k = 0; k < kLaserRays; ++k) {
    const geom::Vec2 dir =
        geom::unit_from_angle(ray_world_angle(pose.heading, laser_bearing_rad(k)));
    double best = kLaserRange;
    for (const auto& seg : solids)
      if (auto t = geom::ray_hit(pose.position, dir, seg))
        best = std::min(best, *t);
    ranges[static_cast<std::size_t>(k)] = best;
  }
  return ranges;
}

// Rear offsets from straight-back, spread uniformly over the rear half-plane.
inline double sonar_bearing_rad(int ray) {
  const double step = 180.0 / kSonarRays;  // 22.5 degrees
  const double offset_deg = -90.0 + (static_cast<double>(ray) + 0.5) * step;
  return std::numbers::pi + offset_deg * std::numbers::pi / 180.0;  // pan bearing of the rear ray
}

inline std::array<double, kSonarRays> sonar_rear(
    const Pose& pose, std::span<const geom::Segment> solids,
    double radius = kRobotRadius) {
  std::array<double, kSonarRays> ranges{};
  for (int k = 0; k < kSonarRays; ++k) {
    const geom::Vec2 dir = geom::unit_from_angle(
        ray_world_angle(pose.heading, sonar_bearing_rad(k)));
    double best = radius + kSonarRange;
    for (const auto& seg : solids)
      if (auto t = geom::ray_hit(pose.position, dir, seg))
        best = std::min(best, *t);
    // Hull-mounted: readings start at the body's edge.
    ranges[static_cast<std::size_t>(k)] = std::max(0.0, best - radius);
  }
  return ranges;
}

// Nearest unoccluded marker within range and field of view.
inline std::optional<sensing::Blob> camera_blob(
    const Pose& pose, std::span<const geom::Segment> solids,
    std::span<const geom::Vec2> markers) {
  std::optional<sensing::Blob> best;
  double best_dist = kCameraRange + 1.0;
  for (const auto& marker : markers) {
    const geom::Vec2 rel = marker - pose.position;
    const double dist = geom::norm(rel);
    if (dist > kCameraRange || dist < 1e-9 || dist >= best_dist) continue;
    const double world_ang = std::atan2(rel.y, rel.x);
    const double bearing = -geom::wrap_angle(world_ang - pose.heading);
    if (std::abs(bearing) > kCameraFov / 2.0) continue;
    bool blocked = false;
    for (const auto& seg : solids) {
      if (auto t = geom::segment_hit(pose.position, marker, seg)) {
        if (*t < 1.0 - 1e-6) {
          blocked = true;
          break;
        }
      }
    }
    if (blocked) continue;
    best_dist = dist;
    best = sensing::Blob{bearing, 1e4 / (dist * dist)};
  }
  return best;
}

inline sensing::Summary summarize(const std::vector<double>& laser,
                                  const std::array<double, kSonarRays>& sonar,
                                  std::optional<sensing::Blob> blob,
                                  double distance_moved, int standstill_ticks) {
  sensing::Summary s;
  int min_ray = 0;
  int max_ray = 0;
  double sum = 0.0;
  for (int k = 0; k < kLaserRays; ++k) {
    const double r = laser[static_cast<std::size_t>(k)];
    sum += r;
    if (r < laser[static_cast<std::size_t>(min_ray)]) min_ray = k;
    if (r > laser[static_cast<std::size_t>(max_ray)]) max_ray = k;
  }
  s.z_min = laser[static_cast<std::size_t>(min_ray)];
  s.z_max = laser[static_cast<std::size_t>(max_ray)];
  s.z_av = sum / kLaserRays;
  s.z_min_bearing = laser_bearing_rad(min_ray);
  s.z_max_bearing = laser_bearing_rad(max_ray);
  s.r_min = sensing::subsector_of(static_cast<double>(min_ray) - 90.0);
  double esum = 0.0;
  for (double r : sonar) esum += r;
  s.e_av = esum / kSonarRays;
  s.blob = blob;
  s.distance_moved = distance_moved;
  s.standstill_ticks = standstill_ticks;
  return s;
}

inline Pose integrate(const Pose& pose, const actions::MotorCommand& cmd, double dt) {
  Pose next;
  next.position.x = pose.position.x + cmd.linear * std::cos(pose.heading) * dt;
  next.position.y = pose.position.y + cmd.linear * std::sin(pose.heading) * dt;
  next.heading = geom::wrap_angle(pose.heading + cmd.angular * dt);
  return next;
}

inline bool penetrates(const geom::Vec2& p, std::span<const geom::Segment> solids,
                       double radius) {
  for (const auto& seg : solids)
    if (geom::distance_to_segment(p, seg) < radius - 1e-9) return true;
  return false;
}

struct StepOutcome {
  Pose pose;
  bool collided = false;
  double displacement = 0.0;        // 0 when the tick ended in contact
  std::vector<geom::Vec2> path;     // substep waypoints, for door bookkeeping
};

inline StepOutcome step(const Pose& start, const actions::MotorCommand& cmd,
                        std::span<const geom::Segment> solids,
                        double duration = kTick, double radius = kRobotRadius) {
  StepOutcome out;
  out.path.push_back(start.position);
  Pose cur = start;
  const int substeps = std::max(1, static_cast<int>(std::lround(duration / kSubstep)));
  for (int i = 0; i < substeps; ++i) {
    Pose proposed = integrate(cur, cmd, kSubstep);
    if (!penetrates(proposed.position, solids, radius)) {
      cur = proposed;
      out.path.push_back(cur.position);
      continue;
    }
    // Stop at contact: bisect the substep for the largest collision-free
    // fraction. Position within a substep is linear in dt (heading updates
    // after translation), so bisection converges cleanly.
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 40; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (penetrates(integrate(cur, cmd, kSubstep * mid).position, solids, radius))
        hi = mid;
      else
        lo = mid;
    }
    cur = integrate(cur, cmd, kSubstep * lo);
    out.path.push_back(cur.position);
    out.collided = true;
    break;
  }
  out.pose = cur;
  out.displacement = out.collided ? 0.0 : geom::norm(cur.position - start.position);
  return out;
}

// A live world: the immutable map plus per-episode door state and the solid
// segment cache. Copies of the map are cheap, so each episode owns one.
class Arena {
 public:
  explicit Arena(world::Map map) : map_(std::move(map)) {
    blocked_.assign(map_.doors.size(), false);
    pending_.assign(map_.doors.size(), false);
    rebuild_solids();
  }

  const world::Map& map() const { return map_; }
  std::span<const geom::Segment> solids() const { return solids_; }
  const std::vector<geom::Vec2>& markers() const { return markers_; }
  bool door_blocked(std::size_t i) const { return blocked_.at(i); }
  int doors_passed() const {
    int n = 0;
    for (bool b : blocked_) n += b ? 1 : 0;
    return n;
  }

  // Sealing is idempotent.
  void block_door(std::size_t i) {
    if (blocked_.at(i)) return;
    blocked_[i] = true;
    pending_[i] = false;
    rebuild_solids();
  }

  // Feed every substep waypoint of a tick through the door state machine: a
  // crossing from the `from` side arms the door, and it seals once the robot
  // is clear of the segment so the new wall can't trap the body.
  void process_motion(std::span<const geom::Vec2> path, double radius) {
    for (std::size_t d = 0; d < map_.doors.size(); ++d) {
      if (blocked_[d]) continue;
      const auto& seg = map_.doors[d].segment;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const double before = geom::side_of(seg, path[i]);
        const double after = geom::side_of(seg, path[i + 1]);
        if (before > 0.0 && after <= 0.0 &&
            geom::segment_hit(path[i], path[i + 1], seg))
          pending_[d] = true;
        else if (before <= 0.0 && after > 0.0 &&
                 geom::segment_hit(path[i], path[i + 1], seg))
          pending_[d] = false;  // backed out before the seal landed
      }
      if (pending_[d] && !path.empty() &&
          geom::side_of(seg, path.back()) <= 0.0 &&
          geom::distance_to_segment(path.back(), seg) >
              radius + kDoorClearance) {
        block_door(d);
      }
    }
  }

 private:
  void rebuild_solids() {
    solids_.clear();
    solids_.insert(solids_.end(), map_.walls.begin(), map_.walls.end());
    for (const auto& poly : map_.obstacles)
      for (std::size_t i = 0; i < poly.size(); ++i)
        solids_.push_back({poly[i], poly[(i + 1) % poly.size()]});
    markers_.clear();
    for (std::size_t d = 0; d < map_.doors.size(); ++d) {
      if (blocked_[d])
        solids_.push_back(map_.doors[d].segment);
      else
        markers_.push_back(map_.doors[d].marker);
    }
  }

  world::Map map_;
  std::vector<bool> blocked_;
  std::vector<bool> pending_;
  std::vector<geom::Segment> solids_;
  std::vector<geom::Vec2> markers_;
};

}  // namespace idionet::sim
