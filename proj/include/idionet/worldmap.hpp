#pragma once

// World maps: walls, convex obstacle footprints, marked doorways, start pose
// and goal region.
//
// Plain-text format, one directive per line, '#' starts a comment:
//   wall x1 y1 x2 y2
//   obstacle n x1 y1 ... xn yn
//   door x1 y1 x2 y2 from to
//   start x y heading
//   goal n x1 y1 ... xn yn
// Doors are directed: the `from` room lies on the LEFT of the segment
// (x1,y1)->(x2,y2); a robot crossing left-to-right has passed through and the
// doorway is then sealed behind it. Door midpoints carry the camera markers.

#include "idionet/geometry.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace idionet::world {

struct Door {
  geom::Segment segment;
  geom::Vec2 marker;  // midpoint of the doorway
  std::string from;
  std::string to;
};

struct Map {
  std::string name;
  std::vector<geom::Segment> walls;
  std::vector<std::vector<geom::Vec2>> obstacles;
  std::vector<Door> doors;
  geom::Vec2 start;
  double start_heading = 0.0;
  std::vector<geom::Vec2> goal;
  bool has_start = false;

  void validate() const {
    if (!has_start) throw std::invalid_argument("map: missing start pose");
    if (goal.size() < 3) throw std::invalid_argument("map: goal polygon needs >= 3 points");
    if (walls.empty()) throw std::invalid_argument("map: no walls");
    for (const auto& poly : obstacles)
      if (poly.size() < 3)
        throw std::invalid_argument("map: obstacle polygon needs >= 3 points");
    for (const auto& d : doors) {
      if (geom::distance_to_segment(d.marker, d.segment) > 1e-9)
        throw std::invalid_argument("map: door marker off its segment");
    }
  }
};

inline Map parse_map(std::string_view text, std::string name = "") {
  Map map;
  map.name = std::move(name);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  const auto fail = [&](const std::string& why) {
    throw std::invalid_argument("map line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind)) continue;
    if (kind == "wall") {
      geom::Segment s;
      if (!(fields >> s.a.x >> s.a.y >> s.b.x >> s.b.y)) fail("wall needs 4 numbers");
      map.walls.push_back(s);
    } else if (kind == "obstacle" || kind == "goal") {
      int n = 0;
      if (!(fields >> n) || n < 3) fail(kind + " needs a vertex count >= 3");
      std::vector<geom::Vec2> poly(static_cast<std::size_t>(n));
      for (auto& p : poly)
        if (!(fields >> p.x >> p.y)) fail(kind + " vertex list too short");
      if (kind == "obstacle")
        map.obstacles.push_back(std::move(poly));
      else
        map.goal = std::move(poly);
    } else if (kind == "door") {
      Door d;
      if (!(fields >> d.segment.a.x >> d.segment.a.y >> d.segment.b.x >>
            d.segment.b.y >> d.from >> d.to))
        fail("door needs 4 numbers and 2 room labels");
      d.marker = (d.segment.a + d.segment.b) * 0.5;
      map.doors.push_back(std::move(d));
    } else if (kind == "start") {
      if (!(fields >> map.start.x >> map.start.y >> map.start_heading))
        fail("start needs x y heading");
      map.has_start = true;
    } else {
      fail("unknown directive '" + kind + "'");
    }
  }
  map.validate();
  return map;
}

inline Map load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("map: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_map(buf.str(), path.stem().string());
}

// Built-in benchmark worlds. m1: four rooms in a row, three marked doorways,
// sparse clutter. m2: six rooms on a longer run, narrower doorways, more
// clutter.
inline constexpr std::string_view kM1Text = R"(# m1: four rooms, three marked doorways
wall 0.0 0.0 0.65 0.42
wall 0.65 0.42 1.3 0.0
wall 1.3 0.0 1.95 0.42
wall 1.95 0.42 2.6 0.0
wall 2.6 0.0 3.25 0.42
wall 3.25 0.42 3.9 0.0
wall 3.9 0.0 4.55 0.42
wall 4.55 0.42 5.2 0.0
wall 5.2 0.0 5.85 0.42
wall 5.85 0.42 6.5 0.0
wall 6.5 0.0 7.15 0.42
wall 7.15 0.42 7.8 0.0
wall 7.8 0.0 8.45 0.42
wall 8.45 0.42 9.1 0.0
wall 9.1 0.0 9.75 0.42
wall 9.75 0.42 10.4 0.0
wall 10.4 0.0 11.05 0.42
wall 11.05 0.42 11.7 0.0
wall 11.7 0.0 12.35 0.42
wall 12.35 0.42 13.0 0.0
wall 13.0 2.3 12.35 1.88
wall 12.35 1.88 11.7 2.3
wall 11.7 2.3 11.05 1.88
wall 11.05 1.88 10.4 2.3
wall 10.4 2.3 9.75 1.88
wall 9.75 1.88 9.1 2.3
wall 9.1 2.3 8.45 1.88
wall 8.45 1.88 7.8 2.3
wall 7.8 2.3 7.15 1.88
wall 7.15 1.88 6.5 2.3
wall 6.5 2.3 5.85 1.88
wall 5.85 1.88 5.2 2.3
wall 5.2 2.3 4.55 1.88
wall 4.55 1.88 3.9 2.3
wall 3.9 2.3 3.25 1.88
wall 3.25 1.88 2.6 2.3
wall 2.6 2.3 1.95 1.88
wall 1.95 1.88 1.3 2.3
wall 1.3 2.3 0.65 1.88
wall 0.65 1.88 0.0 2.3
wall 13.0 0 13.0 2.3
wall 0 2.3 0 0
wall 3.25 0 3.25 0.7
wall 3.25 1.6 3.25 2.3
wall 6.5 0 6.5 0.7
wall 6.5 1.6 6.5 2.3
wall 9.75 0 9.75 0.7
wall 9.75 1.6 9.75 2.3
door 3.25 0.7 3.25 1.6 1 2
door 6.5 0.7 6.5 1.6 2 3
door 9.75 0.7 9.75 1.6 3 4
obstacle 4 2.03 1.4 2.33 1.4 2.33 1.7 2.03 1.7
obstacle 4 4.25 1.4 4.55 1.4 4.55 1.7 4.25 1.7
obstacle 4 5.13 0.6 5.43 0.6 5.43 0.9 5.13 0.9
obstacle 4 7.5 0.6 7.8 0.6 7.8 0.9 7.5 0.9
obstacle 4 8.53 0.6 8.83 0.6 8.83 0.9 8.53 0.9
obstacle 4 10.6 1.4 10.9 1.4 10.9 1.7 10.6 1.7
obstacle 4 11.82 1.4 12.12 1.4 12.12 1.7 11.82 1.7
start 0.8 1.3 -0.3
goal 4 10.35 0.47 12.9 0.47 12.9 1.83 10.35 1.83
)";

inline constexpr std::string_view kM2Text = R"(# m2: six rooms along a narrow passage
wall 0.0 0.0 0.643 0.42
wall 0.643 0.42 1.286 0.0
wall 1.286 0.0 1.929 0.42
wall 1.929 0.42 2.571 0.0
wall 2.571 0.0 3.214 0.42
wall 3.214 0.42 3.857 0.0
wall 3.857 0.0 4.5 0.42
wall 4.5 0.42 5.143 0.0
wall 5.143 0.0 5.786 0.42
wall 5.786 0.42 6.429 0.0
wall 6.429 0.0 7.071 0.42
wall 7.071 0.42 7.714 0.0
wall 7.714 0.0 8.357 0.42
wall 8.357 0.42 9.0 0.0
wall 9.0 0.0 9.643 0.42
wall 9.643 0.42 10.286 0.0
wall 10.286 0.0 10.929 0.42
wall 10.929 0.42 11.571 0.0
wall 11.571 0.0 12.214 0.42
wall 12.214 0.42 12.857 0.0
wall 12.857 0.0 13.5 0.42
wall 13.5 0.42 14.143 0.0
wall 14.143 0.0 14.786 0.42
wall 14.786 0.42 15.429 0.0
wall 15.429 0.0 16.071 0.42
wall 16.071 0.42 16.714 0.0
wall 16.714 0.0 17.357 0.42
wall 17.357 0.42 18.0 0.0
wall 18.0 2.3 17.357 1.88
wall 17.357 1.88 16.714 2.3
wall 16.714 2.3 16.071 1.88
wall 16.071 1.88 15.429 2.3
wall 15.429 2.3 14.786 1.88
wall 14.786 1.88 14.143 2.3
wall 14.143 2.3 13.5 1.88
wall 13.5 1.88 12.857 2.3
wall 12.857 2.3 12.214 1.88
wall 12.214 1.88 11.571 2.3
wall 11.571 2.3 10.929 1.88
wall 10.929 1.88 10.286 2.3
wall 10.286 2.3 9.643 1.88
wall 9.643 1.88 9.0 2.3
wall 9.0 2.3 8.357 1.88
wall 8.357 1.88 7.714 2.3
wall 7.714 2.3 7.071 1.88
wall 7.071 1.88 6.429 2.3
wall 6.429 2.3 5.786 1.88
wall 5.786 1.88 5.143 2.3
wall 5.143 2.3 4.5 1.88
wall 4.5 1.88 3.857 2.3
wall 3.857 2.3 3.214 1.88
wall 3.214 1.88 2.571 2.3
wall 2.571 2.3 1.929 1.88
wall 1.929 1.88 1.286 2.3
wall 1.286 2.3 0.643 1.88
wall 0.643 1.88 0.0 2.3
wall 18.0 0 18.0 2.3
wall 0 2.3 0 0
wall 3.0 0 3.0 0.725
wall 3.0 1.575 3.0 2.3
wall 6.0 0 6.0 0.725
wall 6.0 1.575 6.0 2.3
wall 9.0 0 9.0 0.725
wall 9.0 1.575 9.0 2.3
wall 12.0 0 12.0 0.725
wall 12.0 1.575 12.0 2.3
wall 15.0 0 15.0 0.725
wall 15.0 1.575 15.0 2.3
door 3.0 0.725 3.0 1.575 1 2
door 6.0 0.725 6.0 1.575 2 3
door 9.0 0.725 9.0 1.575 3 4
door 12.0 0.725 12.0 1.575 4 5
door 15.0 0.725 15.0 1.575 5 6
obstacle 4 1.97 1.43 2.21 1.43 2.21 1.67 1.97 1.67
obstacle 4 3.95 0.62 4.19 0.62 4.19 0.86 3.95 0.86
obstacle 4 5.0 0.62 5.24 0.62 5.24 0.86 5.0 0.86
obstacle 4 6.79 1.43 7.03 1.43 7.03 1.67 6.79 1.67
obstacle 4 7.94 1.43 8.18 1.43 8.18 1.67 7.94 1.67
obstacle 4 9.99 1.43 10.23 1.43 10.23 1.67 9.99 1.67
obstacle 4 10.96 1.43 11.2 1.43 11.2 1.67 10.96 1.67
obstacle 4 12.77 0.62 13.01 0.62 13.01 0.86 12.77 0.86
obstacle 4 13.84 1.43 14.08 1.43 14.08 1.67 13.84 1.67
obstacle 4 15.81 0.62 16.05 0.62 16.05 0.86 15.81 0.86
obstacle 4 16.84 1.43 17.08 1.43 17.08 1.67 16.84 1.67
start 0.8 1.4 0.3
goal 4 15.6 0.47 17.9 0.47 17.9 1.83 15.6 1.83
)";

inline std::string_view builtin_map_text(std::string_view id) {
  if (id == "m1") return kM1Text;
  if (id == "m2") return kM2Text;
  throw std::invalid_argument("unknown built-in world '" + std::string(id) + "'");
}

struct MapSource {
  std::string name;
  std::string text;
};

// Accepts a built-in id ("m1", "m2") or a path to a map file; keeps the raw
// text so run records can embed a self-contained copy of the world.
inline MapSource resolve_map_text(const std::string& spec) {
  if (spec == "m1" || spec == "m2")
    return {spec, std::string(builtin_map_text(spec))};
  std::ifstream in(spec);
  if (!in) throw std::runtime_error("map: cannot open " + spec);
  std::ostringstream buf;
  buf << in.rdbuf();
  return {std::filesystem::path(spec).stem().string(), buf.str()};
}

inline Map resolve_map(const std::string& spec) {
  const auto src = resolve_map_text(spec);
  return parse_map(src.text, src.name);
}

}  // namespace idionet::world
