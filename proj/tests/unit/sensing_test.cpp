#include "idionet/sensing.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace idionet;
using sensing::Summary;

namespace {

bool has(const std::vector<int>& v, int antigen) {
  return std::find(v.begin(), v.end(), antigen) != v.end();
}

Summary open_space() {
  Summary s;
  s.z_min = 4.0;
  s.z_av = 6.0;
  s.z_max = 8.0;
  s.r_min = 3;
  s.e_av = 5.0;
  s.distance_moved = 0.5;
  return s;
}

}  // namespace

TEST_CASE("subsectors split the forward half-plane into six slices") {
  REQUIRE(sensing::subsector_of(-90.0) == 1);
  REQUIRE(sensing::subsector_of(-60.01) == 1);
  REQUIRE(sensing::subsector_of(-60.0) == 2);
  REQUIRE(sensing::subsector_of(-0.01) == 3);
  REQUIRE(sensing::subsector_of(0.0) == 4);
  REQUIRE(sensing::subsector_of(59.99) == 5);
  REQUIRE(sensing::subsector_of(60.0) == 6);
  REQUIRE(sensing::subsector_of(90.0) == 6);  // top edge folds in
}

TEST_CASE("open space presents only the clear-ahead antigen") {
  const auto antigens = sensing::detect_antigens(open_space());
  REQUIRE(antigens == std::vector<int>{sensing::clear_ahead});
}

TEST_CASE("near objects map to left/centre/right by subsector") {
  auto s = open_space();
  s.z_min = 0.54;
  for (int r : {1, 2}) {
    s.r_min = r;
    REQUIRE(has(sensing::detect_antigens(s), sensing::object_left));
  }
  for (int r : {3, 4}) {
    s.r_min = r;
    REQUIRE(has(sensing::detect_antigens(s), sensing::object_centre));
  }
  for (int r : {5, 6}) {
    s.r_min = r;
    REQUIRE(has(sensing::detect_antigens(s), sensing::object_right));
  }
}

TEST_CASE("object threshold is strict") {
  auto s = open_space();
  s.z_min = 0.55;
  const auto antigens = sensing::detect_antigens(s);
  REQUIRE_FALSE(has(antigens, sensing::object_left));
  REQUIRE_FALSE(has(antigens, sensing::object_centre));
  REQUIRE_FALSE(has(antigens, sensing::object_right));
}

TEST_CASE("exactly one of clear-ahead / confined always presents") {
  auto s = open_space();
  s.z_av = 0.45;  // boundary goes to clear-ahead
  auto antigens = sensing::detect_antigens(s);
  REQUIRE(has(antigens, sensing::clear_ahead));
  REQUIRE_FALSE(has(antigens, sensing::confined));
  s.z_av = 0.449;
  antigens = sensing::detect_antigens(s);
  REQUIRE(has(antigens, sensing::confined));
  REQUIRE_FALSE(has(antigens, sensing::clear_ahead));
}

TEST_CASE("standstill raises the stall antigen, blocked rear adds antigen 6") {
  auto s = open_space();
  s.standstill_ticks = 1;
  REQUIRE_FALSE(has(sensing::detect_antigens(s), sensing::stalled));
  s.standstill_ticks = 2;
  auto antigens = sensing::detect_antigens(s);
  REQUIRE(has(antigens, sensing::stalled));
  REQUIRE_FALSE(has(antigens, sensing::blocked_behind));
  s.e_av = 0.34;
  antigens = sensing::detect_antigens(s);
  REQUIRE(has(antigens, sensing::stalled));
  REQUIRE(has(antigens, sensing::blocked_behind));
  // a blocked rear alone is not a stall
  s.standstill_ticks = 0;
  antigens = sensing::detect_antigens(s);
  REQUIRE_FALSE(has(antigens, sensing::stalled));
  REQUIRE_FALSE(has(antigens, sensing::blocked_behind));
}

TEST_CASE("a visible marker presents the marker antigen") {
  auto s = open_space();
  s.blob = sensing::Blob{0.2, 100.0};
  REQUIRE(has(sensing::detect_antigens(s), sensing::marker_seen));
}

TEST_CASE("antigens come out in ascending order") {
  auto s = open_space();
  s.z_min = 0.3;
  s.r_min = 4;
  s.z_av = 0.3;
  s.standstill_ticks = 3;
  s.e_av = 0.1;
  s.blob = sensing::Blob{0.0, 50.0};
  const auto antigens = sensing::detect_antigens(s);
  REQUIRE(antigens == std::vector<int>{1, 4, 5, 6, 7});
}

TEST_CASE("dominance follows priority, ties to the lowest index") {
  REQUIRE(sensing::dominant_of({3}) == 3);
  REQUIRE(sensing::dominant_of({0, 3}) == 0);
  REQUIRE(sensing::dominant_of({0, 4}) == 4);
  REQUIRE(sensing::dominant_of({4, 5}) == 5);
  REQUIRE(sensing::dominant_of({5, 6}) == 6);
  REQUIRE(sensing::dominant_of({0, 1, 2}) == 0);
  REQUIRE(sensing::dominant_of({3, 7}) == 7);
  REQUIRE(sensing::dominant_of({0, 1, 2, 3, 4, 5, 6, 7}) == 6);
  REQUIRE_THROWS_AS(sensing::dominant_of({}), std::invalid_argument);
}

TEST_CASE("max_priority scans the presenting set") {
  REQUIRE(sensing::max_priority({}) == -1);
  REQUIRE(sensing::max_priority({3}) == 0);
  REQUIRE(sensing::max_priority({3, 7}) == 1);
  REQUIRE(sensing::max_priority({0, 4, 5}) == 4);
  REQUIRE(sensing::max_priority({6}) == 5);
}
