#include "idionet/idiotope.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace idionet;

TEST_CASE("canonical idiotope has the expected structure") {
  const auto m = idiotope::canonical();
  REQUIRE(m.rows() == 16);
  REQUIRE(m.cols() == 8);
  REQUIRE_NOTHROW(idiotope::validate(m));

  // reversing behaviors half-suppress both side-object antigens
  for (int row : {0, 10, 14, 15}) {
    REQUIRE(m(row, 0) == 0.5);
    REQUIRE(m(row, 2) == 0.5);
    REQUIRE(m.row(row).sum() == Catch::Approx(1.0));
  }
  // left-turners fully suppress the left-object antigen
  for (int row : {2, 4, 7, 8}) {
    REQUIRE(m(row, 0) == 1.0);
    REQUIRE(m.row(row).sum() == Catch::Approx(1.0));
  }
  // right-turners fully suppress the right-object antigen
  for (int row : {1, 5, 6, 9}) {
    REQUIRE(m(row, 2) == 1.0);
    REQUIRE(m.row(row).sum() == Catch::Approx(1.0));
  }
  // the straight-ahead driver suppresses the centre-object antigen
  REQUIRE(m(3, 1) == 1.0);
  REQUIRE(m.row(3).sum() == Catch::Approx(1.0));
  // escape behaviors suppress the stall antigen
  for (int row : {11, 12, 13}) {
    REQUIRE(m(row, 5) == 1.0);
    REQUIRE(m.row(row).sum() == Catch::Approx(1.0));
  }
}

TEST_CASE("parse round-trips the canonical matrix") {
  const auto m = idiotope::canonical();
  std::ostringstream text;
  text << "# round trip\n";
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 8; ++j) text << m(i, j) << (j == 7 ? "" : " ");
    text << "\n";
  }
  const auto parsed = idiotope::parse(text.str());
  REQUIRE((parsed - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parse rejects malformed input") {
  REQUIRE_THROWS_AS(idiotope::parse("0 0 0\n"), std::invalid_argument);
  std::string short_text;
  for (int i = 0; i < 15; ++i) short_text += "0 0 0 0 0 0 0 0\n";
  REQUIRE_THROWS_AS(idiotope::parse(short_text), std::invalid_argument);
  std::string bad_value;
  for (int i = 0; i < 16; ++i) bad_value += "0 0 0 0 0 0 0 0.7\n";
  REQUIRE_THROWS_AS(idiotope::parse(bad_value), std::invalid_argument);
}

TEST_CASE("the shipped idiotope file matches the built-in matrix") {
  const auto path =
      std::filesystem::path(IDIONET_SOURCE_DIR) / "data" / "idiotope.txt";
  const auto loaded = idiotope::load(path);
  REQUIRE((loaded - idiotope::canonical()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("load reports missing files") {
  REQUIRE_THROWS_AS(idiotope::load("/nonexistent/idiotope.txt"),
                    std::runtime_error);
}
