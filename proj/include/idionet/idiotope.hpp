#pragma once

// Canonical idiotope matrix and its plain-text loader.
//
// Entries mark antibody-antigen combinations an antibody "disallows" in its
// peers: 1.00 full-strength, 0.50 half-strength, 0 none. The canonical matrix
// couples complementary behaviors (turns against reverses, wanders against
// the stall antigen) so suppression has structure rather than noise.

#include "idionet/immune.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace idionet::idiotope {

// clang-format off
inline constexpr std::array<double, 128> kCanonical{
    // antigen: 0     1     2     3     4     5     6     7
    0.50, 0.00, 0.50, 0.00, 0.00, 0.00, 0.00, 0.00,  // 0  reverse_spin_right
    0.00, 0.00, 1.00, 0.00, 0.00, 0.00, 0.00, 0.00,  // 1  bear_right_slow
    1.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00,  // 2  bear_left_slow
    0.00, 1.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00,  // 3  ahead_fast
    1.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00,  // 4  veer_left_fast
    0.00, 0.00, 1.00, 0.00, 0.00, 0.00, 0.00, 0.00,  // 5  veer_right_fast
    0.00, 0.00, 1.00, 0.00, 0.00, 0.00, 0.00, 0.00,  // 6  turn_right_slow
    1.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00,  // 7  turn_left_slow
    1.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.00,  // 8  turn_left_fast
    0.00, 0.00, 1.00, 0.00, 0.00, 0.00, 0.00, 0.00,  // 9  turn_right_fast
    0.50, 0.00, 0.50, 0.00, 0.00, 0.00, 0.00, 0.00,  // 10 reverse_spin_left
    0.00, 0.00, 0.00, 0.00, 0.00, 1.00, 0.00, 0.00,  // 11 seek_open
    0.00, 0.00, 0.00, 0.00, 0.00, 1.00, 0.00, 0.00,  // 12 avoid_near
    0.00, 0.00, 0.00, 0.00, 0.00, 1.00, 0.00, 0.00,  // 13 track_marker
    0.50, 0.00, 0.50, 0.00, 0.00, 0.00, 0.00, 0.00,  // 14 reverse_right
    0.50, 0.00, 0.50, 0.00, 0.00, 0.00, 0.00, 0.00,  // 15 reverse_left
};
// clang-format on

inline void validate(const immune::Matrix& m) {
  if (m.rows() != immune::kAntibodies || m.cols() != immune::kAntigens)
    throw std::invalid_argument("idiotope: expected a 16x8 matrix");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (v != 0.0 && v != 0.5 && v != 1.0)
        throw std::invalid_argument(
            "idiotope: entries must be one of 0, 0.5, 1.0");
    }
}

inline immune::Matrix canonical() {
  immune::Matrix m(immune::kAntibodies, immune::kAntigens);
  for (int i = 0; i < immune::kAntibodies; ++i)
    for (int j = 0; j < immune::kAntigens; ++j)
      m(i, j) = kCanonical[static_cast<std::size_t>(i * immune::kAntigens + j)];
  return m;
}

// Whitespace-separated rows, eight values each, '#' starts a comment.
inline immune::Matrix parse(const std::string& text) {
  immune::Matrix m(immune::kAntibodies, immune::kAntigens);
  std::istringstream in(text);
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double v;
    int col = 0;
    while (fields >> v) {
      if (row >= immune::kAntibodies || col >= immune::kAntigens)
        throw std::invalid_argument("idiotope: too many values");
      m(row, col++) = v;
    }
    if (col == 0) continue;  // blank or comment-only line
    if (col != immune::kAntigens)
      throw std::invalid_argument("idiotope: each row needs 8 values");
    ++row;
  }
  if (row != immune::kAntibodies)
    throw std::invalid_argument("idiotope: expected 16 rows");
  validate(m);
  return m;
}

inline immune::Matrix load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("idiotope: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace idionet::idiotope
