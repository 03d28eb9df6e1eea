#pragma once

// Action selection: the idiotypic controller and its nine probabilistic
// rivals.
//
// Every controller first computes the best-matched antibody (alpha). The
// idiotypic controller runs the full immune network and executes beta, its
// concentration winner. The rival schemes R1-R9 instead keep alpha with a
// fixed probability and otherwise substitute an alternative (mu): uniformly
// among the others (R1), weighted by paratope score on the dominant antigen
// (R2), or spread over the 2nd/3rd/4th-best matches (R3-R9). R6 widens its
// substitution rate after a failed reinforcement outcome; R7-R9 widen theirs
// inside a stall window (a stall antigen raised this tick or last).

#include "idionet/immune.hpp"
#include "idionet/rng.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace idionet::arbitration {

enum class ControllerId { idiotypic, r1, r2, r3, r4, r5, r6, r7, r8, r9 };

inline constexpr std::array<ControllerId, 10> kAllControllers{
    ControllerId::idiotypic, ControllerId::r1, ControllerId::r2,
    ControllerId::r3,        ControllerId::r4, ControllerId::r5,
    ControllerId::r6,        ControllerId::r7, ControllerId::r8,
    ControllerId::r9};

inline std::string name_of(ControllerId id) {
  switch (id) {
    case ControllerId::idiotypic: return "I_D";
    case ControllerId::r1: return "R1";
    case ControllerId::r2: return "R2";
    case ControllerId::r3: return "R3";
    case ControllerId::r4: return "R4";
    case ControllerId::r5: return "R5";
    case ControllerId::r6: return "R6";
    case ControllerId::r7: return "R7";
    case ControllerId::r8: return "R8";
    case ControllerId::r9: return "R9";
  }
  return "?";
}

inline std::optional<ControllerId> parse_controller(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "I_D" || s == "ID") return ControllerId::idiotypic;
  if (s.size() == 2 && s[0] == 'R' && s[1] >= '1' && s[1] <= '9')
    return static_cast<ControllerId>(1 + (s[1] - '1'));
  return std::nullopt;
}

// Percentages of one selection draw. `mu` is the total probability of not
// executing alpha; for ranked schemes it splits over the 2nd/3rd/4th-best
// matches. Ranks with no qualifying antibody fall back to alpha.
struct RankShares {
  double mu = 0.0;
  std::array<double, 3> ranks{0.0, 0.0, 0.0};
};

enum class AltChoice { uniform_other, score_weighted, ranked };
enum class Branch { none, rl_feedback, stall_window };

struct Scheme {
  AltChoice alt = AltChoice::ranked;
  Branch branch = Branch::none;
  RankShares base;     // branch condition false (or no branch)
  RankShares boosted;  // branch condition true

  void validate() const {
    for (const RankShares* s : {&base, &boosted}) {
      if (s->mu < 0.0 || s->mu > 100.0)
        throw std::invalid_argument("scheme: mu must be a percentage");
      if (alt == AltChoice::ranked) {
        const double sum = s->ranks[0] + s->ranks[1] + s->ranks[2];
        if (std::abs(sum - s->mu) > 1e-9)
          throw std::invalid_argument("scheme: rank shares must sum to mu");
      }
    }
  }
};

inline Scheme default_scheme(ControllerId id) {
  using AC = AltChoice;
  using BR = Branch;
  switch (id) {
    case ControllerId::r1:
      return {AC::uniform_other, BR::none, {20.0, {}}, {}};
    case ControllerId::r2:
      return {AC::score_weighted, BR::none, {20.0, {}}, {}};
    case ControllerId::r3:
      return {AC::ranked, BR::none, {20.0, {20.0, 0.0, 0.0}}, {}};
    case ControllerId::r4:
      return {AC::ranked, BR::none, {20.0, {10.0, 10.0, 0.0}}, {}};
    case ControllerId::r5:
      return {AC::ranked, BR::none, {20.0, {10.0, 5.0, 5.0}}, {}};
    case ControllerId::r6:
      return {AC::ranked, BR::rl_feedback,
              {14.0, {7.0, 3.5, 3.5}},
              {28.0, {14.0, 7.0, 7.0}}};
    case ControllerId::r7:
      return {AC::ranked, BR::stall_window,
              {15.0, {7.5, 3.75, 3.75}},
              {33.0, {16.5, 8.25, 8.25}}};
    case ControllerId::r8:
      return {AC::ranked, BR::stall_window,
              {13.0, {6.5, 3.25, 3.25}},
              {50.0, {25.0, 12.5, 12.5}}};
    case ControllerId::r9:
      return {AC::ranked, BR::stall_window,
              {2.0, {1.0, 0.5, 0.5}},
              {75.0, {37.5, 18.75, 18.75}}};
    case ControllerId::idiotypic:
    default:
      return {};  // unused: the idiotypic controller draws nothing
  }
}

// Antibody indices ordered by descending match strength, ties by lower index.
inline std::vector<int> rank_by_match(const immune::Vector& strength) {
  std::vector<int> order(static_cast<std::size_t>(strength.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return strength(a) > strength(b);
  });
  return order;
}

struct SelectionStats {
  std::int64_t ticks = 0;
  std::int64_t mu_count = 0;
  std::int64_t stalled_ticks = 0;
  std::int64_t mu_count_stalled = 0;

  double mu_rate() const {
    return ticks > 0 ? static_cast<double>(mu_count) / static_cast<double>(ticks)
                     : 0.0;
  }
  double mu_rate_stalled() const {
    return stalled_ticks > 0 ? static_cast<double>(mu_count_stalled) /
                                   static_cast<double>(stalled_ticks)
                             : 0.0;
  }
  double mu_rate_free() const {
    const auto free = ticks - stalled_ticks;
    return free > 0
               ? static_cast<double>(mu_count - mu_count_stalled) /
                     static_cast<double>(free)
               : 0.0;
  }
};

inline void record(SelectionStats& stats, int chosen, int alpha, bool stalled) {
  ++stats.ticks;
  const bool mu = chosen != alpha;
  if (mu) ++stats.mu_count;
  if (stalled) {
    ++stats.stalled_ticks;
    if (mu) ++stats.mu_count_stalled;
  }
}

struct Selection {
  int chosen = 0;
  int alpha = 0;
  bool mu_event = false;
  bool concentration_reset = false;
};

class Controller {
 public:
  Controller(ControllerId id, immune::Config cfg, immune::Matrix idiotope,
             std::optional<Scheme> scheme_override = std::nullopt)
      : id_(id) {
    if (id_ == ControllerId::idiotypic) {
      network_.emplace(cfg, std::move(idiotope));
    } else {
      scheme_ = scheme_override.value_or(default_scheme(id_));
      scheme_.validate();
    }
  }

  // `last_action_failed` feeds R6's branch; `stall_window` feeds R7-R9's.
  Selection choose(const immune::Matrix& paratope,
                   const std::vector<int>& presenting, int dominant,
                   bool last_action_failed, bool stall_window, Rng& rng) {
    if (id_ == ControllerId::idiotypic) {
      auto outcome = network_->tick(paratope, presenting, dominant);
      return {outcome.beta, outcome.alpha, outcome.idiotypic_difference,
              outcome.concentration_reset};
    }
    auto report = immune::build_antigen_array(presenting, dominant, paratope);
    auto best = immune::compute_alpha(paratope, report);
    const bool boosted = (scheme_.branch == Branch::rl_feedback && last_action_failed) ||
                         (scheme_.branch == Branch::stall_window && stall_window);
    const RankShares& shares = boosted ? scheme_.boosted : scheme_.base;
    const int chosen = draw(paratope, best, dominant, shares, rng);
    return {chosen, best.alpha, chosen != best.alpha, false};
  }

  ControllerId id() const { return id_; }
  const Scheme& scheme() const { return scheme_; }
  const immune::Network* network() const {
    return network_ ? &*network_ : nullptr;
  }
  SelectionStats& stats() { return stats_; }
  const SelectionStats& stats() const { return stats_; }

 private:
  int draw(const immune::Matrix& paratope, const immune::BestMatch& best,
           int dominant, const RankShares& shares, Rng& rng) {
    const double u = rng.uniform(0.0, 100.0);
    if (u >= shares.mu) return best.alpha;
    switch (scheme_.alt) {
      case AltChoice::uniform_other: {
        const int n = static_cast<int>(paratope.rows());
        if (n < 2) return best.alpha;
        int pick = rng.uniform_int(n - 1);
        if (pick >= best.alpha) ++pick;
        return pick;
      }
      case AltChoice::score_weighted:
        return draw_score_weighted(paratope, best.alpha, dominant, rng);
      case AltChoice::ranked:
      default:
        return draw_ranked(best, shares, u);
    }
  }

  // Rejection-sample the paratope-score distribution over the dominant
  // antigen column until the draw differs from alpha. If alpha holds all of
  // the column's mass there is no alternative to draw, so alpha stands.
  int draw_score_weighted(const immune::Matrix& paratope, int alpha, int dominant,
                          Rng& rng) {
    const auto n = paratope.rows();
    double total = 0.0;
    double alpha_mass = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      total += paratope(i, dominant);
      if (i == alpha) alpha_mass = paratope(i, dominant);
    }
    if (total - alpha_mass <= 0.0) return alpha;
    for (int attempt = 0; attempt < 100000; ++attempt) {
      double x = rng.uniform01() * total;
      int pick = static_cast<int>(n) - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        x -= paratope(i, dominant);
        if (x < 0.0) {
          pick = static_cast<int>(i);
          break;
        }
      }
      if (pick != alpha) return pick;
    }
    return alpha;
  }

  // The mu portion of the selection draw is pre-split over the 2nd/3rd/4th
  // best matches; ranks without a positively-matched candidate contribute
  // their share back to alpha (by never matching `u`).
  int draw_ranked(const immune::BestMatch& best, const RankShares& shares,
                  double u) {
    const auto order = rank_by_match(best.strength);
    double acc = 0.0;
    for (std::size_t k = 0; k < shares.ranks.size(); ++k) {
      const std::size_t pos = k + 1;  // order[1] is the 2nd-best match
      if (pos >= order.size()) break;
      const int candidate = order[pos];
      if (best.strength(candidate) <= 0.0) continue;
      acc += shares.ranks[k];
      if (u < acc) return candidate;
    }
    return best.alpha;
  }

  ControllerId id_;
  Scheme scheme_;
  std::optional<immune::Network> network_;
  SelectionStats stats_;
};

}  // namespace idionet::arbitration
