#include "idionet/arbitration.hpp"
#include "idionet/idiotope.hpp"
#include "idionet/paratope.hpp"

#include <catch_amalgamated.hpp>

#include <map>
#include <vector>

using namespace idionet;
using arbitration::AltChoice;
using arbitration::Branch;
using arbitration::Controller;
using arbitration::ControllerId;

namespace {

// A paratope with four clearly separated top matches on antigen 0.
immune::Matrix ladder_paratope() {
  immune::Matrix p = immune::Matrix::Constant(16, 8, 0.3);
  p(4, 0) = 0.95;  // alpha
  p(7, 0) = 0.85;  // 2nd
  p(1, 0) = 0.75;  // 3rd
  p(9, 0) = 0.65;  // 4th
  return p;
}

double measured_mu(Controller& c, const immune::Matrix& p, int draws,
                   bool failed, bool window, Rng& rng) {
  int mu = 0;
  for (int i = 0; i < draws; ++i) {
    const auto sel = c.choose(p, {0}, 0, failed, window, rng);
    if (sel.mu_event) ++mu;
  }
  return static_cast<double>(mu) / draws;
}

}  // namespace

TEST_CASE("controller names parse both ways") {
  using arbitration::name_of;
  using arbitration::parse_controller;
  REQUIRE(name_of(ControllerId::idiotypic) == "I_D");
  REQUIRE(name_of(ControllerId::r5) == "R5");
  REQUIRE(parse_controller("I_D") == ControllerId::idiotypic);
  REQUIRE(parse_controller("id") == ControllerId::idiotypic);
  REQUIRE(parse_controller("r1") == ControllerId::r1);
  REQUIRE(parse_controller("R9") == ControllerId::r9);
  REQUIRE_FALSE(parse_controller("R0").has_value());
  REQUIRE_FALSE(parse_controller("R10").has_value());
  REQUIRE_FALSE(parse_controller("xyz").has_value());
  for (auto id : arbitration::kAllControllers)
    REQUIRE(parse_controller(name_of(id)) == id);
}

TEST_CASE("the selector table carries the published rates") {
  using arbitration::default_scheme;
  const auto r1 = default_scheme(ControllerId::r1);
  REQUIRE(r1.alt == AltChoice::uniform_other);
  REQUIRE(r1.base.mu == 20.0);
  const auto r2 = default_scheme(ControllerId::r2);
  REQUIRE(r2.alt == AltChoice::score_weighted);
  REQUIRE(r2.base.mu == 20.0);

  const auto r3 = default_scheme(ControllerId::r3);
  REQUIRE(r3.base.ranks == std::array<double, 3>{20.0, 0.0, 0.0});
  const auto r4 = default_scheme(ControllerId::r4);
  REQUIRE(r4.base.ranks == std::array<double, 3>{10.0, 10.0, 0.0});
  const auto r5 = default_scheme(ControllerId::r5);
  REQUIRE(r5.base.ranks == std::array<double, 3>{10.0, 5.0, 5.0});
  for (auto id : {ControllerId::r3, ControllerId::r4, ControllerId::r5}) {
    REQUIRE(default_scheme(id).branch == Branch::none);
    REQUIRE(default_scheme(id).base.mu == 20.0);
  }

  const auto r6 = default_scheme(ControllerId::r6);
  REQUIRE(r6.branch == Branch::rl_feedback);
  REQUIRE(r6.base.mu == 14.0);
  REQUIRE(r6.boosted.mu == 28.0);
  REQUIRE(r6.boosted.ranks == std::array<double, 3>{14.0, 7.0, 7.0});

  const auto r7 = default_scheme(ControllerId::r7);
  REQUIRE(r7.branch == Branch::stall_window);
  REQUIRE(r7.base.mu == 15.0);
  REQUIRE(r7.boosted.mu == 33.0);
  const auto r8 = default_scheme(ControllerId::r8);
  REQUIRE(r8.base.mu == 13.0);
  REQUIRE(r8.boosted.mu == 50.0);
  REQUIRE(r8.boosted.ranks == std::array<double, 3>{25.0, 12.5, 12.5});
  const auto r9 = default_scheme(ControllerId::r9);
  REQUIRE(r9.base.mu == 2.0);
  REQUIRE(r9.boosted.mu == 75.0);
  REQUIRE(r9.boosted.ranks == std::array<double, 3>{37.5, 18.75, 18.75});

  for (auto id : arbitration::kAllControllers)
    if (id != ControllerId::idiotypic) REQUIRE_NOTHROW(default_scheme(id).validate());
}

TEST_CASE("scheme validation rejects inconsistent shares") {
  arbitration::Scheme bad;
  bad.alt = AltChoice::ranked;
  bad.base = {20.0, {10.0, 5.0, 4.0}};  // sums to 19
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.base = {120.0, {60.0, 30.0, 30.0}};
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("rank_by_match orders by strength, ties by index") {
  immune::Vector s(5);
  s << 3.0, 5.0, 5.0, 1.0, 4.0;
  REQUIRE(arbitration::rank_by_match(s) == std::vector<int>{1, 2, 4, 0, 3});
}

TEST_CASE("selection stats split by the stall window") {
  arbitration::SelectionStats st;
  arbitration::record(st, 3, 3, false);
  arbitration::record(st, 5, 3, false);
  arbitration::record(st, 5, 3, true);
  arbitration::record(st, 3, 3, true);
  REQUIRE(st.ticks == 4);
  REQUIRE(st.mu_count == 2);
  REQUIRE(st.stalled_ticks == 2);
  REQUIRE(st.mu_count_stalled == 1);
  REQUIRE(st.mu_rate() == Catch::Approx(0.5));
  REQUIRE(st.mu_rate_stalled() == Catch::Approx(0.5));
  REQUIRE(st.mu_rate_free() == Catch::Approx(0.5));
}

TEST_CASE("ranked substitution hits its nominal rate and targets") {
  const auto p = ladder_paratope();
  Rng rng(101);
  Controller r5(ControllerId::r5, {}, {});
  std::map<int, int> counts;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const auto sel = r5.choose(p, {0}, 0, false, false, rng);
    REQUIRE(sel.alpha == 4);
    ++counts[sel.chosen];
  }
  const auto rate = [&](int k) {
    return static_cast<double>(counts[k]) / draws * 100.0;
  };
  REQUIRE(rate(4) == Catch::Approx(80.0).margin(0.5));   // alpha
  REQUIRE(rate(7) == Catch::Approx(10.0).margin(0.5));   // 2nd best
  REQUIRE(rate(1) == Catch::Approx(5.0).margin(0.5));    // 3rd best
  REQUIRE(rate(9) == Catch::Approx(5.0).margin(0.5));    // 4th best
  REQUIRE(counts.size() == 4);  // nothing else ever drawn
}

TEST_CASE("uniform substitution spreads evenly over the other antibodies") {
  const auto p = ladder_paratope();
  Rng rng(102);
  arbitration::Scheme always{AltChoice::uniform_other, Branch::none,
                             {100.0, {}}, {}};
  Controller r1(ControllerId::r1, {}, {}, always);
  std::map<int, int> counts;
  const int draws = 150000;
  for (int i = 0; i < draws; ++i) {
    const auto sel = r1.choose(p, {0}, 0, false, false, rng);
    REQUIRE(sel.chosen != sel.alpha);
    ++counts[sel.chosen];
  }
  REQUIRE(counts.size() == 15);
  REQUIRE(counts.count(4) == 0);
  for (const auto& [antibody, n] : counts) {
    const double rate = static_cast<double>(n) / draws;
    REQUIRE(rate == Catch::Approx(1.0 / 15.0).margin(0.005));
  }
}

TEST_CASE("score-weighted substitution follows the dominant column") {
  // three live antibodies on the dominant antigen: 0.5 / 0.3 / 0.2
  immune::Matrix p = immune::Matrix::Zero(3, 1);
  p(0, 0) = 0.5;
  p(1, 0) = 0.3;
  p(2, 0) = 0.2;
  Rng rng(103);
  Controller r2(ControllerId::r2, {}, {});
  std::map<int, int> counts;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const auto sel = r2.choose(p, {0}, 0, false, false, rng);
    REQUIRE(sel.alpha == 0);
    ++counts[sel.chosen];
  }
  // mu = 20%, alternatives weighted 0.3 : 0.2 among the non-alpha rows
  const auto rate = [&](int k) {
    return static_cast<double>(counts[k]) / draws * 100.0;
  };
  REQUIRE(rate(0) == Catch::Approx(80.0).margin(0.5));
  REQUIRE(rate(1) == Catch::Approx(12.0).margin(0.5));
  REQUIRE(rate(2) == Catch::Approx(8.0).margin(0.5));
}

TEST_CASE("score-weighted substitution stands down when alpha owns the column") {
  immune::Matrix p = immune::Matrix::Zero(4, 1);
  p(2, 0) = 0.9;  // only alpha matches the dominant antigen
  Rng rng(104);
  Controller r2(ControllerId::r2, {}, {});
  for (int i = 0; i < 2000; ++i) {
    const auto sel = r2.choose(p, {0}, 0, false, false, rng);
    REQUIRE(sel.chosen == 2);
    REQUIRE_FALSE(sel.mu_event);
  }
}

TEST_CASE("ranks without a live candidate fall back to alpha") {
  // only two antibodies match anything: ranks 3 and 4 have no candidate
  immune::Matrix p = immune::Matrix::Zero(16, 8);
  p(3, 0) = 0.9;
  p(8, 0) = 0.6;
  Rng rng(105);
  Controller r5(ControllerId::r5, {}, {});
  std::map<int, int> counts;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const auto sel = r5.choose(p, {0}, 0, false, false, rng);
    ++counts[sel.chosen];
  }
  REQUIRE(counts.size() == 2);
  const double mu_rate = static_cast<double>(counts[8]) / draws * 100.0;
  // rank 1's 10% stands; the 5% + 5% for missing ranks returns to alpha
  REQUIRE(mu_rate == Catch::Approx(10.0).margin(0.5));
}

TEST_CASE("feedback branch widens substitution after a failure") {
  const auto p = ladder_paratope();
  Rng rng(106);
  Controller r6(ControllerId::r6, {}, {});
  const double calm = measured_mu(r6, p, 120000, false, false, rng);
  const double burned = measured_mu(r6, p, 120000, true, false, rng);
  REQUIRE(calm == Catch::Approx(0.14).margin(0.005));
  REQUIRE(burned == Catch::Approx(0.28).margin(0.005));
  // the stall window means nothing to the feedback branch
  const double windowed = measured_mu(r6, p, 120000, false, true, rng);
  REQUIRE(windowed == Catch::Approx(0.14).margin(0.005));
}

TEST_CASE("stall-window branch widens substitution inside the window") {
  const auto p = ladder_paratope();
  Rng rng(107);
  for (auto [id, base, boosted] :
       {std::tuple{ControllerId::r7, 0.15, 0.33},
        std::tuple{ControllerId::r8, 0.13, 0.50},
        std::tuple{ControllerId::r9, 0.02, 0.75}}) {
    Controller c(id, {}, {});
    const double calm = measured_mu(c, p, 120000, false, false, rng);
    const double windowed = measured_mu(c, p, 120000, false, true, rng);
    REQUIRE(calm == Catch::Approx(base).margin(0.005));
    REQUIRE(windowed == Catch::Approx(boosted).margin(0.005));
    // feedback flag means nothing to the stall branch
    const double failed = measured_mu(c, p, 120000, true, false, rng);
    REQUIRE(failed == Catch::Approx(base).margin(0.005));
  }
}

TEST_CASE("the idiotypic controller reports the network's choice") {
  const auto p = paratope::initial(1);
  Controller c(ControllerId::idiotypic, {}, idiotope::canonical());
  Rng rng(108);
  int diffs = 0;
  for (int t = 0; t < 400; ++t) {
    const auto sel = c.choose(p, {0, 3}, 0, false, false, rng);
    REQUIRE(sel.mu_event == (sel.chosen != sel.alpha));
    diffs += sel.mu_event ? 1 : 0;
  }
  REQUIRE(c.network() != nullptr);
  REQUIRE(c.network()->concentrations().normalized.sum() ==
          Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("controllers with the same seed make the same choices") {
  const auto p = ladder_paratope();
  for (auto id : arbitration::kAllControllers) {
    Controller a(id, {}, idiotope::canonical());
    Controller b(id, {}, idiotope::canonical());
    Rng ra(909), rb(909);
    for (int t = 0; t < 500; ++t) {
      const auto sa = a.choose(p, {0}, 0, t % 7 == 0, t % 5 == 0, ra);
      const auto sb = b.choose(p, {0}, 0, t % 7 == 0, t % 5 == 0, rb);
      REQUIRE(sa.chosen == sb.chosen);
    }
  }
}
