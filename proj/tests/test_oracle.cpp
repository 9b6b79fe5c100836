#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lfcc/oracle.hpp"
#include "lfcc/schedule.hpp"

using namespace lfcc;

namespace {

ValidatedConfig single(int k, int l, int t, int n, int c) {
  SystemConfig sys;
  sys.mode = TxMode::kSingleTx;
  sys.users = k;
  sys.antennas = l;
  sys.rx_cache_fraction = Rat(t, k);
  sys.library_size = n;
  sys.feedback_cost = c;
  return validate_config(sys);
}

ValidatedConfig multi(int k, int kt, int lt, const Rat& gamma_t, int t, int n, int c) {
  SystemConfig sys;
  sys.mode = TxMode::kMultiTx;
  sys.users = k;
  sys.tx_count = kt;
  sys.tx_antennas = lt;
  sys.tx_cache_fraction = gamma_t;
  sys.rx_cache_fraction = Rat(t, k);
  sys.library_size = n;
  sys.feedback_cost = c;
  return validate_config(sys);
}

}  // namespace

TEST_CASE("two complementary packets ride one block") {
  auto cfg = single(2, 1, 1, 2, 1);
  auto tiny = tiny_from_placement(cfg, worst_case_demand(cfg), 2);
  REQUIRE(tiny.needed.size() == 2);
  for (const auto& p : tiny.needed) {
    CHECK(p.cached_at.size() == 1);  // order (1,1)
    CHECK(p.tx_copies == 1);
  }
  CHECK(brute_force_min_blocks(tiny) == 1);
  CHECK(Rat(1, 2) == Rat(brute_force_min_blocks(tiny), tiny.packets_per_file));
}

TEST_CASE("three uncached packets under two spatial streams need two blocks") {
  auto cfg = single(3, 2, 0, 3, 2);
  auto tiny = tiny_from_placement(cfg, worst_case_demand(cfg), 1);
  REQUIRE(tiny.needed.size() == 3);
  CHECK(brute_force_min_blocks(tiny) == 2);  // ceil(3/2)
}

TEST_CASE("full caches need zero blocks") {
  auto cfg = single(2, 1, 2, 2, 1);  // gamma = 1
  auto tiny = tiny_from_placement(cfg, worst_case_demand(cfg), 1);
  CHECK(tiny.needed.empty());
  CHECK(brute_force_min_blocks(tiny) == 0);
}

TEST_CASE("feedback cost 1 forces single-packet blocks at t=0") {
  auto cfg = single(3, 2, 0, 3, 1);
  auto tiny = tiny_from_placement(cfg, worst_case_demand(cfg), 2);
  REQUIRE(tiny.needed.size() == 6);
  CHECK(brute_force_min_blocks(tiny) == 6);
}

TEST_CASE("oracle matches the scheduler's normalized time when it applies") {
  struct Case {
    ValidatedConfig cfg;
    int packets;
  };
  for (const auto& [cfg, packets] : std::initializer_list<Case>{
           {single(2, 1, 1, 2, 1), 2},
           {single(2, 1, 1, 2, 1), 4},
           {single(2, 1, 0, 2, 1), 2},
           {single(3, 1, 1, 3, 1), 3},
           {single(3, 2, 0, 3, 2), 4},
           {single(3, 3, 0, 3, 3), 3},
           {single(2, 2, 0, 2, 2), 2},
       }) {
    REQUIRE(cfg.schedule_ok());
    auto tiny = tiny_from_placement(cfg, worst_case_demand(cfg), packets);
    Rat normalized{brute_force_min_blocks(tiny), packets};
    Rat target{cfg.users() - cfg.t, cfg.t + cfg.active_streams};
    CHECK_MESSAGE(normalized == target, "K=", cfg.users(), " L=", cfg.sys.antennas,
                  " t=", cfg.t, " C=", cfg.sys.feedback_cost, " F=", packets);
  }
}

TEST_CASE("multi-transmitter tiny instances") {
  SUBCASE("single-antenna transmitters with disjoint caches") {
    auto cfg = multi(2, 2, 1, Rat(1, 2), 1, 2, 1);
    auto tiny = tiny_from_placement(cfg, worst_case_demand(cfg), 2);
    REQUIRE(tiny.needed.size() == 2);
    for (const auto& p : tiny.needed) CHECK(p.tx_copies == 1);
    CHECK(brute_force_min_blocks(tiny) == 1);
  }
  SUBCASE("full transmitter replication behaves like two antennas") {
    auto cfg = multi(2, 2, 1, Rat(1), 0, 2, 2);
    auto tiny = tiny_from_placement(cfg, worst_case_demand(cfg), 2);
    REQUIRE(tiny.needed.size() == 4);
    for (const auto& p : tiny.needed) CHECK(p.tx_copies == 2);
    CHECK(brute_force_min_blocks(tiny) == 2);
    // with C = 1 the same instance degrades to one packet per block
    auto starved = multi(2, 2, 1, Rat(1), 0, 2, 1);
    auto tiny2 = tiny_from_placement(starved, worst_case_demand(starved), 2);
    CHECK(brute_force_min_blocks(tiny2) == 4);
  }
}

TEST_CASE("averaging over demand permutations") {
  auto cfg = single(2, 1, 1, 2, 1);
  // symmetric placement: every permutation costs the same
  Demand forward{{1, 2}}, backward{{2, 1}};
  int a = brute_force_min_blocks(tiny_from_placement(cfg, forward, 2));
  int b = brute_force_min_blocks(tiny_from_placement(cfg, backward, 2));
  CHECK(a == b);
  CHECK(average_over_demands(cfg, 2) == Rat(a));

  // the average dominates F times the converse bound
  for (auto c : {single(2, 1, 1, 2, 1), single(2, 1, 0, 2, 1), single(3, 2, 0, 3, 2),
                 single(3, 1, 1, 3, 2)}) {
    Rat avg = average_over_demands(c, static_cast<int>(binomial(c.users(), c.t)));
    Rat floor_blocks = lower_bound_delivery(c).time_lb *
                       Rat(binomial(c.users(), c.t));
    CHECK(avg >= floor_blocks);
  }
}

TEST_CASE("budgets are enforced") {
  // search budget: more than 12 needed packets
  auto big = single(4, 2, 0, 4, 2);
  CHECK_THROWS_AS(brute_force_min_blocks(tiny_from_placement(big, worst_case_demand(big), 4)),
                  BudgetExceeded);  // 16 needed > 12

  // packet count must be a positive multiple of C(K,t)
  auto cfg = single(2, 1, 1, 2, 1);
  CHECK_THROWS_AS(tiny_from_placement(cfg, worst_case_demand(cfg), 3), BudgetExceeded);
  CHECK_THROWS_AS(tiny_from_placement(cfg, worst_case_demand(cfg), 0), BudgetExceeded);

  // demand averaging is capped at N <= 4
  SystemConfig sys;
  sys.users = 2;
  sys.antennas = 1;
  sys.rx_cache_fraction = Rat(1, 2);
  sys.library_size = 5;
  sys.feedback_cost = 1;
  CHECK_THROWS_AS(average_over_demands(validate_config(sys), 2), BudgetExceeded);
}
