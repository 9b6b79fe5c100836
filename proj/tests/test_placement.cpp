#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lfcc/placement.hpp"

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

TEST_CASE("file split counts") {
  CHECK(split_file(1, single(4, 2, 2, 4, 2)).size() == 6);
  CHECK(split_file(1, single(6, 2, 4, 6, 2)).size() == 15);
  auto degenerate = split_file(1, single(4, 2, 0, 4, 2));
  REQUIRE(degenerate.size() == 1);
  CHECK(degenerate[0].cached_by.empty());
}

TEST_CASE("receiver caches hold exactly the subfiles indexed by their user") {
  auto cfg = single(4, 2, 2, 4, 2);
  auto caches = place_receiver_caches(cfg);
  REQUIRE(caches.size() == 4);

  // User 1: tau in {12,13,14} per file, 3 of 6 subfiles.
  int per_file = 0;
  for (const CacheSubfileId& id : caches[0].contents) {
    CHECK(id.cached_by.contains(1));
    if (id.file == 1) ++per_file;
  }
  CHECK(per_file == 3);
  CHECK(caches[0].contents.size() == 3u * 4u);

  // Cache-size constraint: cached fraction is exactly gamma.
  CHECK(Rat(per_file, 6) == cfg.sys.rx_cache_fraction);

  // Every subfile is cached by exactly t users.
  for (const CacheSubfileId& id : split_file(2, cfg)) {
    int holders = 0;
    for (const auto& cache : caches) {
      for (const auto& held : cache.contents) {
        if (held == id) ++holders;
      }
    }
    CHECK(holders == cfg.t);
  }
}

TEST_CASE("every user caches exactly the gamma fraction of the library") {
  for (auto cfg : {single(4, 2, 2, 4, 2), single(6, 2, 4, 6, 2), single(5, 2, 2, 7, 2)}) {
    const Rat per_file{binomial(cfg.users(), cfg.t)};
    for (const auto& cache : place_receiver_caches(cfg)) {
      CHECK(Rat(cache.contents.size()) ==
            cfg.sys.rx_cache_fraction * per_file * cfg.library_size());
    }
  }
}

TEST_CASE("zero cache fraction leaves caches empty") {
  for (const auto& cache : place_receiver_caches(single(4, 2, 0, 4, 2))) {
    CHECK(cache.contents.empty());
  }
}

TEST_CASE("transmitter placement replicates each file t_T times") {
  SUBCASE("full replication") {
    auto caches = place_transmitter_caches(multi(4, 2, 1, Rat(1), 2, 4, 2));
    REQUIRE(caches.size() == 2);
    CHECK(caches[0].files == std::vector<int>{1, 2, 3, 4});
    CHECK(caches[1].files == std::vector<int>{1, 2, 3, 4});
  }
  SUBCASE("modulo wrap") {
    auto caches = place_transmitter_caches(multi(3, 3, 1, Rat(2, 3), 1, 3, 1));
    REQUIRE(caches.size() == 3);
    CHECK(caches[0].files == std::vector<int>{1, 2});
    CHECK(caches[1].files == std::vector<int>{1, 3});
    CHECK(caches[2].files == std::vector<int>{2, 3});
    for (int n = 1; n <= 3; ++n) CHECK(txs_caching_file(caches, n).size() == 2);
  }
  SUBCASE("disjoint halves") {
    auto caches = place_transmitter_caches(multi(2, 2, 1, Rat(1, 2), 1, 4, 1));
    CHECK(caches[0].files == std::vector<int>{1, 2});
    CHECK(caches[1].files == std::vector<int>{3, 4});
    for (int n = 1; n <= 4; ++n) CHECK(txs_caching_file(caches, n).size() == 1);
  }
  SUBCASE("coverage is uniform for every valid gamma_T grid point") {
    for (int kt = 1; kt <= 4; ++kt) {
      for (int ttx = 1; ttx <= kt; ++ttx) {
        int n = 4 * kt;  // keeps gamma_T * N integral
        auto cfg = multi(4, kt, 1, Rat(ttx, kt), 2, n, 2);
        auto caches = place_transmitter_caches(cfg);
        for (int file = 1; file <= n; ++file) {
          CHECK(static_cast<int>(txs_caching_file(caches, file).size()) == ttx);
        }
      }
    }
  }
}

TEST_CASE("non-integral per-transmitter file count is rejected") {
  auto cfg = multi(2, 2, 1, Rat(1, 2), 1, 5, 1);  // gamma_T * N = 5/2
  CHECK_THROWS_AS(place_transmitter_caches(cfg), ConfigError);
}

TEST_CASE("transmitter caches are meaningless in single-tx mode") {
  CHECK_THROWS_AS(place_transmitter_caches(single(4, 2, 2, 4, 2)), ConfigError);
}

TEST_CASE("delivery split sizes") {
  SUBCASE("K=4, L=2, t=2: 4 pieces per cache subfile, 24 per file") {
    auto cfg = single(4, 2, 2, 4, 2);
    std::size_t per_file = 0;
    for (const CacheSubfileId& id : split_file(1, cfg)) {
      if (id.cached_by.contains(1)) continue;
      auto pieces = delivery_split(id, 1, cfg);
      CHECK(pieces.size() == 4);
      per_file += pieces.size();
    }
    // plus the 3 cached subfiles' splits for their own demanding users
    CHECK(per_file == 3u * 4u);
    CHECK(binomial(4, 2) * binomial(1, 1) * 4 == 24);
  }
  SUBCASE("K=6, L=2, t=4: 90 pieces per file") {
    auto cfg = single(6, 2, 4, 6, 2);
    CHECK(binomial(6, 4) * binomial(1, 1) * 6 == 90);
    CacheSubfileId id{1, UserSet({2, 3, 4, 5})};
    CHECK(delivery_split(id, 1, cfg).size() == 6);
  }
  SUBCASE("L=1 collapses to 1+t pieces with empty sigma") {
    auto cfg = single(4, 1, 1, 4, 1);
    CacheSubfileId id{1, UserSet({2})};
    auto pieces = delivery_split(id, 1, cfg);
    CHECK(pieces.size() == 2);  // (1+t) with t=1
    for (const auto& p : pieces) CHECK(p.nulled_at.empty());
  }
}

TEST_CASE("delivery split rejects a demanding user who caches the subfile") {
  auto cfg = single(4, 2, 2, 4, 2);
  CHECK_THROWS_AS(delivery_split(CacheSubfileId{1, UserSet({1, 2})}, 1, cfg),
                  std::invalid_argument);
}

TEST_CASE("delivery splits partition each file without overlap or gap") {
  for (auto cfg : {single(4, 2, 2, 4, 2), single(6, 2, 4, 6, 2), single(6, 3, 3, 6, 3),
                   single(5, 2, 2, 5, 2)}) {
    const int user = 1;
    std::set<DeliverySubfileId> seen;
    std::size_t emitted = 0;
    for (const CacheSubfileId& id : split_file(user, cfg)) {
      if (id.cached_by.contains(user)) continue;
      for (const DeliverySubfileId& piece : delivery_split(id, user, cfg)) {
        CHECK(piece.nulled_at.disjoint_with(piece.cached_by));
        CHECK_FALSE(piece.nulled_at.contains(user));
        CHECK_FALSE(piece.cached_by.contains(user));
        seen.insert(piece);
        ++emitted;
      }
    }
    const std::size_t expected = static_cast<std::size_t>(
        binomial(cfg.users() - 1, cfg.t) *
        binomial(cfg.users() - cfg.t - 1, cfg.active_streams - 1) * cfg.replica_count());
    CHECK(emitted == expected);  // no overlap
    CHECK(seen.size() == expected);

    // No gap: every (tau not containing user, sigma, r) combination shows up.
    std::size_t brute = 0;
    const UserSet everyone = UserSet::full(cfg.users());
    for (const UserSet& tau : enumerate_subsets(everyone, cfg.t)) {
      if (tau.contains(user)) continue;
      for (const UserSet& sigma :
           enumerate_subsets(everyone.difference(tau.with(user)), cfg.active_streams - 1)) {
        for (int r = 1; r <= cfg.replica_count(); ++r) {
          ++brute;
          CHECK(seen.count(DeliverySubfileId{user, tau, sigma, r}) == 1);
        }
      }
    }
    CHECK(brute == expected);
  }
}
