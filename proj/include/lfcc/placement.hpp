#pragma once

#include <compare>
#include <string>
#include <vector>

#include "lfcc/config.hpp"
#include "lfcc/sets.hpp"

namespace lfcc {

// One of the C(K,t) pieces of a file produced at placement time; it is
// stored verbatim by every user listed in cached_by.
struct CacheSubfileId {
  int file = 0;
  UserSet cached_by;  // tau, |tau| = t

  auto operator<=>(const CacheSubfileId&) const = default;
  std::string str() const;
};

// A cache subfile after the two delivery-time splits: first across the
// L-1 users it will be nulled at, then into L+t replicas.
struct DeliverySubfileId {
  int file = 0;
  UserSet cached_by;  // tau
  UserSet nulled_at;  // sigma, |sigma| = L-1, disjoint from tau
  int replica = 0;    // r in [1, L+t]

  auto operator<=>(const DeliverySubfileId&) const = default;
  std::string str() const;
};

struct ReceiverCache {
  int user = 0;
  std::vector<CacheSubfileId> contents;  // sorted
};

struct TransmitterCache {
  int tx = 0;
  std::vector<int> files;  // ascending file indices
};

// All C(K,t) cache subfiles of one file, in lexicographic tau order.
std::vector<CacheSubfileId> split_file(int file, const ValidatedConfig& cfg);

// User k stores every subfile whose tau contains k, for all N files.
std::vector<ReceiverCache> place_receiver_caches(const ValidatedConfig& cfg);

// Round-robin whole-file placement across transmitters; file n ends up at
// exactly t_T of the K_T transmitters. Multi-tx mode only.
std::vector<TransmitterCache> place_transmitter_caches(const ValidatedConfig& cfg);

// Ascending list of transmitters holding the given file.
std::vector<int> txs_caching_file(const std::vector<TransmitterCache>& caches, int file);

// The delivery-time split of one cache subfile demanded by user k: one id
// per (sigma, r) pair, C(K-t-1, L-1)*(L+t) in total, sigma-major order.
std::vector<DeliverySubfileId> delivery_split(const CacheSubfileId& id, int user,
                                              const ValidatedConfig& cfg);

}  // namespace lfcc
