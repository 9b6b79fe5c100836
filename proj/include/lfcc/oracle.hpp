#pragma once

#include <stdexcept>
#include <vector>

#include "lfcc/config.hpp"
#include "lfcc/converse.hpp"
#include "lfcc/rational.hpp"

namespace lfcc {

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// One packet that still has to reach its user.
struct TinyPacket {
  int user = 0;       // demanding user
  int file = 0;       // demanded file
  int index = 0;      // packet index within the file, 0-based
  UserSet cached_at;  // receivers caching this packet (never the user itself)
  int tx_copies = 1;  // transmitters caching it
};

// A desk-scale instance of the minimum-blocks scheduling problem, built
// from a concrete placement and demand so exhaustive search stays cheap.
struct TinyInstance {
  int users = 0;
  int tx_count = 1;
  int tx_antennas = 0;
  int feedback_cost = 0;
  int packets_per_file = 0;  // F
  int library_size = 0;
  Demand demand;
  std::vector<TinyPacket> needed;
};

// Packet-level view of the canonical placement: F must be a multiple of
// C(K,t); packet j of a file inherits the cache pattern of tau number
// j mod C(K,t) in lexicographic order.
TinyInstance tiny_from_placement(const ValidatedConfig& cfg, const Demand& demand,
                                 int packets_per_file);

inline constexpr int kOracleMaxPackets = 12;

// Exact minimum number of communication blocks covering all needed
// packets, each block feasible under the best CSIT-user choice.
// Branch and bound over canonical partitions.
int brute_force_min_blocks(const TinyInstance& tiny,
                           int max_packets = kOracleMaxPackets);

// Mean of brute_force_min_blocks over every K-permutation demand vector
// drawn from the library. Requires N <= 4.
Rat average_over_demands(const ValidatedConfig& cfg, int packets_per_file);

}  // namespace lfcc
