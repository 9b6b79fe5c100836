#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "lfcc/config.hpp"
#include "lfcc/placement.hpp"
#include "lfcc/rational.hpp"

namespace lfcc {

enum class ScheduleErrorCode {
  kNonIntegerPartition,
  kTrivialFullCache,
  kSizeMismatch,
};

class ScheduleError : public std::runtime_error {
 public:
  ScheduleError(ScheduleErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ScheduleErrorCode code() const { return code_; }

 private:
  ScheduleErrorCode code_;
};

// One multicast XOR: t/L+1 delivery subfiles, one per recipient. Every
// user in `shielded` caches all the parts, so the XOR costs them nothing;
// the precoder nulls it at the users in `nulled_at`.
struct XorMessage {
  std::vector<DeliverySubfileId> parts;  // aligned with recipients, ascending
  UserSet recipients;                    // mu, |mu| = t/L + 1
  UserSet shielded;                      // nu, |nu| = t(L-1)/L
  UserSet nulled_at;                     // sigma, |sigma| = L - 1
};

// One emission: L XORs stacked on the L precoder columns for the users in
// `precoded`, serving precoded + cache_only = L + t users at once.
struct TransmissionBlock {
  int index = 0;           // position in the schedule, 0-based
  UserSet precoded;        // lambda, |lambda| = L
  UserSet cache_only;      // pi, |pi| = t
  int shift = 0;           // s in [0, L)
  std::vector<UserSet> chunks;    // phi: cache_only sliced into L runs of t/L
  std::vector<XorMessage> xors;   // xors[l] rides precoder column l
};

// Hands out replica indices per (sigma, tau, demanding user) triple in
// schedule-enumeration order; the L+t appearances of a triple end up with
// replica values 1..L+t.
class ReplicaCounter {
 public:
  int next(const UserSet& sigma, const UserSet& tau, int user);

 private:
  std::map<std::tuple<UserSet, UserSet, int>, int> used_;
};

XorMessage build_xor(const UserSet& recipients, const UserSet& shielded,
                     const UserSet& nulled_at, const Demand& demand,
                     const ValidatedConfig& cfg, ReplicaCounter& replicas);

// The full delivery schedule: C(K,L)*C(K-L,t)*L blocks in lexicographic
// (lambda, pi, shift) order.
std::vector<TransmissionBlock> schedule(const ValidatedConfig& cfg, const Demand& demand);

struct UniquenessReport {
  std::vector<std::string> violations;
  std::size_t expected_ids = 0;   // delivery subfiles the demand requires
  std::size_t scheduled_ids = 0;  // delivery subfiles the schedule carries
  std::size_t triples_checked = 0;
  bool clean() const { return violations.empty(); }
};

// Checks that every demanded-and-uncached delivery subfile appears exactly
// once, and that every (sigma, tau, user) triple appears exactly L+t times.
UniquenessReport verify_exactly_once(const std::vector<TransmissionBlock>& blocks,
                                     const Demand& demand, const ValidatedConfig& cfg);

struct DeliveryMetrics {
  long long subpacketization = 0;  // pieces per file
  long long block_count = 0;
  Rat delivery_time{0};  // block_count / subpacketization = (K-t)/(L+t)
  Rat dof{0};            // K(1-gamma) / delivery_time
  int feedback_cost = 0; // CSI-bearing users per block = min(L, C)
};

DeliveryMetrics delivery_metrics(const ValidatedConfig& cfg);

}  // namespace lfcc
