#pragma once

#include <map>
#include <vector>

#include "lfcc/config.hpp"
#include "lfcc/placement.hpp"
#include "lfcc/rational.hpp"
#include "lfcc/schedule.hpp"

namespace lfcc {

// A single communication block seen through the converse lens: who is
// served, who the transmitters have CSIT for, and how widely each served
// user's packet is cached on both sides of the channel.
struct FeasibilityInstance {
  int feedback_cost = 0;  // C, system-wide CSIT budget
  int tx_antennas = 0;    // L_T
  UserSet served;         // kappa
  UserSet csit_users;     // eta, subset of kappa, |eta| = min(C, |kappa|)
  std::map<int, UserSet> cached_at;  // per served user: delta_k, excludes k
  std::map<int, int> tx_copies;      // per served user: |epsilon_k| >= 1
};

// Per-user spatial budget: min(C'_k, L_T*|epsilon_k|) with C'_k = C for
// CSIT users and C+1 otherwise.
int user_stream_budget(const FeasibilityInstance& inst, int user);

// Largest number of packets servable together with this instance's cache
// and CSIT pattern: min over served users of (budget + |delta_k|).
int feasibility_max_users(const FeasibilityInstance& inst);

// True when |kappa| <= budget_k + |delta_k| for every served user.
bool check_feasible(const FeasibilityInstance& inst);

// g_{u,v} = min(C, L_T*u) + v: a packet cached at u transmitters and v
// receivers coexists with at most g_{u,v} - 1 same-order packets.
int packet_order_limit(int u, int v, int feedback_cost, int tx_antennas);

// c(u,v) = (K - v) / (min(C, L_T*u) + v): blocks needed per packet of
// order (u,v), normalized.
Rat order_cost(int users, int feedback_cost, int tx_antennas, int u, int v);

// Lower convex envelope of the order-cost grid evaluated at a possibly
// fractional point. Integer coordinates hit the closed form; a fractional
// coordinate is resolved by linear interpolation between its two
// neighboring integer evaluations (u first, then v).
Rat envelope_value(int users, int tx_count, int tx_antennas, int feedback_cost,
                   const Rat& u, const Rat& v);

struct DeliveryBound {
  Rat time_lb{0};  // lower bound on normalized delivery time
  Rat dof_ub{0};   // K(1-gamma) / time_lb
};

DeliveryBound lower_bound_delivery(const ValidatedConfig& cfg);

// Converse view of a scheduled block: eta = the precoded users, delta from
// the subfile indices, epsilon from the transmitter placement (all of them
// in single-tx mode).
FeasibilityInstance feasibility_of_block(const TransmissionBlock& block,
                                         const Demand& demand, const ValidatedConfig& cfg,
                                         const std::vector<TransmitterCache>& tx_caches);

}  // namespace lfcc
