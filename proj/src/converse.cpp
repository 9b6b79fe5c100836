#include "lfcc/converse.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace lfcc {

int user_stream_budget(const FeasibilityInstance& inst, int user) {
  const int c_eff = inst.feedback_cost + (inst.csit_users.contains(user) ? 0 : 1);
  const int antennas = inst.tx_antennas * inst.tx_copies.at(user);
  return std::min(c_eff, antennas);
}

int feasibility_max_users(const FeasibilityInstance& inst) {
  int bound = std::numeric_limits<int>::max();
  for (int k : inst.served.members()) {
    bound = std::min(bound,
                     user_stream_budget(inst, k) +
                         static_cast<int>(inst.cached_at.at(k).size()));
  }
  return bound;
}

bool check_feasible(const FeasibilityInstance& inst) {
  return inst.served.size() <= feasibility_max_users(inst);
}

int packet_order_limit(int u, int v, int feedback_cost, int tx_antennas) {
  if (u < 1 || v < 0) throw std::invalid_argument("packet order needs u >= 1, v >= 0");
  return std::min(feedback_cost, tx_antennas * u) + v;
}

Rat order_cost(int users, int feedback_cost, int tx_antennas, int u, int v) {
  return Rat(users - v, packet_order_limit(u, v, feedback_cost, tx_antennas));
}

namespace {

// Interpolates c(., v) between the two integer u neighbors of x.
Rat cost_along_u(int users, int tx_count, int tx_antennas, int feedback_cost,
                 const Rat& x, int v) {
  if (x < 1 || x > tx_count) throw std::invalid_argument("u outside [1, K_T]");
  if (rat_is_integer(x)) {
    return order_cost(users, feedback_cost, tx_antennas,
                      static_cast<int>(rat_to_int(x)), v);
  }
  const int lo = static_cast<int>(rat_floor(x).convert_to<long long>());
  const Rat f = x - lo;
  Rat a = order_cost(users, feedback_cost, tx_antennas, lo, v);
  Rat b = order_cost(users, feedback_cost, tx_antennas, lo + 1, v);
  return a + (b - a) * f;
}

}  // namespace

Rat envelope_value(int users, int tx_count, int tx_antennas, int feedback_cost,
                   const Rat& u, const Rat& v) {
  if (v < 0 || v > users) throw std::invalid_argument("v outside [0, K]");
  if (rat_is_integer(v)) {
    return cost_along_u(users, tx_count, tx_antennas, feedback_cost, u,
                        static_cast<int>(rat_to_int(v)));
  }
  const int lo = static_cast<int>(rat_floor(v).convert_to<long long>());
  const Rat f = v - lo;
  Rat a = cost_along_u(users, tx_count, tx_antennas, feedback_cost, u, lo);
  Rat b = cost_along_u(users, tx_count, tx_antennas, feedback_cost, u, lo + 1);
  return a + (b - a) * f;
}

DeliveryBound lower_bound_delivery(const ValidatedConfig& cfg) {
  const int tx_count = cfg.multi_tx() ? cfg.sys.tx_count : 1;
  const int tx_antennas = cfg.multi_tx() ? cfg.sys.tx_antennas : cfg.sys.antennas;
  DeliveryBound bound;
  bound.time_lb = envelope_value(cfg.users(), tx_count, tx_antennas,
                                 cfg.sys.feedback_cost, Rat(cfg.t_tx), Rat(cfg.t));
  if (bound.time_lb == 0) {
    bound.dof_ub = 0;  // full caches: nothing to deliver, DoF undefined
    return bound;
  }
  Rat demand_load = Rat(cfg.users()) * (Rat(1) - cfg.sys.rx_cache_fraction);
  bound.dof_ub = demand_load / bound.time_lb;
  return bound;
}

FeasibilityInstance feasibility_of_block(const TransmissionBlock& block,
                                         const Demand& demand, const ValidatedConfig& cfg,
                                         const std::vector<TransmitterCache>& tx_caches) {
  FeasibilityInstance inst;
  inst.feedback_cost = cfg.sys.feedback_cost;
  inst.tx_antennas = cfg.multi_tx() ? cfg.sys.tx_antennas : cfg.sys.antennas;
  inst.served = block.precoded.union_with(block.cache_only);
  inst.csit_users = block.precoded;
  for (const XorMessage& xm : block.xors) {
    for (std::size_t i = 0; i < xm.parts.size(); ++i) {
      const int k = xm.recipients.member(static_cast<int>(i));
      inst.cached_at[k] = xm.parts[i].cached_by;
      if (cfg.multi_tx()) {
        inst.tx_copies[k] =
            static_cast<int>(txs_caching_file(tx_caches, demand.file_for(k)).size());
      } else {
        inst.tx_copies[k] = 1;
      }
    }
  }
  return inst;
}

}  // namespace lfcc
