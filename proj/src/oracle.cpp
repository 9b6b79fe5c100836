#include "lfcc/oracle.hpp"

#include <algorithm>
#include <functional>

#include "lfcc/placement.hpp"

namespace lfcc {

TinyInstance tiny_from_placement(const ValidatedConfig& cfg, const Demand& demand,
                                 int packets_per_file) {
  validate_demand(demand, cfg);
  const long long tau_count = binomial(cfg.users(), cfg.t);
  if (packets_per_file < 1 || packets_per_file % tau_count != 0) {
    throw BudgetExceeded("F = " + std::to_string(packets_per_file) +
                         " must be a positive multiple of C(K,t) = " +
                         std::to_string(tau_count));
  }

  TinyInstance tiny;
  tiny.users = cfg.users();
  tiny.tx_count = cfg.multi_tx() ? cfg.sys.tx_count : 1;
  tiny.tx_antennas = cfg.multi_tx() ? cfg.sys.tx_antennas : cfg.sys.antennas;
  tiny.feedback_cost = cfg.sys.feedback_cost;
  tiny.packets_per_file = packets_per_file;
  tiny.library_size = cfg.library_size();
  tiny.demand = demand;

  std::vector<TransmitterCache> tx_caches;
  if (cfg.multi_tx()) tx_caches = place_transmitter_caches(cfg);

  const auto taus = enumerate_subsets(UserSet::full(cfg.users()), cfg.t);
  for (int k = 1; k <= cfg.users(); ++k) {
    const int file = demand.file_for(k);
    const int copies =
        cfg.multi_tx() ? static_cast<int>(txs_caching_file(tx_caches, file).size()) : 1;
    for (int j = 0; j < packets_per_file; ++j) {
      const UserSet& tau = taus[static_cast<std::size_t>(j % tau_count)];
      if (tau.contains(k)) continue;  // user already caches this packet
      tiny.needed.push_back(TinyPacket{k, file, j, tau, copies});
    }
  }
  return tiny;
}

namespace {

// Largest feasible block that could ever be assembled from these packets;
// used only as an admission-count bound for pruning.
int max_group_size(const TinyInstance& tiny) {
  int best = 1;
  for (const TinyPacket& p : tiny.needed) {
    int budget = std::min(tiny.feedback_cost + 1, tiny.tx_antennas * p.tx_copies);
    best = std::max(best, budget + p.cached_at.size());
  }
  return std::min(best, tiny.users);
}

// Feasibility of one candidate block under the most favorable choice of
// CSIT users. Users outside eta get the weaker C+1 budget cap, so eta is
// chosen by exhausting all admissible subsets.
bool block_feasible(const TinyInstance& tiny, const std::vector<const TinyPacket*>& group) {
  std::vector<int> users;
  for (const TinyPacket* p : group) users.push_back(p->user);
  std::sort(users.begin(), users.end());
  UserSet served{users};

  FeasibilityInstance inst;
  inst.feedback_cost = tiny.feedback_cost;
  inst.tx_antennas = tiny.tx_antennas;
  inst.served = served;
  for (const TinyPacket* p : group) {
    inst.cached_at[p->user] = p->cached_at;
    inst.tx_copies[p->user] = p->tx_copies;
  }

  const int eta_size = std::min(tiny.feedback_cost, served.size());
  for (const UserSet& eta : enumerate_subsets(served, eta_size)) {
    inst.csit_users = eta;
    if (check_feasible(inst)) return true;
  }
  return false;
}

struct SearchState {
  const TinyInstance* tiny;
  int group_cap = 1;
  int best = 0;
  std::vector<char> taken;
  std::vector<const TinyPacket*> group;

  void run(int used_blocks, int remaining) {
    if (remaining == 0) {
      best = std::min(best, used_blocks);
      return;
    }
    // Admission-count bound: every future block serves at most group_cap.
    if (used_blocks + (remaining + group_cap - 1) / group_cap >= best) return;

    int first = 0;
    while (taken[static_cast<std::size_t>(first)]) ++first;
    taken[static_cast<std::size_t>(first)] = 1;
    group.clear();
    group.push_back(&tiny->needed[static_cast<std::size_t>(first)]);
    extend(used_blocks, remaining - 1, first + 1);
    taken[static_cast<std::size_t>(first)] = 0;
  }

  // Grows the block that contains the first untaken packet with any
  // combination of later packets, recursing into the rest each time the
  // block is closed. Feasibility is monotone under the best-eta choice
  // (supersets of an infeasible block stay infeasible), so an infeasible
  // candidate set is never extended further.
  void extend(int used_blocks, int remaining, int from) {
    const std::vector<const TinyPacket*> current = group;
    run(used_blocks + 1, remaining);  // close the block as-is

    for (int i = from; i < static_cast<int>(tiny->needed.size()); ++i) {
      if (taken[static_cast<std::size_t>(i)]) continue;
      const TinyPacket& cand = tiny->needed[static_cast<std::size_t>(i)];
      bool user_clash = false;
      for (const TinyPacket* p : current) {
        if (p->user == cand.user) {
          user_clash = true;
          break;
        }
      }
      if (user_clash) continue;
      group = current;
      group.push_back(&cand);
      if (block_feasible(*tiny, group)) {
        taken[static_cast<std::size_t>(i)] = 1;
        extend(used_blocks, remaining - 1, i + 1);
        taken[static_cast<std::size_t>(i)] = 0;
      }
    }
    group = current;
  }
};

}  // namespace

int brute_force_min_blocks(const TinyInstance& tiny, int max_packets) {
  const int n = static_cast<int>(tiny.needed.size());
  if (n > max_packets) {
    throw BudgetExceeded("instance needs " + std::to_string(n) +
                         " packets, budget is " + std::to_string(max_packets));
  }
  if (n == 0) return 0;

  SearchState state;
  state.tiny = &tiny;
  state.group_cap = max_group_size(tiny);
  state.best = n + 1;
  state.taken.assign(static_cast<std::size_t>(n), 0);
  state.run(0, n);
  return state.best;
}

Rat average_over_demands(const ValidatedConfig& cfg, int packets_per_file) {
  if (cfg.library_size() > 4) {
    throw BudgetExceeded("demand averaging is limited to N <= 4");
  }
  std::vector<int> files(static_cast<std::size_t>(cfg.library_size()));
  for (int n = 1; n <= cfg.library_size(); ++n) files[static_cast<std::size_t>(n - 1)] = n;

  Rat total{0};
  long long count = 0;
  std::vector<int> pick;
  std::function<void()> recurse = [&]() {
    if (static_cast<int>(pick.size()) == cfg.users()) {
      Demand d{pick};
      total += brute_force_min_blocks(tiny_from_placement(cfg, d, packets_per_file));
      ++count;
      return;
    }
    for (int f : files) {
      if (std::find(pick.begin(), pick.end(), f) != pick.end()) continue;
      pick.push_back(f);
      recurse();
      pick.pop_back();
    }
  };
  recurse();
  return total / count;
}

}  // namespace lfcc
