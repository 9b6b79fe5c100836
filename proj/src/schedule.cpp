#include "lfcc/schedule.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lfcc {

namespace {

void require_schedulable(const ValidatedConfig& cfg) {
  if (!cfg.schedule_error) return;
  if (*cfg.schedule_error == ConfigErrorCode::kNonIntegerPartition) {
    throw ScheduleError(ScheduleErrorCode::kNonIntegerPartition,
                        "t = " + std::to_string(cfg.t) + " is not a multiple of " +
                            std::to_string(cfg.active_streams));
  }
  throw ScheduleError(ScheduleErrorCode::kTrivialFullCache,
                      "no cache-only pool: t = " + std::to_string(cfg.t) +
                          " exceeds K - L = " +
                          std::to_string(cfg.users() - cfg.active_streams));
}

}  // namespace

int ReplicaCounter::next(const UserSet& sigma, const UserSet& tau, int user) {
  return ++used_[{sigma, tau, user}];
}

XorMessage build_xor(const UserSet& recipients, const UserSet& shielded,
                     const UserSet& nulled_at, const Demand& demand,
                     const ValidatedConfig& cfg, ReplicaCounter& replicas) {
  require_schedulable(cfg);
  const int streams = cfg.active_streams;
  if (recipients.size() != cfg.xor_fanout()) {
    throw ScheduleError(ScheduleErrorCode::kSizeMismatch,
                        "XOR needs t/L+1 = " + std::to_string(cfg.xor_fanout()) +
                            " recipients, got " + std::to_string(recipients.size()));
  }
  if (shielded.size() != cfg.t * (streams - 1) / streams) {
    throw ScheduleError(ScheduleErrorCode::kSizeMismatch,
                        "XOR needs t(L-1)/L = " +
                            std::to_string(cfg.t * (streams - 1) / streams) +
                            " shielded users, got " + std::to_string(shielded.size()));
  }
  if (nulled_at.size() != streams - 1 || !recipients.disjoint_with(shielded) ||
      !recipients.disjoint_with(nulled_at) || !shielded.disjoint_with(nulled_at)) {
    throw ScheduleError(ScheduleErrorCode::kSizeMismatch,
                        "recipient/shielded/nulled sets must be disjoint with |sigma| = L-1");
  }

  XorMessage xm;
  xm.recipients = recipients;
  xm.shielded = shielded;
  xm.nulled_at = nulled_at;
  const UserSet holders = shielded.union_with(recipients);
  for (int k : recipients.members()) {
    UserSet tau = holders.without(k);
    int r = replicas.next(nulled_at, tau, k);
    xm.parts.push_back(DeliverySubfileId{demand.file_for(k), tau, nulled_at, r});
  }
  return xm;
}

std::vector<TransmissionBlock> schedule(const ValidatedConfig& cfg, const Demand& demand) {
  require_schedulable(cfg);
  validate_demand(demand, cfg);

  const int streams = cfg.active_streams;
  const int chunk = cfg.t / streams;
  const UserSet everyone = UserSet::full(cfg.users());

  std::vector<TransmissionBlock> blocks;
  ReplicaCounter replicas;
  int index = 0;
  for (const UserSet& precoded : enumerate_subsets(everyone, streams)) {
    const UserSet rest = everyone.difference(precoded);
    for (const UserSet& pool : enumerate_subsets(rest, cfg.t)) {
      // Slice the sorted pool into L consecutive runs of t/L users.
      std::vector<UserSet> chunks;
      for (int i = 0; i < streams; ++i) {
        std::vector<int> run(pool.members().begin() + i * chunk,
                             pool.members().begin() + (i + 1) * chunk);
        chunks.emplace_back(UserSet(std::move(run)));
      }
      for (int s = 0; s < streams; ++s) {
        TransmissionBlock block;
        block.index = index++;
        block.precoded = precoded;
        block.cache_only = pool;
        block.shift = s;
        block.chunks = chunks;
        for (int l = 0; l < streams; ++l) {
          const UserSet& paired = chunks[static_cast<std::size_t>((s + l) % streams)];
          UserSet recipients = paired.with(precoded.member(l));
          UserSet shielded = pool.difference(paired);
          UserSet nulled = precoded.without(precoded.member(l));
          block.xors.push_back(
              build_xor(recipients, shielded, nulled, demand, cfg, replicas));
        }
        blocks.push_back(std::move(block));
      }
    }
  }
  return blocks;
}

UniquenessReport verify_exactly_once(const std::vector<TransmissionBlock>& blocks,
                                     const Demand& demand, const ValidatedConfig& cfg) {
  UniquenessReport report;
  const int replicas = cfg.replica_count();

  // Everything the demand requires: all delivery splits of every subfile a
  // user does not already cache.
  std::set<DeliverySubfileId> wanted;
  for (int k = 1; k <= cfg.users(); ++k) {
    for (const CacheSubfileId& sub : split_file(demand.file_for(k), cfg)) {
      if (sub.cached_by.contains(k)) continue;
      for (const DeliverySubfileId& id : delivery_split(sub, k, cfg)) {
        wanted.insert(id);
      }
    }
  }
  report.expected_ids = wanted.size();

  std::map<DeliverySubfileId, int> seen;
  std::map<std::tuple<UserSet, UserSet, int>, int> triple_counts;
  std::map<int, int> demander;  // file -> user, demand is distinct
  for (int k = 1; k <= cfg.users(); ++k) demander[demand.file_for(k)] = k;

  for (const TransmissionBlock& block : blocks) {
    for (const XorMessage& xm : block.xors) {
      for (const DeliverySubfileId& id : xm.parts) {
        ++report.scheduled_ids;
        if (++seen[id] > 1) {
          report.violations.push_back("duplicate delivery subfile " + id.str());
        }
        if (!wanted.count(id)) {
          report.violations.push_back("unexpected delivery subfile " + id.str());
        }
        ++triple_counts[{id.nulled_at, id.cached_by, demander.at(id.file)}];
      }
    }
  }
  for (const DeliverySubfileId& id : wanted) {
    if (!seen.count(id)) {
      report.violations.push_back("missing delivery subfile " + id.str());
    }
  }
  for (const auto& [triple, count] : triple_counts) {
    ++report.triples_checked;
    if (count != replicas) {
      report.violations.push_back(
          "triple (sigma=" + std::get<0>(triple).str() + ", tau=" +
          std::get<1>(triple).str() + ", user=" + std::to_string(std::get<2>(triple)) +
          ") transmitted " + std::to_string(count) + " times, want " +
          std::to_string(replicas));
    }
  }
  return report;
}

DeliveryMetrics delivery_metrics(const ValidatedConfig& cfg) {
  require_schedulable(cfg);
  const int K = cfg.users();
  const int L = cfg.active_streams;
  const int t = cfg.t;

  DeliveryMetrics m;
  m.subpacketization = binomial(K, t) * binomial(K - t - 1, L - 1) * (L + t);
  m.block_count = binomial(K, L) * binomial(K - L, t) * L;
  m.delivery_time = Rat(m.block_count, m.subpacketization);
  m.dof = (Rat(K) * (Rat(1) - cfg.sys.rx_cache_fraction)) / m.delivery_time;
  m.feedback_cost = std::min(cfg.spatial_dim, cfg.sys.feedback_cost);
  return m;
}

}  // namespace lfcc
