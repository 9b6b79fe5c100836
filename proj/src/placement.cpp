#include "lfcc/placement.hpp"

#include <algorithm>
#include <stdexcept>

namespace lfcc {

std::string CacheSubfileId::str() const {
  return "W(" + std::to_string(file) + ")_" + cached_by.str();
}

std::string DeliverySubfileId::str() const {
  return "W(" + std::to_string(file) + ")_" + nulled_at.str() + "," + cached_by.str() +
         "^r" + std::to_string(replica);
}

std::vector<CacheSubfileId> split_file(int file, const ValidatedConfig& cfg) {
  std::vector<CacheSubfileId> out;
  const UserSet everyone = UserSet::full(cfg.users());
  for (UserSet& tau : enumerate_subsets(everyone, cfg.t)) {
    out.push_back(CacheSubfileId{file, std::move(tau)});
  }
  return out;
}

std::vector<ReceiverCache> place_receiver_caches(const ValidatedConfig& cfg) {
  std::vector<ReceiverCache> caches(static_cast<std::size_t>(cfg.users()));
  for (int k = 1; k <= cfg.users(); ++k) {
    caches[static_cast<std::size_t>(k - 1)].user = k;
  }
  for (int n = 1; n <= cfg.library_size(); ++n) {
    for (const CacheSubfileId& id : split_file(n, cfg)) {
      for (int k : id.cached_by.members()) {
        caches[static_cast<std::size_t>(k - 1)].contents.push_back(id);
      }
    }
  }
  return caches;
}

std::vector<TransmitterCache> place_transmitter_caches(const ValidatedConfig& cfg) {
  if (!cfg.multi_tx()) {
    throw ConfigError(ConfigErrorCode::kBadParameter,
                      "transmitter caches exist only in multi-tx mode");
  }
  Rat files_per_tx = cfg.sys.tx_cache_fraction * cfg.library_size();
  if (!rat_is_integer(files_per_tx)) {
    throw ConfigError(ConfigErrorCode::kBadParameter,
                      "gamma_T*N = " + rat_str(files_per_tx) + " is not an integer");
  }
  const int m = static_cast<int>(rat_to_int(files_per_tx));
  const int n_files = cfg.library_size();
  std::vector<TransmitterCache> caches(static_cast<std::size_t>(cfg.sys.tx_count));
  for (int tx = 1; tx <= cfg.sys.tx_count; ++tx) {
    auto& cache = caches[static_cast<std::size_t>(tx - 1)];
    cache.tx = tx;
    for (int j = 0; j < m; ++j) {
      int n = ((tx - 1) * m + j) % n_files + 1;  // wraps past the library end
      cache.files.push_back(n);
    }
    std::sort(cache.files.begin(), cache.files.end());
    cache.files.erase(std::unique(cache.files.begin(), cache.files.end()), cache.files.end());
    if (static_cast<int>(cache.files.size()) != m) {
      throw ConfigError(ConfigErrorCode::kBadParameter,
                        "transmitter cache wrapped onto itself; need gamma_T*N <= N");
    }
  }
  return caches;
}

std::vector<int> txs_caching_file(const std::vector<TransmitterCache>& caches, int file) {
  std::vector<int> out;
  for (const TransmitterCache& c : caches) {
    if (std::binary_search(c.files.begin(), c.files.end(), file)) out.push_back(c.tx);
  }
  return out;
}

std::vector<DeliverySubfileId> delivery_split(const CacheSubfileId& id, int user,
                                              const ValidatedConfig& cfg) {
  if (id.cached_by.contains(user)) {
    throw std::invalid_argument("user " + std::to_string(user) +
                                " already caches " + id.str());
  }
  const UserSet others =
      UserSet::full(cfg.users()).difference(id.cached_by.with(user));
  std::vector<DeliverySubfileId> out;
  const int replicas = cfg.replica_count();
  for (const UserSet& sigma : enumerate_subsets(others, cfg.active_streams - 1)) {
    for (int r = 1; r <= replicas; ++r) {
      out.push_back(DeliverySubfileId{id.file, id.cached_by, sigma, r});
    }
  }
  return out;
}

}  // namespace lfcc
