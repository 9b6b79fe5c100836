#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfcc/rational.hpp"
#include "lfcc/sets.hpp"

namespace lfcc {

enum class TxMode { kSingleTx, kMultiTx };

// Raw scenario parameters as read from a config document.
struct SystemConfig {
  TxMode mode = TxMode::kSingleTx;
  int users = 0;             // K
  int antennas = 0;          // L, single-transmitter mode
  int tx_count = 1;          // K_T, multi-transmitter mode
  int tx_antennas = 0;       // L_T, antennas per transmitter
  Rat rx_cache_fraction{0};  // gamma
  Rat tx_cache_fraction{1};  // gamma_T
  int library_size = 0;      // N
  int feedback_cost = 0;     // C
  std::uint64_t seed = 0;
};

enum class ConfigErrorCode {
  kNonIntegerT,
  kNonIntegerTxT,
  kNonIntegerPartition,
  kTrivialFullCache,
  kLibraryTooSmall,
  kBadParameter,
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ConfigErrorCode code() const { return code_; }

 private:
  ConfigErrorCode code_;
};

// Validated configuration with all derived quantities. Immutable after
// validate_config; everything downstream takes it by const reference.
struct ValidatedConfig {
  SystemConfig sys;
  int t = 0;             // K * gamma, cumulative receiver cache size
  int t_tx = 1;          // K_T * gamma_T (1 in single-tx mode)
  int spatial_dim = 0;   // L (single-tx) or L_T * t_T (multi-tx)
  int active_streams = 0;  // min(spatial_dim, C): streams left after shutdown

  // The delivery construction additionally needs t/active_streams integral
  // and a nonempty cache-only user pool. Violations are recorded here and
  // raised by the scheduler, not by validation, so that placement and the
  // converse bound still work on such configs.
  std::optional<ConfigErrorCode> schedule_error;

  int users() const { return sys.users; }
  int library_size() const { return sys.library_size; }
  bool multi_tx() const { return sys.mode == TxMode::kMultiTx; }
  // Width of the channel matrix: total transmit antennas.
  int total_antennas() const {
    return multi_tx() ? sys.tx_count * sys.tx_antennas : sys.antennas;
  }
  // Antenna coordinates the simulation carries. Single-tx shutdown drops
  // the unused columns outright; multi-tx keeps every physical antenna and
  // constrains precoder support instead.
  int channel_width() const {
    return multi_tx() ? total_antennas() : active_streams;
  }
  bool schedule_ok() const { return !schedule_error.has_value(); }
  // Recipients per XOR message: t/L + 1.
  int xor_fanout() const { return t / active_streams + 1; }
  // Replica count per (tau, sigma) index pair: L + t.
  int replica_count() const { return active_streams + t; }
};

ValidatedConfig validate_config(const SystemConfig& sys);

// Flat key/value document: one "key = value" pair per line, '#' comments.
// Keys: mode, K, L, K_T, L_T, gamma, gamma_T, N, C, seed.
SystemConfig parse_config_text(const std::string& text);
SystemConfig load_config_file(const std::string& path);
std::string config_to_text(const SystemConfig& sys);

// Per-user demanded file indices; worst case means all entries distinct.
struct Demand {
  std::vector<int> files;  // files[k-1] is the file demanded by user k
  int file_for(int user) const { return files.at(static_cast<std::size_t>(user - 1)); }
  int user_count() const { return static_cast<int>(files.size()); }
};

Demand worst_case_demand(const ValidatedConfig& cfg);  // user k requests file k
void validate_demand(const Demand& demand, const ValidatedConfig& cfg);

}  // namespace lfcc
