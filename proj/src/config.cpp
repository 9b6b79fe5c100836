#include "lfcc/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace lfcc {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

ValidatedConfig validate_config(const SystemConfig& sys) {
  ValidatedConfig v;
  v.sys = sys;

  if (sys.users < 1) {
    throw ConfigError(ConfigErrorCode::kBadParameter, "K must be at least 1");
  }
  if (sys.feedback_cost < 1) {
    throw ConfigError(ConfigErrorCode::kBadParameter, "C must be at least 1");
  }
  if (sys.library_size < sys.users) {
    throw ConfigError(ConfigErrorCode::kLibraryTooSmall,
                      "library must hold at least one file per user (N >= K)");
  }
  if (sys.rx_cache_fraction < 0 || sys.rx_cache_fraction > 1) {
    throw ConfigError(ConfigErrorCode::kBadParameter, "gamma must lie in [0,1]");
  }

  Rat t_exact = Rat(sys.users) * sys.rx_cache_fraction;
  if (!rat_is_integer(t_exact)) {
    throw ConfigError(ConfigErrorCode::kNonIntegerT,
                      "K*gamma = " + rat_str(t_exact) + " is not an integer");
  }
  v.t = static_cast<int>(rat_to_int(t_exact));

  if (sys.mode == TxMode::kSingleTx) {
    if (sys.antennas < 1) {
      throw ConfigError(ConfigErrorCode::kBadParameter, "L must be at least 1");
    }
    v.t_tx = 1;
    v.spatial_dim = sys.antennas;
  } else {
    if (sys.tx_count < 1 || sys.tx_antennas < 1) {
      throw ConfigError(ConfigErrorCode::kBadParameter, "K_T and L_T must be at least 1");
    }
    if (sys.tx_cache_fraction > 1 ||
        sys.tx_cache_fraction < Rat(1, sys.tx_count)) {
      throw ConfigError(ConfigErrorCode::kBadParameter,
                        "gamma_T must lie in [1/K_T, 1]");
    }
    Rat t_tx_exact = Rat(sys.tx_count) * sys.tx_cache_fraction;
    if (!rat_is_integer(t_tx_exact)) {
      throw ConfigError(ConfigErrorCode::kNonIntegerTxT,
                        "K_T*gamma_T = " + rat_str(t_tx_exact) + " is not an integer");
    }
    v.t_tx = static_cast<int>(rat_to_int(t_tx_exact));
    v.spatial_dim = sys.tx_antennas * v.t_tx;
  }

  v.active_streams = std::min(v.spatial_dim, sys.feedback_cost);

  if (v.t % v.active_streams != 0) {
    v.schedule_error = ConfigErrorCode::kNonIntegerPartition;
  } else if (v.t > sys.users - v.active_streams) {
    // No room for a cache-only user pool of size t next to the precoded set.
    v.schedule_error = ConfigErrorCode::kTrivialFullCache;
  }
  return v;
}

SystemConfig parse_config_text(const std::string& text) {
  SystemConfig sys;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(ConfigErrorCode::kBadParameter,
                        "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(ConfigErrorCode::kBadParameter,
                        "line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!seen.insert(key).second) {
      throw ConfigError(ConfigErrorCode::kBadParameter, "duplicate key: " + key);
    }
    try {
      if (key == "mode") {
        if (value == "single-tx") {
          sys.mode = TxMode::kSingleTx;
        } else if (value == "multi-tx") {
          sys.mode = TxMode::kMultiTx;
        } else {
          throw std::invalid_argument("mode must be single-tx or multi-tx");
        }
      } else if (key == "K") {
        sys.users = std::stoi(value);
      } else if (key == "L") {
        sys.antennas = std::stoi(value);
      } else if (key == "K_T") {
        sys.tx_count = std::stoi(value);
      } else if (key == "L_T") {
        sys.tx_antennas = std::stoi(value);
      } else if (key == "gamma") {
        sys.rx_cache_fraction = parse_rational(value);
      } else if (key == "gamma_T") {
        sys.tx_cache_fraction = parse_rational(value);
      } else if (key == "N") {
        sys.library_size = std::stoi(value);
      } else if (key == "C") {
        sys.feedback_cost = std::stoi(value);
      } else if (key == "seed") {
        sys.seed = std::stoull(value);
      } else {
        throw std::invalid_argument("unknown key");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(ConfigErrorCode::kBadParameter,
                        "line " + std::to_string(line_no) + " (" + key + "): " + e.what());
    }
  }
  return sys;
}

SystemConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(ConfigErrorCode::kBadParameter, "cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string config_to_text(const SystemConfig& sys) {
  std::ostringstream out;
  out << "mode = " << (sys.mode == TxMode::kSingleTx ? "single-tx" : "multi-tx") << "\n";
  out << "K = " << sys.users << "\n";
  if (sys.mode == TxMode::kSingleTx) {
    out << "L = " << sys.antennas << "\n";
  } else {
    out << "K_T = " << sys.tx_count << "\n";
    out << "L_T = " << sys.tx_antennas << "\n";
    out << "gamma_T = " << rat_str(sys.tx_cache_fraction) << "\n";
  }
  out << "gamma = " << rat_str(sys.rx_cache_fraction) << "\n";
  out << "N = " << sys.library_size << "\n";
  out << "C = " << sys.feedback_cost << "\n";
  out << "seed = " << sys.seed << "\n";
  return out.str();
}

Demand worst_case_demand(const ValidatedConfig& cfg) {
  Demand d;
  d.files.resize(static_cast<std::size_t>(cfg.users()));
  for (int k = 1; k <= cfg.users(); ++k) d.files[static_cast<std::size_t>(k - 1)] = k;
  return d;
}

void validate_demand(const Demand& demand, const ValidatedConfig& cfg) {
  if (demand.user_count() != cfg.users()) {
    throw ConfigError(ConfigErrorCode::kBadParameter, "demand vector must list K files");
  }
  std::set<int> distinct;
  for (int f : demand.files) {
    if (f < 1 || f > cfg.library_size()) {
      throw ConfigError(ConfigErrorCode::kBadParameter,
                        "demanded file " + std::to_string(f) + " outside library");
    }
    if (!distinct.insert(f).second) {
      throw ConfigError(ConfigErrorCode::kBadParameter,
                        "worst-case demand requires distinct files");
    }
  }
}

}  // namespace lfcc
