#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "lfcc/config.hpp"
#include "lfcc/converse.hpp"
#include "lfcc/oracle.hpp"
#include "lfcc/schedule.hpp"
#include "lfcc/simulate.hpp"

namespace lfcc {

using Json = nlohmann::ordered_json;

struct ExperimentSpec {
  std::vector<SystemConfig> configs;
  int trials = 1;
  int payload_bytes = 64;
  bool run_oracle = false;          // exponential search, off by default
  int oracle_packets_per_file = 0;  // 0 picks C(K,t)
};

struct ConfigOutcome {
  SystemConfig sys;
  std::string error;       // empty when the pipeline ran
  std::string error_kind;  // "config", "schedule", "budget", "internal"

  int t = 0;
  int t_tx = 1;
  int active_streams = 0;

  bool scheduled = false;
  DeliveryMetrics metrics;
  bool uniqueness_clean = false;
  std::size_t uniqueness_violations = 0;
  SimulationSummary sim;
  bool bound_computed = false;
  Rat bound_time_lb{0};
  Rat bound_dof_ub{0};
  bool tight = false;  // achievable DoF equals the converse bound exactly

  bool oracle_ran = false;
  int oracle_blocks = 0;
  Rat oracle_time{0};       // blocks normalized by F
  bool oracle_in_range = false;

  long long wall_ms = 0;  // console diagnostics only, never serialized

  bool config_ok() const { return error.empty(); }
  // True when every verification that ran came back clean.
  bool verified() const;
};

struct RunReport {
  static constexpr int kSchemaVersion = 1;
  ExperimentSpec spec;
  std::vector<ConfigOutcome> rows;
  bool all_ok() const;
  bool any_budget_exceeded() const;
  bool any_config_error() const;
};

// Runs placement -> schedule -> verify -> simulate -> bound for every
// config; configs execute in parallel, results keep spec order.
RunReport run_experiment(const ExperimentSpec& spec);

Json report_to_json(const RunReport& report);

// CSV row per config: K,K_T,L_T,gamma,gamma_T,C,T_achievable,T_lower_bound,DoF,tight
std::string bound_report_csv(const RunReport& report);

// Tidy CSV, one row per (config, metric); includes the prior-art
// feedback-cost reference line L+t.
std::string plot_data_csv(const RunReport& report);

Json schedule_to_json(const std::vector<TransmissionBlock>& blocks);
Json placement_to_json(const ValidatedConfig& cfg);

// Per-block channel/precoder/residual trace of one simulation trial.
Json trace_json(const std::vector<TransmissionBlock>& blocks, const ValidatedConfig& cfg,
                const std::vector<TransmitterCache>& tx_caches,
                const PayloadConfig& payload, std::uint64_t trial = 0);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace lfcc
