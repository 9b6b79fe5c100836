// Command-line front end: plan / simulate / bound / oracle / sweep.
//
// Exit codes: 0 ok, 2 verification failure, 3 config error, 4 search
// budget exceeded, 1 I/O or internal error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "lfcc/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitVerification = 2;
constexpr int kExitConfig = 3;
constexpr int kExitBudget = 4;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
};

lfcc::SystemConfig load_config(const CommonArgs& args) {
  lfcc::SystemConfig sys = lfcc::load_config_file(args.config_path);
  if (args.seed) sys.seed = *args.seed;
  return sys;
}

void print_outcome(const lfcc::ConfigOutcome& row) {
  using std::cout;
  if (!row.config_ok()) {
    cout << "error (" << row.error_kind << "): " << row.error << "\n";
    return;
  }
  cout << "t = " << row.t << ", L_eff = " << row.active_streams
       << ", subpacketization = " << row.metrics.subpacketization
       << ", blocks = " << row.metrics.block_count
       << ", T = " << lfcc::rat_str(row.metrics.delivery_time)
       << ", DoF = " << lfcc::rat_str(row.metrics.dof)
       << ", feedback cost = " << row.metrics.feedback_cost << "\n";
  cout << "uniqueness: " << (row.uniqueness_clean ? "clean" : "VIOLATED") << "  bound: T >= "
       << lfcc::rat_str(row.bound_time_lb) << ", DoF <= " << lfcc::rat_str(row.bound_dof_ub)
       << (row.tight ? " (tight)" : " (NOT TIGHT)") << "\n";
  if (row.sim.trials > 0) {
    cout << "simulation: " << row.sim.trials << " trial(s), " << row.sim.parts_decoded
         << " decodes, " << row.sim.decode_failures << " failure(s), max null residual "
         << row.sim.max_null_residual << ", max decode residual "
         << row.sim.max_decode_residual << ", files "
         << (row.sim.files_reconstructed ? "reconstructed" : "INCOMPLETE") << "\n";
    cout << "feedback: CSIT slots/block = " << row.sim.csit_slots_per_block
         << ", CSIR slots/block = [" << row.sim.csir_slots_min << ", "
         << row.sim.csir_slots_max << "]\n";
  }
  if (row.oracle_ran) {
    cout << "oracle: min blocks = " << row.oracle_blocks << ", normalized T = "
         << lfcc::rat_str(row.oracle_time)
         << (row.oracle_in_range ? " within [bound, achievable]" : " OUT OF RANGE") << "\n";
  }
  cout << "wall time: " << row.wall_ms << " ms\n";
}

int report_exit_code(const lfcc::RunReport& report) {
  if (report.any_config_error()) return kExitConfig;
  if (report.any_budget_exceeded()) return kExitBudget;
  if (!report.all_ok()) return kExitVerification;
  return kExitOk;
}

void write_reports(const lfcc::RunReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  lfcc::write_text_file((fs::path(out_dir) / "report.json").string(),
                        lfcc::report_to_json(report).dump(2) + "\n");
  lfcc::write_text_file((fs::path(out_dir) / "bounds.csv").string(),
                        lfcc::bound_report_csv(report));
  lfcc::write_text_file((fs::path(out_dir) / "plot_data.csv").string(),
                        lfcc::plot_data_csv(report));
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (!token.empty()) out.push_back(std::stoi(token));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-feedback multi-antenna coded caching: scheduler, simulator, bounds"};
  app.require_subcommand(1);

  CommonArgs common;
  int trials = 1;
  int payload_bytes = 64;
  std::string out_dir;
  std::string schedule_json_path, placement_json_path, trace_path, csv_path;
  bool run_oracle = false;
  bool oracle_average = false;
  bool emit_json = false;
  int packets_per_file = 0;
  std::string c_list, t_list, l_list;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", common.config_path, "config file path")->required();
    cmd->add_option("--seed", common.seed, "override the config seed");
  };

  CLI::App* plan = app.add_subcommand("plan", "build and verify the delivery schedule");
  add_common(plan);
  plan->add_option("--schedule-json", schedule_json_path, "write the schedule as JSON");
  plan->add_option("--placement-json", placement_json_path, "write the placement as JSON");
  plan->add_flag("--json", emit_json, "print the report as JSON");

  CLI::App* simulate = app.add_subcommand("simulate", "full pipeline with channel simulation");
  add_common(simulate);
  simulate->add_option("--trials", trials, "channel realizations per block");
  simulate->add_option("--payload-bytes", payload_bytes, "payload bytes per subfile (even)");
  simulate->add_option("--out", out_dir, "directory for report.json and CSV tables");
  simulate->add_option("--trace", trace_path, "write a per-block trial-0 trace JSON");
  simulate->add_flag("--oracle", run_oracle, "also run the brute-force oracle");
  simulate->add_flag("--json", emit_json, "print the report as JSON");

  CLI::App* bound = app.add_subcommand("bound", "evaluate the converse bound only");
  add_common(bound);
  bound->add_option("--out", csv_path, "write the bound CSV to this file");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force minimum-blocks search");
  add_common(oracle);
  oracle->add_option("--packets-per-file", packets_per_file,
                     "packets per file (multiple of C(K,t); default C(K,t))");
  oracle->add_flag("--average", oracle_average, "average over all demand permutations");

  CLI::App* sweep = app.add_subcommand("sweep", "grid sweep over C, t, and L");
  add_common(sweep);
  sweep->add_option("--c-list", c_list, "comma-separated feedback costs");
  sweep->add_option("--t-list", t_list, "comma-separated cumulative cache sizes");
  sweep->add_option("--l-list", l_list, "comma-separated antenna counts");
  sweep->add_option("--trials", trials, "channel realizations per block");
  sweep->add_option("--payload-bytes", payload_bytes, "payload bytes per subfile (even)");
  sweep->add_option("--out", out_dir, "directory for report.json and CSV tables");
  sweep->add_flag("--oracle", run_oracle, "run the brute-force oracle per config");

  CLI11_PARSE(app, argc, argv);

  try {
    lfcc::SystemConfig base = load_config(common);

    if (plan->parsed()) {
      lfcc::ExperimentSpec spec;
      spec.configs = {base};
      spec.trials = 0;  // no channel simulation
      lfcc::RunReport report = lfcc::run_experiment(spec);
      if (!schedule_json_path.empty() || !placement_json_path.empty()) {
        lfcc::ValidatedConfig cfg = lfcc::validate_config(base);
        if (!placement_json_path.empty()) {
          lfcc::write_text_file(placement_json_path,
                                lfcc::placement_to_json(cfg).dump(2) + "\n");
        }
        if (!schedule_json_path.empty()) {
          auto blocks = lfcc::schedule(cfg, lfcc::worst_case_demand(cfg));
          lfcc::write_text_file(schedule_json_path,
                                lfcc::schedule_to_json(blocks).dump(2) + "\n");
        }
      }
      if (emit_json) {
        std::cout << lfcc::report_to_json(report).dump(2) << "\n";
      } else {
        print_outcome(report.rows.front());
      }
      return report_exit_code(report);
    }

    if (simulate->parsed()) {
      lfcc::ExperimentSpec spec;
      spec.configs = {base};
      spec.trials = trials;
      spec.payload_bytes = payload_bytes;
      spec.run_oracle = run_oracle;
      lfcc::RunReport report = lfcc::run_experiment(spec);
      if (!trace_path.empty()) {
        lfcc::ValidatedConfig cfg = lfcc::validate_config(base);
        lfcc::Demand demand = lfcc::worst_case_demand(cfg);
        std::vector<lfcc::TransmitterCache> tx_caches;
        if (cfg.multi_tx()) tx_caches = lfcc::place_transmitter_caches(cfg);
        auto blocks = lfcc::schedule(cfg, demand);
        lfcc::PayloadConfig payload{payload_bytes, base.seed};
        lfcc::write_text_file(
            trace_path,
            lfcc::trace_json(blocks, cfg, tx_caches, payload).dump(2) + "\n");
      }
      if (!out_dir.empty()) write_reports(report, out_dir);
      if (emit_json) {
        std::cout << lfcc::report_to_json(report).dump(2) << "\n";
      } else {
        print_outcome(report.rows.front());
      }
      return report_exit_code(report);
    }

    if (bound->parsed()) {
      lfcc::ValidatedConfig cfg = lfcc::validate_config(base);
      lfcc::DeliveryBound result = lfcc::lower_bound_delivery(cfg);
      std::cout << "T_lower_bound = " << lfcc::rat_str(result.time_lb)
                << ", DoF_upper_bound = " << lfcc::rat_str(result.dof_ub) << "\n";
      if (!csv_path.empty()) {
        lfcc::ExperimentSpec spec;
        spec.configs = {base};
        spec.trials = 0;
        lfcc::RunReport report = lfcc::run_experiment(spec);
        lfcc::write_text_file(csv_path, lfcc::bound_report_csv(report));
      }
      return kExitOk;
    }

    if (oracle->parsed()) {
      lfcc::ValidatedConfig cfg = lfcc::validate_config(base);
      int per_file = packets_per_file > 0
                         ? packets_per_file
                         : static_cast<int>(lfcc::binomial(cfg.users(), cfg.t));
      if (oracle_average) {
        lfcc::Rat avg = lfcc::average_over_demands(cfg, per_file);
        std::cout << "average min blocks over demand permutations = " << lfcc::rat_str(avg)
                  << " (normalized T = " << lfcc::rat_str(avg / per_file) << ")\n";
      } else {
        lfcc::Demand demand = lfcc::worst_case_demand(cfg);
        int blocks = lfcc::brute_force_min_blocks(
            lfcc::tiny_from_placement(cfg, demand, per_file));
        std::cout << "min blocks = " << blocks << " for F = " << per_file
                  << " (normalized T = " << lfcc::rat_str(lfcc::Rat(blocks, per_file))
                  << ")\n";
      }
      return kExitOk;
    }

    if (sweep->parsed()) {
      lfcc::ExperimentSpec spec;
      spec.trials = trials;
      spec.payload_bytes = payload_bytes;
      spec.run_oracle = run_oracle;
      std::vector<int> cs = c_list.empty() ? std::vector<int>{base.feedback_cost}
                                           : parse_int_list(c_list);
      std::vector<int> ls = l_list.empty() ? std::vector<int>{base.antennas}
                                           : parse_int_list(l_list);
      std::vector<int> ts = t_list.empty() ? std::vector<int>{-1} : parse_int_list(t_list);
      for (int l : ls) {
        for (int t : ts) {
          for (int c : cs) {
            lfcc::SystemConfig sys = base;
            sys.feedback_cost = c;
            if (sys.mode == lfcc::TxMode::kSingleTx) sys.antennas = l;
            if (t >= 0) sys.rx_cache_fraction = lfcc::Rat(t, sys.users);
            spec.configs.push_back(sys);
          }
        }
      }
      lfcc::RunReport report = lfcc::run_experiment(spec);
      if (!out_dir.empty()) write_reports(report, out_dir);
      for (const lfcc::ConfigOutcome& row : report.rows) {
        std::cout << "K=" << row.sys.users << " L="
                  << (row.sys.mode == lfcc::TxMode::kSingleTx ? row.sys.antennas
                                                              : row.active_streams)
                  << " t=" << row.t << " C=" << row.sys.feedback_cost << ": ";
        if (!row.config_ok()) {
          std::cout << "error (" << row.error_kind << "): " << row.error << "\n";
        } else {
          std::cout << "DoF = " << lfcc::rat_str(row.metrics.dof)
                    << ", T = " << lfcc::rat_str(row.metrics.delivery_time)
                    << ", feedback = " << row.metrics.feedback_cost
                    << (row.verified() ? "" : "  [FAILED CHECKS]") << "\n";
        }
      }
      return report_exit_code(report);
    }
  } catch (const lfcc::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const lfcc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lfcc::ScheduleError& e) {
    std::cerr << "schedule error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
