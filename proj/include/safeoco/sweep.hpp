#ifndef SAFEOCO_SWEEP_HPP
#define SAFEOCO_SWEEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "safeoco/audit.hpp"

namespace safeoco {

enum class Schedule { Theorem, Experiment };

struct SweepConfig {
    Setting setting = Setting::Linear;
    std::vector<std::string> algorithms = {"mp-rogd"};  // mp-rogd | mp-ogd | rogd
    std::vector<long> horizons = {100};
    std::vector<std::uint64_t> seeds = {0};
    Schedule schedule = Schedule::Experiment;
    int dim = 2;
    bool audit = false;
    bool zero_cost = false;        // test override: all cost oracles return 0
    bool stable_timing = false;    // write wall_ms as 0 so output is byte-stable
    bool prefix_checkpoints = false;  // one long run per (algo, seed), prefix rows
    std::string save_traces_dir;   // empty = do not persist traces
    int workers = 0;               // 0 = hardware concurrency
};

struct SweepRow {
    std::string algo;
    std::uint64_t seed = 0;
    long horizon = 0;
    double regret = 0.0;
    double avg_regret = 0.0;
    double max_g_value = 0.0;
    double min_gamma = 1.0;
    double max_iterate_gap = 0.0;
    int audit_pass = -1;  // -1 = not audited
    double wall_ms = 0.0;
    std::string error;  // nonempty when the run failed; sweep continues
};

struct SweepResult {
    std::vector<SweepRow> rows;            // per (algo, horizon, seed)
    std::vector<AuditReport> reports;      // parallel to rows when audited
    std::string csv;                       // full document incl. aggregate rows
};

extern const char* const kCsvHeader;

SweepResult run_sweep(const SweepConfig& config);

/// Mean/std regret curves with +-1 std bands on a log-spaced horizon axis.
/// Aggregates are recomputed from the per-seed rows; deterministic output
/// for identical input. Throws on schema mismatch or empty data.
std::string emit_plot(const std::string& csv_text);
void emit_plot_file(const std::string& csv_path, const std::string& out_path);

}  // namespace safeoco

#endif
