// B5GRoam - benchmark runners and report writers
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <string>
#include <vector>

#include "b5groam/ledger.hpp"
#include "b5groam/rollup.hpp"

namespace b5g {

// Every reported figure is either measured locally or shipped reference
// data; the source field says which.
struct BenchProveRow {
    std::string backend;
    double generation_time_s = 0.0;
    double generation_memory_mb = 0.0;
    uint64_t verification_gas = 0;
    std::string source; // "measured" | "paper"
};

// Groth16 runs in a forked subprocess (median wall time over iters, peak
// resident set from the child's rusage). Other backends return shipped
// reference rows. Throws UnknownBackend otherwise.
BenchProveRow bench_prove(const std::string& backend, int iters);

struct LayersRow {
    uint64_t total_txs = 0;
    uint64_t batches = 0;
    uint64_t batch_size = 0;
    uint64_t commit_gas = 0;
    uint64_t prove_gas = 0;
    uint64_t execute_gas = 0;
    uint64_t total_l2_gas = 0;
    uint64_t total_l1_gas = 0;
    double reduction_pct = 0.0;
};

// Runs each workload through the L1-only path and the L2 pipeline with real
// proofs; gas comes from the schedules. batch_sizes is broadcast if shorter
// than tx_counts.
std::vector<LayersRow> bench_layers(const std::vector<uint64_t>& tx_counts,
                                    const std::vector<uint64_t>& batch_sizes,
                                    unsigned workers = 0);

struct LatencyRow {
    uint64_t load = 0;
    double median_latency_s = 0.0;
    double achieved_throughput_tps = 0.0;
    double cap_tps = 0.0;
};

// Submits `load` settlements per row against the simulated L1 at the given
// capacity; arrivals pace at `rate` (0 = at capacity).
std::vector<LatencyRow> bench_latency(const std::vector<uint64_t>& loads, double cap_tps = 100.0,
                                      double rate_tps = 0.0, double base_latency_s = 0.1);

// CSV with a header row plus a JSON sidecar (<path>.json) carrying config
// and per-row provenance labels.
void write_prove_report(const std::vector<BenchProveRow>& rows, const std::string& csv_path,
                        const nlohmann::json& config);
void write_layers_report(const std::vector<LayersRow>& rows, const std::string& csv_path,
                         const nlohmann::json& config);
void write_latency_report(const std::vector<LatencyRow>& rows, const std::string& csv_path,
                          const nlohmann::json& config);

std::string prove_rows_csv(const std::vector<BenchProveRow>& rows);
std::string layers_rows_csv(const std::vector<LayersRow>& rows);
std::string latency_rows_csv(const std::vector<LatencyRow>& rows);

} // namespace b5g
