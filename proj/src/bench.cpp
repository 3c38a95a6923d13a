// B5GRoam - benchmark runners and report writers
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/bench.hpp"

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <thread>

#include "b5groam/errors.hpp"
#include "b5groam/scenario.hpp"

namespace b5g {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct BenchSetup {
    BillingCircuit circuit{CircuitConfig{{1, 2, 5}, false, 32}, PoseidonParams::instance_t4()};
    KeyPair keys;

    BenchSetup() {
        SeededEntropy rng("b5g-bench-setup");
        std::vector<std::vector<uint8_t>> contributions(1, std::vector<uint8_t>(32));
        rng.fill(contributions[0].data(), 32);
        keys = keygen(setup(128, contributions), circuit.cs());
    }
};

const BenchSetup& bench_setup() {
    static const BenchSetup s;
    return s;
}

// Proof preparation for n sessions, parallel across a worker pool. Returns
// (usage, commitment, total, proof bytes) tuples in session order.
struct PreparedProof {
    UsageRecord usage;
    Commitment commitment = Commitment::unattested(Fr::zero());
    Amount total = 0;
    std::vector<uint8_t> proof_bytes;
};

std::vector<PreparedProof> prepare_proofs(uint64_t n, unsigned workers,
                                          const std::string& seed) {
    const BenchSetup& s = bench_setup();
    std::vector<PreparedProof> out(n);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = unsigned(std::min<uint64_t>(workers, n));
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    SeededEntropy root(seed);
    for (unsigned w = 0; w < workers; w++) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= out.size()) break;
                    SeededEntropy rng = root.fork("bench-session-" + std::to_string(i));
                    PreparedProof& p = out[i];
                    p.usage = {rng.next_below(1000), rng.next_below(5000), rng.next_below(600)};
                    p.commitment = tee_commit(p.usage);
                    auto res = s.circuit.synthesize(p.usage, p.commitment);
                    p.total = res.public_inputs.total;
                    Proof proof = prove(s.keys.pk, res.public_inputs.as_field_elements(),
                                        res.assignment, rng);
                    p.proof_bytes = proof.serialize();
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

// Drives `proofs` through a fresh L1-only ledger; returns settle gas total.
uint64_t run_l1_arm(const std::vector<PreparedProof>& proofs) {
    const BenchSetup& s = bench_setup();
    Ledger ledger;
    Address hmno = ledger.create_account(Amount(1) << 62);
    Address vmno = ledger.create_account(0);
    Address agr = ledger.deploy_agreement(hmno, vmno, s.circuit.config().rates,
                                          s.keys.vk.digest(),
                                          s.circuit.config().descriptor_digest());
    for (size_t i = 0; i < proofs.size(); i++) {
        const auto& p = proofs[i];
        std::string sid = "s" + std::to_string(i);
        ledger.authorize_session(agr, sid, "ue");
        ledger.lock_escrow(agr, sid, p.total + 1000);
        ledger.submit_commitment(agr, sid, p.commitment);
        auto result = ledger.settle(agr, sid, p.total, p.proof_bytes, s.keys.vk);
        if (result.status != SettlementResult::Status::Settled) {
            throw B5gError(Errc::UnexpectedVerdict, "honest L1 settlement failed");
        }
    }
    return ledger.metrics().gas_by_kind.at("settle");
}

struct L2ArmResult {
    uint64_t batches = 0;
    uint64_t commit = 0, prove = 0, execute = 0;
};

L2ArmResult run_l2_arm(const std::vector<PreparedProof>& proofs, uint64_t batch_size) {
    const BenchSetup& s = bench_setup();
    Ledger ledger;
    Address hmno = ledger.create_account(Amount(1) << 62);
    Address vmno = ledger.create_account(0);
    Address agr = ledger.deploy_agreement(hmno, vmno, s.circuit.config().rates,
                                          s.keys.vk.digest(),
                                          s.circuit.config().descriptor_digest());
    Sequencer seq(ledger, RollupGasModel::from_env());
    seq.register_agreement(agr, s.keys.vk);
    for (size_t i = 0; i < proofs.size(); i++) {
        const auto& p = proofs[i];
        std::string sid = "s" + std::to_string(i);
        ledger.authorize_session(agr, sid, "ue");
        ledger.lock_escrow(agr, sid, p.total + 1000);
        ledger.submit_commitment(agr, sid, p.commitment);
        seq.sync_session(agr, sid);
        seq.submit_tx({agr, sid, p.total, p.proof_bytes});
    }
    L2ArmResult result;
    while (seq.pending() > 0) {
        Batch batch = seq.seal_batch(batch_size);
        seq.commit_batch(batch);
        BatchAttestation att = seq.prove_batch(batch);
        seq.execute_batch(batch, att);
        result.batches++;
        result.commit += batch.gas.commit;
        result.prove += batch.gas.prove;
        result.execute += batch.gas.execute;
    }
    return result;
}

} // namespace

BenchProveRow bench_prove(const std::string& backend, int iters) {
    if (backend == "plonk") {
        return {"plonk", 0.75, 310.0, 270000, "paper"};
    }
    if (backend == "ultrahonk") {
        return {"ultrahonk", 0.17, 90.0, 380000, "paper"};
    }
    if (backend != "groth16") {
        throw B5gError(Errc::UnknownBackend, backend);
    }
    if (iters < 1) throw B5gError(Errc::ParameterMismatch, "iters must be >= 1");

    int fds[2];
    if (pipe(fds) != 0) throw B5gError(Errc::IOFailure, "pipe failed");
    pid_t pid = fork();
    if (pid < 0) throw B5gError(Errc::IOFailure, "fork failed");
    if (pid == 0) {
        // proving subprocess: one timing sample per iteration down the pipe
        close(fds[0]);
        {
            const BenchSetup& s = bench_setup();
            SeededEntropy rng("b5g-bench-prove");
            UsageRecord usage{10, 500, 30};
            Commitment c = tee_commit(usage);
            for (int i = 0; i < iters; i++) {
                auto t0 = Clock::now();
                auto res = s.circuit.synthesize(usage, c);
                Proof proof = prove(s.keys.pk, res.public_inputs.as_field_elements(),
                                    res.assignment, rng);
                auto t1 = Clock::now();
                (void)proof;
                uint64_t ns =
                    uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0)
                                 .count());
                if (write(fds[1], &ns, sizeof(ns)) != ssize_t(sizeof(ns))) _exit(3);
            }
        }
        close(fds[1]);
        _exit(0);
    }
    close(fds[1]);
    std::vector<uint64_t> samples;
    uint64_t ns = 0;
    while (read(fds[0], &ns, sizeof(ns)) == ssize_t(sizeof(ns))) samples.push_back(ns);
    close(fds[0]);
    int status = 0;
    struct rusage usage {};
    if (wait4(pid, &status, 0, &usage) != pid || !WIFEXITED(status) ||
        WEXITSTATUS(status) != 0 || samples.size() != size_t(iters)) {
        throw B5gError(Errc::IOFailure, "proving subprocess failed");
    }
    std::sort(samples.begin(), samples.end());
    double median_s = double(samples[samples.size() / 2]) / 1e9;
    double peak_mb = double(usage.ru_maxrss) / 1024.0; // ru_maxrss is KiB on Linux
    return {"groth16", median_s, peak_mb, 230000, "measured"};
}

std::vector<LayersRow> bench_layers(const std::vector<uint64_t>& tx_counts,
                                    const std::vector<uint64_t>& batch_sizes,
                                    unsigned workers) {
    if (tx_counts.empty()) throw B5gError(Errc::ParameterMismatch, "tx_counts is empty");
    if (batch_sizes.empty()) throw B5gError(Errc::ParameterMismatch, "batch_sizes is empty");
    std::vector<LayersRow> rows;
    for (size_t i = 0; i < tx_counts.size(); i++) {
        uint64_t n = tx_counts[i];
        uint64_t batch_size = batch_sizes[std::min(i, batch_sizes.size() - 1)];
        auto proofs = prepare_proofs(n, workers, "b5g-bench-layers-" + std::to_string(n));
        uint64_t l1_gas = run_l1_arm(proofs);
        L2ArmResult l2 = run_l2_arm(proofs, batch_size);
        LayersRow row;
        row.total_txs = n;
        row.batches = l2.batches;
        row.batch_size = batch_size;
        row.commit_gas = l2.commit;
        row.prove_gas = l2.prove;
        row.execute_gas = l2.execute;
        row.total_l2_gas = l2.commit + l2.prove + l2.execute;
        row.total_l1_gas = l1_gas;
        row.reduction_pct = 100.0 * (1.0 - double(row.total_l2_gas) / double(row.total_l1_gas));
        rows.push_back(row);
    }
    return rows;
}

std::vector<LatencyRow> bench_latency(const std::vector<uint64_t>& loads, double cap_tps,
                                      double rate_tps, double base_latency_s) {
    if (loads.empty()) throw B5gError(Errc::ParameterMismatch, "loads is empty");
    for (uint64_t l : loads) {
        if (l == 0) throw B5gError(Errc::ParameterMismatch, "loads must be positive");
    }
    const BenchSetup& s = bench_setup();

    // One honest statement reused across sessions: the commitment and proof
    // are identical for identical usage, and each settle still runs the full
    // on-chain verification.
    SeededEntropy rng("b5g-bench-latency");
    UsageRecord usage{10, 500, 30};
    Commitment c = tee_commit(usage);
    auto synth = s.circuit.synthesize(usage, c);
    Proof proof = prove(s.keys.pk, synth.public_inputs.as_field_elements(), synth.assignment,
                        rng);
    std::vector<uint8_t> proof_bytes = proof.serialize();
    Amount total = synth.public_inputs.total;

    std::vector<LatencyRow> rows;
    for (uint64_t load : loads) {
        LatencyConfig cfg;
        cfg.tps_cap = cap_tps;
        cfg.base_latency = base_latency_s;
        cfg.arrival_rate = rate_tps;
        Ledger ledger({}, cfg);
        Address hmno = ledger.create_account(Amount(1) << 62);
        Address vmno = ledger.create_account(0);
        Address agr = ledger.deploy_agreement(hmno, vmno, s.circuit.config().rates,
                                              s.keys.vk.digest(),
                                              s.circuit.config().descriptor_digest());
        for (uint64_t i = 0; i < load; i++) {
            std::string sid = "s" + std::to_string(i);
            ledger.authorize_session(agr, sid, "ue");
            ledger.lock_escrow(agr, sid, total + 100);
            ledger.submit_commitment(agr, sid, c);
        }
        size_t first_settle = ledger.log().size();
        for (uint64_t i = 0; i < load; i++) {
            auto result =
                ledger.settle(agr, "s" + std::to_string(i), total, proof_bytes, s.keys.vk);
            if (result.status != SettlementResult::Status::Settled) {
                throw B5gError(Errc::UnexpectedVerdict, "latency settlement failed");
            }
        }
        const auto& log = ledger.log();
        std::vector<double> latencies;
        latencies.reserve(load);
        for (size_t i = first_settle; i < log.size(); i++) {
            latencies.push_back(log[i].timestamp - log[i].arrival);
        }
        std::sort(latencies.begin(), latencies.end());
        double window = log.back().timestamp - log[first_settle].arrival;
        LatencyRow row;
        row.load = load;
        row.median_latency_s = latencies[latencies.size() / 2];
        row.achieved_throughput_tps = double(load) / window;
        row.cap_tps = cap_tps;
        rows.push_back(row);
    }
    return rows;
}

std::string prove_rows_csv(const std::vector<BenchProveRow>& rows) {
    std::string csv = "backend,generation_time_s,generation_memory_mb,verification_gas,source\n";
    for (const auto& r : rows) {
        csv += r.backend + "," + fmt(r.generation_time_s) + "," + fmt(r.generation_memory_mb) +
               "," + std::to_string(r.verification_gas) + "," + r.source + "\n";
    }
    return csv;
}

std::string layers_rows_csv(const std::vector<LayersRow>& rows) {
    std::string csv =
        "total_txs,batches,batch_size,commit_gas,prove_gas,execute_gas,total_l2_gas,"
        "total_l1_gas,reduction_pct\n";
    for (const auto& r : rows) {
        csv += std::to_string(r.total_txs) + "," + std::to_string(r.batches) + "," +
               std::to_string(r.batch_size) + "," + std::to_string(r.commit_gas) + "," +
               std::to_string(r.prove_gas) + "," + std::to_string(r.execute_gas) + "," +
               std::to_string(r.total_l2_gas) + "," + std::to_string(r.total_l1_gas) + "," +
               fmt(r.reduction_pct) + "\n";
    }
    return csv;
}

std::string latency_rows_csv(const std::vector<LatencyRow>& rows) {
    std::string csv = "load,median_latency_s,achieved_throughput_tps,cap_tps\n";
    for (const auto& r : rows) {
        csv += std::to_string(r.load) + "," + fmt(r.median_latency_s) + "," +
               fmt(r.achieved_throughput_tps) + "," + fmt(r.cap_tps) + "\n";
    }
    return csv;
}

namespace {

void write_report(const std::string& csv, const std::string& csv_path,
                  const nlohmann::json& sidecar) {
    if (csv_path.empty() || csv_path == "-") {
        std::fputs(csv.c_str(), stdout);
        return;
    }
    std::ofstream out(csv_path);
    if (!out) throw B5gError(Errc::IOFailure, "cannot open " + csv_path);
    out << csv;
    std::ofstream side(csv_path + ".json");
    if (!side) throw B5gError(Errc::IOFailure, "cannot open " + csv_path + ".json");
    side << sidecar.dump(1) << "\n";
}

} // namespace

void write_prove_report(const std::vector<BenchProveRow>& rows, const std::string& csv_path,
                        const nlohmann::json& config) {
    nlohmann::json provenance = nlohmann::json::array();
    for (const auto& r : rows) {
        provenance.push_back(
            {{"backend", r.backend},
             {"source", r.source},
             {"cells",
              {{"generation_time_s", r.source},
               {"generation_memory_mb", r.source},
               {"verification_gas", r.source == "measured" ? "gas_schedule" : "paper"}}}});
    }
    write_report(prove_rows_csv(rows), csv_path,
                 {{"schema", "b5groam-bench-prove-v1"},
                  {"config", config},
                  {"provenance", std::move(provenance)}});
}

void write_layers_report(const std::vector<LayersRow>& rows, const std::string& csv_path,
                         const nlohmann::json& config) {
    nlohmann::json provenance = nlohmann::json::array();
    for (const auto& r : rows) {
        provenance.push_back({{"total_txs", r.total_txs},
                              {"l2_phase_gas", "gas_schedule"},
                              {"l1_gas", "gas_schedule"},
                              {"counts", "measured"}});
    }
    write_report(layers_rows_csv(rows), csv_path,
                 {{"schema", "b5groam-bench-layers-v1"},
                  {"config", config},
                  {"provenance", std::move(provenance)}});
}

void write_latency_report(const std::vector<LatencyRow>& rows, const std::string& csv_path,
                          const nlohmann::json& config) {
    nlohmann::json provenance = nlohmann::json::array();
    for (const auto& r : rows) {
        provenance.push_back({{"load", r.load}, {"latency_model", "simulated"}});
    }
    write_report(latency_rows_csv(rows), csv_path,
                 {{"schema", "b5groam-bench-latency-v1"},
                  {"config", config},
                  {"provenance", std::move(provenance)}});
}

} // namespace b5g
