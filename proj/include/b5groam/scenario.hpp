// B5GRoam - scenario runner and adversary injector
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "b5groam/ledger.hpp"
#include "b5groam/rollup.hpp"

namespace b5g {

struct AdversaryStrategy {
    enum class Kind {
        InflateUsage,
        ForgeTotal,
        ReplayCommitment,
        ReuseProof,
        TamperProofBytes,
    };

    Kind kind = Kind::InflateUsage;
    uint64_t delta = 100; // inflation / forgery offset where applicable

    static const char* kind_name(Kind k);
    static Kind kind_from_name(const std::string& name);
};

struct SessionSpec {
    UsageRecord usage;
    Amount escrow = 0;
    std::optional<AdversaryStrategy> adversary;
};

struct Scenario {
    int version = 1;
    std::string layer = "l1"; // "l1" | "l2"
    std::string seed;         // empty = default seed
    std::string backend = "groth16";
    uint32_t contributors = 3;
    size_t batch_size = 60; // l2 only
    RateSchedule rates;
    bool salted = false;
    Amount hmno_balance = 0;
    Amount vmno_balance = 0;
    Amount ue_balance = 0;
    std::vector<SessionSpec> sessions;

    // Strict parse: unknown fields anywhere are rejected (ScenarioInvalid).
    static Scenario from_json(const nlohmann::json& j);
    static Scenario from_file(const std::string& path);
    nlohmann::json to_json() const;
};

struct SessionVerdict {
    std::string session_id;
    std::string expected; // settled | rejected | settled_replay_rejected
    std::string actual;
    std::string detail;
    bool ok = false;
};

struct RunResult {
    Digest32 final_digest{};
    std::vector<SessionVerdict> verdicts;
    bool security_ok = true;
    bool privacy_ok = true;
    std::vector<std::string> privacy_findings;
    ChainMetrics l1_metrics;
    nlohmann::json report;
};

struct RunOptions {
    std::string out_dir;       // empty: no artifacts written
    std::string seed_override; // overrides the scenario seed
    unsigned workers = 0;      // proving workers; 0 = hardware concurrency
};

// Executes the full workflow for every session and checks each adversarial
// session against its expected rejection verdict.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

const char* expected_verdict(const std::optional<AdversaryStrategy>& adversary);

} // namespace b5g
