// B5GRoam - deterministic single-node L1 simulation with escrow agreements
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "b5groam/billing_circuit.hpp"
#include "b5groam/cdr.hpp"
#include "b5groam/groth16.hpp"
#include "b5groam/util.hpp"

namespace b5g {

using Address = std::array<uint8_t, 20>;

std::string address_hex(const Address& a);
Address address_from_hex(const std::string& s);

enum class Phase { Created, EscrowLocked, Committed, Settled };

const char* phase_name(Phase p);

struct SessionState {
    Phase phase = Phase::Created;
    Amount escrow = 0;
    std::optional<Fr> h_cdr;
    std::optional<Amount> paid;
    std::string ue_id;
};

struct AgreementContract {
    Address address{};
    Address hmno{};
    Address vmno{};
    RateSchedule rates;
    Digest32 vk_digest{};
    Digest32 descriptor_digest{};
    std::map<std::string, SessionState> sessions;
};

// Static gas schedule calibrated so a Groth16 settlement costs exactly the
// reference per-settlement figure: base 21,000 + verify 230,000 + one
// storage write 9,603 = 260,603.
struct GasSchedule {
    std::map<std::string, uint64_t> verify_gas{
        {"groth16", 230000}, {"plonk", 270000}, {"ultrahonk", 380000}};
    uint64_t base_tx_gas = 21000;
    uint64_t storage_write_gas = 9603;
    uint64_t l1_per_settlement_gas = 260603;

    void validate() const;
    uint64_t settle_gas(const std::string& backend) const;
};

// Single-lane block producer. Arrivals are paced at arrival_rate (defaults
// to the capacity), service takes 1/tps_cap, confirmation adds base_latency.
struct LatencyConfig {
    double tps_cap = 120.0;
    double base_latency = 0.1;
    double arrival_rate = 0.0; // 0 = paced at tps_cap
};

struct TxRecord {
    uint64_t seq = 0;
    std::string kind;
    nlohmann::json payload;
    uint64_t gas = 0;
    double timestamp = 0.0;

    double arrival = 0.0; // derived, not serialized
};

struct SettlementResult {
    enum class Status { Settled, ProofInvalid, InsufficientEscrow };
    Status status = Status::ProofInvalid;
    uint64_t gas = 0;
    Amount paid = 0;
    Amount refund = 0;
};

const char* settlement_status_name(SettlementResult::Status s);

struct ChainMetrics {
    uint64_t tx_count = 0;
    uint64_t total_gas = 0;
    std::map<std::string, uint64_t> gas_by_kind;
    std::map<std::string, uint64_t> tx_by_kind;
    uint64_t settle_verify_gas = 0;
    std::vector<double> latencies;
    double makespan = 0.0;
};

// Net effect of one L2 settlement, applied to L1 at batch execution.
struct BatchEffect {
    Address agreement{};
    std::string session_id;
    Amount total = 0;
};

// Transactions apply strictly in submission order (single writer); reads of
// committed state are safe concurrently with later writes.
class Ledger {
  public:
    explicit Ledger(GasSchedule gas = {}, LatencyConfig latency = {});

    Address create_account(Amount balance);
    bool has_account(const Address& a) const;
    Amount balance(const Address& a) const;

    Address deploy_agreement(const Address& hmno, const Address& vmno,
                             const RateSchedule& rates, const Digest32& vk_digest,
                             const Digest32& descriptor_digest);
    const AgreementContract& agreement(const Address& addr) const;

    void authorize_session(const Address& agr, const std::string& session_id,
                           const std::string& ue_id);
    void lock_escrow(const Address& agr, const std::string& session_id, Amount amount);
    void submit_commitment(const Address& agr, const std::string& session_id,
                           const Commitment& commitment);

    // Verification failure and over-escrow totals are reported outcomes with
    // gas charged; phase/key preconditions throw and leave state unchanged.
    SettlementResult settle(const Address& agr, const std::string& session_id, Amount total,
                            const std::vector<uint8_t>& proof_bytes,
                            const VerificationKey& vk, const std::string& backend = "groth16");
    SettlementResult settle(const Address& agr, const std::string& session_id, Amount total,
                            const Proof& proof, const VerificationKey& vk,
                            const std::string& backend = "groth16");

    // Rollup hooks: batch lifecycle records on L1.
    void batch_commit(uint64_t batch_id, const Digest32& pre_root, const Digest32& post_root,
                      uint64_t size, uint64_t gas);
    void batch_prove(uint64_t batch_id, const Digest32& attestation_sig, uint64_t gas);
    void batch_execute(uint64_t batch_id, const std::vector<BatchEffect>& effects,
                       uint64_t gas);
    void batch_reject(uint64_t batch_id);

    ChainMetrics metrics() const;
    nlohmann::json state_snapshot() const;
    Digest32 state_digest() const;
    const std::vector<TxRecord>& log() const { return log_; }
    const GasSchedule& gas_schedule() const { return gas_; }

    // Sum of balances plus live escrow; conserved by every transaction.
    Amount total_supply() const;

    void write_log_jsonl(const std::string& path) const;
    static std::vector<TxRecord> read_log_jsonl(const std::string& path);

    // Rebuilds state by replaying a transaction log from genesis.
    static Ledger replay(const std::vector<TxRecord>& log, GasSchedule gas = {},
                         LatencyConfig latency = {});

  private:
    struct BatchRecord {
        std::string pre_root;
        std::string post_root;
        uint64_t size = 0;
        std::string status; // committed | proven | executed
    };

    Address derive_address(const char* domain, uint64_t nonce) const;
    AgreementContract& agreement_mut(const Address& addr);
    TxRecord& append_tx(const std::string& kind, nlohmann::json payload, uint64_t gas);
    void apply_settlement_transfers(AgreementContract& agr, SessionState& session,
                                    Amount total);
    void apply_record(const TxRecord& rec);

    GasSchedule gas_;
    LatencyConfig latency_;
    std::map<Address, Amount> accounts_;
    std::map<Address, AgreementContract> agreements_;
    std::map<uint64_t, BatchRecord> batches_;
    std::vector<TxRecord> log_;
    uint64_t account_nonce_ = 0;
    uint64_t contract_nonce_ = 0;
    double last_service_end_ = 0.0;
    bool replaying_ = false;
};

} // namespace b5g
