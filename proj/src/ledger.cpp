// B5GRoam - deterministic single-node L1 simulation with escrow agreements
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/ledger.hpp"

#include <fstream>

#include "b5groam/errors.hpp"

namespace b5g {

std::string address_hex(const Address& a) {
    return hex_encode(std::vector<uint8_t>(a.begin(), a.end()));
}

Address address_from_hex(const std::string& s) {
    auto bytes = hex_decode(s);
    if (bytes.size() != 20) throw B5gError(Errc::SerializationError, "address must be 20 bytes");
    Address a;
    std::copy(bytes.begin(), bytes.end(), a.begin());
    return a;
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Created: return "Created";
        case Phase::EscrowLocked: return "EscrowLocked";
        case Phase::Committed: return "Committed";
        case Phase::Settled: return "Settled";
    }
    return "?";
}

const char* settlement_status_name(SettlementResult::Status s) {
    switch (s) {
        case SettlementResult::Status::Settled: return "settled";
        case SettlementResult::Status::ProofInvalid: return "proof_invalid";
        case SettlementResult::Status::InsufficientEscrow: return "insufficient_escrow";
    }
    return "?";
}

void GasSchedule::validate() const {
    for (const auto& [name, gas] : verify_gas) {
        if (gas == 0) throw B5gError(Errc::ParameterMismatch, "zero verify gas for " + name);
    }
    if (base_tx_gas == 0 || storage_write_gas == 0 || l1_per_settlement_gas == 0) {
        throw B5gError(Errc::ParameterMismatch, "gas schedule entries must be positive");
    }
}

uint64_t GasSchedule::settle_gas(const std::string& backend) const {
    auto it = verify_gas.find(backend);
    if (it == verify_gas.end()) {
        throw B5gError(Errc::UnknownBackend, "no verify gas for backend " + backend);
    }
    return base_tx_gas + it->second + storage_write_gas;
}

Ledger::Ledger(GasSchedule gas, LatencyConfig latency)
    : gas_(std::move(gas)), latency_(latency) {
    gas_.validate();
    if (latency_.arrival_rate <= 0.0) latency_.arrival_rate = latency_.tps_cap;
}

Address Ledger::derive_address(const char* domain, uint64_t nonce) const {
    Sha256 h;
    h.update(std::string(domain));
    uint8_t be[8];
    for (int i = 0; i < 8; i++) be[i] = uint8_t(nonce >> (56 - 8 * i));
    h.update(be, 8);
    Digest32 d = h.finalize();
    Address a;
    std::copy(d.begin(), d.begin() + 20, a.begin());
    return a;
}

TxRecord& Ledger::append_tx(const std::string& kind, nlohmann::json payload, uint64_t gas) {
    TxRecord rec;
    rec.seq = log_.size();
    rec.kind = kind;
    rec.payload = std::move(payload);
    rec.gas = gas;
    rec.arrival = double(rec.seq) / latency_.arrival_rate;
    double service_end = std::max(rec.arrival, last_service_end_) + 1.0 / latency_.tps_cap;
    last_service_end_ = service_end;
    rec.timestamp = service_end + latency_.base_latency;
    log_.push_back(std::move(rec));
    return log_.back();
}

Address Ledger::create_account(Amount balance) {
    Address addr = derive_address("b5g-address-v1", account_nonce_++);
    accounts_[addr] = balance;
    append_tx("account",
              {{"address", address_hex(addr)}, {"balance", amount_to_string(balance)}}, 0);
    return addr;
}

bool Ledger::has_account(const Address& a) const { return accounts_.count(a) > 0; }

Amount Ledger::balance(const Address& a) const {
    auto it = accounts_.find(a);
    if (it == accounts_.end()) throw B5gError(Errc::UnknownAccount, address_hex(a));
    return it->second;
}

Address Ledger::deploy_agreement(const Address& hmno, const Address& vmno,
                                 const RateSchedule& rates, const Digest32& vk_digest,
                                 const Digest32& descriptor_digest) {
    if (!has_account(hmno)) throw B5gError(Errc::UnknownAccount, "hmno " + address_hex(hmno));
    if (!has_account(vmno)) throw B5gError(Errc::UnknownAccount, "vmno " + address_hex(vmno));
    rates.validate();
    Address addr = derive_address("b5g-contract-v1", contract_nonce_++);
    AgreementContract agr;
    agr.address = addr;
    agr.hmno = hmno;
    agr.vmno = vmno;
    agr.rates = rates;
    agr.vk_digest = vk_digest;
    agr.descriptor_digest = descriptor_digest;
    agreements_[addr] = std::move(agr);
    append_tx("deploy",
              {{"agreement", address_hex(addr)},
               {"hmno", address_hex(hmno)},
               {"vmno", address_hex(vmno)},
               {"rates",
                {{"r_sms", rates.r_sms}, {"r_mb", rates.r_mb}, {"r_voice", rates.r_voice}}},
               {"vk_digest", digest_hex(vk_digest)},
               {"descriptor_digest", digest_hex(descriptor_digest)}},
              gas_.base_tx_gas + 2 * gas_.storage_write_gas);
    return addr;
}

const AgreementContract& Ledger::agreement(const Address& addr) const {
    auto it = agreements_.find(addr);
    if (it == agreements_.end()) throw B5gError(Errc::UnknownAccount, "no agreement at " + address_hex(addr));
    return it->second;
}

AgreementContract& Ledger::agreement_mut(const Address& addr) {
    auto it = agreements_.find(addr);
    if (it == agreements_.end()) throw B5gError(Errc::UnknownAccount, "no agreement at " + address_hex(addr));
    return it->second;
}

void Ledger::authorize_session(const Address& agr_addr, const std::string& session_id,
                               const std::string& ue_id) {
    AgreementContract& agr = agreement_mut(agr_addr);
    if (agr.sessions.count(session_id)) {
        throw B5gError(Errc::WrongPhase, "session already authorized: " + session_id);
    }
    SessionState s;
    s.ue_id = ue_id;
    agr.sessions[session_id] = std::move(s);
    append_tx("authorize",
              {{"agreement", address_hex(agr_addr)},
               {"session_id", session_id},
               {"ue_id", ue_id}},
              gas_.base_tx_gas + gas_.storage_write_gas);
}

void Ledger::lock_escrow(const Address& agr_addr, const std::string& session_id,
                         Amount amount) {
    AgreementContract& agr = agreement_mut(agr_addr);
    auto it = agr.sessions.find(session_id);
    if (it == agr.sessions.end()) {
        // auto-created on first reference
        SessionState s;
        it = agr.sessions.emplace(session_id, std::move(s)).first;
    }
    SessionState& session = it->second;
    if (session.phase != Phase::Created) {
        throw B5gError(Errc::WrongPhase, std::string("lock_escrow in phase ") +
                                             phase_name(session.phase));
    }
    Amount& hmno_balance = accounts_.at(agr.hmno);
    if (hmno_balance < amount) {
        throw B5gError(Errc::InsufficientBalance,
                       "escrow " + amount_to_string(amount) + " exceeds balance " +
                           amount_to_string(hmno_balance));
    }
    hmno_balance -= amount;
    session.escrow = amount;
    session.phase = Phase::EscrowLocked;
    append_tx("lock_escrow",
              {{"agreement", address_hex(agr_addr)},
               {"session_id", session_id},
               {"escrow", amount_to_string(amount)}},
              gas_.base_tx_gas + gas_.storage_write_gas);
}

void Ledger::submit_commitment(const Address& agr_addr, const std::string& session_id,
                               const Commitment& commitment) {
    AgreementContract& agr = agreement_mut(agr_addr);
    auto it = agr.sessions.find(session_id);
    if (it == agr.sessions.end()) {
        throw B5gError(Errc::WrongPhase, "unknown session " + session_id);
    }
    SessionState& session = it->second;
    if (session.phase == Phase::Committed || session.h_cdr.has_value()) {
        throw B5gError(Errc::AlreadyCommitted, "commitment slot taken for " + session_id);
    }
    if (session.phase != Phase::EscrowLocked) {
        throw B5gError(Errc::WrongPhase, std::string("submit_commitment in phase ") +
                                             phase_name(session.phase));
    }
    if (!replaying_ && !commitment.tag_valid()) {
        throw B5gError(Errc::CommitmentUnattested,
                       "commitment did not come from the TEE path");
    }
    session.h_cdr = commitment.h_cdr();
    session.phase = Phase::Committed;
    append_tx("submit_commitment",
              {{"agreement", address_hex(agr_addr)},
               {"session_id", session_id},
               {"h_cdr", commitment.to_hex()}},
              gas_.base_tx_gas + gas_.storage_write_gas);
}

void Ledger::apply_settlement_transfers(AgreementContract& agr, SessionState& session,
                                        Amount total) {
    accounts_.at(agr.vmno) += total;
    accounts_.at(agr.hmno) += session.escrow - total;
    session.paid = total;
    session.escrow = 0;
    session.phase = Phase::Settled;
}

SettlementResult Ledger::settle(const Address& agr_addr, const std::string& session_id,
                                Amount total, const std::vector<uint8_t>& proof_bytes,
                                const VerificationKey& vk, const std::string& backend) {
    AgreementContract& agr = agreement_mut(agr_addr);
    auto it = agr.sessions.find(session_id);
    if (it == agr.sessions.end()) throw B5gError(Errc::WrongPhase, "unknown session " + session_id);
    SessionState& session = it->second;
    if (session.phase != Phase::Committed) {
        throw B5gError(Errc::WrongPhase,
                       std::string("settle in phase ") + phase_name(session.phase));
    }
    if (vk.digest() != agr.vk_digest) {
        throw B5gError(Errc::VkMismatch, "verification key does not match the agreement");
    }

    // The contract runs verification whatever the outcome; gas is charged
    // even when the proof fails.
    bool ok = false;
    try {
        Proof proof = Proof::deserialize(proof_bytes.data(), proof_bytes.size());
        ok = verify(vk, {fr_from_amount(total), *session.h_cdr}, proof);
    } catch (const B5gError&) {
        ok = false; // malformed bytes map to a failed verification on-chain
    }

    SettlementResult result;
    result.gas = gas_.settle_gas(backend);
    if (!ok) {
        result.status = SettlementResult::Status::ProofInvalid;
    } else if (total > session.escrow) {
        result.status = SettlementResult::Status::InsufficientEscrow;
    } else {
        result.status = SettlementResult::Status::Settled;
        result.paid = total;
        result.refund = session.escrow - total;
        apply_settlement_transfers(agr, session, total);
    }
    append_tx("settle",
              {{"agreement", address_hex(agr_addr)},
               {"session_id", session_id},
               {"total", amount_to_string(total)},
               {"proof", hex_encode(proof_bytes)},
               {"backend", backend},
               {"status", settlement_status_name(result.status)}},
              result.gas);
    return result;
}

SettlementResult Ledger::settle(const Address& agr_addr, const std::string& session_id,
                                Amount total, const Proof& proof, const VerificationKey& vk,
                                const std::string& backend) {
    return settle(agr_addr, session_id, total, proof.serialize(), vk, backend);
}

void Ledger::batch_commit(uint64_t batch_id, const Digest32& pre_root,
                          const Digest32& post_root, uint64_t size, uint64_t gas) {
    if (batches_.count(batch_id)) {
        throw B5gError(Errc::AlreadyCommitted, "batch " + std::to_string(batch_id));
    }
    batches_[batch_id] = {digest_hex(pre_root), digest_hex(post_root), size, "committed"};
    append_tx("batch_commit",
              {{"batch_id", batch_id},
               {"pre_root", digest_hex(pre_root)},
               {"post_root", digest_hex(post_root)},
               {"size", size}},
              gas);
}

void Ledger::batch_prove(uint64_t batch_id, const Digest32& attestation_sig, uint64_t gas) {
    auto it = batches_.find(batch_id);
    if (it == batches_.end()) throw B5gError(Errc::NotCommitted, "batch " + std::to_string(batch_id));
    it->second.status = "proven";
    append_tx("batch_prove",
              {{"batch_id", batch_id}, {"attestation", digest_hex(attestation_sig)}}, gas);
}

void Ledger::batch_execute(uint64_t batch_id, const std::vector<BatchEffect>& effects,
                           uint64_t gas) {
    auto it = batches_.find(batch_id);
    if (it == batches_.end()) throw B5gError(Errc::NotCommitted, "batch " + std::to_string(batch_id));
    nlohmann::json effects_json = nlohmann::json::array();
    for (const auto& e : effects) {
        AgreementContract& agr = agreement_mut(e.agreement);
        SessionState& session = agr.sessions.at(e.session_id);
        if (session.phase != Phase::Committed) {
            throw B5gError(Errc::WrongPhase, "batch effect on session " + e.session_id +
                                                 " in phase " + phase_name(session.phase));
        }
        if (e.total > session.escrow) {
            throw B5gError(Errc::InsufficientEscrow, "batch effect exceeds escrow");
        }
        apply_settlement_transfers(agr, session, e.total);
        effects_json.push_back({{"agreement", address_hex(e.agreement)},
                                {"session_id", e.session_id},
                                {"total", amount_to_string(e.total)}});
    }
    it->second.status = "executed";
    append_tx("batch_execute", {{"batch_id", batch_id}, {"effects", effects_json}}, gas);
}

void Ledger::batch_reject(uint64_t batch_id) {
    auto it = batches_.find(batch_id);
    if (it == batches_.end()) throw B5gError(Errc::NotCommitted, "batch " + std::to_string(batch_id));
    batches_.erase(it);
    append_tx("batch_reject", {{"batch_id", batch_id}}, 0);
}

ChainMetrics Ledger::metrics() const {
    ChainMetrics m;
    uint64_t groth_verify = 0;
    for (const auto& rec : log_) {
        m.tx_count++;
        m.total_gas += rec.gas;
        m.gas_by_kind[rec.kind] += rec.gas;
        m.tx_by_kind[rec.kind]++;
        if (rec.kind == "settle") {
            const std::string backend = rec.payload.value("backend", "groth16");
            groth_verify += gas_.verify_gas.at(backend);
        }
        m.latencies.push_back(rec.timestamp - rec.arrival);
        m.makespan = std::max(m.makespan, rec.timestamp);
    }
    m.settle_verify_gas = groth_verify;
    return m;
}

nlohmann::json Ledger::state_snapshot() const {
    nlohmann::json accounts = nlohmann::json::object();
    for (const auto& [addr, bal] : accounts_) {
        accounts[address_hex(addr)] = amount_to_string(bal);
    }
    nlohmann::json agreements = nlohmann::json::object();
    for (const auto& [addr, agr] : agreements_) {
        nlohmann::json sessions = nlohmann::json::object();
        for (const auto& [sid, s] : agr.sessions) {
            nlohmann::json sj = {{"phase", phase_name(s.phase)},
                                 {"escrow", amount_to_string(s.escrow)},
                                 {"ue_id", s.ue_id}};
            if (s.h_cdr) sj["h_cdr"] = s.h_cdr->to_hex();
            if (s.paid) sj["paid"] = amount_to_string(*s.paid);
            sessions[sid] = std::move(sj);
        }
        agreements[address_hex(addr)] = {
            {"hmno", address_hex(agr.hmno)},
            {"vmno", address_hex(agr.vmno)},
            {"rates",
             {{"r_sms", agr.rates.r_sms},
              {"r_mb", agr.rates.r_mb},
              {"r_voice", agr.rates.r_voice}}},
            {"vk_digest", digest_hex(agr.vk_digest)},
            {"descriptor_digest", digest_hex(agr.descriptor_digest)},
            {"sessions", std::move(sessions)}};
    }
    nlohmann::json batches = nlohmann::json::object();
    for (const auto& [id, b] : batches_) {
        batches[std::to_string(id)] = {{"pre_root", b.pre_root},
                                       {"post_root", b.post_root},
                                       {"size", b.size},
                                       {"status", b.status}};
    }
    return nlohmann::json{{"accounts", std::move(accounts)},
                          {"agreements", std::move(agreements)},
                          {"batches", std::move(batches)},
                          {"account_nonce", account_nonce_},
                          {"contract_nonce", contract_nonce_}};
}

Digest32 Ledger::state_digest() const { return sha256(state_snapshot().dump()); }

Amount Ledger::total_supply() const {
    Amount sum = 0;
    for (const auto& [addr, bal] : accounts_) sum += bal;
    for (const auto& [addr, agr] : agreements_) {
        for (const auto& [sid, s] : agr.sessions) sum += s.escrow;
    }
    return sum;
}

void Ledger::write_log_jsonl(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw B5gError(Errc::IOFailure, "cannot open " + path);
    for (const auto& rec : log_) {
        nlohmann::json line = {{"seq", rec.seq},
                               {"kind", rec.kind},
                               {"payload", rec.payload},
                               {"gas", rec.gas},
                               {"timestamp", rec.timestamp}};
        out << line.dump() << "\n";
    }
    if (!out) throw B5gError(Errc::IOFailure, "write failed: " + path);
}

std::vector<TxRecord> Ledger::read_log_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw B5gError(Errc::IOFailure, "cannot open " + path);
    std::vector<TxRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        TxRecord rec;
        rec.seq = j.at("seq").get<uint64_t>();
        rec.kind = j.at("kind").get<std::string>();
        rec.payload = j.at("payload");
        rec.gas = j.at("gas").get<uint64_t>();
        rec.timestamp = j.at("timestamp").get<double>();
        out.push_back(std::move(rec));
    }
    return out;
}

void Ledger::apply_record(const TxRecord& rec) {
    const auto& p = rec.payload;
    if (rec.kind == "account") {
        Address addr = derive_address("b5g-address-v1", account_nonce_++);
        if (address_hex(addr) != p.at("address").get<std::string>()) {
            throw B5gError(Errc::SerializationError, "replay: address derivation mismatch");
        }
        accounts_[addr] = amount_from_string(p.at("balance").get<std::string>());
        append_tx(rec.kind, p, rec.gas);
    } else if (rec.kind == "deploy") {
        RateSchedule rates{p.at("rates").at("r_sms").get<uint64_t>(),
                           p.at("rates").at("r_mb").get<uint64_t>(),
                           p.at("rates").at("r_voice").get<uint64_t>()};
        Address addr = derive_address("b5g-contract-v1", contract_nonce_++);
        if (address_hex(addr) != p.at("agreement").get<std::string>()) {
            throw B5gError(Errc::SerializationError, "replay: contract derivation mismatch");
        }
        AgreementContract agr;
        agr.address = addr;
        agr.hmno = address_from_hex(p.at("hmno").get<std::string>());
        agr.vmno = address_from_hex(p.at("vmno").get<std::string>());
        agr.rates = rates;
        auto vkd = hex_decode(p.at("vk_digest").get<std::string>());
        auto dd = hex_decode(p.at("descriptor_digest").get<std::string>());
        std::copy(vkd.begin(), vkd.end(), agr.vk_digest.begin());
        std::copy(dd.begin(), dd.end(), agr.descriptor_digest.begin());
        agreements_[addr] = std::move(agr);
        append_tx(rec.kind, p, rec.gas);
    } else if (rec.kind == "authorize") {
        AgreementContract& agr = agreement_mut(address_from_hex(p.at("agreement").get<std::string>()));
        SessionState s;
        s.ue_id = p.at("ue_id").get<std::string>();
        agr.sessions[p.at("session_id").get<std::string>()] = std::move(s);
        append_tx(rec.kind, p, rec.gas);
    } else if (rec.kind == "lock_escrow") {
        AgreementContract& agr = agreement_mut(address_from_hex(p.at("agreement").get<std::string>()));
        SessionState& s = agr.sessions[p.at("session_id").get<std::string>()];
        Amount amount = amount_from_string(p.at("escrow").get<std::string>());
        accounts_.at(agr.hmno) -= amount;
        s.escrow = amount;
        s.phase = Phase::EscrowLocked;
        append_tx(rec.kind, p, rec.gas);
    } else if (rec.kind == "submit_commitment") {
        AgreementContract& agr = agreement_mut(address_from_hex(p.at("agreement").get<std::string>()));
        SessionState& s = agr.sessions.at(p.at("session_id").get<std::string>());
        s.h_cdr = Fr::from_hex(p.at("h_cdr").get<std::string>());
        s.phase = Phase::Committed;
        append_tx(rec.kind, p, rec.gas);
    } else if (rec.kind == "settle") {
        AgreementContract& agr = agreement_mut(address_from_hex(p.at("agreement").get<std::string>()));
        SessionState& s = agr.sessions.at(p.at("session_id").get<std::string>());
        if (p.at("status").get<std::string>() == "settled") {
            apply_settlement_transfers(agr, s, amount_from_string(p.at("total").get<std::string>()));
        }
        append_tx(rec.kind, p, rec.gas);
    } else if (rec.kind == "batch_commit") {
        batches_[p.at("batch_id").get<uint64_t>()] = {p.at("pre_root").get<std::string>(),
                                                      p.at("post_root").get<std::string>(),
                                                      p.at("size").get<uint64_t>(),
                                                      "committed"};
        append_tx(rec.kind, p, rec.gas);
    } else if (rec.kind == "batch_prove") {
        batches_.at(p.at("batch_id").get<uint64_t>()).status = "proven";
        append_tx(rec.kind, p, rec.gas);
    } else if (rec.kind == "batch_execute") {
        for (const auto& e : p.at("effects")) {
            AgreementContract& agr =
                agreement_mut(address_from_hex(e.at("agreement").get<std::string>()));
            SessionState& s = agr.sessions.at(e.at("session_id").get<std::string>());
            apply_settlement_transfers(agr, s, amount_from_string(e.at("total").get<std::string>()));
        }
        batches_.at(p.at("batch_id").get<uint64_t>()).status = "executed";
        append_tx(rec.kind, p, rec.gas);
    } else if (rec.kind == "batch_reject") {
        batches_.erase(p.at("batch_id").get<uint64_t>());
        append_tx(rec.kind, p, rec.gas);
    } else {
        throw B5gError(Errc::SerializationError, "replay: unknown tx kind " + rec.kind);
    }
}

Ledger Ledger::replay(const std::vector<TxRecord>& log, GasSchedule gas,
                      LatencyConfig latency) {
    Ledger ledger(std::move(gas), latency);
    ledger.replaying_ = true;
    for (const auto& rec : log) ledger.apply_record(rec);
    ledger.replaying_ = false;
    return ledger;
}

} // namespace b5g
