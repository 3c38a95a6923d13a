// B5GRoam - L2 batching pipeline
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/rollup.hpp"

#include <cstdlib>

#include "b5groam/errors.hpp"

namespace b5g {

RollupGasModel RollupGasModel::standard() {
    RollupGasModel m;
    m.size_table[50] = {205901, 83664, 91397};
    m.size_table[60] = m.per_batch_default;
    m.size_table[67] = {205875, 83660, 99162};
    m.size_table[72] = {208319, 83655, 99166};
    return m;
}

RollupGasModel RollupGasModel::from_env() {
    RollupGasModel m = standard();
    auto read = [](const char* name, uint64_t& slot) {
        if (const char* v = std::getenv(name)) slot = std::strtoull(v, nullptr, 10);
    };
    read("B5G_GAS_COMMIT", m.per_batch_default.commit);
    read("B5G_GAS_PROVE", m.per_batch_default.prove);
    read("B5G_GAS_EXECUTE", m.per_batch_default.execute);
    read("B5G_GAS_L1_TX", m.l1_per_settlement_gas);
    m.size_table[60] = m.per_batch_default;
    return m;
}

PhaseGas RollupGasModel::per_batch(uint64_t batch_size) const {
    auto it = size_table.find(batch_size);
    return it != size_table.end() ? it->second : per_batch_default;
}

double effective_throughput(uint64_t batch_size, double l1_tps) {
    if (batch_size == 0 || l1_tps <= 0.0) {
        throw B5gError(Errc::ParameterMismatch, "throughput inputs must be positive");
    }
    return double(batch_size) * l1_tps;
}

Digest32 L2Settlement::digest() const {
    Sha256 h;
    h.update(std::string("b5g-l2-tx"));
    h.update(agreement.data(), agreement.size());
    h.update(session_id);
    h.update(amount_to_string(total));
    h.update(proof_bytes);
    return h.finalize();
}

Digest32 Batch::digest() const {
    Sha256 h;
    h.update(std::string("b5g-batch"));
    uint8_t idb[8];
    for (int i = 0; i < 8; i++) idb[i] = uint8_t(id >> (56 - 8 * i));
    h.update(idb, 8);
    h.update(pre_root);
    h.update(post_root);
    for (const auto& tx : txs) h.update(tx.digest());
    return h.finalize();
}

nlohmann::json Batch::manifest() const {
    nlohmann::json digests = nlohmann::json::array();
    for (const auto& tx : txs) digests.push_back(digest_hex(tx.digest()));
    return nlohmann::json{{"batch_id", id},
                          {"pre_root", digest_hex(pre_root)},
                          {"post_root", digest_hex(post_root)},
                          {"size", txs.size()},
                          {"tx_digests", std::move(digests)},
                          {"phase_gas",
                           {{"commit", gas.commit}, {"prove", gas.prove}, {"execute", gas.execute}}}};
}

BatchAttestation BatchAttestation::sign(const Batch& batch, const std::vector<bool>& verdicts) {
    BatchAttestation att;
    att.batch_digest = batch.digest();
    att.verdicts = verdicts;
    Sha256 h;
    h.update(std::string("b5g-sequencer-attestation-v1"));
    h.update(att.batch_digest);
    for (bool v : verdicts) {
        uint8_t b = v ? 1 : 0;
        h.update(&b, 1);
    }
    att.signature = h.finalize();
    return att;
}

bool BatchAttestation::valid_for(const Batch& batch) const {
    if (batch_digest != batch.digest()) return false;
    if (verdicts.size() != batch.txs.size()) return false;
    for (bool v : verdicts) {
        if (!v) return false;
    }
    BatchAttestation expected = sign(batch, verdicts);
    return expected.signature == signature;
}

Digest32 L2State::state_root() const {
    std::vector<std::vector<uint8_t>> leaves;
    leaves.reserve(balances.size() + sessions.size());
    for (const auto& [addr, bal] : balances) {
        nlohmann::json leaf = {{"kind", "balance"},
                               {"address", address_hex(addr)},
                               {"amount", amount_to_string(bal)}};
        std::string s = leaf.dump();
        leaves.emplace_back(s.begin(), s.end());
    }
    for (const auto& [key, session] : sessions) {
        nlohmann::json state = {{"phase", phase_name(session.phase)},
                                {"escrow", amount_to_string(session.escrow)}};
        if (session.h_cdr) state["h_cdr"] = session.h_cdr->to_hex();
        if (session.paid) state["paid"] = amount_to_string(*session.paid);
        nlohmann::json leaf = {{"kind", "session"},
                               {"agreement", address_hex(key.agreement)},
                               {"session_id", key.session_id},
                               {"state_digest", digest_hex(sha256(state.dump()))}};
        std::string s = leaf.dump();
        leaves.emplace_back(s.begin(), s.end());
    }
    return merkle_root(leaves);
}

Sequencer::Sequencer(Ledger& l1, RollupGasModel model) : l1_(l1), model_(std::move(model)) {}

void Sequencer::register_agreement(const Address& agreement, const VerificationKey& vk) {
    const AgreementContract& agr = l1_.agreement(agreement);
    if (vk.digest() != agr.vk_digest) {
        throw B5gError(Errc::VkMismatch, "vk does not match the agreement");
    }
    vks_[agreement] = vk;
    parties_[agreement] = {agr.hmno, agr.vmno};
    state_.balances[agr.hmno] = l1_.balance(agr.hmno);
    state_.balances[agr.vmno] = l1_.balance(agr.vmno);
}

void Sequencer::sync_session(const Address& agreement, const std::string& session_id) {
    if (!vks_.count(agreement)) {
        throw B5gError(Errc::MalformedTx, "agreement not registered on L2");
    }
    const AgreementContract& agr = l1_.agreement(agreement);
    auto it = agr.sessions.find(session_id);
    if (it == agr.sessions.end()) {
        throw B5gError(Errc::MalformedTx, "unknown L1 session " + session_id);
    }
    state_.sessions[{agreement, session_id}] = it->second;
    // escrow locks moved L1 balances since the last sync point
    state_.balances[agr.hmno] = l1_.balance(agr.hmno);
    state_.balances[agr.vmno] = l1_.balance(agr.vmno);
}

size_t Sequencer::submit_tx(L2Settlement tx) {
    if (!vks_.count(tx.agreement)) {
        throw B5gError(Errc::MalformedTx, "unknown agreement on L2");
    }
    if (!state_.sessions.count({tx.agreement, tx.session_id})) {
        throw B5gError(Errc::MalformedTx, "unknown session " + tx.session_id);
    }
    if (tx.proof_bytes.empty()) {
        throw B5gError(Errc::MalformedTx, "empty proof");
    }
    queue_.push_back(std::move(tx));
    return queue_.size() - 1;
}

bool Sequencer::verify_settlement(const L2Settlement& tx) const {
    auto sit = state_.sessions.find({tx.agreement, tx.session_id});
    if (sit == state_.sessions.end()) return false;
    const SessionState& session = sit->second;
    if (session.phase != Phase::Committed || !session.h_cdr) return false;
    if (tx.total > session.escrow) return false;
    try {
        Proof proof = Proof::deserialize(tx.proof_bytes.data(), tx.proof_bytes.size());
        return verify(vks_.at(tx.agreement), {fr_from_amount(tx.total), *session.h_cdr},
                      proof);
    } catch (const B5gError&) {
        return false;
    }
}

void Sequencer::apply_settlement(const L2Settlement& tx) {
    SessionState& session = state_.sessions.at({tx.agreement, tx.session_id});
    const auto& [hmno, vmno] = parties_.at(tx.agreement);
    state_.balances[vmno] += tx.total;
    state_.balances[hmno] += session.escrow - tx.total;
    session.paid = tx.total;
    session.escrow = 0;
    session.phase = Phase::Settled;
}

Batch Sequencer::seal_batch(size_t max_size, std::vector<L2Settlement>* rejected) {
    if (queue_.empty()) throw B5gError(Errc::EmptyQueue, "no pending transactions");
    if (max_size == 0) throw B5gError(Errc::ParameterMismatch, "max batch size must be >= 1");

    Batch batch;
    batch.id = next_batch_id_++;
    batch.pre_root = state_.state_root();
    L2State pre_state = state_;

    while (!queue_.empty() && batch.txs.size() < max_size) {
        L2Settlement tx = std::move(queue_.front());
        queue_.pop_front();
        if (verify_settlement(tx)) {
            apply_settlement(tx);
            batch.txs.push_back(std::move(tx));
        } else if (rejected) {
            rejected->push_back(std::move(tx));
        }
    }
    batch.post_root = state_.state_root();
    batch.gas = model_.per_batch(batch.txs.size());
    pre_states_[batch.id] = std::move(pre_state);
    return batch;
}

void Sequencer::commit_batch(Batch& batch) {
    if (batch.state != Batch::State::Sealed) {
        throw B5gError(Errc::AlreadyCommitted, "batch " + std::to_string(batch.id));
    }
    if (!pre_states_.count(batch.id) ||
        pre_states_.at(batch.id).state_root() != batch.pre_root) {
        throw B5gError(Errc::RootMismatch, "pre-state root mismatch");
    }
    l1_.batch_commit(batch.id, batch.pre_root, batch.post_root, batch.size(),
                     batch.gas.commit);
    batch.state = Batch::State::Committed;
}

BatchAttestation Sequencer::prove_batch(Batch& batch) {
    if (batch.state != Batch::State::Committed) {
        throw B5gError(Errc::NotCommitted, "batch " + std::to_string(batch.id));
    }
    // Re-verify every inner settlement against the pre-state; the attestation
    // stands in for the batch validity proof.
    L2State check_state = pre_states_.at(batch.id);
    std::vector<bool> verdicts;
    verdicts.reserve(batch.txs.size());
    for (size_t i = 0; i < batch.txs.size(); i++) {
        const L2Settlement& tx = batch.txs[i];
        bool ok = false;
        auto sit = check_state.sessions.find({tx.agreement, tx.session_id});
        if (sit != check_state.sessions.end() && sit->second.phase == Phase::Committed &&
            sit->second.h_cdr && tx.total <= sit->second.escrow) {
            try {
                Proof proof = Proof::deserialize(tx.proof_bytes.data(), tx.proof_bytes.size());
                ok = verify(vks_.at(tx.agreement),
                            {fr_from_amount(tx.total), *sit->second.h_cdr}, proof);
            } catch (const B5gError&) {
                ok = false;
            }
        }
        if (!ok) {
            // Whole batch is rejected: L2 state rolls back to the pre-root
            // and the L1 pending record is dropped.
            state_ = pre_states_.at(batch.id);
            pre_states_.erase(batch.id);
            l1_.batch_reject(batch.id);
            batch.state = Batch::State::Rejected;
            throw B5gError(Errc::InnerProofInvalid,
                           "settlement proof invalid at batch index " + std::to_string(i));
        }
        verdicts.push_back(true);
        // advance the check state so later duplicates in the same batch fail
        SessionState& s = check_state.sessions.at({tx.agreement, tx.session_id});
        s.phase = Phase::Settled;
        s.escrow = 0;
    }
    l1_.batch_prove(batch.id, BatchAttestation::sign(batch, verdicts).signature,
                    batch.gas.prove);
    batch.state = Batch::State::Proven;
    return BatchAttestation::sign(batch, verdicts);
}

void Sequencer::execute_batch(Batch& batch, const BatchAttestation& attestation) {
    if (batch.state == Batch::State::Sealed) {
        throw B5gError(Errc::NotCommitted, "batch " + std::to_string(batch.id));
    }
    if (batch.state != Batch::State::Proven) {
        throw B5gError(Errc::AttestationInvalid,
                       "batch not proven: " + std::to_string(batch.id));
    }
    if (!attestation.valid_for(batch)) {
        throw B5gError(Errc::AttestationInvalid, "attestation does not match batch");
    }
    std::vector<BatchEffect> effects;
    effects.reserve(batch.txs.size());
    for (const auto& tx : batch.txs) {
        effects.push_back({tx.agreement, tx.session_id, tx.total});
    }
    l1_.batch_execute(batch.id, effects, batch.gas.execute);
    batch.state = Batch::State::Executed;
    pre_states_.erase(batch.id);
}

} // namespace b5g
