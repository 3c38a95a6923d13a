// B5GRoam - scenario runner and adversary injector
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/scenario.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "b5groam/errors.hpp"

namespace b5g {

namespace {

constexpr const char* DEFAULT_SEED = "b5groam-default-seed";

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    if (!j.is_object()) {
        throw B5gError(Errc::ScenarioInvalid, where + " must be an object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            throw B5gError(Errc::ScenarioInvalid, "unknown field '" + key + "' in " + where);
        }
    }
}

uint64_t read_u64(const nlohmann::json& j, const std::string& where) {
    if (j.is_number_unsigned()) return j.get<uint64_t>();
    if (j.is_number_integer() && j.get<int64_t>() >= 0) return uint64_t(j.get<int64_t>());
    throw B5gError(Errc::ScenarioInvalid, where + " must be a nonnegative integer");
}

Amount read_amount(const nlohmann::json& j, const std::string& where) {
    if (j.is_string()) return amount_from_string(j.get<std::string>());
    return Amount(read_u64(j, where));
}

} // namespace

const char* AdversaryStrategy::kind_name(Kind k) {
    switch (k) {
        case Kind::InflateUsage: return "inflate_usage";
        case Kind::ForgeTotal: return "forge_total";
        case Kind::ReplayCommitment: return "replay_commitment";
        case Kind::ReuseProof: return "reuse_proof";
        case Kind::TamperProofBytes: return "tamper_proof_bytes";
    }
    return "?";
}

AdversaryStrategy::Kind AdversaryStrategy::kind_from_name(const std::string& name) {
    for (Kind k : {Kind::InflateUsage, Kind::ForgeTotal, Kind::ReplayCommitment,
                   Kind::ReuseProof, Kind::TamperProofBytes}) {
        if (name == kind_name(k)) return k;
    }
    throw B5gError(Errc::ScenarioInvalid, "unknown adversary kind '" + name + "'");
}

const char* expected_verdict(const std::optional<AdversaryStrategy>& adversary) {
    if (!adversary) return "settled";
    return adversary->kind == AdversaryStrategy::Kind::ReuseProof ? "settled_replay_rejected"
                                                                  : "rejected";
}

Scenario Scenario::from_json(const nlohmann::json& j) {
    require_keys(j,
                 {"version", "layer", "seed", "backend", "batch_size", "rates", "salted",
                  "actors", "sessions"},
                 "scenario");
    Scenario s;
    if (!j.contains("version") || read_u64(j.at("version"), "version") != 1) {
        throw B5gError(Errc::ScenarioInvalid, "version must be 1");
    }
    if (j.contains("layer")) {
        s.layer = j.at("layer").get<std::string>();
        if (s.layer != "l1" && s.layer != "l2") {
            throw B5gError(Errc::ScenarioInvalid, "layer must be 'l1' or 'l2'");
        }
    }
    if (j.contains("seed")) s.seed = j.at("seed").get<std::string>();
    if (j.contains("backend")) {
        const auto& b = j.at("backend");
        require_keys(b, {"name", "contributors"}, "backend");
        if (b.contains("name")) {
            s.backend = b.at("name").get<std::string>();
            if (s.backend != "groth16") {
                throw B5gError(Errc::ScenarioInvalid,
                               "only the groth16 backend is runnable in scenarios");
            }
        }
        if (b.contains("contributors")) {
            s.contributors = uint32_t(read_u64(b.at("contributors"), "contributors"));
            if (s.contributors == 0) {
                throw B5gError(Errc::ScenarioInvalid, "contributors must be >= 1");
            }
        }
    }
    if (j.contains("batch_size")) {
        s.batch_size = read_u64(j.at("batch_size"), "batch_size");
        if (s.batch_size == 0) throw B5gError(Errc::ScenarioInvalid, "batch_size must be >= 1");
    }
    if (!j.contains("rates")) throw B5gError(Errc::ScenarioInvalid, "rates are required");
    {
        const auto& r = j.at("rates");
        require_keys(r, {"r_sms", "r_mb", "r_voice"}, "rates");
        s.rates.r_sms = read_u64(r.at("r_sms"), "r_sms");
        s.rates.r_mb = read_u64(r.at("r_mb"), "r_mb");
        s.rates.r_voice = read_u64(r.at("r_voice"), "r_voice");
    }
    if (j.contains("salted")) s.salted = j.at("salted").get<bool>();
    if (!j.contains("actors")) throw B5gError(Errc::ScenarioInvalid, "actors are required");
    {
        const auto& a = j.at("actors");
        require_keys(a, {"hmno", "vmno", "ue"}, "actors");
        if (!a.contains("hmno") || !a.contains("vmno")) {
            throw B5gError(Errc::ScenarioInvalid, "actors.hmno and actors.vmno are required");
        }
        auto read_actor = [&](const nlohmann::json& actor, const std::string& name) {
            require_keys(actor, {"balance"}, name);
            return actor.contains("balance") ? read_amount(actor.at("balance"), name)
                                             : Amount(0);
        };
        s.hmno_balance = read_actor(a.at("hmno"), "actors.hmno");
        s.vmno_balance = read_actor(a.at("vmno"), "actors.vmno");
        if (a.contains("ue")) s.ue_balance = read_actor(a.at("ue"), "actors.ue");
    }
    if (!j.contains("sessions") || !j.at("sessions").is_array() || j.at("sessions").empty()) {
        throw B5gError(Errc::ScenarioInvalid, "sessions must be a nonempty array");
    }
    for (const auto& sess : j.at("sessions")) {
        require_keys(sess, {"usage", "escrow", "adversary"}, "session");
        if (!sess.contains("usage") || !sess.contains("escrow")) {
            throw B5gError(Errc::ScenarioInvalid, "session needs usage and escrow");
        }
        const auto& u = sess.at("usage");
        require_keys(u, {"n_sms", "n_mb", "n_min"}, "usage");
        SessionSpec spec;
        spec.usage = {read_u64(u.at("n_sms"), "n_sms"), read_u64(u.at("n_mb"), "n_mb"),
                      read_u64(u.at("n_min"), "n_min")};
        spec.usage.validate();
        spec.escrow = read_amount(sess.at("escrow"), "escrow");
        if (sess.contains("adversary")) {
            const auto& adv = sess.at("adversary");
            require_keys(adv, {"kind", "delta"}, "adversary");
            AdversaryStrategy strat;
            strat.kind =
                AdversaryStrategy::kind_from_name(adv.at("kind").get<std::string>());
            if (adv.contains("delta")) strat.delta = read_u64(adv.at("delta"), "delta");
            if (strat.delta == 0) {
                throw B5gError(Errc::ScenarioInvalid, "adversary delta must be >= 1");
            }
            spec.adversary = strat;
        }
        s.sessions.push_back(std::move(spec));
    }
    // replay_commitment needs a predecessor session to replay
    if (!s.sessions.empty() && s.sessions[0].adversary &&
        s.sessions[0].adversary->kind == AdversaryStrategy::Kind::ReplayCommitment) {
        throw B5gError(Errc::ScenarioInvalid,
                       "replay_commitment cannot be the first session");
    }
    return s;
}

Scenario Scenario::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw B5gError(Errc::ScenarioInvalid, "cannot open scenario " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw B5gError(Errc::ScenarioInvalid, std::string("scenario parse error: ") + e.what());
    }
    return from_json(j);
}

nlohmann::json Scenario::to_json() const {
    nlohmann::json sessions_json = nlohmann::json::array();
    for (const auto& s : sessions) {
        nlohmann::json sj = {{"usage",
                              {{"n_sms", s.usage.n_sms},
                               {"n_mb", s.usage.n_mb},
                               {"n_min", s.usage.n_min}}},
                             {"escrow", amount_to_string(s.escrow)}};
        if (s.adversary) {
            sj["adversary"] = {{"kind", AdversaryStrategy::kind_name(s.adversary->kind)},
                               {"delta", s.adversary->delta}};
        }
        sessions_json.push_back(std::move(sj));
    }
    nlohmann::json j = {{"version", version},
                        {"layer", layer},
                        {"backend", {{"name", backend}, {"contributors", contributors}}},
                        {"rates",
                         {{"r_sms", rates.r_sms},
                          {"r_mb", rates.r_mb},
                          {"r_voice", rates.r_voice}}},
                        {"salted", salted},
                        {"actors",
                         {{"hmno", {{"balance", amount_to_string(hmno_balance)}}},
                          {"vmno", {{"balance", amount_to_string(vmno_balance)}}},
                          {"ue", {{"balance", amount_to_string(ue_balance)}}}}},
                        {"sessions", std::move(sessions_json)}};
    if (!seed.empty()) j["seed"] = seed;
    if (layer == "l2") j["batch_size"] = batch_size;
    return j;
}

namespace {

struct PreparedSession {
    std::string session_id;
    SessionSpec spec;
    Commitment commitment = Commitment::unattested(Fr::zero());
    std::optional<Fr> salt;
    Amount claimed_total = 0;          // what the VMNO submits
    std::vector<uint8_t> proof_bytes;  // what the VMNO submits
    Amount honest_total = 0;
    std::vector<uint8_t> honest_proof; // for reuse/replay bookkeeping
    std::string prep_detail;
};

struct RunContext {
    const Scenario& scenario;
    BillingCircuit circuit;
    KeyPair keys;
    SeededEntropy root_rng;

    RunContext(const Scenario& sc, const std::string& seed)
        : scenario(sc),
          circuit(CircuitConfig{sc.rates, sc.salted, 32},
                  sc.salted ? PoseidonParams::instance_t5() : PoseidonParams::instance_t4()),
          keys(make_keys(sc, circuit, seed)),
          root_rng(std::string("b5g-scenario|") + seed) {}

    static KeyPair make_keys(const Scenario& sc, const BillingCircuit& circuit,
                             const std::string& seed) {
        SeededEntropy rng(std::string("b5g-setup|") + seed);
        std::vector<std::vector<uint8_t>> contributions;
        for (uint32_t i = 0; i < sc.contributors; i++) {
            std::vector<uint8_t> c(32);
            rng.fill(c.data(), c.size());
            contributions.push_back(std::move(c));
        }
        PublicParams pp = setup(128, contributions);
        return keygen(pp, circuit.cs());
    }
};

UsageRecord inflate(const UsageRecord& r, uint64_t delta) {
    UsageRecord out = r;
    out.n_mb = (r.n_mb + delta) % UsageRecord::METRIC_BOUND;
    if (out == r) out.n_mb = (out.n_mb + 1) % UsageRecord::METRIC_BOUND;
    return out;
}

// Proof preparation for one session (thread-safe: pure crypto + own rng).
void prepare_session(const RunContext& ctx, PreparedSession& ps,
                     const PreparedSession* previous) {
    SeededEntropy rng = ctx.root_rng.fork("session|" + ps.session_id);
    const auto& circuit = ctx.circuit;

    auto prove_for = [&](const UsageRecord& record, const Commitment& commitment,
                         std::optional<Fr> salt) {
        auto res = circuit.synthesize(record, commitment, std::nullopt, salt);
        Proof proof =
            prove(ctx.keys.pk, res.public_inputs.as_field_elements(), res.assignment, rng);
        return std::make_pair(res.public_inputs.total, proof.serialize());
    };

    // honest artifact first (reuse/replay/forge build on it)
    auto [honest_total, honest_proof] = prove_for(ps.spec.usage, ps.commitment, ps.salt);
    ps.honest_total = honest_total;
    ps.honest_proof = honest_proof;

    if (!ps.spec.adversary) {
        ps.claimed_total = honest_total;
        ps.proof_bytes = honest_proof;
        return;
    }

    using Kind = AdversaryStrategy::Kind;
    const AdversaryStrategy& adv = *ps.spec.adversary;
    switch (adv.kind) {
        case Kind::InflateUsage: {
            // The VMNO claims inflated usage: it must hash that usage itself
            // (it cannot reach into the TEE), so its proof binds to a hash the
            // chain never saw.
            UsageRecord inflated = inflate(ps.spec.usage, adv.delta);
            Commitment forged = ctx.scenario.salted
                                    ? tee_commit_salted(inflated, *ps.salt)
                                    : tee_commit(inflated);
            auto [total, proof] = prove_for(inflated, forged, ps.salt);
            ps.claimed_total = total;
            ps.proof_bytes = proof;
            ps.prep_detail = "inflated_usage_hash";
            break;
        }
        case Kind::ForgeTotal: {
            // Alg. 1 line 4 refuses the forged declaration locally...
            try {
                circuit.synthesize(ps.spec.usage, ps.commitment,
                                   Amount(honest_total + adv.delta), ps.salt);
                ps.prep_detail = "forged_total_unexpectedly_accepted";
            } catch (const B5gError& e) {
                ps.prep_detail = std::string("local_") + errc_name(e.code());
            }
            // ...so the adversary submits the honest proof with a forged total.
            ps.claimed_total = honest_total + adv.delta;
            ps.proof_bytes = honest_proof;
            break;
        }
        case Kind::ReplayCommitment: {
            if (!previous) {
                throw B5gError(Errc::ScenarioInvalid, "replay needs a previous session");
            }
            ps.claimed_total = 0; // filled during execution from the victim
            ps.proof_bytes.clear();
            ps.prep_detail = "replays_previous_session";
            break;
        }
        case Kind::ReuseProof: {
            ps.claimed_total = honest_total;
            ps.proof_bytes = honest_proof;
            break;
        }
        case Kind::TamperProofBytes: {
            ps.claimed_total = honest_total;
            ps.proof_bytes = honest_proof;
            size_t pos = size_t(rng.next_below(ps.proof_bytes.size()));
            uint8_t mask = uint8_t(1 + rng.next_below(255));
            ps.proof_bytes[pos] ^= mask;
            ps.prep_detail = "flipped_byte_" + std::to_string(pos);
            break;
        }
    }
}

std::string settle_on_l1(Ledger& ledger, const Address& agr, const PreparedSession& ps,
                         Amount total, const std::vector<uint8_t>& proof_bytes,
                         const VerificationKey& vk) {
    try {
        auto result = ledger.settle(agr, ps.session_id, total, proof_bytes, vk);
        return settlement_status_name(result.status);
    } catch (const B5gError& e) {
        return errc_name(e.code());
    }
}

// Sentinel privacy audit: usage metrics large enough to be unambiguous must
// not appear in any persisted artifact. A metric whose decimal form is a
// substring of its own session's public total is skipped (the total is
// public by design).
std::vector<std::string> audit_artifacts(const std::vector<PreparedSession>& sessions,
                                         const std::vector<std::string>& artifact_blobs) {
    std::vector<std::string> findings;
    constexpr uint64_t SENTINEL_MIN = uint64_t(1) << 20;
    for (const auto& ps : sessions) {
        std::string total_str = amount_to_string(ps.honest_total);
        for (auto [value, name] : {std::pair<uint64_t, const char*>{ps.spec.usage.n_sms, "n_sms"},
                                   {ps.spec.usage.n_mb, "n_mb"},
                                   {ps.spec.usage.n_min, "n_min"}}) {
            if (value < SENTINEL_MIN) continue;
            std::string needle = std::to_string(value);
            if (total_str.find(needle) != std::string::npos) continue;
            for (const auto& blob : artifact_blobs) {
                if (blob.find(needle) != std::string::npos) {
                    findings.push_back(ps.session_id + ": " + name + " leaked");
                    break;
                }
            }
        }
    }
    return findings;
}

} // namespace

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
    const std::string seed = !options.seed_override.empty() ? options.seed_override
                             : !scenario.seed.empty()       ? scenario.seed
                                                            : DEFAULT_SEED;
    RunContext ctx(scenario, seed);

    Ledger ledger; // default gas schedule and latency model
    Address hmno = ledger.create_account(scenario.hmno_balance);
    Address vmno = ledger.create_account(scenario.vmno_balance);
    ledger.create_account(scenario.ue_balance); // the UE holds no protocol funds
    Address agr = ledger.deploy_agreement(hmno, vmno, scenario.rates, ctx.keys.vk.digest(),
                                          ctx.circuit.config().descriptor_digest());

    // --- workflow steps 2-5 per session: authorization, escrow, commitment
    std::vector<PreparedSession> sessions(scenario.sessions.size());
    for (size_t i = 0; i < scenario.sessions.size(); i++) {
        PreparedSession& ps = sessions[i];
        ps.session_id = "session-" + std::to_string(i);
        ps.spec = scenario.sessions[i];
        if (scenario.salted) {
            SeededEntropy salt_rng = ctx.root_rng.fork("salt|" + ps.session_id);
            ps.salt = salt_rng.next_fr();
            ps.commitment = tee_commit_salted(ps.spec.usage, *ps.salt);
        } else {
            ps.commitment = tee_commit(ps.spec.usage);
        }
        ledger.authorize_session(agr, ps.session_id, "ue-" + std::to_string(i));
        ledger.lock_escrow(agr, ps.session_id, ps.spec.escrow);
        ledger.submit_commitment(agr, ps.session_id, ps.commitment);
    }

    // --- step 6: proof construction, parallel across sessions
    {
        unsigned workers = options.workers ? options.workers
                                           : std::max(1u, std::thread::hardware_concurrency());
        workers = std::min<size_t>(workers, sessions.size());
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back([&, w] {
                try {
                    for (;;) {
                        size_t i = next.fetch_add(1);
                        if (i >= sessions.size()) break;
                        prepare_session(ctx, sessions[i], i > 0 ? &sessions[i - 1] : nullptr);
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
    }

    // --- step 7: settlement, strictly in session order
    RunResult result;
    std::vector<nlohmann::json> batch_manifests;

    auto push_verdict = [&](const PreparedSession& ps, const std::string& actual,
                            std::string detail) {
        SessionVerdict v;
        v.session_id = ps.session_id;
        v.expected = expected_verdict(ps.spec.adversary);
        v.actual = actual;
        if (!ps.prep_detail.empty()) {
            detail = detail.empty() ? ps.prep_detail : ps.prep_detail + "," + detail;
        }
        v.detail = detail;
        v.ok = v.actual == v.expected;
        result.verdicts.push_back(std::move(v));
    };

    if (scenario.layer == "l1") {
        for (size_t i = 0; i < sessions.size(); i++) {
            PreparedSession& ps = sessions[i];
            using Kind = AdversaryStrategy::Kind;
            if (!ps.spec.adversary) {
                std::string status =
                    settle_on_l1(ledger, agr, ps, ps.claimed_total, ps.proof_bytes, ctx.keys.vk);
                push_verdict(ps, status == "settled" ? "settled" : "rejected", status);
                continue;
            }
            switch (ps.spec.adversary->kind) {
                case Kind::ReuseProof: {
                    std::string first = settle_on_l1(ledger, agr, ps, ps.claimed_total,
                                                     ps.proof_bytes, ctx.keys.vk);
                    std::string replay = settle_on_l1(ledger, agr, ps, ps.claimed_total,
                                                      ps.proof_bytes, ctx.keys.vk);
                    bool ok = first == "settled" && replay != "settled";
                    push_verdict(ps, ok ? "settled_replay_rejected" : "rejected",
                                 "first=" + first + ",replay=" + replay);
                    break;
                }
                case Kind::ReplayCommitment: {
                    const PreparedSession& victim = sessions[i - 1];
                    std::string commit_attempt;
                    try {
                        ledger.submit_commitment(agr, ps.session_id, victim.commitment);
                        commit_attempt = "accepted";
                    } catch (const B5gError& e) {
                        commit_attempt = errc_name(e.code());
                    }
                    std::string status = settle_on_l1(ledger, agr, ps, victim.honest_total,
                                                      victim.honest_proof, ctx.keys.vk);
                    push_verdict(ps, status == "settled" ? "settled" : "rejected",
                                 "commit_replay=" + commit_attempt + ",settle=" + status);
                    break;
                }
                default: {
                    std::string status = settle_on_l1(ledger, agr, ps, ps.claimed_total,
                                                      ps.proof_bytes, ctx.keys.vk);
                    push_verdict(ps, status == "settled" ? "settled" : "rejected", status);
                    break;
                }
            }
        }
        result.final_digest = ledger.state_digest();
    } else {
        Sequencer seq(ledger, RollupGasModel::from_env());
        seq.register_agreement(agr, ctx.keys.vk);
        for (const auto& ps : sessions) seq.sync_session(agr, ps.session_id);

        // outcome per session id
        std::map<std::string, std::string> outcome;
        std::map<std::string, std::string> detail;
        using Kind = AdversaryStrategy::Kind;
        for (size_t i = 0; i < sessions.size(); i++) {
            PreparedSession& ps = sessions[i];
            Amount total = ps.claimed_total;
            std::vector<uint8_t> proof = ps.proof_bytes;
            if (ps.spec.adversary && ps.spec.adversary->kind == Kind::ReplayCommitment) {
                const PreparedSession& victim = sessions[i - 1];
                try {
                    ledger.submit_commitment(agr, ps.session_id, victim.commitment);
                    detail[ps.session_id] = "commit_replay=accepted";
                } catch (const B5gError& e) {
                    detail[ps.session_id] = std::string("commit_replay=") + errc_name(e.code());
                }
                total = victim.honest_total;
                proof = victim.honest_proof;
            }
            try {
                seq.submit_tx({agr, ps.session_id, total, proof});
            } catch (const B5gError& e) {
                outcome[ps.session_id] = std::string("submit:") + errc_name(e.code());
            }
            if (ps.spec.adversary && ps.spec.adversary->kind == Kind::ReuseProof) {
                seq.submit_tx({agr, ps.session_id, total, proof}); // double spend attempt
            }
        }

        while (seq.pending() > 0) {
            std::vector<L2Settlement> rejected;
            Batch batch = seq.seal_batch(scenario.batch_size, &rejected);
            for (const auto& tx : rejected) {
                auto& o = outcome[tx.session_id];
                if (o.empty() || o == "sealed") o = o.empty() ? "rejected_at_seal" : o;
                else o += ",rejected_at_seal";
            }
            if (batch.size() == 0) continue; // batch of only-rejected txs
            seq.commit_batch(batch);
            BatchAttestation att = seq.prove_batch(batch);
            seq.execute_batch(batch, att);
            batch_manifests.push_back(batch.manifest());
            for (const auto& tx : batch.txs) {
                auto& o = outcome[tx.session_id];
                o = o.empty() ? "sealed" : o + ",sealed";
            }
        }

        for (const auto& ps : sessions) {
            Phase phase = ledger.agreement(agr).sessions.at(ps.session_id).phase;
            std::string o = outcome.count(ps.session_id) ? outcome[ps.session_id] : "none";
            std::string actual;
            if (ps.spec.adversary && ps.spec.adversary->kind == Kind::ReuseProof) {
                // first instance settles, duplicate must be rejected at seal
                actual = (phase == Phase::Settled && o.find("rejected_at_seal") != std::string::npos)
                             ? "settled_replay_rejected"
                             : (phase == Phase::Settled ? "settled" : "rejected");
            } else {
                actual = phase == Phase::Settled ? "settled" : "rejected";
            }
            std::string d = detail.count(ps.session_id) ? detail[ps.session_id] + "," + o : o;
            push_verdict(ps, actual, d);
        }
        Digest32 l1_digest = ledger.state_digest();
        Sha256 h;
        h.update(std::string("b5g-l1l2-digest"));
        h.update(l1_digest);
        h.update(seq.state_root());
        result.final_digest = h.finalize();
    }

    result.security_ok = true;
    for (const auto& v : result.verdicts) result.security_ok &= v.ok;
    result.l1_metrics = ledger.metrics();

    // --- report + artifacts + privacy audit
    nlohmann::json verdicts_json = nlohmann::json::array();
    for (const auto& v : result.verdicts) {
        verdicts_json.push_back({{"session_id", v.session_id},
                                 {"expected", v.expected},
                                 {"actual", v.actual},
                                 {"detail", v.detail},
                                 {"ok", v.ok}});
    }
    nlohmann::json gas_by_kind = nlohmann::json::object();
    for (const auto& [kind, gas] : result.l1_metrics.gas_by_kind) gas_by_kind[kind] = gas;
    result.report = {{"schema", "b5groam-run-v1"},
                     {"seed", seed},
                     {"layer", scenario.layer},
                     {"vk_digest", digest_hex(ctx.keys.vk.digest())},
                     {"final_digest", digest_hex(result.final_digest)},
                     {"verdicts", std::move(verdicts_json)},
                     {"metrics",
                      {{"tx_count", result.l1_metrics.tx_count},
                       {"total_gas", result.l1_metrics.total_gas},
                       {"gas_by_kind", std::move(gas_by_kind)}}}};

    std::vector<std::string> artifact_blobs;
    if (!options.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(options.out_dir);
        ledger.write_log_jsonl(options.out_dir + "/ledger.jsonl");
        {
            std::ofstream out(options.out_dir + "/state.json");
            out << ledger.state_snapshot().dump(1) << "\n";
        }
        if (!batch_manifests.empty()) {
            fs::create_directories(options.out_dir + "/batches");
            for (const auto& m : batch_manifests) {
                std::ofstream out(options.out_dir + "/batches/batch-" +
                                  std::to_string(m.at("batch_id").get<uint64_t>()) + ".json");
                out << m.dump(1) << "\n";
            }
        }
    }
    // audit the on-chain artifacts whether or not they were persisted
    artifact_blobs.push_back(ledger.state_snapshot().dump());
    {
        std::string log_blob;
        for (const auto& rec : ledger.log()) log_blob += rec.payload.dump();
        artifact_blobs.push_back(std::move(log_blob));
    }
    for (const auto& m : batch_manifests) artifact_blobs.push_back(m.dump());

    result.privacy_findings = audit_artifacts(sessions, artifact_blobs);
    result.privacy_ok = result.privacy_findings.empty();
    result.report["privacy"] = {{"ok", result.privacy_ok},
                                {"findings", result.privacy_findings}};

    if (!options.out_dir.empty()) {
        std::ofstream out(options.out_dir + "/report.json");
        out << result.report.dump(1) << "\n";
    }
    return result;
}

} // namespace b5g
