// B5GRoam - billing constraint system and witness synthesis
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/billing_circuit.hpp"

#include <json.hpp>

#include "b5groam/errors.hpp"

namespace b5g {

void RateSchedule::validate() const {
    auto check = [](uint64_t v, const char* name) {
        if (v >= UsageRecord::METRIC_BOUND) {
            throw B5gError(Errc::RangeViolation,
                           std::string(name) + " out of range: " + std::to_string(v));
        }
    };
    check(r_sms, "r_sms");
    check(r_mb, "r_mb");
    check(r_voice, "r_voice");
}

Amount compute_total(const UsageRecord& record, const RateSchedule& rates) {
    record.validate();
    rates.validate();
    return Amount(record.n_sms) * rates.r_sms + Amount(record.n_mb) * rates.r_mb +
           Amount(record.n_min) * rates.r_voice;
}

Fr fr_from_amount(Amount v) {
    Fr two64 = Fr::from_u256(U256{0, 1, 0, 0});
    return Fr::from_u64(uint64_t(v >> 64)) * two64 + Fr::from_u64(uint64_t(v));
}

std::string CircuitConfig::descriptor_json() const {
    nlohmann::json j;
    j["rates"] = {{"r_sms", rates.r_sms}, {"r_mb", rates.r_mb}, {"r_voice", rates.r_voice}};
    j["salted"] = salted;
    j["range_bits"] = range_bits;
    return j.dump();
}

Digest32 CircuitConfig::descriptor_digest() const { return sha256(descriptor_json()); }

BillingCircuit::BillingCircuit(const CircuitConfig& config, const PoseidonParams& params)
    : config_(config), params_(params), cs_({"total", "h_cdr"}) {
    config_.rates.validate();
    const size_t arity = config_.salted ? 4 : 3;
    if (params_.t != arity + 1) {
        throw B5gError(Errc::ParameterMismatch,
                       "poseidon width " + std::to_string(params_.t) + " does not fit arity " +
                           std::to_string(arity));
    }
    if (config_.range_bits != 32) {
        throw B5gError(Errc::ParameterMismatch, "range_bits must be 32");
    }

    const VarIndex total_var = cs_.public_var(0);
    const VarIndex h_cdr_var = cs_.public_var(1);

    for (int i = 0; i < 3; i++) metric_vars_.push_back(cs_.allocate());
    if (config_.salted) salt_var_ = cs_.allocate();

    // Range checks: bit decomposition per metric.
    for (VarIndex metric : metric_vars_) {
        std::vector<VarIndex> bits;
        LinearCombination recomposed;
        Fr weight = Fr::one();
        for (uint32_t b = 0; b < config_.range_bits; b++) {
            VarIndex bit = cs_.allocate();
            bits.push_back(bit);
            // bit * (1 - bit) = 0
            cs_.enforce(LinearCombination::variable(bit),
                        LinearCombination::constant(Fr::one()) -
                            LinearCombination::variable(bit),
                        {});
            recomposed.add_term(bit, weight);
            weight = weight.dbl();
        }
        cs_.enforce(recomposed, LinearCombination::constant(Fr::one()),
                    LinearCombination::variable(metric));
        bit_vars_.push_back(std::move(bits));
    }

    // Billing linear form with the rates as constants.
    LinearCombination billing;
    billing.add_term(metric_vars_[0], Fr::from_u64(config_.rates.r_sms));
    billing.add_term(metric_vars_[1], Fr::from_u64(config_.rates.r_mb));
    billing.add_term(metric_vars_[2], Fr::from_u64(config_.rates.r_voice));
    cs_.enforce(billing, LinearCombination::constant(Fr::one()),
                LinearCombination::variable(total_var));

    // Hash consistency: in-circuit Poseidon output equals the public h_cdr.
    std::vector<LinearCombination> inputs;
    for (VarIndex v : metric_vars_) inputs.push_back(LinearCombination::variable(v));
    if (salt_var_) inputs.push_back(LinearCombination::variable(*salt_var_));
    LinearCombination hash_out = build_poseidon(inputs);
    cs_.enforce(hash_out, LinearCombination::constant(Fr::one()),
                LinearCombination::variable(h_cdr_var));
}

// Symbolic mirror of poseidon_permutation: linear layers stay linear
// combinations, every S-box allocates x^2, x^4, x^5 with three constraints.
LinearCombination BillingCircuit::build_poseidon(const std::vector<LinearCombination>& inputs) {
    const size_t t = params_.t;
    const size_t half_full = params_.full_rounds / 2;

    std::vector<LinearCombination> state(t);
    state[0] = {};
    for (size_t i = 0; i < inputs.size(); i++) state[i + 1] = inputs[i];

    auto sbox_lc = [&](const LinearCombination& x) {
        VarIndex x2 = cs_.allocate();
        VarIndex x4 = cs_.allocate();
        VarIndex x5 = cs_.allocate();
        cs_.enforce(x, x, LinearCombination::variable(x2));
        cs_.enforce(LinearCombination::variable(x2), LinearCombination::variable(x2),
                    LinearCombination::variable(x4));
        cs_.enforce(LinearCombination::variable(x4), x, LinearCombination::variable(x5));
        sbox_vars_.push_back(x2);
        sbox_vars_.push_back(x4);
        sbox_vars_.push_back(x5);
        sbox_inputs_.push_back(x);
        return LinearCombination::variable(x5);
    };

    for (size_t rnd = 0; rnd < params_.total_rounds(); rnd++) {
        for (size_t i = 0; i < t; i++) {
            state[i] = state[i] +
                       LinearCombination::constant(params_.round_constants[rnd * t + i]);
        }
        bool full = rnd < half_full || rnd >= half_full + params_.partial_rounds;
        size_t boxes = full ? t : 1;
        for (size_t i = 0; i < boxes; i++) state[i] = sbox_lc(state[i]);
        std::vector<LinearCombination> mixed(t);
        for (size_t i = 0; i < t; i++) {
            LinearCombination acc;
            for (size_t j = 0; j < t; j++) {
                acc = acc + state[j].scaled(params_.mds[i][j]);
            }
            mixed[i] = std::move(acc);
        }
        state = std::move(mixed);
    }
    return state[0];
}

void BillingCircuit::witness_poseidon(std::vector<Fr>& assignment) const {
    for (size_t i = 0; i < sbox_inputs_.size(); i++) {
        Fr x = sbox_inputs_[i].evaluate(assignment);
        Fr x2 = x.square();
        Fr x4 = x2.square();
        assignment[sbox_vars_[3 * i]] = x2;
        assignment[sbox_vars_[3 * i + 1]] = x4;
        assignment[sbox_vars_[3 * i + 2]] = x4 * x;
    }
}

SynthesisResult BillingCircuit::synthesize(const UsageRecord& record,
                                           const Commitment& commitment,
                                           std::optional<Amount> declared_total,
                                           std::optional<Fr> salt) const {
    record.validate();
    if (config_.salted != salt.has_value()) {
        throw B5gError(Errc::ParameterMismatch,
                       config_.salted ? "salted circuit needs a salt" : "unexpected salt");
    }

    // Alg. 1 line 3: the prover's record must open the on-chain commitment.
    bool opens = config_.salted ? open_matches_salted(record, *salt, commitment)
                                : open_matches(record, commitment);
    if (!opens) {
        throw B5gError(Errc::HashMismatch, "record does not open the committed hash");
    }

    // Alg. 1 line 4: a declared total must match the recomputation.
    Amount total = compute_total(record, config_.rates);
    if (declared_total && *declared_total != total) {
        throw B5gError(Errc::TotalMismatch,
                       "declared total " + amount_to_string(*declared_total) +
                           " != computed " + amount_to_string(total));
    }

    std::vector<Fr> assignment(cs_.num_variables(), Fr::zero());
    assignment[VAR_ONE] = Fr::one();
    assignment[cs_.public_var(0)] = fr_from_amount(total);
    assignment[cs_.public_var(1)] = commitment.h_cdr();
    assignment[metric_vars_[0]] = Fr::from_u64(record.n_sms);
    assignment[metric_vars_[1]] = Fr::from_u64(record.n_mb);
    assignment[metric_vars_[2]] = Fr::from_u64(record.n_min);
    if (salt_var_) assignment[*salt_var_] = *salt;

    const uint64_t metrics[3] = {record.n_sms, record.n_mb, record.n_min};
    for (size_t m = 0; m < 3; m++) {
        for (uint32_t b = 0; b < config_.range_bits; b++) {
            assignment[bit_vars_[m][b]] = ((metrics[m] >> b) & 1) ? Fr::one() : Fr::zero();
        }
    }
    witness_poseidon(assignment);

    return {std::move(assignment), PublicInputs{total, commitment.h_cdr()}};
}

} // namespace b5g
