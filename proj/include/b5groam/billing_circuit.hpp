// B5GRoam - billing constraint system and witness synthesis
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <optional>

#include "b5groam/cdr.hpp"
#include "b5groam/poseidon.hpp"
#include "b5groam/r1cs.hpp"
#include "b5groam/util.hpp"

namespace b5g {

// Per-unit rates in smallest currency units, fixed by a roaming agreement.
struct RateSchedule {
    uint64_t r_sms = 0;
    uint64_t r_mb = 0;
    uint64_t r_voice = 0;

    // Rates are bounded to 32 bits; together with the 32-bit metric bound the
    // maximum total stays below 2^66, far from the field modulus, so the
    // billing sum can never wrap in-field.
    void validate() const;

    bool operator==(const RateSchedule&) const = default;
};

// total = n_sms*r_sms + n_mb*r_mb + n_min*r_voice, exact integer arithmetic.
Amount compute_total(const UsageRecord& record, const RateSchedule& rates);

Fr fr_from_amount(Amount v);

struct PublicInputs {
    Amount total = 0;
    Fr h_cdr;

    std::vector<Fr> as_field_elements() const { return {fr_from_amount(total), h_cdr}; }
};

// Hashed into the agreement record so verifiers can confirm which circuit a
// key pair belongs to.
struct CircuitConfig {
    RateSchedule rates;
    bool salted = false;
    uint32_t range_bits = 32;

    std::string descriptor_json() const;
    Digest32 descriptor_digest() const;
};

// Full witness assignment plus the public inputs it satisfies.
struct SynthesisResult {
    std::vector<Fr> assignment; // [one, total, h_cdr, privates...]
    PublicInputs public_inputs;
};

// The arithmetic circuit: billing linear form with rates as baked-in
// constants, Poseidon consistency against the committed hash, and 32-bit
// range checks on each metric.
class BillingCircuit {
  public:
    BillingCircuit(const CircuitConfig& config, const PoseidonParams& params);

    const ConstraintSystem& cs() const { return cs_; }
    const CircuitConfig& config() const { return config_; }

    // Alg.-1-style synthesis. declared_total, when present, is the prover's
    // claimed amount and must equal the recomputed one (TotalMismatch);
    // the record must open the commitment (HashMismatch). salt is required
    // iff the circuit is salted.
    SynthesisResult synthesize(const UsageRecord& record, const Commitment& commitment,
                               std::optional<Amount> declared_total = std::nullopt,
                               std::optional<Fr> salt = std::nullopt) const;

  private:
    LinearCombination build_poseidon(const std::vector<LinearCombination>& inputs);
    void witness_poseidon(std::vector<Fr>& assignment) const;

    CircuitConfig config_;
    PoseidonParams params_;
    ConstraintSystem cs_;
    std::vector<VarIndex> metric_vars_;               // n_sms, n_mb, n_min
    std::optional<VarIndex> salt_var_;
    std::vector<std::vector<VarIndex>> bit_vars_;     // per metric
    // S-box intermediate variables in allocation order (x^2, x^4, x^5 per box).
    std::vector<VarIndex> sbox_vars_;
    std::vector<LinearCombination> sbox_inputs_;      // LC feeding each S-box
};

} // namespace b5g
