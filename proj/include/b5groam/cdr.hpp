// B5GRoam - CDR data model and emulated-TEE commitment step
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <optional>
#include <string>

#include "b5groam/digest.hpp"
#include "b5groam/field.hpp"
#include "b5groam/util.hpp"

namespace b5g {

// Session usage aggregate. Units are whole megabytes / minutes; fractional
// usage is rounded up before a record is formed (telecom convention, and it
// keeps the prover and the TEE in agreement on the exact integers).
struct UsageRecord {
    uint64_t n_sms = 0;
    uint64_t n_mb = 0;
    uint64_t n_min = 0;

    // Each metric must fit 32 bits so the billing arithmetic stays far from
    // the field modulus.
    static constexpr uint64_t METRIC_BOUND = uint64_t(1) << 32;

    void validate() const;

    bool operator==(const UsageRecord&) const = default;
};

// A Poseidon commitment to a UsageRecord. Instances are only produced by the
// TEE emulation (tee_commit / tee_commit_salted) or reconstructed from the
// wire; the attestation tag lets the ledger reject field elements that never
// went through the commitment path. The tag is simulation-grade: it models
// the TEE boundary, it is not real attestation.
class Commitment {
  public:
    const Fr& h_cdr() const { return h_cdr_; }
    const Digest32& tee_tag() const { return tee_tag_; }

    // Wire format: 0x-prefixed hex of the field element, fixed 32 bytes.
    std::string to_hex() const { return h_cdr_.to_hex(); }

    bool tag_valid() const;

    bool operator==(const Commitment& o) const { return h_cdr_ == o.h_cdr_; }
    bool operator!=(const Commitment& o) const { return !(*this == o); }

    // Reconstructs a commitment from wire parts without validating the tag;
    // submission paths validate.
    static Commitment from_wire(const Fr& h_cdr, const Digest32& tag);

    // Test hook: wraps a raw field element with a junk tag, bypassing the
    // TEE path. The ledger must reject these.
    static Commitment unattested(const Fr& h_cdr);

  private:
    Commitment(const Fr& h, const Digest32& tag) : h_cdr_(h), tee_tag_(tag) {}

    friend Commitment tee_commit(const UsageRecord&);
    friend Commitment tee_commit_salted(const UsageRecord&, const Fr&);

    Fr h_cdr_;
    Digest32 tee_tag_;
};

// Workflow step 5: the TEE hashes the session aggregate. The record passed
// here is ground truth for the session.
Commitment tee_commit(const UsageRecord& record);

// Salted variant: a fourth Poseidon input (random nonce held by the TEE and
// shared off-chain with the VMNO) makes the hiding property hold even for
// low-entropy records. Off by default to match the unsalted commitment.
Commitment tee_commit_salted(const UsageRecord& record, const Fr& salt);

bool open_matches(const UsageRecord& record, const Commitment& commitment);
bool open_matches_salted(const UsageRecord& record, const Fr& salt, const Commitment& commitment);

// Binds commitments to settlement sessions.
struct SessionContext {
    std::string session_id;
    std::string ue_id;
    std::string agreement_address;
};

} // namespace b5g
