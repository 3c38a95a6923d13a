// B5GRoam - CDR data model and emulated-TEE commitment step
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/cdr.hpp"

#include "b5groam/errors.hpp"
#include "b5groam/poseidon.hpp"

namespace b5g {

namespace {

constexpr const char* TEE_TAG_DOMAIN = "b5g-tee-emulation-v1";

Digest32 compute_tee_tag(const Fr& h) {
    Sha256 hasher;
    hasher.update(std::string(TEE_TAG_DOMAIN));
    hasher.update(h.to_bytes_be());
    return hasher.finalize();
}

} // namespace

void UsageRecord::validate() const {
    auto check = [](uint64_t v, const char* name) {
        if (v >= METRIC_BOUND) {
            throw B5gError(Errc::RangeViolation,
                           std::string(name) + " out of range: " + std::to_string(v));
        }
    };
    check(n_sms, "n_sms");
    check(n_mb, "n_mb");
    check(n_min, "n_min");
}

bool Commitment::tag_valid() const { return tee_tag_ == compute_tee_tag(h_cdr_); }

Commitment Commitment::from_wire(const Fr& h_cdr, const Digest32& tag) {
    return Commitment(h_cdr, tag);
}

Commitment Commitment::unattested(const Fr& h_cdr) {
    return Commitment(h_cdr, Digest32{});
}

Commitment tee_commit(const UsageRecord& record) {
    record.validate();
    Fr h = poseidon_hash3(Fr::from_u64(record.n_sms), Fr::from_u64(record.n_mb),
                          Fr::from_u64(record.n_min));
    return Commitment(h, compute_tee_tag(h));
}

Commitment tee_commit_salted(const UsageRecord& record, const Fr& salt) {
    record.validate();
    Fr h = poseidon_hash4(Fr::from_u64(record.n_sms), Fr::from_u64(record.n_mb),
                          Fr::from_u64(record.n_min), salt);
    return Commitment(h, compute_tee_tag(h));
}

bool open_matches(const UsageRecord& record, const Commitment& commitment) {
    UsageRecord checked = record;
    try {
        checked.validate();
    } catch (const B5gError&) {
        return false;
    }
    return tee_commit(checked).h_cdr() == commitment.h_cdr();
}

bool open_matches_salted(const UsageRecord& record, const Fr& salt,
                         const Commitment& commitment) {
    try {
        record.validate();
    } catch (const B5gError&) {
        return false;
    }
    return tee_commit_salted(record, salt).h_cdr() == commitment.h_cdr();
}

} // namespace b5g
