// B5GRoam - proving system with Groth16 semantics over BN254
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <string>
#include <vector>

#include "b5groam/curve.hpp"
#include "b5groam/digest.hpp"
#include "b5groam/r1cs.hpp"
#include "b5groam/rng.hpp"

namespace b5g {

// Structured reference string from the emulated multi-contributor ceremony.
// Contributions fold multiplicatively into the trapdoor; the folded secrets
// are kept (and serialized) because the ceremony is an emulation -- security
// is modeled, not enforced. The contributor log carries one transcript
// digest per contribution.
struct PublicParams {
    size_t max_degree = 0;
    std::vector<G1> tau_powers_g1;   // [tau^i]_1, i = 0..max_degree
    std::vector<G2> tau_powers_g2;   // [tau^i]_2, i = 0..max_degree
    std::vector<Digest32> contributor_log;

    struct Secrets {
        Fr tau, alpha, beta, gamma, delta;
    } secrets; // emulation only

    std::vector<uint8_t> serialize() const;
    static PublicParams deserialize(const uint8_t* data, size_t len);
    Digest32 digest() const;
};

// Emulated Powers-of-Tau: folds >= 1 entropy contributions. Deterministic
// given the contribution list.
PublicParams setup(uint32_t security_bits, const std::vector<std::vector<uint8_t>>& contributions,
                   size_t max_degree = 1024);

struct Proof {
    G1 a;
    G2 b;
    G1 c;

    // 32 + 64 + 32 compressed bytes; constant size by construction.
    std::vector<uint8_t> serialize() const;
    static Proof deserialize(const uint8_t* data, size_t len);
    std::string to_hex() const;
    static Proof from_hex(const std::string& s);
};

struct VerificationKey {
    G1 alpha_g1;
    G2 beta_g2;
    G2 gamma_g2;
    G2 delta_g2;
    std::vector<G1> ic; // 1 + num_public
    std::vector<std::string> public_labels;

    size_t arity() const { return ic.empty() ? 0 : ic.size() - 1; }

    std::vector<uint8_t> serialize() const;
    static VerificationKey deserialize(const uint8_t* data, size_t len);
    // The 32-byte hash the ledger stores.
    Digest32 digest() const;
};

struct ProvingKey {
    ConstraintSystem cs;
    size_t domain_size = 0;
    G1 alpha_g1, beta_g1, delta_g1;
    G2 beta_g2, delta_g2;
    std::vector<G1> a_query;     // [u_i(tau)]_1
    std::vector<G1> b_g1_query;  // [v_i(tau)]_1
    std::vector<G2> b_g2_query;  // [v_i(tau)]_2
    std::vector<G1> l_query;     // [(beta u_i + alpha v_i + w_i)/delta]_1, private i
    std::vector<G1> h_query;     // [tau^k t(tau)/delta]_1, k <= n-2

    ProvingKey() : cs({}) {}

    std::vector<uint8_t> serialize() const;
    static ProvingKey deserialize(const uint8_t* data, size_t len);
};

struct KeyPair {
    ProvingKey pk;
    VerificationKey vk;
};

// Key generation bound to one constraint system. Deterministic given pp.
KeyPair keygen(const PublicParams& pp, const ConstraintSystem& cs);

// Proof generation. Refuses unsatisfiable assignments (UnsatisfiedConstraints).
Proof prove(const ProvingKey& pk, const std::vector<Fr>& public_inputs,
            const std::vector<Fr>& assignment, EntropySource& rng);

// Pairing-check verification; cost independent of witness size.
// Throws ArityMismatch when the input count does not match the key.
bool verify(const VerificationKey& vk, const std::vector<Fr>& public_inputs,
            const Proof& proof);

// Key file container: magic "B5GK", version, curve id, kind, body.
enum class KeyFileKind : uint8_t { Params = 0, ProvingKey = 1, VerificationKey = 2 };

void write_key_file(const std::string& path, KeyFileKind kind,
                    const std::vector<uint8_t>& body);
std::vector<uint8_t> read_key_file(const std::string& path, KeyFileKind expected);

} // namespace b5g
