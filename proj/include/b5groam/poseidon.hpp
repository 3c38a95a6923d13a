// B5GRoam - Poseidon hash over the BN254 scalar field
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <span>
#include <string>
#include <vector>

#include "b5groam/field.hpp"

namespace b5g {

// Parameters are derived deterministically from a seed string committed to
// the repo: round constants by SHA-256 rejection sampling, MDS as the Cauchy
// matrix 1/(i + t + j). Two independent derivations must agree; fixture
// files generated by the reference implementation pin this down in tests.
struct PoseidonParams {
    size_t t = 0;
    size_t full_rounds = 0;
    size_t partial_rounds = 0;
    uint64_t alpha = 5;
    std::string seed;
    std::vector<Fr> round_constants;     // t * (full + partial)
    std::vector<std::vector<Fr>> mds;    // t x t

    size_t total_rounds() const { return full_rounds + partial_rounds; }

    // Deterministic derivation; supported widths: 4 (3-input hash) and
    // 5 (salted 4-input hash).
    static PoseidonParams derive(size_t t);

    static const PoseidonParams& instance_t4();
    static const PoseidonParams& instance_t5();

    bool mds_invertible() const;

    // Fixture JSON (hex-encoded big integers).
    std::string to_json() const;
    static PoseidonParams from_json(const std::string& text);
};

// Full permutation. Throws WidthMismatch if state size != params.t.
std::vector<Fr> poseidon_permutation(std::span<const Fr> state, const PoseidonParams& params);

// Fixed-arity hashes: capacity element 0 starts at zero, inputs fill the
// rate, output is element 0 after the permutation.
Fr poseidon_hash3(const Fr& x1, const Fr& x2, const Fr& x3);
Fr poseidon_hash4(const Fr& x1, const Fr& x2, const Fr& x3, const Fr& x4);

} // namespace b5g
