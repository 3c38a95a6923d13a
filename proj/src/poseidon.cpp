// B5GRoam - Poseidon hash over the BN254 scalar field
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/poseidon.hpp"

#include <json.hpp>

#include "b5groam/digest.hpp"
#include "b5groam/errors.hpp"

namespace b5g {

namespace {

constexpr const char* POSEIDON_SEED = "B5GROAM-POSEIDON-V1";

// Round numbers per width for alpha = 5 at the 128-bit level.
void rounds_for_width(size_t t, size_t& full, size_t& partial) {
    switch (t) {
        case 4: full = 8; partial = 56; return;
        case 5: full = 8; partial = 60; return;
        default:
            throw B5gError(Errc::ParameterMismatch,
                           "unsupported poseidon width " + std::to_string(t));
    }
}

Fr sample_constant(size_t t, size_t i) {
    for (uint64_t attempt = 0;; attempt++) {
        std::string msg = std::string(POSEIDON_SEED) + "|rc|t=" + std::to_string(t) +
                          "|i=" + std::to_string(i) + "|a=" + std::to_string(attempt);
        Digest32 d = sha256(msg);
        U256 v = U256::from_bytes_be(d.data());
        if (v < Fr::modulus()) return Fr::from_u256(v);
    }
}

Fr sbox(const Fr& x) {
    Fr x2 = x.square();
    return x2.square() * x;
}

} // namespace

PoseidonParams PoseidonParams::derive(size_t t) {
    PoseidonParams p;
    p.t = t;
    rounds_for_width(t, p.full_rounds, p.partial_rounds);
    p.seed = POSEIDON_SEED;
    p.round_constants.reserve(t * p.total_rounds());
    for (size_t i = 0; i < t * p.total_rounds(); i++) {
        p.round_constants.push_back(sample_constant(t, i));
    }
    p.mds.assign(t, std::vector<Fr>(t));
    for (size_t i = 0; i < t; i++) {
        for (size_t j = 0; j < t; j++) {
            p.mds[i][j] = Fr::from_u64(uint64_t(i + t + j)).inverse();
        }
    }
    return p;
}

const PoseidonParams& PoseidonParams::instance_t4() {
    static const PoseidonParams p = derive(4);
    return p;
}

const PoseidonParams& PoseidonParams::instance_t5() {
    static const PoseidonParams p = derive(5);
    return p;
}

bool PoseidonParams::mds_invertible() const {
    // Gaussian elimination over Fr.
    auto m = mds;
    size_t n = m.size();
    for (size_t col = 0; col < n; col++) {
        size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) pivot++;
        if (pivot == n) return false;
        std::swap(m[col], m[pivot]);
        Fr inv = m[col][col].inverse();
        for (size_t j = col; j < n; j++) m[col][j] *= inv;
        for (size_t row = 0; row < n; row++) {
            if (row == col || m[row][col].is_zero()) continue;
            Fr factor = m[row][col];
            for (size_t j = col; j < n; j++) m[row][j] -= factor * m[col][j];
        }
    }
    return true;
}

std::string PoseidonParams::to_json() const {
    nlohmann::json j;
    j["modulus"] = Fr::modulus().to_hex();
    j["t"] = t;
    j["full_rounds"] = full_rounds;
    j["partial_rounds"] = partial_rounds;
    j["alpha"] = alpha;
    j["seed"] = seed;
    auto& mdsj = j["mds"] = nlohmann::json::array();
    for (const auto& row : mds) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& v : row) r.push_back(v.to_hex());
        mdsj.push_back(std::move(r));
    }
    auto& rcj = j["round_constants"] = nlohmann::json::array();
    for (const auto& v : round_constants) rcj.push_back(v.to_hex());
    return j.dump(1);
}

PoseidonParams PoseidonParams::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PoseidonParams p;
    if (U256::from_hex(j.at("modulus").get<std::string>()) != Fr::modulus()) {
        throw B5gError(Errc::ParameterMismatch, "poseidon fixture modulus mismatch");
    }
    p.t = j.at("t").get<size_t>();
    p.full_rounds = j.at("full_rounds").get<size_t>();
    p.partial_rounds = j.at("partial_rounds").get<size_t>();
    p.alpha = j.at("alpha").get<uint64_t>();
    if (j.contains("seed")) p.seed = j.at("seed").get<std::string>();
    for (const auto& row : j.at("mds")) {
        std::vector<Fr> r;
        for (const auto& v : row) r.push_back(Fr::from_hex(v.get<std::string>()));
        p.mds.push_back(std::move(r));
    }
    for (const auto& v : j.at("round_constants")) {
        p.round_constants.push_back(Fr::from_hex(v.get<std::string>()));
    }
    if (p.round_constants.size() != p.t * p.total_rounds()) {
        throw B5gError(Errc::ParameterMismatch, "round constant count mismatch");
    }
    return p;
}

std::vector<Fr> poseidon_permutation(std::span<const Fr> state, const PoseidonParams& params) {
    if (state.size() != params.t) {
        throw B5gError(Errc::WidthMismatch,
                       "state width " + std::to_string(state.size()) + " != t=" +
                           std::to_string(params.t));
    }
    const size_t t = params.t;
    const size_t half_full = params.full_rounds / 2;
    std::vector<Fr> s(state.begin(), state.end());
    std::vector<Fr> mixed(t);
    for (size_t rnd = 0; rnd < params.total_rounds(); rnd++) {
        for (size_t i = 0; i < t; i++) s[i] += params.round_constants[rnd * t + i];
        bool full = rnd < half_full || rnd >= half_full + params.partial_rounds;
        if (full) {
            for (size_t i = 0; i < t; i++) s[i] = sbox(s[i]);
        } else {
            s[0] = sbox(s[0]);
        }
        for (size_t i = 0; i < t; i++) {
            Fr acc = Fr::zero();
            for (size_t j = 0; j < t; j++) acc += params.mds[i][j] * s[j];
            mixed[i] = acc;
        }
        std::swap(s, mixed);
    }
    return s;
}

Fr poseidon_hash3(const Fr& x1, const Fr& x2, const Fr& x3) {
    std::vector<Fr> state = {Fr::zero(), x1, x2, x3};
    return poseidon_permutation(state, PoseidonParams::instance_t4())[0];
}

Fr poseidon_hash4(const Fr& x1, const Fr& x2, const Fr& x3, const Fr& x4) {
    std::vector<Fr> state = {Fr::zero(), x1, x2, x3, x4};
    return poseidon_permutation(state, PoseidonParams::instance_t5())[0];
}

} // namespace b5g
