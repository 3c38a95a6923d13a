// B5GRoam - proving system with Groth16 semantics over BN254
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/groth16.hpp"

#include <cstring>
#include <fstream>

#include "b5groam/errors.hpp"
#include "b5groam/pairing.hpp"
#include "b5groam/util.hpp"

namespace b5g {

namespace {

// ---- radix-2 FFT over Fr ----

Fr root_of_unity(size_t n) {
    // n must be a power of two <= 2^28
    Fr root = fr_two_adic_root();
    size_t order = size_t(1) << FR_TWO_ADICITY;
    while (order > n) {
        root = root.square();
        order >>= 1;
    }
    return root;
}

void fft_in_place(std::vector<Fr>& a, const Fr& root) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; i++) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        Fr wlen = root;
        for (size_t l = len; l < n; l <<= 1) wlen = wlen.square();
        for (size_t i = 0; i < n; i += len) {
            Fr w = Fr::one();
            for (size_t j = 0; j < len / 2; j++) {
                Fr u = a[i + j];
                Fr v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void ifft_in_place(std::vector<Fr>& a, const Fr& root) {
    fft_in_place(a, root.inverse());
    Fr ninv = Fr::from_u64(a.size()).inverse();
    for (auto& x : a) x *= ninv;
}

size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// QAP evaluation domain: one point per constraint plus one per public input
// (including the constant one). The extra rows keep the public-input
// polynomials linearly independent.
size_t qap_domain_size(const ConstraintSystem& cs) {
    return next_pow2(cs.num_constraints() + cs.num_public() + 1);
}

// Witness-side QAP evaluations on the domain: A[j] = <a_j, w> etc.
void qap_evaluations(const ConstraintSystem& cs, const std::vector<Fr>& assignment,
                     size_t n, std::vector<Fr>& a, std::vector<Fr>& b, std::vector<Fr>& c) {
    a.assign(n, Fr::zero());
    b.assign(n, Fr::zero());
    c.assign(n, Fr::zero());
    const auto& constraints = cs.constraints();
    for (size_t j = 0; j < constraints.size(); j++) {
        a[j] = constraints[j].a.evaluate(assignment);
        b[j] = constraints[j].b.evaluate(assignment);
        c[j] = constraints[j].c.evaluate(assignment);
    }
    for (size_t k = 0; k <= cs.num_public(); k++) {
        a[constraints.size() + k] = assignment[k];
    }
}

// h(X) = (A(X)B(X) - C(X)) / (X^n - 1) via coset evaluation.
std::vector<Fr> compute_h(const ConstraintSystem& cs, const std::vector<Fr>& assignment,
                          size_t n) {
    std::vector<Fr> a, b, c;
    qap_evaluations(cs, assignment, n, a, b, c);

    Fr root = root_of_unity(n);
    ifft_in_place(a, root);
    ifft_in_place(b, root);
    ifft_in_place(c, root);

    const Fr g = fr_multiplicative_generator();
    Fr power = Fr::one();
    for (size_t i = 0; i < n; i++) {
        a[i] *= power;
        b[i] *= power;
        c[i] *= power;
        power *= g;
    }
    fft_in_place(a, root);
    fft_in_place(b, root);
    fft_in_place(c, root);

    // t(g*w^j) = g^n - 1 is constant on the coset.
    Fr t_inv = (g.pow(U256(uint64_t(n))) - Fr::one()).inverse();
    std::vector<Fr> h(n);
    for (size_t i = 0; i < n; i++) h[i] = (a[i] * b[i] - c[i]) * t_inv;

    ifft_in_place(h, root);
    Fr ginv = g.inverse();
    power = Fr::one();
    for (size_t i = 0; i < n; i++) {
        h[i] *= power;
        power *= ginv;
    }
    // degree <= n-2
    if (!h[n - 1].is_zero()) {
        throw B5gError(Errc::UnsatisfiedConstraints, "quotient degree overflow");
    }
    h.pop_back();
    return h;
}

// Lagrange basis evaluations L_j(tau) over the domain, O(n).
std::vector<Fr> lagrange_at(const Fr& tau, size_t n) {
    Fr root = root_of_unity(n);
    Fr t_tau = tau.pow(U256(uint64_t(n))) - Fr::one();
    Fr n_inv = Fr::from_u64(n).inverse();
    std::vector<Fr> out(n);
    Fr omega_j = Fr::one();
    for (size_t j = 0; j < n; j++) {
        // L_j(tau) = (tau^n - 1) * w^j / (n * (tau - w^j))
        out[j] = t_tau * omega_j * n_inv * (tau - omega_j).inverse();
        omega_j *= root;
    }
    return out;
}

void accumulate_lc(std::vector<Fr>& acc, const LinearCombination& lc, const Fr& weight) {
    for (const auto& [v, coeff] : lc.terms) acc[v] += coeff * weight;
}

// ---- serialization helpers ----

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; i++) out.push_back(uint8_t(v >> (8 * i)));
}

uint32_t get_u32(const uint8_t*& p, const uint8_t* end) {
    if (end - p < 4) throw B5gError(Errc::SerializationError, "truncated u32");
    uint32_t v = 0;
    for (int i = 0; i < 4; i++) v |= uint32_t(*p++) << (8 * i);
    return v;
}

void put_g1(std::vector<uint8_t>& out, const G1& p) {
    auto enc = g1_compress(p);
    out.insert(out.end(), enc.begin(), enc.end());
}

void put_g2(std::vector<uint8_t>& out, const G2& p) {
    auto enc = g2_compress(p);
    out.insert(out.end(), enc.begin(), enc.end());
}

G1 get_g1(const uint8_t*& p, const uint8_t* end) {
    if (end - p < 32) throw B5gError(Errc::SerializationError, "truncated g1");
    G1 r = g1_decompress(p, 32);
    p += 32;
    return r;
}

G2 get_g2(const uint8_t*& p, const uint8_t* end) {
    if (end - p < 64) throw B5gError(Errc::SerializationError, "truncated g2");
    G2 r = g2_decompress(p, 64);
    p += 64;
    return r;
}

void put_g1_vec(std::vector<uint8_t>& out, const std::vector<G1>& v) {
    put_u32(out, uint32_t(v.size()));
    for (const auto& p : v) put_g1(out, p);
}

void put_g2_vec(std::vector<uint8_t>& out, const std::vector<G2>& v) {
    put_u32(out, uint32_t(v.size()));
    for (const auto& p : v) put_g2(out, p);
}

std::vector<G1> get_g1_vec(const uint8_t*& p, const uint8_t* end) {
    uint32_t n = get_u32(p, end);
    std::vector<G1> v;
    v.reserve(n);
    for (uint32_t i = 0; i < n; i++) v.push_back(get_g1(p, end));
    return v;
}

std::vector<G2> get_g2_vec(const uint8_t*& p, const uint8_t* end) {
    uint32_t n = get_u32(p, end);
    std::vector<G2> v;
    v.reserve(n);
    for (uint32_t i = 0; i < n; i++) v.push_back(get_g2(p, end));
    return v;
}

void put_fr(std::vector<uint8_t>& out, const Fr& v) {
    auto b = v.to_bytes_be();
    out.insert(out.end(), b.begin(), b.end());
}

Fr get_fr(const uint8_t*& p, const uint8_t* end) {
    if (end - p < 32) throw B5gError(Errc::SerializationError, "truncated fr");
    Fr v = Fr::from_bytes_be(p);
    p += 32;
    return v;
}

} // namespace

PublicParams setup(uint32_t security_bits,
                   const std::vector<std::vector<uint8_t>>& contributions, size_t max_degree) {
    (void)security_bits; // the curve fixes the level; kept for interface fidelity
    if (contributions.empty()) {
        throw B5gError(Errc::NoContributions, "setup requires at least one contribution");
    }
    PublicParams pp;
    pp.max_degree = max_degree;
    Fr tau = Fr::one(), alpha = Fr::one(), beta = Fr::one(), gamma = Fr::one(),
       delta = Fr::one();
    for (size_t i = 0; i < contributions.size(); i++) {
        SeededEntropy rng(contributions[i]);
        tau *= rng.next_nonzero_fr();
        alpha *= rng.next_nonzero_fr();
        beta *= rng.next_nonzero_fr();
        gamma *= rng.next_nonzero_fr();
        delta *= rng.next_nonzero_fr();
        Sha256 h;
        h.update(std::string("b5g-pot-contribution"));
        uint8_t idx[4] = {uint8_t(i >> 24), uint8_t(i >> 16), uint8_t(i >> 8), uint8_t(i)};
        h.update(idx, 4);
        h.update(g1_compress(g1_mul(G1::generator(), tau)));
        pp.contributor_log.push_back(h.finalize());
    }
    pp.secrets = {tau, alpha, beta, gamma, delta};

    G1WindowTable g1_table(G1::generator());
    G2WindowTable g2_table(G2::generator());
    pp.tau_powers_g1.reserve(max_degree + 1);
    pp.tau_powers_g2.reserve(max_degree + 1);
    Fr power = Fr::one();
    for (size_t i = 0; i <= max_degree; i++) {
        pp.tau_powers_g1.push_back(g1_table.mul(power));
        pp.tau_powers_g2.push_back(g2_table.mul(power));
        power *= tau;
    }
    return pp;
}

KeyPair keygen(const PublicParams& pp, const ConstraintSystem& cs) {
    const size_t n = qap_domain_size(cs);
    if (n > pp.max_degree) {
        throw B5gError(Errc::ParamsTooSmall,
                       "domain " + std::to_string(n) + " exceeds params degree " +
                           std::to_string(pp.max_degree));
    }
    const auto& [tau, alpha, beta, gamma, pp_delta] = pp.secrets;
    // Phase-2 specialization: delta is re-randomized per circuit by folding
    // in the constraint-system bytes. Keys from different circuits therefore
    // never share delta, and cross-circuit proofs fail the pairing check.
    std::vector<uint8_t> phase2_seed = cs.serialize();
    const std::string phase2_label = "b5g-phase2-delta";
    phase2_seed.insert(phase2_seed.end(), phase2_label.begin(), phase2_label.end());
    Fr delta = pp_delta * SeededEntropy(phase2_seed).next_nonzero_fr();
    const size_t num_vars = cs.num_variables();
    const size_t num_pub = cs.num_public();

    std::vector<Fr> lag = lagrange_at(tau, n);
    std::vector<Fr> u(num_vars, Fr::zero()), v(num_vars, Fr::zero()), w(num_vars, Fr::zero());
    const auto& constraints = cs.constraints();
    for (size_t j = 0; j < constraints.size(); j++) {
        accumulate_lc(u, constraints[j].a, lag[j]);
        accumulate_lc(v, constraints[j].b, lag[j]);
        accumulate_lc(w, constraints[j].c, lag[j]);
    }
    for (size_t k = 0; k <= num_pub; k++) {
        u[k] += lag[constraints.size() + k];
    }

    G1WindowTable g1_table(G1::generator());
    G2WindowTable g2_table(G2::generator());

    KeyPair keys;
    ProvingKey& pk = keys.pk;
    VerificationKey& vk = keys.vk;

    pk.cs = cs;
    pk.domain_size = n;
    pk.alpha_g1 = g1_table.mul(alpha);
    pk.beta_g1 = g1_table.mul(beta);
    pk.delta_g1 = g1_table.mul(delta);
    pk.beta_g2 = g2_table.mul(beta);
    pk.delta_g2 = g2_table.mul(delta);

    pk.a_query.reserve(num_vars);
    pk.b_g1_query.reserve(num_vars);
    pk.b_g2_query.reserve(num_vars);
    for (size_t i = 0; i < num_vars; i++) {
        pk.a_query.push_back(g1_table.mul(u[i]));
        pk.b_g1_query.push_back(g1_table.mul(v[i]));
        pk.b_g2_query.push_back(g2_table.mul(v[i]));
    }

    Fr delta_inv = delta.inverse();
    Fr gamma_inv = gamma.inverse();
    pk.l_query.reserve(num_vars - num_pub - 1);
    for (size_t i = num_pub + 1; i < num_vars; i++) {
        Fr val = (beta * u[i] + alpha * v[i] + w[i]) * delta_inv;
        pk.l_query.push_back(g1_table.mul(val));
    }
    Fr t_tau = tau.pow(U256(uint64_t(n))) - Fr::one();
    pk.h_query.reserve(n - 1);
    Fr power = Fr::one();
    for (size_t k = 0; k + 1 < n; k++) {
        pk.h_query.push_back(g1_table.mul(power * t_tau * delta_inv));
        power *= tau;
    }

    vk.alpha_g1 = pk.alpha_g1;
    vk.beta_g2 = pk.beta_g2;
    vk.gamma_g2 = g2_table.mul(gamma);
    vk.delta_g2 = pk.delta_g2;
    vk.public_labels = cs.public_labels();
    vk.ic.reserve(num_pub + 1);
    for (size_t i = 0; i <= num_pub; i++) {
        Fr val = (beta * u[i] + alpha * v[i] + w[i]) * gamma_inv;
        vk.ic.push_back(g1_table.mul(val));
    }
    return keys;
}

Proof prove(const ProvingKey& pk, const std::vector<Fr>& public_inputs,
            const std::vector<Fr>& assignment, EntropySource& rng) {
    const ConstraintSystem& cs = pk.cs;
    if (public_inputs.size() != cs.num_public()) {
        throw B5gError(Errc::ArityMismatch, "public input count mismatch");
    }
    for (size_t i = 0; i < public_inputs.size(); i++) {
        if (assignment.at(1 + i) != public_inputs[i]) {
            throw B5gError(Errc::UnsatisfiedConstraints,
                           "assignment disagrees with public inputs");
        }
    }
    size_t violated = 0;
    if (!cs.is_satisfied(assignment, &violated)) {
        throw B5gError(Errc::UnsatisfiedConstraints,
                       "constraint " + std::to_string(violated) + " violated");
    }

    Fr r = rng.next_fr();
    Fr s = rng.next_fr();

    std::vector<Fr> h = compute_h(cs, assignment, pk.domain_size);

    G1 a = g1_add(pk.alpha_g1, g1_msm(pk.a_query, assignment));
    a = g1_add(a, g1_mul(pk.delta_g1, r));

    G2 b = g2_add(pk.beta_g2, g2_msm(pk.b_g2_query, assignment));
    b = g2_add(b, g2_mul(pk.delta_g2, s));

    G1 b1 = g1_add(pk.beta_g1, g1_msm(pk.b_g1_query, assignment));
    b1 = g1_add(b1, g1_mul(pk.delta_g1, s));

    std::vector<Fr> priv(assignment.begin() + 1 + cs.num_public(), assignment.end());
    G1 c = g1_msm(pk.l_query, priv);
    c = g1_add(c, g1_msm(pk.h_query, h));
    c = g1_add(c, g1_mul(a, s));
    c = g1_add(c, g1_mul(b1, r));
    c = g1_add(c, g1_mul(pk.delta_g1, (r * s)).negate());

    return Proof{a, b, c};
}

bool verify(const VerificationKey& vk, const std::vector<Fr>& public_inputs,
            const Proof& proof) {
    if (public_inputs.size() + 1 != vk.ic.size()) {
        throw B5gError(Errc::ArityMismatch,
                       "expected " + std::to_string(vk.ic.size() - 1) + " public inputs, got " +
                           std::to_string(public_inputs.size()));
    }
    G1 acc = vk.ic[0];
    for (size_t i = 0; i < public_inputs.size(); i++) {
        acc = g1_add(acc, g1_mul(vk.ic[i + 1], public_inputs[i]));
    }
    // e(A,B) = e(alpha,beta) e(acc,gamma) e(C,delta)
    Fp12 f = pairing_product({{proof.a, proof.b},
                              {vk.alpha_g1.negate(), vk.beta_g2},
                              {acc.negate(), vk.gamma_g2},
                              {proof.c.negate(), vk.delta_g2}});
    return f == Fp12::one();
}

// ---- serialization ----

std::vector<uint8_t> Proof::serialize() const {
    std::vector<uint8_t> out;
    out.reserve(128);
    put_g1(out, a);
    put_g2(out, b);
    put_g1(out, c);
    return out;
}

Proof Proof::deserialize(const uint8_t* data, size_t len) {
    if (len != 128) throw B5gError(Errc::SerializationError, "proof must be 128 bytes");
    const uint8_t* p = data;
    const uint8_t* end = data + len;
    Proof pr;
    pr.a = get_g1(p, end);
    pr.b = get_g2(p, end);
    pr.c = get_g1(p, end);
    return pr;
}

std::string Proof::to_hex() const { return hex_encode(serialize()); }

Proof Proof::from_hex(const std::string& s) {
    auto bytes = hex_decode(s);
    return deserialize(bytes.data(), bytes.size());
}

std::vector<uint8_t> VerificationKey::serialize() const {
    std::vector<uint8_t> out;
    put_g1(out, alpha_g1);
    put_g2(out, beta_g2);
    put_g2(out, gamma_g2);
    put_g2(out, delta_g2);
    put_g1_vec(out, ic);
    put_u32(out, uint32_t(public_labels.size()));
    for (const auto& label : public_labels) {
        put_u32(out, uint32_t(label.size()));
        out.insert(out.end(), label.begin(), label.end());
    }
    return out;
}

VerificationKey VerificationKey::deserialize(const uint8_t* data, size_t len) {
    const uint8_t* p = data;
    const uint8_t* end = data + len;
    VerificationKey vk;
    vk.alpha_g1 = get_g1(p, end);
    vk.beta_g2 = get_g2(p, end);
    vk.gamma_g2 = get_g2(p, end);
    vk.delta_g2 = get_g2(p, end);
    vk.ic = get_g1_vec(p, end);
    uint32_t n = get_u32(p, end);
    for (uint32_t i = 0; i < n; i++) {
        uint32_t l = get_u32(p, end);
        if (size_t(end - p) < l) throw B5gError(Errc::SerializationError, "truncated label");
        vk.public_labels.emplace_back(reinterpret_cast<const char*>(p), l);
        p += l;
    }
    return vk;
}

Digest32 VerificationKey::digest() const { return sha256(serialize()); }

std::vector<uint8_t> ProvingKey::serialize() const {
    std::vector<uint8_t> out;
    auto cs_bytes = cs.serialize();
    put_u32(out, uint32_t(cs_bytes.size()));
    out.insert(out.end(), cs_bytes.begin(), cs_bytes.end());
    put_u32(out, uint32_t(domain_size));
    put_g1(out, alpha_g1);
    put_g1(out, beta_g1);
    put_g1(out, delta_g1);
    put_g2(out, beta_g2);
    put_g2(out, delta_g2);
    put_g1_vec(out, a_query);
    put_g1_vec(out, b_g1_query);
    put_g2_vec(out, b_g2_query);
    put_g1_vec(out, l_query);
    put_g1_vec(out, h_query);
    return out;
}

ProvingKey ProvingKey::deserialize(const uint8_t* data, size_t len) {
    const uint8_t* p = data;
    const uint8_t* end = data + len;
    ProvingKey pk;
    uint32_t cs_len = get_u32(p, end);
    if (size_t(end - p) < cs_len) throw B5gError(Errc::SerializationError, "truncated cs");
    pk.cs = ConstraintSystem::deserialize(p, cs_len);
    p += cs_len;
    pk.domain_size = get_u32(p, end);
    pk.alpha_g1 = get_g1(p, end);
    pk.beta_g1 = get_g1(p, end);
    pk.delta_g1 = get_g1(p, end);
    pk.beta_g2 = get_g2(p, end);
    pk.delta_g2 = get_g2(p, end);
    pk.a_query = get_g1_vec(p, end);
    pk.b_g1_query = get_g1_vec(p, end);
    pk.b_g2_query = get_g2_vec(p, end);
    pk.l_query = get_g1_vec(p, end);
    pk.h_query = get_g1_vec(p, end);
    return pk;
}

std::vector<uint8_t> PublicParams::serialize() const {
    std::vector<uint8_t> out;
    put_u32(out, uint32_t(max_degree));
    put_g1_vec(out, tau_powers_g1);
    put_g2_vec(out, tau_powers_g2);
    put_u32(out, uint32_t(contributor_log.size()));
    for (const auto& d : contributor_log) out.insert(out.end(), d.begin(), d.end());
    put_fr(out, secrets.tau);
    put_fr(out, secrets.alpha);
    put_fr(out, secrets.beta);
    put_fr(out, secrets.gamma);
    put_fr(out, secrets.delta);
    return out;
}

PublicParams PublicParams::deserialize(const uint8_t* data, size_t len) {
    const uint8_t* p = data;
    const uint8_t* end = data + len;
    PublicParams pp;
    pp.max_degree = get_u32(p, end);
    pp.tau_powers_g1 = get_g1_vec(p, end);
    pp.tau_powers_g2 = get_g2_vec(p, end);
    uint32_t n = get_u32(p, end);
    for (uint32_t i = 0; i < n; i++) {
        if (end - p < 32) throw B5gError(Errc::SerializationError, "truncated log");
        Digest32 d;
        std::copy(p, p + 32, d.begin());
        pp.contributor_log.push_back(d);
        p += 32;
    }
    pp.secrets.tau = get_fr(p, end);
    pp.secrets.alpha = get_fr(p, end);
    pp.secrets.beta = get_fr(p, end);
    pp.secrets.gamma = get_fr(p, end);
    pp.secrets.delta = get_fr(p, end);
    return pp;
}

Digest32 PublicParams::digest() const { return sha256(serialize()); }

namespace {
constexpr uint8_t KEY_MAGIC[4] = {'B', '5', 'G', 'K'};
constexpr uint8_t KEY_VERSION = 1;
constexpr uint8_t CURVE_BN254 = 1;
} // namespace

void write_key_file(const std::string& path, KeyFileKind kind,
                    const std::vector<uint8_t>& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw B5gError(Errc::IOFailure, "cannot open " + path);
    out.write(reinterpret_cast<const char*>(KEY_MAGIC), 4);
    uint8_t header[3] = {KEY_VERSION, CURVE_BN254, uint8_t(kind)};
    out.write(reinterpret_cast<const char*>(header), 3);
    uint32_t len = uint32_t(body.size());
    uint8_t lenb[4] = {uint8_t(len), uint8_t(len >> 8), uint8_t(len >> 16), uint8_t(len >> 24)};
    out.write(reinterpret_cast<const char*>(lenb), 4);
    out.write(reinterpret_cast<const char*>(body.data()), std::streamsize(body.size()));
    if (!out) throw B5gError(Errc::IOFailure, "write failed: " + path);
}

std::vector<uint8_t> read_key_file(const std::string& path, KeyFileKind expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw B5gError(Errc::IOFailure, "cannot open " + path);
    uint8_t header[11];
    in.read(reinterpret_cast<char*>(header), 11);
    if (!in || std::memcmp(header, KEY_MAGIC, 4) != 0) {
        throw B5gError(Errc::SerializationError, "bad key file magic: " + path);
    }
    if (header[4] != KEY_VERSION || header[5] != CURVE_BN254) {
        throw B5gError(Errc::SerializationError, "unsupported key file version/curve");
    }
    if (header[6] != uint8_t(expected)) {
        throw B5gError(Errc::SerializationError, "unexpected key file kind");
    }
    uint32_t len = uint32_t(header[7]) | uint32_t(header[8]) << 8 | uint32_t(header[9]) << 16 |
                   uint32_t(header[10]) << 24;
    std::vector<uint8_t> body(len);
    in.read(reinterpret_cast<char*>(body.data()), len);
    if (!in) throw B5gError(Errc::SerializationError, "truncated key file: " + path);
    return body;
}

} // namespace b5g
