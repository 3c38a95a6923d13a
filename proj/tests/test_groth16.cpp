// Proving system tests: ceremony determinism, completeness, soundness under
// tampering, succinctness, key serialization.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "b5groam/billing_circuit.hpp"
#include "b5groam/groth16.hpp"

using namespace b5g;

namespace {

std::vector<std::vector<uint8_t>> seeds(std::initializer_list<std::string> list) {
    std::vector<std::vector<uint8_t>> out;
    for (const auto& s : list) out.emplace_back(s.begin(), s.end());
    return out;
}

const BillingCircuit& test_circuit() {
    static const BillingCircuit circuit(CircuitConfig{{1, 2, 5}, false, 32},
                                        PoseidonParams::instance_t4());
    return circuit;
}

const PublicParams& test_params() {
    static const PublicParams pp = setup(128, seeds({"alpha", "bravo", "charlie"}));
    return pp;
}

const KeyPair& test_keys() {
    static const KeyPair keys = keygen(test_params(), test_circuit().cs());
    return keys;
}

SynthesisResult honest_instance(const UsageRecord& r) {
    return test_circuit().synthesize(r, tee_commit(r));
}

} // namespace

TEST_CASE("setup requires contributions and is seed-deterministic") {
    CHECK_THROWS_AS(setup(128, {}), B5gError);

    PublicParams a = setup(128, seeds({"one"}), 64);
    PublicParams b = setup(128, seeds({"one"}), 64);
    CHECK(a.digest() == b.digest());
    CHECK(a.contributor_log.size() == 1);

    PublicParams c = setup(128, seeds({"one", "two", "three"}), 64);
    PublicParams d = setup(128, seeds({"one", "two!", "three"}), 64);
    CHECK(c.contributor_log.size() == 3);
    CHECK(c.digest() != d.digest());
}

TEST_CASE("params serialization round trips") {
    PublicParams a = setup(128, seeds({"roundtrip"}), 32);
    auto bytes = a.serialize();
    PublicParams b = PublicParams::deserialize(bytes.data(), bytes.size());
    CHECK(a.digest() == b.digest());
    CHECK(b.tau_powers_g1.size() == 33);
}

TEST_CASE("keygen is deterministic and binds to the constraint system") {
    KeyPair k1 = keygen(test_params(), test_circuit().cs());
    KeyPair k2 = keygen(test_params(), test_circuit().cs());
    CHECK(k1.vk.digest() == k2.vk.digest());
    CHECK(k1.vk.arity() == 2);
}

TEST_CASE("params too small for the circuit") {
    PublicParams tiny = setup(128, seeds({"tiny"}), 16);
    CHECK_THROWS_AS(keygen(tiny, test_circuit().cs()), B5gError);
}

TEST_CASE("honest proof verifies") {
    SeededEntropy rng("prove-honest");
    auto inst = honest_instance({10, 500, 30});
    Proof proof = prove(test_keys().pk, inst.public_inputs.as_field_elements(),
                        inst.assignment, rng);
    CHECK(verify(test_keys().vk, inst.public_inputs.as_field_elements(), proof));
}

TEST_CASE("prover refuses unsatisfiable assignments") {
    SeededEntropy rng("prove-refuse");
    auto inst = honest_instance({10, 500, 30});
    auto bad = inst.assignment;
    bad[3] += Fr::one(); // bump n_sms without re-deriving anything
    CHECK_THROWS_AS(prove(test_keys().pk, inst.public_inputs.as_field_elements(), bad, rng),
                    B5gError);
    try {
        prove(test_keys().pk, inst.public_inputs.as_field_elements(), bad, rng);
    } catch (const B5gError& e) {
        CHECK(e.code() == Errc::UnsatisfiedConstraints);
    }
}

TEST_CASE("re-randomization: same statement, distinct proofs, both verify") {
    SeededEntropy rng("prove-rerandomize");
    auto inst = honest_instance({42, 4242, 424});
    auto publics = inst.public_inputs.as_field_elements();
    Proof p1 = prove(test_keys().pk, publics, inst.assignment, rng);
    Proof p2 = prove(test_keys().pk, publics, inst.assignment, rng);
    CHECK(p1.serialize() != p2.serialize());
    CHECK(verify(test_keys().vk, publics, p1));
    CHECK(verify(test_keys().vk, publics, p2));
}

TEST_CASE("tampered public input rejects") {
    SeededEntropy rng("tamper-public");
    auto inst = honest_instance({10, 500, 30});
    Proof proof = prove(test_keys().pk, inst.public_inputs.as_field_elements(),
                        inst.assignment, rng);
    std::vector<Fr> forged = inst.public_inputs.as_field_elements();
    forged[0] += Fr::one(); // total + 1
    CHECK_FALSE(verify(test_keys().vk, forged, proof));
}

TEST_CASE("vk from a different circuit rejects") {
    SeededEntropy rng("cross-key");
    BillingCircuit other(CircuitConfig{{2, 2, 5}, false, 32}, PoseidonParams::instance_t4());
    KeyPair other_keys = keygen(test_params(), other.cs());
    auto inst = honest_instance({10, 500, 30});
    auto publics = inst.public_inputs.as_field_elements();
    Proof proof = prove(test_keys().pk, publics, inst.assignment, rng);
    CHECK_FALSE(verify(other_keys.vk, publics, proof));
}

TEST_CASE("bit-flipped proof bytes reject or fail to parse") {
    SeededEntropy rng("tamper-bytes");
    auto inst = honest_instance({10, 500, 30});
    auto publics = inst.public_inputs.as_field_elements();
    Proof proof = prove(test_keys().pk, publics, inst.assignment, rng);
    auto bytes = proof.serialize();
    for (size_t pos : {size_t(1), size_t(40), size_t(100)}) {
        auto mutated = bytes;
        mutated[pos] ^= 0x01;
        bool rejected = false;
        try {
            Proof parsed = Proof::deserialize(mutated.data(), mutated.size());
            rejected = !verify(test_keys().vk, publics, parsed);
        } catch (const B5gError&) {
            rejected = true;
        }
        CHECK(rejected);
    }
}

TEST_CASE("arity mismatch raises") {
    SeededEntropy rng("arity");
    auto inst = honest_instance({10, 500, 30});
    Proof proof = prove(test_keys().pk, inst.public_inputs.as_field_elements(),
                        inst.assignment, rng);
    CHECK_THROWS_AS(verify(test_keys().vk, {Fr::one()}, proof), B5gError);
}

TEST_CASE("proof size is constant across witness extremes") {
    SeededEntropy rng("succinct");
    auto small = honest_instance({0, 0, 0});
    auto big = honest_instance({UsageRecord::METRIC_BOUND - 1, UsageRecord::METRIC_BOUND - 1,
                                UsageRecord::METRIC_BOUND - 1});
    Proof ps = prove(test_keys().pk, small.public_inputs.as_field_elements(),
                     small.assignment, rng);
    Proof pb = prove(test_keys().pk, big.public_inputs.as_field_elements(),
                     big.assignment, rng);
    CHECK(ps.serialize().size() == 128);
    CHECK(pb.serialize().size() == 128);
    CHECK(verify(test_keys().vk, small.public_inputs.as_field_elements(), ps));
    CHECK(verify(test_keys().vk, big.public_inputs.as_field_elements(), pb));
}

TEST_CASE("proof hex round trip") {
    SeededEntropy rng("proof-hex");
    auto inst = honest_instance({7, 8, 9});
    auto publics = inst.public_inputs.as_field_elements();
    Proof proof = prove(test_keys().pk, publics, inst.assignment, rng);
    Proof back = Proof::from_hex(proof.to_hex());
    CHECK(verify(test_keys().vk, publics, back));
}

TEST_CASE("key serialization round trips and preserves digests") {
    auto vk_bytes = test_keys().vk.serialize();
    VerificationKey vk2 = VerificationKey::deserialize(vk_bytes.data(), vk_bytes.size());
    CHECK(vk2.digest() == test_keys().vk.digest());
    CHECK(vk2.public_labels == std::vector<std::string>{"total", "h_cdr"});

    auto pk_bytes = test_keys().pk.serialize();
    ProvingKey pk2 = ProvingKey::deserialize(pk_bytes.data(), pk_bytes.size());
    SeededEntropy rng("key-roundtrip");
    auto inst = honest_instance({10, 500, 30});
    auto publics = inst.public_inputs.as_field_elements();
    Proof proof = prove(pk2, publics, inst.assignment, rng);
    CHECK(verify(vk2, publics, proof));
}
