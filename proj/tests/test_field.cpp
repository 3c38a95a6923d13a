// Field arithmetic tests against the extended-Euclid oracle fixtures.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "b5groam/field.hpp"
#include "b5groam/rng.hpp"

using namespace b5g;
using nlohmann::json;

namespace {

json load_fixture(const std::string& name) {
    std::ifstream in(std::string(B5G_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

} // namespace

TEST_CASE("u256 hex round trip") {
    U256 v{0x0123456789abcdefULL, 0xfedcba9876543210ULL, 0x1122334455667788ULL,
           0x0099aabbccddeeffULL};
    CHECK(U256::from_hex(v.to_hex()) == v);
    CHECK(U256::from_hex("0xff") == U256(255));
    CHECK(U256(255).to_hex() ==
          "0x00000000000000000000000000000000000000000000000000000000000000ff");
}

TEST_CASE("additive and multiplicative identities") {
    SeededEntropy rng("field-identities");
    for (int i = 0; i < 100; i++) {
        Fr a = rng.next_fr();
        CHECK(a + Fr::zero() == a);
        CHECK(a * Fr::one() == a);
    }
}

TEST_CASE("inverse matches extended-Euclid oracle, times to one") {
    auto j = load_fixture("field_vectors.json");
    SUBCASE("fr") {
        for (const auto& e : j["fr"]) {
            Fr a = Fr::from_hex(e["a"].get<std::string>());
            Fr b = Fr::from_hex(e["b"].get<std::string>());
            CHECK(a + b == Fr::from_hex(e["add"].get<std::string>()));
            CHECK(a - b == Fr::from_hex(e["sub"].get<std::string>()));
            CHECK(a * b == Fr::from_hex(e["mul"].get<std::string>()));
            if (e.contains("inv_a")) {
                Fr inv = Fr::from_hex(e["inv_a"].get<std::string>());
                CHECK(a.inverse() == inv);
                CHECK(a * inv == Fr::one());
            }
        }
    }
    SUBCASE("fp") {
        for (const auto& e : j["fp"]) {
            Fp a = Fp::from_hex(e["a"].get<std::string>());
            Fp b = Fp::from_hex(e["b"].get<std::string>());
            CHECK(a + b == Fp::from_hex(e["add"].get<std::string>()));
            CHECK(a - b == Fp::from_hex(e["sub"].get<std::string>()));
            CHECK(a * b == Fp::from_hex(e["mul"].get<std::string>()));
            if (e.contains("inv_a")) {
                CHECK(a.inverse() == Fp::from_hex(e["inv_a"].get<std::string>()));
            }
        }
    }
}

TEST_CASE("commutativity property over random pairs") {
    SeededEntropy rng("field-commutativity");
    for (int i = 0; i < 1000; i++) {
        Fr a = rng.next_fr();
        Fr b = rng.next_fr();
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("associativity and distributivity spot checks") {
    SeededEntropy rng("field-assoc");
    for (int i = 0; i < 200; i++) {
        Fr a = rng.next_fr();
        Fr b = rng.next_fr();
        Fr c = rng.next_fr();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("random nonzero elements invert to one") {
    SeededEntropy rng("field-inverse");
    for (int i = 0; i < 200; i++) {
        Fr a = rng.next_nonzero_fr();
        CHECK(a * a.inverse() == Fr::one());
    }
}

TEST_CASE("inverse of zero raises") {
    CHECK_THROWS_AS((void)Fr::zero().inverse(), B5gError);
    try {
        (void)Fr::zero().inverse();
    } catch (const B5gError& e) {
        CHECK(e.code() == Errc::InverseOfZero);
    }
}

TEST_CASE("subtraction and negation") {
    SeededEntropy rng("field-sub");
    for (int i = 0; i < 200; i++) {
        Fr a = rng.next_fr();
        Fr b = rng.next_fr();
        CHECK(a - b == a + (-b));
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("canonical value round trip") {
    SeededEntropy rng("field-roundtrip");
    for (int i = 0; i < 100; i++) {
        Fr a = rng.next_fr();
        CHECK(Fr::from_u256(a.value()) == a);
        CHECK(Fr::from_hex(a.to_hex()) == a);
    }
}

TEST_CASE("two-adic root of unity has exact order") {
    Fr root = fr_two_adic_root();
    Fr acc = root;
    for (int i = 0; i < FR_TWO_ADICITY - 1; i++) acc = acc.square();
    CHECK(acc != Fr::one());
    CHECK(acc.square() == Fr::one());
}

TEST_CASE("from_hex rejects values >= modulus") {
    CHECK_THROWS(Fr::from_hex(
        "0x30644e72e131a029b85045b68181585d2833e84879b9709143e1f593f0000001"));
}
