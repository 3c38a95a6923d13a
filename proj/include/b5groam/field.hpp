// B5GRoam - BN254 prime fields (Montgomery form)
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include "b5groam/errors.hpp"
#include "b5groam/u256.hpp"

namespace b5g {

// Field parameters carry the modulus, Montgomery constants R = 2^256 mod m,
// R^2 mod m and inv = -m^-1 mod 2^64.
struct FrParams {
    static constexpr U256 modulus() {
        return {0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                0xb85045b68181585dULL, 0x30644e72e131a029ULL};
    }
    static constexpr U256 mont_r() {
        return {0xac96341c4ffffffbULL, 0x36fc76959f60cd29ULL,
                0x666ea36f7879462eULL, 0x0e0a77c19a07df2fULL};
    }
    static constexpr U256 mont_r2() {
        return {0x1bb8e645ae216da7ULL, 0x53fe3ab1e35c59e3ULL,
                0x8c49833d53bb8085ULL, 0x0216d0b17f4e44a5ULL};
    }
    static constexpr uint64_t inv = 0xc2e1f593efffffffULL;
};

struct FpParams {
    static constexpr U256 modulus() {
        return {0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL,
                0xb85045b68181585dULL, 0x30644e72e131a029ULL};
    }
    static constexpr U256 mont_r() {
        return {0xd35d438dc58f0d9dULL, 0x0a78eb28f5c70b3dULL,
                0x666ea36f7879462cULL, 0x0e0a77c19a07df2fULL};
    }
    static constexpr U256 mont_r2() {
        return {0xf32cfc5b538afa89ULL, 0xb5e71911d44501fbULL,
                0x47ab1eff0a417ff6ULL, 0x06d89f71cab8351fULL};
    }
    static constexpr uint64_t inv = 0x87d20782e4866389ULL;
};

template <typename Params>
class Field {
  public:
    constexpr Field() : mont_() {}

    static Field zero() { return Field(); }
    static Field one() { return from_raw(Params::mont_r()); }

    static Field from_u64(uint64_t v) { return from_u256(U256(v)); }

    static Field from_u256(const U256& v) {
        U256 reduced = v;
        if (reduced >= Params::modulus()) reduced = u256_sub(reduced, Params::modulus());
        Field f;
        f.mont_ = mont_mul(reduced, Params::mont_r2());
        return f;
    }

    static Field from_hex(const std::string& s) {
        U256 v = U256::from_hex(s);
        if (v >= Params::modulus()) {
            throw B5gError(Errc::RangeViolation, "field element >= modulus: " + s);
        }
        return from_u256(v);
    }

    static Field from_bytes_be(const uint8_t* data) {
        U256 v = U256::from_bytes_be(data);
        if (v >= Params::modulus()) {
            throw B5gError(Errc::SerializationError, "field bytes >= modulus");
        }
        return from_u256(v);
    }

    // Wraps a value already in Montgomery form.
    static Field from_raw(const U256& raw) {
        Field f;
        f.mont_ = raw;
        return f;
    }

    U256 value() const {
        uint64_t t[8] = {mont_.limbs[0], mont_.limbs[1], mont_.limbs[2], mont_.limbs[3],
                         0, 0, 0, 0};
        return mont_reduce(t);
    }

    const U256& raw() const { return mont_; }

    std::string to_hex() const { return value().to_hex(); }
    std::array<uint8_t, 32> to_bytes_be() const { return value().to_bytes_be(); }

    bool is_zero() const { return mont_.is_zero(); }

    bool operator==(const Field& o) const { return mont_ == o.mont_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    Field operator+(const Field& o) const {
        U256 r = u256_add(mont_, o.mont_);
        if (r >= Params::modulus()) r = u256_sub(r, Params::modulus());
        return from_raw(r);
    }

    Field operator-(const Field& o) const {
        if (mont_ >= o.mont_) return from_raw(u256_sub(mont_, o.mont_));
        return from_raw(u256_sub(u256_add(mont_, Params::modulus()), o.mont_));
    }

    Field operator-() const {
        if (is_zero()) return *this;
        return from_raw(u256_sub(Params::modulus(), mont_));
    }

    Field operator*(const Field& o) const { return from_raw(mont_mul(mont_, o.mont_)); }

    Field& operator+=(const Field& o) { return *this = *this + o; }
    Field& operator-=(const Field& o) { return *this = *this - o; }
    Field& operator*=(const Field& o) { return *this = *this * o; }

    Field square() const { return *this * *this; }

    Field dbl() const { return *this + *this; }

    Field pow(const U256& e) const {
        Field result = one();
        Field base = *this;
        int bits = e.bit_length();
        for (int i = 0; i < bits; i++) {
            if (e.bit(i)) result *= base;
            base = base.square();
        }
        return result;
    }

    // Binary extended GCD on the Montgomery representation; the test suite
    // cross-checks against an extended-Euclid oracle fixture.
    Field inverse() const {
        if (is_zero()) throw B5gError(Errc::InverseOfZero, "inverse of zero requested");
        // binary_inv(a*R) = a^-1 * R^-1; two more Montgomery multiplications
        // by R^2 lift the result back to Montgomery form.
        Field r = from_raw(binary_inverse(mont_));
        r = from_raw(mont_mul(r.mont_, Params::mont_r2()));
        return from_raw(mont_mul(r.mont_, Params::mont_r2()));
    }

    static const U256& modulus() {
        static const U256 m = Params::modulus();
        return m;
    }

  private:
    static bool is_even(const U256& v) { return (v.limbs[0] & 1) == 0; }

    static U256 shr1(const U256& v) {
        U256 r;
        for (int i = 0; i < 4; i++) {
            r.limbs[i] = v.limbs[i] >> 1;
            if (i < 3) r.limbs[i] |= v.limbs[i + 1] << 63;
        }
        return r;
    }

    // Classic binary extended GCD for an odd modulus; input and output are
    // canonical integers in [1, m).
    static U256 binary_inverse(const U256& a) {
        const U256 m = Params::modulus();
        U256 u = a, v = m;
        U256 x1(1), x2(0);
        while (u != U256(1) && v != U256(1)) {
            while (is_even(u)) {
                u = shr1(u);
                x1 = is_even(x1) ? shr1(x1) : shr1(u256_add(x1, m));
            }
            while (is_even(v)) {
                v = shr1(v);
                x2 = is_even(x2) ? shr1(x2) : shr1(u256_add(x2, m));
            }
            if (u >= v) {
                u = u256_sub(u, v);
                x1 = x1 >= x2 ? u256_sub(x1, x2) : u256_sub(u256_add(x1, m), x2);
            } else {
                v = u256_sub(v, u);
                x2 = x2 >= x1 ? u256_sub(x2, x1) : u256_sub(u256_add(x2, m), x1);
            }
        }
        return u == U256(1) ? x1 : x2;
    }

    static U256 mont_reduce(uint64_t t[8]) {
        const U256 m = Params::modulus();
        for (int i = 0; i < 4; i++) {
            uint64_t k = t[i] * Params::inv;
            uint64_t carry = 0;
            for (int j = 0; j < 4; j++) {
                unsigned __int128 prod = (unsigned __int128)k * m.limbs[j] + t[i + j] + carry;
                t[i + j] = uint64_t(prod);
                carry = uint64_t(prod >> 64);
            }
            for (int j = i + 4; j < 8 && carry; j++) {
                unsigned __int128 sum = (unsigned __int128)t[j] + carry;
                t[j] = uint64_t(sum);
                carry = uint64_t(sum >> 64);
            }
        }
        U256 r(t[4], t[5], t[6], t[7]);
        if (r >= m) r = u256_sub(r, m);
        return r;
    }

    static U256 mont_mul(const U256& a, const U256& b) {
        uint64_t t[8];
        u256_mul_wide(a, b, t);
        return mont_reduce(t);
    }

    U256 mont_;
};

// Fr: scalar field of BN254 (the field Poseidon and the circuit live in).
// Fp: base field (curve coordinates).
using Fr = Field<FrParams>;
using Fp = Field<FpParams>;

// Fr-specific FFT domain data: r - 1 = 2^28 * odd.
inline constexpr int FR_TWO_ADICITY = 28;

inline const Fr& fr_two_adic_root() {
    // 5^((r-1) / 2^28), 5 is a multiplicative generator of Fr*.
    static const Fr root = Fr::from_hex(
        "0x2a3c09f0a58a7e8500e0a7eb8ef62abc402d111e41112ed49bd61b6e725b19f0");
    return root;
}

inline const Fr& fr_multiplicative_generator() {
    static const Fr g = Fr::from_u64(5);
    return g;
}

} // namespace b5g
