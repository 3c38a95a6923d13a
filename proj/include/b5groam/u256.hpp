// B5GRoam - 256-bit unsigned integer arithmetic
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>

namespace b5g {

// Little-endian 4x64 limbs.
struct U256 {
    uint64_t limbs[4];

    constexpr U256() : limbs{0, 0, 0, 0} {}
    constexpr explicit U256(uint64_t v) : limbs{v, 0, 0, 0} {}
    constexpr U256(uint64_t l0, uint64_t l1, uint64_t l2, uint64_t l3)
        : limbs{l0, l1, l2, l3} {}

    constexpr bool is_zero() const {
        return (limbs[0] | limbs[1] | limbs[2] | limbs[3]) == 0;
    }

    constexpr bool operator==(const U256& o) const {
        return limbs[0] == o.limbs[0] && limbs[1] == o.limbs[1] &&
               limbs[2] == o.limbs[2] && limbs[3] == o.limbs[3];
    }
    constexpr bool operator!=(const U256& o) const { return !(*this == o); }

    constexpr bool operator>=(const U256& o) const {
        for (int i = 3; i >= 0; i--) {
            if (limbs[i] > o.limbs[i]) return true;
            if (limbs[i] < o.limbs[i]) return false;
        }
        return true;
    }
    constexpr bool operator<(const U256& o) const { return !(*this >= o); }

    constexpr bool bit(int i) const { return (limbs[i / 64] >> (i % 64)) & 1; }

    int bit_length() const {
        for (int i = 3; i >= 0; i--) {
            if (limbs[i] != 0) return 64 * i + 64 - __builtin_clzll(limbs[i]);
        }
        return 0;
    }

    // Big-endian 32-byte encoding.
    std::array<uint8_t, 32> to_bytes_be() const {
        std::array<uint8_t, 32> out{};
        for (int i = 0; i < 4; i++) {
            uint64_t l = limbs[3 - i];
            for (int j = 0; j < 8; j++) out[i * 8 + j] = uint8_t(l >> (56 - 8 * j));
        }
        return out;
    }

    static U256 from_bytes_be(const uint8_t* data) {
        U256 r;
        for (int i = 0; i < 4; i++) {
            uint64_t l = 0;
            for (int j = 0; j < 8; j++) l = (l << 8) | data[i * 8 + j];
            r.limbs[3 - i] = l;
        }
        return r;
    }

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s = "0x";
        auto bytes = to_bytes_be();
        for (auto b : bytes) {
            s.push_back(digits[b >> 4]);
            s.push_back(digits[b & 0xf]);
        }
        return s;
    }

    // Accepts optional 0x prefix, up to 64 hex digits.
    static U256 from_hex(const std::string& in) {
        size_t start = (in.size() >= 2 && in[0] == '0' && (in[1] == 'x' || in[1] == 'X')) ? 2 : 0;
        if (in.size() == start || in.size() - start > 64) {
            throw std::invalid_argument("U256::from_hex: bad length: " + in);
        }
        U256 r;
        int nibble = 0;
        for (size_t i = in.size(); i > start; i--, nibble++) {
            char c = in[i - 1];
            uint64_t v;
            if (c >= '0' && c <= '9') v = uint64_t(c - '0');
            else if (c >= 'a' && c <= 'f') v = uint64_t(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') v = uint64_t(c - 'A' + 10);
            else throw std::invalid_argument("U256::from_hex: bad digit");
            r.limbs[nibble / 16] |= v << (4 * (nibble % 16));
        }
        return r;
    }
};

inline uint64_t add_with_carry(uint64_t a, uint64_t b, uint64_t& carry) {
    unsigned __int128 sum = (unsigned __int128)a + b + carry;
    carry = uint64_t(sum >> 64);
    return uint64_t(sum);
}

inline uint64_t sub_with_borrow(uint64_t a, uint64_t b, uint64_t& borrow) {
    unsigned __int128 diff = (unsigned __int128)a - b - borrow;
    borrow = (diff >> 127) ? 1 : 0;
    return uint64_t(diff);
}

inline U256 u256_add(const U256& a, const U256& b) {
    U256 r;
    uint64_t carry = 0;
    for (int i = 0; i < 4; i++) r.limbs[i] = add_with_carry(a.limbs[i], b.limbs[i], carry);
    return r;
}

inline U256 u256_sub(const U256& a, const U256& b) {
    U256 r;
    uint64_t borrow = 0;
    for (int i = 0; i < 4; i++) r.limbs[i] = sub_with_borrow(a.limbs[i], b.limbs[i], borrow);
    return r;
}

// a * b -> 512-bit result.
inline void u256_mul_wide(const U256& a, const U256& b, uint64_t out[8]) {
    std::memset(out, 0, 8 * sizeof(uint64_t));
    for (int i = 0; i < 4; i++) {
        uint64_t carry = 0;
        for (int j = 0; j < 4; j++) {
            unsigned __int128 prod =
                (unsigned __int128)a.limbs[i] * b.limbs[j] + out[i + j] + carry;
            out[i + j] = uint64_t(prod);
            carry = uint64_t(prod >> 64);
        }
        out[i + 4] = carry;
    }
}

} // namespace b5g
