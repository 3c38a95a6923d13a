// B5GRoam - BN254 extension tower Fp2 / Fp6 / Fp12
// Copyright (c) 2026 B5GRoam Developers
// MIT License
//
// Fp2 = Fp[u]/(u^2 + 1), Fp6 = Fp2[v]/(v^3 - xi) with xi = 9 + u,
// Fp12 = Fp6[w]/(w^2 - v).

#pragma once

#include "b5groam/field.hpp"

namespace b5g {

struct Fp2 {
    Fp c0, c1; // c0 + c1*u

    Fp2() = default;
    Fp2(const Fp& a, const Fp& b) : c0(a), c1(b) {}

    static Fp2 zero() { return {Fp::zero(), Fp::zero()}; }
    static Fp2 one() { return {Fp::one(), Fp::zero()}; }
    static Fp2 from_hex(const std::string& a, const std::string& b) {
        return {Fp::from_hex(a), Fp::from_hex(b)};
    }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    bool operator==(const Fp2& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fp2& o) const { return !(*this == o); }

    Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
    Fp2 operator-() const { return {-c0, -c1}; }

    Fp2 operator*(const Fp2& o) const {
        Fp t0 = c0 * o.c0;
        Fp t1 = c1 * o.c1;
        Fp t2 = (c0 + c1) * (o.c0 + o.c1);
        return {t0 - t1, t2 - t0 - t1};
    }

    Fp2 square() const { return *this * *this; }

    Fp2 scale(const Fp& k) const { return {c0 * k, c1 * k}; }

    Fp2 dbl() const { return *this + *this; }

    Fp2 conjugate() const { return {c0, -c1}; }

    Fp2 inverse() const {
        Fp norm = c0 * c0 + c1 * c1;
        Fp ninv = norm.inverse();
        return {c0 * ninv, (-c1) * ninv};
    }

    Fp2 pow(const U256& e) const {
        Fp2 result = one();
        Fp2 base = *this;
        int bits = e.bit_length();
        for (int i = 0; i < bits; i++) {
            if (e.bit(i)) result = result * base;
            base = base.square();
        }
        return result;
    }
};

// xi = 9 + u, the sextic twist constant.
inline const Fp2& fp2_xi() {
    static const Fp2 xi{Fp::from_u64(9), Fp::one()};
    return xi;
}

inline Fp2 mul_by_xi(const Fp2& a) { return a * fp2_xi(); }

struct Fp6 {
    Fp2 c0, c1, c2; // c0 + c1*v + c2*v^2

    static Fp6 zero() { return {Fp2::zero(), Fp2::zero(), Fp2::zero()}; }
    static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
    bool operator==(const Fp6& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }
    bool operator!=(const Fp6& o) const { return !(*this == o); }

    Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Fp6 operator-() const { return {-c0, -c1, -c2}; }

    Fp6 operator*(const Fp6& o) const {
        Fp2 t0 = c0 * o.c0;
        Fp2 t1 = c1 * o.c1;
        Fp2 t2 = c2 * o.c2;
        Fp2 r0 = t0 + mul_by_xi((c1 + c2) * (o.c1 + o.c2) - t1 - t2);
        Fp2 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + mul_by_xi(t2);
        Fp2 r2 = (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1;
        return {r0, r1, r2};
    }

    Fp6 square() const { return *this * *this; }

    // Multiplication by v.
    Fp6 mul_by_v() const { return {mul_by_xi(c2), c0, c1}; }

    Fp6 inverse() const {
        Fp2 a = c0.square() - mul_by_xi(c1 * c2);
        Fp2 b = mul_by_xi(c2.square()) - c0 * c1;
        Fp2 c = c1.square() - c0 * c2;
        Fp2 t = (c2 * mul_by_xi(b)) + (c0 * a) + mul_by_xi(c1 * c);
        Fp2 tinv = t.inverse();
        return {a * tinv, b * tinv, c * tinv};
    }
};

struct Fp12 {
    Fp6 c0, c1; // c0 + c1*w

    static Fp12 zero() { return {Fp6::zero(), Fp6::zero()}; }
    static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

    bool operator==(const Fp12& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fp12& o) const { return !(*this == o); }

    Fp12 operator*(const Fp12& o) const {
        Fp6 t0 = c0 * o.c0;
        Fp6 t1 = c1 * o.c1;
        Fp6 r0 = t0 + t1.mul_by_v();
        Fp6 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1;
        return {r0, r1};
    }

    // Complex squaring: (a + bw)^2 = (a^2 + v b^2) + 2ab w, two Fp6 muls.
    Fp12 square() const {
        Fp6 t = c0 * c1;
        Fp6 s = (c0 + c1) * (c0 + c1.mul_by_v());
        return {s - t - t.mul_by_v(), t + t};
    }

    Fp12 conjugate() const { return {c0, -c1}; }

    Fp12 inverse() const {
        Fp6 t = (c0 * c0) - (c1 * c1).mul_by_v();
        Fp6 tinv = t.inverse();
        return {c0 * tinv, -(c1 * tinv)};
    }

    Fp12 pow(const U256& e) const {
        Fp12 result = one();
        Fp12 base = *this;
        int bits = e.bit_length();
        for (int i = 0; i < bits; i++) {
            if (e.bit(i)) result = result * base;
            base = base.square();
        }
        return result;
    }

    // Frobenius endomorphism x -> x^(p^power), power in {1,2,3}.
    Fp12 frobenius(int power) const;
};

// Frobenius coefficients (powers of xi, generated by the reference script).
namespace frob {

inline const Fp2& f6c1(int i) {
    static const Fp2 k[3] = {
        Fp2::from_hex("0x2fb347984f7911f74c0bec3cf559b143b78cc310c2c3330c99e39557176f553d",
                      "0x16c9e55061ebae204ba4cc8bd75a079432ae2a1d0b7c9dce1665d51c640fcba2"),
        Fp2::from_hex("0x30644e72e131a0295e6dd9e7e0acccb0c28f069fbb966e3de4bd44e5607cfd48",
                      "0x0000000000000000000000000000000000000000000000000000000000000000"),
        Fp2::from_hex("0x0856e078b755ef0abaff1c77959f25ac805ffd3d5d6942d37b746ee87bdcfb6d",
                      "0x04f1de41b3d1766fa9f30e6dec26094f0fdf31bf98ff2631380cab2baaa586de"),
    };
    return k[i - 1];
}

inline const Fp2& f6c2(int i) {
    static const Fp2 k[3] = {
        Fp2::from_hex("0x05b54f5e64eea80180f3c0b75a181e84d33365f7be94ec72848a1f55921ea762",
                      "0x2c145edbe7fd8aee9f3a80b03b0b1c923685d2ea1bdec763c13b4711cd2b8126"),
        Fp2::from_hex("0x000000000000000059e26bcea0d48bacd4f263f1acdb5c4f5763473177fffffe",
                      "0x0000000000000000000000000000000000000000000000000000000000000000"),
        Fp2::from_hex("0x0bc58c6611c08dab19bee0f7b5b2444ee633094575b06bcb0e1a92bc3ccbf066",
                      "0x23d5e999e1910a12feb0f6ef0cd21d04a44a9e08737f96e55fe3ed9d730c239f"),
    };
    return k[i - 1];
}

inline const Fp2& f12c1(int i) {
    static const Fp2 k[3] = {
        Fp2::from_hex("0x1284b71c2865a7dfe8b99fdd76e68b605c521e08292f2176d60b35dadcc9e470",
                      "0x246996f3b4fae7e6a6327cfe12150b8e747992778eeec7e5ca5cf05f80f362ac"),
        Fp2::from_hex("0x30644e72e131a0295e6dd9e7e0acccb0c28f069fbb966e3de4bd44e5607cfd49",
                      "0x0000000000000000000000000000000000000000000000000000000000000000"),
        Fp2::from_hex("0x19dc81cfcc82e4bbefe9608cd0acaa90894cb38dbe55d24ae86f7d391ed4a67f",
                      "0x00abf8b60be77d7306cbeee33576139d7f03a5e397d439ec7694aa2bf4c0c101"),
    };
    return k[i - 1];
}

// Twist coefficients for the G2 Frobenius: x -> conj(x) * tw_x, y -> conj(y) * tw_y.
inline const Fp2& tw_x(int i) { return f6c1(i); }

inline const Fp2& tw_y(int i) {
    static const Fp2 k[2] = {
        Fp2::from_hex("0x063cf305489af5dcdc5ec698b6e2f9b9dbaae0eda9c95998dc54014671a0135a",
                      "0x07c03cbcac41049a0704b5a7ec796f2b21807dc98fa25bd282d37f632623b0e3"),
        Fp2::from_hex("0x30644e72e131a029b85045b68181585d97816a916871ca8d3c208c16d87cfd46",
                      "0x0000000000000000000000000000000000000000000000000000000000000000"),
    };
    return k[i - 1];
}

} // namespace frob

inline Fp2 fp2_frobenius(const Fp2& a, int power) {
    return (power % 2 == 0) ? a : a.conjugate();
}

inline Fp6 fp6_frobenius(const Fp6& a, int power) {
    return {fp2_frobenius(a.c0, power),
            fp2_frobenius(a.c1, power) * frob::f6c1(power),
            fp2_frobenius(a.c2, power) * frob::f6c2(power)};
}

inline Fp12 Fp12::frobenius(int power) const {
    Fp6 r0 = fp6_frobenius(c0, power);
    Fp6 r1 = fp6_frobenius(c1, power);
    const Fp2& k = frob::f12c1(power);
    return {r0, {r1.c0 * k, r1.c1 * k, r1.c2 * k}};
}

} // namespace b5g
