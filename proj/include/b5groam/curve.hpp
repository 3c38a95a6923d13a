// B5GRoam - BN254 group arithmetic (G1 over Fp, G2 over the sextic twist)
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <optional>
#include <vector>

#include "b5groam/tower.hpp"

namespace b5g {

// Affine points are the public representation; hot paths run on Jacobian
// coordinates below and normalize at the boundary.
struct G1 {
    Fp x, y;
    bool infinity = true;

    G1() = default;
    G1(const Fp& px, const Fp& py) : x(px), y(py), infinity(false) {}

    static G1 identity() { return {}; }

    static G1 generator() { return {Fp::from_u64(1), Fp::from_u64(2)}; }

    bool operator==(const G1& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
    bool operator!=(const G1& o) const { return !(*this == o); }

    bool is_on_curve() const {
        if (infinity) return true;
        static const Fp b = Fp::from_u64(3);
        return y.square() == x.square() * x + b;
    }

    G1 negate() const {
        if (infinity) return *this;
        return {x, -y};
    }
};

struct G2 {
    Fp2 x, y;
    bool infinity = true;

    G2() = default;
    G2(const Fp2& px, const Fp2& py) : x(px), y(py), infinity(false) {}

    static G2 identity() { return {}; }

    static G2 generator() {
        static const G2 g{
            Fp2::from_hex("0x1800deef121f1e76426a00665e5c4479674322d4f75edadd46debd5cd992f6ed",
                          "0x198e9393920d483a7260bfb731fb5d25f1aa493335a9e71297e485b7aef312c2"),
            Fp2::from_hex("0x12c85ea5db8c6deb4aab71808dcb408fe3d1e7690c43d37b4ce6cc0166fa7daa",
                          "0x090689d0585ff075ec9e99ad690c3395bc4b313370b38ef355acdadcd122975b")};
        return g;
    }

    bool operator==(const G2& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
    bool operator!=(const G2& o) const { return !(*this == o); }

    // y^2 = x^3 + 3/xi on the twist.
    static const Fp2& twist_b() {
        static const Fp2 b = Fp2{Fp::from_u64(3), Fp::zero()} * fp2_xi().inverse();
        return b;
    }

    bool is_on_curve() const {
        if (infinity) return true;
        return y.square() == x.square() * x + twist_b();
    }

    G2 negate() const {
        if (infinity) return *this;
        return {x, -y};
    }
};

// Jacobian coordinates: affine = (x/z^2, y/z^3), z = 0 encodes infinity.
template <typename F>
struct Jac {
    F x, y, z;

    static Jac infinity() { return {F::one(), F::one(), F::zero()}; }
    bool is_infinity() const { return z.is_zero(); }
};

using G1Jac = Jac<Fp>;
using G2Jac = Jac<Fp2>;

// dbl-2009-l (a = 0).
template <typename F>
Jac<F> jac_double(const Jac<F>& p) {
    if (p.is_infinity()) return p;
    F a = p.x.square();
    F b = p.y.square();
    F c = b.square();
    F d = ((p.x + b).square() - a - c).dbl();
    F e = a + a.dbl(); // 3a
    F f = e.square();
    Jac<F> r;
    r.x = f - d.dbl();
    r.y = e * (d - r.x) - c.dbl().dbl().dbl();
    r.z = (p.y * p.z).dbl();
    return r;
}

// add-2007-bl.
template <typename F>
Jac<F> jac_add(const Jac<F>& p, const Jac<F>& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    F z1z1 = p.z.square();
    F z2z2 = q.z.square();
    F u1 = p.x * z2z2;
    F u2 = q.x * z1z1;
    F s1 = p.y * q.z * z2z2;
    F s2 = q.y * p.z * z1z1;
    if (u1 == u2) {
        if (s1 == s2) return jac_double(p);
        return Jac<F>::infinity();
    }
    F h = u2 - u1;
    F i = h.dbl().square();
    F j = h * i;
    F r = (s2 - s1).dbl();
    F v = u1 * i;
    Jac<F> out;
    out.x = r.square() - j - v.dbl();
    out.y = r * (v - out.x) - (s1 * j).dbl();
    out.z = ((p.z + q.z).square() - z1z1 - z2z2) * h;
    return out;
}

// madd-2007-bl with affine q (never infinity).
template <typename F>
Jac<F> jac_add_mixed(const Jac<F>& p, const F& qx, const F& qy) {
    if (p.is_infinity()) return {qx, qy, F::one()};
    F z1z1 = p.z.square();
    F u2 = qx * z1z1;
    F s2 = qy * p.z * z1z1;
    if (p.x == u2) {
        if (p.y == s2) return jac_double(p);
        return Jac<F>::infinity();
    }
    F h = u2 - p.x;
    F hh = h.square();
    F i = hh.dbl().dbl();
    F j = h * i;
    F r = (s2 - p.y).dbl();
    F v = p.x * i;
    Jac<F> out;
    out.x = r.square() - j - v.dbl();
    out.y = r * (v - out.x) - (p.y * j).dbl();
    out.z = (p.z + h).square() - z1z1 - hh;
    return out;
}

inline G1Jac to_jac(const G1& p) {
    if (p.infinity) return G1Jac::infinity();
    return {p.x, p.y, Fp::one()};
}

inline G2Jac to_jac(const G2& p) {
    if (p.infinity) return G2Jac::infinity();
    return {p.x, p.y, Fp2::one()};
}

G1 to_affine(const G1Jac& p);
G2 to_affine(const G2Jac& p);

// Batch normalization with a single inversion.
std::vector<G1> to_affine_batch(const std::vector<G1Jac>& points);
std::vector<G2> to_affine_batch(const std::vector<G2Jac>& points);

// Affine API used by cold paths and the pairing.
G1 g1_add(const G1& a, const G1& b);
G2 g2_add(const G2& a, const G2& b);
inline G1 g1_double(const G1& a) { return g1_add(a, a); }
inline G2 g2_double(const G2& a) { return g2_add(a, a); }

G1 g1_mul(const G1& p, const U256& k);
G2 g2_mul(const G2& p, const U256& k);
inline G1 g1_mul(const G1& p, const Fr& k) { return g1_mul(p, k.value()); }
inline G2 g2_mul(const G2& p, const Fr& k) { return g2_mul(p, k.value()); }

// Scalar-field order check for untrusted G2 points. G1 has cofactor 1 so
// on-curve membership suffices there.
inline bool g2_in_subgroup(const G2& p) {
    return g2_mul(p, Fr::modulus()).infinity;
}

// Fixed-base scalar multiplication with a precomputed 8-bit window table.
// Setup and keygen multiply one base by thousands of scalars; the table cuts
// each multiplication to 32 mixed additions.
template <typename Group, typename JacT>
class WindowTable {
  public:
    static constexpr unsigned WBITS = 8;
    static constexpr unsigned WINDOWS = 32;
    static constexpr unsigned ENTRIES = (1u << WBITS) - 1;

    explicit WindowTable(const Group& base);

    Group mul(const U256& k) const;
    Group mul(const Fr& k) const { return mul(k.value()); }

  private:
    std::vector<Group> table_; // WINDOWS x ENTRIES nonzero-digit multiples
};

using G1WindowTable = WindowTable<G1, G1Jac>;
using G2WindowTable = WindowTable<G2, G2Jac>;

// Multi-scalar multiplication, Pippenger bucket method.
G1 g1_msm(const std::vector<G1>& bases, const std::vector<Fr>& scalars);
G2 g2_msm(const std::vector<G2>& bases, const std::vector<Fr>& scalars);

// --- compressed serialization ---
//
// G1: 32 bytes, big-endian x with flag bits in the top byte
//     (0x80 = y is the lexicographically larger root, 0x40 = infinity).
// G2: 64 bytes, x.c1 || x.c0 with the same flags on the first byte.

std::vector<uint8_t> g1_compress(const G1& p);
std::vector<uint8_t> g2_compress(const G2& p);
G1 g1_decompress(const uint8_t* data, size_t len);
G2 g2_decompress(const uint8_t* data, size_t len);

// Square root in Fp (p % 4 == 3). Returns nullopt for non-residues.
std::optional<Fp> fp_sqrt(const Fp& a);
std::optional<Fp2> fp2_sqrt(const Fp2& a);

} // namespace b5g
