// B5GRoam - BN254 group arithmetic, MSM, point serialization
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/curve.hpp"

#include <algorithm>
#include <cmath>

namespace b5g {

namespace {

template <typename Group, typename F>
Group jac_to_affine(const Jac<F>& p, Group (*make)(const F&, const F&)) {
    if (p.is_infinity()) return Group::identity();
    F zinv = p.z.inverse();
    F zinv2 = zinv.square();
    return make(p.x * zinv2, p.y * zinv2 * zinv);
}

G1 make_g1(const Fp& x, const Fp& y) { return G1{x, y}; }
G2 make_g2(const Fp2& x, const Fp2& y) { return G2{x, y}; }

// Montgomery's trick over the non-infinity subset: prefix products, one
// inversion, unwind.
template <typename Group, typename F>
std::vector<Group> batch_normalize(const std::vector<Jac<F>>& points,
                                   Group (*make)(const F&, const F&)) {
    std::vector<size_t> live;
    live.reserve(points.size());
    for (size_t i = 0; i < points.size(); i++) {
        if (!points[i].is_infinity()) live.push_back(i);
    }
    std::vector<Group> out(points.size(), Group::identity());
    if (live.empty()) return out;
    std::vector<F> prefix(live.size());
    F running = F::one();
    for (size_t k = 0; k < live.size(); k++) {
        running = running * points[live[k]].z;
        prefix[k] = running;
    }
    F inv = running.inverse();
    for (size_t k = live.size(); k-- > 0;) {
        const auto& p = points[live[k]];
        F prev = (k == 0) ? F::one() : prefix[k - 1];
        F zinv = inv * prev;
        inv = inv * p.z;
        F zinv2 = zinv.square();
        out[live[k]] = make(p.x * zinv2, p.y * zinv2 * zinv);
    }
    return out;
}

// Picks the Pippenger window minimizing modeled cost: per window, one mixed
// add per nonzero point plus two full adds per bucket.
unsigned window_bits(size_t n) {
    unsigned best_c = 2;
    double best_cost = 1e300;
    for (unsigned c = 2; c <= 14; c++) {
        double windows = double((254 + c - 1) / c);
        double cost = windows * (double(n) * 11.0 + double(size_t(1) << c) * 2.0 * 16.0);
        if (cost < best_cost) {
            best_cost = cost;
            best_c = c;
        }
    }
    return best_c;
}

unsigned scalar_window(const U256& s, unsigned pos, unsigned bits) {
    unsigned limb = pos / 64;
    unsigned shift = pos % 64;
    uint64_t v = s.limbs[limb] >> shift;
    if (shift + bits > 64 && limb + 1 < 4) {
        v |= s.limbs[limb + 1] << (64 - shift);
    }
    return unsigned(v) & ((1u << bits) - 1u);
}

template <typename Group, typename F>
Group msm_impl(const std::vector<Group>& bases, const std::vector<Fr>& scalars,
               Group (*make)(const F&, const F&)) {
    if (bases.size() != scalars.size()) {
        throw B5gError(Errc::ParameterMismatch, "msm: bases/scalars length mismatch");
    }
    if (bases.empty()) return Group::identity();

    std::vector<U256> values(scalars.size());
    for (size_t i = 0; i < scalars.size(); i++) values[i] = scalars[i].value();

    const unsigned c = window_bits(bases.size());
    const unsigned num_windows = (254 + c - 1) / c;
    std::vector<Jac<F>> buckets((size_t(1) << c) - 1);

    Jac<F> acc = Jac<F>::infinity();
    for (int w = int(num_windows) - 1; w >= 0; w--) {
        for (unsigned j = 0; j < c; j++) acc = jac_double(acc);
        std::fill(buckets.begin(), buckets.end(), Jac<F>::infinity());
        for (size_t i = 0; i < bases.size(); i++) {
            if (bases[i].infinity) continue;
            unsigned idx = scalar_window(values[i], unsigned(w) * c, c);
            if (idx) buckets[idx - 1] = jac_add_mixed(buckets[idx - 1], bases[i].x, bases[i].y);
        }
        Jac<F> running = Jac<F>::infinity();
        Jac<F> sum = Jac<F>::infinity();
        for (size_t j = buckets.size(); j > 0; j--) {
            running = jac_add(running, buckets[j - 1]);
            sum = jac_add(sum, running);
        }
        acc = jac_add(acc, sum);
    }
    return jac_to_affine(acc, make);
}

template <typename Group, typename F>
Group mul_impl(const Group& p, const U256& k, Group (*make)(const F&, const F&)) {
    if (p.infinity || k.is_zero()) return Group::identity();
    Jac<F> acc = Jac<F>::infinity();
    int bits = k.bit_length();
    for (int i = bits - 1; i >= 0; i--) {
        acc = jac_double(acc);
        if (k.bit(i)) acc = jac_add_mixed(acc, p.x, p.y);
    }
    return jac_to_affine(acc, make);
}

} // namespace

G1 to_affine(const G1Jac& p) { return jac_to_affine(p, make_g1); }
G2 to_affine(const G2Jac& p) { return jac_to_affine(p, make_g2); }

std::vector<G1> to_affine_batch(const std::vector<G1Jac>& points) {
    return batch_normalize(points, make_g1);
}

std::vector<G2> to_affine_batch(const std::vector<G2Jac>& points) {
    return batch_normalize(points, make_g2);
}

G1 g1_add(const G1& a, const G1& b) {
    if (a.infinity) return b;
    if (b.infinity) return a;
    return to_affine(jac_add_mixed(to_jac(a), b.x, b.y));
}

G2 g2_add(const G2& a, const G2& b) {
    if (a.infinity) return b;
    if (b.infinity) return a;
    return to_affine(jac_add_mixed(to_jac(a), b.x, b.y));
}

G1 g1_mul(const G1& p, const U256& k) { return mul_impl(p, k, make_g1); }
G2 g2_mul(const G2& p, const U256& k) { return mul_impl(p, k, make_g2); }

G1 g1_msm(const std::vector<G1>& bases, const std::vector<Fr>& scalars) {
    return msm_impl(bases, scalars, make_g1);
}

G2 g2_msm(const std::vector<G2>& bases, const std::vector<Fr>& scalars) {
    return msm_impl(bases, scalars, make_g2);
}

template <typename Group, typename JacT>
WindowTable<Group, JacT>::WindowTable(const Group& base) {
    std::vector<JacT> jac_table;
    jac_table.reserve(size_t(WINDOWS) * ENTRIES);
    JacT power = to_jac(base); // (2^WBITS)^w * base progression
    for (unsigned w = 0; w < WINDOWS; w++) {
        JacT acc = JacT::infinity();
        for (unsigned j = 0; j < ENTRIES; j++) {
            acc = jac_add(acc, power);
            jac_table.push_back(acc);
        }
        power = jac_add(acc, power);
    }
    table_ = to_affine_batch(jac_table);
}

template <typename Group, typename JacT>
Group WindowTable<Group, JacT>::mul(const U256& k) const {
    JacT acc = JacT::infinity();
    for (unsigned w = 0; w < WINDOWS; w++) {
        unsigned digit = unsigned(k.limbs[w / 8] >> (8 * (w % 8))) & 0xff;
        if (digit) {
            const Group& entry = table_[size_t(w) * ENTRIES + digit - 1];
            if (!entry.infinity) acc = jac_add_mixed(acc, entry.x, entry.y);
        }
    }
    return to_affine(acc);
}

template class WindowTable<G1, G1Jac>;
template class WindowTable<G2, G2Jac>;

std::optional<Fp> fp_sqrt(const Fp& a) {
    // p % 4 == 3: candidate = a^((p+1)/4)
    static const U256 e = [] {
        U256 p = FpParams::modulus();
        U256 t = u256_add(p, U256(1));
        U256 r;
        for (int i = 0; i < 4; i++) {
            r.limbs[i] = t.limbs[i] >> 2;
            if (i < 3) r.limbs[i] |= t.limbs[i + 1] << 62;
        }
        return r;
    }();
    Fp cand = a.pow(e);
    if (cand.square() == a) return cand;
    return std::nullopt;
}

std::optional<Fp2> fp2_sqrt(const Fp2& a) {
    if (a.is_zero()) return Fp2::zero();
    // Adj / Rodriguez-Henriquez for p % 4 == 3.
    static const U256 e_p3_4 = [] {
        U256 p = FpParams::modulus();
        U256 t = u256_sub(p, U256(3));
        U256 r;
        for (int i = 0; i < 4; i++) {
            r.limbs[i] = t.limbs[i] >> 2;
            if (i < 3) r.limbs[i] |= t.limbs[i + 1] << 62;
        }
        return r;
    }();
    static const U256 e_p1_2 = [] {
        U256 p = FpParams::modulus();
        U256 t = u256_sub(p, U256(1));
        U256 r;
        for (int i = 0; i < 4; i++) {
            r.limbs[i] = t.limbs[i] >> 1;
            if (i < 3) r.limbs[i] |= t.limbs[i + 1] << 63;
        }
        return r;
    }();
    Fp2 a1 = a.pow(e_p3_4);
    Fp2 alpha = a1.square() * a;
    Fp2 x0 = a1 * a;
    Fp2 minus_one = -Fp2::one();
    Fp2 cand;
    if (alpha == minus_one) {
        cand = x0 * Fp2{Fp::zero(), Fp::one()};
    } else {
        cand = (Fp2::one() + alpha).pow(e_p1_2) * x0;
    }
    if (cand.square() == a) return cand;
    return std::nullopt;
}

namespace {

constexpr uint8_t FLAG_Y_LARGER = 0x80;
constexpr uint8_t FLAG_INFINITY = 0x40;

bool fp_is_lex_larger(const Fp& y) {
    U256 v = y.value();
    U256 neg = u256_sub(FpParams::modulus(), v);
    return v >= neg && !v.is_zero();
}

bool fp2_is_lex_larger(const Fp2& y) {
    U256 v1 = y.c1.value();
    U256 n1 = y.c1.is_zero() ? U256() : u256_sub(FpParams::modulus(), v1);
    if (v1 != n1) return v1 >= n1;
    return fp_is_lex_larger(y.c0);
}

} // namespace

std::vector<uint8_t> g1_compress(const G1& p) {
    std::vector<uint8_t> out(32, 0);
    if (p.infinity) {
        out[0] = FLAG_INFINITY;
        return out;
    }
    auto xb = p.x.to_bytes_be();
    std::copy(xb.begin(), xb.end(), out.begin());
    if (fp_is_lex_larger(p.y)) out[0] |= FLAG_Y_LARGER;
    return out;
}

G1 g1_decompress(const uint8_t* data, size_t len) {
    if (len != 32) throw B5gError(Errc::SerializationError, "g1: expected 32 bytes");
    uint8_t flags = data[0] & 0xc0;
    if (flags & FLAG_INFINITY) {
        for (size_t i = 1; i < 32; i++) {
            if (data[i]) throw B5gError(Errc::SerializationError, "g1: bad infinity encoding");
        }
        return G1::identity();
    }
    std::array<uint8_t, 32> buf;
    std::copy(data, data + 32, buf.begin());
    buf[0] &= 0x3f;
    Fp x = Fp::from_bytes_be(buf.data());
    static const Fp b = Fp::from_u64(3);
    auto y = fp_sqrt(x.square() * x + b);
    if (!y) throw B5gError(Errc::SerializationError, "g1: x not on curve");
    Fp yy = *y;
    if (fp_is_lex_larger(yy) != bool(flags & FLAG_Y_LARGER)) yy = -yy;
    G1 p{x, yy};
    if (!p.is_on_curve()) throw B5gError(Errc::SerializationError, "g1: not on curve");
    return p;
}

std::vector<uint8_t> g2_compress(const G2& p) {
    std::vector<uint8_t> out(64, 0);
    if (p.infinity) {
        out[0] = FLAG_INFINITY;
        return out;
    }
    auto x1 = p.x.c1.to_bytes_be();
    auto x0 = p.x.c0.to_bytes_be();
    std::copy(x1.begin(), x1.end(), out.begin());
    std::copy(x0.begin(), x0.end(), out.begin() + 32);
    if (fp2_is_lex_larger(p.y)) out[0] |= FLAG_Y_LARGER;
    return out;
}

G2 g2_decompress(const uint8_t* data, size_t len) {
    if (len != 64) throw B5gError(Errc::SerializationError, "g2: expected 64 bytes");
    uint8_t flags = data[0] & 0xc0;
    if (flags & FLAG_INFINITY) {
        for (size_t i = 1; i < 64; i++) {
            if (data[i]) throw B5gError(Errc::SerializationError, "g2: bad infinity encoding");
        }
        return G2::identity();
    }
    std::array<uint8_t, 32> buf;
    std::copy(data, data + 32, buf.begin());
    buf[0] &= 0x3f;
    Fp xc1 = Fp::from_bytes_be(buf.data());
    Fp xc0 = Fp::from_bytes_be(data + 32);
    Fp2 x{xc0, xc1};
    auto y = fp2_sqrt(x.square() * x + G2::twist_b());
    if (!y) throw B5gError(Errc::SerializationError, "g2: x not on twist");
    Fp2 yy = *y;
    if (fp2_is_lex_larger(yy) != bool(flags & FLAG_Y_LARGER)) yy = -yy;
    G2 p{x, yy};
    if (!p.is_on_curve()) throw B5gError(Errc::SerializationError, "g2: not on twist");
    if (!g2_in_subgroup(p)) throw B5gError(Errc::SerializationError, "g2: not in subgroup");
    return p;
}

} // namespace b5g
