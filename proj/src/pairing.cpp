// B5GRoam - optimal ate pairing on BN254
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/pairing.hpp"

namespace b5g {

namespace {

// 6x + 2 for the BN parameter x = 0x44e992b44a6909f1 (65 bits).
const U256 ATE_LOOP{0x9d797039be763ba8ULL, 0x1ULL, 0, 0};

constexpr uint64_t BN_X = 0x44e992b44a6909f1ULL;

// Line through psi(t) and psi(s) on E(Fp12), evaluated at p. psi is the
// untwist map (x, y) -> (x*w^2, y*w^3). Lines come out sparse:
//   non-vertical:  py + cw*w + cw3*w^3
//   vertical:      px + cw2*w^2
Fp12 line_eval(const G2& t, const G2& s, const G1& p) {
    if (t.x == s.x && (t.y + s.y).is_zero()) {
        Fp12 r = Fp12::zero();
        r.c0.c0 = Fp2{p.x, Fp::zero()};
        r.c0.c1 = -t.x;
        return r;
    }
    Fp2 lambda;
    if (t == s) {
        lambda = t.x.square().scale(Fp::from_u64(3)) * t.y.dbl().inverse();
    } else {
        lambda = (s.y - t.y) * (s.x - t.x).inverse();
    }
    Fp12 r = Fp12::zero();
    r.c0.c0 = Fp2{p.y, Fp::zero()};
    r.c1.c0 = -(lambda.scale(p.x));
    r.c1.c1 = lambda * t.x - t.y;
    return r;
}

G2 g2_frobenius_twist(const G2& q, int power) {
    return {fp2_frobenius(q.x, power) * frob::tw_x(power),
            fp2_frobenius(q.y, power) * frob::tw_y(power)};
}

Fp12 exp_by_z(const Fp12& f) { return f.pow(U256(BN_X)); }

// Hard part x^((p^4 - p^2 + 1)/r) after the easy part, via the Scott et al.
// vector-addition chain for BN curves. Operands sit in the cyclotomic
// subgroup, so conjugation is inversion.
Fp12 final_exp_hard(const Fp12& f) {
    Fp12 fx = exp_by_z(f);
    Fp12 fx2 = exp_by_z(fx);
    Fp12 fx3 = exp_by_z(fx2);

    Fp12 y0 = f.frobenius(1) * f.frobenius(2) * f.frobenius(3);
    Fp12 y1 = f.conjugate();
    Fp12 y2 = fx2.frobenius(2);
    Fp12 y3 = fx.frobenius(1).conjugate();
    Fp12 y4 = (fx * fx2.frobenius(1)).conjugate();
    Fp12 y5 = fx2.conjugate();
    Fp12 y6 = (fx3 * fx3.frobenius(1)).conjugate();

    Fp12 t0 = y6.square() * y4 * y5;
    Fp12 t1 = y3 * y5 * t0;
    t0 = t0 * y2;
    t1 = (t1.square() * t0).square();
    t0 = t1 * y1;
    t1 = t1 * y0;
    t0 = t0.square();
    return t0 * t1;
}

} // namespace

namespace {

// Montgomery batch inversion; inputs must be nonzero.
std::vector<Fp2> fp2_batch_inverse(const std::vector<Fp2>& in) {
    std::vector<Fp2> prefix(in.size());
    Fp2 running = Fp2::one();
    for (size_t i = 0; i < in.size(); i++) {
        running = running * in[i];
        prefix[i] = running;
    }
    Fp2 inv = running.inverse();
    std::vector<Fp2> out(in.size());
    for (size_t i = in.size(); i-- > 0;) {
        out[i] = (i == 0) ? inv : inv * prefix[i - 1];
        inv = inv * in[i];
    }
    return out;
}

// One addition-or-doubling step toward target s, reusing the slope for both
// the line value and the point update. The caller guarantees non-vertical
// geometry (slow path below covers the exceptional cases).
void slope_step(G2& t, const G2& s, const G1& p, const Fp2& denom_inv, Fp12& f) {
    Fp2 lambda;
    if (t == s) {
        lambda = t.x.square().scale(Fp::from_u64(3)) * denom_inv; // 3x^2 / 2y
    } else {
        lambda = (s.y - t.y) * denom_inv; // (y2-y1)/(x2-x1)
    }
    Fp12 line = Fp12::zero();
    line.c0.c0 = Fp2{p.y, Fp::zero()};
    line.c1.c0 = -(lambda.scale(p.x));
    line.c1.c1 = lambda * t.x - t.y;
    f = f * line;
    Fp2 x3 = lambda.square() - t.x - s.x;
    Fp2 y3 = lambda * (t.x - x3) - t.y;
    t = {x3, y3};
}

// Shared-squaring Miller loop over several pairs with batched slope
// inversions. Falls back to the general-case affine formulas whenever a
// step hits exceptional geometry.
Fp12 miller_loop_multi(const std::vector<std::pair<G1, G2>>& pairs) {
    std::vector<std::pair<G1, G2>> live;
    live.reserve(pairs.size());
    for (const auto& pq : pairs) {
        if (!pq.first.infinity && !pq.second.infinity) live.push_back(pq);
    }
    if (live.empty()) return Fp12::one();
    const size_t n = live.size();
    std::vector<G2> t;
    t.reserve(n);
    for (const auto& pq : live) t.push_back(pq.second);

    std::vector<Fp2> denoms(n);
    // Advances every pair toward its target with one shared batch inversion;
    // exceptional steps (vertical line, infinities) take the general path.
    // targets may alias t (doubling); slope_step reads before it writes.
    auto run_steps = [&](const std::vector<G2>& targets, Fp12& f) {
        bool fast = true;
        for (size_t k = 0; k < n; k++) {
            if (t[k].infinity || targets[k].infinity) {
                fast = false;
                break;
            }
            denoms[k] = (t[k] == targets[k]) ? t[k].y.dbl() : targets[k].x - t[k].x;
            if (denoms[k].is_zero()) {
                fast = false;
                break;
            }
        }
        if (fast) {
            std::vector<Fp2> invs = fp2_batch_inverse(denoms);
            for (size_t k = 0; k < n; k++) {
                slope_step(t[k], targets[k], live[k].first, invs[k], f);
            }
        } else {
            for (size_t k = 0; k < n; k++) {
                f = f * line_eval(t[k], targets[k], live[k].first);
                t[k] = g2_add(t[k], targets[k]);
            }
        }
    };

    std::vector<G2> base_q(n);
    for (size_t k = 0; k < n; k++) base_q[k] = live[k].second;

    Fp12 f = Fp12::one();
    for (int i = ATE_LOOP.bit_length() - 2; i >= 0; i--) {
        f = f.square();
        run_steps(t, f); // doubling: target == current
        if (ATE_LOOP.bit(i)) run_steps(base_q, f);
    }
    std::vector<G2> q1(n), q2(n);
    for (size_t k = 0; k < n; k++) {
        q1[k] = g2_frobenius_twist(live[k].second, 1);
        q2[k] = g2_frobenius_twist(live[k].second, 2).negate();
    }
    run_steps(q1, f);
    run_steps(q2, f);
    return f;
}

} // namespace

Fp12 miller_loop(const G1& p, const G2& q) { return miller_loop_multi({{p, q}}); }

Fp12 final_exponentiation(const Fp12& f) {
    // easy part: f^((p^6 - 1)(p^2 + 1))
    Fp12 a = f.conjugate();
    Fp12 b = f.inverse();
    Fp12 c = a * b;
    Fp12 d = c.frobenius(2) * c;
    return final_exp_hard(d);
}

Fp12 pairing(const G1& p, const G2& q) { return final_exponentiation(miller_loop(p, q)); }

Fp12 pairing_product(const std::vector<std::pair<G1, G2>>& pairs) {
    return final_exponentiation(miller_loop_multi(pairs));
}

} // namespace b5g
