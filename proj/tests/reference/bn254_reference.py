#!/usr/bin/env python3
"""Reference BN254 tower / pairing implementation used to generate test fixtures.

Deliberately written with plain python integers and definitional algorithms
(final exponentiation is a single generic pow by (p^12-1)/r) so it shares no
structure with the optimized C++ implementation it checks.
"""

import json
import os

P = 21888242871839275222246405745257275088696311157297823662689037894645226208583
R = 21888242871839275222246405745257275088548364400416034343698204186575808495617
BN_X = 4965661367192848881          # BN curve parameter
ATE_LOOP = 6 * BN_X + 2             # 29793968203157093288


def fp_inv(a):
    return pow(a, P - 2, P)


# ---- Fp2 = Fp[u]/(u^2+1), elements as (a0, a1) = a0 + a1*u ----

F2_ZERO = (0, 0)
F2_ONE = (1, 0)
XI = (9, 1)  # twist constant xi = 9 + u


def f2_add(a, b):
    return ((a[0] + b[0]) % P, (a[1] + b[1]) % P)


def f2_sub(a, b):
    return ((a[0] - b[0]) % P, (a[1] - b[1]) % P)


def f2_neg(a):
    return ((-a[0]) % P, (-a[1]) % P)


def f2_mul(a, b):
    t0 = a[0] * b[0] % P
    t1 = a[1] * b[1] % P
    t2 = (a[0] + a[1]) * (b[0] + b[1]) % P
    return ((t0 - t1) % P, (t2 - t0 - t1) % P)


def f2_sq(a):
    return f2_mul(a, a)


def f2_conj(a):
    return (a[0], (-a[1]) % P)


def f2_inv(a):
    norm = (a[0] * a[0] + a[1] * a[1]) % P
    ninv = fp_inv(norm)
    return (a[0] * ninv % P, (-a[1]) * ninv % P)


def f2_pow(a, e):
    result = F2_ONE
    base = a
    while e:
        if e & 1:
            result = f2_mul(result, base)
        base = f2_sq(base)
        e >>= 1
    return result


def f2_smul(a, k):
    return (a[0] * k % P, a[1] * k % P)


# ---- Fp6 = Fp2[v]/(v^3 - xi), elements as (c0, c1, c2) ----

F6_ZERO = (F2_ZERO, F2_ZERO, F2_ZERO)
F6_ONE = (F2_ONE, F2_ZERO, F2_ZERO)


def f6_add(a, b):
    return tuple(f2_add(x, y) for x, y in zip(a, b))


def f6_sub(a, b):
    return tuple(f2_sub(x, y) for x, y in zip(a, b))


def f6_neg(a):
    return tuple(f2_neg(x) for x in a)


def mul_by_xi(a):
    return f2_mul(a, XI)


def f6_mul(a, b):
    a0, a1, a2 = a
    b0, b1, b2 = b
    t0 = f2_mul(a0, b0)
    t1 = f2_mul(a1, b1)
    t2 = f2_mul(a2, b2)
    c0 = f2_add(t0, mul_by_xi(f2_sub(f2_mul(f2_add(a1, a2), f2_add(b1, b2)), f2_add(t1, t2))))
    c1 = f2_add(f2_sub(f2_mul(f2_add(a0, a1), f2_add(b0, b1)), f2_add(t0, t1)), mul_by_xi(t2))
    c2 = f2_add(f2_sub(f2_mul(f2_add(a0, a2), f2_add(b0, b2)), f2_add(t0, t2)), t1)
    return (c0, c1, c2)


def f6_inv(a):
    a0, a1, a2 = a
    c0 = f2_sub(f2_sq(a0), mul_by_xi(f2_mul(a1, a2)))
    c1 = f2_sub(mul_by_xi(f2_sq(a2)), f2_mul(a0, a1))
    c2 = f2_sub(f2_sq(a1), f2_mul(a0, a2))
    t = f2_add(f2_mul(a2, mul_by_xi(c1)), f2_add(f2_mul(a0, c0), mul_by_xi(f2_mul(a1, c2))))
    tinv = f2_inv(t)
    return (f2_mul(c0, tinv), f2_mul(c1, tinv), f2_mul(c2, tinv))


def f6_mul_by_v(a):
    return (mul_by_xi(a[2]), a[0], a[1])


# ---- Fp12 = Fp6[w]/(w^2 - v), elements as (c0, c1) ----

F12_ONE = (F6_ONE, F6_ZERO)


def f12_mul(a, b):
    a0, a1 = a
    b0, b1 = b
    t0 = f6_mul(a0, b0)
    t1 = f6_mul(a1, b1)
    c0 = f6_add(t0, f6_mul_by_v(t1))
    c1 = f6_sub(f6_mul(f6_add(a0, a1), f6_add(b0, b1)), f6_add(t0, t1))
    return (c0, c1)


def f12_sq(a):
    return f12_mul(a, a)


def f12_inv(a):
    a0, a1 = a
    t = f6_sub(f6_mul(a0, a0), f6_mul_by_v(f6_mul(a1, a1)))
    tinv = f6_inv(t)
    return (f6_mul(a0, tinv), f6_neg(f6_mul(a1, tinv)))


def f12_pow(a, e):
    result = F12_ONE
    base = a
    while e:
        if e & 1:
            result = f12_mul(result, base)
        base = f12_sq(base)
        e >>= 1
    return result


def f12_from_sparse(c0_fp, cw, cw3):
    """c0_fp + cw*w + cw3*w^3 with cw, cw3 in Fp2."""
    a = ((c0_fp % P, 0), F2_ZERO, F2_ZERO)
    b = (cw, cw3, F2_ZERO)
    return (a, b)


def f12_from_sparse_even(c0_fp, cw2):
    """c0_fp + cw2*w^2."""
    a = ((c0_fp % P, 0), cw2, F2_ZERO)
    return (a, F6_ZERO)


# ---- curve groups ----

# G1: y^2 = x^3 + 3 over Fp, generator (1, 2). affine points, None = infinity.

def g1_add(p1, p2):
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2:
        if (y1 + y2) % P == 0:
            return None
        lam = 3 * x1 * x1 * fp_inv(2 * y1) % P
    else:
        lam = (y2 - y1) * fp_inv((x2 - x1) % P) % P
    x3 = (lam * lam - x1 - x2) % P
    y3 = (lam * (x1 - x3) - y1) % P
    return (x3, y3)


def g1_mul(pt, k):
    acc = None
    addend = pt
    while k:
        if k & 1:
            acc = g1_add(acc, addend)
        addend = g1_add(addend, addend)
        k >>= 1
    return acc


# G2 on the twist: y^2 = x^3 + 3/xi over Fp2.

B2 = f2_mul((3, 0), f2_inv(XI))

G2_GEN = (
    (10857046999023057135944570762232829481370756359578518086990519993285655852781,
     11559732032986387107991004021392285783925812861821192530917403151452391805634),
    (8495653923123431417604973247489272438418190587263600148770280649306958101930,
     4082367875863433681332203403145435568316851327593401208105741076214120093531),
)

G1_GEN = (1, 2)


def g2_is_on_curve(pt):
    x, y = pt
    return f2_sub(f2_sq(y), f2_add(f2_mul(f2_sq(x), x), B2)) == F2_ZERO


def g2_neg(pt):
    if pt is None:
        return None
    return (pt[0], f2_neg(pt[1]))


def g2_add(p1, p2):
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2:
        if f2_add(y1, y2) == F2_ZERO:
            return None
        lam = f2_mul(f2_smul(f2_sq(x1), 3), f2_inv(f2_smul(y1, 2)))
    else:
        lam = f2_mul(f2_sub(y2, y1), f2_inv(f2_sub(x2, x1)))
    x3 = f2_sub(f2_sub(f2_sq(lam), x1), x2)
    y3 = f2_sub(f2_mul(lam, f2_sub(x1, x3)), y1)
    return (x3, y3)


def g2_mul(pt, k):
    acc = None
    addend = pt
    while k:
        if k & 1:
            acc = g2_add(acc, addend)
        addend = g2_add(addend, addend)
        k >>= 1
    return acc


# ---- pairing ----

# Frobenius-twist coefficients.
TW_X1 = f2_pow(XI, (P - 1) // 3)
TW_Y1 = f2_pow(XI, (P - 1) // 2)
TW_X2 = f2_pow(XI, (P * P - 1) // 3)
TW_Y2 = f2_pow(XI, (P * P - 1) // 2)


def g2_frob(pt, i):
    x, y = pt
    if i == 1:
        return (f2_mul(f2_conj(x), TW_X1), f2_mul(f2_conj(y), TW_Y1))
    if i == 2:
        return (f2_mul(x, TW_X2), f2_mul(y, TW_Y2))
    raise ValueError(i)


def line_eval(t, s, p1):
    """Line through psi(t), psi(s) on E(Fp12), evaluated at p1 in G1."""
    px, py = p1
    x1, y1 = t
    x2, y2 = s
    if x1 == x2 and f2_add(y1, y2) == F2_ZERO:
        # vertical: l = px - x1 * w^2
        return f12_from_sparse_even(px, f2_neg(x1))
    if t == s:
        lam = f2_mul(f2_smul(f2_sq(x1), 3), f2_inv(f2_smul(y1, 2)))
    else:
        lam = f2_mul(f2_sub(y2, y1), f2_inv(f2_sub(x2, x1)))
    cw = f2_neg(f2_smul(lam, px))
    cw3 = f2_sub(f2_mul(lam, x1), y1)
    return f12_from_sparse(py, cw, cw3)


def miller_loop(p1, q2):
    t = q2
    f = F12_ONE
    for i in range(ATE_LOOP.bit_length() - 2, -1, -1):
        f = f12_mul(f12_sq(f), line_eval(t, t, p1))
        t = g2_add(t, t)
        if (ATE_LOOP >> i) & 1:
            f = f12_mul(f, line_eval(t, q2, p1))
            t = g2_add(t, q2)
    q_1 = g2_frob(q2, 1)
    q_2 = g2_neg(g2_frob(q2, 2))
    f = f12_mul(f, line_eval(t, q_1, p1))
    t = g2_add(t, q_1)
    f = f12_mul(f, line_eval(t, q_2, p1))
    return f


FINAL_EXP = (P ** 12 - 1) // R


def pairing(p1, q2):
    return f12_pow(miller_loop(p1, q2), FINAL_EXP)


# ---- fixture output ----

def fe_hex(v):
    return "0x" + format(v % P, "064x")


def f2_hex(a):
    return [fe_hex(a[0]), fe_hex(a[1])]


def f12_hex(a):
    out = []
    for c6 in a:
        for c2 in c6:
            out.extend(f2_hex(c2))
    return out


def self_check():
    assert g2_is_on_curve(G2_GEN), "G2 generator not on twist curve"
    assert g2_mul(G2_GEN, R) is None, "G2 generator order mismatch"
    assert g1_mul(G1_GEN, R) is None, "G1 generator order mismatch"
    e = pairing(G1_GEN, G2_GEN)
    assert e != F12_ONE, "pairing degenerate"
    assert f12_pow(e, R) == F12_ONE, "pairing value not order r"
    # bilinearity
    e_ab = pairing(g1_mul(G1_GEN, 5), g2_mul(G2_GEN, 7))
    assert e_ab == f12_pow(e, 35), "bilinearity failed"
    e_sum = f12_mul(pairing(g1_mul(G1_GEN, 2), G2_GEN), pairing(g1_mul(G1_GEN, 3), G2_GEN))
    assert e_sum == f12_pow(e, 5), "additivity failed"
    print("bn254 reference self-check passed")


def generate(outdir):
    self_check()
    e = pairing(G1_GEN, G2_GEN)
    pairs = []
    for a, b in [(2, 1), (1, 2), (5, 7), (123456789, 987654321)]:
        val = pairing(g1_mul(G1_GEN, a), g2_mul(G2_GEN, b))
        assert val == f12_pow(e, a * b)
        pairs.append({"a": a, "b": b, "value": f12_hex(val)})
    g1_5 = g1_mul(G1_GEN, 5)
    g2_5 = g2_mul(G2_GEN, 5)
    fixture = {
        "curve": "bn254",
        "e_g1_g2": f12_hex(e),
        "pairs": pairs,
        "g1_mul_5": [fe_hex(g1_5[0]), fe_hex(g1_5[1])],
        "g2_mul_5": f2_hex(g2_5[0]) + f2_hex(g2_5[1]),
        "frobenius": {
            "tw_x1": f2_hex(TW_X1),
            "tw_y1": f2_hex(TW_Y1),
            "tw_x2": f2_hex(TW_X2),
            "tw_y2": f2_hex(TW_Y2),
        },
    }
    path = os.path.join(outdir, "pairing_vectors.json")
    with open(path, "w") as fh:
        json.dump(fixture, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print("wrote", path)


if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    generate(os.path.normpath(os.path.join(here, "..", "fixtures")))
