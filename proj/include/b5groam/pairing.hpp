// B5GRoam - optimal ate pairing on BN254
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <utility>
#include <vector>

#include "b5groam/curve.hpp"

namespace b5g {

// Miller loop value before final exponentiation.
Fp12 miller_loop(const G1& p, const G2& q);

Fp12 final_exponentiation(const Fp12& f);

// e(P, Q).
Fp12 pairing(const G1& p, const G2& q);

// Product of pairings sharing one final exponentiation:
// prod_i e(P_i, Q_i). Used by the proof verifier.
Fp12 pairing_product(const std::vector<std::pair<G1, G2>>& pairs);

} // namespace b5g
