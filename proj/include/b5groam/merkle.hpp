// B5GRoam - binary Merkle tree over canonical leaf serializations
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <vector>

#include "b5groam/digest.hpp"

namespace b5g {

// Leaf hash = sha256(0x00 || leaf bytes), inner = sha256(0x01 || left || right).
// Odd levels duplicate the last node. Empty input hashes to the zero digest.
Digest32 merkle_root(const std::vector<std::vector<uint8_t>>& leaves);

} // namespace b5g
