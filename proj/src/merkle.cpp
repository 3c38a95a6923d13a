// B5GRoam - binary Merkle tree
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/merkle.hpp"

namespace b5g {

Digest32 merkle_root(const std::vector<std::vector<uint8_t>>& leaves) {
    if (leaves.empty()) return Digest32{};
    std::vector<Digest32> level;
    level.reserve(leaves.size());
    for (const auto& leaf : leaves) {
        Sha256 h;
        uint8_t tag = 0x00;
        h.update(&tag, 1);
        h.update(leaf);
        level.push_back(h.finalize());
    }
    while (level.size() > 1) {
        if (level.size() % 2 != 0) level.push_back(level.back());
        std::vector<Digest32> next;
        next.reserve(level.size() / 2);
        for (size_t i = 0; i < level.size(); i += 2) {
            Sha256 h;
            uint8_t tag = 0x01;
            h.update(&tag, 1);
            h.update(level[i]);
            h.update(level[i + 1]);
            next.push_back(h.finalize());
        }
        level = std::move(next);
    }
    return level[0];
}

} // namespace b5g
