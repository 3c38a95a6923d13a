// B5GRoam - entropy sources
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/rng.hpp"

#include <cstring>
#include <random>

namespace b5g {

SeededEntropy::SeededEntropy(const std::vector<uint8_t>& seed) {
    Sha256 h;
    h.update(std::string("b5g-drbg-v1"));
    h.update(seed);
    key_ = h.finalize();
}

SeededEntropy::SeededEntropy(const std::string& seed_utf8)
    : SeededEntropy(std::vector<uint8_t>(seed_utf8.begin(), seed_utf8.end())) {}

void SeededEntropy::fill(uint8_t* out, size_t len) {
    while (len > 0) {
        if (avail_ == 0) {
            Sha256 h;
            h.update(key_);
            uint8_t ctr[8];
            for (int i = 0; i < 8; i++) ctr[i] = uint8_t(counter_ >> (56 - 8 * i));
            h.update(ctr, 8);
            block_ = h.finalize();
            avail_ = 32;
            counter_++;
        }
        size_t take = std::min(avail_, len);
        std::memcpy(out, block_.data() + (32 - avail_), take);
        out += take;
        len -= take;
        avail_ -= take;
    }
}

SeededEntropy SeededEntropy::fork(const std::string& label) const {
    std::vector<uint8_t> seed(key_.begin(), key_.end());
    seed.insert(seed.end(), label.begin(), label.end());
    return SeededEntropy(seed);
}

void SystemEntropy::fill(uint8_t* out, size_t len) {
    static thread_local std::random_device rd;
    size_t i = 0;
    while (i < len) {
        unsigned int v = rd();
        for (int b = 0; b < 4 && i < len; b++) out[i++] = uint8_t(v >> (8 * b));
    }
}

} // namespace b5g
