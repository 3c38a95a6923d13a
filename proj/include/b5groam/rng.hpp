// B5GRoam - entropy sources
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "b5groam/digest.hpp"
#include "b5groam/field.hpp"

namespace b5g {

// All protocol randomness flows through this interface so test and CLI runs
// can be made reproducible from a seed.
class EntropySource {
  public:
    virtual ~EntropySource() = default;
    virtual void fill(uint8_t* out, size_t len) = 0;

    uint64_t next_u64() {
        uint8_t buf[8];
        fill(buf, 8);
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) v = (v << 8) | buf[i];
        return v;
    }

    // Uniform in [0, bound), bound > 0.
    uint64_t next_below(uint64_t bound) {
        // rejection sampling over the widest multiple of bound
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    U256 next_u256() {
        uint8_t buf[32];
        fill(buf, 32);
        return U256::from_bytes_be(buf);
    }

    // Uniform field element by rejection sampling.
    Fr next_fr() {
        for (;;) {
            U256 v = next_u256();
            if (v < Fr::modulus()) return Fr::from_u256(v);
        }
    }

    Fr next_nonzero_fr() {
        for (;;) {
            Fr v = next_fr();
            if (!v.is_zero()) return v;
        }
    }
};

// SHA-256 counter DRBG. Deterministic given the seed bytes.
class SeededEntropy : public EntropySource {
  public:
    explicit SeededEntropy(const std::vector<uint8_t>& seed);
    explicit SeededEntropy(const std::string& seed_utf8);

    void fill(uint8_t* out, size_t len) override;

    // Derives an independent child stream; used to give each subsystem of a
    // scenario its own deterministic stream.
    SeededEntropy fork(const std::string& label) const;

  private:
    Digest32 key_;
    uint64_t counter_ = 0;
    std::array<uint8_t, 32> block_{};
    size_t avail_ = 0;
};

// OS entropy for non-reproducible runs.
class SystemEntropy : public EntropySource {
  public:
    void fill(uint8_t* out, size_t len) override;
};

} // namespace b5g
