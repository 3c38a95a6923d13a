// B5GRoam - SHA-256 digests (OpenSSL-backed)
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace b5g {

using Digest32 = std::array<uint8_t, 32>;

class Sha256 {
  public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    Sha256& update(const void* data, size_t len);
    Sha256& update(const std::string& s) { return update(s.data(), s.size()); }
    Sha256& update(const std::vector<uint8_t>& v) { return update(v.data(), v.size()); }
    template <size_t N>
    Sha256& update(const std::array<uint8_t, N>& a) { return update(a.data(), N); }

    Digest32 finalize();

  private:
    void* ctx_;
};

Digest32 sha256(const void* data, size_t len);
Digest32 sha256(const std::string& s);
Digest32 sha256(const std::vector<uint8_t>& v);

std::string digest_hex(const Digest32& d);

} // namespace b5g
