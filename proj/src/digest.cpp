// B5GRoam - SHA-256 digests (OpenSSL-backed)
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/digest.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace b5g {

Sha256::Sha256() {
    auto* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 init failed");
    }
    ctx_ = ctx;
}

Sha256::~Sha256() { EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_)); }

Sha256& Sha256::update(const void* data, size_t len) {
    if (EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data, len) != 1) {
        throw std::runtime_error("sha256 update failed");
    }
    return *this;
}

Digest32 Sha256::finalize() {
    Digest32 out{};
    unsigned int n = 0;
    if (EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), out.data(), &n) != 1 || n != 32) {
        throw std::runtime_error("sha256 final failed");
    }
    return out;
}

Digest32 sha256(const void* data, size_t len) {
    Sha256 h;
    h.update(data, len);
    return h.finalize();
}

Digest32 sha256(const std::string& s) { return sha256(s.data(), s.size()); }
Digest32 sha256(const std::vector<uint8_t>& v) { return sha256(v.data(), v.size()); }

std::string digest_hex(const Digest32& d) {
    static const char* digits = "0123456789abcdef";
    std::string s = "0x";
    for (auto b : d) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

} // namespace b5g
