// B5GRoam - misc helpers
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#include "b5groam/util.hpp"

#include <algorithm>

namespace b5g {

std::string amount_to_string(Amount v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

Amount amount_from_string(const std::string& s) {
    if (s.empty()) throw B5gError(Errc::SerializationError, "empty amount");
    Amount v = 0;
    constexpr Amount limit = ~Amount(0);
    for (char c : s) {
        if (c < '0' || c > '9') {
            throw B5gError(Errc::SerializationError, "bad amount digit in: " + s);
        }
        unsigned d = unsigned(c - '0');
        if (v > (limit - d) / 10) throw B5gError(Errc::SerializationError, "amount overflow");
        v = v * 10 + d;
    }
    return v;
}

std::string hex_encode(const std::vector<uint8_t>& data, bool prefix) {
    static const char* digits = "0123456789abcdef";
    std::string s = prefix ? "0x" : "";
    for (auto b : data) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

std::vector<uint8_t> hex_decode(const std::string& in) {
    size_t start = (in.size() >= 2 && in[0] == '0' && (in[1] == 'x' || in[1] == 'X')) ? 2 : 0;
    if ((in.size() - start) % 2 != 0) {
        throw B5gError(Errc::SerializationError, "odd hex length");
    }
    auto nib = [&](char c) -> uint8_t {
        if (c >= '0' && c <= '9') return uint8_t(c - '0');
        if (c >= 'a' && c <= 'f') return uint8_t(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return uint8_t(c - 'A' + 10);
        throw B5gError(Errc::SerializationError, "bad hex digit");
    };
    std::vector<uint8_t> out;
    out.reserve((in.size() - start) / 2);
    for (size_t i = start; i < in.size(); i += 2) {
        out.push_back(uint8_t(nib(in[i]) << 4 | nib(in[i + 1])));
    }
    return out;
}

} // namespace b5g
