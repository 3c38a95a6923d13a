// B5GRoam - misc helpers: hex, 128-bit amounts
// Copyright (c) 2026 B5GRoam Developers
// MIT License

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "b5groam/errors.hpp"

namespace b5g {

// Currency amounts. 64 bits is not enough for the worst-case billing total
// (rates and metrics both range to 2^32), so amounts are 128-bit and are
// serialized as decimal strings.
using Amount = unsigned __int128;

std::string amount_to_string(Amount v);
Amount amount_from_string(const std::string& s);

std::string hex_encode(const std::vector<uint8_t>& data, bool prefix = true);
std::vector<uint8_t> hex_decode(const std::string& s);

} // namespace b5g
