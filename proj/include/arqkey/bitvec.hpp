#ifndef ARQKEY_BITVEC_HPP
#define ARQKEY_BITVEC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "arqkey/rng.hpp"

namespace arqkey {

// One bit per byte, values 0 or 1. Simple and fast enough for the packet
// sizes here; hex round-trips define the wire format for trace files.
using BitVec = std::vector<std::uint8_t>;

BitVec random_bits(std::size_t count, RngStream& stream);

// acc ^= other, elementwise; sizes must match
void xor_into(BitVec& acc, const BitVec& other);

// First bit becomes the most significant bit of the first hex digit.
// Width not a multiple of 4 is zero-padded on the right.
std::string to_hex(const BitVec& bits);

// Inverse of to_hex for a known bit width.
BitVec from_hex(const std::string& hex, std::size_t bit_count);

} // namespace arqkey

#endif
