#include "arqkey/bitvec.hpp"

#include <stdexcept>

namespace arqkey {

BitVec random_bits(std::size_t count, RngStream& stream)
{
    BitVec out(count);
    std::uint64_t word = 0;
    int left = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (left == 0) {
            word = stream.bits();
            left = 64;
        }
        out[i] = static_cast<std::uint8_t>(word & 1u);
        word >>= 1;
        --left;
    }
    return out;
}

void xor_into(BitVec& acc, const BitVec& other)
{
    if (acc.size() != other.size())
        throw std::invalid_argument("xor_into: size mismatch");
    for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] ^= other[i];
}

std::string to_hex(const BitVec& bits)
{
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned nibble = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            nibble <<= 1;
            if (i + j < bits.size())
                nibble |= bits[i + j];
        }
        out.push_back(digits[nibble]);
    }
    return out;
}

static unsigned hex_value(char c)
{
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    throw std::invalid_argument("from_hex: bad digit");
}

BitVec from_hex(const std::string& hex, std::size_t bit_count)
{
    if (hex.size() != (bit_count + 3) / 4)
        throw std::invalid_argument("from_hex: length mismatch");
    BitVec out(bit_count);
    for (std::size_t i = 0; i < bit_count; ++i) {
        unsigned nibble = hex_value(hex[i / 4]);
        out[i] = static_cast<std::uint8_t>((nibble >> (3 - i % 4)) & 1u);
    }
    return out;
}

} // namespace arqkey
