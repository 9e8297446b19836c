#include "arqkey/coset.hpp"

#include <cmath>
#include <stdexcept>

namespace arqkey::coset {

namespace {

std::size_t checked_width(const KeyParts& parts)
{
    if (parts.parts.empty())
        throw std::invalid_argument("coset: no key parts");
    std::size_t width = parts.parts.front().size();
    if (width == 0)
        throw std::invalid_argument("coset: zero-width key parts");
    for (const BitVec& p : parts.parts) {
        if (p.size() != width)
            throw std::invalid_argument("coset: key part width mismatch");
    }
    if (!parts.erased.empty() && parts.erased.size() != parts.parts.size())
        throw std::invalid_argument("coset: erased mask size mismatch");
    return width;
}

std::uint64_t erased_count(const KeyParts& parts)
{
    std::uint64_t n = 0;
    for (std::uint8_t e : parts.erased)
        n += e ? 1 : 0;
    return n;
}

// key value with bit j of the distilled key at numeric bit j
std::uint64_t key_index(const BitVec& bits)
{
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < bits.size(); ++j)
        v |= static_cast<std::uint64_t>(bits[j]) << j;
    return v;
}

} // namespace

DistilledKey distill(const KeyParts& parts)
{
    std::size_t width = checked_width(parts);
    DistilledKey key;
    key.bits.assign(width, 0);
    for (const BitVec& p : parts.parts)
        xor_into(key.bits, p);
    return key;
}

std::vector<std::uint64_t> eve_posterior_counts(const KeyParts& parts)
{
    std::size_t width = checked_width(parts);
    std::uint64_t erased = erased_count(parts);
    std::uint64_t unknown_bits = erased * width;
    if (width > 20 || unknown_bits > 20)
        throw std::invalid_argument(
            "coset: enumeration capped at 2^20 assignments; "
            "use sampled_key_uniformity for wider keys");

    // XOR of the known parts; erased parts contribute the enumerated bits
    BitVec known(width, 0);
    for (std::size_t i = 0; i < parts.parts.size(); ++i) {
        if (parts.erased.empty() || !parts.erased[i])
            xor_into(known, parts.parts[i]);
    }
    std::uint64_t base = key_index(known);

    std::vector<std::uint64_t> counts(std::uint64_t{1} << width, 0);
    if (erased == 0) {
        counts[base] = 1;
        return counts;
    }
    // The distilled key is base XOR (XOR of the erased parts); the erased
    // assignment enumerates all 2^unknown_bits values, and the key only
    // depends on the columnwise parity of the assignment.
    std::uint64_t mask = (std::uint64_t{1} << width) - 1;
    for (std::uint64_t assign = 0; assign < (std::uint64_t{1} << unknown_bits);
         ++assign) {
        std::uint64_t parity = 0;
        for (std::uint64_t part = 0; part < erased; ++part)
            parity ^= (assign >> (part * width)) & mask;
        ++counts[base ^ parity];
    }
    return counts;
}

std::uint64_t eve_posterior_support(const KeyParts& parts)
{
    std::vector<std::uint64_t> counts = eve_posterior_counts(parts);
    std::uint64_t support = 0;
    for (std::uint64_t c : counts)
        support += c != 0 ? 1 : 0;
    return support;
}

UniformityCheck sampled_key_uniformity(const KeyParts& parts,
                                       std::uint64_t samples,
                                       RngStream& stream, int window_bits)
{
    std::size_t width = checked_width(parts);
    std::uint64_t erased = erased_count(parts);
    if (erased == 0)
        throw std::invalid_argument(
            "coset: sampled uniformity needs at least one erased part");
    if (window_bits < 1)
        throw std::invalid_argument("coset: window_bits must be >= 1");
    std::size_t window = std::min<std::size_t>(
        static_cast<std::size_t>(window_bits), width);
    if (samples < (std::uint64_t{1} << window) * 10)
        throw std::invalid_argument(
            "coset: need at least 10 samples per chi-square cell");

    BitVec known(width, 0);
    for (std::size_t i = 0; i < parts.parts.size(); ++i) {
        if (!parts.erased[i])
            xor_into(known, parts.parts[i]);
    }

    std::vector<std::uint64_t> counts(std::uint64_t{1} << window, 0);
    BitVec key(width);
    for (std::uint64_t s = 0; s < samples; ++s) {
        key = known;
        for (std::uint64_t part = 0; part < erased; ++part) {
            BitVec completion = random_bits(width, stream);
            xor_into(key, completion);
        }
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < window; ++j)
            v |= static_cast<std::uint64_t>(key[j]) << j;
        ++counts[v];
    }

    double expected = static_cast<double>(samples)
        / static_cast<double>(counts.size());
    double chi = 0.0;
    for (std::uint64_t c : counts) {
        double d = static_cast<double>(c) - expected;
        chi += d * d / expected;
    }
    UniformityCheck check;
    check.chi_square = chi;
    check.dof = counts.size() - 1;
    check.samples = samples;
    double dof = static_cast<double>(check.dof);
    check.plausible = std::fabs(chi - dof) < 5.0 * std::sqrt(2.0 * dof);
    return check;
}

} // namespace arqkey::coset
