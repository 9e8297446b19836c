#ifndef ARQKEY_COSET_HPP
#define ARQKEY_COSET_HPP

#include <cstdint>
#include <vector>

#include "arqkey/bitvec.hpp"
#include "arqkey/rng.hpp"

namespace arqkey::coset {

// The k ACKed key parts and Eve's view of them. The distilled key is the
// syndrome of the rate-(k-1)/k parity-check code over the concatenation,
// which is the columnwise XOR of the parts.
struct KeyParts {
    std::vector<BitVec> parts;
    std::vector<std::uint8_t> erased; // 1 = Eve lacks this part
};

struct DistilledKey {
    BitVec bits;
};

// XOR of all parts; throws std::invalid_argument on width mismatch or
// empty input.
DistilledKey distill(const KeyParts& parts);

// Number of distinct distilled keys consistent with Eve's known parts,
// by exhaustive enumeration of the erased parts: 2^width with any erasure,
// 1 with none. Enumeration is capped at 2^20 assignments
// (width * #erased <= 20); larger cases throw std::invalid_argument
// directing the caller to sampled_key_uniformity.
std::uint64_t eve_posterior_support(const KeyParts& parts);

// Completion count for every key value (index = key bits read LSB-first
// from column 0). Uniformity of this vector over the erased assignments is
// the blinding property. Same enumeration cap as eve_posterior_support.
std::vector<std::uint64_t> eve_posterior_counts(const KeyParts& parts);

struct UniformityCheck {
    double chi_square;
    std::uint64_t dof;     // cells - 1
    std::uint64_t samples;
    bool plausible;        // chi-square within 5 sigma of its mean
};

// Sampled stand-in for the exact enumeration when the key is too wide:
// draws uniform completions of the erased parts and chi-square-tests the
// distilled key, projected onto its first window_bits columns, against
// uniform. Requires at least one erased part.
UniformityCheck sampled_key_uniformity(const KeyParts& parts,
                                       std::uint64_t samples,
                                       RngStream& stream, int window_bits = 12);

} // namespace arqkey::coset

#endif
