#ifndef ARQKEY_FEC_HPP
#define ARQKEY_FEC_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "arqkey/bitvec.hpp"
#include "arqkey/fading.hpp"
#include "arqkey/rng.hpp"

namespace arqkey::fec {

// Rate-1/2 mother code plus a cyclic keep-mask over its output bits.
// Tap masks put the current input at bit constraint_length-1 and the oldest
// register bit at bit 0, so the 133/171 generators read off their octal
// digits directly (1011011, 1111001).
struct ConvCodeSpec {
    int constraint_length;
    unsigned gen_a;
    unsigned gen_b;
    std::vector<std::uint8_t> puncture; // keep-mask, cyclic over output bits

    int memory() const { return constraint_length - 1; }
    int states() const { return 1 << memory(); }
    // nominal rate: 1/2 scaled up by the puncturing
    double code_rate() const;
    void validate() const; // throws std::invalid_argument

    static ConvCodeSpec k7_133_171();
    // standard DVB-style masks over [a1 b1 a2 b2 ...]
    static std::vector<std::uint8_t> puncture_rate_1_2(); // {1,1}
    static std::vector<std::uint8_t> puncture_rate_2_3(); // {1,1,0,1}
    static std::vector<std::uint8_t> puncture_rate_3_4(); // {1,1,0,1,1,0}
};

struct EncodeStep {
    int out_a;
    int out_b;
    unsigned next_state;
};

// One shift of the encoder register; shared by the encoder, the trellis
// builder, and the tests.
EncodeStep encode_step(const ConvCodeSpec& code, unsigned state, int bit);

// Zero-terminated (constraint_length-1 flush bits) and punctured.
BitVec conv_encode(const ConvCodeSpec& code, const BitVec& info);

// Punctured codeword length for a packet of info_bits.
std::size_t coded_length(const ConvCodeSpec& code, std::size_t info_bits);

// Per-coded-bit branch costs; the decoder minimizes their sum. Punctured
// positions are reinserted internally with neutral {0,0} metrics.
struct BitMetric {
    double cost0;
    double cost1;
};

// ML sequence decoding over the 64-state trellis, traceback from the zero
// state. metrics.size() must equal coded_length(code, info_bits).
BitVec viterbi_decode(const ConvCodeSpec& code,
                      const std::vector<BitMetric>& metrics,
                      std::size_t info_bits);

enum class Modulation { Bpsk, Qpsk };

int bits_per_symbol(Modulation mod);

// Unit-energy constellation points; QPSK maps bit pairs Gray-wise onto
// rails, (1-2b)/sqrt(2) each, and pads a zero bit if the count is odd.
std::vector<std::complex<double>> modulate(const BitVec& bits, Modulation mod);

// Costs of each hypothesis for every transmitted bit given the received
// symbols and the known coherent amplitude scale = sqrt(P * gain).
// bit_count tells QPSK whether the final Q rail is padding. Hard decision
// replaces squared distances with 0/1 disagreement costs.
std::vector<BitMetric> bit_metrics(const std::vector<std::complex<double>>& received,
                                   double scale, Modulation mod,
                                   std::size_t bit_count, bool soft_decision = true);

struct PacketSpec {
    int info_bits;
    Modulation modulation;
    bool coded;

    void validate() const;
    // information bits per channel use, by nominal code rate
    double info_rate(const ConvCodeSpec& code) const;
};

std::string scheme_label(const PacketSpec& pkt); // e.g. "coded-bpsk"

struct EveModel {
    int genie_symbol_budget = 50;
    // true: the budget repairs her noisiest symbols before decoding and
    // acceptance requires exact recovery; false (default): she decodes
    // as-is and the budget forgives residual symbol errors afterwards
    bool pre_decode_cleanup = false;
};

struct DecodeOptions {
    bool soft_decision = true;
};

struct LinkOutcome {
    bool bob_ok;
    bool eve_ok;
    int eve_residual_symbol_errors;
};

// One packet over one fading block: fresh random info bits, encode (or
// not), modulate, add unit-variance complex Gaussian noise per receiver,
// decode at both. Bob passes iff his info bits are exact; Eve passes per
// the Genie model.
LinkOutcome simulate_link(const PacketSpec& pkt, const ConvCodeSpec& code,
                          const fading::BlockGains& gains, double power,
                          RngStream& stream, const EveModel& eve = {},
                          const DecodeOptions& opts = {});

struct SchemeResult {
    PacketSpec scheme;
    double snr_db;
    double bob_success;       // p, fraction of trials Bob recovered
    double eve_success;       // q, fraction of trials Eve accepted
    std::uint64_t trials;
    std::uint64_t key_frames; // smallest k with q^k <= target, 0 if infeasible
    double key_rate;          // info_rate * p / k
    double info_rate;         // bits per channel use for this scheme
    bool feasible;            // false when q is too close to 1 to resolve
};

// Per (scheme, SNR in dB): Monte Carlo success probabilities over
// independent Rayleigh blocks at both receivers, then the smallest
// key-combining depth k meeting the outage target. Trial t of point j
// draws from a stream derived from (seed, j * trials + t).
std::vector<SchemeResult>
key_rate_sweep(const std::vector<PacketSpec>& schemes,
               const std::vector<double>& snr_db_list, double target_outage,
               std::uint64_t trials_per_point, std::uint64_t seed,
               const ConvCodeSpec& code = ConvCodeSpec::k7_133_171(),
               const EveModel& eve = {}, const DecodeOptions& opts = {});

} // namespace arqkey::fec

#endif
