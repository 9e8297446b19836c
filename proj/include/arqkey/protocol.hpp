#ifndef ARQKEY_PROTOCOL_HPP
#define ARQKEY_PROTOCOL_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "arqkey/analysis.hpp"
#include "arqkey/bitvec.hpp"
#include "arqkey/fading.hpp"
#include "arqkey/rng.hpp"

namespace arqkey::protocol {

struct ProtocolParams {
    analysis::OperatingPoint point;
    int payload_bits;        // key-part bits carried per frame
    std::uint64_t max_frames; // safety cap on total transmissions
    std::uint64_t seed;

    // max_frames = 0 picks the default cap of 1000 * k.
    ProtocolParams(const analysis::OperatingPoint& pt, int payload = 128,
                   std::uint64_t cap = 0, std::uint64_t seed_value = 0);
};

struct FrameRecord {
    std::uint64_t index;
    fading::BlockGains gains;
    BitVec payload;
    bool bob_acked;       // frame rate within Bob's block capacity
    bool eve_intercepted; // Eve not erased on this block
};

// Full audit record of one ARQ key exchange. The feedback channel is
// error-free, so key_alice == key_bob in every trace; both are kept so tests
// assert rather than assume it. Keys are the concatenation of the ACKed
// payloads, in ACK order (k * payload_bits bits when completed).
struct ExchangeTrace {
    std::vector<FrameRecord> frames;
    std::vector<std::uint64_t> acked_indices;
    BitVec key_alice;
    BitVec key_bob;
    bool eve_full_intercept; // Eve intercepted every ACKed frame
    bool completed;          // k ACKs before hitting max_frames
};

// One stop-and-wait exchange: each frame gets fresh gains and a fresh
// random payload (NACKed payloads are never resent), Bob ACKs iff his
// block supports the frame rate, and the loop ends at k ACKs or at the
// max_frames cap (completed = false, partial trace returned).
ExchangeTrace run_exchange(const ProtocolParams& params,
                           const fading::ChannelSpec& spec, RngStream& stream);

// Recomputes eve_full_intercept from the frames and ACK list; NACKed
// frames must never influence the result.
bool derive_eve_full_intercept(const ExchangeTrace& trace);

// Aggregates over independent exchanges. Exchange i draws from a stream
// derived from (params.seed, i), so results do not depend on evaluation
// order and any subset can be reproduced in isolation.
struct BatchStats {
    std::uint64_t exchanges;
    std::uint64_t completed;
    std::uint64_t incomplete;           // excluded from the estimates
    double outage;                      // fraction of completed exchanges
    double outage_std_error;            //   with eve_full_intercept
    double key_throughput;              // R0 * completed / total frames,
    double key_throughput_std_error;    //   bits per channel use
    double mean_frames;                 // mean transmissions per exchange
    double mean_frames_std_error;
};

BatchStats simulate_batch(const ProtocolParams& params,
                          const fading::ChannelSpec& spec,
                          std::uint64_t exchanges);

// Probability that Eve intercepts all key-carrying frames, over completed
// exchanges, with binomial standard error.
analysis::McEstimate estimate_outage(const ProtocolParams& params,
                                     const fading::ChannelSpec& spec,
                                     std::uint64_t exchanges);

// Secret key bits per channel use. Ratio-of-totals estimator
// R0 * (#completed exchanges) / (total frames sent), which converges to
// R0 / E[frames per exchange]; the standard error comes from the delta
// method on the frame-count mean.
analysis::McEstimate estimate_key_throughput(const ProtocolParams& params,
                                             const fading::ChannelSpec& spec,
                                             std::uint64_t exchanges);

// Trace serialization. Header lines start with '#' and carry the full
// parameter set; then one frame per line:
//   index h_bob h_eve acked intercepted payload_hex
// Gains use 17 significant digits so replay recomputes the ACK and
// interception flags bit-exactly.
struct TraceDocument {
    ProtocolParams params;
    fading::ChannelSpec spec;
    ExchangeTrace trace;
};

void write_trace(std::ostream& out, const ProtocolParams& params,
                 const fading::ChannelSpec& spec, const ExchangeTrace& trace);

// Throws std::runtime_error on malformed input.
TraceDocument read_trace(std::istream& in);

} // namespace arqkey::protocol

#endif
