#ifndef ARQKEY_FADING_HPP
#define ARQKEY_FADING_HPP

#include "arqkey/rng.hpp"

namespace arqkey::fading {

enum class FadingLaw { Rayleigh };

// Static description of the two-receiver block-fading channel: per-block
// power gains are drawn independently for the intended receiver ("bob") and
// the eavesdropper ("eve") and stay constant within a block.
struct ChannelSpec {
    double mean_gain_bob;
    double mean_gain_eve;
    double power;
    FadingLaw distribution;

    ChannelSpec(double mean_bob, double mean_eve, double transmit_power,
                FadingLaw law = FadingLaw::Rayleigh);
};

struct BlockGains {
    double h_bob;
    double h_eve;
};

// Rayleigh amplitude fading gives exponentially distributed power gains.
BlockGains sample_block(const ChannelSpec& spec, RngStream& stream);

// Gaussian-input mutual information of a block with power gain h, in
// bits per channel use: log2(1 + h * P).
double mutual_info(double gain, double power);

// The receiver decodes iff the code rate is within the block's capacity.
// Equality counts as success; it has probability zero under any
// continuous fading law, so the choice only matters for hand-built cases.
bool bob_decodes(double frame_rate, double gain, double power);

// Eve's channel erases the frame iff her capacity falls below the rate
// gap frame_rate - genie_rate that the genie concedes her.
bool eve_erased(double frame_rate, double genie_rate, double gain, double power);

} // namespace arqkey::fading

#endif
