#include "arqkey/fading.hpp"

#include <cmath>
#include <stdexcept>

namespace arqkey::fading {

ChannelSpec::ChannelSpec(double mean_bob, double mean_eve, double transmit_power,
                         FadingLaw law)
    : mean_gain_bob(mean_bob),
      mean_gain_eve(mean_eve),
      power(transmit_power),
      distribution(law)
{
    if (!(mean_gain_bob > 0.0) || !std::isfinite(mean_gain_bob))
        throw std::invalid_argument("ChannelSpec: mean_gain_bob must be positive");
    if (!(mean_gain_eve > 0.0) || !std::isfinite(mean_gain_eve))
        throw std::invalid_argument("ChannelSpec: mean_gain_eve must be positive");
    if (!(power >= 0.0) || !std::isfinite(power))
        throw std::invalid_argument("ChannelSpec: power must be nonnegative");
}

BlockGains sample_block(const ChannelSpec& spec, RngStream& stream)
{
    BlockGains g;
    g.h_bob = stream.exponential(spec.mean_gain_bob);
    g.h_eve = stream.exponential(spec.mean_gain_eve);
    return g;
}

double mutual_info(double gain, double power)
{
    return std::log1p(gain * power) * 1.4426950408889634074; // 1/ln 2
}

bool bob_decodes(double frame_rate, double gain, double power)
{
    return frame_rate <= mutual_info(gain, power);
}

bool eve_erased(double frame_rate, double genie_rate, double gain, double power)
{
    return frame_rate - genie_rate > mutual_info(gain, power);
}

} // namespace arqkey::fading
