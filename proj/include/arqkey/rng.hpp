#ifndef ARQKEY_RNG_HPP
#define ARQKEY_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace arqkey {

// splitmix64 finalizer; used to spread (seed, index) pairs into
// well-separated engine seeds for independent substreams.
inline std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index)
{
    return mix64(seed ^ mix64(index ^ 0x6a09e667f3bcc909ULL));
}

// Deterministic random stream. The engine (mt19937_64) is fully specified by
// the standard; the distribution transforms are written out here (inverse CDF,
// Box-Muller) because the std:: distributions are not, and golden tests need
// the same sample sequence from the same seed on every platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}
    RngStream(std::uint64_t seed, std::uint64_t index)
        : engine_(substream_seed(seed, index)) {}

    std::uint64_t bits() { return engine_(); }

    // uniform on (0,1]; never 0, so log() below is always finite
    double uniform01()
    {
        return static_cast<double>((bits() >> 11) + 1) * 0x1.0p-53;
    }

    // inverse-CDF exponential with the given mean
    double exponential(double mean)
    {
        return -mean * std::log(uniform01());
    }

    // standard normal via Box-Muller, one spare cached per pair
    double gaussian()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double two_pi = 6.283185307179586476925286766559;
        double radius = std::sqrt(-2.0 * std::log(uniform01()));
        double angle = two_pi * uniform01();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace arqkey

#endif
