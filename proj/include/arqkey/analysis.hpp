#ifndef ARQKEY_ANALYSIS_HPP
#define ARQKEY_ANALYSIS_HPP

#include <cstdint>
#include <vector>

#include "arqkey/fading.hpp"
#include "arqkey/rng.hpp"

namespace arqkey::analysis {

// One configuration of the ARQ key-sharing scheme: every frame is sent at
// frame_rate bits/use, the eavesdropper is conceded genie_rate bits/use of
// side information, and one key is distilled from key_frames ACKed frames.
struct OperatingPoint {
    double frame_rate;        // R0, bits per channel use
    double genie_rate;        // Rc, bits per channel use
    double power;             // linear transmit power (unit noise variance)
    std::uint64_t key_frames; // k, frames combined into one key

    OperatingPoint(double r0, double rc, double p, std::uint64_t k);
};

struct McEstimate {
    double value;
    double std_error; // +inf when undefined (single trial)
};

// Everything the closed forms say about one operating point.
struct RateReport {
    double secrecy_rate;         // ergodic secrecy rate objective at R0
    double erasure_secrecy_rate; // erasure-wiretap objective at (R0, Rc)
    double outage_probability;
    double avg_transmissions;    // expected total frames for k ACKs
    double key_rate;             // secret bits per channel use
};

// Secrecy rate objective at fixed rate for symmetric unit-mean Rayleigh
// fading:
//
//   exp(-(2^R0-1)/P) * { R0 - (e^(1/P)/ln 2) * [E1(1/P) - E1(2^R0/P)] }
//
// The brace equals E[(R0 - log2(1+hP))+] over an exponential gain h, so the
// result is nonnegative. Evaluated via the scaled integral e^x E1(x) to stay
// finite at small P. Throws std::domain_error for P <= 0.
double secrecy_rate_rayleigh(double frame_rate, double power);

// Monte Carlo counterpart of secrecy_rate_rayleigh for arbitrary mean gains:
// per trial, an independent gain pair scores 1{bob decodes at R0} times
// Eve's rate deficit (R0 - log2(1+h_e P))+. Unbiased for the product form
// because the two gains are independent.
McEstimate secrecy_rate_mc(double frame_rate, const fading::ChannelSpec& spec,
                           std::uint64_t trials, RngStream& stream);

// Erasure-wiretap rate objective: R0 * Pr(bob decodes) * Pr(eve erased).
// Zero whenever genie_rate >= frame_rate (Eve is never erased).
double erasure_secrecy_rate(const OperatingPoint& pt);

// Probability that Eve intercepts all k key-carrying frames:
// exp(-(k/P)(2^(R0-Rc)-1)) for R0 > Rc, else 1.
double outage_probability(const OperatingPoint& pt);

// log10 of the above; stays informative when the probability underflows.
double log10_outage_probability(const OperatingPoint& pt);

// Expected total transmissions until k ACKs: k * exp((2^R0-1)/P).
// +inf at P = 0 with R0 > 0.
double avg_transmissions(const OperatingPoint& pt);

// Secret key bits per channel use: (R0/k) * exp(-(2^R0-1)/P).
double key_rate(const OperatingPoint& pt);

RateReport rate_report(const OperatingPoint& pt);

enum class RateObjective { SecrecyRate, ErasureSecrecyRate };

struct GridPoint {
    double frame_rate;
    double power;
    double value;
};

struct OptimizeOptions {
    double max_rate = 25.0;  // R0 search ceiling, bits/use
    int rate_points = 200;   // coarse linear grid in R0
    int power_points = 16;   // coarse log grid in (0, max_power]
    double tolerance = 1e-8; // golden-section bracket width on R0
};

struct Optimum {
    double frame_rate;
    double power;
    double value;
    bool degenerate;              // objective vanished over the whole box
    std::vector<GridPoint> trace; // coarse grid evaluations
};

// Maximizes the chosen objective over R0 in (0, max_rate] and power in
// (0, max_power]: coarse grid, then golden-section refinement in R0 at the
// best power. genie_rate only matters for the erasure objective.
// Deterministic; ties broken toward the smaller R0.
Optimum optimize_rate(RateObjective objective, double max_power,
                      double genie_rate = 0.0,
                      const OptimizeOptions& options = {});

struct TradeoffPoint {
    double frame_rate;
    std::uint64_t key_frames;
    double key_rate;
    double outage;       // 0 when it underflows; see log10_outage
    double log10_outage;
    bool feasible;       // false iff frame_rate <= genie_rate
    bool truncated;      // hit the key-frames cap before the target
};

// Outage/key-rate tradeoff: for each rate, walks k = 1, 2, ... emitting one
// point per k until the outage target is met (last emitted point meets it).
// Rates at or below genie_rate yield a single infeasible marker entry.
std::vector<TradeoffPoint>
tradeoff_sweep(double genie_rate, double power,
               const std::vector<double>& frame_rates, double target_outage,
               std::uint64_t max_key_frames = 1000000);

} // namespace arqkey::analysis

#endif
