#include "arqkey/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "arqkey/exp_integral.hpp"

namespace arqkey::analysis {

namespace {

const double ln2 = 0.69314718055994530942;
const double inf = std::numeric_limits<double>::infinity();

// Pr(log2(1 + hP) >= R0) for an exponential unit-mean gain h.
double success_probability(double frame_rate, double power)
{
    if (power <= 0.0)
        return frame_rate > 0.0 ? 0.0 : 1.0;
    return std::exp(-std::expm1(frame_rate * ln2) / power);
}

} // namespace

OperatingPoint::OperatingPoint(double r0, double rc, double p, std::uint64_t k)
    : frame_rate(r0), genie_rate(rc), power(p), key_frames(k)
{
    if (!(frame_rate > 0.0) || !std::isfinite(frame_rate))
        throw std::invalid_argument("OperatingPoint: frame_rate must be > 0");
    if (!(genie_rate >= 0.0) || !std::isfinite(genie_rate))
        throw std::invalid_argument("OperatingPoint: genie_rate must be >= 0");
    if (!(power >= 0.0) || !std::isfinite(power))
        throw std::invalid_argument("OperatingPoint: power must be >= 0");
    if (key_frames < 1)
        throw std::invalid_argument("OperatingPoint: key_frames must be >= 1");
}

double secrecy_rate_rayleigh(double frame_rate, double power)
{
    if (!(power > 0.0))
        throw std::domain_error("secrecy_rate_rayleigh: requires power > 0");
    if (!(frame_rate >= 0.0))
        throw std::domain_error("secrecy_rate_rayleigh: requires frame_rate >= 0");
    if (frame_rate == 0.0)
        return 0.0;

    // success = exp(-(2^R0-1)/P); the identity e^(1/P) E1(2^R0/P) =
    // success * e^(2^R0/P) E1(2^R0/P) lets everything run through the
    // scaled integral, so nothing overflows at small P.
    double success = success_probability(frame_rate, power);
    double deficit = frame_rate
        - (exp_integral_e1_scaled(1.0 / power)
           - success * exp_integral_e1_scaled(std::exp2(frame_rate) / power))
            / ln2;
    // deficit is E[(R0 - log2(1+hP))+], nonnegative up to rounding
    return success * std::max(deficit, 0.0);
}

McEstimate secrecy_rate_mc(double frame_rate, const fading::ChannelSpec& spec,
                           std::uint64_t trials, RngStream& stream)
{
    if (trials < 1)
        throw std::invalid_argument("secrecy_rate_mc: trials must be >= 1");
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        fading::BlockGains g = fading::sample_block(spec, stream);
        double z = 0.0;
        if (fading::bob_decodes(frame_rate, g.h_bob, spec.power)) {
            double deficit = frame_rate - fading::mutual_info(g.h_eve, spec.power);
            z = std::max(deficit, 0.0);
        }
        sum += z;
        sum_sq += z * z;
    }
    double n = static_cast<double>(trials);
    McEstimate est;
    est.value = sum / n;
    if (trials < 2) {
        est.std_error = inf;
    } else {
        double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
        est.std_error = std::sqrt(var / n);
    }
    return est;
}

double erasure_secrecy_rate(const OperatingPoint& pt)
{
    if (pt.genie_rate >= pt.frame_rate)
        return 0.0;
    if (pt.power <= 0.0)
        return 0.0;
    double erased = -std::expm1(
        -std::expm1((pt.frame_rate - pt.genie_rate) * ln2) / pt.power);
    return pt.frame_rate * success_probability(pt.frame_rate, pt.power) * erased;
}

double log10_outage_probability(const OperatingPoint& pt)
{
    if (pt.frame_rate <= pt.genie_rate)
        return 0.0; // probability 1
    if (pt.power <= 0.0)
        return -inf;
    double exponent = -(static_cast<double>(pt.key_frames) / pt.power)
        * std::expm1((pt.frame_rate - pt.genie_rate) * ln2);
    return exponent / 2.302585092994045684; // ln 10
}

double outage_probability(const OperatingPoint& pt)
{
    if (pt.frame_rate <= pt.genie_rate)
        return 1.0;
    if (pt.power <= 0.0)
        return 0.0;
    double exponent = -(static_cast<double>(pt.key_frames) / pt.power)
        * std::expm1((pt.frame_rate - pt.genie_rate) * ln2);
    return std::exp(exponent);
}

double avg_transmissions(const OperatingPoint& pt)
{
    double k = static_cast<double>(pt.key_frames);
    if (pt.power <= 0.0)
        return pt.frame_rate > 0.0 ? inf : k;
    return k * std::exp(std::expm1(pt.frame_rate * ln2) / pt.power);
}

double key_rate(const OperatingPoint& pt)
{
    double k = static_cast<double>(pt.key_frames);
    return (pt.frame_rate / k) * success_probability(pt.frame_rate, pt.power);
}

RateReport rate_report(const OperatingPoint& pt)
{
    RateReport r;
    r.secrecy_rate = secrecy_rate_rayleigh(pt.frame_rate, pt.power);
    r.erasure_secrecy_rate = erasure_secrecy_rate(pt);
    r.outage_probability = outage_probability(pt);
    r.avg_transmissions = avg_transmissions(pt);
    r.key_rate = key_rate(pt);
    return r;
}

namespace {

double objective_value(RateObjective objective, double frame_rate,
                       double power, double genie_rate)
{
    if (objective == RateObjective::SecrecyRate)
        return secrecy_rate_rayleigh(frame_rate, power);
    return erasure_secrecy_rate(OperatingPoint(frame_rate, genie_rate, power, 1));
}

} // namespace

Optimum optimize_rate(RateObjective objective, double max_power,
                      double genie_rate, const OptimizeOptions& options)
{
    if (!(max_power > 0.0))
        throw std::invalid_argument("optimize_rate: max_power must be > 0");
    if (options.rate_points < 2 || options.power_points < 1)
        throw std::invalid_argument("optimize_rate: bad grid sizes");

    auto eval = [&](double r0, double p) {
        return objective_value(objective, r0, p, genie_rate);
    };

    Optimum best;
    best.frame_rate = options.max_rate / options.rate_points;
    best.power = max_power;
    best.value = -1.0;
    best.degenerate = false;
    best.trace.reserve(static_cast<std::size_t>(options.rate_points)
                       * options.power_points);

    // Coarse scan. Log-spaced powers ending exactly at max_power (the
    // objective is nondecreasing in the power box, but we search rather
    // than assume); linear rates over (0, max_rate].
    double log_p_hi = std::log(max_power);
    double log_p_lo = log_p_hi - 13.8; // six decades below max_power
    for (int pi = 0; pi < options.power_points; ++pi) {
        double p = options.power_points == 1
            ? max_power
            : std::exp(log_p_lo
                       + (log_p_hi - log_p_lo) * pi / (options.power_points - 1));
        if (pi == options.power_points - 1)
            p = max_power;
        for (int ri = 1; ri <= options.rate_points; ++ri) {
            double r0 = options.max_rate * ri / options.rate_points;
            double v = eval(r0, p);
            best.trace.push_back({r0, p, v});
            // ties break toward the smallest R0 (and then smallest power,
            // since powers ascend and equal pairs keep the incumbent)
            if (v > best.value
                || (v == best.value && r0 < best.frame_rate)) {
                best.value = v;
                best.frame_rate = r0;
                best.power = p;
            }
        }
    }

    if (!(best.value > 0.0)) {
        best.degenerate = true;
        best.value = std::max(best.value, 0.0);
        return best;
    }

    // Golden-section refinement in R0 around the winning grid point at the
    // winning power; unimodal in practice, and the bracket always contains
    // the winning grid point so the result can only improve on the grid.
    double step = options.max_rate / options.rate_points;
    double lo = std::max(best.frame_rate - step, step * 1e-9);
    double hi = std::min(best.frame_rate + step, options.max_rate);
    const double phi = 0.61803398874989484820;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = eval(x1, best.power);
    double f2 = eval(x2, best.power);
    while (b - a > options.tolerance) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = eval(x2, best.power);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = eval(x1, best.power);
        }
    }
    double refined = 0.5 * (a + b);
    double refined_value = eval(refined, best.power);
    if (refined_value > best.value) {
        best.frame_rate = refined;
        best.value = refined_value;
    }
    return best;
}

std::vector<TradeoffPoint>
tradeoff_sweep(double genie_rate, double power,
               const std::vector<double>& frame_rates, double target_outage,
               std::uint64_t max_key_frames)
{
    // target 1 is allowed: it is met by k = 1 for every feasible rate
    if (!(target_outage > 0.0) || !(target_outage <= 1.0))
        throw std::invalid_argument("tradeoff_sweep: target must be in (0,1]");
    if (max_key_frames < 1)
        throw std::invalid_argument("tradeoff_sweep: max_key_frames must be >= 1");

    std::vector<TradeoffPoint> out;
    double log10_target = std::log10(target_outage);
    for (double r0 : frame_rates) {
        if (!(r0 > genie_rate)) {
            TradeoffPoint p;
            p.frame_rate = r0;
            p.key_frames = 0;
            p.key_rate = 0.0;
            p.outage = 1.0;
            p.log10_outage = 0.0;
            p.feasible = false;
            p.truncated = false;
            out.push_back(p);
            continue;
        }
        for (std::uint64_t k = 1; k <= max_key_frames; ++k) {
            OperatingPoint pt(r0, genie_rate, power, k);
            TradeoffPoint p;
            p.frame_rate = r0;
            p.key_frames = k;
            p.key_rate = key_rate(pt);
            p.log10_outage = log10_outage_probability(pt);
            p.outage = outage_probability(pt);
            p.feasible = true;
            p.truncated = false;
            bool met = p.log10_outage <= log10_target;
            if (!met && k == max_key_frames)
                p.truncated = true;
            out.push_back(p);
            if (met)
                break;
        }
    }
    return out;
}

} // namespace arqkey::analysis
