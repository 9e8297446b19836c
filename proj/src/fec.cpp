#include "arqkey/fec.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace arqkey::fec {

namespace {
const double inv_sqrt2 = 0.70710678118654752440;
} // namespace

double ConvCodeSpec::code_rate() const
{
    std::size_t kept = 0;
    for (std::uint8_t m : puncture)
        kept += m ? 1 : 0;
    return 0.5 * static_cast<double>(puncture.size()) / static_cast<double>(kept);
}

void ConvCodeSpec::validate() const
{
    if (constraint_length < 2 || constraint_length > 16)
        throw std::invalid_argument("ConvCodeSpec: bad constraint length");
    unsigned limit = 1u << constraint_length;
    if (gen_a == 0 || gen_b == 0 || gen_a >= limit || gen_b >= limit)
        throw std::invalid_argument("ConvCodeSpec: bad generator taps");
    if (puncture.empty())
        throw std::invalid_argument("ConvCodeSpec: empty puncture mask");
    if (std::find(puncture.begin(), puncture.end(), std::uint8_t{1})
        == puncture.end())
        throw std::invalid_argument("ConvCodeSpec: puncture mask drops everything");
}

ConvCodeSpec ConvCodeSpec::k7_133_171()
{
    ConvCodeSpec code;
    code.constraint_length = 7;
    code.gen_a = 0133; // 1011011
    code.gen_b = 0171; // 1111001
    code.puncture = puncture_rate_1_2();
    return code;
}

std::vector<std::uint8_t> ConvCodeSpec::puncture_rate_1_2()
{
    return {1, 1};
}

std::vector<std::uint8_t> ConvCodeSpec::puncture_rate_2_3()
{
    return {1, 1, 0, 1};
}

std::vector<std::uint8_t> ConvCodeSpec::puncture_rate_3_4()
{
    return {1, 1, 0, 1, 1, 0};
}

EncodeStep encode_step(const ConvCodeSpec& code, unsigned state, int bit)
{
    unsigned reg = (static_cast<unsigned>(bit) << code.memory()) | state;
    EncodeStep step;
    step.out_a = std::popcount(reg & code.gen_a) & 1;
    step.out_b = std::popcount(reg & code.gen_b) & 1;
    step.next_state = reg >> 1;
    return step;
}

BitVec conv_encode(const ConvCodeSpec& code, const BitVec& info)
{
    code.validate();
    if (info.empty())
        throw std::invalid_argument("conv_encode: empty input");
    BitVec out;
    out.reserve(2 * (info.size() + code.memory()));
    unsigned state = 0;
    auto push = [&](int bit) {
        EncodeStep step = encode_step(code, state, bit);
        out.push_back(static_cast<std::uint8_t>(step.out_a));
        out.push_back(static_cast<std::uint8_t>(step.out_b));
        state = step.next_state;
    };
    for (std::uint8_t bit : info)
        push(bit);
    for (int i = 0; i < code.memory(); ++i)
        push(0);
    // state drained back to zero by the flush bits
    BitVec punctured;
    punctured.reserve(out.size());
    std::size_t period = code.puncture.size();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (code.puncture[i % period])
            punctured.push_back(out[i]);
    }
    return punctured;
}

std::size_t coded_length(const ConvCodeSpec& code, std::size_t info_bits)
{
    std::size_t mother = 2 * (info_bits + static_cast<std::size_t>(code.memory()));
    std::size_t period = code.puncture.size();
    std::size_t kept = 0;
    for (std::size_t i = 0; i < mother; ++i)
        kept += code.puncture[i % period] ? 1 : 0;
    return kept;
}

BitVec viterbi_decode(const ConvCodeSpec& code,
                      const std::vector<BitMetric>& metrics,
                      std::size_t info_bits)
{
    code.validate();
    if (info_bits == 0)
        throw std::invalid_argument("viterbi_decode: info_bits must be >= 1");
    if (metrics.size() != coded_length(code, info_bits))
        throw std::invalid_argument(
            "viterbi_decode: metric count does not match the coded length");

    std::size_t steps = info_bits + static_cast<std::size_t>(code.memory());
    std::size_t period = code.puncture.size();

    // re-inflate to mother metrics; dropped positions cost nothing either way
    std::vector<BitMetric> mother(2 * steps);
    std::size_t src = 0;
    for (std::size_t i = 0; i < mother.size(); ++i)
        mother[i] = code.puncture[i % period] ? metrics[src++] : BitMetric{0.0, 0.0};

    int n_states = code.states();
    if (n_states > 64)
        throw std::invalid_argument("viterbi_decode: more than 64 states");
    unsigned state_mask = static_cast<unsigned>(n_states - 1);
    int newest_shift = code.memory() - 1;

    // branch outputs as 2-bit codes (out_a << 1 | out_b), indexed [state][input]
    std::vector<std::array<int, 2>> out2(static_cast<std::size_t>(n_states));
    for (int p = 0; p < n_states; ++p) {
        for (int u = 0; u < 2; ++u) {
            EncodeStep step = encode_step(code, static_cast<unsigned>(p), u);
            out2[static_cast<std::size_t>(p)][u] = (step.out_a << 1) | step.out_b;
        }
    }

    const double big = 1e30;
    std::vector<double> cur(static_cast<std::size_t>(n_states), big);
    std::vector<double> nxt(static_cast<std::size_t>(n_states));
    cur[0] = 0.0;
    std::vector<std::uint64_t> decisions(steps, 0);

    for (std::size_t t = 0; t < steps; ++t) {
        const BitMetric& ma = mother[2 * t];
        const BitMetric& mb = mother[2 * t + 1];
        double bm[4] = {ma.cost0 + mb.cost0, ma.cost0 + mb.cost1,
                        ma.cost1 + mb.cost0, ma.cost1 + mb.cost1};
        std::uint64_t dec = 0;
        for (int s = 0; s < n_states; ++s) {
            int u = (s >> newest_shift) & 1;
            unsigned p0 = (static_cast<unsigned>(s) << 1) & state_mask;
            unsigned p1 = p0 | 1u;
            double c0 = cur[p0] + bm[out2[p0][u]];
            double c1 = cur[p1] + bm[out2[p1][u]];
            if (c1 < c0) {
                nxt[static_cast<std::size_t>(s)] = c1;
                dec |= std::uint64_t{1} << s;
            } else {
                nxt[static_cast<std::size_t>(s)] = c0;
            }
        }
        decisions[t] = dec;
        cur.swap(nxt);
    }

    // zero-terminated: the ML path ends in state 0
    BitVec path(steps);
    unsigned s = 0;
    for (std::size_t t = steps; t-- > 0;) {
        unsigned b = (decisions[t] >> s) & 1u;
        path[t] = static_cast<std::uint8_t>((s >> newest_shift) & 1u);
        s = ((s << 1) | b) & state_mask;
    }
    path.resize(info_bits); // drop the flush bits
    return path;
}

int bits_per_symbol(Modulation mod)
{
    return mod == Modulation::Bpsk ? 1 : 2;
}

std::vector<std::complex<double>> modulate(const BitVec& bits, Modulation mod)
{
    std::vector<std::complex<double>> symbols;
    if (mod == Modulation::Bpsk) {
        symbols.reserve(bits.size());
        for (std::uint8_t b : bits)
            symbols.emplace_back(b ? -1.0 : 1.0, 0.0);
        return symbols;
    }
    symbols.reserve((bits.size() + 1) / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2) {
        double re = (bits[i] ? -1.0 : 1.0) * inv_sqrt2;
        std::uint8_t bq = i + 1 < bits.size() ? bits[i + 1] : std::uint8_t{0};
        double im = (bq ? -1.0 : 1.0) * inv_sqrt2;
        symbols.emplace_back(re, im);
    }
    return symbols;
}

std::vector<BitMetric> bit_metrics(const std::vector<std::complex<double>>& received,
                                   double scale, Modulation mod,
                                   std::size_t bit_count, bool soft_decision)
{
    auto rail_cost = [&](double y, std::uint8_t bit, double level) {
        double d = y - scale * (bit ? -level : level);
        return d * d;
    };
    std::vector<BitMetric> metrics(bit_count);
    if (mod == Modulation::Bpsk) {
        if (received.size() != bit_count)
            throw std::invalid_argument("bit_metrics: symbol count mismatch");
        for (std::size_t i = 0; i < bit_count; ++i) {
            double y = received[i].real();
            if (soft_decision) {
                metrics[i] = {rail_cost(y, 0, 1.0), rail_cost(y, 1, 1.0)};
            } else {
                std::uint8_t hard = y < 0.0 ? 1 : 0;
                metrics[i] = {hard == 0 ? 0.0 : 1.0, hard == 1 ? 0.0 : 1.0};
            }
        }
        return metrics;
    }
    if (received.size() != (bit_count + 1) / 2)
        throw std::invalid_argument("bit_metrics: symbol count mismatch");
    for (std::size_t i = 0; i < bit_count; ++i) {
        double y = (i % 2 == 0) ? received[i / 2].real() : received[i / 2].imag();
        if (soft_decision) {
            metrics[i] = {rail_cost(y, 0, inv_sqrt2), rail_cost(y, 1, inv_sqrt2)};
        } else {
            std::uint8_t hard = y < 0.0 ? 1 : 0;
            metrics[i] = {hard == 0 ? 0.0 : 1.0, hard == 1 ? 0.0 : 1.0};
        }
    }
    return metrics;
}

void PacketSpec::validate() const
{
    if (info_bits < 1)
        throw std::invalid_argument("PacketSpec: info_bits must be >= 1");
}

double PacketSpec::info_rate(const ConvCodeSpec& code) const
{
    double rate = coded ? code.code_rate() : 1.0;
    return rate * bits_per_symbol(modulation);
}

std::string scheme_label(const PacketSpec& pkt)
{
    std::string label = pkt.coded ? "coded-" : "uncoded-";
    label += pkt.modulation == Modulation::Bpsk ? "bpsk" : "qpsk";
    return label;
}

namespace {

struct Received {
    std::vector<std::complex<double>> bob;
    std::vector<std::complex<double>> eve;
};

// noise is drawn bob-I, bob-Q, eve-I, eve-Q per symbol, in symbol order
Received transmit(const std::vector<std::complex<double>>& symbols,
                  double scale_bob, double scale_eve, RngStream& stream)
{
    Received rx;
    rx.bob.reserve(symbols.size());
    rx.eve.reserve(symbols.size());
    for (const auto& x : symbols) {
        double nbi = stream.gaussian() * inv_sqrt2;
        double nbq = stream.gaussian() * inv_sqrt2;
        double nei = stream.gaussian() * inv_sqrt2;
        double neq = stream.gaussian() * inv_sqrt2;
        rx.bob.emplace_back(scale_bob * x.real() + nbi, scale_bob * x.imag() + nbq);
        rx.eve.emplace_back(scale_eve * x.real() + nei, scale_eve * x.imag() + neq);
    }
    return rx;
}

BitVec decode_bits(const PacketSpec& pkt, const ConvCodeSpec& code,
                   const std::vector<std::complex<double>>& received,
                   double scale, std::size_t coded_bits, bool soft)
{
    std::vector<BitMetric> metrics =
        bit_metrics(received, scale, pkt.modulation, coded_bits, soft);
    if (!pkt.coded) {
        BitVec bits(coded_bits);
        for (std::size_t i = 0; i < coded_bits; ++i)
            bits[i] = metrics[i].cost1 < metrics[i].cost0 ? 1 : 0;
        return bits;
    }
    return viterbi_decode(code, metrics, static_cast<std::size_t>(pkt.info_bits));
}

int symbol_errors(const std::vector<std::complex<double>>& sent,
                  const std::vector<std::complex<double>>& reencoded)
{
    int errors = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) {
        if (sent[i] != reencoded[i])
            ++errors;
    }
    return errors;
}

} // namespace

LinkOutcome simulate_link(const PacketSpec& pkt, const ConvCodeSpec& code,
                          const fading::BlockGains& gains, double power,
                          RngStream& stream, const EveModel& eve,
                          const DecodeOptions& opts)
{
    pkt.validate();
    if (pkt.coded)
        code.validate();
    if (eve.genie_symbol_budget < 0)
        throw std::invalid_argument("EveModel: negative genie budget");

    BitVec info = random_bits(static_cast<std::size_t>(pkt.info_bits), stream);
    BitVec coded = pkt.coded ? conv_encode(code, info) : info;
    std::vector<std::complex<double>> symbols = modulate(coded, pkt.modulation);

    double scale_bob = std::sqrt(power * gains.h_bob);
    double scale_eve = std::sqrt(power * gains.h_eve);
    Received rx = transmit(symbols, scale_bob, scale_eve, stream);

    BitVec bob_bits = decode_bits(pkt, code, rx.bob, scale_bob, coded.size(),
                                  opts.soft_decision);
    bool bob_ok = pkt.coded ? bob_bits == info : bob_bits == coded;

    bool eve_exact_required = eve.pre_decode_cleanup;
    if (eve.pre_decode_cleanup && eve.genie_symbol_budget > 0) {
        // the genie repairs her noisiest symbols before she decodes
        std::size_t budget = std::min<std::size_t>(
            static_cast<std::size_t>(eve.genie_symbol_budget), symbols.size());
        std::vector<std::size_t> order(symbols.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::partial_sort(order.begin(), order.begin() + budget, order.end(),
                          [&](std::size_t a, std::size_t b) {
                              double da = std::norm(rx.eve[a] - scale_eve * symbols[a]);
                              double db = std::norm(rx.eve[b] - scale_eve * symbols[b]);
                              if (da != db)
                                  return da > db;
                              return a < b;
                          });
        for (std::size_t i = 0; i < budget; ++i)
            rx.eve[order[i]] = scale_eve * symbols[order[i]];
    }

    BitVec eve_bits = decode_bits(pkt, code, rx.eve, scale_eve, coded.size(),
                                  opts.soft_decision);
    BitVec eve_coded = pkt.coded ? conv_encode(code, eve_bits) : eve_bits;
    int residual = symbol_errors(symbols, modulate(eve_coded, pkt.modulation));

    LinkOutcome outcome;
    outcome.bob_ok = bob_ok;
    outcome.eve_residual_symbol_errors = residual;
    if (eve_exact_required)
        outcome.eve_ok = (pkt.coded ? eve_bits == info : eve_bits == coded);
    else
        outcome.eve_ok = residual <= eve.genie_symbol_budget;
    return outcome;
}

std::vector<SchemeResult>
key_rate_sweep(const std::vector<PacketSpec>& schemes,
               const std::vector<double>& snr_db_list, double target_outage,
               std::uint64_t trials_per_point, std::uint64_t seed,
               const ConvCodeSpec& code, const EveModel& eve,
               const DecodeOptions& opts)
{
    if (trials_per_point < 10000)
        throw std::invalid_argument(
            "key_rate_sweep: needs at least 10^4 trials per point");
    if (!(target_outage > 0.0) || !(target_outage < 1.0))
        throw std::invalid_argument("key_rate_sweep: target must be in (0,1)");

    std::vector<SchemeResult> results;
    results.reserve(schemes.size() * snr_db_list.size());
    std::uint64_t point = 0;
    for (const PacketSpec& pkt : schemes) {
        pkt.validate();
        for (double snr_db : snr_db_list) {
            double power = std::pow(10.0, snr_db / 10.0);
            fading::ChannelSpec spec(1.0, 1.0, power);
            std::uint64_t bob_hits = 0, eve_hits = 0;
            for (std::uint64_t t = 0; t < trials_per_point; ++t) {
                RngStream stream(seed, point * trials_per_point + t);
                fading::BlockGains gains = fading::sample_block(spec, stream);
                LinkOutcome outcome =
                    simulate_link(pkt, code, gains, power, stream, eve, opts);
                bob_hits += outcome.bob_ok ? 1 : 0;
                eve_hits += outcome.eve_ok ? 1 : 0;
            }
            double n = static_cast<double>(trials_per_point);
            SchemeResult r;
            r.scheme = pkt;
            r.snr_db = snr_db;
            r.trials = trials_per_point;
            r.bob_success = static_cast<double>(bob_hits) / n;
            r.eve_success = static_cast<double>(eve_hits) / n;
            r.info_rate = pkt.info_rate(code);
            // all k frames must be intercepted; fading is independent per
            // frame, so the intercept probability of a k-deep key is q^k
            if (eve_hits == 0) {
                r.key_frames = 1;
                r.feasible = true;
            } else if (r.eve_success >= 1.0 - 1.0 / n) {
                r.key_frames = 0;
                r.feasible = false;
            } else {
                r.key_frames = static_cast<std::uint64_t>(std::ceil(
                    std::log(target_outage) / std::log(r.eve_success)));
                if (r.key_frames < 1)
                    r.key_frames = 1;
                r.feasible = true;
            }
            r.key_rate = r.feasible
                ? r.info_rate * r.bob_success / static_cast<double>(r.key_frames)
                : 0.0;
            results.push_back(r);
            ++point;
        }
    }
    return results;
}

} // namespace arqkey::fec
