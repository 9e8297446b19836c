#include "arqkey/protocol.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace arqkey::protocol {

namespace {
const double inf = std::numeric_limits<double>::infinity();
const double nan_value = std::numeric_limits<double>::quiet_NaN();
} // namespace

ProtocolParams::ProtocolParams(const analysis::OperatingPoint& pt, int payload,
                               std::uint64_t cap, std::uint64_t seed_value)
    : point(pt), payload_bits(payload), max_frames(cap), seed(seed_value)
{
    if (payload_bits < 1)
        throw std::invalid_argument("ProtocolParams: payload_bits must be >= 1");
    if (max_frames == 0)
        max_frames = 1000 * point.key_frames;
    if (max_frames < point.key_frames)
        throw std::invalid_argument("ProtocolParams: max_frames < key_frames");
}

ExchangeTrace run_exchange(const ProtocolParams& params,
                           const fading::ChannelSpec& spec, RngStream& stream)
{
    ExchangeTrace trace;
    trace.eve_full_intercept = true;
    const auto& pt = params.point;
    std::uint64_t index = 0;
    while (trace.acked_indices.size() < pt.key_frames
           && index < params.max_frames) {
        FrameRecord rec;
        rec.index = index;
        rec.gains = fading::sample_block(spec, stream);
        rec.payload = random_bits(static_cast<std::size_t>(params.payload_bits),
                                  stream);
        rec.bob_acked = fading::bob_decodes(pt.frame_rate, rec.gains.h_bob,
                                            spec.power);
        rec.eve_intercepted = !fading::eve_erased(pt.frame_rate, pt.genie_rate,
                                                  rec.gains.h_eve, spec.power);
        if (rec.bob_acked) {
            trace.acked_indices.push_back(index);
            // error-free public feedback: both sides keep the same part
            trace.key_alice.insert(trace.key_alice.end(), rec.payload.begin(),
                                   rec.payload.end());
            trace.key_bob.insert(trace.key_bob.end(), rec.payload.begin(),
                                 rec.payload.end());
        }
        trace.frames.push_back(std::move(rec));
        ++index;
    }
    trace.completed = trace.acked_indices.size() == pt.key_frames;
    trace.eve_full_intercept = derive_eve_full_intercept(trace);
    return trace;
}

bool derive_eve_full_intercept(const ExchangeTrace& trace)
{
    for (std::uint64_t idx : trace.acked_indices) {
        if (!trace.frames[idx].eve_intercepted)
            return false;
    }
    return true;
}

BatchStats simulate_batch(const ProtocolParams& params,
                          const fading::ChannelSpec& spec,
                          std::uint64_t exchanges)
{
    if (exchanges < 1)
        throw std::invalid_argument("simulate_batch: exchanges must be >= 1");

    std::uint64_t completed = 0;
    std::uint64_t intercepted = 0;
    double frames_sum = 0.0;
    double frames_sum_sq = 0.0;
    for (std::uint64_t i = 0; i < exchanges; ++i) {
        RngStream stream(params.seed, i);
        ExchangeTrace trace = run_exchange(params, spec, stream);
        if (!trace.completed)
            continue;
        ++completed;
        if (trace.eve_full_intercept)
            ++intercepted;
        double n = static_cast<double>(trace.frames.size());
        frames_sum += n;
        frames_sum_sq += n * n;
    }

    BatchStats stats;
    stats.exchanges = exchanges;
    stats.completed = completed;
    stats.incomplete = exchanges - completed;
    if (completed == 0) {
        stats.outage = nan_value;
        stats.outage_std_error = inf;
        stats.key_throughput = nan_value;
        stats.key_throughput_std_error = inf;
        stats.mean_frames = nan_value;
        stats.mean_frames_std_error = inf;
        return stats;
    }
    double m = static_cast<double>(completed);
    stats.outage = static_cast<double>(intercepted) / m;
    double mean_n = frames_sum / m;
    stats.mean_frames = mean_n;
    stats.key_throughput = params.point.frame_rate * m / frames_sum;
    if (completed < 2) {
        stats.outage_std_error = inf;
        stats.mean_frames_std_error = inf;
        stats.key_throughput_std_error = inf;
    } else {
        stats.outage_std_error =
            std::sqrt(stats.outage * (1.0 - stats.outage) / m);
        double var_n =
            std::max(0.0, (frames_sum_sq - frames_sum * frames_sum / m)
                              / (m - 1.0));
        stats.mean_frames_std_error = std::sqrt(var_n / m);
        // delta method on R0 / mean(frames)
        stats.key_throughput_std_error = params.point.frame_rate
            * stats.mean_frames_std_error / (mean_n * mean_n);
    }
    return stats;
}

analysis::McEstimate estimate_outage(const ProtocolParams& params,
                                     const fading::ChannelSpec& spec,
                                     std::uint64_t exchanges)
{
    BatchStats stats = simulate_batch(params, spec, exchanges);
    return {stats.outage, stats.outage_std_error};
}

analysis::McEstimate estimate_key_throughput(const ProtocolParams& params,
                                             const fading::ChannelSpec& spec,
                                             std::uint64_t exchanges)
{
    BatchStats stats = simulate_batch(params, spec, exchanges);
    return {stats.key_throughput, stats.key_throughput_std_error};
}

namespace {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_trace(std::ostream& out, const ProtocolParams& params,
                 const fading::ChannelSpec& spec, const ExchangeTrace& trace)
{
    out << "# arqkey-trace v1\n";
    out << "# params frame_rate=" << format_double(params.point.frame_rate)
        << " genie_rate=" << format_double(params.point.genie_rate)
        << " power=" << format_double(params.point.power)
        << " key_frames=" << params.point.key_frames
        << " payload_bits=" << params.payload_bits
        << " max_frames=" << params.max_frames << " seed=" << params.seed
        << " mean_gain_bob=" << format_double(spec.mean_gain_bob)
        << " mean_gain_eve=" << format_double(spec.mean_gain_eve) << "\n";
    for (const FrameRecord& rec : trace.frames) {
        out << rec.index << ' ' << format_double(rec.gains.h_bob) << ' '
            << format_double(rec.gains.h_eve) << ' ' << (rec.bob_acked ? 1 : 0)
            << ' ' << (rec.eve_intercepted ? 1 : 0) << ' '
            << to_hex(rec.payload) << "\n";
    }
}

TraceDocument read_trace(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != "# arqkey-trace v1")
        throw std::runtime_error("trace: missing magic header");

    double frame_rate = 0, genie_rate = 0, power = 0;
    double mean_bob = 0, mean_eve = 0;
    std::uint64_t key_frames = 0, max_frames = 0, seed = 0;
    int payload_bits = 0;
    bool have_params = false;

    std::vector<FrameRecord> frames;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string tag;
            ls >> tag;
            if (tag != "params")
                continue;
            std::string pair;
            while (ls >> pair) {
                auto eq = pair.find('=');
                if (eq == std::string::npos)
                    throw std::runtime_error("trace: bad params entry");
                std::string key = pair.substr(0, eq);
                std::string value = pair.substr(eq + 1);
                if (key == "frame_rate") frame_rate = std::stod(value);
                else if (key == "genie_rate") genie_rate = std::stod(value);
                else if (key == "power") power = std::stod(value);
                else if (key == "key_frames") key_frames = std::stoull(value);
                else if (key == "payload_bits") payload_bits = std::stoi(value);
                else if (key == "max_frames") max_frames = std::stoull(value);
                else if (key == "seed") seed = std::stoull(value);
                else if (key == "mean_gain_bob") mean_bob = std::stod(value);
                else if (key == "mean_gain_eve") mean_eve = std::stod(value);
                else throw std::runtime_error("trace: unknown param " + key);
            }
            have_params = true;
            continue;
        }
        if (!have_params)
            throw std::runtime_error("trace: frame before params");
        std::istringstream ls(line);
        FrameRecord rec;
        int acked = 0, intercepted = 0;
        std::string hex;
        if (!(ls >> rec.index >> rec.gains.h_bob >> rec.gains.h_eve >> acked
              >> intercepted >> hex))
            throw std::runtime_error("trace: malformed frame line");
        if ((acked != 0 && acked != 1) || (intercepted != 0 && intercepted != 1))
            throw std::runtime_error("trace: flags must be 0 or 1");
        rec.bob_acked = acked == 1;
        rec.eve_intercepted = intercepted == 1;
        rec.payload = from_hex(hex, static_cast<std::size_t>(payload_bits));
        if (rec.index != frames.size())
            throw std::runtime_error("trace: frame indices must be contiguous");
        frames.push_back(std::move(rec));
    }
    if (!have_params)
        throw std::runtime_error("trace: missing params header");

    TraceDocument doc{
        ProtocolParams(analysis::OperatingPoint(frame_rate, genie_rate, power,
                                                key_frames),
                       payload_bits, max_frames, seed),
        fading::ChannelSpec(mean_bob, mean_eve, power),
        ExchangeTrace{}};
    doc.trace.frames = std::move(frames);
    for (const FrameRecord& rec : doc.trace.frames) {
        if (rec.bob_acked) {
            doc.trace.acked_indices.push_back(rec.index);
            doc.trace.key_alice.insert(doc.trace.key_alice.end(),
                                       rec.payload.begin(), rec.payload.end());
            doc.trace.key_bob.insert(doc.trace.key_bob.end(),
                                     rec.payload.begin(), rec.payload.end());
        }
    }
    doc.trace.completed = doc.trace.acked_indices.size() == key_frames;
    doc.trace.eve_full_intercept = derive_eve_full_intercept(doc.trace);
    return doc;
}

} // namespace arqkey::protocol
