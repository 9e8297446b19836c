// arqkey: batch experiment runner for the ARQ key-sharing toolkit.
//
// Subcommands: capacity, outage, simulate, fec, replay. Every run is
// deterministic under --seed; outputs carry a '#' metadata line echoing the
// effective configuration. Exit codes: 0 ok, 1 verification failure,
// 2 usage, 3 I/O, 4 statistical infeasibility.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arqkey/analysis.hpp"
#include "arqkey/coset.hpp"
#include "arqkey/fec.hpp"
#include "arqkey/protocol.hpp"

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string join(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ',';
        out += fmt(values[i]);
    }
    return out;
}

void write_output(const std::string& path, const std::string& content)
{
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open output file: " + path);
    out << content;
    if (!out)
        throw IoError("write failed: " + path);
}

double db_to_power(double snr_db)
{
    return std::pow(10.0, snr_db / 10.0);
}

// "start:stop:step", inclusive of stop up to half a step of slack
std::vector<double> parse_range(const std::string& text)
{
    double start = 0, stop = 0, step = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra)
            != 3
        || !(step > 0.0))
        throw UsageError("bad range '" + text + "', expected start:stop:step");
    std::vector<double> values;
    for (int i = 0;; ++i) {
        double v = start + step * i;
        if (v > stop + step * 0.5)
            break;
        values.push_back(v);
    }
    if (values.empty())
        throw UsageError("empty range '" + text + "'");
    return values;
}

std::vector<double> resolve_snr(const std::vector<double>& list,
                                const std::string& range,
                                const std::string& fallback_range)
{
    if (!range.empty() && !list.empty())
        throw UsageError("give either --snr-db or --snr-range, not both");
    if (!range.empty())
        return parse_range(range);
    if (!list.empty())
        return list;
    return parse_range(fallback_range);
}

// ---- capacity ----

struct CapacityConfig {
    std::vector<double> snr_db;
    std::string snr_range;
    std::vector<double> rc{0.0, 3.0, 7.0};
    double max_rate = 25.0;
    int rate_points = 200;
    int power_points = 16;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

void run_capacity(const CapacityConfig& cfg)
{
    using namespace arqkey::analysis;
    std::vector<double> snrs = resolve_snr(cfg.snr_db, cfg.snr_range, "0:40:2");

    OptimizeOptions options;
    options.max_rate = cfg.max_rate;
    options.rate_points = cfg.rate_points;
    options.power_points = cfg.power_points;

    std::ostringstream body;
    body << "# arqkey capacity seed=" << cfg.seed << " snr_db=" << join(snrs)
         << " rc=" << join(cfg.rc) << " max_rate=" << fmt(cfg.max_rate)
         << " rate_points=" << cfg.rate_points
         << " power_points=" << cfg.power_points << "\n";
    body << "snr_db,rc,cs,cs_r0,cs_p,cs_degenerate,ce,ce_r0,ce_p,ce_degenerate\n";
    for (double snr : snrs) {
        double p_max = db_to_power(snr);
        Optimum cs = optimize_rate(RateObjective::SecrecyRate, p_max, 0.0,
                                   options);
        for (double rc : cfg.rc) {
            Optimum ce = optimize_rate(RateObjective::ErasureSecrecyRate, p_max,
                                       rc, options);
            body << fmt(snr) << ',' << fmt(rc) << ',' << fmt(cs.value) << ','
                 << fmt(cs.frame_rate) << ',' << fmt(cs.power) << ','
                 << (cs.degenerate ? 1 : 0) << ',' << fmt(ce.value) << ','
                 << fmt(ce.frame_rate) << ',' << fmt(ce.power) << ','
                 << (ce.degenerate ? 1 : 0) << "\n";
        }
    }
    write_output(cfg.out, body.str());
}

// ---- outage ----

struct OutageConfig {
    std::vector<double> r0;
    std::vector<double> rc{0.0};
    double snr_db = 30.0;
    double target = 1e-10;
    std::uint64_t max_k = 1000000;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

void run_outage(const OutageConfig& cfg)
{
    using namespace arqkey::analysis;
    if (cfg.r0.empty())
        throw UsageError("outage needs at least one --r0");
    double power = db_to_power(cfg.snr_db);

    std::ostringstream body;
    body << "# arqkey outage seed=" << cfg.seed << " snr_db=" << fmt(cfg.snr_db)
         << " r0=" << join(cfg.r0) << " rc=" << join(cfg.rc)
         << " target_pout=" << fmt(cfg.target) << " max_k=" << cfg.max_k
         << "\n";
    body << "rc,r0,k,key_rate,p_out,log10_p_out,feasible,truncated\n";
    for (double rc : cfg.rc) {
        std::vector<TradeoffPoint> points =
            tradeoff_sweep(rc, power, cfg.r0, cfg.target, cfg.max_k);
        for (const TradeoffPoint& p : points) {
            body << fmt(rc) << ',' << fmt(p.frame_rate) << ',' << p.key_frames
                 << ',' << fmt(p.key_rate) << ',' << fmt(p.outage) << ','
                 << fmt(p.log10_outage) << ',' << (p.feasible ? 1 : 0) << ','
                 << (p.truncated ? 1 : 0) << "\n";
        }
    }
    write_output(cfg.out, body.str());
}

// ---- simulate ----

struct SimulateConfig {
    double r0 = 4.0;
    double rc = 2.0;
    double snr_db = 30.0;
    std::uint64_t k = 10;
    int payload_bits = 128;
    std::uint64_t max_frames = 0;
    std::uint64_t exchanges = 10000;
    double mean_bob = 1.0;
    double mean_eve = 1.0;
    std::string trace_path;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "summary";
};

void run_simulate(const SimulateConfig& cfg)
{
    using namespace arqkey;
    using namespace arqkey::analysis;
    using namespace arqkey::protocol;

    double power = db_to_power(cfg.snr_db);
    OperatingPoint point(cfg.r0, cfg.rc, power, cfg.k);
    ProtocolParams params(point, cfg.payload_bits, cfg.max_frames, cfg.seed);
    fading::ChannelSpec spec(cfg.mean_bob, cfg.mean_eve, power);

    BatchStats stats = simulate_batch(params, spec, cfg.exchanges);
    if (stats.completed == 0)
        throw StatError("no exchange completed within the frame cap; "
                        "estimates are undefined at this operating point");

    // closed forms for asymmetric mean gains: an exponential gain of mean m
    // at power P matches a unit-mean gain at power P*m
    OperatingPoint eve_point(cfg.r0, cfg.rc, power * cfg.mean_eve, cfg.k);
    OperatingPoint bob_point(cfg.r0, cfg.rc, power * cfg.mean_bob, cfg.k);
    double outage_expected = outage_probability(eve_point);
    double throughput_expected = key_rate(bob_point);
    double frames_expected = avg_transmissions(bob_point);

    auto z_score = [](double value, double expected, double se) {
        return (value - expected) / se;
    };
    double z_outage = z_score(stats.outage, outage_expected,
                              stats.outage_std_error);
    double z_throughput = z_score(stats.key_throughput, throughput_expected,
                                  stats.key_throughput_std_error);
    double z_frames = z_score(stats.mean_frames, frames_expected,
                              stats.mean_frames_std_error);

    std::ostringstream body;
    std::string header = "# arqkey simulate seed=" + std::to_string(cfg.seed)
        + " r0=" + fmt(cfg.r0) + " rc=" + fmt(cfg.rc) + " snr_db="
        + fmt(cfg.snr_db) + " k=" + std::to_string(cfg.k) + " payload_bits="
        + std::to_string(cfg.payload_bits) + " max_frames="
        + std::to_string(params.max_frames) + " exchanges="
        + std::to_string(cfg.exchanges) + " mean_bob=" + fmt(cfg.mean_bob)
        + " mean_eve=" + fmt(cfg.mean_eve) + "\n";
    if (cfg.format == "summary") {
        body << header;
        body << "exchanges = " << stats.exchanges << "\n";
        body << "completed = " << stats.completed << "\n";
        body << "incomplete = " << stats.incomplete << "\n";
        body << "outage = " << fmt(stats.outage) << "\n";
        body << "outage_std_error = " << fmt(stats.outage_std_error) << "\n";
        body << "outage_expected = " << fmt(outage_expected) << "\n";
        body << "outage_z = " << fmt(z_outage) << "\n";
        body << "throughput = " << fmt(stats.key_throughput) << "\n";
        body << "throughput_std_error = " << fmt(stats.key_throughput_std_error)
             << "\n";
        body << "throughput_expected = " << fmt(throughput_expected) << "\n";
        body << "throughput_z = " << fmt(z_throughput) << "\n";
        body << "mean_frames = " << fmt(stats.mean_frames) << "\n";
        body << "mean_frames_std_error = " << fmt(stats.mean_frames_std_error)
             << "\n";
        body << "mean_frames_expected = " << fmt(frames_expected) << "\n";
        body << "mean_frames_z = " << fmt(z_frames) << "\n";
    } else {
        body << header;
        body << "exchanges,completed,incomplete,outage,outage_std_error,"
                "outage_expected,outage_z,throughput,throughput_std_error,"
                "throughput_expected,throughput_z,mean_frames,"
                "mean_frames_std_error,mean_frames_expected,mean_frames_z\n";
        body << stats.exchanges << ',' << stats.completed << ','
             << stats.incomplete << ',' << fmt(stats.outage) << ','
             << fmt(stats.outage_std_error) << ',' << fmt(outage_expected)
             << ',' << fmt(z_outage) << ',' << fmt(stats.key_throughput) << ','
             << fmt(stats.key_throughput_std_error) << ','
             << fmt(throughput_expected) << ',' << fmt(z_throughput) << ','
             << fmt(stats.mean_frames) << ','
             << fmt(stats.mean_frames_std_error) << ',' << fmt(frames_expected)
             << ',' << fmt(z_frames) << "\n";
    }
    write_output(cfg.out, body.str());

    if (!cfg.trace_path.empty()) {
        // audit trace of the first exchange; replays bit-exactly
        RngStream stream(params.seed, 0);
        ExchangeTrace trace = run_exchange(params, spec, stream);
        std::ofstream tf(cfg.trace_path, std::ios::binary);
        if (!tf)
            throw IoError("cannot open trace file: " + cfg.trace_path);
        write_trace(tf, params, spec, trace);
        if (!tf)
            throw IoError("write failed: " + cfg.trace_path);
    }
}

// ---- fec ----

struct FecConfig {
    std::vector<std::string> schemes{"uncoded-bpsk-240", "uncoded-bpsk-480",
                                     "coded-bpsk-240",   "coded-bpsk-480",
                                     "coded-qpsk-240",   "coded-qpsk-480"};
    std::vector<double> snr_db;
    std::string snr_range;
    std::uint64_t trials = 10000;
    double target = 1e-10;
    std::string rate = "1/2";
    int genie_budget = 50;
    bool hard_decision = false;
    bool pre_decode_cleanup = false;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

arqkey::fec::PacketSpec parse_scheme(const std::string& token)
{
    using arqkey::fec::Modulation;
    using arqkey::fec::PacketSpec;
    auto last_dash = token.rfind('-');
    if (last_dash == std::string::npos)
        throw UsageError("bad scheme '" + token
                         + "', expected e.g. coded-bpsk-240");
    std::string family = token.substr(0, last_dash);
    int bits = 0;
    try {
        bits = std::stoi(token.substr(last_dash + 1));
    } catch (const std::exception&) {
        throw UsageError("bad packet size in scheme '" + token + "'");
    }
    PacketSpec pkt;
    pkt.info_bits = bits;
    if (family == "uncoded-bpsk") {
        pkt.coded = false;
        pkt.modulation = Modulation::Bpsk;
    } else if (family == "coded-bpsk") {
        pkt.coded = true;
        pkt.modulation = Modulation::Bpsk;
    } else if (family == "coded-qpsk") {
        pkt.coded = true;
        pkt.modulation = Modulation::Qpsk;
    } else {
        throw UsageError("unknown scheme family '" + family + "'");
    }
    if (bits < 1)
        throw UsageError("bad packet size in scheme '" + token + "'");
    return pkt;
}

void run_fec(const FecConfig& cfg)
{
    using namespace arqkey::fec;
    if (cfg.trials < 10000)
        throw UsageError("fec needs --trials >= 10000 for stable estimates");
    std::vector<double> snrs = resolve_snr(cfg.snr_db, cfg.snr_range,
                                           "0:40:2.5");

    ConvCodeSpec code = ConvCodeSpec::k7_133_171();
    if (cfg.rate == "2/3")
        code.puncture = ConvCodeSpec::puncture_rate_2_3();
    else if (cfg.rate == "3/4")
        code.puncture = ConvCodeSpec::puncture_rate_3_4();
    else if (cfg.rate != "1/2")
        throw UsageError("unknown code rate '" + cfg.rate
                         + "', pick 1/2, 2/3 or 3/4");

    std::vector<PacketSpec> schemes;
    for (const std::string& token : cfg.schemes)
        schemes.push_back(parse_scheme(token));

    EveModel eve;
    eve.genie_symbol_budget = cfg.genie_budget;
    eve.pre_decode_cleanup = cfg.pre_decode_cleanup;
    DecodeOptions opts;
    opts.soft_decision = !cfg.hard_decision;

    std::vector<SchemeResult> results = key_rate_sweep(
        schemes, snrs, cfg.target, cfg.trials, cfg.seed, code, eve, opts);

    std::ostringstream body;
    body << "# arqkey fec seed=" << cfg.seed << " snr_db=" << join(snrs)
         << " trials=" << cfg.trials << " target_pout=" << fmt(cfg.target)
         << " rate=" << cfg.rate << " genie_budget=" << cfg.genie_budget
         << " hard_decision=" << (cfg.hard_decision ? 1 : 0)
         << " pre_decode_cleanup=" << (cfg.pre_decode_cleanup ? 1 : 0)
         << " schemes=";
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i)
        body << (i ? "," : "") << cfg.schemes[i];
    body << "\n";
    body << "scheme,info_bits,modulation,snr_db,bob_success,eve_success,k,"
            "key_rate,info_rate,feasible\n";
    std::size_t infeasible = 0;
    for (const SchemeResult& r : results) {
        body << scheme_label(r.scheme) << ',' << r.scheme.info_bits << ','
             << (r.scheme.modulation == Modulation::Bpsk ? "bpsk" : "qpsk")
             << ',' << fmt(r.snr_db) << ',' << fmt(r.bob_success) << ','
             << fmt(r.eve_success) << ',' << r.key_frames << ','
             << fmt(r.key_rate) << ',' << fmt(r.info_rate) << ','
             << (r.feasible ? 1 : 0) << "\n";
        infeasible += r.feasible ? 0 : 1;
    }
    if (!results.empty() && infeasible == results.size())
        throw StatError("every point infeasible: Eve succeeded in effectively "
                        "all trials; raise --trials or lower the SNR range");
    write_output(cfg.out, body.str());
}

// ---- replay ----

struct ReplayConfig {
    std::string in;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "summary";
};

void run_replay(const ReplayConfig& cfg)
{
    using namespace arqkey;
    using namespace arqkey::protocol;

    std::ifstream in(cfg.in, std::ios::binary);
    if (!in)
        throw IoError("cannot open trace file: " + cfg.in);
    TraceDocument doc = [&in, &cfg] {
        try {
            return read_trace(in);
        } catch (const std::exception& e) {
            throw IoError("trace parse error in " + cfg.in + ": " + e.what());
        }
    }();

    const auto& pt = doc.params.point;
    std::uint64_t flag_mismatches = 0;
    for (const FrameRecord& rec : doc.trace.frames) {
        bool acked = fading::bob_decodes(pt.frame_rate, rec.gains.h_bob,
                                         pt.power);
        bool intercepted = !fading::eve_erased(pt.frame_rate, pt.genie_rate,
                                               rec.gains.h_eve, pt.power);
        if (acked != rec.bob_acked || intercepted != rec.eve_intercepted)
            ++flag_mismatches;
    }
    bool keys_match = doc.trace.key_alice == doc.trace.key_bob;
    bool intercept_consistent =
        derive_eve_full_intercept(doc.trace) == doc.trace.eve_full_intercept;

    coset::KeyParts parts;
    for (std::uint64_t idx : doc.trace.acked_indices) {
        parts.parts.push_back(doc.trace.frames[idx].payload);
        parts.erased.push_back(doc.trace.frames[idx].eve_intercepted ? 0 : 1);
    }
    std::string posterior = "empty";
    bool support_consistent = true;
    if (!parts.parts.empty()) {
        std::uint64_t erased = 0;
        for (std::uint8_t e : parts.erased)
            erased += e;
        std::uint64_t unknown_bits =
            erased * static_cast<std::uint64_t>(doc.params.payload_bits);
        if (doc.params.payload_bits <= 20 && unknown_bits <= 20) {
            std::uint64_t support = coset::eve_posterior_support(parts);
            posterior = "support=" + std::to_string(support);
            support_consistent =
                (support == 1) == doc.trace.eve_full_intercept;
        } else {
            posterior = erased > 0 ? "blinded" : "known";
            support_consistent = (erased == 0) == doc.trace.eve_full_intercept;
        }
    }

    bool verified = flag_mismatches == 0 && keys_match && intercept_consistent
        && support_consistent;

    std::ostringstream body;
    body << "# arqkey replay in=" << cfg.in << "\n";
    body << "frames = " << doc.trace.frames.size() << "\n";
    body << "acked = " << doc.trace.acked_indices.size() << "\n";
    body << "completed = " << (doc.trace.completed ? 1 : 0) << "\n";
    body << "eve_full_intercept = " << (doc.trace.eve_full_intercept ? 1 : 0)
         << "\n";
    body << "flag_mismatches = " << flag_mismatches << "\n";
    body << "keys_match = " << (keys_match ? 1 : 0) << "\n";
    body << "intercept_consistent = " << (intercept_consistent ? 1 : 0) << "\n";
    body << "posterior = " << posterior << "\n";
    body << "support_consistent = " << (support_consistent ? 1 : 0) << "\n";
    body << "verified = " << (verified ? 1 : 0) << "\n";
    write_output(cfg.out, body.str());

    if (!verified)
        throw VerifyError("trace verification failed");
}

void add_common(CLI::App* cmd, std::uint64_t& seed, std::string& out,
                std::string& format, const std::vector<std::string>& formats)
{
    cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    cmd->add_option("--out", out, "output path (default stdout)");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ARQ secret-key sharing over block-fading wiretap channels"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from an INI file");

    CapacityConfig cap_cfg;
    CLI::App* cap = app.add_subcommand(
        "capacity", "optimized secrecy and erasure rates vs SNR");
    cap->configurable();
    cap->add_option("--snr-db", cap_cfg.snr_db, "SNR points in dB")
        ->delimiter(',');
    cap->add_option("--snr-range", cap_cfg.snr_range,
                    "SNR range start:stop:step in dB");
    cap->add_option("--rc", cap_cfg.rc, "genie rates, bits/use")
        ->delimiter(',')
        ->capture_default_str();
    cap->add_option("--max-rate", cap_cfg.max_rate, "rate search ceiling")
        ->capture_default_str();
    cap->add_option("--rate-points", cap_cfg.rate_points, "rate grid size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cap->add_option("--power-points", cap_cfg.power_points, "power grid size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(cap, cap_cfg.seed, cap_cfg.out, cap_cfg.format, {"csv"});

    OutageConfig out_cfg;
    CLI::App* outage = app.add_subcommand(
        "outage", "outage/key-rate tradeoff sweeps over k");
    outage->configurable();
    outage->add_option("--r0", out_cfg.r0, "frame rates, bits/use")
        ->delimiter(',')
        ->required();
    outage->add_option("--rc", out_cfg.rc, "genie rates, bits/use")
        ->delimiter(',')
        ->capture_default_str();
    outage->add_option("--snr-db", out_cfg.snr_db, "SNR in dB")
        ->capture_default_str();
    outage->add_option("--target-pout", out_cfg.target, "outage target")
        ->capture_default_str();
    outage->add_option("--max-k", out_cfg.max_k, "cap on key depth k")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(outage, out_cfg.seed, out_cfg.out, out_cfg.format, {"csv"});

    SimulateConfig sim_cfg;
    CLI::App* sim = app.add_subcommand(
        "simulate", "Monte Carlo ARQ exchanges vs the closed forms");
    sim->configurable();
    sim->add_option("--r0", sim_cfg.r0, "frame rate, bits/use")
        ->capture_default_str();
    sim->add_option("--rc", sim_cfg.rc, "genie rate, bits/use")
        ->capture_default_str();
    sim->add_option("--snr-db", sim_cfg.snr_db, "SNR in dB")
        ->capture_default_str();
    sim->add_option("--k", sim_cfg.k, "frames per key")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--payload-bits", sim_cfg.payload_bits,
                    "key-part bits per frame")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--max-frames", sim_cfg.max_frames,
                    "frame cap per exchange (0 = 1000*k)");
    sim->add_option("--exchanges", sim_cfg.exchanges, "number of exchanges")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--mean-bob", sim_cfg.mean_bob, "mean gain, Bob's channel")
        ->capture_default_str();
    sim->add_option("--mean-eve", sim_cfg.mean_eve, "mean gain, Eve's channel")
        ->capture_default_str();
    sim->add_option("--trace", sim_cfg.trace_path,
                    "write the first exchange as a replayable trace");
    add_common(sim, sim_cfg.seed, sim_cfg.out, sim_cfg.format,
               {"csv", "summary"});

    FecConfig fec_cfg;
    CLI::App* fec = app.add_subcommand(
        "fec", "finite-length coded key rates vs SNR");
    fec->configurable();
    fec->add_option("--schemes", fec_cfg.schemes,
                    "schemes as family-bits, e.g. coded-bpsk-240")
        ->delimiter(',')
        ->capture_default_str();
    fec->add_option("--snr-db", fec_cfg.snr_db, "SNR points in dB")
        ->delimiter(',');
    fec->add_option("--snr-range", fec_cfg.snr_range,
                    "SNR range start:stop:step in dB");
    fec->add_option("--trials", fec_cfg.trials, "trials per point (>= 10^4)")
        ->capture_default_str();
    fec->add_option("--target-pout", fec_cfg.target, "outage target")
        ->capture_default_str();
    fec->add_option("--rate", fec_cfg.rate, "code rate: 1/2, 2/3 or 3/4")
        ->capture_default_str();
    fec->add_option("--genie-budget", fec_cfg.genie_budget,
                    "symbols the genie corrects for Eve")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    fec->add_flag("--hard-decision", fec_cfg.hard_decision,
                  "hard-decision decoding");
    fec->add_flag("--pre-decode-cleanup", fec_cfg.pre_decode_cleanup,
                  "genie repairs Eve's symbols before decoding");
    add_common(fec, fec_cfg.seed, fec_cfg.out, fec_cfg.format, {"csv"});

    ReplayConfig rep_cfg;
    CLI::App* rep = app.add_subcommand(
        "replay", "verify a recorded exchange trace");
    rep->configurable();
    rep->add_option("--in", rep_cfg.in, "trace file to verify")->required();
    add_common(rep, rep_cfg.seed, rep_cfg.out, rep_cfg.format, {"summary"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cap->parsed())
            run_capacity(cap_cfg);
        else if (outage->parsed())
            run_outage(out_cfg);
        else if (sim->parsed())
            run_simulate(sim_cfg);
        else if (fec->parsed())
            run_fec(fec_cfg);
        else if (rep->parsed())
            run_replay(rep_cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const StatError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 4;
    } catch (const VerifyError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
