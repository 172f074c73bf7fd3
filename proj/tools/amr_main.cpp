// amr: Monte Carlo sweeps, one-shot classification and test-signal synthesis.
#include "amr/bench.hpp"
#include "amr/classify.hpp"
#include "amr/error.hpp"
#include "amr/sample_io.hpp"
#include "amr/sensing.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitIo = 3;

// Malformed or unreadable input files count as I/O failures.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
auto load(const std::string& path, F&& f) {
    try {
        return f(path);
    } catch (const amr::IoError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

struct SweepArgs {
    std::string schemes = "bpsk,qpsk,8psk,oqpsk,msk";
    std::string snr = "-5:5:20";
    std::string paths = "ncs,nyquist";
    double ratio = 0.3;
    int trials = 100;
    std::uint64_t seed = 42;
    std::string out;
    std::string preset;
    int parallel = 1;
    std::size_t symbols = 0;
};

int run_sweep_cmd(const SweepArgs& a, const CLI::App& cmd) {
    amr::SweepRequest req;
    req.schemes.clear();
    for (const auto& name : split(a.schemes)) {
        auto s = amr::parse_scheme(name);
        if (!s) throw amr::ParameterError("unknown scheme '" + name + "'");
        req.schemes.push_back(*s);
    }
    req.paths.clear();
    for (const auto& name : split(a.paths)) {
        auto p = amr::parse_path(name);
        if (!p) throw amr::ParameterError("unknown path '" + name + "'");
        req.paths.push_back(*p);
    }
    req.snr_grid_db = amr::parse_snr_grid(a.snr);

    std::size_t symbols = 1024;
    double ratio = a.ratio;
    int trials = a.trials;
    if (!a.preset.empty()) {
        auto p = amr::find_preset(a.preset);
        if (!p) throw amr::ParameterError("unknown preset '" + a.preset + "'");
        symbols = p->num_symbols;
        // explicit flags win over the preset
        if (cmd.count("--ratio") == 0) ratio = p->compression_ratio;
        if (cmd.count("--trials") == 0) trials = p->trials;
    }
    if (a.symbols > 0) symbols = a.symbols;
    if (ratio >= 1.0) std::cerr << "amr: warning: ratio 1.0 means no compression\n";

    req.base.spec = amr::reference_spec(amr::ModulationScheme::BPSK, symbols);
    req.base.compression_ratio = ratio;
    req.base.trial_seed = a.seed;
    req.trials_per_point = trials;
    req.parallelism = a.parallel;
    (void)amr::measurement_count(req.base.spec.length(), ratio);

    amr::SweepResult result = amr::run_sweep(req);
    if (a.out.empty() || a.out == "-")
        amr::write_csv(std::cout, result);
    else
        amr::save_csv(a.out, result);
    return kExitOk;
}

struct ClassifyArgs {
    std::string input;
    std::string plan;
    double rate = 0.0;
};

void print_result(const amr::ClassificationResult& r) {
    std::cout << "label " << amr::to_string(r.label) << '\n';
    std::cout << "c1 " << r.counts.c1 << "\nc2 " << r.counts.c2 << '\n';
    if (r.counts.c3) std::cout << "c3 " << *r.counts.c3 << '\n';
    if (r.fc_hat_hz) std::cout << "fc_hz " << *r.fc_hat_hz << '\n';
    if (r.rs_hat_hz) std::cout << "rs_hz " << *r.rs_hat_hz << '\n';
    if (r.counts.any_unreliable()) std::cout << "warning solver did not converge\n";
}

int run_classify_cmd(const ClassifyArgs& a) {
    amr::ComplexSignal input = load(a.input, [](const std::string& p) { return amr::load_samples(p); });
    const double rate = a.rate > 0.0 ? a.rate : input.rate_hz;
    if (!(rate > 0.0)) throw amr::ParameterError("rate must be positive");
    if (a.plan.empty()) {
        input.rate_hz = rate;
        print_result(amr::classify(amr::NyquistSource(std::move(input)), rate));
        return kExitOk;
    }
    amr::MeasurementPlan plan = load(a.plan, [](const std::string& p) { return amr::load_plan(p); });
    std::vector<amr::cplx> y = std::move(input.samples);
    if (y.size() == plan.ambient_len() && y.size() != plan.num_measurements()) y = amr::apply_plan(plan, y);
    if (y.size() != plan.num_measurements())
        throw amr::ParameterError("input has " + std::to_string(y.size()) + " samples, plan selects " +
                                  std::to_string(plan.num_measurements()));
    print_result(amr::classify(amr::CompressiveSource(std::move(y), std::move(plan), rate), rate));
    return kExitOk;
}

struct SynthArgs {
    std::string scheme = "qpsk";
    std::string snr = "inf";
    std::uint64_t seed = 1;
    std::size_t symbols = 1024;
    double ratio = 0.0;
    std::string out;
    std::string plan_out;
};

int run_synth_cmd(const SynthArgs& a) {
    auto scheme = amr::parse_scheme(a.scheme);
    if (!scheme) throw amr::ParameterError("unknown scheme '" + a.scheme + "'");
    auto snr = amr::parse_snr_grid(a.snr);
    if (snr.size() != 1) throw amr::ParameterError("synth takes a single SNR");
    amr::SignalSpec spec = amr::reference_spec(*scheme, a.symbols);
    spec.seed = amr::mix_seed(a.seed, 1);
    amr::ComplexSignal sig = amr::add_awgn(amr::synthesize(spec), snr[0], amr::mix_seed(a.seed, 2));
    if (a.ratio > 0.0) {
        if (a.plan_out.empty()) throw amr::ParameterError("--ratio needs --plan-out");
        auto plan = amr::make_plan(sig.size(), amr::measurement_count(sig.size(), a.ratio), amr::mix_seed(a.seed, 3));
        sig.samples = amr::apply_plan(plan, sig);
        amr::save_plan(a.plan_out, plan);
    }
    if (a.out.empty() || a.out == "-")
        amr::write_samples(std::cout, sig);
    else
        amr::save_samples(a.out, sig);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressive modulation recognition for PSK-family signals"};
    app.require_subcommand(1);

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo SNR sweep, CSV output");
    sweep->add_option("--schemes", sw.schemes, "Comma list of bpsk,qpsk,8psk,oqpsk,msk")->capture_default_str();
    sweep->add_option("--snr", sw.snr, "start:step:stop in dB, or a comma list; 'inf' = noiseless")->capture_default_str();
    sweep->add_option("--paths", sw.paths, "Comma list of ncs,nyquist")->capture_default_str();
    sweep->add_option("--ratio", sw.ratio, "Compression ratio M/L")->capture_default_str();
    sweep->add_option("--trials", sw.trials, "Trials per cell")->capture_default_str();
    sweep->add_option("--seed", sw.seed, "Base seed")->capture_default_str();
    sweep->add_option("--out", sw.out, "CSV path ('-' or omitted: stdout)");
    sweep->add_option("--preset", sw.preset, "desk or paper");
    sweep->add_option("--parallel", sw.parallel, "Worker threads")->capture_default_str();
    sweep->add_option("--symbols", sw.symbols, "Override the symbol count");

    ClassifyArgs cl;
    auto* classify = app.add_subcommand("classify", "Classify one record or measurement vector");
    classify->add_option("--input", cl.input, "Sample file")->required();
    classify->add_option("--plan", cl.plan, "Plan file (omit for a Nyquist-rate record)");
    classify->add_option("--rate", cl.rate, "Nyquist rate in Hz (default: from the sample file)");

    SynthArgs sy;
    auto* synth = app.add_subcommand("synth", "Write a synthetic record or measurement vector");
    synth->add_option("--scheme", sy.scheme)->capture_default_str();
    synth->add_option("--snr", sy.snr, "dB or 'inf'")->capture_default_str();
    synth->add_option("--seed", sy.seed)->capture_default_str();
    synth->add_option("--symbols", sy.symbols)->capture_default_str();
    synth->add_option("--ratio", sy.ratio, "Emit compressive measurements at this ratio");
    synth->add_option("--out", sy.out, "Sample file ('-' or omitted: stdout)");
    synth->add_option("--plan-out", sy.plan_out, "Where to write the plan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitBadArgs;
    }

    try {
        if (*sweep) return run_sweep_cmd(sw, *sweep);
        if (*classify) return run_classify_cmd(cl);
        if (*synth) return run_synth_cmd(sy);
    } catch (const amr::IoError& e) {
        std::cerr << "amr: " << e.what() << '\n';
        return kExitIo;
    } catch (const InputError& e) {
        std::cerr << "amr: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "amr: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const std::exception& e) {
        std::cerr << "amr: " << e.what() << '\n';
        return 1;
    }
    return kExitBadArgs;
}
