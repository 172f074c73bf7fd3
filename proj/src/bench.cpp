#include "amr/bench.hpp"

#include "amr/error.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace amr {

std::string_view to_string(SamplingPath path) noexcept {
    return path == SamplingPath::NCS ? "ncs" : "nyquist";
}

std::optional<SamplingPath> parse_path(std::string_view name) noexcept {
    if (name == "ncs") return SamplingPath::NCS;
    if (name == "nyquist") return SamplingPath::Nyquist;
    return std::nullopt;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// sub-stream tags
constexpr std::uint64_t kSymbolStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kPlanStream = 3;

} // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t word) noexcept {
    return splitmix64(seed ^ splitmix64(word + 0x632be59bd9b4e019ULL));
}

std::size_t measurement_count(std::size_t length, double ratio) {
    if (!(ratio > 0.0 && ratio <= 1.0)) throw ParameterError("compression ratio must lie in (0, 1]");
    auto m = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(length)));
    return std::clamp<std::size_t>(m, 1, length);
}

TrialOutcome run_trial(const TrialConfig& config) {
    SignalSpec spec = config.spec;
    spec.validate(8);
    config.policy.validate();
    config.solver.validate();
    spec.seed = mix_seed(config.trial_seed, kSymbolStream);

    ComplexSignal clean = synthesize(spec);
    ComplexSignal received;
    if (config.noise_only) {
        double variance = std::isinf(config.snr_db) ? 0.0 : mean_power(clean.samples) / std::pow(10.0, config.snr_db / 10.0);
        ComplexSignal zeros{std::vector<cplx>(clean.size()), clean.rate_hz};
        received = add_noise_variance(zeros, variance, mix_seed(config.trial_seed, kNoiseStream));
    } else {
        received = add_awgn(clean, config.snr_db, mix_seed(config.trial_seed, kNoiseStream));
    }

    TrialOutcome out;
    out.truth = spec.scheme;
    if (config.path == SamplingPath::Nyquist) {
        out.result = classify(NyquistSource(std::move(received)), spec.nyquist_rate_hz, config.policy);
    } else {
        MeasurementPlan plan = make_plan(received.size(), measurement_count(received.size(), config.compression_ratio),
                                         mix_seed(config.trial_seed, kPlanStream));
        std::vector<cplx> y = apply_plan(plan, received);
        out.result = classify(CompressiveSource(std::move(y), std::move(plan), spec.nyquist_rate_hz, config.solver),
                              spec.nyquist_rate_hz, config.policy);
    }
    out.correct = out.result.label == spec.scheme;
    if (out.result.fc_hat_hz) out.fc_error_hz = std::abs(*out.result.fc_hat_hz - spec.carrier_hz);
    if (out.result.rs_hat_hz) out.rs_error_hz = std::abs(*out.result.rs_hat_hz - spec.symbol_rate_hz);
    return out;
}

const SweepRow* SweepResult::find(ModulationScheme scheme, double snr_db, SamplingPath path) const noexcept {
    for (const SweepRow& r : rows)
        if (r.scheme == scheme && r.path == path && (r.snr_db == snr_db || (std::isinf(r.snr_db) && std::isinf(snr_db))))
            return &r;
    return nullptr;
}

SweepResult run_sweep(const SweepRequest& request) {
    if (request.trials_per_point < 1) throw ParameterError("trials per point must be at least 1");
    if (request.parallelism < 1) throw ParameterError("parallelism must be at least 1");
    if (request.schemes.empty() || request.snr_grid_db.empty() || request.paths.empty())
        throw ParameterError("sweep needs at least one scheme, SNR and path");

    struct Cell {
        ModulationScheme scheme;
        double snr_db;
        SamplingPath path;
    };
    std::vector<Cell> cells;
    for (ModulationScheme s : request.schemes)
        for (double snr : request.snr_grid_db)
            for (SamplingPath p : request.paths) cells.push_back({s, snr, p});

    // Fail on bad specs before spawning anything.
    for (ModulationScheme s : request.schemes) {
        SignalSpec spec = request.base.spec;
        spec.scheme = s;
        spec.validate(8);
    }
    request.base.policy.validate();
    request.base.solver.validate();

    const auto trials = static_cast<std::size_t>(request.trials_per_point);
    const std::size_t total = cells.size() * trials;
    std::vector<TrialOutcome> outcomes(total);

    auto job = [&](std::size_t k) {
        const Cell& cell = cells[k / trials];
        TrialConfig cfg = request.base;
        cfg.spec.scheme = cell.scheme;
        cfg.snr_db = cell.snr_db;
        cfg.path = cell.path;
        std::uint64_t h = mix_seed(request.base.trial_seed, static_cast<std::uint64_t>(cell.scheme));
        h = mix_seed(h, std::bit_cast<std::uint64_t>(cell.snr_db));
        h = mix_seed(h, static_cast<std::uint64_t>(cell.path));
        cfg.trial_seed = mix_seed(h, k % trials);
        outcomes[k] = run_trial(cfg);
    };

    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(request.parallelism), total);
    if (workers <= 1) {
        for (std::size_t k = 0; k < total; ++k) job(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (std::size_t k; !failed && (k = next.fetch_add(1)) < total;) {
                        try {
                            job(k);
                        } catch (...) {
                            std::lock_guard lock(error_mutex);
                            if (!error) error = std::current_exception();
                            failed = true;
                        }
                    }
                });
        }
        if (error) std::rethrow_exception(error);
    }

    SweepResult result;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        SweepRow row;
        row.scheme = cells[c].scheme;
        row.snr_db = cells[c].snr_db;
        row.path = cells[c].path;
        row.trials = request.trials_per_point;
        double fc_sum = 0.0, rs_sum = 0.0;
        int fc_n = 0, rs_n = 0;
        for (std::size_t i = 0; i < trials; ++i) {
            const TrialOutcome& o = outcomes[c * trials + i];
            if (!o.correct) continue;
            ++row.correct;
            if (o.fc_error_hz) fc_sum += *o.fc_error_hz, ++fc_n;
            if (o.rs_error_hz) rs_sum += *o.rs_error_hz, ++rs_n;
        }
        row.rate = static_cast<double>(row.correct) / row.trials;
        if (fc_n > 0) row.mae_fc_hz = fc_sum / fc_n;
        if (rs_n > 0) row.mae_rs_hz = rs_sum / rs_n;
        result.rows.push_back(row);
    }
    return result;
}

std::string format_snr(double snr_db) {
    if (std::isinf(snr_db)) return snr_db > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << snr_db;
    return os.str();
}

void write_csv(std::ostream& os, const SweepResult& result) {
    os << kCsvHeader << '\n';
    auto opt = [&](const std::optional<double>& v) {
        if (v) os << *v;
    };
    for (const SweepRow& r : result.rows) {
        os << to_string(r.scheme) << ',' << format_snr(r.snr_db) << ',' << to_string(r.path) << ',' << r.trials << ','
           << r.correct << ',' << r.rate << ',';
        opt(r.mae_fc_hz);
        os << ',';
        opt(r.mae_rs_hz);
        os << '\n';
    }
}

void save_csv(const std::string& path, const SweepResult& result) {
    std::ofstream os(path);
    if (!os) throw IoError(path, "cannot open for writing");
    write_csv(os, result);
    os.flush();
    if (!os) throw IoError(path, "write failed");
}

std::optional<Preset> find_preset(std::string_view name) noexcept {
    if (name == "paper") return Preset{1024, 0.3, 100};
    if (name == "desk") return Preset{256, 0.3, 50};
    return std::nullopt;
}

SignalSpec reference_spec(ModulationScheme scheme, std::size_t num_symbols) {
    SignalSpec spec;
    spec.scheme = scheme;
    spec.num_symbols = num_symbols;
    return spec;
}

namespace {

double parse_number(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s == "inf" || s == "noiseless" || s == "+inf") return kNoiseless;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ParameterError("bad SNR value '" + std::string(s) + "'");
    return v;
}

} // namespace

std::vector<double> parse_snr_grid(std::string_view text) {
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t pos = 0;
        while (true) {
            std::size_t colon = text.find(':', pos);
            parts.push_back(parse_number(text.substr(pos, colon - pos)));
            if (colon == std::string_view::npos) break;
            pos = colon + 1;
        }
        if (parts.size() != 3) throw ParameterError("SNR range must be start:step:stop");
        double start = parts[0], step = parts[1], stop = parts[2];
        if (std::isinf(start) || std::isinf(step) || std::isinf(stop) || !(step > 0.0) || stop < start)
            throw ParameterError("SNR range needs finite start <= stop and a positive step");
        const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        if (n > 10000) throw ParameterError("SNR range too long");
        for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        out.push_back(parse_number(text.substr(pos, comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace amr
