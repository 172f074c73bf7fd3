#pragma once
// Monte Carlo harness: SNR sweeps of classification rate and estimation error
// for the compressive (NCS) and Nyquist-rate paths.

#include "amr/classify.hpp"
#include "amr/features.hpp"
#include "amr/recovery.hpp"
#include "amr/waveforms.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amr {

enum class SamplingPath { NCS, Nyquist };

std::string_view to_string(SamplingPath path) noexcept;
std::optional<SamplingPath> parse_path(std::string_view name) noexcept;

inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

struct TrialConfig {
    SignalSpec spec;
    double snr_db = kNoiseless;
    /// M_meas = round(ratio * L); ignored on the Nyquist path.
    double compression_ratio = 0.3;
    SamplingPath path = SamplingPath::NCS;
    PeakPolicy policy;
    SolverConfig solver;
    std::uint64_t trial_seed = 0;
    /// Test hook: replace the waveform by zeros and add noise whose variance is
    /// what the nominal signal would get at snr_db.
    bool noise_only = false;
};

struct TrialOutcome {
    ClassificationResult result;
    ModulationScheme truth = ModulationScheme::BPSK;
    bool correct = false;
    std::optional<double> fc_error_hz;
    std::optional<double> rs_error_hz;
};

/// Deterministic 64-bit mixing of a seed with further words.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t word) noexcept;

/// Measurement count for a length-L record at the given compression ratio.
std::size_t measurement_count(std::size_t length, double ratio);

TrialOutcome run_trial(const TrialConfig& config);

struct SweepRow {
    ModulationScheme scheme = ModulationScheme::BPSK;
    double snr_db = kNoiseless;
    SamplingPath path = SamplingPath::NCS;
    int trials = 0;
    int correct = 0;
    double rate = 0.0;
    /// Mean absolute errors over correctly classified trials that produced an
    /// estimate; absent when there were none (always absent for 8PSK).
    std::optional<double> mae_fc_hz;
    std::optional<double> mae_rs_hz;
};

struct SweepResult {
    std::vector<SweepRow> rows;

    const SweepRow* find(ModulationScheme scheme, double snr_db, SamplingPath path) const noexcept;
};

struct SweepRequest {
    std::vector<ModulationScheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
    std::vector<double> snr_grid_db{kNoiseless};
    std::vector<SamplingPath> paths{SamplingPath::NCS, SamplingPath::Nyquist};
    int trials_per_point = 100;
    /// scheme, snr_db and path of base are overwritten per cell; base.trial_seed
    /// is the sweep seed.
    TrialConfig base;
    int parallelism = 1;
};

/// Rows come out ordered scheme-major, then SNR, then path, in request order,
/// independent of parallelism.
SweepResult run_sweep(const SweepRequest& request);

inline constexpr std::string_view kCsvHeader = "scheme,snr_db,path,trials,correct,rate,mae_fc_hz,mae_rs_hz";

void write_csv(std::ostream& os, const SweepResult& result);
/// Throws IoError naming the path on failure.
void save_csv(const std::string& path, const SweepResult& result);

std::string format_snr(double snr_db);

struct Preset {
    std::size_t num_symbols;
    double compression_ratio;
    int trials;
};

/// "paper": 1024 symbols, ratio 0.3, 100 trials. "desk": 256 symbols, ratio 0.3, 50 trials.
std::optional<Preset> find_preset(std::string_view name) noexcept;

/// The reference transmission: A = 1, fc = 500 Hz, Rs = 800 Hz, alpha = 0.5,
/// fs = 6400 Hz, with the given symbol count.
SignalSpec reference_spec(ModulationScheme scheme, std::size_t num_symbols = 1024);

/// Parses "start:step:stop" (inclusive) or a comma list; "inf" / "noiseless"
/// denote the noiseless sentinel. Throws ParameterError on bad syntax.
std::vector<double> parse_snr_grid(std::string_view text);

} // namespace amr
