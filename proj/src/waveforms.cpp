#include "amr/waveforms.hpp"

#include "amr/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace amr {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<int> draw_indices(std::mt19937_64& rng, std::size_t count, int alphabet, bool constant) {
    std::vector<int> out(count, 0);
    if (constant) return out;
    std::uniform_int_distribution<int> pick(0, alphabet - 1);
    for (int& v : out) v = pick(rng);
    return out;
}

std::vector<cplx> antipodal(std::mt19937_64& rng, std::size_t count, bool constant) {
    const auto idx = draw_indices(rng, count, 2, constant);
    std::vector<cplx> out(count);
    std::transform(idx.begin(), idx.end(), out.begin(), [](int b) { return cplx(b == 0 ? 1.0 : -1.0, 0.0); });
    return out;
}

// exp(j 2 pi m / M) with the axis points snapped to exact values.
cplx constellation_point(int m, int phases) {
    if ((4 * m) % phases == 0) {
        switch ((4 * m / phases) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    const double angle = 2.0 * kPi * m / phases;
    return {std::cos(angle), std::sin(angle)};
}

ComplexSignal mpsk_baseband(const SignalSpec& spec, const SynthesisHooks& hooks, std::mt19937_64& rng) {
    const int sps = spec.samples_per_symbol();
    const int phases = phase_count(spec.scheme);
    const auto idx = draw_indices(rng, spec.num_symbols, phases, hooks.constant_symbols);
    std::vector<cplx> symbols(idx.size());
    std::transform(idx.begin(), idx.end(), symbols.begin(), [phases](int m) { return constellation_point(m, phases); });

    const auto taps = rrc_pulse(spec.rolloff, kDefaultRrcSpan, sps);
    auto samples = pulse_train(symbols, taps, sps, 0, spec.length());
    // Unit-energy taps give mean power 1/sps per sample.
    const double gain = spec.amplitude * std::sqrt(static_cast<double>(sps));
    for (cplx& s : samples) s *= gain;
    return {std::move(samples), spec.nyquist_rate_hz};
}

ComplexSignal oqpsk_baseband(const SignalSpec& spec, const SynthesisHooks& hooks, std::mt19937_64& rng) {
    const int sps = spec.samples_per_symbol();
    const auto a = antipodal(rng, spec.num_symbols, hooks.constant_symbols);
    const auto b = antipodal(rng, spec.num_symbols, hooks.constant_symbols);
    const auto taps = rrc_pulse(spec.rolloff, kDefaultRrcSpan, sps);
    const auto in_phase = pulse_train(a, taps, sps, 0, spec.length());
    // Quadrature arm delayed by T_b = T_s / 2.
    const auto quadrature = pulse_train(b, taps, sps, sps / 2, spec.length());

    const double gain = spec.amplitude * std::sqrt(sps / 2.0);
    std::vector<cplx> samples(spec.length());
    for (std::size_t k = 0; k < samples.size(); ++k)
        samples[k] = gain * cplx(in_phase[k].real(), quadrature[k].real());
    return {std::move(samples), spec.nyquist_rate_hz};
}

// Quadrature half-sine form with T_b = T_s. The in-phase window of a_n covers
// [(2n-1) T_b, (2n+1) T_b) and the quadrature window of b_n covers
// [2n T_b, (2n+2) T_b), so each arm switches sign only where its half-sine is
// zero and the envelope stays constant.
ComplexSignal msk_baseband(const SignalSpec& spec, const SynthesisHooks& hooks, std::mt19937_64& rng) {
    const std::size_t sps = static_cast<std::size_t>(spec.samples_per_symbol());
    const std::size_t length = spec.length();
    const std::size_t n_a = (length - 1 + sps) / (2 * sps) + 1;
    const std::size_t n_b = (length - 1) / (2 * sps) + 1;
    const auto a = antipodal(rng, n_a, hooks.constant_symbols);
    const auto b = antipodal(rng, n_b, hooks.constant_symbols);

    std::vector<cplx> samples(length);
    for (std::size_t k = 0; k < length; ++k) {
        const double phase = kPi * static_cast<double>(k) / (2.0 * static_cast<double>(sps));
        const double i_arm = a[(k + sps) / (2 * sps)].real() * std::cos(phase);
        const double q_arm = b[k / (2 * sps)].real() * std::sin(phase);
        samples[k] = spec.amplitude * cplx(i_arm, q_arm);
    }
    return {std::move(samples), spec.nyquist_rate_hz};
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

std::string_view to_string(ModulationScheme scheme) noexcept {
    switch (scheme) {
    case ModulationScheme::BPSK: return "bpsk";
    case ModulationScheme::QPSK: return "qpsk";
    case ModulationScheme::PSK8: return "8psk";
    case ModulationScheme::OQPSK: return "oqpsk";
    case ModulationScheme::MSK: return "msk";
    }
    return "?";
}

std::optional<ModulationScheme> parse_scheme(std::string_view name) noexcept {
    for (ModulationScheme s : kAllSchemes)
        if (to_string(s) == name) return s;
    if (name == "psk8") return ModulationScheme::PSK8;
    return std::nullopt;
}

int phase_count(ModulationScheme scheme) noexcept {
    switch (scheme) {
    case ModulationScheme::BPSK: return 2;
    case ModulationScheme::QPSK: return 4;
    case ModulationScheme::PSK8: return 8;
    default: return 0;
    }
}

int SignalSpec::samples_per_symbol() const {
    if (!finite_positive(nyquist_rate_hz) || !finite_positive(symbol_rate_hz))
        throw ParameterError("nyquist_rate_hz and symbol_rate_hz must be positive");
    const double ratio = nyquist_rate_hz / symbol_rate_hz;
    const double rounded = std::round(ratio);
    if (rounded < 2.0 || std::abs(ratio - rounded) > 1e-9 * ratio)
        throw ParameterError("nyquist_rate_hz / symbol_rate_hz must be an integer >= 2, got " +
                             std::to_string(ratio));
    return static_cast<int>(rounded);
}

void SignalSpec::validate(int deepest_order) const {
    if (!finite_positive(amplitude)) throw ParameterError("amplitude must be positive");
    if (!finite_positive(carrier_hz)) throw ParameterError("carrier_hz must be positive");
    if (!(rolloff >= 0.0 && rolloff <= 1.0)) throw ParameterError("rolloff must lie in [0, 1]");
    if (num_symbols == 0) throw ParameterError("num_symbols must be positive");
    const int sps = samples_per_symbol();
    if (scheme == ModulationScheme::OQPSK && sps % 2 != 0)
        throw ParameterError("OQPSK needs an even number of samples per symbol for the T_s/2 offset");
    if (deepest_order != 4 && deepest_order != 8) throw ParameterError("deepest_order must be 4 or 8");
    // Inclusive bound: the reference setup (fc=500, Rs=800, fs=6400) sits exactly
    // on it for order 8.
    if (deepest_order * carrier_hz + 3.0 * symbol_rate_hz > nyquist_rate_hz)
        throw ParameterError("carrier and symbol rate alias after the order-" + std::to_string(deepest_order) +
                             " nonlinearity at this sampling rate");
}

double rrc_impulse(double rolloff, double t) {
    const double a = rolloff;
    if (std::abs(t) < 1e-12) return 1.0 - a + 4.0 * a / kPi;
    if (a > 0.0 && std::abs(std::abs(t) - 1.0 / (4.0 * a)) < 1e-12) {
        const double x = kPi / (4.0 * a);
        return a / std::numbers::sqrt2 * ((1.0 + 2.0 / kPi) * std::sin(x) + (1.0 - 2.0 / kPi) * std::cos(x));
    }
    const double num = std::sin(kPi * t * (1.0 - a)) + 4.0 * a * t * std::cos(kPi * t * (1.0 + a));
    const double den = kPi * t * (1.0 - (4.0 * a * t) * (4.0 * a * t));
    return num / den;
}

std::vector<double> rrc_pulse(double rolloff, int span_symbols, int samples_per_symbol) {
    if (!(rolloff >= 0.0 && rolloff <= 1.0)) throw ParameterError("rolloff must lie in [0, 1]");
    if (span_symbols < 4) throw ParameterError("span_symbols must be at least 4");
    if (samples_per_symbol < 2) throw ParameterError("samples_per_symbol must be at least 2");

    const int n = span_symbols * samples_per_symbol + 1;
    std::vector<double> taps(static_cast<std::size_t>(n));
    double energy = 0.0;
    for (int i = 0; i < n; ++i) {
        // |2i - (n-1)| / 2 is the distance from the center in samples; using the
        // absolute value makes the taps exactly even.
        const double offset = std::abs(2 * i - (n - 1)) / 2.0;
        taps[static_cast<std::size_t>(i)] = rrc_impulse(rolloff, offset / samples_per_symbol);
    }
    for (double h : taps) energy += h * h;
    const double norm = 1.0 / std::sqrt(energy);
    for (double& h : taps) h *= norm;
    return taps;
}

std::vector<cplx> pulse_train(std::span<const cplx> symbols, std::span<const double> taps, int sps, int offset,
                              std::size_t length) {
    std::vector<cplx> out(length);
    const long half = static_cast<long>(taps.size() - 1) / 2;
    const long len = static_cast<long>(length);
    for (std::size_t n = 0; n < symbols.size(); ++n) {
        const long center = static_cast<long>(n) * sps + offset;
        const long first = std::max(center - half, 0L);
        const long last = std::min(center + half, len - 1);
        for (long k = first; k <= last; ++k) out[static_cast<std::size_t>(k)] += symbols[n] * taps[static_cast<std::size_t>(k - center + half)];
    }
    return out;
}

ComplexSignal synthesize_baseband(const SignalSpec& spec, const SynthesisHooks& hooks) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    switch (spec.scheme) {
    case ModulationScheme::OQPSK: return oqpsk_baseband(spec, hooks, rng);
    case ModulationScheme::MSK: return msk_baseband(spec, hooks, rng);
    default: return mpsk_baseband(spec, hooks, rng);
    }
}

ComplexSignal synthesize(const SignalSpec& spec, const SynthesisHooks& hooks) {
    ComplexSignal signal = synthesize_baseband(spec, hooks);
    const double fs = spec.nyquist_rate_hz;
    for (std::size_t k = 0; k < signal.samples.size(); ++k) {
        // Reduce fc*k modulo fs before scaling so the phase stays accurate for long records.
        const double cycles = std::fmod(spec.carrier_hz * static_cast<double>(k), fs) / fs;
        signal.samples[k] *= std::polar(1.0, 2.0 * kPi * cycles);
    }
    return signal;
}

double mean_power(std::span<const cplx> samples) noexcept {
    if (samples.empty()) return 0.0;
    double acc = 0.0;
    for (const cplx& s : samples) acc += std::norm(s);
    return acc / static_cast<double>(samples.size());
}

ComplexSignal add_noise_variance(const ComplexSignal& signal, double variance, std::uint64_t seed) {
    if (!(variance >= 0.0) || !std::isfinite(variance)) throw ParameterError("noise variance must be finite and >= 0");
    ComplexSignal out = signal;
    if (variance == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
    for (cplx& s : out.samples) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        s += cplx(re, im);
    }
    return out;
}

ComplexSignal add_awgn(const ComplexSignal& signal, double snr_db, std::uint64_t seed) {
    if (signal.samples.empty()) throw DimensionError("add_awgn: empty signal");
    if (std::isnan(snr_db)) throw ParameterError("add_awgn: snr_db is NaN");
    if (snr_db == std::numeric_limits<double>::infinity()) return signal;
    const double power = mean_power(signal.samples);
    return add_noise_variance(signal, power / std::pow(10.0, snr_db / 10.0), seed);
}

} // namespace amr
