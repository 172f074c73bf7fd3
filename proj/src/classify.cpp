#include "amr/classify.hpp"

#include <algorithm>
#include <cmath>

namespace amr {

namespace {

bool three_or_five(int c) { return c == 3 || c == 5; }

// Middle three lines of a 3- or 5-line set.
std::vector<double> middle_three(std::vector<double> f) {
    if (f.size() == 5) f = {f[1], f[2], f[3]};
    return f;
}

} // namespace

std::string_view to_string(const Label& label) noexcept {
    return label ? to_string(*label) : std::string_view("unknown");
}

Label classify_counts(const PeakCounts& counts) noexcept {
    const int c1 = counts.c1;
    const int c2 = counts.c2;
    if (c1 == 3) return ModulationScheme::BPSK;
    if (c1 == 2) {
        if (c2 == 1 || three_or_five(c2)) return ModulationScheme::OQPSK;
        if (c2 == 2) return ModulationScheme::MSK;
        return std::nullopt;
    }
    if (c1 == 0) {
        if (three_or_five(c2)) return ModulationScheme::QPSK;
        if (c2 == 0 && counts.c3 && three_or_five(*counts.c3)) return ModulationScheme::PSK8;
    }
    return std::nullopt;
}

bool needs_order8(const PeakCounts& counts) noexcept { return counts.c1 == 0 && counts.c2 == 0; }

std::vector<double> unwrapped_frequencies(const PeakSet& peaks, double rate_hz) {
    std::vector<double> f;
    f.reserve(peaks.size());
    for (const Peak& p : peaks.peaks) f.push_back(p.freq_hz);
    std::sort(f.begin(), f.end());
    if (f.size() < 2) return f;
    // Widest circular gap; the wrap-around gap belongs to index 0.
    std::size_t cut = 0;
    double widest = f.front() + rate_hz - f.back();
    for (std::size_t i = 1; i < f.size(); ++i) {
        if (f[i] - f[i - 1] > widest) {
            widest = f[i] - f[i - 1];
            cut = i;
        }
    }
    std::rotate(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(cut), f.end());
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i] < f[i - 1]) f[i] += rate_hz;
    return f;
}

std::optional<ParamEstimate> estimate_params(ModulationScheme label, const PeakAnalysis& analysis, double rate_hz) {
    const int order = label == ModulationScheme::QPSK ? 4 : 2;
    if (label == ModulationScheme::PSK8) return std::nullopt;
    const PeakSet* peaks = analysis.peaks_for(order);
    if (!peaks) return std::nullopt;
    const auto f = unwrapped_frequencies(*peaks, rate_hz);

    switch (label) {
    case ModulationScheme::BPSK:
    case ModulationScheme::QPSK: {
        if (!three_or_five(static_cast<int>(f.size()))) return std::nullopt;
        const auto mid = middle_three(f);
        return ParamEstimate{mid[1] / order, (mid[2] - mid[0]) / 2.0};
    }
    case ModulationScheme::OQPSK:
        if (f.size() != 2) return std::nullopt;
        return ParamEstimate{(f[0] + f[1]) / 4.0, (f[1] - f[0]) / 2.0};
    case ModulationScheme::MSK:
        if (f.size() != 2) return std::nullopt;
        return ParamEstimate{(f[0] + f[1]) / 4.0, f[1] - f[0]};
    default:
        return std::nullopt;
    }
}

ClassificationResult classify(const SpectrumSource& source, double rate_hz, const PeakPolicy& policy) {
    static constexpr int kFirstStage[] = {2, 4};
    ClassificationResult out;
    out.analysis = count_peaks(source, kFirstStage, policy);
    if (needs_order8(out.analysis.counts)) extend_analysis(out.analysis, source, 8, policy);
    out.counts = out.analysis.counts;
    out.label = classify_counts(out.counts);
    if (out.label) {
        if (auto est = estimate_params(*out.label, out.analysis, rate_hz)) {
            out.fc_hat_hz = est->fc_hz;
            out.rs_hat_hz = est->rs_hz;
        }
    }
    return out;
}

} // namespace amr
