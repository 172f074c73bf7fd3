#include "amr/features.hpp"

#include "amr/error.hpp"
#include "amr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace amr {

void PeakPolicy::validate() const {
    if (!(dominance_ratio > 0.0 && dominance_ratio < 1.0)) throw ParameterError("dominance_ratio must lie in (0, 1)");
    if (!(floor_quantile >= 0.0 && floor_quantile <= 1.0)) throw ParameterError("floor_quantile must lie in [0, 1]");
    if (!(floor_factor > 0.0) || !std::isfinite(floor_factor)) throw ParameterError("floor_factor must be positive");
    if (cluster_width_bins < 1) throw ParameterError("cluster_width_bins must be >= 1");
    if (max_peaks < 1) throw ParameterError("max_peaks must be >= 1");
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    const double h = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(lo), values.end());
    const double at_lo = values[lo];
    if (lo + 1 >= values.size()) return at_lo;
    // The next order statistic is the minimum of the upper partition.
    const double at_hi = *std::min_element(values.begin() + static_cast<std::ptrdiff_t>(lo) + 1, values.end());
    return at_lo + (h - static_cast<double>(lo)) * (at_hi - at_lo);
}

PeakSet detect_peaks(const SpectrumEstimate& spectrum, const PeakPolicy& policy) {
    policy.validate();
    const std::size_t n = spectrum.size();
    if (n < 16) throw ParameterError("detect_peaks: spectrum needs at least 16 bins, got " + std::to_string(n));

    std::vector<double> mag(n);
    kernels::active().magnitude(spectrum.coeffs, mag);
    const double peak = *std::max_element(mag.begin(), mag.end());
    PeakSet out;
    if (!(peak > 0.0)) return out;

    const double tau = std::max(policy.floor_factor * quantile(mag, policy.floor_quantile), policy.dominance_ratio * peak);
    out.threshold_used = tau;

    std::vector<std::size_t> above;
    for (std::size_t b = 0; b < n; ++b)
        if (mag[b] >= tau) above.push_back(b);

    const auto width = static_cast<std::size_t>(policy.cluster_width_bins);
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t b : above) {
        if (clusters.empty() || b - clusters.back().back() > width) clusters.emplace_back();
        clusters.back().push_back(b);
    }
    if (clusters.size() > 1 && clusters.front().front() + n - clusters.back().back() <= width) {
        auto& last = clusters.back();
        last.insert(last.end(), clusters.front().begin(), clusters.front().end());
        clusters.erase(clusters.begin());
    }

    for (const auto& cluster : clusters) {
        const std::size_t best = *std::max_element(cluster.begin(), cluster.end(),
                                                   [&](std::size_t a, std::size_t b) { return mag[a] < mag[b]; });
        out.peaks.push_back({best, spectrum.frequency(best), mag[best]});
    }
    std::sort(out.peaks.begin(), out.peaks.end(), [](const Peak& a, const Peak& b) {
        return a.magnitude != b.magnitude ? a.magnitude > b.magnitude : a.bin < b.bin;
    });
    if (out.peaks.size() > static_cast<std::size_t>(policy.max_peaks))
        out.peaks.resize(static_cast<std::size_t>(policy.max_peaks));
    return out;
}

SpectrumSource::Result NyquistSource::spectrum(NptOrder order) const {
    return {nyquist_npt_spectrum(signal_, order), true, 0};
}

CompressiveSource::CompressiveSource(std::vector<cplx> measurements, MeasurementPlan plan, double rate_hz,
                                     SolverConfig solver)
    : measurements_(std::move(measurements)), plan_(std::move(plan)), rate_hz_(rate_hz), solver_(solver) {
    if (measurements_.size() != plan_.num_measurements())
        throw DimensionError("CompressiveSource: measurement count does not match the plan");
}

SpectrumSource::Result CompressiveSource::spectrum(NptOrder order) const {
    // Powering the measurements equals measuring the powered signal (single 1 per row of Phi).
    const auto powered = npt(measurements_, order);
    RecoveryReport report = reconstruct(powered, plan_, solver_, rate_hz_, order);
    return {std::move(report.spectrum), report.converged, report.iterations};
}

const PeakSet* PeakAnalysis::peaks_for(int order) const noexcept {
    for (const auto& a : per_order)
        if (a.order.value() == order) return &a.peaks;
    return nullptr;
}

void extend_analysis(PeakAnalysis& analysis, const SpectrumSource& source, int order, const PeakPolicy& policy) {
    const NptOrder npt_order(order);
    if (order == 1) throw ParameterError("peak counting orders are 2, 4 and 8");
    if (analysis.peaks_for(order)) return;
    auto result = source.spectrum(npt_order);
    PeakSet peaks = detect_peaks(result.spectrum, policy);
    const int count = static_cast<int>(peaks.size());
    const std::size_t slot = order == 2 ? 0 : order == 4 ? 1 : 2;
    analysis.counts.unreliable[slot] = !result.reliable;
    if (order == 2) analysis.counts.c1 = count;
    else if (order == 4) analysis.counts.c2 = count;
    else analysis.counts.c3 = count;
    analysis.per_order.push_back({npt_order, std::move(peaks), result.reliable});
}

PeakAnalysis count_peaks(const SpectrumSource& source, std::span<const int> orders, const PeakPolicy& policy) {
    const bool has2 = std::find(orders.begin(), orders.end(), 2) != orders.end();
    const bool has4 = std::find(orders.begin(), orders.end(), 4) != orders.end();
    if (!has2 || !has4) throw ParameterError("count_peaks: orders must include 2 and 4");
    PeakAnalysis analysis;
    for (int order : orders) extend_analysis(analysis, source, order, policy);
    return analysis;
}

} // namespace amr
