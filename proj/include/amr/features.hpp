#pragma once
// Spectral line detection and the peak-count features (c1, c2, c3) of the
// order-2, -4 and -8 NPT spectra.

#include "amr/nonlinear.hpp"
#include "amr/recovery.hpp"
#include "amr/sensing.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace amr {

/// A bin is a line candidate when its magnitude reaches
///     tau = max(floor_factor * Q(floor_quantile), dominance_ratio * max),
/// where Q is the empirical quantile of all bin magnitudes. floor_quantile = 0.5
/// gives a median noise floor; the default sits high in the distribution
/// because l1 reconstructions are sparse and their median is often exactly 0.
/// It assumes lines occupy fewer than (1 - floor_quantile) of the bins; a
/// crowded spectrum lifts the floor above its own lines.
struct PeakPolicy {
    double dominance_ratio = 0.1;
    double floor_quantile = 0.98;
    double floor_factor = 3.0;
    int cluster_width_bins = 2;
    int max_peaks = 7;

    void validate() const;
};

struct Peak {
    std::size_t bin = 0;
    double freq_hz = 0.0;
    double magnitude = 0.0;
};

struct PeakSet {
    /// Strongest first.
    std::vector<Peak> peaks;
    double threshold_used = 0.0;

    std::size_t size() const noexcept { return peaks.size(); }
};

/// Empirical quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

/// Bins at or above tau grouped by circular adjacency (gaps of at most
/// cluster_width_bins); each cluster yields one peak at its largest bin.
/// Spectra shorter than 16 bins are rejected with ParameterError.
PeakSet detect_peaks(const SpectrumEstimate& spectrum, const PeakPolicy& policy = {});

struct PeakCounts {
    int c1 = 0;
    int c2 = 0;
    std::optional<int> c3;
    /// Solver did not converge for order 2, 4, 8 respectively.
    std::array<bool, 3> unreliable{};

    bool any_unreliable() const noexcept { return unreliable[0] || unreliable[1] || unreliable[2]; }
};

/// Where order-N spectra come from: the Nyquist-rate samples (dense DFT of the
/// powered signal) or compressive measurements (l1 reconstruction of the
/// powered measurements).
class SpectrumSource {
public:
    struct Result {
        SpectrumEstimate spectrum;
        bool reliable = true;
        int iterations = 0;
    };

    virtual ~SpectrumSource() = default;
    virtual Result spectrum(NptOrder order) const = 0;
};

class NyquistSource final : public SpectrumSource {
public:
    explicit NyquistSource(ComplexSignal signal) : signal_(std::move(signal)) {}
    Result spectrum(NptOrder order) const override;

private:
    ComplexSignal signal_;
};

class CompressiveSource final : public SpectrumSource {
public:
    CompressiveSource(std::vector<cplx> measurements, MeasurementPlan plan, double rate_hz, SolverConfig solver = {});
    Result spectrum(NptOrder order) const override;

private:
    std::vector<cplx> measurements_;
    MeasurementPlan plan_;
    double rate_hz_;
    SolverConfig solver_;
};

struct OrderAnalysis {
    NptOrder order;
    PeakSet peaks;
    bool reliable = true;
};

struct PeakAnalysis {
    PeakCounts counts;
    std::vector<OrderAnalysis> per_order;

    const PeakSet* peaks_for(int order) const noexcept;
};

/// Counts peaks for each requested order; orders must include 2 and 4 and may
/// include 8.
PeakAnalysis count_peaks(const SpectrumSource& source, std::span<const int> orders, const PeakPolicy& policy = {});

/// Adds one more order to an existing analysis (used for the lazy order-8 stage).
void extend_analysis(PeakAnalysis& analysis, const SpectrumSource& source, int order, const PeakPolicy& policy);

} // namespace amr
