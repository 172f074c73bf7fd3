#include <doctest.h>

#include "amr/error.hpp"
#include "amr/features.hpp"
#include "oracle.hpp"

#include <algorithm>

using namespace amr;

namespace {

SpectrumEstimate spectrum_of(std::vector<cplx> c, double rate = 64.0) {
    SpectrumEstimate s;
    s.coeffs = std::move(c);
    s.rate_hz = rate;
    return s;
}

std::vector<std::size_t> bins(const PeakSet& p) {
    std::vector<std::size_t> b;
    for (const auto& x : p.peaks) b.push_back(x.bin);
    std::sort(b.begin(), b.end());
    return b;
}

SignalSpec ref(ModulationScheme s, std::uint64_t seed) {
    SignalSpec spec;
    spec.scheme = s;
    spec.seed = seed;
    return spec;
}

const int kOrders248[] = {2, 4, 8};

} // namespace

TEST_CASE("quantile interpolates between order statistics") {
    CHECK(quantile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
    CHECK(quantile({4, 1, 3, 2}, 0.0) == 1);
    CHECK(quantile({4, 1, 3, 2}, 1.0) == 4);
    CHECK(quantile({0, 10}, 0.98) == doctest::Approx(9.8));
}

TEST_CASE("policy validation") {
    PeakPolicy p;
    CHECK_NOTHROW(p.validate());
    p.dominance_ratio = 1.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = {};
    p.floor_factor = 0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = {};
    p.max_peaks = 0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
}

TEST_CASE("a crowded spectrum lifts the floor") {
    // More than 2% of bins carrying lines pushes the 0.98-quantile onto a line.
    std::vector<cplx> c(64);
    for (int i = 0; i < 8; ++i) c[8 * i] = 1.0;
    CHECK(detect_peaks(spectrum_of(c)).size() == 0);
    PeakPolicy median;
    median.floor_quantile = 0.5;
    CHECK(detect_peaks(spectrum_of(c), median).size() == 7);
}

TEST_CASE("trivial spectra") {
    auto zero = detect_peaks(spectrum_of(std::vector<cplx>(64)));
    CHECK(zero.size() == 0);
    CHECK(zero.threshold_used == 0.0);

    std::vector<cplx> one(64);
    one[17] = {0, -3};
    auto p = detect_peaks(spectrum_of(one));
    REQUIRE(p.size() == 1);
    CHECK(p.peaks[0].bin == 17);
    CHECK(p.peaks[0].freq_hz == 17.0);
    CHECK(p.peaks[0].magnitude == 3.0);

    CHECK_THROWS_AS(detect_peaks(spectrum_of(std::vector<cplx>(15))), ParameterError);
}

TEST_CASE("adjacent bins cluster, circularly") {
    std::vector<cplx> c(1024);
    c[1023] = 2.0;
    c[0] = 5.0;
    c[1] = 1.0;
    c[30] = 4.0;
    c[32] = 3.0;  // within 2 bins of 30
    c[40] = 1.5;
    auto p = detect_peaks(spectrum_of(c, 1024.0));
    REQUIRE(p.size() == 3);
    CHECK(p.peaks[0].bin == 0);
    CHECK(p.peaks[1].bin == 30);
    CHECK(p.peaks[2].bin == 40);
    for (const auto& x : p.peaks) CHECK(x.magnitude >= p.threshold_used);
}

TEST_CASE("max_peaks caps the strongest first") {
    std::vector<cplx> c(1024);
    for (int i = 0; i < 10; ++i) c[10 * i + 3] = 1.0 + i;
    PeakPolicy pol;
    pol.max_peaks = 4;
    auto p = detect_peaks(spectrum_of(c), pol);
    REQUIRE(p.size() == 4);
    CHECK(p.peaks[0].magnitude == 10.0);
    CHECK(p.peaks[3].magnitude == 7.0);
}

TEST_CASE("detection is scale invariant") {
    auto s = nyquist_npt_spectrum(synthesize(ref(ModulationScheme::QPSK, 3)), NptOrder{4});
    auto base = bins(detect_peaks(s));
    for (double c : {1e-6, 3.0, 1e8}) {
        auto t = s;
        for (auto& x : t.coeffs) x *= c;
        CHECK(bins(detect_peaks(t)) == base);
    }
}

TEST_CASE("squared BPSK gives exactly the three lines") {
    auto s = nyquist_npt_spectrum(synthesize(ref(ModulationScheme::BPSK, 4)), NptOrder{2});
    auto p = detect_peaks(s);
    REQUIRE(p.size() == 3);
    const double expect[] = {200, 1000, 1800};
    auto b = bins(p);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(s.frequency(b[i]) - expect[i]) <= s.bin_hz());
}

TEST_CASE("noiseless peak counts on the Nyquist path") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        CAPTURE(seed);
        auto qpsk = count_peaks(NyquistSource(synthesize(ref(ModulationScheme::QPSK, seed))), std::span(kOrders248).first(2));
        CHECK(qpsk.counts.c1 == 0);
        CHECK((qpsk.counts.c2 == 3 || qpsk.counts.c2 == 5));
        CHECK_FALSE(qpsk.counts.c3.has_value());

        auto psk8 = count_peaks(NyquistSource(synthesize(ref(ModulationScheme::PSK8, seed))), kOrders248);
        CHECK(psk8.counts.c1 == 0);
        CHECK(psk8.counts.c2 == 0);
        REQUIRE(psk8.counts.c3.has_value());
        CHECK((*psk8.counts.c3 == 3 || *psk8.counts.c3 == 5));

        auto msk = count_peaks(NyquistSource(synthesize(ref(ModulationScheme::MSK, seed))), std::span(kOrders248).first(2));
        CHECK(msk.counts.c1 == 2);
        CHECK(msk.counts.c2 == 2);
        auto f = bins(*msk.peaks_for(2));
        REQUIRE(f.size() == 2);
        CHECK(f[0] * 6400.0 / 8192 == doctest::Approx(600.0));
        CHECK(f[1] * 6400.0 / 8192 == doctest::Approx(1400.0));
    }
}

TEST_CASE("count_peaks needs orders 2 and 4; extend adds order 8") {
    NyquistSource src(synthesize(ref(ModulationScheme::PSK8, 5)));
    const int only2[] = {2};
    CHECK_THROWS_AS(count_peaks(src, only2), ParameterError);
    auto a = count_peaks(src, std::span(kOrders248).first(2));
    CHECK(a.peaks_for(8) == nullptr);
    extend_analysis(a, src, 8, {});
    REQUIRE(a.counts.c3.has_value());
    CHECK(a.peaks_for(8) != nullptr);
}

TEST_CASE("compressive counts agree with Nyquist counts on noiseless signals") {
    // Counts as the pipeline produces them: c3 only on the c1 = c2 = 0 branch.
    auto staged = [](const SpectrumSource& src) {
        auto a = count_peaks(src, std::span(kOrders248).first(2));
        if (a.counts.c1 == 0 && a.counts.c2 == 0) extend_analysis(a, src, 8, {});
        return a.counts;
    };
    int agree = 0, total = 0;
    for (ModulationScheme s : kAllSchemes) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            auto sig = synthesize(ref(s, 100 + seed));
            auto plan = make_plan(sig.size(), 2458, 500 + seed);
            auto y = apply_plan(plan, sig);
            auto n = staged(NyquistSource(sig));
            auto c = staged(CompressiveSource(y, plan, 6400.0));
            CHECK_FALSE(c.any_unreliable());
            agree += (n.c1 == c.c1 && n.c2 == c.c2 && n.c3 == c.c3);
            ++total;
        }
    }
    CHECK(agree >= total - 1);
}
