// Acceptance suite: one PASS/FAIL line per criterion.
//
//   amr_acceptance [--preset paper|desk] [--parallel N] [--only 1,5] [--expect-fail 1]
//
// Exit status is 0 when every criterion passes or fails only where expected.
#include "amr/bench.hpp"
#include "amr/error.hpp"
#include "amr/features.hpp"
#include "amr/recovery.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

using namespace amr;

namespace {

struct Scale {
    std::size_t symbols;
    int trials;
    double high_snr_rate;  // criterion 5 threshold
};

struct Context {
    Scale scale;
    int parallel;
    std::size_t length() const { return reference_spec(ModulationScheme::BPSK, scale.symbols).length(); }
};

struct Verdict {
    bool pass;
    std::string detail;
};

std::string pct(double r) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.0f%%", 100 * r);
    return buf;
}

double rel_err(std::span<const cplx> a, std::span<const cplx> b) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / den);
}

// 1. Reference peak counts, noiseless, Nyquist path.
Verdict reference_counts(const Context&) {
    const int trials = 50;
    std::ostringstream d;
    bool ok = true;
    for (ModulationScheme s : kAllSchemes) {
        int match = 0;
        for (int i = 0; i < trials; ++i) {
            TrialConfig c;
            c.spec = reference_spec(s);
            c.path = SamplingPath::Nyquist;
            c.trial_seed = mix_seed(0x7ab1e2, static_cast<std::uint64_t>(i));
            const PeakCounts k = run_trial(c).result.counts;
            auto odd35 = [](int v) { return v == 3 || v == 5; };
            bool m = false;
            switch (s) {
            case ModulationScheme::BPSK: m = k.c1 == 3 && odd35(k.c2); break;
            case ModulationScheme::QPSK: m = k.c1 == 0 && odd35(k.c2); break;
            case ModulationScheme::PSK8: m = k.c1 == 0 && k.c2 == 0 && k.c3 && odd35(*k.c3); break;
            case ModulationScheme::OQPSK: m = k.c1 == 2 && odd35(k.c2); break;
            case ModulationScheme::MSK: m = k.c1 == 2 && k.c2 == 2; break;
            }
            match += m;
        }
        const double r = static_cast<double>(match) / trials;
        ok = ok && r >= 0.95;
        d << to_string(s) << ' ' << pct(r) << ' ';
    }
    d << "(need >= 95% each)";
    return {ok, d.str()};
}

// 2. Gather commutes with the Nth power.
Verdict commutation(const Context&) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t len = 16 + rng() % 4096;
        std::vector<cplx> z(len);
        for (auto& x : z) x = {g(rng), g(rng)};
        auto plan = make_plan(len, 1 + rng() % len, rng());
        for (int n : {2, 4, 8}) {
            auto a = npt(apply_plan(plan, z), NptOrder{n});
            auto b = apply_plan(plan, npt(z, NptOrder{n}));
            worst = std::max(worst, rel_err(a, b));
        }
    }
    std::ostringstream d;
    d << "worst relative error " << worst << " over 1000 vectors x N in {2,4,8} (need <= 1e-15)";
    return {worst <= 1e-15, d.str()};
}

// 3. Exact recovery of planted 5-sparse spectra and adjoint consistency.
Verdict exact_recovery(const Context&) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ph(0, 2 * std::numbers::pi);
    int good = 0;
    double worst = 0;
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        std::vector<cplx> f(1024);
        for (int k = 0; k < 5;) {
            std::size_t b = rng() % 1024;
            if (f[b] == cplx{}) f[b] = std::polar(1.0, ph(rng)), ++k;
        }
        auto plan = make_plan(1024, 307, rng());
        auto r = reconstruct(forward_operator(f, plan), plan);
        const double e = rel_err(r.spectrum.coeffs, f);
        worst = std::max(worst, e);
        good += e <= 1e-4;
    }
    double adj = 0;
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
        auto plan = make_plan(1024, 307, rng());
        PartialDftOperator op(plan);
        std::vector<cplx> f(1024), y(307);
        for (auto& x : f) x = {g(rng), g(rng)};
        for (auto& x : y) x = {g(rng), g(rng)};
        auto af = op.forward(f);
        auto ahy = op.adjoint(y);
        cplx l = 0, r = 0;
        for (std::size_t i = 0; i < y.size(); ++i) l += af[i] * std::conj(y[i]);
        for (std::size_t i = 0; i < f.size(); ++i) r += f[i] * std::conj(ahy[i]);
        adj = std::max(adj, std::abs(l - r) / std::abs(l));
    }
    const double frac = static_cast<double>(good) / seeds;
    std::ostringstream d;
    d << "recovered " << good << "/" << seeds << " (worst err " << worst << "), adjoint mismatch " << adj
      << " (need >= 98% and <= 1e-10)";
    return {frac >= 0.98 && adj <= 1e-10, d.str()};
}

// 4. Squared BPSK recovered from 2458 measurements: lines at 200/1000/1800 Hz.
Verdict squared_bpsk_lines(const Context&) {
    SignalSpec spec = reference_spec(ModulationScheme::BPSK);
    spec.seed = 4;
    auto sig = synthesize(spec);
    auto plan = make_plan(sig.size(), 2458, 4);
    auto y2 = npt(apply_plan(plan, sig), NptOrder{2});
    auto rec = reconstruct(y2, plan, {}, sig.rate_hz, NptOrder{2});
    auto dense = nyquist_npt_spectrum(sig, NptOrder{2});

    auto top3 = [](const SpectrumEstimate& s) {
        auto p = detect_peaks(s);
        std::vector<double> f;
        for (std::size_t i = 0; i < std::min<std::size_t>(3, p.size()); ++i) f.push_back(p.peaks[i].freq_hz);
        std::sort(f.begin(), f.end());
        return f;
    };
    auto fr = top3(rec.spectrum);
    auto fd = top3(dense);
    const double bin = dense.bin_hz();
    const double want[] = {200, 1000, 1800};
    bool ok = rec.converged && fr.size() == 3 && fd.size() == 3;
    for (std::size_t i = 0; ok && i < 3; ++i)
        ok = std::abs(fr[i] - want[i]) <= bin && std::abs(fd[i] - want[i]) <= bin;
    std::ostringstream d;
    d << "recovered lines";
    for (double f : fr) d << ' ' << f;
    d << " Hz, dense oracle";
    for (double f : fd) d << ' ' << f;
    d << " Hz, " << rec.iterations << " iterations";
    return {ok, d.str()};
}

// 5 and 6 share one sweep; the 15 dB NCS cells are criterion 5's trials.
struct PenaltySweep {
    SweepResult ncs, nyq;
};

const PenaltySweep& penalty_sweep(const Context& ctx) {
    static std::optional<PenaltySweep> cache;
    if (cache) return *cache;
    SweepRequest r;
    r.trials_per_point = ctx.scale.trials;
    r.parallelism = ctx.parallel;
    r.base.spec = reference_spec(ModulationScheme::BPSK, ctx.scale.symbols);
    r.base.trial_seed = 42;
    r.paths = {SamplingPath::NCS};
    r.snr_grid_db = {0, 5, 6, 10, 11, 15, 16};
    PenaltySweep out;
    out.ncs = run_sweep(r);
    r.paths = {SamplingPath::Nyquist};
    r.snr_grid_db = {0, 5, 10, 15};
    out.nyq = run_sweep(r);
    cache = std::move(out);
    return *cache;
}

Verdict high_snr(const Context& ctx) {
    const auto& sw = penalty_sweep(ctx);
    bool ok = true;
    std::ostringstream d;
    for (ModulationScheme s : kAllSchemes) {
        const SweepRow* row = sw.ncs.find(s, 15, SamplingPath::NCS);
        ok = ok && row->rate >= ctx.scale.high_snr_rate;
        d << to_string(s) << ' ' << pct(row->rate) << ' ';
    }
    d << "(need >= " << pct(ctx.scale.high_snr_rate) << ", " << ctx.scale.trials << " trials)";
    return {ok, d.str()};
}

Verdict snr_penalty(const Context& ctx) {
    const auto& sw = penalty_sweep(ctx);
    const double tol = 0.05;
    bool ok = true;
    std::ostringstream bad;
    for (ModulationScheme s : kAllSchemes) {
        for (double snr : {0.0, 5.0, 10.0}) {
            const double nyq = sw.nyq.find(s, snr, SamplingPath::Nyquist)->rate;
            const double ncs6 = sw.ncs.find(s, snr + 6, SamplingPath::NCS)->rate;
            if (ncs6 < nyq - tol) {
                ok = false;
                bad << ' ' << to_string(s) << ": NCS@" << snr + 6 << "=" << pct(ncs6) << " < NYQ@" << snr << "=" << pct(nyq);
            }
        }
        for (double snr : {0.0, 5.0, 10.0, 15.0}) {
            const double nyq = sw.nyq.find(s, snr, SamplingPath::Nyquist)->rate;
            const double ncs = sw.ncs.find(s, snr, SamplingPath::NCS)->rate;
            if (nyq < ncs - tol) {
                ok = false;
                bad << ' ' << to_string(s) << ": NYQ@" << snr << "=" << pct(nyq) << " < NCS=" << pct(ncs);
            }
        }
    }
    std::ostringstream d;
    d << "NCS(s+6) >= NYQ(s) - 5 for s in {0,5,10}; NYQ >= NCS - 5 on {0,5,10,15}";
    if (!ok) d << ";" << bad.str();
    return {ok, d.str()};
}

// 7. Carrier and symbol-rate estimates.
Verdict estimation(const Context& ctx) {
    TrialConfig c;
    c.spec = reference_spec(ModulationScheme::QPSK, ctx.scale.symbols);
    c.path = SamplingPath::Nyquist;
    c.trial_seed = 7;
    const double bin = c.spec.nyquist_rate_hz / static_cast<double>(c.spec.length());
    auto clean = run_trial(c);
    const bool nyq_ok = clean.correct && clean.fc_error_hz && *clean.fc_error_hz <= bin && clean.rs_error_hz &&
                        *clean.rs_error_hz <= bin;

    c.path = SamplingPath::NCS;
    c.snr_db = 10;
    int within = 0;
    const int trials = 100;
    for (int i = 0; i < trials; ++i) {
        c.trial_seed = mix_seed(77, static_cast<std::uint64_t>(i));
        auto o = run_trial(c);
        within += o.fc_error_hz && *o.fc_error_hz <= 2 * bin;
    }
    const double frac = static_cast<double>(within) / trials;
    std::ostringstream d;
    d << "noiseless NYQ fc_hat " << clean.result.fc_hat_hz.value_or(NAN) << " rs_hat "
      << clean.result.rs_hat_hz.value_or(NAN) << "; NCS@10dB |fc err| <= 2 bins in " << pct(frac) << " (need >= 90%)";
    return {nyq_ok && frac >= 0.9, d.str()};
}

// 8. Byte-identical CSV across repeats and parallelism.
Verdict determinism(const Context& ctx) {
    SweepRequest r;
    r.snr_grid_db = {5, kNoiseless};
    r.trials_per_point = 3;
    r.base.spec = reference_spec(ModulationScheme::BPSK, ctx.scale.symbols);
    r.base.trial_seed = 42;
    auto csv = [&](int par) {
        r.parallelism = par;
        std::ostringstream os;
        write_csv(os, run_sweep(r));
        return os.str();
    };
    const std::string a = csv(1), b = csv(1), c = csv(4);
    return {a == b && a == c, a == b ? (a == c ? "repeat and --parallel 4 identical" : "parallel run differs")
                                     : "repeat differs"};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"amr acceptance suite"};
    std::string preset = "paper";
    int parallel = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<int> only, expect_fail;
    app.add_option("--preset", preset, "paper or desk")->check(CLI::IsMember({"paper", "desk"}));
    app.add_option("--parallel", parallel, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--only", only, "Run only these criteria")->delimiter(',');
    app.add_option("--expect-fail", expect_fail, "Criteria known to fail")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    Context ctx{preset == "desk" ? Scale{256, 50, 0.85} : Scale{1024, 100, 0.90}, parallel};

    const std::vector<std::pair<std::string, std::function<Verdict(const Context&)>>> criteria = {
        {"reference peak counts, noiseless Nyquist path", reference_counts},
        {"gather/power commutation", commutation},
        {"exact sparse recovery and adjoint", exact_recovery},
        {"squared BPSK lines from compressive samples", squared_bpsk_lines},
        {"high-SNR compressive classification", high_snr},
        {"compressive SNR penalty", snr_penalty},
        {"carrier and symbol-rate estimation", estimation},
        {"sweep determinism", determinism},
    };

    std::printf("preset %s, parallel %d\n", preset.c_str(), parallel);
    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second(ctx);
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool expected = std::find(expect_fail.begin(), expect_fail.end(), id) != expect_fail.end();
        const char* tag = v.pass ? (expected ? "PASS (expected FAIL)" : "PASS") : (expected ? "FAIL (known)" : "FAIL");
        std::printf("[%s] %d. %s: %s [%.1fs]\n", tag, id, criteria[i].first.c_str(), v.detail.c_str(), secs);
        std::fflush(stdout);
        if (!v.pass && !expected) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
