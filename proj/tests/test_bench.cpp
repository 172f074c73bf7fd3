#include <doctest.h>

#include "amr/bench.hpp"
#include "amr/error.hpp"

#include <sstream>

using namespace amr;

TEST_CASE("SNR grid parsing") {
    CHECK(parse_snr_grid("-5:5:20") == std::vector<double>{-5, 0, 5, 10, 15, 20});
    CHECK(parse_snr_grid("0:0.5:1") == std::vector<double>{0, 0.5, 1});
    CHECK(parse_snr_grid("3") == std::vector<double>{3});
    auto g = parse_snr_grid("inf,10");
    REQUIRE(g.size() == 2);
    CHECK(std::isinf(g[0]));
    CHECK_THROWS_AS(parse_snr_grid("1:2"), ParameterError);
    CHECK_THROWS_AS(parse_snr_grid("5:1:0"), ParameterError);
    CHECK_THROWS_AS(parse_snr_grid("0:0:5"), ParameterError);
    CHECK_THROWS_AS(parse_snr_grid("ten"), ParameterError);
    CHECK_THROWS_AS(parse_snr_grid(""), ParameterError);
    CHECK(format_snr(kNoiseless) == "inf");
    CHECK(format_snr(-5) == "-5");
    CHECK(format_snr(2.5) == "2.5");
}

TEST_CASE("measurement count and presets") {
    CHECK(measurement_count(8192, 0.3) == 2458);
    CHECK(measurement_count(2048, 0.3) == 614);
    CHECK(measurement_count(10, 1.0) == 10);
    CHECK_THROWS_AS(measurement_count(10, 0.0), ParameterError);
    CHECK_THROWS_AS(measurement_count(10, 1.5), ParameterError);
    auto desk = find_preset("desk");
    REQUIRE(desk.has_value());
    CHECK(reference_spec(ModulationScheme::BPSK, desk->num_symbols).length() == 2048);
    CHECK(find_preset("paper")->trials == 100);
    CHECK_FALSE(find_preset("huge").has_value());
    CHECK(parse_path("ncs") == SamplingPath::NCS);
    CHECK_FALSE(parse_path("uniform").has_value());
}

TEST_CASE("single trials") {
    TrialConfig c;
    c.spec = reference_spec(ModulationScheme::BPSK);
    c.path = SamplingPath::Nyquist;
    c.trial_seed = 3;
    CHECK(run_trial(c).correct);

    c.spec = reference_spec(ModulationScheme::QPSK);
    c.path = SamplingPath::NCS;
    auto ncs = run_trial(c);
    CHECK(ncs.correct);
    REQUIRE(ncs.result.fc_hat_hz.has_value());
    c.path = SamplingPath::Nyquist;
    auto nyq = run_trial(c);
    REQUIRE(nyq.result.fc_hat_hz.has_value());
    CHECK(std::abs(*ncs.result.fc_hat_hz - *nyq.result.fc_hat_hz) <= 6400.0 / 8192);
    CHECK(*ncs.fc_error_hz <= 6400.0 / 8192);

    auto again = run_trial(c);
    CHECK(again.result.counts.c2 == nyq.result.counts.c2);
    CHECK(again.result.fc_hat_hz == nyq.result.fc_hat_hz);
}

TEST_CASE("noise-only trials are unknown") {
    for (SamplingPath p : {SamplingPath::Nyquist, SamplingPath::NCS}) {
        TrialConfig c;
        c.spec = reference_spec(ModulationScheme::QPSK, 256);
        c.snr_db = 0;
        c.noise_only = true;
        c.path = p;
        for (std::uint64_t s = 0; s < 5; ++s) {
            c.trial_seed = s;
            auto o = run_trial(c);
            CHECK_FALSE(o.result.label.has_value());
            CHECK_FALSE(o.correct);
        }
    }
}

TEST_CASE("trial validation") {
    TrialConfig c;
    c.spec = reference_spec(ModulationScheme::QPSK);
    c.spec.carrier_hz = 600;  // 8 * 600 + 2400 > 6400
    CHECK_THROWS_AS(run_trial(c), ParameterError);
    c = {};
    c.compression_ratio = 0;
    CHECK_THROWS_AS(run_trial(c), ParameterError);
}

namespace {

SweepRequest small_request() {
    SweepRequest r;
    r.schemes = {ModulationScheme::BPSK, ModulationScheme::PSK8, ModulationScheme::MSK};
    r.snr_grid_db = {kNoiseless, 5.0};
    r.trials_per_point = 3;
    r.base.spec = reference_spec(ModulationScheme::BPSK, 256);
    r.base.trial_seed = 42;
    return r;
}

std::string csv(const SweepResult& res) {
    std::ostringstream os;
    write_csv(os, res);
    return os.str();
}

} // namespace

TEST_CASE("sweep rows, ordering and CSV") {
    auto res = run_sweep(small_request());
    REQUIRE(res.rows.size() == 12);
    CHECK(res.rows[0].scheme == ModulationScheme::BPSK);
    CHECK(std::isinf(res.rows[0].snr_db));
    CHECK(res.rows[0].path == SamplingPath::NCS);
    CHECK(res.rows[1].path == SamplingPath::Nyquist);
    CHECK(res.rows[2].snr_db == 5.0);
    CHECK(res.rows[4].scheme == ModulationScheme::PSK8);
    for (const auto& r : res.rows) {
        CHECK(r.trials == 3);
        CHECK(r.correct <= r.trials);
        CHECK(r.rate == doctest::Approx(r.correct / 3.0));
        if (r.scheme == ModulationScheme::PSK8) CHECK_FALSE(r.mae_fc_hz.has_value());
    }
    auto* cell = res.find(ModulationScheme::MSK, kNoiseless, SamplingPath::Nyquist);
    REQUIRE(cell != nullptr);
    CHECK(cell->correct == 3);
    CHECK(cell->mae_fc_hz == 0.0);

    std::istringstream lines(csv(res));
    std::string line;
    std::getline(lines, line);
    CHECK(line == "scheme,snr_db,path,trials,correct,rate,mae_fc_hz,mae_rs_hz");
    std::getline(lines, line);
    CHECK(line.rfind("bpsk,inf,ncs,3,", 0) == 0);
    for (int i = 0; i < 4; ++i) std::getline(lines, line);
    CHECK(line.rfind("8psk,inf,ncs,3,", 0) == 0);
    CHECK(line.substr(line.size() - 2) == ",,");
}

TEST_CASE("sweep output is independent of parallelism") {
    auto req = small_request();
    const std::string serial = csv(run_sweep(req));
    CHECK(csv(run_sweep(req)) == serial);
    req.parallelism = 3;
    CHECK(csv(run_sweep(req)) == serial);
    req.parallelism = 64;
    CHECK(csv(run_sweep(req)) == serial);
    req.base.trial_seed = 43;
    req.snr_grid_db = {0.0};
    auto other = run_sweep(req);
    CHECK(other.rows.size() == 6);
}

TEST_CASE("single-trial sweep") {
    SweepRequest r;
    r.schemes = {ModulationScheme::QPSK};
    r.paths = {SamplingPath::Nyquist};
    r.trials_per_point = 1;
    r.base.spec = reference_spec(ModulationScheme::QPSK, 256);
    auto res = run_sweep(r);
    REQUIRE(res.rows.size() == 1);
    CHECK((res.rows[0].rate == 0.0 || res.rows[0].rate == 1.0));
}

TEST_CASE("sweep argument errors") {
    auto r = small_request();
    r.trials_per_point = 0;
    CHECK_THROWS_AS(run_sweep(r), ParameterError);
    r = small_request();
    r.parallelism = 0;
    CHECK_THROWS_AS(run_sweep(r), ParameterError);
    r = small_request();
    r.schemes.clear();
    CHECK_THROWS_AS(run_sweep(r), ParameterError);
    SweepResult empty;
    CHECK_THROWS_AS(save_csv("/nonexistent/dir/out.csv", empty), IoError);
}

TEST_CASE("seed mixing separates nearby inputs") {
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
    CHECK(mix_seed(0, 0) != mix_seed(0, 1));
    CHECK(mix_seed(7, 9) == mix_seed(7, 9));
}
