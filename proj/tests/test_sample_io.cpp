#include <doctest.h>

#include "amr/error.hpp"
#include "amr/sample_io.hpp"

#include <sstream>

using namespace amr;

TEST_CASE("sample files round-trip exactly") {
    ComplexSignal s{{{0.1, -2.5e-7}, {1.0 / 3, 4}, {-0.0, 1e300}}, 6400.0};
    std::stringstream ss;
    write_samples(ss, s);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "3 6400");
    ss.seekg(0);
    auto back = read_samples(ss);
    CHECK(back.samples == s.samples);
    CHECK(back.rate_hz == 6400.0);
}

TEST_CASE("malformed sample files") {
    std::istringstream empty("");
    CHECK_THROWS_AS(read_samples(empty), ParameterError);
    std::istringstream short_body("3 100\n1 2\n3 4\n");
    CHECK_THROWS_AS(read_samples(short_body), ParameterError);
    std::istringstream bad_rate("2 -1\n1 2\n3 4\n");
    CHECK_THROWS_AS(read_samples(bad_rate), ParameterError);
    std::istringstream bad_line("1 100\n1 x\n");
    CHECK_THROWS_AS(read_samples(bad_line), ParameterError);
    std::istringstream blank_ok("2 100\n\n1 2\n3 4\n");
    CHECK(read_samples(blank_ok).size() == 2);
    CHECK_THROWS_AS(load_samples("/nonexistent/x.txt"), IoError);
    CHECK_THROWS_AS(save_samples("/nonexistent/dir/x.txt", ComplexSignal{{}, 1.0}), IoError);
}
