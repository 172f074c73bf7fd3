#include "amr/sensing.hpp"

#include "amr/error.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace amr {

MeasurementPlan::MeasurementPlan(std::size_t ambient_len, std::vector<std::size_t> indices, std::uint64_t seed)
    : ambient_len_(ambient_len), indices_(std::move(indices)), seed_(seed) {
    if (indices_.empty()) throw ParameterError("measurement plan needs at least one index");
    if (indices_.size() > ambient_len_) throw ParameterError("more measurements than ambient samples");
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] >= ambient_len_) throw ParameterError("plan index out of range");
        if (i > 0 && indices_[i] <= indices_[i - 1]) throw ParameterError("plan indices must be strictly increasing");
    }
}

MeasurementPlan make_plan(std::size_t ambient_len, std::size_t num_meas, std::uint64_t seed) {
    if (num_meas == 0) throw ParameterError("num_meas must be positive");
    if (num_meas > ambient_len) throw ParameterError("num_meas exceeds ambient_len");
    std::vector<std::size_t> all(ambient_len);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<std::size_t> picked;
    picked.reserve(num_meas);
    std::mt19937_64 rng(seed);
    // Selection sampling keeps the input order, so the result is already sorted.
    std::sample(all.begin(), all.end(), std::back_inserter(picked), num_meas, rng);
    return MeasurementPlan(ambient_len, std::move(picked), seed);
}

std::vector<cplx> apply_plan(const MeasurementPlan& plan, std::span<const cplx> samples) {
    if (samples.size() != plan.ambient_len())
        throw DimensionError("apply_plan: signal length " + std::to_string(samples.size()) + " != plan ambient length " +
                             std::to_string(plan.ambient_len()));
    std::vector<cplx> y(plan.num_measurements());
    const auto idx = plan.indices();
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = samples[idx[i]];
    return y;
}

std::vector<cplx> apply_plan(const MeasurementPlan& plan, const ComplexSignal& signal) {
    return apply_plan(plan, std::span<const cplx>(signal.samples));
}

void write_plan(std::ostream& os, const MeasurementPlan& plan) {
    os << plan.ambient_len() << ' ' << plan.num_measurements() << ' ' << plan.seed() << '\n';
    for (std::size_t idx : plan.indices()) os << idx << '\n';
}

MeasurementPlan read_plan(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParameterError("plan: missing header line");
    std::istringstream header(line);
    std::size_t ambient = 0, count = 0;
    std::uint64_t seed = 0;
    if (!(header >> ambient >> count >> seed)) throw ParameterError("plan: header must be 'ambient_len M_meas seed'");
    std::vector<std::size_t> indices;
    indices.reserve(count);
    while (indices.size() < count && std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        std::size_t idx = 0;
        if (!(row >> idx)) throw ParameterError("plan: bad index line '" + line + "'");
        indices.push_back(idx);
    }
    if (indices.size() != count)
        throw ParameterError("plan: header announces " + std::to_string(count) + " indices, found " +
                             std::to_string(indices.size()));
    return MeasurementPlan(ambient, std::move(indices), seed);
}

void save_plan(const std::string& path, const MeasurementPlan& plan) {
    std::ofstream os(path);
    if (!os) throw IoError(path, "cannot open for writing");
    write_plan(os, plan);
    if (!os) throw IoError(path, "write failed");
}

MeasurementPlan load_plan(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError(path, "cannot open for reading");
    return read_plan(is);
}

} // namespace amr
