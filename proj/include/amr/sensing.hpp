#pragma once
// Nonuniform compressive sampling. A MeasurementPlan is the random binary
// selection matrix Phi stored as the sorted column index of the single 1 in
// each row, so applying it is a pure gather and commutes with any elementwise
// nonlinearity: gather(z)^N == gather(z^N).

#include "amr/waveforms.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace amr {

class MeasurementPlan {
public:
    /// Throws ParameterError unless indices are strictly increasing, inside
    /// [0, ambient_len), and non-empty.
    MeasurementPlan(std::size_t ambient_len, std::vector<std::size_t> indices, std::uint64_t seed = 0);

    std::size_t ambient_len() const noexcept { return ambient_len_; }
    std::size_t num_measurements() const noexcept { return indices_.size(); }
    std::span<const std::size_t> indices() const noexcept { return indices_; }
    std::uint64_t seed() const noexcept { return seed_; }

    friend bool operator==(const MeasurementPlan&, const MeasurementPlan&) = default;

private:
    std::size_t ambient_len_;
    std::vector<std::size_t> indices_;
    std::uint64_t seed_;
};

/// Uniformly random num_meas-subset of [0, ambient_len), sorted.
MeasurementPlan make_plan(std::size_t ambient_len, std::size_t num_meas, std::uint64_t seed);

/// y[i] = samples[plan.indices()[i]]. Throws DimensionError on length mismatch.
std::vector<cplx> apply_plan(const MeasurementPlan& plan, std::span<const cplx> samples);
std::vector<cplx> apply_plan(const MeasurementPlan& plan, const ComplexSignal& signal);

/// Header line "ambient_len M_meas seed", then one decimal index per line.
void write_plan(std::ostream& os, const MeasurementPlan& plan);
/// Throws ParameterError on malformed content.
MeasurementPlan read_plan(std::istream& is);

/// File variants; I/O failures throw IoError naming the path.
void save_plan(const std::string& path, const MeasurementPlan& plan);
MeasurementPlan load_plan(const std::string& path);

} // namespace amr
