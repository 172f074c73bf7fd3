#pragma once
// Sparse spectrum recovery from compressive measurements:
//
//     minimize ||f||_1  subject to  ||A f - y||_2 <= noise_eps,   A = Phi Psi,
//
// with noise_eps = 0 meaning the equality-constrained basis pursuit program.
// A is never materialized: Psi is an inverse FFT and Phi a gather, so both A
// and its adjoint cost O(L log L). Because A A^H = I / L, projection onto the
// constraint set is closed-form, and the solver is a scaled-form ADMM
// (Douglas-Rachford) splitting between the l1 term and that projection.

#include "amr/nonlinear.hpp"
#include "amr/sensing.hpp"

#include <span>
#include <vector>

namespace amr {

struct SolverConfig {
    int max_iters = 2000;
    /// Relative feasibility: ||A f - y|| / ||y|| (excess over noise_eps when it is > 0).
    double primal_tol = 1e-6;
    /// Relative change of the feasible iterate between iterations.
    double dual_tol = 1e-6;
    double noise_eps = 0.0;
    /// Initial ADMM penalty, relative to the data scale; tuned online by
    /// residual balancing within [1e-4, 1e4].
    double penalty = 1.0;
    /// Keep the per-iteration primal residual in RecoveryReport::primal_history.
    bool record_history = false;

    /// Throws ParameterError when a field is out of range.
    void validate() const;
};

struct RecoveryReport {
    SpectrumEstimate spectrum;
    int iterations = 0;
    double final_primal_residual = 0.0;
    double final_dual_residual = 0.0;
    bool converged = false;
    std::vector<double> primal_history;
};

class PartialDftOperator {
public:
    explicit PartialDftOperator(const MeasurementPlan& plan);

    std::size_t rows() const noexcept { return indices_.size(); }
    std::size_t cols() const noexcept { return ambient_; }

    /// out = Phi (Psi coeffs). coeffs has cols() entries, out rows().
    void forward(std::span<const cplx> coeffs, std::span<cplx> out) const;
    /// out = Psi^H Phi^T y. y has rows() entries, out cols().
    void adjoint(std::span<const cplx> y, std::span<cplx> out) const;

    std::vector<cplx> forward(std::span<const cplx> coeffs) const;
    std::vector<cplx> adjoint(std::span<const cplx> y) const;

private:
    std::size_t ambient_;
    std::vector<std::size_t> indices_;
};

/// Convenience wrapper around PartialDftOperator::forward.
std::vector<cplx> forward_operator(std::span<const cplx> coeffs, const MeasurementPlan& plan);

/// Throws DimensionError on a length mismatch and DataError on non-finite
/// measurements. Non-convergence is reported, not thrown. rate_hz and order
/// only label the returned spectrum.
RecoveryReport reconstruct(std::span<const cplx> measurements, const MeasurementPlan& plan,
                           const SolverConfig& config = {}, double rate_hz = 1.0, NptOrder order = NptOrder{1});

} // namespace amr
