#include "amr/recovery.hpp"

#include "amr/error.hpp"
#include "amr/fft.hpp"
#include "amr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace amr {

namespace {

constexpr double kPenaltyMin = 1e-4;
constexpr double kPenaltyMax = 1e4;
// Threshold at unit penalty, as a fraction of the largest min-norm coefficient.
constexpr double kBaseThresholdFraction = 0.1;
constexpr int kBalanceEvery = 10;
constexpr double kBalanceRatio = 10.0;

bool all_finite(std::span<const cplx> v) {
    return std::all_of(v.begin(), v.end(), [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

} // namespace

void SolverConfig::validate() const {
    if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
    if (!(primal_tol > 0.0) || !(dual_tol > 0.0)) throw ParameterError("solver tolerances must be positive");
    if (!(noise_eps >= 0.0) || !std::isfinite(noise_eps)) throw ParameterError("noise_eps must be finite and >= 0");
    if (!(penalty > 0.0) || !std::isfinite(penalty)) throw ParameterError("penalty must be positive");
}

PartialDftOperator::PartialDftOperator(const MeasurementPlan& plan)
    : ambient_(plan.ambient_len()), indices_(plan.indices().begin(), plan.indices().end()) {}

void PartialDftOperator::forward(std::span<const cplx> coeffs, std::span<cplx> out) const {
    if (coeffs.size() != ambient_ || out.size() != indices_.size())
        throw DimensionError("PartialDftOperator::forward: dimension mismatch");
    std::vector<cplx> z(ambient_);
    fft::backward(coeffs, z);
    const double inv_len = 1.0 / static_cast<double>(ambient_);
    for (std::size_t i = 0; i < indices_.size(); ++i) out[i] = z[indices_[i]] * inv_len;
}

void PartialDftOperator::adjoint(std::span<const cplx> y, std::span<cplx> out) const {
    if (y.size() != indices_.size() || out.size() != ambient_)
        throw DimensionError("PartialDftOperator::adjoint: dimension mismatch");
    std::vector<cplx> filled(ambient_);
    for (std::size_t i = 0; i < indices_.size(); ++i) filled[indices_[i]] = y[i];
    fft::forward(filled, out);
    kernels::active().scale(out, 1.0 / static_cast<double>(ambient_));
}

std::vector<cplx> PartialDftOperator::forward(std::span<const cplx> coeffs) const {
    std::vector<cplx> out(indices_.size());
    forward(coeffs, out);
    return out;
}

std::vector<cplx> PartialDftOperator::adjoint(std::span<const cplx> y) const {
    std::vector<cplx> out(ambient_);
    adjoint(y, out);
    return out;
}

std::vector<cplx> forward_operator(std::span<const cplx> coeffs, const MeasurementPlan& plan) {
    return PartialDftOperator(plan).forward(coeffs);
}

RecoveryReport reconstruct(std::span<const cplx> measurements, const MeasurementPlan& plan, const SolverConfig& config,
                           double rate_hz, NptOrder order) {
    config.validate();
    if (measurements.size() != plan.num_measurements())
        throw DimensionError("reconstruct: " + std::to_string(measurements.size()) + " measurements for a plan of " +
                             std::to_string(plan.num_measurements()));
    if (!all_finite(measurements)) throw DataError("reconstruct: non-finite measurement");

    const auto& k = kernels::active();
    const std::size_t n = plan.ambient_len();
    const std::size_t m = plan.num_measurements();
    const auto idx = plan.indices();

    RecoveryReport report;
    report.spectrum = SpectrumEstimate{std::vector<cplx>(n), rate_hz, order};

    const double y_norm = std::sqrt(k.norm_sq(measurements));
    if (y_norm == 0.0) {
        report.converged = true;
        return report;
    }

    // L * A^H e is the minimum-norm correction for a residual e, because A A^H = I / L.
    std::vector<cplx> filled(n);
    auto lift = [&](std::span<const cplx> e, std::span<cplx> out) {
        std::fill(filled.begin(), filled.end(), cplx{});
        for (std::size_t i = 0; i < m; ++i) filled[idx[i]] = e[i];
        fft::forward(filled, out);
    };

    std::vector<cplx> synth(n);
    const double inv_len = 1.0 / static_cast<double>(n);
    auto apply_forward = [&](std::span<const cplx> f, std::span<cplx> out) {
        fft::backward(f, synth);
        for (std::size_t i = 0; i < m; ++i) out[i] = synth[idx[i]] * inv_len;
    };

    std::vector<cplx> x(n), z(n), z_prev(n), u(n), w(n), correction(n);
    std::vector<cplx> ax(m), au(m), aw(m), resid(m), az(m);

    lift(measurements, correction);
    double scale = 0.0;
    for (const cplx& c : correction) scale = std::max(scale, std::abs(c));

    double penalty = std::clamp(config.penalty, kPenaltyMin, kPenaltyMax);
    auto threshold = [&] { return kBaseThresholdFraction * scale / penalty; };
    auto rescale_dual = [&](double factor) {
        k.scale(u, factor);
        k.scale(au, factor);
    };

    const double eps = config.noise_eps;
    double primal = std::numeric_limits<double>::infinity();
    double dual = std::numeric_limits<double>::infinity();
    int iter = 0;
    while (iter < config.max_iters) {
        ++iter;
        k.soft_threshold(z, u, threshold(), x);
        apply_forward(x, ax);

        const double feas = std::sqrt(k.diff_norm_sq(ax, measurements));
        primal = std::max(feas - eps, 0.0) / y_norm;

        // Project w = x + u onto {f : ||A f - y|| <= eps}.
        k.add(x, u, w);
        k.add(ax, au, aw);
        k.sub(aw, measurements, resid);
        if (eps > 0.0) {
            const double r = std::sqrt(k.norm_sq(resid));
            k.scale(resid, r > eps ? 1.0 - eps / r : 0.0);
        }
        std::swap(z, z_prev);
        lift(resid, correction);
        k.sub(w, correction, z);
        k.sub(aw, resid, az);

        k.accumulate_diff(u, x, z);
        k.accumulate_diff(au, ax, az);

        const double z_norm = std::sqrt(k.norm_sq(z));
        dual = z_norm > 0.0 ? std::sqrt(k.diff_norm_sq(z, z_prev)) / z_norm : 0.0;
        if (config.record_history) report.primal_history.push_back(primal);

        if (primal <= config.primal_tol && dual <= config.dual_tol) {
            report.converged = true;
            break;
        }
        if (iter % kBalanceEvery == 0) {
            // u is the dual scaled by 1/rho, so it shrinks when the penalty grows.
            if (primal > kBalanceRatio * dual && penalty * 2.0 <= kPenaltyMax) {
                penalty *= 2.0;
                rescale_dual(0.5);
            } else if (dual > kBalanceRatio * primal && penalty / 2.0 >= kPenaltyMin) {
                penalty /= 2.0;
                rescale_dual(2.0);
            }
        }
    }

    report.spectrum.coeffs = std::move(x);
    report.iterations = iter;
    report.final_primal_residual = primal;
    report.final_dual_residual = dual;
    return report;
}

} // namespace amr
