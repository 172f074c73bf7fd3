#include "amr/fft.hpp"

#include "amr/error.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace amr::fft {
namespace {

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int sign, bool in_place) {
        const Key key{n, sign, in_place};
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        // FFTW_ESTIMATE does not touch the arrays during planning.
        std::vector<cplx> a(n), b(in_place ? 0 : n);
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = in_place ? pa : reinterpret_cast<fftw_complex*>(b.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), pa, pb, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw ParameterError("FFTW could not plan a transform of length " + std::to_string(n));
        plans_.emplace(key, plan);
        return plan;
    }

private:
    using Key = std::tuple<std::size_t, int, bool>;
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

void run(std::span<const cplx> in, std::span<cplx> out, int sign) {
    if (in.size() != out.size()) throw DimensionError("fft: input and output lengths differ");
    if (in.empty()) return;
    const bool in_place = in.data() == out.data();
    fftw_plan plan = cache().get(in.size(), sign, in_place);
    // Out-of-place complex transforms preserve their input.
    auto* pin = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
    fftw_execute_dft(plan, pin, reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) { run(in, out, FFTW_FORWARD); }

void backward(std::span<const cplx> in, std::span<cplx> out) { run(in, out, FFTW_BACKWARD); }

} // namespace amr::fft
