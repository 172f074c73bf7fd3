#include "amr/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace amr::kernels {

namespace detail {
extern const KernelTable scalar_table;
#if defined(AMR_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
} // namespace detail

namespace {

bool cpu_has_avx2() noexcept {
#if defined(AMR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable& choose() noexcept {
    if (const char* env = std::getenv("AMR_KERNELS"); env && std::string_view(env) == "scalar")
        return detail::scalar_table;
    if (const KernelTable* simd = table(Backend::Avx2)) return *simd;
    return detail::scalar_table;
}

} // namespace

const KernelTable* table(Backend backend) noexcept {
    switch (backend) {
    case Backend::Scalar:
        return &detail::scalar_table;
    case Backend::Avx2:
#if defined(AMR_HAVE_AVX2)
        if (cpu_has_avx2()) return &detail::avx2_table;
#endif
        return nullptr;
    }
    return nullptr;
}

const KernelTable& active() noexcept {
    static const KernelTable& chosen = choose();
    return chosen;
}

} // namespace amr::kernels
