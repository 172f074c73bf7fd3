#include <doctest.h>

#include "amr/kernels.hpp"
#include "oracle.hpp"

#include <cstdlib>
#include <cstring>
#include <string_view>

using namespace amr::kernels;

namespace {

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 16, 63, 1001};

bool bit_equal(std::span<const cplx> a, std::span<const cplx> b) {
    return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0);
}

} // namespace

TEST_CASE("scalar table is always available") {
    REQUIRE(table(Backend::Scalar) != nullptr);
    CHECK(table(Backend::Scalar)->backend == Backend::Scalar);
    CHECK(active().power != nullptr);
}

TEST_CASE("scalar power matches repeated multiplication") {
    std::mt19937_64 rng(3);
    const auto& k = *table(Backend::Scalar);
    auto z = oracle::random_vector(257, rng);
    for (int s = 0; s <= 3; ++s) {
        std::vector<cplx> out(z.size());
        k.power(z, out, s);
        std::vector<cplx> ref;
        for (cplx x : z) ref.push_back(oracle::power(x, 1 << s));
        CHECK(oracle::rel_err(out, ref) < 1e-13);
    }
}

TEST_CASE("scalar soft threshold") {
    const auto& k = *table(Backend::Scalar);
    std::vector<cplx> a{{3, 4}, {0.3, 0.4}, {0, 0}, {-6, 8}};
    std::vector<cplx> b(4);
    std::vector<cplx> out(4);
    k.soft_threshold(a, b, 1.0, out);
    CHECK(std::abs(out[0] - cplx(2.4, 3.2)) < 1e-15);
    CHECK(out[1] == cplx(0, 0));
    CHECK(out[2] == cplx(0, 0));
    CHECK(std::abs(out[3] - cplx(-5.4, 7.2)) < 1e-14);
}

TEST_CASE("AVX2 kernels agree with scalar reference") {
    const KernelTable* v = table(Backend::Avx2);
    if (v == nullptr) {
        MESSAGE("AVX2 backend unavailable; skipping");
        return;
    }
    const auto& s = *table(Backend::Scalar);
    std::mt19937_64 rng(11);
    for (std::size_t n : kSizes) {
        CAPTURE(n);
        auto a = oracle::random_vector(n, rng);
        auto b = oracle::random_vector(n, rng);
        if (n > 2) a[1] = b[1];  // exercise the zero-magnitude branch
        std::vector<cplx> o1(n), o2(n);

        for (int sq = 0; sq <= 3; ++sq) {
            s.power(a, o1, sq);
            v->power(a, o2, sq);
            CHECK(bit_equal(o1, o2));
        }
        for (double t : {0.0, 0.5, 3.0}) {
            s.soft_threshold(a, b, t, o1);
            v->soft_threshold(a, b, t, o2);
            CHECK(bit_equal(o1, o2));
        }
        s.add(a, b, o1);
        v->add(a, b, o2);
        CHECK(bit_equal(o1, o2));
        s.sub(a, b, o1);
        v->sub(a, b, o2);
        CHECK(bit_equal(o1, o2));

        o1 = a;
        o2 = a;
        s.accumulate_diff(o1, b, a);
        v->accumulate_diff(o2, b, a);
        CHECK(bit_equal(o1, o2));
        s.scale(o1, 0.37);
        v->scale(o2, 0.37);
        CHECK(bit_equal(o1, o2));

        std::vector<double> m1(n), m2(n);
        s.magnitude(a, m1);
        v->magnitude(a, m2);
        CHECK(m1 == m2);

        const double n1 = s.norm_sq(a), n2 = v->norm_sq(a);
        CHECK(n2 == doctest::Approx(n1).epsilon(1e-13));
        const double d1 = s.diff_norm_sq(a, b), d2 = v->diff_norm_sq(a, b);
        CHECK(d2 == doctest::Approx(d1).epsilon(1e-13));
    }
}

TEST_CASE("power works in place") {
    std::mt19937_64 rng(5);
    auto z = oracle::random_vector(33, rng);
    for (Backend be : {Backend::Scalar, Backend::Avx2}) {
        const KernelTable* k = table(be);
        if (k == nullptr) continue;
        std::vector<cplx> expect(z.size()), inplace = z;
        k->power(z, expect, 2);
        k->power(inplace, inplace, 2);
        CHECK(bit_equal(expect, inplace));
    }
}

TEST_CASE("AMR_KERNELS=scalar forces the reference backend") {
    const char* env = std::getenv("AMR_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar")
        CHECK(active().backend == Backend::Scalar);
    else if (table(Backend::Avx2) != nullptr)
        CHECK(active().backend == Backend::Avx2);
}
