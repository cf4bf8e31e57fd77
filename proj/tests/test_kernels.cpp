#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qnsch/kernels.hpp"

using namespace qnsch;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

} // namespace

// Elementwise kernels must agree exactly between the scalar reference and
// the SIMD variant; reductions may reassociate, so they get a tolerance.
TEST_CASE("scalar/avx2 equivalence") {
    const kernels::Kernels* simd = kernels::avx2();
    if (!simd) {
        MESSAGE("AVX2 unavailable on this host; equivalence suite skipped");
        return;
    }
    const kernels::Kernels& ref = kernels::scalar();

    // odd sizes exercise the vector tails
    for (std::size_t n : {1ul, 7ul, 64ul, 1001ul, 16384ul}) {
        auto a = random_vec(n, 11 + static_cast<unsigned>(n));
        auto b = random_vec(n, 17 + static_cast<unsigned>(n));
        auto c = random_vec(n, 23 + static_cast<unsigned>(n));
        std::vector<double> r(n), s(n);

        ref.add(a.data(), b.data(), r.data(), n);
        simd->add(a.data(), b.data(), s.data(), n);
        CHECK(r == s);

        ref.sub(a.data(), b.data(), r.data(), n);
        simd->sub(a.data(), b.data(), s.data(), n);
        CHECK(r == s);

        ref.mul(a.data(), b.data(), r.data(), n);
        simd->mul(a.data(), b.data(), s.data(), n);
        CHECK(r == s);

        ref.scale(a.data(), 1.7, r.data(), n);
        simd->scale(a.data(), 1.7, s.data(), n);
        CHECK(r == s);

        ref.axpby(0.3, a.data(), -2.1, b.data(), r.data(), n);
        simd->axpby(0.3, a.data(), -2.1, b.data(), s.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(r[i] == doctest::Approx(s[i]).epsilon(1e-15));

        ref.fmadd(a.data(), b.data(), c.data(), r.data(), n);
        simd->fmadd(a.data(), b.data(), c.data(), s.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(r[i] == doctest::Approx(s[i]).epsilon(1e-15));

        const double sr = ref.sum(a.data(), n);
        const double ss = simd->sum(a.data(), n);
        CHECK(sr == doctest::Approx(ss).epsilon(1e-13));

        const double dr = ref.dot(a.data(), b.data(), n);
        const double ds = simd->dot(a.data(), b.data(), n);
        CHECK(dr == doctest::Approx(ds).epsilon(1e-13));

        double mn_r, mx_r, mn_s, mx_s;
        ref.minmax(a.data(), n, &mn_r, &mx_r);
        simd->minmax(a.data(), n, &mn_s, &mx_s);
        CHECK(mn_r == mn_s);
        CHECK(mx_r == mx_s);
    }
}

TEST_CASE("complex multiplier kernels") {
    const kernels::Kernels* simd = kernels::avx2();
    const kernels::Kernels& ref = kernels::scalar();

    for (std::size_t nc : {1ul, 5ul, 128ul, 4097ul}) {
        auto z = random_vec(2 * nc, 31 + static_cast<unsigned>(nc));
        auto m = random_vec(nc, 37 + static_cast<unsigned>(nc));
        std::vector<double> r(2 * nc), s(2 * nc);

        ref.cmul_real(z.data(), m.data(), r.data(), nc);
        for (std::size_t i = 0; i < nc; ++i) {
            CHECK(r[2 * i] == m[i] * z[2 * i]);
            CHECK(r[2 * i + 1] == m[i] * z[2 * i + 1]);
        }
        ref.cmul_imag(z.data(), m.data(), r.data(), nc);
        for (std::size_t i = 0; i < nc; ++i) {
            CHECK(r[2 * i] == -m[i] * z[2 * i + 1]);
            CHECK(r[2 * i + 1] == m[i] * z[2 * i]);
        }

        if (simd) {
            ref.cmul_real(z.data(), m.data(), r.data(), nc);
            simd->cmul_real(z.data(), m.data(), s.data(), nc);
            CHECK(r == s);
            ref.cmul_imag(z.data(), m.data(), r.data(), nc);
            simd->cmul_imag(z.data(), m.data(), s.data(), nc);
            CHECK(r == s);
        }
    }
}

TEST_CASE("in-place complex multiply is safe") {
    // the spectral pipeline applies multipliers in place on the FFT buffer
    const kernels::Kernels& k = kernels::active();
    auto z = random_vec(2 * 777, 5);
    auto m = random_vec(777, 6);
    auto expect = z;
    kernels::scalar().cmul_real(z.data(), m.data(), expect.data(), 777);
    k.cmul_real(z.data(), m.data(), z.data(), 777);
    CHECK(z == expect);

    auto z2 = random_vec(2 * 777, 7);
    auto expect2 = z2;
    kernels::scalar().cmul_imag(z2.data(), m.data(), expect2.data(), 777);
    k.cmul_imag(z2.data(), m.data(), z2.data(), 777);
    CHECK(z2 == expect2);
}

TEST_CASE("active table resolves") {
    const kernels::Kernels& k = kernels::active();
    CHECK((std::string(k.name) == "scalar" || std::string(k.name) == "avx2"));
    std::vector<double> a{1.0, 2.0, 3.0};
    CHECK(k.sum(a.data(), 3) == doctest::Approx(6.0));
}
