#include "qnsch/kernels.hpp"

// AVX2+FMA kernels. This translation unit is compiled with -mavx2 -mfma;
// callers must go through kernels::active(), which only hands out this table
// after a CPUID check.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <limits>

namespace qnsch::kernels {
namespace {

void v_add(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] + b[i];
}

void v_sub(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] - b[i];
}

void v_mul(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void v_scale(const double* a, double s, double* out, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
    }
    for (; i < n; ++i) out[i] = a[i] * s;
}

void v_axpby(double sa, const double* a, double sb, const double* b,
             double* out, std::size_t n) {
    const __m256d va = _mm256_set1_pd(sa);
    const __m256d vb = _mm256_set1_pd(sb);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_mul_pd(vb, _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(out + i,
                         _mm256_fmadd_pd(va, _mm256_loadu_pd(a + i), t));
    }
    // tail matches the scalar kernel: sa*a + sb*b evaluated as mul+mul+add
    for (; i < n; ++i) out[i] = sa * a[i] + sb * b[i];
}

void v_fmadd(const double* a, const double* b, const double* c, double* out,
             std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(_mm256_loadu_pd(a + i),
                                                  _mm256_loadu_pd(b + i),
                                                  _mm256_loadu_pd(c + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i] + c[i];
}

void v_cmul_real(const double* z, const double* m, double* out,
                 std::size_t nc) {
    std::size_t i = 0;
    for (; i + 2 <= nc; i += 2) {
        // duplicate (m0,m1) -> (m0,m0,m1,m1) to match the interleaved pairs
        const __m128d mp = _mm_loadu_pd(m + i);
        const __m256d mm = _mm256_permute4x64_pd(
            _mm256_castpd128_pd256(mp), 0x50);
        _mm256_storeu_pd(out + 2 * i,
                         _mm256_mul_pd(_mm256_loadu_pd(z + 2 * i), mm));
    }
    for (; i < nc; ++i) {
        out[2 * i]     = m[i] * z[2 * i];
        out[2 * i + 1] = m[i] * z[2 * i + 1];
    }
}

void v_cmul_imag(const double* z, const double* t, double* out,
                 std::size_t nc) {
    const __m256d negmask =
        _mm256_castsi256_pd(_mm256_set_epi64x(0, 0x8000000000000000LL, 0,
                                              0x8000000000000000LL));
    std::size_t i = 0;
    for (; i + 2 <= nc; i += 2) {
        const __m128d tp = _mm_loadu_pd(t + i);
        const __m256d tt = _mm256_permute4x64_pd(
            _mm256_castpd128_pd256(tp), 0x50);
        const __m256d zz = _mm256_loadu_pd(z + 2 * i);
        // (re,im) -> (im,re), negate the lanes holding im, then scale by t
        const __m256d sw = _mm256_permute_pd(zz, 0x5);
        _mm256_storeu_pd(out + 2 * i,
                         _mm256_mul_pd(_mm256_xor_pd(sw, negmask), tt));
    }
    for (; i < nc; ++i) {
        const double re = z[2 * i];
        const double im = z[2 * i + 1];
        out[2 * i]     = -t[i] * im;
        out[2 * i + 1] = t[i] * re;
    }
}

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s  = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double v_sum(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += a[i];
    return r;
}

double v_dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                              acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

void v_minmax(const double* a, std::size_t n, double* mn, double* mx) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    if (n >= 4) {
        __m256d vlo = _mm256_loadu_pd(a);
        __m256d vhi = vlo;
        for (i = 4; i + 4 <= n; i += 4) {
            const __m256d v = _mm256_loadu_pd(a + i);
            vlo = _mm256_min_pd(vlo, v);
            vhi = _mm256_max_pd(vhi, v);
        }
        alignas(32) double tmp[4];
        _mm256_store_pd(tmp, vlo);
        for (double x : tmp)
            if (x < lo) lo = x;
        _mm256_store_pd(tmp, vhi);
        for (double x : tmp)
            if (x > hi) hi = x;
    }
    for (; i < n; ++i) {
        if (a[i] < lo) lo = a[i];
        if (a[i] > hi) hi = a[i];
    }
    *mn = lo;
    *mx = hi;
}

} // namespace

const Kernels* avx2_table() {
    static const Kernels k = {
        "avx2",  v_add,       v_sub,       v_mul, v_scale, v_axpby,
        v_fmadd, v_cmul_real, v_cmul_imag, v_sum, v_dot,   v_minmax,
    };
    return &k;
}

} // namespace qnsch::kernels

#else

namespace qnsch::kernels {
const Kernels* avx2_table() { return nullptr; }
} // namespace qnsch::kernels

#endif
