#include "qnsch/kernels.hpp"

#include <limits>

// Reference kernels. Plain loops, kept branch-free so the AVX2 variants can
// be checked against them bit-for-bit where the operation is elementwise.

namespace qnsch::kernels {
namespace {

void s_add(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void s_sub(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void s_mul(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void s_scale(const double* a, double s, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * s;
}

void s_axpby(double sa, const double* a, double sb, const double* b,
             double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = sa * a[i] + sb * b[i];
}

void s_fmadd(const double* a, const double* b, const double* c, double* out,
             std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] + c[i];
}

void s_cmul_real(const double* z, const double* m, double* out,
                 std::size_t nc) {
    for (std::size_t i = 0; i < nc; ++i) {
        out[2 * i]     = m[i] * z[2 * i];
        out[2 * i + 1] = m[i] * z[2 * i + 1];
    }
}

// (re,im) -> i*t*(re,im) = (-t*im, t*re)
void s_cmul_imag(const double* z, const double* t, double* out,
                 std::size_t nc) {
    for (std::size_t i = 0; i < nc; ++i) {
        const double re = z[2 * i];
        const double im = z[2 * i + 1];
        out[2 * i]     = -t[i] * im;
        out[2 * i + 1] = t[i] * re;
    }
}

// Reductions use four accumulators; the AVX2 variants reduce their lanes to
// the same order-insensitive tolerance the tests allow.
double s_sum(const double* a, std::size_t n) {
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 += a[i];
        acc1 += a[i + 1];
        acc2 += a[i + 2];
        acc3 += a[i + 3];
    }
    for (; i < n; ++i) acc0 += a[i];
    return (acc0 + acc1) + (acc2 + acc3);
}

double s_dot(const double* a, const double* b, std::size_t n) {
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 += a[i] * b[i];
        acc1 += a[i + 1] * b[i + 1];
        acc2 += a[i + 2] * b[i + 2];
        acc3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) acc0 += a[i] * b[i];
    return (acc0 + acc1) + (acc2 + acc3);
}

void s_minmax(const double* a, std::size_t n, double* mn, double* mx) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < lo) lo = a[i];
        if (a[i] > hi) hi = a[i];
    }
    *mn = lo;
    *mx = hi;
}

} // namespace

const Kernels& scalar() {
    static const Kernels k = {
        "scalar", s_add,       s_sub,       s_mul, s_scale, s_axpby,
        s_fmadd,  s_cmul_real, s_cmul_imag, s_sum, s_dot,   s_minmax,
    };
    return k;
}

} // namespace qnsch::kernels
