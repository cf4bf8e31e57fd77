#pragma once

#include <cstddef>

namespace qnsch::kernels {

// Pointwise array kernels behind the field algebra and the spectral
// multiplier loops. Each operation has a scalar reference implementation
// and an AVX2+FMA variant; the active table is resolved once per process
// from CPU capabilities and may be overridden with QNSCH_SIMD=scalar|avx2.
//
// Complex arrays are interleaved (re,im) pairs; n_complex counts pairs.
struct Kernels {
    const char* name;

    void (*add)(const double* a, const double* b, double* out, std::size_t n);
    void (*sub)(const double* a, const double* b, double* out, std::size_t n);
    void (*mul)(const double* a, const double* b, double* out, std::size_t n);
    void (*scale)(const double* a, double s, double* out, std::size_t n);
    // out = sa*a + sb*b
    void (*axpby)(double sa, const double* a, double sb, const double* b,
                  double* out, std::size_t n);
    // out = a*b + c
    void (*fmadd)(const double* a, const double* b, const double* c,
                  double* out, std::size_t n);

    // spectral helpers: z_out = m * z_in   and   z_out = i * t * z_in
    void (*cmul_real)(const double* z_in, const double* m, double* z_out,
                      std::size_t n_complex);
    void (*cmul_imag)(const double* z_in, const double* t, double* z_out,
                      std::size_t n_complex);

    double (*sum)(const double* a, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    void (*minmax)(const double* a, std::size_t n, double* mn, double* mx);
};

const Kernels& scalar();   // reference implementation, always available
const Kernels* avx2();     // nullptr when the CPU lacks AVX2/FMA
const Kernels& active();   // table selected at startup

} // namespace qnsch::kernels
