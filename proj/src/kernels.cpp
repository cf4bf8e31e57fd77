#include "qnsch/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qnsch::kernels {

const Kernels* avx2_table(); // defined in kernels_avx2.cpp

const Kernels* avx2() {
#if defined(__x86_64__) || defined(__i386__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return avx2_table();
#endif
    return nullptr;
}

namespace {

const Kernels* resolve() {
    if (const char* env = std::getenv("QNSCH_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar();
        if (std::strcmp(env, "avx2") == 0) {
            if (const Kernels* k = avx2()) return k;
            return &scalar(); // requested ISA unavailable, fall back
        }
    }
    if (const Kernels* k = avx2()) return k;
    return &scalar();
}

} // namespace

const Kernels& active() {
    static const Kernels* k = resolve();
    return *k;
}

} // namespace qnsch::kernels
