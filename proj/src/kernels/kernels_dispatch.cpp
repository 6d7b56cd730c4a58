#include <cstdlib>
#include <cstring>

#include "ncrot/kernels.hpp"

namespace ncrot::kernels {

namespace {

bool force_scalar() {
    const char* v = std::getenv("NCROT_FORCE_SCALAR");
    return v != nullptr && std::strcmp(v, "") != 0 && std::strcmp(v, "0") != 0;
}

Isa detect() {
    if (force_scalar()) return Isa::Scalar;
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

bool avx2_available() {
#if defined(NCROT_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa active_isa() {
    static const Isa isa = detect();
    return isa;
}

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

#if defined(NCROT_HAVE_AVX2)
#define NCROT_DISPATCH(fn, ...) \
    return active_isa() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define NCROT_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

cplx dot(std::span<const cplx> a, std::span<const cplx> b) { NCROT_DISPATCH(dot, a, b); }
cplx dotc(std::span<const cplx> a, std::span<const cplx> b) { NCROT_DISPATCH(dotc, a, b); }
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) { NCROT_DISPATCH(max_abs_diff, a, b); }

#undef NCROT_DISPATCH

}  // namespace ncrot::kernels
