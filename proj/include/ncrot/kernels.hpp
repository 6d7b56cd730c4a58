#pragma once

#include <complex>
#include <span>
#include <string_view>

// Complex reductions used by grid comparisons and quadrature.
//
// Every kernel has a scalar reference in `kernels::scalar` and, when built
// with NCROT_HAVE_AVX2, an AVX2+FMA variant in `kernels::avx2`. The unqualified
// entry points dispatch once at first use based on the running CPU; setting
// the environment variable NCROT_FORCE_SCALAR=1 pins the scalar path.
// Variants agree to rounding (summation order differs), not bitwise.

namespace ncrot::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

Isa active_isa();
std::string_view to_string(Isa isa) noexcept;
/// True when the AVX2 variant was compiled in and the CPU supports it.
bool avx2_available();

/// sum_i a[i] * b[i]
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
/// sum_i a[i] * conj(b[i])
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
/// max_i |a[i] - b[i]|  (0 for empty input)
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);

namespace scalar {
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);
}  // namespace scalar

#if defined(NCROT_HAVE_AVX2)
namespace avx2 {
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b);
}  // namespace avx2
#endif

}  // namespace ncrot::kernels
