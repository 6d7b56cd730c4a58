// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>
#include <cassert>
#include <cmath>

#include "ncrot/kernels.hpp"

namespace ncrot::kernels::avx2 {

namespace {

// std::complex<double> is layout-compatible with double[2]; one __m256d holds
// two complex numbers as (re0, im0, re1, im1).
inline const double* raw(std::span<const cplx> s) { return reinterpret_cast<const double*>(s.data()); }

// Accumulates a*b (conjugate = false) or a*conj(b) (conjugate = true).
// Lanes: p = a * b elementwise gives (ar*br, ai*bi, ...); q = a * swap(b) gives
// (ar*bi, ai*br, ...). The real part is p0 -+ p1, the imaginary part q0 +- q1
// (sign by conjugation); the final combination happens after the loop.
template <bool Conjugate>
cplx reduce(std::span<const cplx> a, std::span<const cplx> b) {
    assert(a.size() == b.size());
    const double* pa = raw(a);
    const double* pb = raw(b);
    const std::size_t n = a.size();
    __m256d p0 = _mm256_setzero_pd(), q0 = _mm256_setzero_pd();
    __m256d p1 = _mm256_setzero_pd(), q1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
        const __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
        const __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
        p0 = _mm256_fmadd_pd(va0, vb0, p0);
        q0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0b0101), q0);
        p1 = _mm256_fmadd_pd(va1, vb1, p1);
        q1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0b0101), q1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        p0 = _mm256_fmadd_pd(va, vb, p0);
        q0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), q0);
    }
    const __m256d p = _mm256_add_pd(p0, p1);
    const __m256d q = _mm256_add_pd(q0, q1);
    alignas(32) double ps[4];
    alignas(32) double qs[4];
    _mm256_store_pd(ps, p);
    _mm256_store_pd(qs, q);
    double re, im;
    if constexpr (Conjugate) {
        re = (ps[0] + ps[2]) + (ps[1] + ps[3]);
        im = (qs[1] + qs[3]) - (qs[0] + qs[2]);
    } else {
        re = (ps[0] + ps[2]) - (ps[1] + ps[3]);
        im = (qs[0] + qs[2]) + (qs[1] + qs[3]);
    }
    for (; i < n; ++i) {
        const cplx x = a[i];
        const cplx y = Conjugate ? std::conj(b[i]) : b[i];
        re += x.real() * y.real() - x.imag() * y.imag();
        im += x.real() * y.imag() + x.imag() * y.real();
    }
    return {re, im};
}

}  // namespace

cplx dot(std::span<const cplx> a, std::span<const cplx> b) { return reduce<false>(a, b); }

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) { return reduce<true>(a, b); }

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    assert(a.size() == b.size());
    const double* pa = raw(a);
    const double* pb = raw(b);
    const std::size_t n = a.size();
    __m256d worst = _mm256_setzero_pd();
    __m256d nan_seen = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i));
        const __m256d sq = _mm256_mul_pd(d, d);
        // (dr^2 + di^2) in both lanes of each complex pair.
        const __m256d m2 = _mm256_add_pd(sq, _mm256_permute_pd(sq, 0b0101));
        nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(m2, m2, _CMP_UNORD_Q));
        worst = _mm256_max_pd(worst, m2);
    }
    alignas(32) double w[4];
    alignas(32) double nn[4];
    _mm256_store_pd(w, worst);
    _mm256_store_pd(nn, nan_seen);
    for (double v : nn) {
        if (v != 0.0 || std::isnan(v)) return std::nan("");
    }
    double worst2 = std::max(std::max(w[0], w[1]), std::max(w[2], w[3]));
    for (; i < n; ++i) {
        const double dr = a[i].real() - b[i].real();
        const double di = a[i].imag() - b[i].imag();
        const double m2 = dr * dr + di * di;
        if (std::isnan(m2)) return std::nan("");
        worst2 = std::max(worst2, m2);
    }
    return std::sqrt(worst2);
}

}  // namespace ncrot::kernels::avx2
