#include <algorithm>
#include <cassert>
#include <cmath>

#include "ncrot/kernels.hpp"

namespace ncrot::kernels::scalar {

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
    assert(a.size() == b.size());
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
    assert(a.size() == b.size());
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
    }
    return {re, im};
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    assert(a.size() == b.size());
    double worst2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double dr = a[i].real() - b[i].real();
        const double di = a[i].imag() - b[i].imag();
        const double m2 = dr * dr + di * di;
        // NaN must propagate so that a broken evaluation never reads as a pass.
        if (!(m2 <= worst2)) worst2 = std::isnan(worst2) ? worst2 : m2;
    }
    return std::sqrt(worst2);
}

}  // namespace ncrot::kernels::scalar
