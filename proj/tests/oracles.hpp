#pragma once

// Test-only reference computations. Nothing here calls the library routine it
// is used to check: orders by repeated multiplication, invariant factors from
// gcd/determinant, values from long double evaluation, integrals by
// trapezoid quadrature.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "ncrot/intmat.hpp"
#include "ncrot/kernels.hpp"
#include "ncrot/quadirr.hpp"

namespace oracle {

using ncrot::Int;
using ncrot::IntMatrix2;
using cplx = std::complex<double>;

inline IntMatrix2 mul(const IntMatrix2& x, const IntMatrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline bool is_identity(const IntMatrix2& m) { return m.a == 1 && m.b == 0 && m.c == 0 && m.d == 1; }

/// Smallest n <= limit with A^n = I, by repeated multiplication.
inline std::optional<unsigned> brute_order(const IntMatrix2& a, unsigned limit = 12) {
    IntMatrix2 p = a;
    for (unsigned n = 1; n <= limit; ++n) {
        if (is_identity(p)) return n;
        p = mul(p, a);
    }
    return std::nullopt;
}

/// 2x2 invariant factors: h1 = gcd of entries, h1 h2 = |det|.
inline std::pair<Int, Int> invariant_factors(const IntMatrix2& m) {
    Int g;
    mpz_gcd(g.get_mpz_t(), m.a.get_mpz_t(), m.b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.c.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.d.get_mpz_t());
    if (g == 0) return {0, 0};
    Int det = m.a * m.d - m.b * m.c;
    if (det < 0) det = -det;
    return {g, det / g};
}

/// Deterministic generator of random group elements and angles.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::mt19937_64& engine() { return rng_; }

    /// Product of up to max_len letters from {J, P, J^-1, P^-1}: an element of SL2(Z).
    IntMatrix2 sl2_word(int max_len, int min_len = 0) {
        static const IntMatrix2 letters[] = {{0, 1, -1, 0}, {1, 0, 1, 1}, {0, -1, 1, 0}, {1, 0, -1, 1}};
        IntMatrix2 m{1, 0, 0, 1};
        const auto len = uniform(min_len, max_len);
        for (std::int64_t i = 0; i < len; ++i) m = mul(m, letters[uniform(0, 3)]);
        return m;
    }

    /// Product of up to max_len letters from {J, P} only (positive words).
    IntMatrix2 jp_word(int max_len) {
        static const IntMatrix2 letters[] = {{0, 1, -1, 0}, {1, 0, 1, 1}};
        IntMatrix2 m{1, 0, 0, 1};
        const auto len = uniform(1, max_len);
        for (std::int64_t i = 0; i < len; ++i) m = mul(m, letters[uniform(0, 1)]);
        return m;
    }

    /// GL2(Z) element: an SL2 word, times diag(-1, 1) with probability 1/2.
    IntMatrix2 gl2_word(int max_len) {
        IntMatrix2 m = sl2_word(max_len);
        if (uniform(0, 1) == 1) m = mul(m, IntMatrix2{-1, 0, 0, 1});
        return m;
    }

    /// Infinite-order element of SL2(Z) from J/P words, filtered by |trace| >= 2
    /// and A != +-I.
    IntMatrix2 infinite_order_sl2(int max_len = 10) {
        for (;;) {
            IntMatrix2 m = jp_word(max_len);
            const Int tr = m.a + m.d;
            const bool pm_identity = m.b == 0 && m.c == 0 && (m.a == m.d) && (m.a == 1 || m.a == -1);
            if ((tr >= 2 || tr <= -2) && !pm_identity) return m;
        }
    }

    /// Random quadratic irrational (p + q sqrt(d))/r with d a non-square.
    ncrot::QuadIrr quad_irr() {
        static const int radicands[] = {2, 3, 5, 6, 7, 8, 10, 11, 12, 13, 15, 17, 18, 19, 21, 22, 23, 27, 29, 30};
        for (;;) {
            const auto d = radicands[uniform(0, 19)];
            const auto p = uniform(-20, 20);
            auto q = uniform(-5, 5);
            if (q == 0) q = 1;
            const auto r = uniform(1, 12);
            return ncrot::canonicalize(Int(static_cast<long>(p)), Int(static_cast<long>(q)),
                                       Int(static_cast<long>(r)), Int(d));
        }
    }

private:
    std::mt19937_64 rng_;
};

/// (p + q sqrt(d)) / r in long double, from the raw fields.
inline long double value(const ncrot::QuadIrr& x) {
    return (x.p().get_d() + static_cast<long double>(x.q().get_d()) * std::sqrt(static_cast<long double>(x.d().get_d()))) /
           static_cast<long double>(x.r().get_d());
}

/// Value of the finite continued fraction [a0; a1, ..., an].
inline long double convergent(const std::vector<long double>& terms) {
    long double v = terms.back();
    for (std::size_t i = terms.size() - 1; i-- > 0;) v = terms[i] + 1.0L / v;
    return v;
}

/// Trapezoid rule on [-half_width, half_width] with n + 1 nodes. For smooth,
/// rapidly decaying integrands this converges geometrically in n.
struct Trapezoid {
    double half_width = 12.0;
    std::size_t n = 4800;

    std::vector<double> nodes() const {
        std::vector<double> x(n + 1);
        for (std::size_t i = 0; i <= n; ++i) x[i] = -half_width + 2.0 * half_width * static_cast<double>(i) / n;
        return x;
    }
    std::vector<cplx> weights() const {
        const double h = 2.0 * half_width / static_cast<double>(n);
        std::vector<cplx> w(n + 1, cplx{h, 0.0});
        w.front() = w.back() = cplx{h / 2.0, 0.0};
        return w;
    }
    /// Integral of f, with the final reduction done by the dispatched SIMD kernel.
    cplx integrate(const std::function<cplx(double)>& f) const {
        const auto x = nodes();
        std::vector<cplx> v(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) v[i] = f(x[i]);
        return ncrot::kernels::dot(v, weights());
    }
};

inline cplx e(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

/// S_J f(x) = theta^{-1/2} int e(xy/theta) f(y) dy, by quadrature.
inline cplx sj_quadrature(const std::function<cplx(double)>& f, double theta, double x, const Trapezoid& q = {}) {
    return q.integrate([&](double y) { return e(x * y / theta) * f(y); }) / std::sqrt(theta);
}

/// S_H f(x) = e^{pi i/12} theta^{-1/2} int e((2xy - y^2)/(2 theta)) f(y) dy, by quadrature.
inline cplx sh_quadrature(const std::function<cplx(double)>& f, double theta, double x, const Trapezoid& q = {}) {
    return std::polar(1.0, std::numbers::pi / 12.0) *
           q.integrate([&](double y) { return e((2.0 * x * y - y * y) / (2.0 * theta)) * f(y); }) / std::sqrt(theta);
}

/// theta int conj(f(x + m theta)) g(x) e(-nx) dx, by quadrature.
inline cplx inner_A_quadrature(const std::function<cplx(double)>& f, const std::function<cplx(double)>& g,
                               std::int64_t m, std::int64_t n, double theta, const Trapezoid& q = {}) {
    return theta * q.integrate([&](double x) {
        return std::conj(f(x + static_cast<double>(m) * theta)) * g(x) * e(-static_cast<double>(n) * x);
    });
}

/// int f(x - m) conj(g(x)) e(nx/theta) dx, by quadrature.
inline cplx inner_B_quadrature(const std::function<cplx(double)>& f, const std::function<cplx(double)>& g,
                               std::int64_t m, std::int64_t n, double theta, const Trapezoid& q = {}) {
    return q.integrate([&](double x) {
        return f(x - static_cast<double>(m)) * std::conj(g(x)) * e(static_cast<double>(n) * x / theta);
    });
}

}  // namespace oracle
