#include <cmath>
#include <numbers>
#include <string>

#include "bimodule_detail.hpp"
#include "ncrot/bimodule.hpp"
#include "ncrot/error.hpp"

namespace ncrot::bimodule {

namespace detail {

void require_theta(double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw Error(ErrorKind::InvalidTheta, "theta must be a finite positive number, got " + std::to_string(theta));
    }
}

void require_convergent(const GaussAtom& a) {
    if (!(a.alpha.real() > 0.0)) {
        throw Error(ErrorKind::DivergentAtom, "atom with Re(alpha) = " + std::to_string(a.alpha.real()) +
                                                  " is not square integrable");
    }
}

cplx e(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

}  // namespace detail

namespace {

using Poly = std::vector<cplx>;

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

// q(mu0 + mu1 x) as a polynomial in x.
Poly compose_affine(const Poly& q, cplx mu0, cplx mu1) {
    Poly out(q.size(), cplx{});
    std::vector<cplx> mu0_pow(q.size(), cplx{1.0, 0.0});
    for (std::size_t k = 1; k < q.size(); ++k) mu0_pow[k] = mu0_pow[k - 1] * mu0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (q[k] == cplx{}) continue;
        cplx mu1_pow{1.0, 0.0};
        for (std::size_t j = 0; j <= k; ++j) {
            out[j] += q[k] * binomial(k, j) * mu0_pow[k - j] * mu1_pow;
            mu1_pow *= mu1;
        }
    }
    return out;
}

Poly taylor_shift(const Poly& p, cplx s) { return compose_affine(p, s, cplx{1.0, 0.0}); }

Poly multiply(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, cplx{});
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Integral of u^j exp(-alpha u^2) over R, for j = 0..n-1 (zero for odd j).
std::vector<cplx> gaussian_moments(cplx alpha, std::size_t n) {
    std::vector<cplx> m(n, cplx{});
    if (n == 0) return m;
    m[0] = std::sqrt(std::numbers::pi / alpha);
    // M_{j+2} = M_j (j+1) / (2 alpha)
    for (std::size_t j = 2; j < n; j += 2) m[j] = m[j - 2] * static_cast<double>(j - 1) / (2.0 * alpha);
    return m;
}

// Integral of r(x) exp(-a x^2 + b x + g) over R; Re(a) > 0.
cplx gaussian_integral(const Poly& r, cplx a, cplx b, cplx g) {
    const cplx mu = b / (2.0 * a);
    const Poly shifted = taylor_shift(r, mu);
    const std::vector<cplx> mom = gaussian_moments(a, shifted.size());
    cplx sum{};
    for (std::size_t j = 0; j < shifted.size(); j += 2) sum += shifted[j] * mom[j];
    return sum * std::exp(g + b * b / (4.0 * a));
}

template <class F>
SchwartzFn map_atoms(const SchwartzFn& f, F&& op) {
    SchwartzFn out;
    out.atoms.reserve(f.atoms.size());
    for (const auto& a : f.atoms) out.atoms.push_back(op(a));
    return out;
}

}  // namespace

cplx GaussAtom::operator()(double x) const {
    cplx p{};
    for (std::size_t k = poly.size(); k-- > 0;) p = p * x + poly[k];
    return p * std::exp(-alpha * (x * x) + beta * x + gamma);
}

cplx SchwartzFn::operator()(double x) const {
    cplx s{};
    for (const auto& a : atoms) s += a(x);
    return s;
}

std::vector<cplx> SchwartzFn::sample(std::span<const double> grid) const {
    std::vector<cplx> out;
    out.reserve(grid.size());
    for (double x : grid) out.push_back((*this)(x));
    return out;
}

SchwartzFn gaussian(cplx alpha, cplx beta, cplx gamma) {
    return SchwartzFn{{GaussAtom{{cplx{1.0, 0.0}}, alpha, beta, gamma}}};
}

SchwartzFn monomial_gaussian(unsigned k, cplx alpha) {
    Poly p(k + 1, cplx{});
    p[k] = 1.0;
    return SchwartzFn{{GaussAtom{std::move(p), alpha, {}, {}}}};
}

SchwartzFn add(const SchwartzFn& f, const SchwartzFn& g) {
    SchwartzFn out = f;
    out.atoms.insert(out.atoms.end(), g.atoms.begin(), g.atoms.end());
    return out;
}

SchwartzFn scale(const SchwartzFn& f, cplx c) {
    return map_atoms(f, [c](GaussAtom a) {
        for (auto& coeff : a.poly) coeff *= c;
        return a;
    });
}

SchwartzFn translate(const SchwartzFn& f, double s) {
    // -a (x+s)^2 + b (x+s) + g = -a x^2 + (b - 2as) x + (g - a s^2 + b s)
    return map_atoms(f, [s](GaussAtom a) {
        a.poly = taylor_shift(a.poly, s);
        a.gamma += -a.alpha * (s * s) + a.beta * s;
        a.beta -= 2.0 * a.alpha * s;
        return a;
    });
}

SchwartzFn modulate(const SchwartzFn& f, double c) {
    return map_atoms(f, [c](GaussAtom a) {
        a.beta += cplx{0.0, 2.0 * std::numbers::pi * c};
        return a;
    });
}

SchwartzFn flip(const SchwartzFn& f) {
    return map_atoms(f, [](GaussAtom a) {
        for (std::size_t k = 1; k < a.poly.size(); k += 2) a.poly[k] = -a.poly[k];
        a.beta = -a.beta;
        return a;
    });
}

cplx cocycle(double theta, const LatticePoint& x, const LatticePoint& y) {
    // x1 y2 - x2 y1 is formed in integers, so the phase is exact up to one rounding.
    const auto skew = static_cast<double>(x.m * y.n - x.n * y.m);
    return std::polar(1.0, -std::numbers::pi * theta * skew);
}

SchwartzFn right_act_U(const SchwartzFn& f, const LatticePoint& l, double theta) {
    detail::require_theta(theta);
    const auto m = static_cast<double>(l.m);
    const auto n = static_cast<double>(l.n);
    return scale(modulate(translate(f, m * theta), n), detail::e(m * n * theta / 2.0));
}

SchwartzFn left_act_V(const SchwartzFn& f, const LatticePoint& l, double theta) {
    detail::require_theta(theta);
    const auto m = static_cast<double>(l.m);
    const auto n = static_cast<double>(l.n);
    return scale(modulate(translate(f, m), -n / theta), detail::e(-m * n / (2.0 * theta)));
}

cplx l2_inner(const SchwartzFn& f, const SchwartzFn& g) {
    for (const auto& a : f.atoms) detail::require_convergent(a);
    for (const auto& b : g.atoms) detail::require_convergent(b);
    cplx total{};
    for (const auto& a : f.atoms) {
        for (const auto& b : g.atoms) {
            Poly bconj(b.poly.size());
            for (std::size_t k = 0; k < b.poly.size(); ++k) bconj[k] = std::conj(b.poly[k]);
            total += gaussian_integral(multiply(a.poly, bconj), a.alpha + std::conj(b.alpha),
                                       a.beta + std::conj(b.beta), a.gamma + std::conj(b.gamma));
        }
    }
    return total;
}

cplx inner_A(const SchwartzFn& f, const SchwartzFn& g, const LatticePoint& l, double theta) {
    detail::require_theta(theta);
    const LatticePoint neg{-l.m, -l.n};
    const auto mn = static_cast<double>(l.m) * static_cast<double>(l.n);
    return theta * detail::e(mn * theta / 2.0) * l2_inner(right_act_U(g, neg, theta), f);
}

cplx inner_B(const SchwartzFn& f, const SchwartzFn& g, const LatticePoint& l, double theta) {
    detail::require_theta(theta);
    const auto mn = static_cast<double>(l.m) * static_cast<double>(l.n);
    return detail::e(mn / (2.0 * theta)) * l2_inner(f, left_act_V(g, l, theta));
}

cplx inner_A_direct(const SchwartzFn& f, const SchwartzFn& g, const LatticePoint& l, double theta) {
    detail::require_theta(theta);
    const auto m = static_cast<double>(l.m);
    const auto n = static_cast<double>(l.n);
    return theta * l2_inner(modulate(g, -n), translate(f, m * theta));
}

cplx inner_B_direct(const SchwartzFn& f, const SchwartzFn& g, const LatticePoint& l, double theta) {
    detail::require_theta(theta);
    const auto m = static_cast<double>(l.m);
    const auto n = static_cast<double>(l.n);
    return l2_inner(modulate(translate(f, -m), n / theta), g);
}

SchwartzFn scaled_fourier(const SchwartzFn& f, double kernel_theta, cplx c) {
    detail::require_theta(kernel_theta);
    const double pi = std::numbers::pi;
    return map_atoms(f, [&](const GaussAtom& a) {
        detail::require_convergent(a);
        // Complete the square in y with b = beta + 2 pi i x / kernel_theta and
        // mu = b / (2 alpha) = mu0 + mu1 x; the polynomial part is
        // sum_i mu^i sum_{j even} c_{i+j} C(i+j, j) M_j.
        const std::vector<cplx> mom = gaussian_moments(a.alpha, a.poly.size());
        Poly q(a.poly.size(), cplx{});
        for (std::size_t i = 0; i < q.size(); ++i) {
            for (std::size_t j = 0; i + j < a.poly.size(); j += 2) {
                q[i] += a.poly[i + j] * binomial(i + j, j) * mom[j];
            }
        }
        const cplx mu0 = a.beta / (2.0 * a.alpha);
        const cplx mu1 = cplx{0.0, pi / kernel_theta} / a.alpha;
        GaussAtom out;
        out.poly = compose_affine(q, mu0, mu1);
        for (auto& coeff : out.poly) coeff *= c;
        out.alpha = (pi * pi) / (kernel_theta * kernel_theta * a.alpha);
        out.beta = cplx{0.0, pi / kernel_theta} * a.beta / a.alpha;
        out.gamma = a.gamma + a.beta * a.beta / (4.0 * a.alpha);
        return out;
    });
}

SchwartzFn apply_SJ(const SchwartzFn& f, double theta) {
    detail::require_theta(theta);
    return scaled_fourier(f, theta, 1.0 / std::sqrt(theta));
}

SchwartzFn apply_SJ_inv(const SchwartzFn& f, double theta) { return flip(apply_SJ(f, theta)); }

SchwartzFn apply_SP(const SchwartzFn& f, double theta) {
    detail::require_theta(theta);
    return map_atoms(f, [theta](GaussAtom a) {
        a.alpha += cplx{0.0, std::numbers::pi / theta};
        return a;
    });
}

SchwartzFn apply_SP_inv(const SchwartzFn& f, double theta) {
    detail::require_theta(theta);
    return map_atoms(f, [theta](GaussAtom a) {
        a.alpha -= cplx{0.0, std::numbers::pi / theta};
        return a;
    });
}

SchwartzFn apply_SH(const SchwartzFn& f, double theta) {
    return scale(apply_SJ(apply_SP(f, theta), theta), std::polar(1.0, std::numbers::pi / 12.0));
}

SchwartzFn apply_word(const OpWord& word, const SchwartzFn& f, double theta) {
    detail::require_theta(theta);
    SchwartzFn cur = f;
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
        switch (*it) {
            case Letter::J: cur = apply_SJ(cur, theta); break;
            case Letter::P: cur = apply_SP(cur, theta); break;
            case Letter::Jinv: cur = apply_SJ_inv(cur, theta); break;
            case Letter::Pinv: cur = apply_SP_inv(cur, theta); break;
            case Letter::H: cur = apply_SH(cur, theta); break;
        }
    }
    return cur;
}

}  // namespace ncrot::bimodule
