#include <algorithm>
#include <cctype>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "bimodule_detail.hpp"
#include "ncrot/bimodule.hpp"
#include "ncrot/error.hpp"
#include "ncrot/kernels.hpp"

namespace ncrot::bimodule {

namespace {

IntMatrix2 letter_matrix(Letter l) {
    switch (l) {
        case Letter::J: return gen::J();
        case Letter::P: return gen::P();
        case Letter::Jinv: return inverse_sl2(gen::J());
        case Letter::Pinv: return inverse_sl2(gen::P());
        case Letter::H: return gen::H();
    }
    throw std::logic_error("unknown letter");
}

std::string point_text(const LatticePoint& l) {
    return "(" + std::to_string(l.m) + "," + std::to_string(l.n) + ")";
}

std::vector<LatticePoint> lattice_box(int radius) {
    std::vector<LatticePoint> pts;
    for (int m = -radius; m <= radius; ++m) {
        for (int n = -radius; n <= radius; ++n) pts.push_back({m, n});
    }
    return pts;
}

// Evaluates `per_point` for each lattice point, concurrently when allowed, and
// concatenates the entries in lattice order.
template <class F>
Report collect(const std::vector<LatticePoint>& pts, bool parallel, double tol, F&& per_point) {
    std::vector<std::vector<CheckEntry>> parts(pts.size());
    const unsigned hw = std::thread::hardware_concurrency();
    if (parallel && hw > 1) {
        std::vector<std::future<std::vector<CheckEntry>>> futs;
        futs.reserve(pts.size());
        for (const auto& l : pts) futs.push_back(std::async(std::launch::async, [&per_point, l] { return per_point(l); }));
        for (std::size_t i = 0; i < pts.size(); ++i) parts[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i) parts[i] = per_point(pts[i]);
    }
    Report r;
    for (auto& part : parts) {
        for (auto& entry : part) {
            entry.pass = entry.max_abs_err <= tol;  // NaN fails
            r.pass = r.pass && entry.pass;
            if (std::isnan(entry.max_abs_err)) {
                r.worst_case = entry.max_abs_err;
            } else if (!std::isnan(r.worst_case)) {
                r.worst_case = std::max(r.worst_case, entry.max_abs_err);
            }
            r.checks.push_back(std::move(entry));
        }
    }
    return r;
}

// mn - m'n', formed in integers.
double mn_shift(const LatticePoint& l, const LatticePoint& lp) {
    return static_cast<double>(l.m * l.n - lp.m * lp.n);
}

void require_radius(int box_radius) {
    if (box_radius < 1) throw std::invalid_argument("box_radius must be at least 1");
}

}  // namespace

std::string to_string(Letter l) {
    switch (l) {
        case Letter::J: return "J";
        case Letter::P: return "P";
        case Letter::Jinv: return "Jinv";
        case Letter::Pinv: return "Pinv";
        case Letter::H: return "H";
    }
    return "?";
}

std::string to_string(const OpWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) out += ' ';
        out += to_string(w.letters[i]);
    }
    return out;
}

OpWord parse_word(const std::string& text) {
    OpWord w;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
            continue;
        }
        if (c != 'J' && c != 'P' && c != 'H') throw ParseError("expected letter J, P or H", i);
        ++i;
        bool inverse = false;
        for (const char* suffix : {"inv", "^-1", "i"}) {
            const std::string_view sv(suffix);
            if (text.compare(i, sv.size(), sv) == 0) {
                inverse = true;
                i += sv.size();
                break;
            }
        }
        if (c == 'H') {
            if (inverse) throw ParseError("H^-1 is not a supported letter", i);
            w.letters.push_back(Letter::H);
        } else if (c == 'J') {
            w.letters.push_back(inverse ? Letter::Jinv : Letter::J);
        } else {
            w.letters.push_back(inverse ? Letter::Pinv : Letter::P);
        }
    }
    return w;
}

IntMatrix2 word_matrix(const OpWord& word) {
    IntMatrix2 m = IntMatrix2::identity();
    for (Letter l : word.letters) m = m * letter_matrix(l);
    return m;
}

IntMatrix2 v_side_matrix(const OpWord& word) { return conjugate_by_T(word_matrix(word)); }

LatticePoint alpha_on_lattice(const IntMatrix2& a, const LatticePoint& l) {
    const Int dt = det(a);
    if (dt != 1 && dt != -1) throw Error(ErrorKind::NotUnimodular, "det = " + dt.get_str() + ", expected +-1");
    const Int m(static_cast<long>(l.m));
    const Int n(static_cast<long>(l.n));
    const Int x = a.a * m + a.b * n;
    const Int y = a.c * m + a.d * n;
    if (!x.fits_slong_p() || !y.fits_slong_p()) throw std::overflow_error("lattice image does not fit in int64");
    return {x.get_si(), y.get_si()};
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

std::vector<double> default_grid() { return linspace(-4.0, 4.0, 128); }

double max_abs_diff(const SchwartzFn& f, const SchwartzFn& g, std::span<const double> grid) {
    const auto a = f.sample(grid);
    const auto b = g.sample(grid);
    return kernels::max_abs_diff(a, b);
}

PhaseFit compare_up_to_phase(const SchwartzFn& f, const SchwartzFn& g, std::span<const double> grid) {
    const auto a = f.sample(grid);
    auto b = g.sample(grid);
    PhaseFit fit;
    const cplx num = kernels::dotc(a, b);
    if (std::abs(num) > 0.0) fit.phase = num / std::abs(num);
    for (auto& v : b) v *= fit.phase;
    fit.max_abs_err = kernels::max_abs_diff(a, b);
    fit.is_sign = std::abs(fit.phase - 1.0) < 1e-9 || std::abs(fit.phase + 1.0) < 1e-9;
    return fit;
}

std::vector<NamedFn> standard_test_set() {
    std::vector<NamedFn> out;
    for (unsigned k = 0; k <= 3; ++k) out.push_back({"h" + std::to_string(k), monomial_gaussian(k)});
    // exp(-(0.8 + 0.6i)(x - 0.3)^2 + 0.5 i x), expanded.
    const cplx a{0.8, 0.6};
    const double x0 = 0.3;
    out.push_back({"chirp", gaussian(a, 2.0 * a * x0 + cplx{0.0, 0.5}, -a * (x0 * x0))});
    return out;
}

Operator word_operator(const OpWord& word, double theta) {
    detail::require_theta(theta);
    return {"S[" + to_string(word) + "]", word_matrix(word), v_side_matrix(word),
            [word, theta](const SchwartzFn& f) { return apply_word(word, f, theta); }};
}

Operator generator_operator(Letter generator, double theta) {
    Operator op = word_operator(OpWord{{generator}}, theta);
    op.id = "S_" + to_string(generator);
    return op;
}

Operator misnormalized_SJ(double theta) {
    Operator op = generator_operator(Letter::J, theta);
    op.id = "S_J[norm 2/sqrt(theta)]";
    op.apply = [theta](const SchwartzFn& f) { return scaled_fourier(f, theta, 2.0 / std::sqrt(theta)); };
    return op;
}

Operator wrong_kernel_SJ(double theta) {
    Operator op = generator_operator(Letter::J, theta);
    op.id = "S_J[kernel e(xy/(2 theta))]";
    op.apply = [theta](const SchwartzFn& f) { return scaled_fourier(f, 2.0 * theta, 1.0 / std::sqrt(theta)); };
    return op;
}

Report verify_covariance(double theta, const Operator& op, int box_radius, const std::vector<NamedFn>& test_set,
                         double tol, const VerifyOptions& options) {
    detail::require_theta(theta);
    require_radius(box_radius);
    std::vector<SchwartzFn> images;
    images.reserve(test_set.size());
    for (const auto& t : test_set) images.push_back(op.apply(t.fn));

    return collect(lattice_box(box_radius), options.parallel, tol, [&](const LatticePoint& l) {
        std::vector<CheckEntry> out;
        const LatticePoint lu = alpha_on_lattice(op.u_side, l);
        const LatticePoint lv = alpha_on_lattice(op.v_side, l);
        for (std::size_t i = 0; i < test_set.size(); ++i) {
            const std::string& id = test_set[i].id;
            const SchwartzFn& f = test_set[i].fn;
            out.push_back({op.id + "(" + id + ".U" + point_text(l) + ")", op.id + "(" + id + ").U" + point_text(lu), l,
                           max_abs_diff(op.apply(right_act_U(f, l, theta)), right_act_U(images[i], lu, theta),
                                        options.grid),
                           false});
            out.push_back({op.id + "(V" + point_text(l) + "." + id + ")", "V" + point_text(lv) + "." + op.id + "(" + id + ")",
                           l,
                           max_abs_diff(op.apply(left_act_V(f, l, theta)), left_act_V(images[i], lv, theta),
                                        options.grid),
                           false});
        }
        return out;
    });
}

Report verify_covariance(double theta, Letter generator, int box_radius, const std::vector<NamedFn>& test_set,
                         double tol, const VerifyOptions& options) {
    return verify_covariance(theta, generator_operator(generator, theta), box_radius, test_set, tol, options);
}

Report verify_inner_compat(double theta, const Operator& op, int box_radius, const std::vector<NamedFn>& test_set,
                           double tol, const VerifyOptions& options) {
    detail::require_theta(theta);
    require_radius(box_radius);
    std::vector<SchwartzFn> images;
    images.reserve(test_set.size());
    for (const auto& t : test_set) images.push_back(op.apply(t.fn));
    const IntMatrix2 u_inv = inverse_gl2(op.u_side);
    const IntMatrix2 v_inv = inverse_gl2(op.v_side);

    return collect(lattice_box(box_radius), options.parallel, tol, [&](const LatticePoint& l) {
        std::vector<CheckEntry> out;
        const LatticePoint la = alpha_on_lattice(u_inv, l);
        const LatticePoint lb = alpha_on_lattice(v_inv, l);
        const cplx phase_a = options.literal_coefficient_action ? cplx{1.0} : detail::e(theta * mn_shift(l, la) / 2.0);
        const cplx phase_b =
            options.literal_coefficient_action ? cplx{1.0} : detail::e(mn_shift(l, lb) / (2.0 * theta));
        for (std::size_t i = 0; i < test_set.size(); ++i) {
            for (std::size_t j = 0; j < test_set.size(); ++j) {
                const std::string& fi = test_set[i].id;
                const std::string& gj = test_set[j].id;
                const cplx lhs_a = inner_A(images[i], images[j], l, theta);
                const cplx rhs_a = phase_a * inner_A(test_set[i].fn, test_set[j].fn, la, theta);
                out.push_back({"<" + op.id + " " + fi + "," + op.id + " " + gj + ">_A" + point_text(l),
                               "<" + fi + "," + gj + ">_A" + point_text(la), l, std::abs(lhs_a - rhs_a), false});
                const cplx lhs_b = inner_B(images[i], images[j], l, theta);
                const cplx rhs_b = phase_b * inner_B(test_set[i].fn, test_set[j].fn, lb, theta);
                out.push_back({"B<" + op.id + " " + fi + "," + op.id + " " + gj + ">" + point_text(l),
                               "B<" + fi + "," + gj + ">" + point_text(lb), l, std::abs(lhs_b - rhs_b), false});
            }
        }
        return out;
    });
}

Report verify_inner_compat(double theta, Letter generator, int box_radius, double tol, const VerifyOptions& options) {
    return verify_inner_compat(theta, generator_operator(generator, theta), box_radius, standard_test_set(), tol,
                               options);
}

nlohmann::json to_json(const Report& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"lhs_id", c.lhs_id},
                          {"rhs_id", c.rhs_id},
                          {"lattice_point", {c.lattice_point.m, c.lattice_point.n}},
                          {"max_abs_err", c.max_abs_err},
                          {"pass", c.pass}});
    }
    return {{"checks", checks}, {"pass", report.pass}, {"worst_case", report.worst_case}};
}

}  // namespace ncrot::bimodule
