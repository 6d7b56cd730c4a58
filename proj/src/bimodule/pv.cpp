#include <cmath>
#include <numbers>
#include <string>

#include "ncrot/bimodule.hpp"
#include "ncrot/error.hpp"

namespace ncrot::bimodule {

namespace {

Mat2c mul(const Mat2c& x, const Mat2c& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

Mat2c adjoint(const Mat2c& x) { return {std::conj(x[0]), std::conj(x[2]), std::conj(x[1]), std::conj(x[3])}; }

double frobenius_diff(const Mat2c& x, const Mat2c& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) s += std::norm(x[i] - y[i]);
    return std::sqrt(s);
}

}  // namespace

Mat2c pv_X0(double t) {
    const double c = std::cos(2.0 * std::numbers::pi * t);
    const double s = std::sin(2.0 * std::numbers::pi * t);
    return {(3.0 + c) / 4.0, s / 4.0, s / 4.0, (1.0 - c) / 4.0};
}

Mat2c pv_X1(double t) {
    const double c = std::cos(2.0 * std::numbers::pi * t);
    const double s = std::sin(2.0 * std::numbers::pi * t);
    const double r = std::sqrt(2.0 * (1.0 - c));
    return {(1.0 - c) / 8.0, (r - s) / 8.0, (-r - s) / 8.0, (-1.0 + c) / 8.0};
}

Mat2c pv_projection(cplx y, double t) {
    if (!(std::abs(std::abs(y) - 1.0) <= 1e-12)) {
        throw Error(ErrorKind::NonUnitArgument, "|y| must be 1, got " + std::to_string(std::abs(y)));
    }
    const Mat2c x0 = pv_X0(t);
    const Mat2c x1 = pv_X1(t);
    const Mat2c x1s = adjoint(x1);
    Mat2c p{};
    for (std::size_t i = 0; i < 4; ++i) p[i] = std::conj(y) * x1s[i] + x0[i] + x1[i] * y;
    return p;
}

PvReport pv_check(std::size_t n, double tol) {
    PvReport r;
    r.grid = n;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx y = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
        for (std::size_t k = 0; k < n; ++k) {
            const Mat2c p = pv_projection(y, static_cast<double>(k) / static_cast<double>(n));
            r.max_idempotent_err = std::max(r.max_idempotent_err, frobenius_diff(mul(p, p), p));
            r.max_selfadjoint_err = std::max(r.max_selfadjoint_err, frobenius_diff(adjoint(p), p));
            r.max_trace_err = std::max(r.max_trace_err, std::abs(p[0] + p[3] - 1.0));
        }
    }
    r.pass = n > 0 && r.max_idempotent_err <= tol && r.max_selfadjoint_err <= tol && r.max_trace_err <= tol;
    return r;
}

nlohmann::json to_json(const PvReport& report) {
    return {{"grid", report.grid},
            {"max_idempotent_err", report.max_idempotent_err},
            {"max_selfadjoint_err", report.max_selfadjoint_err},
            {"max_trace_err", report.max_trace_err},
            {"pass", report.pass}};
}

}  // namespace ncrot::bimodule
