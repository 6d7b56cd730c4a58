#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncrot/intmat.hpp"

// Numerical model of the Heisenberg bimodule S(R) between A_{1/theta} (left,
// V_l) and A_theta (right, U_l), and of the metaplectic operators S_J, S_P,
// S_H acting on it.
//
// Functions are finite sums of atoms p(x) exp(-alpha x^2 + beta x + gamma).
// Every operation below maps atoms to atoms exactly, so identities reduce to
// double-precision complex arithmetic; grids are only used to compare results.
//
// theta is a positive double throughout; nonpositive or non-finite values
// raise Error(InvalidTheta). e(x) denotes exp(2 pi i x).

namespace ncrot::bimodule {

using cplx = std::complex<double>;

struct GaussAtom {
    std::vector<cplx> poly;  // poly[k] multiplies x^k
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};
    cplx gamma{0.0, 0.0};

    cplx operator()(double x) const;
};

struct SchwartzFn {
    std::vector<GaussAtom> atoms;

    cplx operator()(double x) const;
    std::vector<cplx> sample(std::span<const double> grid) const;
};

struct LatticePoint {
    std::int64_t m = 0;
    std::int64_t n = 0;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

enum class Letter { J, P, Jinv, Pinv, H };

/// S_{W1} o S_{W2} o ... o S_{Wn}; the last letter acts first.
struct OpWord {
    std::vector<Letter> letters;
};

std::string to_string(Letter l);
/// Parses a word such as "J P Jinv H" or "JPH" (letters J, P, H, and J^-1 / P^-1
/// spelled Ji, Pi, Jinv or Pinv). Throws ParseError.
OpWord parse_word(const std::string& text);
std::string to_string(const OpWord& w);

// Atom-level building blocks.
SchwartzFn gaussian(cplx alpha = 1.0, cplx beta = 0.0, cplx gamma = 0.0);
SchwartzFn monomial_gaussian(unsigned k, cplx alpha = 1.0);
SchwartzFn add(const SchwartzFn& f, const SchwartzFn& g);
SchwartzFn scale(const SchwartzFn& f, cplx c);
/// x -> f(x + s)
SchwartzFn translate(const SchwartzFn& f, double s);
/// x -> e(c x) f(x)
SchwartzFn modulate(const SchwartzFn& f, double c);
/// x -> f(-x)
SchwartzFn flip(const SchwartzFn& f);

/// omega_theta(x, y) = exp(-pi i theta (x.m y.n - x.n y.m)); unit modulus.
cplx cocycle(double theta, const LatticePoint& x, const LatticePoint& y);

/// (f.U_l)(x) = e(mn theta/2) e(nx) f(x + m theta)
SchwartzFn right_act_U(const SchwartzFn& f, const LatticePoint& l, double theta);
/// (V_l.f)(x) = e(-mn/(2 theta)) e(-nx/theta) f(x + m)
SchwartzFn left_act_V(const SchwartzFn& f, const LatticePoint& l, double theta);

/// Integral of f(x) conj(g(x)) over R, in closed form. Throws DivergentAtom
/// when an atom has Re(alpha) <= 0.
cplx l2_inner(const SchwartzFn& f, const SchwartzFn& g);

/// theta * integral conj(f(x + m theta)) g(x) e(-nx) dx, evaluated as
/// theta e(mn theta/2) <g.U_{-l}, f>.
cplx inner_A(const SchwartzFn& f, const SchwartzFn& g, const LatticePoint& l, double theta);
/// integral f(x - m) conj(g(x)) e(nx/theta) dx, evaluated as e(mn/(2 theta)) <f, V_l.g>.
cplx inner_B(const SchwartzFn& f, const SchwartzFn& g, const LatticePoint& l, double theta);
/// Same quantities built directly from the defining integrand (translate and
/// modulate first, then one closed-form integral).
cplx inner_A_direct(const SchwartzFn& f, const SchwartzFn& g, const LatticePoint& l, double theta);
cplx inner_B_direct(const SchwartzFn& f, const SchwartzFn& g, const LatticePoint& l, double theta);

/// S_J(f)(x) = theta^{-1/2} integral e(xy/theta) f(y) dy
SchwartzFn apply_SJ(const SchwartzFn& f, double theta);
SchwartzFn apply_SJ_inv(const SchwartzFn& f, double theta);
/// S_P(f)(x) = e(-x^2/(2 theta)) f(x)
SchwartzFn apply_SP(const SchwartzFn& f, double theta);
SchwartzFn apply_SP_inv(const SchwartzFn& f, double theta);
/// S_H = e^{pi i/12} S_J o S_P
SchwartzFn apply_SH(const SchwartzFn& f, double theta);
SchwartzFn apply_word(const OpWord& word, const SchwartzFn& f, double theta);

/// General scaled Fourier transform c * integral e(xy/kernel_theta) f(y) dy.
/// apply_SJ is the case kernel_theta = theta, c = theta^{-1/2}.
SchwartzFn scaled_fourier(const SchwartzFn& f, double kernel_theta, cplx c);

/// U-side matrix of a word: the product W1 W2 ... Wn in SL2(Z).
IntMatrix2 word_matrix(const OpWord& word);
/// V-side matrix: S_W(V_l.f) = V_{v l}.S_W(f) with v = T W T.
IntMatrix2 v_side_matrix(const OpWord& word);

/// A.l. Throws NotUnimodular when |det A| != 1 and std::overflow_error when
/// the image leaves int64.
LatticePoint alpha_on_lattice(const IntMatrix2& a, const LatticePoint& l);

struct PhaseFit {
    cplx phase{1.0, 0.0};   // unimodular c minimizing |f - c g| on the grid
    double max_abs_err = 0;  // max |f - c g| on the grid
    bool is_sign = true;     // phase within 1e-9 of +1 or -1
};

/// Fits a global unimodular scalar c with f ~ c g on the grid.
PhaseFit compare_up_to_phase(const SchwartzFn& f, const SchwartzFn& g, std::span<const double> grid);

/// Max |f(x) - g(x)| over the grid.
double max_abs_diff(const SchwartzFn& f, const SchwartzFn& g, std::span<const double> grid);

/// n equally spaced points covering [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);
/// The default comparison grid: 128 points on [-4, 4].
std::vector<double> default_grid();

struct NamedFn {
    std::string id;
    SchwartzFn fn;
};

/// x^k e^{-x^2} for k = 0..3 and one shifted, chirped Gaussian.
std::vector<NamedFn> standard_test_set();

/// An operator under test together with the matrices it is expected to
/// intertwine. Negative controls are built by replacing `apply`.
struct Operator {
    std::string id;
    IntMatrix2 u_side;  // S(f.U_l) = S(f).U_{u l}
    IntMatrix2 v_side;  // S(V_l.f) = V_{v l}.S(f)
    std::function<SchwartzFn(const SchwartzFn&)> apply;
};

Operator word_operator(const OpWord& word, double theta);
Operator generator_operator(Letter generator, double theta);
/// S_J with normalization 2 theta^{-1/2}.
Operator misnormalized_SJ(double theta);
/// S_J with kernel e(xy/(2 theta)).
Operator wrong_kernel_SJ(double theta);

struct CheckEntry {
    std::string lhs_id;
    std::string rhs_id;
    LatticePoint lattice_point;
    double max_abs_err = 0;
    bool pass = false;
};

struct Report {
    std::vector<CheckEntry> checks;
    bool pass = true;
    double worst_case = 0;
};

struct VerifyOptions {
    std::vector<double> grid = default_grid();
    /// Evaluate lattice points concurrently when more than one hardware thread exists.
    bool parallel = true;
    /// verify_inner_compat only. The inner-product functions carry the phases
    /// e(mn theta/2) and e(mn/(2 theta)), so they are coefficients against the
    /// ordered products U_1^m U_2^n rather than against U_l. Applying alpha_A
    /// to such a function multiplies by e(theta (mn - m'n')/2), l' = A^{-1} l
    /// (B-side: e((mn - m'n')/(2 theta))). Setting this flag drops that phase
    /// and compares f(A^{-1} l) coordinatewise, which fails whenever mn != m'n'.
    bool literal_coefficient_action = false;
};

/// Both covariance identities for every l in the box |m|,|n| <= box_radius
/// and every test function. Throws std::invalid_argument if box_radius < 1.
Report verify_covariance(double theta, const Operator& op, int box_radius, const std::vector<NamedFn>& test_set,
                         double tol, const VerifyOptions& options = {});
Report verify_covariance(double theta, Letter generator, int box_radius, const std::vector<NamedFn>& test_set,
                         double tol, const VerifyOptions& options = {});

/// <S f, S g>_A against alpha_u(<f, g>_A) and the B-side analogue with v,
/// for all ordered pairs from the test set; see VerifyOptions for the phase.
Report verify_inner_compat(double theta, const Operator& op, int box_radius, const std::vector<NamedFn>& test_set,
                           double tol, const VerifyOptions& options = {});
Report verify_inner_compat(double theta, Letter generator, int box_radius, double tol,
                           const VerifyOptions& options = {});

nlohmann::json to_json(const Report& report);

using Mat2c = std::array<cplx, 4>;  // row-major

/// P(y, e^{2 pi i t}) = conj(y) X1(t)^* + X0(t) + X1(t) y. Throws
/// NonUnitArgument when | |y| - 1 | > 1e-12.
Mat2c pv_projection(cplx y, double t);
Mat2c pv_X0(double t);
Mat2c pv_X1(double t);

struct PvReport {
    std::size_t grid = 0;
    double max_idempotent_err = 0;  // max Frobenius norm of P^2 - P
    double max_selfadjoint_err = 0;  // max Frobenius norm of P^* - P
    double max_trace_err = 0;        // max |tr P - 1|
    bool pass = false;
};

/// Samples y = e^{2 pi i j/n}, t = k/n for 0 <= j, k < n.
PvReport pv_check(std::size_t n, double tol);
nlohmann::json to_json(const PvReport& report);

}  // namespace ncrot::bimodule
