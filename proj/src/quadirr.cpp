#include "ncrot/quadirr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ncrot/error.hpp"

namespace ncrot {

namespace {

Int isqrt(const Int& n) {
    Int s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    return s;
}

Int floor_div(const Int& n, const Int& d) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

int sgn(const Rational& x) { return ::sgn(x); }

}  // namespace

// ---------------------------------------------------------------------------
// QuadNumber

QuadNumber::QuadNumber(Rational a, Rational b, Int d)
    : rational_(std::move(a)), coeff_(std::move(b)), radicand_(std::move(d)) {
    rational_.canonicalize();
    coeff_.canonicalize();
}

QuadNumber::QuadNumber(const Int& p, const Int& q, const Int& r, const Int& d) {
    if (r == 0) throw Error(ErrorKind::ZeroDenominator, "denominator r is zero");
    if (d < 1) throw std::invalid_argument("radicand must be positive, got " + d.get_str());

    // Pull square factors of d into q.
    Int coeff = q;
    Int rest = d;
    Int squarefree = 1;
    for (Int f = 2; f * f <= rest; ++f) {
        unsigned multiplicity = 0;
        while (rest % f == 0) {
            rest /= f;
            ++multiplicity;
        }
        for (unsigned i = 0; i + 1 < multiplicity; i += 2) coeff *= f;
        if (multiplicity % 2 == 1) squarefree *= f;
    }
    squarefree *= rest;

    rational_ = Rational(p, r);
    coeff_ = Rational(coeff, r);
    rational_.canonicalize();
    coeff_.canonicalize();
    radicand_ = squarefree;
    fold_radicand();
}

void QuadNumber::fold_radicand() {
    if (radicand_ == 1) {
        rational_ += coeff_;
        coeff_ = 0;
        radicand_ = 2;
    }
}

QuadNumber QuadNumber::rational(const Rational& value, const Int& d) {
    return QuadNumber(value, Rational(0), d);
}

Int QuadNumber::r() const { return lcm(rational_.get_den(), coeff_.get_den()); }

Int QuadNumber::p() const {
    const Int den = r();
    return rational_.get_num() * (den / rational_.get_den());
}

Int QuadNumber::q() const {
    const Int den = r();
    return coeff_.get_num() * (den / coeff_.get_den());
}

int QuadNumber::sign() const {
    const int sa = sgn(rational_);
    const int sb = sgn(coeff_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const Rational a2 = rational_ * rational_;
    const Rational b2d = coeff_ * coeff_ * radicand_;
    return a2 > b2d ? sa : sb;
}

Int QuadNumber::floor() const {
    const Int pp = p();
    const Int qq = q();
    const Int rr = r();
    if (qq == 0) return floor_div(pp, rr);
    // (p +- sqrt(D))/r with D = q^2 d not a square; sqrt(D) lies in (s, s+1).
    const Int big_d = qq * qq * radicand_;
    const Int s = isqrt(big_d);
    if (qq > 0) return floor_div(pp + s, rr);
    return floor_div(pp - s - 1, rr);
}

long double QuadNumber::to_long_double() const {
    const long double a = static_cast<long double>(rational_.get_d());
    if (coeff_ == 0) return a;
    const long double b = static_cast<long double>(coeff_.get_d());
    return a + b * std::sqrt(static_cast<long double>(radicand_.get_d()));
}

QuadNumber QuadNumber::conjugate() const { return QuadNumber(rational_, -coeff_, radicand_); }

namespace {

const Int& common_radicand(const QuadNumber& x, const QuadNumber& y) {
    if (x.is_rational()) return y.radicand();
    if (y.is_rational() || x.radicand() == y.radicand()) return x.radicand();
    throw std::invalid_argument("arithmetic across different quadratic fields: sqrt(" +
                                x.radicand().get_str() + ") vs sqrt(" + y.radicand().get_str() + ")");
}

}  // namespace

QuadNumber operator+(const QuadNumber& x, const QuadNumber& y) {
    const Int& d = common_radicand(x, y);
    return QuadNumber(x.rational_ + y.rational_, x.coeff_ + y.coeff_, d);
}

QuadNumber operator-(const QuadNumber& x, const QuadNumber& y) {
    const Int& d = common_radicand(x, y);
    return QuadNumber(x.rational_ - y.rational_, x.coeff_ - y.coeff_, d);
}

QuadNumber operator-(const QuadNumber& x) { return QuadNumber(-x.rational_, -x.coeff_, x.radicand_); }

QuadNumber operator*(const QuadNumber& x, const QuadNumber& y) {
    const Int& d = common_radicand(x, y);
    return QuadNumber(x.rational_ * y.rational_ + x.coeff_ * y.coeff_ * d,
                      x.rational_ * y.coeff_ + x.coeff_ * y.rational_, d);
}

QuadNumber operator/(const QuadNumber& x, const QuadNumber& y) {
    const Int& d = common_radicand(x, y);
    const Rational norm = y.rational_ * y.rational_ - y.coeff_ * y.coeff_ * d;
    if (norm == 0) throw Error(ErrorKind::ZeroDenominator, "division by zero");
    const QuadNumber num = x * y.conjugate();
    return QuadNumber(num.rational_ / norm, num.coeff_ / norm, d);
}

bool operator==(const QuadNumber& x, const QuadNumber& y) {
    if (x.rational_ != y.rational_ || x.coeff_ != y.coeff_) return false;
    return x.coeff_ == 0 || x.radicand_ == y.radicand_;
}

// ---------------------------------------------------------------------------
// QuadIrr

QuadIrr::QuadIrr(QuadNumber value) : value_(std::move(value)) {
    if (value_.is_rational()) {
        throw Error(ErrorKind::RationalValue, "value " + to_text(value_) + " is rational");
    }
}

QuadIrr canonicalize(const Int& p, const Int& q, const Int& r, const Int& d) {
    if (r == 0) throw Error(ErrorKind::ZeroDenominator, "denominator r is zero");
    if (q == 0) throw Error(ErrorKind::RationalValue, "sqrt coefficient q is zero");
    if (d < 2) throw Error(ErrorKind::RationalValue, "radicand " + d.get_str() + " is below 2");
    return QuadIrr(QuadNumber(p, q, r, d));
}

QuadIrr mobius_apply(const IntMatrix2& m, const QuadIrr& theta) {
    const Int dt = det(m);
    if (dt != 1 && dt != -1) {
        throw Error(ErrorKind::NotUnimodular, "Mobius matrix (" + to_text(m) + ") has determinant " + dt.get_str());
    }
    const Int& rad = theta.d();
    const QuadNumber& t = theta.value();
    const QuadNumber num = QuadNumber::rational(Rational(m.a), rad) * t + QuadNumber::rational(Rational(m.b), rad);
    const QuadNumber den = QuadNumber::rational(Rational(m.c), rad) * t + QuadNumber::rational(Rational(m.d), rad);
    return QuadIrr(num / den);
}

QuadIrr reciprocal(const QuadIrr& theta) { return mobius_apply(IntMatrix2{0, 1, 1, 0}, theta); }

// ---------------------------------------------------------------------------
// Continued fractions

ContinuedFraction continued_fraction(const QuadIrr& theta) {
    // Complete quotients are tracked as (P + sqrt(D))/Q with Q | D - P^2, which
    // keeps the recurrence in integers.
    const Int p = theta.p();
    const Int q = theta.q();
    const Int r = theta.r();
    Int big_d = q * q * theta.d();
    Int big_p = q > 0 ? p : Int(-p);
    Int big_q = q > 0 ? r : Int(-r);
    if ((big_d - big_p * big_p) % big_q != 0) {
        const Int scale = abs(big_q);
        big_p *= scale;
        big_d *= scale * scale;
        big_q *= scale;
    }
    const Int root = isqrt(big_d);

    std::vector<Int> terms;
    std::map<std::pair<Int, Int>, std::size_t> seen;
    while (true) {
        auto [it, inserted] = seen.emplace(std::make_pair(big_p, big_q), terms.size());
        if (!inserted) {
            const std::size_t start = it->second;
            ContinuedFraction cf;
            cf.preperiod.assign(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(start));
            cf.period.assign(terms.begin() + static_cast<std::ptrdiff_t>(start), terms.end());
            return cf;
        }
        Int a = big_q > 0 ? floor_div(big_p + root, big_q) : Int(-floor_div(big_p + root, -big_q) - 1);
        big_p = a * big_q - big_p;
        big_q = (big_d - big_p * big_p) / big_q;
        terms.push_back(std::move(a));
    }
}

namespace {

std::vector<Int> minimal_rotation(const std::vector<Int>& v) {
    std::vector<Int> best = v;
    std::vector<Int> rotated = v;
    for (std::size_t i = 1; i < v.size(); ++i) {
        std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
        if (std::lexicographical_compare(rotated.begin(), rotated.end(), best.begin(), best.end())) {
            best = rotated;
        }
    }
    return best;
}

}  // namespace

bool gl2z_equivalent(const QuadIrr& theta, const QuadIrr& other) {
    if (theta.d() != other.d()) return false;
    const ContinuedFraction a = continued_fraction(theta);
    const ContinuedFraction b = continued_fraction(other);
    if (a.period.size() != b.period.size()) return false;
    return minimal_rotation(a.period) == minimal_rotation(b.period);
}

bool pm_mod_z_equivalent(const QuadIrr& theta, const QuadIrr& other) {
    if (theta.d() != other.d()) return false;
    return (theta.value() - other.value()).is_integer() || (theta.value() + other.value()).is_integer();
}

// ---------------------------------------------------------------------------
// Trace groups

TraceGroup::TraceGroup(Int k_, QuadIrr theta_) : k(std::move(k_)), theta(std::move(theta_)) {
    if (k < 1) throw std::invalid_argument("trace group scale 1/k needs k >= 1");
}

bool TraceGroup::contains(const QuadNumber& x, Int* u, Int* v) const {
    if (!x.is_rational() && x.radicand() != theta.d()) return false;
    const QuadNumber& t = theta.value();
    // k x = u + v theta  =>  v = k x_sqrt / theta_sqrt, u = k x_rat - v theta_rat.
    const Rational vv = Rational(k) * x.sqrt_coeff() / t.sqrt_coeff();
    if (vv.get_den() != 1) return false;
    const Rational uu = Rational(k) * x.rational_part() - vv * t.rational_part();
    if (uu.get_den() != 1) return false;
    if (u) *u = uu.get_num();
    if (v) *v = vv.get_num();
    return true;
}

std::pair<QuadNumber, TraceGroup> trace_group_rescale(const IntMatrix2& m, const TraceGroup& g) {
    const Int dt = det(m);
    if (dt != 1 && dt != -1) {
        throw Error(ErrorKind::NotUnimodular, "matrix (" + to_text(m) + ") has determinant " + dt.get_str());
    }
    const Int& rad = g.theta.d();
    IntMatrix2 mm = m;
    QuadNumber denom = QuadNumber::rational(Rational(mm.c), rad) * g.theta.value() +
                       QuadNumber::rational(Rational(mm.d), rad);
    if (denom.sign() < 0) {
        mm = -mm;
        denom = -denom;
    }
    QuadNumber scalar = QuadNumber::rational(Rational(1), rad) / denom;
    return {std::move(scalar), TraceGroup(g.k, mobius_apply(mm, g.theta))};
}

bool trace_group_equal(const TraceGroup& g, const TraceGroup& h) {
    return g.k == h.k && pm_mod_z_equivalent(g.theta, h.theta);
}

// ---------------------------------------------------------------------------
// Text / JSON

namespace {

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool accept(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
    void expect_word(std::string_view w) {
        skip();
        if (s.substr(pos, w.size()) != w) throw ParseError("expected '" + std::string(w) + "'", pos);
        pos += w.size();
    }
    Int integer() {
        skip();
        const std::size_t start = pos;
        bool negative = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';
        const std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) throw ParseError("expected integer", start);
        Int v(std::string(s.substr(digits, pos - digits)));
        return negative ? Int(-v) : v;
    }
};

}  // namespace

QuadIrr theta_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("theta JSON must be an object {p,q,r,d}", 0);
    for (const char* key : {"p", "q", "r", "d"}) {
        if (!j.contains(key)) throw ParseError(std::string("theta JSON missing \"") + key + "\"", 0);
    }
    return canonicalize(int_from_json(j.at("p")), int_from_json(j.at("q")), int_from_json(j.at("r")),
                        int_from_json(j.at("d")));
}

QuadIrr parse_theta(std::string_view text) {
    Cursor c{text};
    c.skip();
    if (c.pos < text.size() && text[c.pos] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid theta JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
        }
        return theta_from_json(j);
    }
    c.expect('(');
    const Int p = c.integer();
    c.skip();
    int op = 0;
    if (c.accept('+')) {
        op = 1;
    } else if (c.accept('-')) {
        op = -1;
    } else {
        throw ParseError("expected '+' or '-' before the sqrt term", c.pos);
    }
    const Int q = c.integer() * op;
    c.expect('*');
    c.expect_word("sqrt");
    c.expect('(');
    const Int d = c.integer();
    c.expect(')');
    c.expect(')');
    Int r = 1;
    if (c.accept('/')) r = c.integer();
    c.skip();
    if (c.pos != text.size()) throw ParseError("trailing characters after theta", c.pos);
    return canonicalize(p, q, r, d);
}

std::string to_text(const QuadNumber& x) {
    const Int q = x.q();
    std::string out = "(" + x.p().get_str();
    out += q < 0 ? "-" : "+";
    out += Int(abs(q)).get_str() + "*sqrt(" + x.radicand().get_str() + "))/" + x.r().get_str();
    return out;
}

nlohmann::json to_json(const QuadNumber& x) {
    return {{"p", int_to_json(x.p())}, {"q", int_to_json(x.q())}, {"r", int_to_json(x.r())},
            {"d", int_to_json(x.radicand())}};
}

nlohmann::json to_json(const ContinuedFraction& cf) {
    nlohmann::json pre = nlohmann::json::array();
    nlohmann::json per = nlohmann::json::array();
    for (const auto& a : cf.preperiod) pre.push_back(int_to_json(a));
    for (const auto& a : cf.period) per.push_back(int_to_json(a));
    return {{"preperiod", pre}, {"period", per}};
}

nlohmann::json to_json(const TraceGroup& g) {
    return {{"scale", "1/" + g.k.get_str()}, {"theta", to_text(g.theta)}};
}

}  // namespace ncrot
