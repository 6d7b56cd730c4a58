#include <doctest.h>

#include <cmath>

#include "ncrot/error.hpp"
#include "ncrot/quadirr.hpp"
#include "oracles.hpp"

using namespace ncrot;

namespace {

QuadIrr sqrt_of(long d) { return canonicalize(0, 1, 1, d); }
QuadIrr golden() { return canonicalize(1, 1, 2, 5); }
QuadIrr qi(long p, long q, long r, long d) { return canonicalize(p, q, r, d); }

bool squarefree(const Int& d) {
    for (Int k = 2; k * k <= d; ++k)
        if (d % (k * k) == 0) return false;
    return true;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::ParseError;
}

/// (a theta + b)/(c theta + d) in long double.
long double mobius_ld(const IntMatrix2& m, long double t) {
    return (m.a.get_d() * t + m.b.get_d()) / (m.c.get_d() * t + m.d.get_d());
}

QuadNumber as_qn(const Int& v, const Int& d) { return QuadNumber::rational(Rational(v), d); }

/// Product of (a 1; 1 0) over the terms.
IntMatrix2 cf_matrix(const std::vector<Int>& terms) {
    IntMatrix2 m = IntMatrix2::identity();
    for (const Int& a : terms) m = m * IntMatrix2{a, 1, 1, 0};
    return m;
}

}  // namespace

TEST_CASE("canonicalize examples") {
    const QuadIrr s2 = qi(0, 1, 1, 2);
    CHECK(s2.p() == 0);
    CHECK(s2.q() == 1);
    CHECK(s2.r() == 1);
    CHECK(s2.d() == 2);
    CHECK(qi(0, 2, 2, 2) == s2);
    const QuadIrr t = qi(0, 1, 1, 8);
    CHECK(t.p() == 0);
    CHECK(t.q() == 2);
    CHECK(t.r() == 1);
    CHECK(t.d() == 2);
    CHECK(std::fabs(oracle::value(t) - std::sqrt(8.0L)) < 1e-15L);
    CHECK(qi(3, -2, -4, 2) == qi(-3, 2, 4, 2));
}

TEST_CASE("canonicalize errors") {
    CHECK(kind_of([] { qi(1, 0, 1, 2); }) == ErrorKind::RationalValue);
    CHECK(kind_of([] { qi(1, 3, 1, 4); }) == ErrorKind::RationalValue);
    CHECK(kind_of([] { qi(1, 3, 1, 1); }) == ErrorKind::RationalValue);
    CHECK(kind_of([] { qi(1, 1, 0, 2); }) == ErrorKind::ZeroDenominator);
}

TEST_CASE("canonicalize preserves value and normal form on random inputs") {
    oracle::Gen g(0x9a0001);
    for (int i = 0; i < 500; ++i) {
        const long p = g.uniform(-50, 50), r = g.uniform(1, 30) * (g.uniform(0, 1) ? 1 : -1);
        long q = g.uniform(-9, 9);
        if (q == 0) q = 2;
        const long d = g.uniform(2, 200);
        const long double raw = (p + q * std::sqrt(static_cast<long double>(d))) / r;
        const long root = std::lround(std::sqrt(static_cast<double>(d)));
        if (root * root == d) {
            CHECK(kind_of([&] { qi(p, q, r, d); }) == ErrorKind::RationalValue);
            continue;
        }
        const QuadIrr x = qi(p, q, r, d);
        CHECK(std::fabs(oracle::value(x) - raw) < 1e-12L * (1 + std::fabs(raw)));
        CHECK(x.r() > 0);
        CHECK(x.q() != 0);
        CHECK(squarefree(x.d()));
        Int g3;
        mpz_gcd(g3.get_mpz_t(), x.p().get_mpz_t(), x.q().get_mpz_t());
        mpz_gcd(g3.get_mpz_t(), g3.get_mpz_t(), x.r().get_mpz_t());
        CHECK(g3 == 1);
    }
}

TEST_CASE("mobius_apply examples") {
    const QuadIrr t = qi(-1, 1, 1, 2);
    CHECK(mobius_apply(IntMatrix2::identity(), t) == t);
    CHECK(mobius_apply({0, 1, 1, 0}, t) == qi(1, 1, 1, 2));
    CHECK(mobius_apply({1, 1, 0, 1}, t) == qi(0, 1, 1, 2));
    CHECK(reciprocal(sqrt_of(2)) == qi(0, 1, 2, 2));
    CHECK(kind_of([&] { mobius_apply({2, 0, 0, 1}, t); }) == ErrorKind::NotUnimodular);
}

TEST_CASE("mobius_apply matches floating evaluation and is a group action") {
    oracle::Gen g(0x9a0002);
    for (int i = 0; i < 300; ++i) {
        const QuadIrr t = g.quad_irr();
        const IntMatrix2 m = g.gl2_word(8), n = g.gl2_word(8);
        const QuadIrr mt = mobius_apply(m, t);
        const long double expect = mobius_ld(m, oracle::value(t));
        CHECK(std::fabs(oracle::value(mt) - expect) < 1e-9L * (1 + std::fabs(expect)));
        CHECK(mobius_apply(m * n, t) == mobius_apply(m, mobius_apply(n, t)));
    }
}

TEST_CASE("continued_fraction examples") {
    const auto s2 = continued_fraction(sqrt_of(2));
    CHECK(s2.preperiod == std::vector<Int>{1});
    CHECK(s2.period == std::vector<Int>{2});
    const auto phi = continued_fraction(golden());
    CHECK(phi.preperiod.empty());
    CHECK(phi.period == std::vector<Int>{1});
    const auto t = continued_fraction(qi(-1, 1, 1, 2));
    CHECK(t.preperiod == std::vector<Int>{0});
    CHECK(t.period == std::vector<Int>{2});
    const auto s3 = continued_fraction(sqrt_of(3));
    CHECK(s3.preperiod == std::vector<Int>{1});
    CHECK(s3.period == std::vector<Int>{1, 2});
    const auto neg = continued_fraction(qi(0, -1, 1, 2));
    CHECK(neg.preperiod.front() == -2);
}

TEST_CASE("continued_fraction reconstruction") {
    oracle::Gen g(0x9a0003);
    for (int i = 0; i < 200; ++i) {
        const QuadIrr t = g.quad_irr();
        const auto cf = continued_fraction(t);
        REQUIRE_FALSE(cf.period.empty());
        for (std::size_t j = 1; j < cf.preperiod.size(); ++j) CHECK(cf.preperiod[j] >= 1);
        for (const Int& a : cf.period) CHECK(a >= 1);
        // Minimal period: not a repetition of a shorter block.
        const std::size_t len = cf.period.size();
        for (std::size_t s = 1; s < len; ++s) {
            if (len % s != 0) continue;
            bool repeats = true;
            for (std::size_t j = 0; j < len; ++j) repeats = repeats && cf.period[j] == cf.period[j % s];
            CHECK_FALSE(repeats);
        }
        // Exact: the tail xi = M_pre^{-1}.theta is the fixed point > 1 of the period matrix.
        const IntMatrix2 pre = cf_matrix(cf.preperiod), per = cf_matrix(cf.period);
        const QuadIrr xi = mobius_apply(inverse_gl2(pre), t);
        const Int& d = t.d();
        const QuadNumber residual = as_qn(per.c, d) * xi.value() * xi.value() +
                                    as_qn(per.d - per.a, d) * xi.value() - as_qn(per.b, d);
        CHECK(residual.sign() == 0);
        CHECK(oracle::value(xi) > 1.0L);
        // Numerical: convergents approach theta within the Fibonacci bound.
        std::vector<long double> terms;
        for (const Int& a : cf.preperiod) terms.push_back(a.get_d());
        for (int n = 1; n <= 20; ++n) {
            for (const Int& a : cf.period) terms.push_back(a.get_d());
            const long double err = std::fabs(oracle::convergent(terms) - oracle::value(t));
            // q_k >= F_{k+1} for the k-th convergent, and |theta - p_k/q_k| < 1/q_k^2.
            long double fa = 1, fb = 1;
            for (std::size_t k = 2; k <= terms.size(); ++k) {
                const long double next = fa + fb;
                fa = fb;
                fb = next;
            }
            CHECK(err <= 1.0L / (fa * fa) + 1e-15L);
        }
    }
}

TEST_CASE("gl2z_equivalent examples") {
    CHECK(gl2z_equivalent(qi(-1, 1, 1, 2), qi(1, 1, 1, 2)));
    CHECK(mobius_apply({0, 1, 1, 0}, qi(-1, 1, 1, 2)) == qi(1, 1, 1, 2));
    CHECK_FALSE(gl2z_equivalent(sqrt_of(2), golden()));
    CHECK(gl2z_equivalent(golden(), golden()));
    CHECK_FALSE(gl2z_equivalent(sqrt_of(3), sqrt_of(2)));
    CHECK(gl2z_equivalent(sqrt_of(2), qi(0, 1, 2, 2)));         // 1/sqrt(2) = sqrt(2)/2
    CHECK_FALSE(gl2z_equivalent(sqrt_of(2), qi(0, 1, 3, 2)));   // discriminants 8 and 72
}

TEST_CASE("gl2z_equivalent soundness and pm implies gl2z") {
    oracle::Gen g(0x9a0004);
    for (int i = 0; i < 200; ++i) {
        const QuadIrr t = g.quad_irr();
        const IntMatrix2 m = g.gl2_word(10);
        const QuadIrr u = mobius_apply(m, t);
        CHECK(gl2z_equivalent(t, u));
        CHECK(gl2z_equivalent(u, t));
        const long n = g.uniform(-7, 7);
        const QuadIrr shifted = mobius_apply({g.uniform(0, 1) ? 1 : -1, n, 0, 1}, t);
        CHECK(pm_mod_z_equivalent(t, shifted));
        CHECK(gl2z_equivalent(t, shifted));
    }
}

TEST_CASE("equivalences are reflexive, symmetric and transitive on samples") {
    oracle::Gen g(0x9a0005);
    std::vector<QuadIrr> pool;
    for (int i = 0; i < 6; ++i) {
        const QuadIrr seed = g.quad_irr();
        pool.push_back(seed);
        for (int j = 0; j < 3; ++j) pool.push_back(mobius_apply(g.gl2_word(6), seed));
        pool.push_back(mobius_apply({-1, g.uniform(-3, 3), 0, 1}, seed));
    }
    for (const auto& x : pool) {
        CHECK(gl2z_equivalent(x, x));
        CHECK(pm_mod_z_equivalent(x, x));
        for (const auto& y : pool) {
            CHECK(gl2z_equivalent(x, y) == gl2z_equivalent(y, x));
            CHECK(pm_mod_z_equivalent(x, y) == pm_mod_z_equivalent(y, x));
            if (pm_mod_z_equivalent(x, y)) CHECK(gl2z_equivalent(x, y));
            if (!gl2z_equivalent(x, y)) continue;
            for (const auto& z : pool)
                if (gl2z_equivalent(y, z)) CHECK(gl2z_equivalent(x, z));
        }
    }
}

TEST_CASE("pm_mod_z_equivalent examples") {
    CHECK(pm_mod_z_equivalent(qi(-1, 1, 1, 2), qi(1, -1, 1, 2)));
    CHECK(pm_mod_z_equivalent(sqrt_of(2), qi(5, 1, 1, 2)));
    CHECK_FALSE(pm_mod_z_equivalent(sqrt_of(2), sqrt_of(3)));
    CHECK_FALSE(pm_mod_z_equivalent(sqrt_of(2), qi(0, 1, 2, 2)));
    CHECK_FALSE(pm_mod_z_equivalent(qi(1, 1, 2, 2), qi(0, 1, 2, 2)));
}

TEST_CASE("TraceGroup membership") {
    const TraceGroup g(1, sqrt_of(2));
    Int u, v;
    CHECK(g.contains(QuadNumber(3, -2, 1, 2), &u, &v));
    CHECK(u == 3);
    CHECK(v == -2);
    CHECK_FALSE(g.contains(QuadNumber::rational(Rational(1, 2))));
    CHECK_FALSE(g.contains(QuadNumber(0, 1, 1, 3)));
    const TraceGroup half(2, sqrt_of(2));
    CHECK(half.contains(QuadNumber(1, 1, 2, 2)));
    CHECK_FALSE(half.contains(QuadNumber(1, 1, 4, 2)));
    CHECK_THROWS_AS(TraceGroup(0, sqrt_of(2)), std::invalid_argument);
}

TEST_CASE("trace_group_rescale examples") {
    const QuadIrr t = qi(-1, 1, 1, 2);
    const TraceGroup g(1, t);
    {
        const auto [s, h] = trace_group_rescale(IntMatrix2::identity(), g);
        CHECK(s == QuadNumber::rational(1, 2));
        CHECK(h.theta == t);
    }
    {
        const auto [s, h] = trace_group_rescale({0, 1, 1, 0}, g);
        CHECK(s == QuadNumber(1, 1, 1, 2));  // 1/(sqrt 2 - 1)
        CHECK(h.theta == qi(1, 1, 1, 2));
    }
    {
        const auto [s, h] = trace_group_rescale({1, 1, 0, 1}, g);
        CHECK(s == QuadNumber::rational(1, 2));
        CHECK(trace_group_equal(h, g));
    }
}

TEST_CASE("trace_group_rescale gives equal subsets of R") {
    oracle::Gen g(0x9a0006);
    for (int i = 0; i < 40; ++i) {
        const QuadIrr t = g.quad_irr();
        const Int k = g.uniform(1, 6);
        const TraceGroup grp(k, t);
        const IntMatrix2 m = g.gl2_word(8);
        const auto [s, image] = trace_group_rescale(m, grp);
        CHECK(s.sign() > 0);
        CHECK(image.theta == mobius_apply(m, t));
        CHECK(image.k == k);
        const QuadNumber kq = as_qn(k, t.d());
        for (long a = -5; a <= 5; ++a) {
            for (long b = -5; b <= 5; ++b) {
                const QuadNumber x = (as_qn(a, t.d()) + as_qn(b, t.d()) * t.value()) / kq;
                const QuadNumber y = (as_qn(a, t.d()) + as_qn(b, t.d()) * image.theta.value()) / kq;
                CHECK(image.contains(s * x));
                CHECK(grp.contains(y / s));
            }
        }
    }
}

TEST_CASE("trace_group_equal examples") {
    const QuadIrr t = qi(-1, 1, 1, 2);
    CHECK(trace_group_equal(TraceGroup(1, t), TraceGroup(1, t)));
    CHECK(trace_group_equal(TraceGroup(1, sqrt_of(2)), TraceGroup(1, t)));
    CHECK_FALSE(trace_group_equal(TraceGroup(2, sqrt_of(2)), TraceGroup(1, sqrt_of(2))));
    CHECK_FALSE(TraceGroup(1, sqrt_of(2)).contains(QuadNumber::rational(Rational(1, 2))));
    CHECK_FALSE(trace_group_equal(TraceGroup(1, sqrt_of(2)), TraceGroup(1, qi(0, 1, 2, 2))));
}

TEST_CASE("parse_theta text and JSON") {
    CHECK(parse_theta("(-1+1*sqrt(2))/1") == qi(-1, 1, 1, 2));
    CHECK(parse_theta("(1+1*sqrt(5))/2") == golden());
    CHECK(parse_theta(" ( -3 - 2 * sqrt( 8 ) ) / -4 ") == qi(-3, -2, -4, 8));
    CHECK(parse_theta(R"({"p":-1,"q":1,"r":1,"d":2})") == qi(-1, 1, 1, 2));
    CHECK(parse_theta(R"({"p":"0","q":"1","r":"1","d":"3"})") == sqrt_of(3));
    CHECK(kind_of([] { parse_theta("(1+0*sqrt(2))/1"); }) == ErrorKind::RationalValue);
    CHECK(kind_of([] { parse_theta("(1+1*sqrt(4))/1"); }) == ErrorKind::RationalValue);
    CHECK(kind_of([] { parse_theta("(1+1*sqrt(2))/0"); }) == ErrorKind::ZeroDenominator);
    for (const char* bad : {"", "sqrt(2)", "(1+1*sqrt(2)", "(1+1*sqrt(2))/1x", "(1+1*sqr(2))/1",
                            R"({"p":1,"q":1,"r":1})", "1.41"}) {
        CAPTURE(bad);
        CHECK(kind_of([&] { parse_theta(bad); }) == ErrorKind::ParseError);
    }
}

TEST_CASE("theta serialization round-trip is idempotent") {
    oracle::Gen g(0x9a0007);
    for (int i = 0; i < 300; ++i) {
        const QuadIrr t = g.quad_irr();
        const std::string text = to_text(t);
        CHECK(parse_theta(text) == t);
        CHECK(to_text(parse_theta(text)) == text);
        const auto js = to_json(t).dump();
        CHECK(parse_theta(js) == t);
        CHECK(to_json(theta_from_json(nlohmann::json::parse(js))).dump() == js);
    }
    const auto cf = to_json(continued_fraction(sqrt_of(3)));
    CHECK(cf["preperiod"] == nlohmann::json::array({1}));
    CHECK(cf["period"] == nlohmann::json::array({1, 2}));
}
