#include <doctest.h>

#include "ncrot/error.hpp"
#include "ncrot/intmat.hpp"
#include "oracles.hpp"

using namespace ncrot;

namespace {

void check_smith(const IntMatrix2& m) {
    const auto s = smith_normal_form(m);
    CHECK(s.left * m * s.right == s.diag);
    const Int dl = det(s.left), dr = det(s.right);
    CHECK((dl == 1 || dl == -1));
    CHECK((dr == 1 || dr == -1));
    CHECK(s.diag.b == 0);
    CHECK(s.diag.c == 0);
    CHECK(s.diag.a == s.invariant_factors[0]);
    CHECK(s.diag.d == s.invariant_factors[1]);
    CHECK(s.invariant_factors[0] >= 0);
    CHECK(s.invariant_factors[1] >= 0);
    if (s.invariant_factors[1] != 0) CHECK(s.invariant_factors[1] % s.invariant_factors[0] == 0);
    const auto [h1, h2] = oracle::invariant_factors(m);
    CHECK(s.invariant_factors[0] == h1);
    CHECK(s.invariant_factors[1] == h2);
}

}  // namespace

TEST_CASE("det examples") {
    CHECK(det(IntMatrix2::identity()) == 1);
    CHECK(det({2, 1, 7, 4}) == 1);
    CHECK(det({0, 2, 0, 0}) == 0);
}

TEST_CASE("trace examples") {
    CHECK(trace(IntMatrix2::identity()) == 2);
    CHECK(trace({4, 9, 3, 7}) == 11);
    CHECK(trace(gen::H()) == 1);
}

TEST_CASE("inverse_sl2 examples and errors") {
    CHECK(inverse_sl2(IntMatrix2::identity()) == IntMatrix2::identity());
    CHECK(inverse_sl2({-1, 1, 0, -1}) == IntMatrix2{-1, -1, 0, -1});
    CHECK(inverse_sl2({2, 1, 7, 4}) == IntMatrix2{4, -1, -7, 2});
    CHECK(IntMatrix2{2, 1, 7, 4} * inverse_sl2({2, 1, 7, 4}) == IntMatrix2::identity());
    try {
        inverse_sl2({2, 0, 0, 1});
        FAIL("expected NotSL2");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSL2);
    }
    CHECK(inverse_gl2(gen::T()) == gen::T());
    CHECK_THROWS_AS(inverse_gl2({2, 0, 0, 1}), Error);
}

TEST_CASE("one_minus_inverse examples") {
    CHECK(one_minus_inverse({-1, 1, 0, -1}) == IntMatrix2{2, 1, 0, 2});
    CHECK(one_minus_inverse({1, 2, 0, 1}) == IntMatrix2{0, 2, 0, 0});
    CHECK(one_minus_inverse(IntMatrix2::identity()) == IntMatrix2::zero());
    CHECK_THROWS_AS(one_minus_inverse({1, 1, 1, 1}), Error);
}

TEST_CASE("smith_normal_form examples") {
    CHECK(smith_normal_form({2, 1, 0, 2}).diag == IntMatrix2{1, 0, 0, 4});
    CHECK(one_minus_inverse({1, 9, 1, 10}) == IntMatrix2{-9, 9, 1, 0});
    CHECK(smith_normal_form({-9, 9, 1, 0}).diag == IntMatrix2{1, 0, 0, 9});
    CHECK(one_minus_inverse({4, 9, 3, 7}) == IntMatrix2{-6, 9, 3, -3});
    CHECK(smith_normal_form({-6, 9, 3, -3}).diag == IntMatrix2{3, 0, 0, 3});
    check_smith({2, 1, 0, 2});
    check_smith({-9, 9, 1, 0});
    check_smith({-6, 9, 3, -3});
}

TEST_CASE("smith_normal_form degenerate shapes") {
    const auto z = smith_normal_form(IntMatrix2::zero());
    CHECK(z.invariant_factors[0] == 0);
    CHECK(z.invariant_factors[1] == 0);
    const auto r1 = smith_normal_form({0, 2, 0, 0});
    CHECK(r1.invariant_factors[0] == 2);
    CHECK(r1.invariant_factors[1] == 0);
    check_smith({0, 2, 0, 0});
    check_smith({3, 6, -2, -4});
    check_smith({0, 0, 0, -7});
    check_smith({2, 1, 1, 1});
    check_smith({1, 1, 1, 1});
    check_smith({-5, 0, 0, -3});
}

TEST_CASE("smith_normal_form on random matrices") {
    oracle::Gen g(0x5eed0001);
    for (int i = 0; i < 500; ++i) {
        IntMatrix2 m{g.uniform(-60, 60), g.uniform(-60, 60), g.uniform(-60, 60), g.uniform(-60, 60)};
        check_smith(m);
        const Int dm = det(m);
        const auto s = smith_normal_form(m);
        if (dm != 0) CHECK(abs(dm) == s.invariant_factors[0] * s.invariant_factors[1]);
    }
}

TEST_CASE("smith_normal_form beyond machine integers") {
    const Int big("123456789012345678901234567890123456789");
    IntMatrix2 m{big * 6, big * 4, big * 9 + 3, big * 6 + 2};
    check_smith(m);
    check_smith({big, big + 1, big - 1, big});
}

TEST_CASE("det(I - A^-1) = 2 - tr(A)") {
    oracle::Gen g(0x5eed0002);
    for (int i = 0; i < 300; ++i) {
        const IntMatrix2 a = g.sl2_word(12);
        CHECK(det(one_minus_inverse(a)) == 2 - trace(a));
    }
}

TEST_CASE("matrix_equivalent examples") {
    CHECK(matrix_equivalent({2, 1, 0, 2}, {-3, 1, 7, -1}));
    CHECK_FALSE(matrix_equivalent({-6, 9, 3, -3}, {-9, 9, 1, 0}));
    CHECK(matrix_equivalent({-6, 9, 3, -3}, {-6, 9, 3, -3}));
}

TEST_CASE("matrix_equivalent is invariant under unimodular P M Q") {
    oracle::Gen g(0x5eed0003);
    for (int i = 0; i < 200; ++i) {
        IntMatrix2 m{g.uniform(-20, 20), g.uniform(-20, 20), g.uniform(-20, 20), g.uniform(-20, 20)};
        const IntMatrix2 p = g.gl2_word(12), q = g.gl2_word(12);
        CHECK(matrix_equivalent(m, p * m * q));
    }
}

TEST_CASE("matrix_equivalent is an equivalence relation on samples") {
    oracle::Gen g(0x5eed0004);
    std::vector<IntMatrix2> pool;
    for (int i = 0; i < 40; ++i) pool.push_back({g.uniform(-4, 4), g.uniform(-4, 4), g.uniform(-4, 4), g.uniform(-4, 4)});
    for (const auto& x : pool) {
        CHECK(matrix_equivalent(x, x));
        for (const auto& y : pool) {
            CHECK(matrix_equivalent(x, y) == matrix_equivalent(y, x));
            if (!matrix_equivalent(x, y)) continue;
            for (const auto& z : pool)
                if (matrix_equivalent(y, z)) CHECK(matrix_equivalent(x, z));
        }
    }
}

TEST_CASE("order_in_sl2 examples") {
    CHECK(order_in_sl2(IntMatrix2::identity()) == 1u);
    CHECK(order_in_sl2(gen::H()) == 6u);
    CHECK(order_in_sl2({1, -1, 1, 0}) == 6u);
    CHECK(order_in_sl2(gen::J()) == 4u);
    CHECK(order_in_sl2(-IntMatrix2::identity()) == 2u);
    CHECK_FALSE(order_in_sl2({1, 2, 0, 1}).has_value());
    CHECK_FALSE(order_in_sl2({-1, 1, 0, -1}).has_value());
    CHECK_THROWS_AS(order_in_sl2({2, 0, 0, 2}), Error);
}

TEST_CASE("order_in_sl2 agrees with repeated multiplication") {
    oracle::Gen g(0x5eed0005);
    for (int i = 0; i < 500; ++i) {
        const IntMatrix2 a = g.sl2_word(10);
        CHECK(order_in_sl2(a) == oracle::brute_order(a));
    }
}

TEST_CASE("require_infinite_order_sl2") {
    CHECK_NOTHROW(require_infinite_order_sl2({2, 1, 1, 1}));
    try {
        require_infinite_order_sl2(gen::J());
        FAIL("expected FiniteOrderMatrix");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FiniteOrderMatrix);
    }
    try {
        require_infinite_order_sl2({1, 1, 1, 1});
        FAIL("expected NotSL2");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSL2);
    }
}

TEST_CASE("conjugate_by_T examples and involution") {
    CHECK(conjugate_by_T(IntMatrix2::identity()) == IntMatrix2::identity());
    CHECK(conjugate_by_T(gen::J()) == IntMatrix2{0, -1, 1, 0});
    CHECK(conjugate_by_T(gen::J()) == inverse_sl2(gen::J()));
    CHECK(conjugate_by_T(gen::P()) == inverse_sl2(gen::P()));
    CHECK(conjugate_by_T({2, 1, 7, 4}) == IntMatrix2{2, -1, -7, 4});
    CHECK(conjugate_by_T(gen::H()) == IntMatrix2{1, -1, 1, 0});
    oracle::Gen g(0x5eed0006);
    for (int i = 0; i < 200; ++i) {
        const IntMatrix2 a{g.uniform(-99, 99), g.uniform(-99, 99), g.uniform(-99, 99), g.uniform(-99, 99)};
        CHECK(conjugate_by_T(conjugate_by_T(a)) == a);
        CHECK(conjugate_by_T(a) == gen::T() * a * gen::T());
    }
}

TEST_CASE("parse_matrix text and JSON") {
    CHECK(parse_matrix("1 0 0 1") == IntMatrix2::identity());
    CHECK(parse_matrix("  -1\t1 0\n-1 ") == IntMatrix2{-1, 1, 0, -1});
    CHECK(parse_matrix(R"({"rows":[[2,1],[7,4]]})") == IntMatrix2{2, 1, 7, 4});
    CHECK(parse_matrix(R"({"rows":[["-3","1"],[7,-1]]})") == IntMatrix2{-3, 1, 7, -1});
    const Int big("-98765432109876543210987654321");
    CHECK(parse_matrix("98765432109876543210987654321 0 0 1").a == -big);

    for (const char* bad : {"", "1 2 3", "1 2 3 4 5", "1 x 3 4", "1.5 0 0 1", R"({"rows":[[1,2],[3]]})",
                            R"({"rows":[[1,2],[3,4.5]]})", R"({"cols":[[1,2],[3,4]]})", "{"}) {
        CAPTURE(bad);
        try {
            parse_matrix(bad);
            FAIL("expected ParseError");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ParseError);
        }
    }
    try {
        parse_matrix("1 2 x 4");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("matrix serialization round-trip is idempotent") {
    oracle::Gen g(0x5eed0007);
    for (int i = 0; i < 200; ++i) {
        const IntMatrix2 a{g.uniform(-1000000, 1000000), g.uniform(-9, 9), g.uniform(-9, 9), g.uniform(-9, 9)};
        const std::string text = to_text(a);
        CHECK(parse_matrix(text) == a);
        CHECK(to_text(parse_matrix(text)) == text);
        const std::string js = to_json(a).dump();
        CHECK(parse_matrix(js) == a);
        CHECK(to_json(parse_matrix(js)).dump() == js);
    }
    const Int big("340282366920938463463374607431768211457");
    const IntMatrix2 b{big, 1, -big, 0};
    CHECK(matrix_from_json(to_json(b)) == b);
    CHECK(int_from_json(int_to_json(big)) == big);
    CHECK(int_to_json(Int(-5)).is_number_integer());
    CHECK(int_to_json(big).is_string());
}
