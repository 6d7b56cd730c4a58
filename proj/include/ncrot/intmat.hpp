#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <json.hpp>

namespace ncrot {

using Int = mpz_class;

/// Exact 2x2 integer matrix (a b; c d), row-major.
struct IntMatrix2 {
    Int a{0}, b{0}, c{0}, d{0};

    IntMatrix2() = default;
    IntMatrix2(Int a_, Int b_, Int c_, Int d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static IntMatrix2 identity() { return {1, 0, 0, 1}; }
    static IntMatrix2 zero() { return {0, 0, 0, 0}; }

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

    friend bool operator==(const IntMatrix2& x, const IntMatrix2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y);
IntMatrix2 operator+(const IntMatrix2& x, const IntMatrix2& y);
IntMatrix2 operator-(const IntMatrix2& x, const IntMatrix2& y);
IntMatrix2 operator-(const IntMatrix2& x);

/// Named elements of SL2(Z) / GL2(Z) used throughout.
namespace gen {
inline IntMatrix2 J() { return {0, 1, -1, 0}; }
inline IntMatrix2 P() { return {1, 0, 1, 1}; }
inline IntMatrix2 H() { return {1, 1, -1, 0}; }
inline IntMatrix2 T() { return {-1, 0, 0, 1}; }
}  // namespace gen

Int det(const IntMatrix2& m);
Int trace(const IntMatrix2& m);
Int gcd_of_entries(const IntMatrix2& m);

/// Inverse of a determinant-one matrix. Throws NotSL2 otherwise.
IntMatrix2 inverse_sl2(const IntMatrix2& m);

/// Inverse of a determinant +-1 matrix. Throws NotUnimodular otherwise.
IntMatrix2 inverse_gl2(const IntMatrix2& m);

/// I - A^{-1}; its determinant is 2 - tr(A).
IntMatrix2 one_minus_inverse(const IntMatrix2& a);

/// T A T with T = diag(-1, 1), i.e. (a -b; -c d).
IntMatrix2 conjugate_by_T(const IntMatrix2& m);

/// Result of `smith_normal_form`: left * M * right == diag, both transforms
/// unimodular, invariant factors non-negative with h1 | h2.
struct SmithDecomposition {
    IntMatrix2 left;
    IntMatrix2 diag;
    IntMatrix2 right;
    std::array<Int, 2> invariant_factors;
};

SmithDecomposition smith_normal_form(const IntMatrix2& m);

bool matrix_equivalent(const IntMatrix2& m, const IntMatrix2& n);

/// Order of A in SL2(Z): a value in {1,2,3,4,6}, or nullopt for infinite order.
/// Throws NotSL2.
std::optional<unsigned> order_in_sl2(const IntMatrix2& a);

/// Throws NotSL2 / FiniteOrderMatrix unless A is an infinite-order element of SL2(Z).
void require_infinite_order_sl2(const IntMatrix2& a);

/// Parses "a b c d" (whitespace separated, row-major) or {"rows":[[a,b],[c,d]]}.
/// JSON entries may be numbers or decimal strings.
IntMatrix2 parse_matrix(std::string_view text);
IntMatrix2 matrix_from_json(const nlohmann::json& j);

std::string to_text(const IntMatrix2& m);
nlohmann::json to_json(const IntMatrix2& m);

/// Integers are serialized as JSON numbers when they fit in int64, else as strings.
nlohmann::json int_to_json(const Int& v);
Int int_from_json(const nlohmann::json& j);

}  // namespace ncrot
