#include "ncrot/intmat.hpp"

#include <cctype>
#include <limits>
#include <utility>

#include "ncrot/error.hpp"

namespace ncrot {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotSL2: return "NotSL2";
        case ErrorKind::NotUnimodular: return "NotUnimodular";
        case ErrorKind::FiniteOrderMatrix: return "FiniteOrderMatrix";
        case ErrorKind::RationalValue: return "RationalValue";
        case ErrorKind::ZeroDenominator: return "ZeroDenominator";
        case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
        case ErrorKind::DivergentAtom: return "DivergentAtom";
        case ErrorKind::NonUnitArgument: return "NonUnitArgument";
        case ErrorKind::InvalidTheta: return "InvalidTheta";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

IntMatrix2 operator+(const IntMatrix2& x, const IntMatrix2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

IntMatrix2 operator-(const IntMatrix2& x, const IntMatrix2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}

IntMatrix2 operator-(const IntMatrix2& x) { return {-x.a, -x.b, -x.c, -x.d}; }

Int det(const IntMatrix2& m) { return m.a * m.d - m.b * m.c; }

Int trace(const IntMatrix2& m) { return m.a + m.d; }

Int gcd_of_entries(const IntMatrix2& m) {
    Int g = gcd(m.a, m.b);
    g = gcd(g, m.c);
    return gcd(g, m.d);
}

IntMatrix2 inverse_sl2(const IntMatrix2& m) {
    if (det(m) != 1) {
        throw Error(ErrorKind::NotSL2, "matrix (" + to_text(m) + ") has determinant " + det(m).get_str());
    }
    return {m.d, -m.b, -m.c, m.a};
}

IntMatrix2 inverse_gl2(const IntMatrix2& m) {
    const Int dt = det(m);
    if (dt == 1) return {m.d, -m.b, -m.c, m.a};
    if (dt == -1) return {-m.d, m.b, m.c, -m.a};
    throw Error(ErrorKind::NotUnimodular, "matrix (" + to_text(m) + ") has determinant " + dt.get_str());
}

IntMatrix2 one_minus_inverse(const IntMatrix2& a) {
    return IntMatrix2::identity() - inverse_sl2(a);
}

IntMatrix2 conjugate_by_T(const IntMatrix2& m) { return {m.a, -m.b, -m.c, m.d}; }

namespace {

// Row operation on the working matrix: rows (0,1) <- E * rows, E unimodular.
void row_op(IntMatrix2& m, IntMatrix2& left, const IntMatrix2& e) {
    m = e * m;
    left = e * left;
}

void col_op(IntMatrix2& m, IntMatrix2& right, const IntMatrix2& f) {
    m = m * f;
    right = right * f;
}

const IntMatrix2 kSwap{0, 1, 1, 0};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix2& source) {
    IntMatrix2 m = source;
    IntMatrix2 left = IntMatrix2::identity();
    IntMatrix2 right = IntMatrix2::identity();

    while (true) {
        if (m.a == 0) {
            if (m.c != 0) {
                row_op(m, left, kSwap);
            } else if (m.b != 0) {
                col_op(m, right, kSwap);
            } else if (m.d != 0) {
                row_op(m, left, kSwap);
                col_op(m, right, kSwap);
            } else {
                break;  // zero matrix
            }
        }
        // Clear (1,0): plain elimination when a | c, else an extended-gcd row
        // operation that strictly lowers |a| (the gcd step alone can cycle).
        if (m.c != 0 && m.c % m.a == 0) {
            row_op(m, left, IntMatrix2{1, 0, -(m.c / m.a), 1});
        } else if (m.c != 0) {
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.a.get_mpz_t(), m.c.get_mpz_t());
            row_op(m, left, IntMatrix2{s, t, -m.c / g, m.a / g});
        }
        if (m.b != 0 && m.b % m.a == 0) {
            col_op(m, right, IntMatrix2{1, -(m.b / m.a), 0, 1});
            continue;
        }
        if (m.b != 0) {
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.a.get_mpz_t(), m.b.get_mpz_t());
            col_op(m, right, IntMatrix2{s, -m.b / g, t, m.a / g});
            continue;  // may have refilled (1,0)
        }
        if (m.c != 0) continue;
        // Diagonal now; enforce a | d.
        if (m.d != 0 && (m.a == 0 || m.d % m.a != 0)) {
            row_op(m, left, IntMatrix2{1, 1, 0, 1});
            continue;
        }
        break;
    }

    if (m.a < 0) row_op(m, left, IntMatrix2{-1, 0, 0, 1});
    if (m.d < 0) row_op(m, left, IntMatrix2{1, 0, 0, -1});

    SmithDecomposition out;
    out.invariant_factors = {m.a, m.d};
    out.diag = std::move(m);
    out.left = std::move(left);
    out.right = std::move(right);
    return out;
}

bool matrix_equivalent(const IntMatrix2& m, const IntMatrix2& n) {
    return smith_normal_form(m).invariant_factors == smith_normal_form(n).invariant_factors;
}

std::optional<unsigned> order_in_sl2(const IntMatrix2& a) {
    if (det(a) != 1) {
        throw Error(ErrorKind::NotSL2, "matrix (" + to_text(a) + ") has determinant " + det(a).get_str());
    }
    const Int tr = trace(a);
    const bool plus_minus_identity = a == IntMatrix2::identity() || a == -IntMatrix2::identity();
    if (!plus_minus_identity && (tr < -1 || tr > 1)) return std::nullopt;

    // Cayley-Hamilton bounds the order by 6 for every remaining case.
    IntMatrix2 power = a;
    for (unsigned n = 1; n <= 6; ++n) {
        if (power == IntMatrix2::identity()) return n;
        power = power * a;
    }
    return std::nullopt;
}

void require_infinite_order_sl2(const IntMatrix2& a) {
    if (auto order = order_in_sl2(a)) {
        throw Error(ErrorKind::FiniteOrderMatrix,
                    "matrix (" + to_text(a) + ") has finite order " + std::to_string(*order));
    }
}

// ---------------------------------------------------------------------------
// Text / JSON

namespace {

void skip_space(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

Int read_integer(std::string_view s, std::size_t& pos) {
    const std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    const std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) throw ParseError("expected integer", start);
    std::string token(s.substr(start, pos - start));
    if (token.front() == '+') token.erase(0, 1);
    return Int(token);
}

}  // namespace

Int int_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
        return Int(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        std::size_t pos = 0;
        Int v = read_integer(s, pos);
        if (pos != s.size()) throw ParseError("trailing characters in integer string", pos);
        return v;
    }
    throw ParseError("expected integer value in JSON", 0);
}

nlohmann::json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

IntMatrix2 matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows")) throw ParseError("matrix JSON needs a \"rows\" field", 0);
    const auto& rows = j.at("rows");
    if (!rows.is_array() || rows.size() != 2 || !rows[0].is_array() || !rows[1].is_array() ||
        rows[0].size() != 2 || rows[1].size() != 2) {
        throw ParseError("\"rows\" must be [[a,b],[c,d]]", 0);
    }
    return {int_from_json(rows[0][0]), int_from_json(rows[0][1]),
            int_from_json(rows[1][0]), int_from_json(rows[1][1])};
}

IntMatrix2 parse_matrix(std::string_view text) {
    std::size_t pos = 0;
    skip_space(text, pos);
    if (pos < text.size() && text[pos] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid matrix JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
        }
        return matrix_from_json(j);
    }
    std::array<Int, 4> entries;
    for (auto& e : entries) {
        skip_space(text, pos);
        e = read_integer(text, pos);
        if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
            throw ParseError("unexpected character in matrix", pos);
        }
    }
    skip_space(text, pos);
    if (pos != text.size()) throw ParseError("expected exactly four entries", pos);
    return {entries[0], entries[1], entries[2], entries[3]};
}

std::string to_text(const IntMatrix2& m) {
    return m.a.get_str() + " " + m.b.get_str() + " " + m.c.get_str() + " " + m.d.get_str();
}

nlohmann::json to_json(const IntMatrix2& m) {
    // Explicit arrays: a braced pair whose first element is a string would become an object.
    using nlohmann::json;
    return {{"rows", json::array({json::array({int_to_json(m.a), int_to_json(m.b)}),
                                  json::array({int_to_json(m.c), int_to_json(m.d)})})}};
}

}  // namespace ncrot
