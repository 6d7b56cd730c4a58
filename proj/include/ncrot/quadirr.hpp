#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "ncrot/intmat.hpp"

namespace ncrot {

using Rational = mpq_class;

/// Element rational + coeff*sqrt(d) of the real quadratic field Q(sqrt d).
/// `d` is squarefree and >= 2; when `coeff` is zero the value is rational and
/// `d` only records which field the number was produced in.
class QuadNumber {
public:
    QuadNumber() : rational_(0), coeff_(0), radicand_(2) {}
    /// Canonicalizing constructor for (p + q*sqrt(d)) / r. Square factors of
    /// d move into q; a perfect-square d folds into the rational part.
    /// Throws ZeroDenominator for r == 0; d must be >= 1.
    QuadNumber(const Int& p, const Int& q, const Int& r, const Int& d);

    static QuadNumber rational(const Rational& value, const Int& d = 2);

    const Rational& rational_part() const { return rational_; }
    const Rational& sqrt_coeff() const { return coeff_; }
    const Int& radicand() const { return radicand_; }

    /// Canonical integer triple (p, q, r): value = (p + q*sqrt(d))/r,
    /// r > 0 and gcd(p, q, r) = 1.
    Int p() const;
    Int q() const;
    Int r() const;

    bool is_rational() const { return coeff_ == 0; }
    bool is_integer() const { return coeff_ == 0 && rational_.get_den() == 1; }

    /// Exact sign: -1, 0 or +1.
    int sign() const;
    /// Exact floor.
    Int floor() const;
    long double to_long_double() const;
    double to_double() const { return static_cast<double>(to_long_double()); }

    QuadNumber conjugate() const;

    friend QuadNumber operator+(const QuadNumber& x, const QuadNumber& y);
    friend QuadNumber operator-(const QuadNumber& x, const QuadNumber& y);
    friend QuadNumber operator*(const QuadNumber& x, const QuadNumber& y);
    friend QuadNumber operator/(const QuadNumber& x, const QuadNumber& y);
    friend QuadNumber operator-(const QuadNumber& x);

    /// Structural equality; numbers in different fields compare equal only
    /// when both are rational and equal.
    friend bool operator==(const QuadNumber& x, const QuadNumber& y);

private:
    QuadNumber(Rational a, Rational b, Int d);
    void fold_radicand();

    Rational rational_;
    Rational coeff_;
    Int radicand_;
};

/// Irrational element of a real quadratic field: a QuadNumber whose
/// sqrt coefficient is nonzero.
class QuadIrr {
public:
    /// Throws RationalValue when the value is rational.
    explicit QuadIrr(QuadNumber value);

    const QuadNumber& value() const { return value_; }
    operator const QuadNumber&() const { return value_; }

    Int p() const { return value_.p(); }
    Int q() const { return value_.q(); }
    Int r() const { return value_.r(); }
    const Int& d() const { return value_.radicand(); }

    double to_double() const { return value_.to_double(); }

    friend bool operator==(const QuadIrr& x, const QuadIrr& y) { return x.value_ == y.value_; }

private:
    QuadNumber value_;
};

/// (p + q*sqrt(d))/r in canonical form. Throws ZeroDenominator for r == 0 and
/// RationalValue for q == 0 or a perfect-square d.
QuadIrr canonicalize(const Int& p, const Int& q, const Int& r, const Int& d);

/// (a*theta + b)/(c*theta + d) for |det M| = 1. Throws NotUnimodular.
QuadIrr mobius_apply(const IntMatrix2& m, const QuadIrr& theta);

/// 1/theta.
QuadIrr reciprocal(const QuadIrr& theta);

/// Eventually periodic simple continued fraction [pre; (period)].
struct ContinuedFraction {
    std::vector<Int> preperiod;
    std::vector<Int> period;

    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

ContinuedFraction continued_fraction(const QuadIrr& theta);

/// theta ~ theta' under GL2(Z) Mobius transformations (minimal periods are
/// cyclic shifts of each other).
bool gl2z_equivalent(const QuadIrr& theta, const QuadIrr& other);

/// theta - theta' in Z or theta + theta' in Z.
bool pm_mod_z_equivalent(const QuadIrr& theta, const QuadIrr& other);

/// Subgroup (1/k)(Z + theta Z) of R.
struct TraceGroup {
    Int k{1};
    QuadIrr theta;

    TraceGroup(Int k_, QuadIrr theta_);

    /// Exact membership x in (1/k)(Z + theta Z). On success writes the integer
    /// coordinates (u, v) with x = (u + v*theta)/k.
    bool contains(const QuadNumber& x, Int* u = nullptr, Int* v = nullptr) const;
};

/// Returns the positive scalar s = 1/(c*theta + d), replacing M by -M when
/// c*theta + d < 0, together with (1/k)(Z + theta' Z) for theta' = M.theta.
/// The returned group equals s * G as a subset of R.
std::pair<QuadNumber, TraceGroup> trace_group_rescale(const IntMatrix2& m, const TraceGroup& g);

bool trace_group_equal(const TraceGroup& g, const TraceGroup& h);

// Text / JSON. Text form: "(p+q*sqrt(d))/r", e.g. "(-1+1*sqrt(2))/1".
QuadIrr parse_theta(std::string_view text);
QuadIrr theta_from_json(const nlohmann::json& j);
std::string to_text(const QuadNumber& x);
inline std::string to_text(const QuadIrr& x) { return to_text(x.value()); }
nlohmann::json to_json(const QuadNumber& x);
inline nlohmann::json to_json(const QuadIrr& x) { return to_json(x.value()); }
nlohmann::json to_json(const ContinuedFraction& cf);
nlohmann::json to_json(const TraceGroup& g);

}  // namespace ncrot
