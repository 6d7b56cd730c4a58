#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ncrot/intmat.hpp"
#include "ncrot/quadirr.hpp"

namespace ncrot {

struct AngleCondition {
    std::string relation_name;  // "pm_mod_Z" or "GL2Z_orbit"
    bool holds = false;
};

struct MatrixCondition {
    std::array<Int, 2> lhs_invariant_factors{};
    std::array<Int, 2> rhs_invariant_factors{};
    bool holds = false;
};

struct OrderCondition {
    int lhs_order = 0;
    int rhs_order = 0;
    bool holds = false;
};

/// Outcome of a decision procedure. Both conditions are always evaluated.
/// Z-actions fill `matrix_condition`, Z_k actions fill `order_condition`.
struct DecisionReport {
    bool equivalent = false;
    AngleCondition angle_condition;
    std::optional<MatrixCondition> matrix_condition;
    std::optional<OrderCondition> order_condition;
    std::vector<std::string> narrative;
};

/// A_theta x|_A Z ~= A_theta' x|_B Z. Errors: NotSL2, FiniteOrderMatrix.
DecisionReport decide_isomorphism(const QuadIrr& theta, const IntMatrix2& a, const QuadIrr& theta2,
                                  const IntMatrix2& b);

/// Morita equivalence of A_theta x|_A Z and A_theta' x|_B Z.
DecisionReport decide_morita_integer(const QuadIrr& theta, const IntMatrix2& a, const QuadIrr& theta2,
                                     const IntMatrix2& b);

/// A_theta x| Z_k ~= A_theta' x| Z_k'. Errors: UnsupportedOrder.
DecisionReport decide_isomorphism_finite(const QuadIrr& theta, int k, const QuadIrr& theta2, int k2);

DecisionReport decide_morita_finite(const QuadIrr& theta, int k, const QuadIrr& theta2, int k2);

/// (1/theta, T A T): a crossed product Morita equivalent to A_theta x|_A Z.
std::pair<QuadIrr, IntMatrix2> reciprocal_witness(const QuadIrr& theta, const IntMatrix2& a);

nlohmann::json to_json(const DecisionReport& report);

}  // namespace ncrot
