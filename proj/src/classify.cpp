#include "ncrot/classify.hpp"

#include "ncrot/error.hpp"

namespace ncrot {

namespace {

std::string factors_text(const std::array<Int, 2>& h) {
    return "diag(" + h[0].get_str() + "," + h[1].get_str() + ")";
}

MatrixCondition compare_matrices(const IntMatrix2& a, const IntMatrix2& b) {
    require_infinite_order_sl2(a);
    require_infinite_order_sl2(b);
    MatrixCondition mc;
    mc.lhs_invariant_factors = smith_normal_form(one_minus_inverse(a)).invariant_factors;
    mc.rhs_invariant_factors = smith_normal_form(one_minus_inverse(b)).invariant_factors;
    mc.holds = mc.lhs_invariant_factors == mc.rhs_invariant_factors;
    return mc;
}

void require_finite_order(int k) {
    if (k != 2 && k != 3 && k != 4 && k != 6) {
        throw Error(ErrorKind::UnsupportedOrder,
                    "Z_" + std::to_string(k) + " is not a finite subgroup of SL2(Z); use k in {2,3,4,6}");
    }
}

AngleCondition pm_mod_z(const QuadIrr& x, const QuadIrr& y) {
    return {"pm_mod_Z", pm_mod_z_equivalent(x, y)};
}

AngleCondition mobius(const QuadIrr& x, const QuadIrr& y) {
    return {"GL2Z_orbit", gl2z_equivalent(x, y)};
}

std::string angle_line(const AngleCondition& ac, const QuadIrr& x, const QuadIrr& y) {
    const std::string rel = ac.relation_name == "pm_mod_Z" ? "theta = +-theta' (mod Z)"
                                                            : "theta ~Mob theta' (same GL2(Z) orbit)";
    return rel + (ac.holds ? " holds" : " fails") + " for theta = " + to_text(x) + ", theta' = " + to_text(y);
}

std::string matrix_line(const MatrixCondition& mc) {
    return "I - A^{-1} ~eq I - B^{-1}: Smith forms " + factors_text(mc.lhs_invariant_factors) + " vs " +
           factors_text(mc.rhs_invariant_factors) + (mc.holds ? ", equal" : ", different");
}

DecisionReport integer_report(const char* criterion, AngleCondition angle, const QuadIrr& theta,
                              const QuadIrr& theta2, const IntMatrix2& a, const IntMatrix2& b) {
    DecisionReport r;
    r.matrix_condition = compare_matrices(a, b);
    r.angle_condition = std::move(angle);
    r.equivalent = r.angle_condition.holds && r.matrix_condition->holds;
    r.narrative.push_back(std::string("criterion: ") + criterion);
    r.narrative.push_back(angle_line(r.angle_condition, theta, theta2));
    r.narrative.push_back(matrix_line(*r.matrix_condition));
    r.narrative.push_back(r.equivalent ? "both conditions hold: equivalent" : "a condition fails: not equivalent");
    return r;
}

DecisionReport finite_report(const char* criterion, AngleCondition angle, const QuadIrr& theta,
                             const QuadIrr& theta2, int k, int k2) {
    require_finite_order(k);
    require_finite_order(k2);
    DecisionReport r;
    r.angle_condition = std::move(angle);
    r.order_condition = OrderCondition{k, k2, k == k2};
    r.equivalent = r.angle_condition.holds && r.order_condition->holds;
    r.narrative.push_back(std::string("criterion: ") + criterion);
    r.narrative.push_back(angle_line(r.angle_condition, theta, theta2));
    r.narrative.push_back("k = k': " + std::to_string(k) + " vs " + std::to_string(k2) +
                          (k == k2 ? ", equal" : ", different (K0 ranks differ)"));
    r.narrative.push_back(r.equivalent ? "both conditions hold: equivalent" : "a condition fails: not equivalent");
    return r;
}

}  // namespace

DecisionReport decide_isomorphism(const QuadIrr& theta, const IntMatrix2& a, const QuadIrr& theta2,
                                  const IntMatrix2& b) {
    return integer_report(
        "isomorphism of Z-crossed products: theta = +-theta' (mod Z) and I - A^{-1} ~eq I - B^{-1} "
        "(Elliott invariants compared through trace image and K1)",
        pm_mod_z(theta, theta2), theta, theta2, a, b);
}

DecisionReport decide_morita_integer(const QuadIrr& theta, const IntMatrix2& a, const QuadIrr& theta2,
                                     const IntMatrix2& b) {
    return integer_report(
        "Morita equivalence of Z-crossed products: theta ~Mob theta' and I - A^{-1} ~eq I - B^{-1}",
        mobius(theta, theta2), theta, theta2, a, b);
}

DecisionReport decide_isomorphism_finite(const QuadIrr& theta, int k, const QuadIrr& theta2, int k2) {
    return finite_report("isomorphism of Z_k-crossed products: theta = +-theta' (mod Z) and k = k'",
                         pm_mod_z(theta, theta2), theta, theta2, k, k2);
}

DecisionReport decide_morita_finite(const QuadIrr& theta, int k, const QuadIrr& theta2, int k2) {
    return finite_report("Morita equivalence of Z_k-crossed products: theta ~Mob theta' and k = k'",
                         mobius(theta, theta2), theta, theta2, k, k2);
}

std::pair<QuadIrr, IntMatrix2> reciprocal_witness(const QuadIrr& theta, const IntMatrix2& a) {
    require_infinite_order_sl2(a);
    return {reciprocal(theta), conjugate_by_T(a)};
}

nlohmann::json to_json(const DecisionReport& report) {
    nlohmann::json j{
        {"equivalent", report.equivalent},
        {"angle_condition", {{"relation_name", report.angle_condition.relation_name},
                             {"holds", report.angle_condition.holds}}},
        {"narrative", report.narrative},
    };
    if (report.matrix_condition) {
        const auto& mc = *report.matrix_condition;
        j["matrix_condition"] = {
            {"lhs_invariant_factors", nlohmann::json::array({int_to_json(mc.lhs_invariant_factors[0]), int_to_json(mc.lhs_invariant_factors[1])})},
            {"rhs_invariant_factors", nlohmann::json::array({int_to_json(mc.rhs_invariant_factors[0]), int_to_json(mc.rhs_invariant_factors[1])})},
            {"holds", mc.holds}};
    }
    if (report.order_condition) {
        const auto& oc = *report.order_condition;
        j["order_condition"] = {{"lhs_order", oc.lhs_order}, {"rhs_order", oc.rhs_order}, {"holds", oc.holds}};
    }
    return j;
}

}  // namespace ncrot
