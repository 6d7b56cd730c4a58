#include "ncrot/kinv.hpp"

#include <stdexcept>

#include "ncrot/error.hpp"

namespace ncrot {

namespace {

KGroup group_from_factors(unsigned base_rank, const std::array<Int, 2>& factors) {
    KGroup g;
    g.free_rank = base_rank;
    for (const Int& h : factors) {
        if (h == 0) {
            ++g.free_rank;
        } else if (h != 1) {
            g.torsion.push_back(h);
        }
    }
    return g;
}

std::string row_as_combination(const Int& x, const Int& y) {
    return "(" + x.get_str() + ")[U1]_1 + (" + y.get_str() + ")[U2]_1";
}

}  // namespace

QuadNumber theta_hat(const QuadIrr& theta) {
    return theta.value() - QuadNumber::rational(Rational(theta.value().floor()), theta.d());
}

std::pair<IntMatrix2, Int> unipotent_normal_form(const IntMatrix2& a) {
    if (det(a) != 1 || trace(a) != 2 || a == IntMatrix2::identity()) {
        throw std::invalid_argument("unipotent_normal_form needs a trace-2 element of SL2(Z) other than I");
    }
    // A - I is nilpotent of rank one; any nonzero kernel vector is fixed by A.
    Int v1 = -a.b;
    Int v2 = a.a - 1;
    if (v1 == 0 && v2 == 0) {
        v1 = a.d - 1;
        v2 = -a.c;
    }
    const Int g = gcd(v1, v2);
    v1 /= g;
    v2 /= g;
    Int one, s, t;
    mpz_gcdext(one.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), v1.get_mpz_t(), v2.get_mpz_t());
    // Columns (v, w) with det = v1*s + v2*t = 1.
    const IntMatrix2 q_inv{v1, -t, v2, s};
    const IntMatrix2 q = inverse_sl2(q_inv);
    const IntMatrix2 normal = q * a * q_inv;
    if (normal.a != 1 || normal.c != 0 || normal.d != 1) {
        throw std::logic_error("unipotent normal form failed for (" + to_text(a) + ")");
    }
    return {q, normal.b};
}

Int class_order_in_cokernel(const SmithDecomposition& snf, const Int& x, const Int& y) {
    const IntMatrix2& q = snf.right;
    const std::array<Int, 2> w{x * q.a + y * q.c, x * q.b + y * q.d};
    Int order = 1;
    for (int i = 0; i < 2; ++i) {
        const Int& h = snf.invariant_factors[static_cast<std::size_t>(i)];
        if (h == 0) {
            if (w[static_cast<std::size_t>(i)] != 0) return 0;
            continue;
        }
        const Int part = h / gcd(h, w[static_cast<std::size_t>(i)]);
        order = lcm(order, part);
    }
    return order;
}

StructureFlags structure_flags(const QuadIrr& /*theta*/, const IntMatrix2& a) {
    require_infinite_order_sl2(a);
    const Int tr = trace(a);
    StructureFlags flags;
    flags.is_AF = false;
    flags.is_AH_rr0_no_dim_growth = true;
    flags.is_AT = tr == 3 || (tr == 2 && gcd_of_entries(one_minus_inverse(a)) == 1);
    flags.iso_to_rotation_algebra = tr == 3;
    return flags;
}

std::vector<GeneratorDescriptor> describe_generators(const QuadIrr& theta, const IntMatrix2& a) {
    require_infinite_order_sl2(a);
    const Int& rad = theta.d();
    const SmithDecomposition snf = smith_normal_form(one_minus_inverse(a));
    const IntMatrix2 change = inverse_gl2(snf.left) * inverse_gl2(snf.right);

    std::vector<GeneratorDescriptor> out;
    out.push_back({"[1]_0", KDegree::K0, QuadNumber::rational(Rational(1), rad), "class of the unit", std::nullopt});
    out.push_back({"i_*[p_theta]_0", KDegree::K0, theta_hat(theta),
                   "image of the Rieffel projection p_theta of A_theta, tau(p_theta) = theta - floor(theta)",
                   std::nullopt});
    if (trace(a) == 2) {
        const auto [q, h] = unipotent_normal_form(a);
        out.push_back({"[P_A]_0", KDegree::K0, QuadNumber::rational(Rational(1), rad),
                       "image of P_{U_1,w} under the isomorphism induced by Q = (" + to_text(q) +
                           "), Q A Q^{-1} = (1 " + h.get_str() +
                           "; 0 1); P(y,z) = conj(y) X1(t)^* + X0(t) + X1(t) y evaluated at y = U_1, z = w",
                       std::nullopt});
    }

    out.push_back({"[w*]_1", KDegree::K1, std::nullopt,
                   "adjoint of the implementing unitary w; the index map sends it to [1]_0", Int(0)});
    out.push_back({"[y_theta]_1", KDegree::K1, std::nullopt,
                   "y_theta = s*_theta w* + (1 - p_theta); the index map sends it to [p_theta]_0", Int(0)});
    out.push_back({"[U1'']_1", KDegree::K1, std::nullopt,
                   "i_* of " + row_as_combination(change.a, change.b) + ", first row of P^{-1}Q^{-1}",
                   class_order_in_cokernel(snf, change.a, change.b)});
    out.push_back({"[U2'']_1", KDegree::K1, std::nullopt,
                   "i_* of " + row_as_combination(change.c, change.d) + ", second row of P^{-1}Q^{-1}",
                   class_order_in_cokernel(snf, change.c, change.d)});
    return out;
}

KInvariant k_invariants_integer_action(const QuadIrr& theta, const IntMatrix2& a) {
    require_infinite_order_sl2(a);
    const SmithDecomposition snf = smith_normal_form(one_minus_inverse(a));

    KInvariant inv(KGroup{}, group_from_factors(2, snf.invariant_factors), TraceGroup(1, theta));
    // K0 = K0(A_theta) + ker(I - A^{-1}); the kernel has rank = number of zero factors.
    inv.k0.free_rank = inv.k1.free_rank;
    inv.invariant_factors = snf.invariant_factors;
    inv.k1_generator_change_of_basis = inverse_gl2(snf.left) * inverse_gl2(snf.right);
    inv.flags = structure_flags(theta, a);
    if (trace(a) == 2) inv.unipotent_conjugator = unipotent_normal_form(a).first;

    for (auto& g : describe_generators(theta, a)) {
        (g.degree == KDegree::K0 ? inv.k0_generators : inv.k1_generators).push_back(std::move(g));
    }
    return inv;
}

KInvariant k_invariants_finite_action(const QuadIrr& theta, int k) {
    unsigned rank = 0;
    switch (k) {
        case 2: rank = 6; break;
        case 3: rank = 8; break;
        case 4: rank = 9; break;
        case 6: rank = 10; break;
        default:
            throw Error(ErrorKind::UnsupportedOrder,
                        "Z_" + std::to_string(k) + " is not a finite subgroup of SL2(Z); use k in {2,3,4,6}");
    }
    KInvariant inv(KGroup{rank, {}}, KGroup{0, {}}, TraceGroup(k, theta));
    inv.flags.is_AF = true;
    inv.flags.is_AT = true;
    inv.flags.is_AH_rr0_no_dim_growth = true;
    inv.flags.iso_to_rotation_algebra = false;
    return inv;
}

bool same_invariant_data(const KInvariant& x, const KInvariant& y) {
    return x.k0 == y.k0 && x.k1 == y.k1 && trace_group_equal(x.trace_image, y.trace_image) &&
           x.flags == y.flags;
}

nlohmann::json to_json(const KGroup& g) {
    nlohmann::json torsion = nlohmann::json::array();
    for (const auto& h : g.torsion) torsion.push_back(int_to_json(h));
    return {{"free_rank", g.free_rank}, {"torsion", torsion}};
}

nlohmann::json to_json(const KInvariant& inv) {
    nlohmann::json gens = nlohmann::json::array();
    auto emit = [&](const GeneratorDescriptor& g) {
        nlohmann::json j{{"label", g.label},
                         {"group", g.degree == KDegree::K0 ? "K0" : "K1"},
                         {"formula", g.formula_note}};
        if (g.trace_value) j["trace"] = to_text(*g.trace_value);
        if (g.order) j["order"] = int_to_json(*g.order);
        gens.push_back(std::move(j));
    };
    for (const auto& g : inv.k0_generators) emit(g);
    for (const auto& g : inv.k1_generators) emit(g);

    nlohmann::json out{
        {"k0", to_json(inv.k0)},
        {"k1", to_json(inv.k1)},
        {"trace_image", to_json(inv.trace_image)},
        {"generators", gens},
        {"k1_generator_change_of_basis", to_json(inv.k1_generator_change_of_basis)},
        {"invariant_factors", nlohmann::json::array({int_to_json(inv.invariant_factors[0]), int_to_json(inv.invariant_factors[1])})},
        {"flags",
         {{"is_AF", inv.flags.is_AF},
          {"is_AT", inv.flags.is_AT},
          {"is_AH_rr0_no_dim_growth", inv.flags.is_AH_rr0_no_dim_growth},
          {"iso_to_rotation_algebra", inv.flags.iso_to_rotation_algebra}}},
    };
    if (inv.unipotent_conjugator) out["unipotent_conjugator"] = to_json(*inv.unipotent_conjugator);
    return out;
}

}  // namespace ncrot
