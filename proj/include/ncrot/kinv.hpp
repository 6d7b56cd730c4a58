#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ncrot/intmat.hpp"
#include "ncrot/quadirr.hpp"

namespace ncrot {

/// Finitely generated abelian group Z^free_rank + sum of Z_h over `torsion`.
struct KGroup {
    unsigned free_rank = 0;
    std::vector<Int> torsion;  // entries >= 2, each dividing the next

    friend bool operator==(const KGroup&, const KGroup&) = default;
};

enum class KDegree { K0, K1 };

/// Formal description of a K-theory generator. These are symbolic: the
/// underlying projections and unitaries are never constructed.
struct GeneratorDescriptor {
    std::string label;
    KDegree degree = KDegree::K0;
    std::optional<QuadNumber> trace_value;  // K0 only: u + v*theta_hat
    std::string formula_note;
    /// K1 only: order of the class in K1 (0 = infinite order).
    std::optional<Int> order;
};

struct StructureFlags {
    bool is_AF = false;
    bool is_AT = false;
    bool is_AH_rr0_no_dim_growth = true;
    bool iso_to_rotation_algebra = false;

    friend bool operator==(const StructureFlags&, const StructureFlags&) = default;
};

/// Elliott-invariant data of a crossed product A_theta x| Z or A_theta x| Z_k.
struct KInvariant {
    KInvariant(KGroup k0_, KGroup k1_, TraceGroup trace_image_)
        : k0(std::move(k0_)), k1(std::move(k1_)), trace_image(std::move(trace_image_)) {}

    KGroup k0;
    KGroup k1;
    TraceGroup trace_image;
    std::vector<GeneratorDescriptor> k0_generators;
    std::vector<GeneratorDescriptor> k1_generators;
    /// P^{-1} Q^{-1} from the Smith decomposition P (I - A^{-1}) Q = S.
    /// Identity for finite-group actions.
    IntMatrix2 k1_generator_change_of_basis = IntMatrix2::identity();
    StructureFlags flags;
    std::array<Int, 2> invariant_factors{};  // of I - A^{-1}; {0,0} for Z_k
    std::optional<IntMatrix2> unipotent_conjugator;  // Q with Q A Q^{-1} = (1 h; 0 1), trace-2 only
};

/// theta - floor(theta), the trace of the Rieffel projection class.
QuadNumber theta_hat(const QuadIrr& theta);

/// Errors: NotSL2, FiniteOrderMatrix.
KInvariant k_invariants_integer_action(const QuadIrr& theta, const IntMatrix2& a);

/// k in {2,3,4,6}; throws UnsupportedOrder otherwise.
KInvariant k_invariants_finite_action(const QuadIrr& theta, int k);

StructureFlags structure_flags(const QuadIrr& theta, const IntMatrix2& a);

/// K0 descriptors followed by K1 descriptors.
std::vector<GeneratorDescriptor> describe_generators(const QuadIrr& theta, const IntMatrix2& a);

/// For tr(A) = 2, A != I: Q in SL2(Z) with Q A Q^{-1} = (1 h; 0 1). Returns (Q, h).
std::pair<IntMatrix2, Int> unipotent_normal_form(const IntMatrix2& a);

/// Order of the class of the integer row vector (x, y) in Z^2 / rowspace(M),
/// computed from a Smith decomposition of M. 0 means infinite order.
Int class_order_in_cokernel(const SmithDecomposition& snf, const Int& x, const Int& y);

/// Compares the isomorphism-relevant parts (k0, k1, trace image, flags).
bool same_invariant_data(const KInvariant& x, const KInvariant& y);

nlohmann::json to_json(const KGroup& g);
nlohmann::json to_json(const KInvariant& inv);

}  // namespace ncrot
