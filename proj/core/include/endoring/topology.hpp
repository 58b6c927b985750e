#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "endoring/endo.hpp"

namespace endoring {

/// A neighborhood-of-zero descriptor on End A. Membership is decided
/// symbolically from the descriptor; element sets are never materialized
/// outside guarded oracles.
///
///   FiniteSet(K):   T(K)      = {x : x a = 0 for all a in K}, a left ideal.
///   Socle(n):       T(A[p^n]) = {x : x kills A[p^n]}, a two-sided ideal.
///   AnnRight(e):    Ann_r(e)  = {x : e x = 0}, a right ideal.
///   FunctorialP(V): P(V)      = {x : x(A) <= V}, a right semigroup ideal.
class NeighborhoodIdeal {
public:
    enum class Kind { FiniteSet, Socle, AnnRight, FunctorialP };

    static NeighborhoodIdeal finite_set(const PGroup& A, std::vector<GroupElement> K);
    static NeighborhoodIdeal socle_nbhd(const PGroup& A, unsigned n);
    static NeighborhoodIdeal ann_right(Endo e);
    static NeighborhoodIdeal functorial_p(Subgroup V);

    Kind kind() const { return kind_; }
    const PGroup& parent() const { return parent_; }
    bool contains(const Endo& x) const;
    std::string describe() const;

    const std::vector<GroupElement>& finite_set_elements() const;
    unsigned socle_level() const;
    const Endo& ann_endo() const;
    const Subgroup& pv_subgroup() const;

private:
    NeighborhoodIdeal(PGroup parent, Kind kind) : parent_(std::move(parent)), kind_(kind) {}
    PGroup parent_;
    Kind kind_;
    std::vector<GroupElement> set_;
    std::optional<unsigned> level_;
    std::optional<Endo> endo_;
    std::optional<Subgroup> subgroup_;
};

/// Is inner a subset of outer? Exhaustive witness search under the endo cap;
/// a seeded randomized search above it, where "no witness found" is only
/// "probably contained".
struct ContainmentResult {
    enum class Verdict { Contained, NotContained, ProbablyContained };
    Verdict verdict;
    std::optional<Endo> witness; // member of inner escaping outer
    u64 samples_checked = 0;
};
ContainmentResult decide_containment(const NeighborhoodIdeal& inner,
                                     const NeighborhoodIdeal& outer,
                                     const EnumLimits& limits = {}, u64 seed = 0,
                                     u64 samples = 4096);

/// Verifies T(A[p^n]) = intersection of T({a}) over a in A[p^n], by checking
/// every endomorphism. Returns true on success.
bool socle_intersection_identity(const PGroup& A, unsigned n, const EnumLimits& limits = {});

/// Least n with p^n K = 0, certifying Socle(n) <= T(K): K <= A[p^n] by
/// membership, and the containment exhaustively over End A.
unsigned liebert_refines_finite(const PGroup& A, std::span<const GroupElement> K,
                                const EnumLimits& limits = {});

/// A finite stage of an endomorphism family {x_i}.
struct SummableFamily {
    PGroup parent;
    std::vector<Endo> members;
};
struct SummabilityResult {
    bool summable; // always true at a finite stage
    Endo sum;
};
SummabilityResult is_summable(const SummableFamily& F);
/// The pointwise support {i : x_i(a) != 0}.
std::vector<std::size_t> family_support(const SummableFamily& F, const GroupElement& a);

/// For an elementary group and an idempotent e != 1: an endomorphism x with
/// e x = 0 and x(a) != 0, witnessing Ann_r(e) not contained in T({a}).
/// Returns nullopt when e is the identity. Construction: x: v -> lambda(v) w
/// with w in ker e and lambda a coordinate functional not vanishing on a.
std::optional<Endo> witness_nonadmissible_annr(const PGroup& A, const Endo& e,
                                               const GroupElement& a);

/// For an elementary group, V != 0, a != 0: an endomorphism x with
/// image(x) <= V and x(a) != 0, witnessing P(V) not contained in T({a}).
Endo witness_nonadmissible_pv(const PGroup& A, const Subgroup& V, const GroupElement& a);

/// Samples members of P(V) and arbitrary endomorphisms to confirm the right
/// semigroup ideal law and monotonicity of V -> P(V).
bool pv_right_ideal_check(const PGroup& A, const Subgroup& V, u64 samples = 64, u64 seed = 0,
                          const EnumLimits& limits = {});

/// {x : x e = 0} = {x - x e : x in End A}, checked exhaustively.
bool annl_identity_check(const PGroup& A, const Endo& e, const EnumLimits& limits = {});

/// The only endomorphism lying in P(<a>) for every a in A (including a = 0)
/// is zero; checked exhaustively.
bool hausdorff_pv_intersection(const PGroup& A, const EnumLimits& limits = {});

} // namespace endoring
