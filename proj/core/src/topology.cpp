#include "endoring/topology.hpp"

#include <algorithm>
#include <set>

namespace endoring {

NeighborhoodIdeal NeighborhoodIdeal::finite_set(const PGroup& A, std::vector<GroupElement> K) {
    for (const auto& a : K)
        if (a.parent() != A) throw ParentMismatch();
    NeighborhoodIdeal n(A, Kind::FiniteSet);
    n.set_ = std::move(K);
    return n;
}

NeighborhoodIdeal NeighborhoodIdeal::socle_nbhd(const PGroup& A, unsigned level) {
    NeighborhoodIdeal n(A, Kind::Socle);
    n.level_ = level;
    n.set_ = socle_generators(A, level);
    return n;
}

NeighborhoodIdeal NeighborhoodIdeal::ann_right(Endo e) {
    NeighborhoodIdeal n(e.parent(), Kind::AnnRight);
    n.endo_ = std::move(e);
    return n;
}

NeighborhoodIdeal NeighborhoodIdeal::functorial_p(Subgroup V) {
    NeighborhoodIdeal n(V.parent(), Kind::FunctorialP);
    n.subgroup_ = std::move(V);
    return n;
}

bool NeighborhoodIdeal::contains(const Endo& x) const {
    if (x.parent() != parent_) throw ParentMismatch();
    switch (kind_) {
    case Kind::FiniteSet:
    case Kind::Socle:
        // A socle neighborhood kills A[p^n] iff it kills its generators.
        return std::all_of(set_.begin(), set_.end(),
                           [&](const GroupElement& a) { return x.apply(a).is_zero(); });
    case Kind::AnnRight:
        return (*endo_ * x).is_zero();
    case Kind::FunctorialP:
        for (std::size_t j = 0; j < parent_.rank(); ++j)
            if (!subgroup_->contains(x.apply(parent_.generator(j)))) return false;
        return true;
    }
    return false;
}

std::string NeighborhoodIdeal::describe() const {
    switch (kind_) {
    case Kind::FiniteSet: return "T(K), |K|=" + std::to_string(set_.size());
    case Kind::Socle: return "T(A[p^" + std::to_string(*level_) + "])";
    case Kind::AnnRight: return "Ann_r(e)";
    case Kind::FunctorialP: return "P(V)";
    }
    return "?";
}

const std::vector<GroupElement>& NeighborhoodIdeal::finite_set_elements() const { return set_; }
unsigned NeighborhoodIdeal::socle_level() const { return *level_; }
const Endo& NeighborhoodIdeal::ann_endo() const { return *endo_; }
const Subgroup& NeighborhoodIdeal::pv_subgroup() const { return *subgroup_; }

ContainmentResult decide_containment(const NeighborhoodIdeal& inner,
                                     const NeighborhoodIdeal& outer, const EnumLimits& limits,
                                     u64 seed, u64 samples) {
    if (inner.parent() != outer.parent()) throw ParentMismatch();
    const PGroup& A = inner.parent();
    auto n = endo_ring_order(A);
    ContainmentResult res{ContainmentResult::Verdict::Contained, std::nullopt, 0};
    if (n && *n <= limits.max_endos) {
        for (const auto& x : enumerate_endos(A, limits)) {
            ++res.samples_checked;
            if (inner.contains(x) && !outer.contains(x)) {
                res.verdict = ContainmentResult::Verdict::NotContained;
                res.witness = x;
                return res;
            }
        }
        return res;
    }
    Rng rng(seed);
    for (u64 s = 0; s < samples; ++s) {
        Endo x = random_endo(A, rng);
        ++res.samples_checked;
        if (inner.contains(x) && !outer.contains(x)) {
            res.verdict = ContainmentResult::Verdict::NotContained;
            res.witness = x;
            return res;
        }
    }
    res.verdict = ContainmentResult::Verdict::ProbablyContained;
    return res;
}

bool socle_intersection_identity(const PGroup& A, unsigned n, const EnumLimits& limits) {
    auto socle_elems = socle(A, n).elements(limits);
    auto nbhd = NeighborhoodIdeal::socle_nbhd(A, n);
    for (const auto& x : enumerate_endos(A, limits)) {
        bool kills_socle = nbhd.contains(x);
        bool kills_every = std::all_of(socle_elems.begin(), socle_elems.end(),
                                       [&](const GroupElement& a) { return x.apply(a).is_zero(); });
        if (kills_socle != kills_every) return false;
    }
    return true;
}

unsigned liebert_refines_finite(const PGroup& A, std::span<const GroupElement> K,
                                const EnumLimits& limits) {
    unsigned n = 0;
    for (const auto& a : K) {
        if (a.parent() != A) throw ParentMismatch();
        n = std::max(n, a.order_exponent());
    }
    Subgroup socle_n = socle(A, n);
    for (const auto& a : K)
        if (!socle_n.contains(a)) throw Error("internal: K escapes A[p^n] at its own order");
    auto socle_nb = NeighborhoodIdeal::socle_nbhd(A, n);
    for (const auto& x : enumerate_endos(A, limits)) {
        if (!socle_nb.contains(x)) continue;
        for (const auto& a : K)
            if (!x.apply(a).is_zero())
                throw Error("internal: T(A[p^n]) escaped T(K) despite K <= A[p^n]");
    }
    return n;
}

SummabilityResult is_summable(const SummableFamily& F) {
    Endo sum = Endo::zero(F.parent);
    for (const auto& x : F.members) {
        if (x.parent() != F.parent) throw ParentMismatch();
        sum = sum + x;
    }
    return SummabilityResult{true, sum};
}

std::vector<std::size_t> family_support(const SummableFamily& F, const GroupElement& a) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < F.members.size(); ++i)
        if (!F.members[i].apply(a).is_zero()) idx.push_back(i);
    return idx;
}

namespace {

void require_elementary(const PGroup& A) {
    if (!A.is_elementary()) throw NotElementary();
}

std::size_t coordinate_functional(const GroupElement& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.coord(i) != 0) return i;
    throw ZeroElement();
}

/// x -> lambda_i(x) * w as a matrix: column i equals w.
Endo rank_one(const PGroup& A, std::size_t i, const GroupElement& w) {
    std::vector<u64> m(A.rank() * A.rank(), 0);
    for (std::size_t s = 0; s < A.rank(); ++s) m[s * A.rank() + i] = w.coord(s);
    return Endo::from_entries_unchecked(A, std::move(m));
}

} // namespace

std::optional<Endo> witness_nonadmissible_annr(const PGroup& A, const Endo& e,
                                               const GroupElement& a) {
    require_elementary(A);
    if (e.parent() != A || a.parent() != A) throw ParentMismatch();
    if (!(e * e == e)) throw NotIdempotent();
    if (a.is_zero()) throw ZeroElement();
    Subgroup ker = kernel(e);
    if (ker.is_zero()) return std::nullopt; // e is the identity
    GroupElement w = ker.generators().front();
    std::size_t i = coordinate_functional(a);
    Endo alpha = rank_one(A, i, w);
    if (!(e * alpha).is_zero() || alpha.apply(a).is_zero())
        throw Error("internal: annr witness failed to verify");
    return alpha;
}

Endo witness_nonadmissible_pv(const PGroup& A, const Subgroup& V, const GroupElement& a) {
    require_elementary(A);
    if (V.parent() != A || a.parent() != A) throw ParentMismatch();
    if (V.is_zero()) throw ZeroSubgroup();
    if (a.is_zero()) throw ZeroElement();
    GroupElement v = V.generators().front();
    std::size_t i = coordinate_functional(a);
    Endo alpha = rank_one(A, i, v);
    if (!image(alpha).subset_of(V) || alpha.apply(a).is_zero())
        throw Error("internal: pv witness failed to verify");
    return alpha;
}

namespace {

bool in_pv(const Subgroup& V, const Endo& x) {
    for (std::size_t j = 0; j < x.rank(); ++j)
        if (!V.contains(x.apply(x.parent().generator(j)))) return false;
    return true;
}

/// Random member of P(V): each column is a random element of V whose order
/// divides the source summand's order.
Endo random_pv_member(const PGroup& A, const Subgroup& V, Rng& rng) {
    const std::size_t r = A.rank();
    std::vector<u64> m(r * r, 0);
    for (std::size_t j = 0; j < r; ++j) {
        for (int attempt = 0; attempt < 32; ++attempt) {
            GroupElement v = V.random_member(rng);
            if (v.order_exponent() <= A.exponent(j)) {
                for (std::size_t s = 0; s < r; ++s) m[s * r + j] = v.coord(s);
                break;
            }
        }
    }
    return Endo::from_entries_unchecked(A, std::move(m));
}

Subgroup random_subgroup(const PGroup& A, Rng& rng) {
    std::vector<GroupElement> gens;
    std::size_t count = 1 + rng.below(A.rank());
    for (std::size_t t = 0; t < count; ++t) gens.push_back(random_element(A, rng));
    return Subgroup::span(A, gens);
}

} // namespace

bool pv_right_ideal_check(const PGroup& A, const Subgroup& V, u64 samples, u64 seed,
                          const EnumLimits& limits) {
    if (V.parent() != A) throw ParentMismatch();
    Rng rng(seed);
    for (u64 s = 0; s < samples; ++s) {
        Endo alpha = random_pv_member(A, V, rng);
        Endo beta = random_endo(A, rng);
        if (!in_pv(V, alpha)) return false;
        if (!in_pv(V, alpha * beta)) return false; // right semigroup ideal law
    }
    // Monotonicity: V <= V2 gives P(V) <= P(V2).
    for (u64 s = 0; s < samples / 4 + 1; ++s) {
        auto big_gens = V.generators();
        big_gens.push_back(random_element(A, rng));
        Subgroup V2 = Subgroup::span(A, big_gens);
        Endo alpha = random_pv_member(A, V, rng);
        if (!in_pv(V2, alpha)) return false;
    }
    // P(V3) <= P(V1) * intersection * P(V2) for sampled V3 <= V1 cap V2.
    for (u64 s = 0; s < samples / 4 + 1; ++s) {
        Subgroup V1 = random_subgroup(A, rng);
        Subgroup V2 = random_subgroup(A, rng);
        Subgroup V3 = intersect(V1, V2, limits);
        Endo alpha = random_pv_member(A, V3, rng);
        if (!in_pv(V1, alpha) || !in_pv(V2, alpha)) return false;
    }
    return true;
}

bool annl_identity_check(const PGroup& A, const Endo& e, const EnumLimits& limits) {
    if (e.parent() != A) throw ParentMismatch();
    if (!(e * e == e)) throw NotIdempotent();
    std::set<std::vector<u64>> annihilator, residuals;
    for (const auto& x : enumerate_endos(A, limits)) {
        if ((x * e).is_zero()) annihilator.insert(x.entries());
        residuals.insert((x - x * e).entries());
    }
    return annihilator == residuals;
}

bool hausdorff_pv_intersection(const PGroup& A, const EnumLimits& limits) {
    std::vector<Subgroup> cyclic;
    for (const auto& a : A.elements(limits)) cyclic.push_back(Subgroup::span(A, {a}));
    for (const auto& x : enumerate_endos(A, limits)) {
        bool in_all = std::all_of(cyclic.begin(), cyclic.end(),
                                  [&](const Subgroup& cyc) { return in_pv(cyc, x); });
        if (in_all && !x.is_zero()) return false;
    }
    return true;
}

} // namespace endoring
