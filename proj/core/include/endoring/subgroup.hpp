#pragma once

#include <span>
#include <vector>

#include "endoring/pgroup.hpp"

namespace endoring {

/// A subgroup of a PGroup in canonical form.
///
/// The basis is a Howell-style echelon form over the mixed-modulus coordinate
/// rings: each stored row is a group element whose leading (pivot) coordinate
/// is an exact power p^v with 0 <= v < k_pivot, rows have strictly increasing
/// pivot columns, entries of earlier rows above a pivot are reduced below the
/// pivot value, and annihilator rows are folded in so that membership reduces
/// greedily left to right. The form is unique per subgroup, so equality of
/// subgroups is equality of the stored matrices.
class Subgroup {
public:
    /// Smallest subgroup containing gens, in canonical form.
    static Subgroup span(const PGroup& parent, std::span<const GroupElement> gens);
    static Subgroup span(const PGroup& parent, std::initializer_list<GroupElement> gens);
    static Subgroup zero(const PGroup& parent);
    static Subgroup full(const PGroup& parent);

    const PGroup& parent() const { return parent_; }

    /// Number of elements; subgroup orders always fit: they divide |A|, and
    /// enumeration-scale groups fit by construction. Returns nullopt when the
    /// ambient order itself overflows and the subgroup is just as large.
    std::optional<u64> order() const;

    bool contains(const GroupElement& a) const;
    bool is_zero() const { return rows_.empty(); }
    bool is_full() const;

    /// Canonical generators (the Howell basis rows) as group elements.
    std::vector<GroupElement> generators() const;

    /// All elements, in coefficient odometer order over the basis rows.
    std::vector<GroupElement> elements(const EnumLimits& limits = {}) const;

    /// Uniformly random element (independent coefficients per basis row).
    GroupElement random_member(Rng& rng) const;

    /// True iff every element of this subgroup lies in other.
    bool subset_of(const Subgroup& other) const;

    bool operator==(const Subgroup& o) const;
    bool operator!=(const Subgroup& o) const { return !(*this == o); }
    bool operator<(const Subgroup& o) const; // arbitrary total order for containers

    const std::vector<std::vector<u64>>& basis_rows() const { return rows_; }
    const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

private:
    Subgroup(PGroup parent, std::vector<std::vector<u64>> rows, std::vector<std::size_t> pivots)
        : parent_(std::move(parent)), rows_(std::move(rows)), pivots_(std::move(pivots)) {}

    PGroup parent_;
    std::vector<std::vector<u64>> rows_;
    std::vector<std::size_t> pivots_;
};

/// The socle chain member A[p^n] = {a : p^n a = 0}.
Subgroup socle(const PGroup& A, unsigned n);

/// Generators p^{max(0, k_i - n)} theta_i of A[p^n] (the nonzero ones).
std::vector<GroupElement> socle_generators(const PGroup& A, unsigned n);

/// The multiple subgroup p^n A.
Subgroup multiple_subgroup(const PGroup& A, unsigned n);

/// True iff S meets every nonzero cyclic subgroup of its parent nontrivially.
/// Decided by iterating over the cyclic subgroups generated by each nonzero
/// element (each is probed through its unique minimal subgroup), so the
/// parent order must be under the enumeration cap.
bool is_essential(const Subgroup& S, const EnumLimits& limits = {});

/// Intersection computed by enumerating the smaller operand.
Subgroup intersect(const Subgroup& S, const Subgroup& T, const EnumLimits& limits = {});

/// Every subgroup of A, found by closure: repeatedly extend known subgroups
/// by adjoining single elements. Requires |A| under the element cap.
std::vector<Subgroup> all_subgroups(const PGroup& A, const EnumLimits& limits = {});

} // namespace endoring
