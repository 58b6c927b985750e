#pragma once

#include <optional>
#include <span>
#include <vector>

#include "endoring/subgroup.hpp"

namespace endoring {

/// An endomorphism of a PGroup A as an r x r matrix of canonical residues.
///
/// Entry (i, j) is stored mod p^{k_i} and describes the Hom component
/// theta_j -> m[i][j] * theta_i. Well-definedness on a generator of order
/// p^{k_j} forces p^{k_i - k_j} | m[i][j] whenever k_i > k_j; construction
/// rejects matrices violating that constraint.
class Endo {
public:
    static Endo zero(const PGroup& A);
    static Endo identity(const PGroup& A);
    /// The scalar endomorphism a -> c*a.
    static Endo scalar(const PGroup& A, i64 c);
    /// Validates and canonicalizes an integer matrix (rows index targets).
    static Endo from_matrix(const PGroup& A, const std::vector<std::vector<i64>>& m);
    /// Internal fast path: entries already canonical and constraint-clean.
    static Endo from_entries_unchecked(const PGroup& A, std::vector<u64> entries);

    const PGroup& parent() const { return parent_; }
    std::size_t rank() const { return parent_.rank(); }
    u64 entry(std::size_t i, std::size_t j) const { return m_[i * rank() + j]; }
    const std::vector<u64>& entries() const { return m_; }

    GroupElement apply(const GroupElement& a) const;
    GroupElement operator()(const GroupElement& a) const { return apply(a); }

    bool is_zero() const;
    bool is_identity() const;

    Endo operator+(const Endo& o) const;
    Endo operator-(const Endo& o) const;
    Endo operator-() const;
    /// Composition f*g applies g first; it is the matrix product.
    Endo operator*(const Endo& o) const;
    bool operator==(const Endo& o) const;
    bool operator!=(const Endo& o) const { return !(*this == o); }
    bool operator<(const Endo& o) const { return m_ < o.m_; }

    Endo pow(unsigned n) const;

private:
    Endo(PGroup parent, std::vector<u64> m) : parent_(std::move(parent)), m_(std::move(m)) {}
    PGroup parent_;
    std::vector<u64> m_;
};

Endo compose(const Endo& f, const Endo& g);

/// The paper-style elementary radical generator for k_i < k_j: sends theta_i
/// to p^{k_j - k_i} theta_j and every other generator to 0.
Endo alpha_mn(const PGroup& A, std::size_t i, std::size_t j);

/// Idempotent fixing the listed summands and killing the rest.
Endo projection(const PGroup& A, std::span<const std::size_t> indices);
Endo projection(const PGroup& A, std::initializer_list<std::size_t> indices);

/// Corner embedding of End(B) into End(A): f acts on the summands selected
/// by position (an injective map from B's summands onto equal-exponent
/// summands of A) and kills everything else. Equals e * End(A) * e for the
/// matching projection e.
Endo psi_embed(const Endo& f, const PGroup& A, std::span<const std::size_t> position);
Endo psi_embed(const Endo& f, const PGroup& A, std::initializer_list<std::size_t> position);

/// Kernel {a : f(a) = 0} in canonical form. Computed by chain-ring
/// elimination on the relation matrix lifted to Z/p^K, K the top exponent;
/// no enumeration involved.
Subgroup kernel(const Endo& f);

/// Image of f: the span of {f(theta_i)}.
Subgroup image(const Endo& f);

/// True iff kernel(f) = 0; on a finite group that is the same as bijective.
bool is_invertible(const Endo& f);

/// Surjectivity mod p: determinant of the reduced matrix is a unit in F_p.
/// Agrees with is_invertible on every endomorphism (tested exhaustively);
/// used where the kernel computation would dominate an inner loop.
bool is_unit_mod_p(const Endo& f);

/// Exact inverse when it exists, via a mod-p inverse lifted by Newton steps.
std::optional<Endo> inverse(const Endo& f);

/// |End A| = prod p^{min(k_i, k_j)} when it fits in 64 bits.
std::optional<u64> endo_ring_order(const PGroup& A);

/// Cardinality bookkeeping for enumeration guards.
struct EndoRingCard {
    PGroup parent;
    std::optional<u64> order;
};
EndoRingCard endo_ring_card(const PGroup& A);

/// All endomorphisms exactly once, in odometer order over Hom components.
/// Refuses when |End A| exceeds the endo cap.
std::vector<Endo> enumerate_endos(const PGroup& A, const EnumLimits& limits = {});

/// Uniformly random endomorphism (every valid matrix equally likely).
Endo random_endo(const PGroup& A, Rng& rng);

/// Uniformly random element of A.
GroupElement random_element(const PGroup& A, Rng& rng);

} // namespace endoring
