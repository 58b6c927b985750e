#pragma once

#include <optional>
#include <vector>

#include "endoring/endo.hpp"

namespace endoring {

/// Outcome of a quasi-regularity decision for x: when x is quasi-regular the
/// witness x' satisfies x + x' + x*x' = 0 exactly (re-checked on return).
struct QuasiInverseResult {
    bool exists = false;
    std::optional<Endo> witness;
};

/// Decides quasi-regularity. Nilpotent inputs use the alternating geometric
/// series x' = sum_{i=1}^{s-1} (-1)^i x^i; otherwise 1 + x is inverted
/// exactly when possible.
QuasiInverseResult quasi_inverse(const Endo& x);

/// Partition of the summands into Prüfer layers, one per distinct exponent,
/// in descending exponent order.
struct Layer {
    unsigned exponent;
    std::vector<std::size_t> indices;
};
struct LayerDecomposition {
    PGroup parent;
    std::vector<Layer> layers;
    std::size_t multiplicity(std::size_t layer) const { return layers[layer].indices.size(); }
};
LayerDecomposition layer_decomposition(const PGroup& A);

/// Layer criterion for membership in J(End A): every diagonal layer block of
/// x must vanish mod p. Validated against radical_oracle by the test battery
/// rather than assumed.
bool radical_membership(const Endo& x);

/// J(End A) by the definition: {x : y*x is quasi-regular for every y}, full
/// enumeration over End A. Independent of the layer criterion.
std::vector<Endo> radical_oracle(const PGroup& A, const EnumLimits& limits = {});

/// |J(End A)| from the layer criterion's counting law |End A| / p^{sum m_e^2}.
std::optional<u64> radical_order(const PGroup& A);

/// Least t with J^t = 0, computed over products of an ideal generating set
/// (p E_ij within layers plus the minimal cross-layer elementary homs).
/// Reports 1 when J = 0.
unsigned nilpotency_index(const PGroup& A);

/// One diagonal layer block of x reduced mod p; the blocks assemble the
/// semisimple quotient End A / J -> prod_e M_{m_e}(F_p).
struct LayerBlockModP {
    unsigned exponent;
    std::vector<std::size_t> indices;
    std::vector<u64> entries; // m_e x m_e row-major, mod p
    bool operator==(const LayerBlockModP&) const = default;
};
std::vector<LayerBlockModP> semisimple_quotient(const Endo& x);

/// Blockwise product mod p, for checking multiplicativity of the quotient.
LayerBlockModP block_product(const LayerBlockModP& a, const LayerBlockModP& b, u64 p);

/// For homogeneous A (the finite quasi-injective case): the set
/// {x : kernel(x) is essential}. Throws NotQuasiInjective when A has more
/// than one layer.
std::vector<Endo> large_kernel_radical(const PGroup& A, const EnumLimits& limits = {});

/// Checks the triangular inclusions for the split A = B + C after
/// split_after (B must carry strictly larger exponents): every product of a
/// C->B block with a B->C block lies in J(End B), and symmetrically.
/// Exhaustive when the block counts are under the cap, sampled otherwise.
bool block_inclusion_check(const PGroup& A, std::size_t split_after,
                           const EnumLimits& limits = {}, u64 samples = 256, u64 seed = 0);

/// The fixed validation battery: p = 2 with exponent patterns
/// (1),(2),(1,1),(1,2),(2,2),(1,1,2),(1,2,3) and p = 3 with (1),(1,1),(1,2).
std::vector<PGroup> default_oracle_battery();

} // namespace endoring
