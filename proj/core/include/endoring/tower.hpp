#pragma once

#include <string>
#include <vector>

#include "endoring/radical.hpp"

namespace endoring {

/// A finite-stage tower A_N = Z(p^{k_0}) + ... + Z(p^{k_N}). The exponent
/// sequence comes from an explicit list or a linear rule; the divergence
/// experiment needs it strictly increasing, but bounded control sequences
/// are representable and flagged instead of rejected.
struct TowerSpec {
    u64 p = 2;
    std::vector<unsigned> exponents; // k_0 .. k_stages, materialized
    unsigned stages = 0;             // maximum N
    std::string ks_spec;             // original list / rule text

    bool strictly_increasing() const;
};

/// Parses `ks` as either a comma list "1,3,7" or a rule "rule:i+b" (k_i = i+b)
/// and materializes exponents k_0..k_stages.
TowerSpec make_tower(u64 p, const std::string& ks, unsigned stages);

/// The stage-N group with exponents (k_0, ..., k_N).
PGroup build_stage(const TowerSpec& T, unsigned N);

/// gamma_0..gamma_{N-1}: gamma_i embeds the two-summand radical generator of
/// the adjacent pair (i, i+1) into the stage group. Each gamma_i lies in J.
std::vector<Endo> gamma_family(const TowerSpec& T, unsigned N);

/// beta_N = gamma_0 + ... + gamma_{N-1}: the weighted subdiagonal matrix.
Endo partial_sum(const TowerSpec& T, unsigned N);

struct StageReport {
    unsigned stage = 0;
    bool radical_member = false;
    unsigned nilpotency = 0; // least t with beta^t = 0
    u64 support = 0;         // nonzero coordinates of beta'(theta-hat)
    std::vector<u64> coordinates;
};

/// Solves beta + beta' + beta beta' = 0 and traces beta' on the embedded
/// generator theta-hat = (theta, 0, ..., 0).
StageReport quasi_inverse_trace(const TowerSpec& T, unsigned N);

/// The coset representative of f in End A / T(A[p^n]): its action on the
/// socle generators. Two endomorphisms share a table iff their difference
/// kills A[p^n].
struct RestrictionTable {
    std::vector<GroupElement> socle_gens;
    std::vector<GroupElement> images;
    bool operator==(const RestrictionTable& o) const {
        return socle_gens == o.socle_gens && images == o.images;
    }
};
RestrictionTable stage_restriction(const Endo& f, unsigned n);

struct DivergenceReport {
    bool bounded_regime = false;  // exponent sequence not strictly increasing
    bool support_law_holds = true; // support(N) == N at every stage
    std::vector<StageReport> stages;
};

/// Runs quasi_inverse_trace for N = 1..stages and checks the support law.
DivergenceReport divergence_report(const TowerSpec& T);

} // namespace endoring
