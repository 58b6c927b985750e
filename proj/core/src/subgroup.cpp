#include "endoring/subgroup.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace endoring {

namespace {

// Row combination helpers over the mixed-modulus coordinate rings. Every
// entry of column j is kept canonical mod p^{k_j}; reductions are free
// because coordinates live in the group, not in a lift.

void combine_rows(const PGroup& A, std::vector<u64>& x, std::vector<u64>& y, std::size_t col) {
    // Replace (x, y) by (u*x + v*y, (a/g)*y - (b/g)*x) where a = x[col],
    // b = y[col] and u*a + v*b = g. The 2x2 coefficient matrix has det 1, so
    // the row span is unchanged; afterwards x[col] = g and y[col] = 0.
    i64 a = static_cast<i64>(x[col]);
    i64 b = static_cast<i64>(y[col]);
    auto [g, u, v] = xgcd(a, b);
    for (std::size_t j = 0; j < x.size(); ++j) {
        u64 m = A.modulus(j);
        i128 nx = static_cast<i128>(u) * static_cast<i128>(x[j]) +
                  static_cast<i128>(v) * static_cast<i128>(y[j]);
        i128 ny = static_cast<i128>(a / g) * static_cast<i128>(y[j]) -
                  static_cast<i128>(b / g) * static_cast<i128>(x[j]);
        x[j] = reduce_i128(nx, m);
        y[j] = reduce_i128(ny, m);
    }
    x[col] = static_cast<u64>(g) % A.modulus(col);
    y[col] = 0;
}

void scale_row(const PGroup& A, std::vector<u64>& row, u64 unit_mod_top) {
    for (std::size_t j = 0; j < row.size(); ++j)
        row[j] = mul_mod(unit_mod_top % A.modulus(j), row[j], A.modulus(j));
}

void subtract_multiple(const PGroup& A, std::vector<u64>& x, const std::vector<u64>& y, u64 q) {
    for (std::size_t j = 0; j < x.size(); ++j) {
        u64 m = A.modulus(j);
        x[j] = sub_mod(x[j], mul_mod(q % m, y[j], m), m);
    }
}

bool row_is_zero(const std::vector<u64>& row) {
    return std::all_of(row.begin(), row.end(), [](u64 c) { return c == 0; });
}

} // namespace

Subgroup Subgroup::span(const PGroup& parent, std::span<const GroupElement> gens) {
    const std::size_t r = parent.rank();
    const u64 p = parent.prime();
    std::vector<std::vector<u64>> work;
    for (const auto& g : gens) {
        if (g.parent() != parent) throw ParentMismatch();
        if (!g.is_zero()) work.push_back(g.coords());
    }

    std::vector<std::vector<u64>> result_rows;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < r; ++col) {
        // Fold all rows with a nonzero entry at col into one pivot candidate.
        std::size_t pivot_idx = work.size();
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (work[i][col] == 0) continue;
            if (pivot_idx == work.size()) {
                pivot_idx = i;
            } else {
                combine_rows(parent, work[pivot_idx], work[i], col);
            }
        }
        if (pivot_idx == work.size()) continue;
        std::vector<u64> pivot = std::move(work[pivot_idx]);
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(pivot_idx));

        unsigned k = parent.exponent(col);
        unsigned v = valuation(pivot[col], p, k);
        u64 unit = pivot[col] / pow_u64(p, v);
        if (unit != 1) scale_row(parent, pivot, inv_mod(unit, *pow_checked(p, parent.max_exponent())));
        pivot[col] = pow_u64(p, v); // exact by the scaling
        // Annihilator row: p^{k-v} * pivot zeroes the pivot entry but can
        // carry a nonzero tail into later columns of larger exponent.
        std::vector<u64> ann(r);
        u64 ann_scalar = pow_u64(p, k - v);
        for (std::size_t j = 0; j < r; ++j)
            ann[j] = mul_mod(ann_scalar % parent.modulus(j), pivot[j], parent.modulus(j));
        ann[col] = 0;
        if (!row_is_zero(ann)) work.push_back(std::move(ann));
        result_rows.push_back(std::move(pivot));
        pivots.push_back(col);
        std::erase_if(work, row_is_zero);
    }

    // Reduce entries of earlier rows above each pivot below the pivot value.
    for (std::size_t t = 0; t < result_rows.size(); ++t) {
        std::size_t col = pivots[t];
        u64 pv = result_rows[t][col];
        for (std::size_t s = 0; s < t; ++s) {
            u64 q = result_rows[s][col] / pv;
            if (q) subtract_multiple(parent, result_rows[s], result_rows[t], q);
        }
    }
    return Subgroup(parent, std::move(result_rows), std::move(pivots));
}

Subgroup Subgroup::span(const PGroup& parent, std::initializer_list<GroupElement> gens) {
    return span(parent, std::span<const GroupElement>(gens.begin(), gens.size()));
}

Subgroup Subgroup::zero(const PGroup& parent) {
    return span(parent, std::span<const GroupElement>{});
}

Subgroup Subgroup::full(const PGroup& parent) {
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < parent.rank(); ++i) gens.push_back(parent.generator(i));
    return span(parent, gens);
}

std::optional<u64> Subgroup::order() const {
    u128 n = 1;
    const u64 p = parent_.prime();
    for (std::size_t t = 0; t < rows_.size(); ++t) {
        unsigned k = parent_.exponent(pivots_[t]);
        unsigned v = valuation(rows_[t][pivots_[t]], p, k);
        for (unsigned i = v; i < k; ++i) {
            n *= p;
            if (n > ~static_cast<u64>(0)) return std::nullopt;
        }
    }
    return static_cast<u64>(n);
}

bool Subgroup::contains(const GroupElement& a) const {
    if (a.parent() != parent_) throw ParentMismatch();
    std::vector<u64> rem = a.coords();
    for (std::size_t t = 0; t < rows_.size(); ++t) {
        std::size_t col = pivots_[t];
        u64 pv = rows_[t][col];
        if (rem[col] % pv != 0) return false;
        u64 q = rem[col] / pv;
        if (q) subtract_multiple(parent_, rem, rows_[t], q);
    }
    return row_is_zero(rem);
}

bool Subgroup::is_full() const {
    if (rows_.size() != parent_.rank()) return false;
    for (std::size_t t = 0; t < rows_.size(); ++t)
        if (rows_[t][pivots_[t]] != 1) return false;
    return true;
}

std::vector<GroupElement> Subgroup::generators() const {
    std::vector<GroupElement> gens;
    gens.reserve(rows_.size());
    for (const auto& row : rows_) gens.push_back(GroupElement(parent_, row));
    return gens;
}

std::vector<GroupElement> Subgroup::elements(const EnumLimits& limits) const {
    auto n = order();
    if (!n || *n > limits.max_elements) throw GuardExceeded("|S|", limits.max_elements);
    const u64 p = parent_.prime();
    std::vector<u64> radix(rows_.size());
    for (std::size_t t = 0; t < rows_.size(); ++t) {
        unsigned k = parent_.exponent(pivots_[t]);
        unsigned v = valuation(rows_[t][pivots_[t]], p, k);
        radix[t] = pow_u64(p, k - v);
    }
    std::vector<GroupElement> out;
    out.reserve(*n);
    std::vector<u64> coef(rows_.size(), 0);
    while (true) {
        std::vector<u64> c(parent_.rank(), 0);
        for (std::size_t t = 0; t < rows_.size(); ++t) {
            if (coef[t] == 0) continue;
            for (std::size_t j = 0; j < c.size(); ++j) {
                u64 m = parent_.modulus(j);
                c[j] = add_mod(c[j], mul_mod(coef[t] % m, rows_[t][j], m), m);
            }
        }
        out.push_back(GroupElement(parent_, std::move(c)));
        std::size_t t = 0;
        for (; t < coef.size(); ++t) {
            if (++coef[t] < radix[t]) break;
            coef[t] = 0;
        }
        if (t == coef.size()) break;
    }
    return out;
}

GroupElement Subgroup::random_member(Rng& rng) const {
    const u64 p = parent_.prime();
    std::vector<u64> c(parent_.rank(), 0);
    for (std::size_t t = 0; t < rows_.size(); ++t) {
        unsigned k = parent_.exponent(pivots_[t]);
        unsigned v = valuation(rows_[t][pivots_[t]], p, k);
        u64 coef = rng.below(pow_u64(p, k - v));
        if (coef == 0) continue;
        for (std::size_t j = 0; j < c.size(); ++j) {
            u64 m = parent_.modulus(j);
            c[j] = add_mod(c[j], mul_mod(coef % m, rows_[t][j], m), m);
        }
    }
    return GroupElement(parent_, std::move(c));
}

bool Subgroup::subset_of(const Subgroup& other) const {
    if (parent_ != other.parent_) throw ParentMismatch();
    for (const auto& g : generators())
        if (!other.contains(g)) return false;
    return true;
}

bool Subgroup::operator==(const Subgroup& o) const {
    if (parent_ != o.parent_) throw ParentMismatch();
    return pivots_ == o.pivots_ && rows_ == o.rows_;
}

bool Subgroup::operator<(const Subgroup& o) const {
    if (pivots_ != o.pivots_) return pivots_ < o.pivots_;
    return rows_ < o.rows_;
}

Subgroup socle(const PGroup& A, unsigned n) {
    return Subgroup::span(A, socle_generators(A, n));
}

std::vector<GroupElement> socle_generators(const PGroup& A, unsigned n) {
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < A.rank(); ++i) {
        unsigned k = A.exponent(i);
        unsigned drop = k > n ? k - n : 0;
        if (drop == k) continue; // the zero generator
        std::vector<u64> c(A.rank(), 0);
        c[i] = pow_u64(A.prime(), drop);
        gens.push_back(GroupElement(A, std::move(c)));
    }
    return gens;
}

Subgroup multiple_subgroup(const PGroup& A, unsigned n) {
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < A.rank(); ++i) {
        if (n >= A.exponent(i)) continue;
        std::vector<u64> c(A.rank(), 0);
        c[i] = pow_u64(A.prime(), n);
        gens.push_back(GroupElement(A, std::move(c)));
    }
    return Subgroup::span(A, gens);
}

bool is_essential(const Subgroup& S, const EnumLimits& limits) {
    const PGroup& A = S.parent();
    // S meets <a> nontrivially iff the unique minimal subgroup of <a> lies in
    // S, i.e. iff (ord(a)/p) * a is a member.
    for (const auto& a : A.elements(limits)) {
        if (a.is_zero()) continue;
        unsigned e = a.order_exponent();
        GroupElement m = static_cast<i64>(pow_u64(A.prime(), e - 1)) * a;
        if (!S.contains(m)) return false;
    }
    return true;
}

Subgroup intersect(const Subgroup& S, const Subgroup& T, const EnumLimits& limits) {
    if (S.parent() != T.parent()) throw ParentMismatch();
    const Subgroup& small = (S.order().value_or(~0ull) <= T.order().value_or(~0ull)) ? S : T;
    const Subgroup& big = (&small == &S) ? T : S;
    std::vector<GroupElement> common;
    for (const auto& a : small.elements(limits))
        if (big.contains(a)) common.push_back(a);
    return Subgroup::span(S.parent(), common);
}

std::vector<Subgroup> all_subgroups(const PGroup& A, const EnumLimits& limits) {
    auto elems = A.elements(limits);
    std::set<Subgroup> seen;
    std::vector<Subgroup> frontier{Subgroup::zero(A)};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<Subgroup> next;
        for (const auto& S : frontier) {
            auto gens = S.generators();
            gens.push_back(A.zero());
            for (const auto& a : elems) {
                if (S.contains(a)) continue;
                gens.back() = a;
                Subgroup bigger = Subgroup::span(A, gens);
                if (seen.insert(bigger).second) next.push_back(bigger);
            }
        }
        frontier = std::move(next);
    }
    return std::vector<Subgroup>(seen.begin(), seen.end());
}

} // namespace endoring
