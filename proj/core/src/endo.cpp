#include "endoring/endo.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace endoring {

namespace {

u64 constraint_divisor(const PGroup& A, std::size_t i, std::size_t j) {
    unsigned ki = A.exponent(i), kj = A.exponent(j);
    return ki > kj ? pow_u64(A.prime(), ki - kj) : 1;
}

} // namespace

Endo Endo::zero(const PGroup& A) {
    return Endo(A, std::vector<u64>(A.rank() * A.rank(), 0));
}

Endo Endo::identity(const PGroup& A) {
    std::vector<u64> m(A.rank() * A.rank(), 0);
    for (std::size_t i = 0; i < A.rank(); ++i) m[i * A.rank() + i] = 1 % A.modulus(i);
    return Endo(A, std::move(m));
}

Endo Endo::scalar(const PGroup& A, i64 c) {
    std::vector<u64> m(A.rank() * A.rank(), 0);
    for (std::size_t i = 0; i < A.rank(); ++i)
        m[i * A.rank() + i] = reduce_signed(c, A.modulus(i));
    return Endo(A, std::move(m));
}

Endo Endo::from_matrix(const PGroup& A, const std::vector<std::vector<i64>>& m) {
    const std::size_t r = A.rank();
    if (m.size() != r)
        throw ValidationError("MatrixShape: expected " + std::to_string(r) + " rows");
    std::vector<u64> entries(r * r);
    for (std::size_t i = 0; i < r; ++i) {
        if (m[i].size() != r)
            throw ValidationError("MatrixShape: row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < r; ++j) {
            u64 e = reduce_signed(m[i][j], A.modulus(i));
            if (e % constraint_divisor(A, i, j) != 0) throw DivisibilityViolation(i, j);
            entries[i * r + j] = e;
        }
    }
    return Endo(A, std::move(entries));
}

Endo Endo::from_entries_unchecked(const PGroup& A, std::vector<u64> entries) {
    return Endo(A, std::move(entries));
}

GroupElement Endo::apply(const GroupElement& a) const {
    if (a.parent() != parent_) throw ParentMismatch();
    const std::size_t r = rank();
    std::vector<u64> out(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
        u64 mod = parent_.modulus(i);
        u64 acc = 0;
        for (std::size_t j = 0; j < r; ++j)
            acc = add_mod(acc, mul_mod(entry(i, j), a.coord(j) % mod, mod), mod);
        out[i] = acc;
    }
    return GroupElement(parent_, std::move(out));
}

bool Endo::is_zero() const {
    return std::all_of(m_.begin(), m_.end(), [](u64 e) { return e == 0; });
}

bool Endo::is_identity() const { return *this == identity(parent_); }

Endo Endo::operator+(const Endo& o) const {
    if (parent_ != o.parent_) throw ParentMismatch();
    const std::size_t r = rank();
    std::vector<u64> m(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            m[i * r + j] = add_mod(entry(i, j), o.entry(i, j), parent_.modulus(i));
    return Endo(parent_, std::move(m));
}

Endo Endo::operator-() const {
    const std::size_t r = rank();
    std::vector<u64> m(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m[i * r + j] = neg_mod(entry(i, j), parent_.modulus(i));
    return Endo(parent_, std::move(m));
}

Endo Endo::operator-(const Endo& o) const { return *this + (-o); }

Endo Endo::operator*(const Endo& o) const { return compose(*this, o); }

bool Endo::operator==(const Endo& o) const {
    if (parent_ != o.parent_) throw ParentMismatch();
    return m_ == o.m_;
}

Endo Endo::pow(unsigned n) const {
    Endo acc = identity(parent_);
    for (unsigned i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

Endo compose(const Endo& f, const Endo& g) {
    if (f.parent() != g.parent()) throw ParentMismatch();
    const PGroup& A = f.parent();
    const std::size_t r = A.rank();
    std::vector<u64> m(r * r, 0);
    for (std::size_t i = 0; i < r; ++i) {
        u64 mod = A.modulus(i);
        for (std::size_t j = 0; j < r; ++j) {
            u64 acc = 0;
            for (std::size_t k = 0; k < r; ++k)
                acc = add_mod(acc, mul_mod(f.entry(i, k), g.entry(k, j) % mod, mod), mod);
            m[i * r + j] = acc;
        }
    }
    // The divisibility constraint survives products of valid endomorphisms.
    return Endo::from_entries_unchecked(A, std::move(m));
}

Endo alpha_mn(const PGroup& A, std::size_t i, std::size_t j) {
    if (i >= A.rank()) throw IndexOutOfRange(i);
    if (j >= A.rank()) throw IndexOutOfRange(j);
    if (A.exponent(i) >= A.exponent(j)) throw ExponentOrder(i, j);
    std::vector<u64> m(A.rank() * A.rank(), 0);
    m[j * A.rank() + i] = pow_u64(A.prime(), A.exponent(j) - A.exponent(i));
    return Endo::from_entries_unchecked(A, std::move(m));
}

Endo projection(const PGroup& A, std::span<const std::size_t> indices) {
    std::vector<u64> m(A.rank() * A.rank(), 0);
    for (std::size_t i : indices) {
        if (i >= A.rank()) throw IndexOutOfRange(i);
        m[i * A.rank() + i] = 1 % A.modulus(i);
    }
    return Endo::from_entries_unchecked(A, std::move(m));
}

Endo projection(const PGroup& A, std::initializer_list<std::size_t> indices) {
    return projection(A, std::span<const std::size_t>(indices.begin(), indices.size()));
}

Endo psi_embed(const Endo& f, const PGroup& A, std::span<const std::size_t> position) {
    const PGroup& B = f.parent();
    if (position.size() != B.rank())
        throw ValidationError("PositionCount: expected one target index per summand of B");
    std::vector<bool> used(A.rank(), false);
    for (std::size_t t = 0; t < position.size(); ++t) {
        std::size_t pos = position[t];
        if (pos >= A.rank()) throw IndexOutOfRange(pos);
        if (used[pos]) throw ValidationError("PositionMap: index map is not injective");
        used[pos] = true;
        if (A.exponent(pos) != B.exponent(t) || A.prime() != B.prime())
            throw ExponentMismatch(pos);
    }
    std::vector<u64> m(A.rank() * A.rank(), 0);
    for (std::size_t s = 0; s < B.rank(); ++s)
        for (std::size_t t = 0; t < B.rank(); ++t)
            m[position[s] * A.rank() + position[t]] = f.entry(s, t);
    return Endo::from_entries_unchecked(A, std::move(m));
}

Endo psi_embed(const Endo& f, const PGroup& A, std::initializer_list<std::size_t> position) {
    return psi_embed(f, A, std::span<const std::size_t>(position.begin(), position.size()));
}

Subgroup kernel(const Endo& f) {
    const PGroup& A = f.parent();
    const std::size_t r = A.rank();
    const u64 p = A.prime();
    const unsigned K = A.max_exponent();
    const u64 M = pow_u64(p, K);

    // Lift the congruence system f(a) = 0 to Z/p^K: row i scaled by
    // p^{K - k_i} turns "mod p^{k_i}" into "mod p^K".
    std::vector<u64> B(r * r);
    for (std::size_t i = 0; i < r; ++i) {
        u64 lift = pow_u64(p, K - A.exponent(i));
        for (std::size_t j = 0; j < r; ++j) B[i * r + j] = mul_mod(lift % M, f.entry(i, j), M);
    }

    std::vector<std::size_t> col_of(r); // permuted position -> original column
    std::iota(col_of.begin(), col_of.end(), 0);

    std::vector<unsigned> pivot_val(r, 0);
    std::size_t s = 0; // number of pivots
    for (; s < r; ++s) {
        // Full pivoting on the entry of minimal p-adic valuation.
        unsigned best_v = K;
        std::size_t bi = r, bj = r;
        for (std::size_t i = s; i < r; ++i)
            for (std::size_t j = s; j < r; ++j) {
                unsigned v = valuation(B[i * r + j], p, K);
                if (v < best_v) { best_v = v; bi = i; bj = j; }
            }
        if (bi == r) break; // remaining block is zero
        if (bi != s)
            for (std::size_t j = 0; j < r; ++j) std::swap(B[s * r + j], B[bi * r + j]);
        if (bj != s) {
            for (std::size_t i = 0; i < r; ++i) std::swap(B[i * r + s], B[i * r + bj]);
            std::swap(col_of[s], col_of[bj]);
        }
        u64 unit = B[s * r + s] / pow_u64(p, best_v);
        if (unit != 1) {
            u64 w = inv_mod(unit, M);
            for (std::size_t j = s; j < r; ++j) B[s * r + j] = mul_mod(w, B[s * r + j], M);
        }
        B[s * r + s] = pow_u64(p, best_v);
        pivot_val[s] = best_v;
        for (std::size_t i = s + 1; i < r; ++i) {
            u64 q = B[i * r + s] / B[s * r + s]; // exact: minimal valuation pivot
            if (q == 0) continue;
            for (std::size_t j = s; j < r; ++j)
                B[i * r + j] = sub_mod(B[i * r + j], mul_mod(q, B[s * r + j], M), M);
        }
    }

    // Back-substitute a generator per free column and one per non-unit pivot.
    auto back_substitute = [&](std::vector<u64>& y, std::size_t from) {
        for (std::size_t t = from + 1; t-- > 0;) {
            if (t >= s) continue;
            u64 acc = 0;
            for (std::size_t j = t + 1; j < r; ++j)
                acc = add_mod(acc, mul_mod(B[t * r + j], y[j], M), M);
            u64 pv = pow_u64(p, pivot_val[t]);
            u64 rhs = (M - acc) % M;
            y[t] = (rhs / pv) % pow_u64(p, K - pivot_val[t]);
        }
    };

    std::vector<GroupElement> gens;
    auto emit = [&](const std::vector<u64>& y) {
        std::vector<u64> c(r, 0);
        for (std::size_t t = 0; t < r; ++t) c[col_of[t]] = y[t] % A.modulus(col_of[t]);
        GroupElement g(A, std::move(c));
        if (!g.is_zero()) gens.push_back(std::move(g));
    };
    for (std::size_t u = s; u < r; ++u) {
        std::vector<u64> y(r, 0);
        y[u] = 1;
        back_substitute(y, s == 0 ? 0 : s - 1);
        emit(y);
    }
    for (std::size_t t = 0; t < s; ++t) {
        if (pivot_val[t] == 0) continue;
        std::vector<u64> y(r, 0);
        y[t] = pow_u64(p, K - pivot_val[t]);
        if (t > 0) back_substitute(y, t - 1);
        emit(y);
    }
    return Subgroup::span(A, gens);
}

Subgroup image(const Endo& f) {
    std::vector<GroupElement> gens;
    for (std::size_t j = 0; j < f.rank(); ++j) gens.push_back(f.apply(f.parent().generator(j)));
    return Subgroup::span(f.parent(), gens);
}

bool is_invertible(const Endo& f) { return kernel(f).is_zero(); }

bool is_unit_mod_p(const Endo& f) {
    const PGroup& A = f.parent();
    const std::size_t r = A.rank();
    const u64 p = A.prime();
    std::vector<u64> m(r * r);
    for (std::size_t i = 0; i < r * r; ++i) m[i] = f.entries()[i] % p;
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t piv = c;
        while (piv < r && m[piv * r + c] == 0) ++piv;
        if (piv == r) return false;
        if (piv != c)
            for (std::size_t j = c; j < r; ++j) std::swap(m[c * r + j], m[piv * r + j]);
        u64 w = inv_mod(m[c * r + c], p);
        for (std::size_t i = c + 1; i < r; ++i) {
            u64 factor = mul_mod(m[i * r + c], w, p);
            if (factor == 0) continue;
            for (std::size_t j = c; j < r; ++j)
                m[i * r + j] = sub_mod(m[i * r + j], mul_mod(factor, m[c * r + j], p), p);
        }
    }
    return true;
}

std::optional<Endo> inverse(const Endo& f) {
    const PGroup& A = f.parent();
    const std::size_t r = A.rank();
    const u64 p = A.prime();

    // Invert the mod-p reduction over F_p by Gauss-Jordan.
    std::vector<u64> m(r * r), inv(r * r, 0);
    for (std::size_t i = 0; i < r * r; ++i) m[i] = f.entries()[i] % p;
    for (std::size_t i = 0; i < r; ++i) inv[i * r + i] = 1 % p;
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t piv = c;
        while (piv < r && m[piv * r + c] == 0) ++piv;
        if (piv == r) return std::nullopt;
        if (piv != c)
            for (std::size_t j = 0; j < r; ++j) {
                std::swap(m[c * r + j], m[piv * r + j]);
                std::swap(inv[c * r + j], inv[piv * r + j]);
            }
        u64 w = inv_mod(m[c * r + c], p);
        for (std::size_t j = 0; j < r; ++j) {
            m[c * r + j] = mul_mod(m[c * r + j], w, p);
            inv[c * r + j] = mul_mod(inv[c * r + j], w, p);
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (i == c || m[i * r + c] == 0) continue;
            u64 factor = m[i * r + c];
            for (std::size_t j = 0; j < r; ++j) {
                m[i * r + j] = sub_mod(m[i * r + j], mul_mod(factor, m[c * r + j], p), p);
                inv[i * r + j] = sub_mod(inv[i * r + j], mul_mod(factor, inv[c * r + j], p), p);
            }
        }
    }

    // Lift to an endomorphism. The mod-p inverse of a valid matrix respects
    // the divisibility pattern (it is block-triangular with respect to the
    // exponent layers), so entries at constrained positions are 0 mod p.
    std::vector<u64> lifted(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            u64 e = inv[i * r + j];
            if (A.exponent(i) > A.exponent(j)) {
                if (e != 0) throw Error("internal: mod-p inverse violates layer pattern");
                lifted[i * r + j] = 0;
            } else {
                lifted[i * r + j] = e % A.modulus(i);
            }
        }
    Endo h = Endo::from_entries_unchecked(A, std::move(lifted));

    // Newton refinement: h <- h (2 - f h) doubles the p-adic precision.
    Endo two = Endo::scalar(A, 2);
    Endo id = Endo::identity(A);
    for (int iter = 0; iter < 64; ++iter) {
        if (compose(f, h) == id) return h;
        h = compose(h, two - compose(f, h));
    }
    return std::nullopt; // unreachable for genuinely invertible input
}

std::optional<u64> endo_ring_order(const PGroup& A) {
    u128 n = 1;
    for (std::size_t i = 0; i < A.rank(); ++i)
        for (std::size_t j = 0; j < A.rank(); ++j) {
            unsigned e = std::min(A.exponent(i), A.exponent(j));
            for (unsigned t = 0; t < e; ++t) {
                n *= A.prime();
                if (n > ~static_cast<u64>(0)) return std::nullopt;
            }
        }
    return static_cast<u64>(n);
}

EndoRingCard endo_ring_card(const PGroup& A) { return EndoRingCard{A, endo_ring_order(A)}; }

std::vector<Endo> enumerate_endos(const PGroup& A, const EnumLimits& limits) {
    auto n = endo_ring_order(A);
    if (!n || *n > limits.max_endos) throw GuardExceeded("|End A|", limits.max_endos);
    const std::size_t r = A.rank();
    // Digit (i, j) ranges over p^{min(k_i, k_j)} values; the stored entry is
    // the digit times the constraint divisor.
    std::vector<u64> radix(r * r), step(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            radix[i * r + j] = pow_u64(A.prime(), std::min(A.exponent(i), A.exponent(j)));
            step[i * r + j] = constraint_divisor(A, i, j);
        }
    std::vector<Endo> out;
    out.reserve(*n);
    std::vector<u64> digit(r * r, 0);
    while (true) {
        std::vector<u64> m(r * r);
        for (std::size_t t = 0; t < r * r; ++t) m[t] = digit[t] * step[t];
        out.push_back(Endo::from_entries_unchecked(A, std::move(m)));
        std::size_t t = 0;
        for (; t < r * r; ++t) {
            if (++digit[t] < radix[t]) break;
            digit[t] = 0;
        }
        if (t == r * r) break;
    }
    return out;
}

Endo random_endo(const PGroup& A, Rng& rng) {
    const std::size_t r = A.rank();
    std::vector<u64> m(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            u64 digits = pow_u64(A.prime(), std::min(A.exponent(i), A.exponent(j)));
            m[i * r + j] = rng.below(digits) * constraint_divisor(A, i, j);
        }
    return Endo::from_entries_unchecked(A, std::move(m));
}

GroupElement random_element(const PGroup& A, Rng& rng) {
    std::vector<u64> c(A.rank());
    for (std::size_t i = 0; i < A.rank(); ++i) c[i] = rng.below(A.modulus(i));
    return GroupElement(A, std::move(c));
}

} // namespace endoring
