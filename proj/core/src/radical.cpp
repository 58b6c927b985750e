#include "endoring/radical.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace endoring {

namespace {

/// Least s with x^s = 0, or nullopt if x is not nilpotent. The mod-p
/// reduction decides nilpotence (x nilpotent iff x mod p is); the exact
/// index is then found by iterating products, bounded by rank * max_exponent.
std::optional<unsigned> nilpotency_exponent(const Endo& x) {
    const PGroup& A = x.parent();
    const std::size_t r = A.rank();
    const u64 p = A.prime();
    std::vector<u64> barpow(r * r);
    for (std::size_t i = 0; i < r * r; ++i) barpow[i] = x.entries()[i] % p;
    for (unsigned t = 0; t < r; ++t) {
        // barpow = bar(x)^(t+1) after this block
        if (t > 0) {
            std::vector<u64> next(r * r, 0);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t k = 0; k < r; ++k) {
                    if (barpow[i * r + k] == 0) continue;
                    for (std::size_t j = 0; j < r; ++j)
                        next[i * r + j] =
                            (next[i * r + j] + barpow[i * r + k] * (x.entries()[k * r + j] % p)) % p;
                }
            barpow = std::move(next);
        }
        if (std::all_of(barpow.begin(), barpow.end(), [](u64 e) { return e == 0; })) break;
        if (t + 1 == r) return std::nullopt; // bar(x)^r != 0 => not nilpotent
    }
    const unsigned bound = static_cast<unsigned>(r) * A.max_exponent() + 1;
    Endo acc = x;
    for (unsigned s = 1; s <= bound; ++s) {
        if (acc.is_zero()) return s;
        acc = acc * x;
    }
    return std::nullopt;
}

} // namespace

QuasiInverseResult quasi_inverse(const Endo& x) {
    const PGroup& A = x.parent();
    QuasiInverseResult result;
    if (auto s = nilpotency_exponent(x)) {
        Endo witness = Endo::zero(A);
        Endo power = x;
        for (unsigned i = 1; i < *s; ++i) {
            witness = (i % 2 == 1) ? witness - power : witness + power;
            power = power * x;
        }
        result.exists = true;
        result.witness = witness;
    } else {
        Endo one_plus = Endo::identity(A) + x;
        auto h = inverse(one_plus);
        if (!h) return result;
        result.exists = true;
        result.witness = *h - Endo::identity(A);
    }
    // The contract promises an exact witness.
    const Endo& w = *result.witness;
    if (!(x + w + x * w).is_zero()) throw Error("internal: quasi-inverse witness failed to verify");
    return result;
}

LayerDecomposition layer_decomposition(const PGroup& A) {
    std::map<unsigned, std::vector<std::size_t>, std::greater<>> by_exp;
    for (std::size_t i = 0; i < A.rank(); ++i) by_exp[A.exponent(i)].push_back(i);
    LayerDecomposition d{A, {}};
    for (auto& [e, idx] : by_exp) d.layers.push_back(Layer{e, std::move(idx)});
    return d;
}

bool radical_membership(const Endo& x) {
    const PGroup& A = x.parent();
    const u64 p = A.prime();
    auto layers = layer_decomposition(A);
    for (const auto& layer : layers.layers)
        for (std::size_t i : layer.indices)
            for (std::size_t j : layer.indices)
                if (x.entry(i, j) % p != 0) return false;
    return true;
}

std::vector<Endo> radical_oracle(const PGroup& A, const EnumLimits& limits) {
    auto all = enumerate_endos(A, limits);
    const std::size_t r = A.rank();
    const u64 p = A.prime();

    // Quasi-regularity of z is invertibility of 1 + z, which only depends on
    // z mod p; precompute the mod-p matrices once and keep the double loop
    // allocation-free. The equivalence with the definitional witness test is
    // covered by the exhaustive unit tests.
    std::vector<std::vector<u64>> bar(all.size(), std::vector<u64>(r * r));
    for (std::size_t t = 0; t < all.size(); ++t)
        for (std::size_t e = 0; e < r * r; ++e) bar[t][e] = all[t].entries()[e] % p;

    // Guarded enumeration keeps p and r small enough that r * (p-1)^2 + 1
    // fits comfortably in 64 bits.
    std::vector<u64> prod(r * r), elim(r * r);
    auto one_plus_unit = [&](const std::vector<u64>& y, const std::vector<u64>& x) {
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                u64 acc = (i == j) ? 1 : 0;
                for (std::size_t k = 0; k < r; ++k)
                    acc = (acc + y[i * r + k] * x[k * r + j]) % p;
                prod[i * r + j] = acc % p;
            }
        elim = prod;
        for (std::size_t c = 0; c < r; ++c) {
            std::size_t piv = c;
            while (piv < r && elim[piv * r + c] == 0) ++piv;
            if (piv == r) return false;
            if (piv != c)
                for (std::size_t j = c; j < r; ++j) std::swap(elim[c * r + j], elim[piv * r + j]);
            u64 w = inv_mod(elim[c * r + c], p);
            for (std::size_t i = c + 1; i < r; ++i) {
                u64 factor = mul_mod(elim[i * r + c], w, p);
                if (factor == 0) continue;
                for (std::size_t j = c; j < r; ++j)
                    elim[i * r + j] = sub_mod(elim[i * r + j], mul_mod(factor, elim[c * r + j], p), p);
            }
        }
        return true;
    };

    std::vector<Endo> members;
    for (std::size_t xi = 0; xi < all.size(); ++xi) {
        bool in_radical = true;
        for (std::size_t yi = 0; yi < all.size(); ++yi) {
            if (!one_plus_unit(bar[yi], bar[xi])) {
                in_radical = false;
                break;
            }
        }
        if (in_radical) members.push_back(all[xi]);
    }
    return members;
}

std::optional<u64> radical_order(const PGroup& A) {
    auto layers = layer_decomposition(A);
    u128 sum_min = 0;
    for (std::size_t i = 0; i < A.rank(); ++i)
        for (std::size_t j = 0; j < A.rank(); ++j)
            sum_min += std::min(A.exponent(i), A.exponent(j));
    u128 sum_sq = 0;
    for (std::size_t t = 0; t < layers.layers.size(); ++t) {
        u128 m = layers.multiplicity(t);
        sum_sq += m * m;
    }
    u128 n = 1;
    for (u128 t = 0; t < sum_min - sum_sq; ++t) {
        n *= A.prime();
        if (n > ~static_cast<u64>(0)) return std::nullopt;
    }
    return static_cast<u64>(n);
}

namespace {

/// Ideal generating set for J per the layer criterion: p E_ij inside layers,
/// minimal elementary homs across layers.
std::vector<Endo> radical_generators(const PGroup& A) {
    const std::size_t r = A.rank();
    const u64 p = A.prime();
    std::vector<Endo> gens;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            u64 e;
            unsigned ki = A.exponent(i), kj = A.exponent(j);
            if (ki == kj) {
                e = p % A.modulus(i);
            } else if (ki > kj) {
                e = pow_u64(p, ki - kj);
            } else {
                e = 1;
            }
            if (e == 0) continue;
            std::vector<u64> m(r * r, 0);
            m[i * r + j] = e;
            gens.push_back(Endo::from_entries_unchecked(A, std::move(m)));
        }
    return gens;
}

} // namespace

unsigned nilpotency_index(const PGroup& A) {
    auto gens = radical_generators(A);
    std::set<std::vector<u64>> current;
    for (const auto& g : gens)
        if (!g.is_zero()) current.insert(g.entries());
    unsigned t = 1;
    while (!current.empty()) {
        if (t > 64) throw Error("internal: nilpotency index iteration failed to terminate");
        std::set<std::vector<u64>> next;
        for (const auto& g : gens)
            for (const auto& h : current) {
                Endo prod = g * Endo::from_entries_unchecked(A, h);
                if (!prod.is_zero()) next.insert(prod.entries());
            }
        current = std::move(next);
        ++t;
    }
    return t;
}

std::vector<LayerBlockModP> semisimple_quotient(const Endo& x) {
    const PGroup& A = x.parent();
    const u64 p = A.prime();
    auto layers = layer_decomposition(A);
    std::vector<LayerBlockModP> blocks;
    for (const auto& layer : layers.layers) {
        LayerBlockModP b{layer.exponent, layer.indices, {}};
        b.entries.reserve(layer.indices.size() * layer.indices.size());
        for (std::size_t i : layer.indices)
            for (std::size_t j : layer.indices) b.entries.push_back(x.entry(i, j) % p);
        blocks.push_back(std::move(b));
    }
    return blocks;
}

LayerBlockModP block_product(const LayerBlockModP& a, const LayerBlockModP& b, u64 p) {
    const std::size_t m = a.indices.size();
    LayerBlockModP out{a.exponent, a.indices, std::vector<u64>(m * m, 0)};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (a.entries[i * m + k] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                out.entries[i * m + j] =
                    (out.entries[i * m + j] + a.entries[i * m + k] * b.entries[k * m + j]) % p;
        }
    return out;
}

std::vector<Endo> large_kernel_radical(const PGroup& A, const EnumLimits& limits) {
    if (layer_decomposition(A).layers.size() != 1) throw NotQuasiInjective();
    std::vector<Endo> members;
    for (const auto& x : enumerate_endos(A, limits))
        if (is_essential(kernel(x), limits)) members.push_back(x);
    return members;
}

namespace {

struct HomBlock {
    // Maps the source summands (cols) into the target summands (rows) of A.
    std::vector<std::size_t> rows, cols;
};

/// Number of matrices in Hom(source block, target block).
std::optional<u64> hom_count(const PGroup& A, const HomBlock& h) {
    u128 n = 1;
    for (std::size_t i : h.rows)
        for (std::size_t j : h.cols) {
            unsigned e = std::min(A.exponent(i), A.exponent(j));
            for (unsigned t = 0; t < e; ++t) {
                n *= A.prime();
                if (n > ~static_cast<u64>(0)) return std::nullopt;
            }
        }
    return static_cast<u64>(n);
}

std::vector<u64> hom_entry_steps(const PGroup& A, const HomBlock& h) {
    std::vector<u64> steps;
    for (std::size_t i : h.rows)
        for (std::size_t j : h.cols) {
            unsigned ki = A.exponent(i), kj = A.exponent(j);
            steps.push_back(ki > kj ? pow_u64(A.prime(), ki - kj) : 1);
        }
    return steps;
}

std::vector<u64> hom_digit_radix(const PGroup& A, const HomBlock& h) {
    std::vector<u64> radix;
    for (std::size_t i : h.rows)
        for (std::size_t j : h.cols)
            radix.push_back(pow_u64(A.prime(), std::min(A.exponent(i), A.exponent(j))));
    return radix;
}

/// digits * steps laid out rows-major over (h.rows x h.cols).
std::vector<u64> hom_matrix(const std::vector<u64>& digits, const std::vector<u64>& steps) {
    std::vector<u64> m(digits.size());
    for (std::size_t t = 0; t < digits.size(); ++t) m[t] = digits[t] * steps[t];
    return m;
}

/// Composite target<-source<-target as an endomorphism of the sub-group on
/// `outer.rows`; f is (outer.rows x outer.cols), g is (outer.cols x outer.rows).
Endo block_composite(const PGroup& A, const PGroup& Bsub, const HomBlock& outer,
                     const std::vector<u64>& f, const std::vector<u64>& g) {
    const std::size_t nb = outer.rows.size(), nc = outer.cols.size();
    std::vector<u64> m(nb * nb, 0);
    for (std::size_t i = 0; i < nb; ++i) {
        u64 mod = A.modulus(outer.rows[i]);
        for (std::size_t j = 0; j < nb; ++j) {
            u64 acc = 0;
            for (std::size_t k = 0; k < nc; ++k)
                acc = add_mod(acc, mul_mod(f[i * nc + k] % mod, g[k * nb + j] % mod, mod), mod);
            m[i * nb + j] = acc;
        }
    }
    return Endo::from_entries_unchecked(Bsub, std::move(m));
}

} // namespace

bool block_inclusion_check(const PGroup& A, std::size_t split_after, const EnumLimits& limits,
                           u64 samples, u64 seed) {
    if (split_after >= A.rank()) throw IndexOutOfRange(split_after);
    HomBlock cb, bc; // C->B and B->C
    for (std::size_t i = 0; i <= split_after; ++i) cb.rows.push_back(i);
    for (std::size_t j = split_after + 1; j < A.rank(); ++j) cb.cols.push_back(j);
    bc.rows = cb.cols;
    bc.cols = cb.rows;
    if (cb.cols.empty()) return true; // degenerate split, vacuously true

    unsigned min_b = ~0u, max_c = 0;
    for (std::size_t i : cb.rows) min_b = std::min(min_b, A.exponent(i));
    for (std::size_t j : cb.cols) max_c = std::max(max_c, A.exponent(j));
    if (min_b <= max_c)
        throw ValidationError("SplitOrder: B must carry strictly larger exponents than C");

    std::vector<unsigned> b_exps, c_exps;
    for (std::size_t i : cb.rows) b_exps.push_back(A.exponent(i));
    for (std::size_t j : cb.cols) c_exps.push_back(A.exponent(j));
    PGroup B(A.prime(), b_exps), C(A.prime(), c_exps);

    auto check_direction = [&](const HomBlock& fwd, const HomBlock& rev, const PGroup& target) {
        auto nf = hom_count(A, fwd), ng = hom_count(A, rev);
        auto steps_f = hom_entry_steps(A, fwd), steps_g = hom_entry_steps(A, rev);
        bool exhaustive = nf && ng && *nf <= limits.max_endos && *ng <= limits.max_endos &&
                          static_cast<u128>(*nf) * *ng <= limits.max_endos;
        if (exhaustive) {
            auto radix_f = hom_digit_radix(A, fwd), radix_g = hom_digit_radix(A, rev);
            std::vector<u64> df(steps_f.size(), 0);
            while (true) {
                auto f = hom_matrix(df, steps_f);
                std::vector<u64> dg(steps_g.size(), 0);
                while (true) {
                    auto g = hom_matrix(dg, steps_g);
                    if (!radical_membership(block_composite(A, target, fwd, f, g))) return false;
                    std::size_t t = 0;
                    for (; t < dg.size(); ++t) {
                        if (++dg[t] < radix_g[t]) break;
                        dg[t] = 0;
                    }
                    if (t == dg.size()) break;
                }
                std::size_t t = 0;
                for (; t < df.size(); ++t) {
                    if (++df[t] < radix_f[t]) break;
                    df[t] = 0;
                }
                if (t == df.size()) break;
            }
            return true;
        }
        Rng rng(seed);
        auto radix_f = hom_digit_radix(A, fwd), radix_g = hom_digit_radix(A, rev);
        for (u64 s = 0; s < samples; ++s) {
            std::vector<u64> df(steps_f.size()), dg(steps_g.size());
            for (std::size_t t = 0; t < df.size(); ++t) df[t] = rng.below(radix_f[t]);
            for (std::size_t t = 0; t < dg.size(); ++t) dg[t] = rng.below(radix_g[t]);
            auto f = hom_matrix(df, steps_f);
            auto g = hom_matrix(dg, steps_g);
            if (!radical_membership(block_composite(A, target, fwd, f, g))) return false;
        }
        return true;
    };

    return check_direction(cb, bc, B) && check_direction(bc, cb, C);
}

std::vector<PGroup> default_oracle_battery() {
    std::vector<PGroup> battery;
    const std::vector<std::vector<unsigned>> p2 = {{1}, {2}, {1, 1}, {1, 2},
                                                   {2, 2}, {1, 1, 2}, {1, 2, 3}};
    const std::vector<std::vector<unsigned>> p3 = {{1}, {1, 1}, {1, 2}};
    for (const auto& e : p2) battery.push_back(PGroup(2, e));
    for (const auto& e : p3) battery.push_back(PGroup(3, e));
    return battery;
}

} // namespace endoring
