#pragma once

#include <cstdint>
#include <optional>
#include <tuple>

namespace endoring {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// a*b mod m for canonical residues; m < 2^63.
inline u64 mul_mod(u64 a, u64 b, u64 m) {
    if (a < (1ull << 32) && b < (1ull << 32)) return (a * b) % m;
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b; // both < 2^63, no wrap
    return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 neg_mod(u64 a, u64 m) { return a == 0 ? 0 : m - a; }

/// Canonical residue of an arbitrary signed value.
inline u64 reduce_signed(i64 v, u64 m) {
    i64 r = v % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return static_cast<u64>(r);
}

/// Canonical residue of a signed 128-bit intermediate.
inline u64 reduce_i128(i128 v, u64 m) {
    i128 r = v % static_cast<i128>(m);
    if (r < 0) r += static_cast<i128>(m);
    return static_cast<u64>(r);
}

/// p^k if it fits below 2^62, otherwise nullopt.
inline std::optional<u64> pow_checked(u64 p, unsigned k) {
    u128 v = 1;
    for (unsigned i = 0; i < k; ++i) {
        v *= p;
        if (v >= (static_cast<u128>(1) << 62)) return std::nullopt;
    }
    return static_cast<u64>(v);
}

/// Extended gcd: returns (g, u, v) with u*a + v*b = g, g >= 0.
inline std::tuple<i64, i64, i64> xgcd(i64 a, i64 b) {
    i64 old_r = a, r = b;
    i64 old_s = 1, s = 0;
    i64 old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

/// Inverse of a unit mod m (gcd(a, m) = 1 assumed).
inline u64 inv_mod(u64 a, u64 m) {
    auto [g, u, v] = xgcd(static_cast<i64>(a % m), static_cast<i64>(m));
    (void)g;
    (void)v;
    return reduce_signed(u, m);
}

/// p-adic valuation of x != 0; returns cap for x == 0.
inline unsigned valuation(u64 x, u64 p, unsigned cap) {
    if (x == 0) return cap;
    unsigned v = 0;
    while (v < cap && x % p == 0) { x /= p; ++v; }
    return v;
}

inline u64 pow_u64(u64 base, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

namespace detail {
inline u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}
inline u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}
} // namespace detail

/// Deterministic Miller-Rabin for 64-bit inputs; exact, not probabilistic.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

/// Deterministic ChaCha-free PRNG wrapper: splitmix64 stream. Output is
/// reproducible across platforms for a fixed seed.
class Rng {
public:
    explicit Rng(u64 seed) : state_(seed) {}

    u64 next() {
        u64 z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform-ish draw in [0, n); n > 0. Modulo bias is irrelevant at the
    /// moduli this tool works with.
    u64 below(u64 n) { return next() % n; }

private:
    u64 state_;
};

} // namespace endoring
