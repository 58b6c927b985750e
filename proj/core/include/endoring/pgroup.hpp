#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "endoring/errors.hpp"
#include "endoring/guard.hpp"
#include "endoring/modmath.hpp"

namespace endoring {

class GroupElement;

/// A finite abelian p-group A = Z(p^k0) + ... + Z(p^k{r-1}), given by the
/// prime p and the exponent sequence. Immutable; copies share storage.
///
/// Two PGroup values are the same parent iff p and the exponent sequences
/// (including their order) agree.
class PGroup {
public:
    PGroup(u64 p, std::vector<unsigned> exponents);

    /// Parses the literal syntax `p^k1+p^k2+...`, e.g. "2^1+2^2+2^3".
    static PGroup parse(std::string_view literal);

    u64 prime() const { return d_->p; }
    std::size_t rank() const { return d_->exponents.size(); }
    unsigned exponent(std::size_t i) const { return d_->exponents[i]; }
    const std::vector<unsigned>& exponents() const { return d_->exponents; }
    /// p^{k_i}, the order of the i-th cyclic summand.
    u64 modulus(std::size_t i) const { return d_->moduli[i]; }
    unsigned max_exponent() const { return d_->max_exponent; }
    /// |A| when it fits in 64 bits.
    std::optional<u64> order() const { return d_->order; }
    /// True iff every exponent is 1 (elementary p-group, i.e. an F_p-space).
    bool is_elementary() const { return d_->max_exponent == 1; }
    /// True iff all exponents are equal (single Prüfer layer).
    bool is_homogeneous() const;

    std::string literal() const;

    GroupElement zero() const;
    GroupElement element(std::vector<i64> coords) const;
    /// Standard basis element theta_i = (0,...,1,...,0).
    GroupElement generator(std::size_t i) const;

    /// All |A| elements in odometer order; refuses above the cap.
    std::vector<GroupElement> elements(const EnumLimits& limits = {}) const;

    bool operator==(const PGroup& o) const {
        return d_ == o.d_ || (d_->p == o.d_->p && d_->exponents == o.d_->exponents);
    }
    bool operator!=(const PGroup& o) const { return !(*this == o); }

private:
    struct Data {
        u64 p;
        std::vector<unsigned> exponents;
        std::vector<u64> moduli;
        unsigned max_exponent;
        std::optional<u64> order;
    };
    std::shared_ptr<const Data> d_;
};

/// An element of a PGroup: canonical residue vector, coordinate i mod p^{k_i}.
class GroupElement {
public:
    GroupElement(PGroup parent, std::vector<u64> coords)
        : parent_(std::move(parent)), coords_(std::move(coords)) {}

    const PGroup& parent() const { return parent_; }
    const std::vector<u64>& coords() const { return coords_; }
    u64 coord(std::size_t i) const { return coords_[i]; }
    std::size_t size() const { return coords_.size(); }

    bool is_zero() const;
    /// Least e with p^e * a = 0; 0 for the zero element.
    unsigned order_exponent() const;

    GroupElement operator+(const GroupElement& o) const;
    GroupElement operator-(const GroupElement& o) const;
    GroupElement operator-() const;
    bool operator==(const GroupElement& o) const;
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool operator<(const GroupElement& o) const { return coords_ < o.coords_; }

private:
    PGroup parent_;
    std::vector<u64> coords_;
};

/// n * a with canonical reduction; n may be any integer.
GroupElement operator*(i64 n, const GroupElement& a);

} // namespace endoring
