#include "endoring/pgroup.hpp"

#include <charconv>
#include <cstdlib>

namespace endoring {

EnumLimits EnumLimits::from_env() {
    EnumLimits limits;
    if (const char* v = std::getenv("ENDORING_ENUM_CAP")) {
        char* end = nullptr;
        unsigned long long cap = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && cap > 0) {
            limits.max_elements = cap;
            limits.max_endos = cap;
        }
    }
    return limits;
}

PGroup::PGroup(u64 p, std::vector<unsigned> exponents) {
    if (!is_prime(p)) throw ValidationError("NotPrime: p = " + std::to_string(p));
    if (exponents.empty()) throw ValidationError("EmptyGroup: at least one summand required");
    Data d;
    d.p = p;
    d.max_exponent = 0;
    for (unsigned k : exponents) {
        if (k < 1) throw ValidationError("ExponentRange: every exponent must be >= 1");
        if (k > d.max_exponent) d.max_exponent = k;
    }
    auto top = pow_checked(p, d.max_exponent);
    if (!top) {
        throw ValidationError("ModulusOverflow: p^" + std::to_string(d.max_exponent) +
                              " does not fit in 64-bit arithmetic");
    }
    d.moduli.reserve(exponents.size());
    for (unsigned k : exponents) d.moduli.push_back(*pow_checked(p, k));
    u128 order = 1;
    bool fits = true;
    for (unsigned k : exponents) {
        for (unsigned i = 0; i < k && fits; ++i) {
            order *= p;
            if (order > ~static_cast<u64>(0)) fits = false;
        }
        if (!fits) break;
    }
    d.order = fits ? std::optional<u64>(static_cast<u64>(order)) : std::nullopt;
    d.exponents = std::move(exponents);
    d_ = std::make_shared<const Data>(std::move(d));
}

PGroup PGroup::parse(std::string_view literal) {
    std::vector<unsigned> exps;
    u64 p = 0;
    std::size_t pos = 0;
    while (pos <= literal.size()) {
        std::size_t next = literal.find('+', pos);
        std::string_view term = literal.substr(pos, next == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : next - pos);
        std::size_t caret = term.find('^');
        if (term.empty() || caret == std::string_view::npos || caret == 0 ||
            caret + 1 == term.size()) {
            throw ParseError("group literal term must look like p^k, got '" + std::string(term) +
                             "'");
        }
        u64 term_p = 0;
        unsigned term_k = 0;
        auto r1 = std::from_chars(term.data(), term.data() + caret, term_p);
        auto r2 = std::from_chars(term.data() + caret + 1, term.data() + term.size(), term_k);
        if (r1.ec != std::errc{} || r1.ptr != term.data() + caret || r2.ec != std::errc{} ||
            r2.ptr != term.data() + term.size()) {
            throw ParseError("cannot parse group literal term '" + std::string(term) + "'");
        }
        if (p == 0) {
            p = term_p;
        } else if (p != term_p) {
            throw ParseError("group literal mixes primes " + std::to_string(p) + " and " +
                             std::to_string(term_p));
        }
        exps.push_back(term_k);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return PGroup(p, std::move(exps));
}

bool PGroup::is_homogeneous() const {
    for (unsigned k : d_->exponents)
        if (k != d_->exponents[0]) return false;
    return true;
}

std::string PGroup::literal() const {
    std::string s;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (i) s += '+';
        s += std::to_string(prime());
        s += '^';
        s += std::to_string(exponent(i));
    }
    return s;
}

GroupElement PGroup::zero() const {
    return GroupElement(*this, std::vector<u64>(rank(), 0));
}

GroupElement PGroup::element(std::vector<i64> coords) const {
    if (coords.size() != rank())
        throw ValidationError("CoordinateCount: expected " + std::to_string(rank()) +
                              " coordinates, got " + std::to_string(coords.size()));
    std::vector<u64> canon(rank());
    for (std::size_t i = 0; i < rank(); ++i) canon[i] = reduce_signed(coords[i], modulus(i));
    return GroupElement(*this, std::move(canon));
}

GroupElement PGroup::generator(std::size_t i) const {
    if (i >= rank()) throw IndexOutOfRange(i);
    std::vector<u64> c(rank(), 0);
    c[i] = 1 % modulus(i);
    return GroupElement(*this, std::move(c));
}

std::vector<GroupElement> PGroup::elements(const EnumLimits& limits) const {
    auto n = order();
    if (!n || *n > limits.max_elements) throw GuardExceeded("|A|", limits.max_elements);
    std::vector<GroupElement> out;
    out.reserve(*n);
    std::vector<u64> c(rank(), 0);
    while (true) {
        out.push_back(GroupElement(*this, c));
        std::size_t i = 0;
        for (; i < rank(); ++i) {
            if (++c[i] < modulus(i)) break;
            c[i] = 0;
        }
        if (i == rank()) break;
    }
    return out;
}

bool GroupElement::is_zero() const {
    for (u64 c : coords_)
        if (c != 0) return false;
    return true;
}

unsigned GroupElement::order_exponent() const {
    unsigned e = 0;
    const u64 p = parent_.prime();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        unsigned k = parent_.exponent(i);
        unsigned v = valuation(coords_[i], p, k);
        if (k - v > e) e = k - v;
    }
    return e;
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
    if (parent_ != o.parent_) throw ParentMismatch();
    std::vector<u64> c(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i)
        c[i] = add_mod(coords_[i], o.coords_[i], parent_.modulus(i));
    return GroupElement(parent_, std::move(c));
}

GroupElement GroupElement::operator-(const GroupElement& o) const { return *this + (-o); }

GroupElement GroupElement::operator-() const {
    std::vector<u64> c(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i)
        c[i] = neg_mod(coords_[i], parent_.modulus(i));
    return GroupElement(parent_, std::move(c));
}

bool GroupElement::operator==(const GroupElement& o) const {
    if (parent_ != o.parent_) throw ParentMismatch();
    return coords_ == o.coords_;
}

GroupElement operator*(i64 n, const GroupElement& a) {
    std::vector<u64> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        u64 m = a.parent().modulus(i);
        c[i] = mul_mod(reduce_signed(n, m), a.coord(i), m);
    }
    return GroupElement(a.parent(), std::move(c));
}

} // namespace endoring
