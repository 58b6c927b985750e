#include <doctest.h>

#include "brute.hpp"
#include "endoring/endo.hpp"
#include "endoring/radical.hpp"

using namespace endoring;

TEST_CASE("matrix validation and the divisibility constraint") {
    PGroup A = PGroup::parse("2^1+2^2"); // Z(2) + Z(4)
    CHECK(Endo::from_matrix(A, {{1, 0}, {0, 1}}) == Endo::identity(A));

    // Row 1 (target Z(4)), column 0 (source Z(2)): entry must be even.
    CHECK_THROWS_AS(Endo::from_matrix(A, {{0, 0}, {1, 0}}), DivisibilityViolation);
    CHECK_NOTHROW(Endo::from_matrix(A, {{0, 0}, {2, 0}}));

    // Entries reduce canonically, including negatives.
    Endo f = Endo::from_matrix(A, {{-1, 1}, {-2, 5}});
    CHECK(f.entry(0, 0) == 1);
    CHECK(f.entry(1, 0) == 2);
    CHECK(f.entry(1, 1) == 1);
}

TEST_CASE("apply semantics") {
    PGroup A = PGroup::parse("2^1+2^2");
    Endo alpha = alpha_mn(A, 0, 1);
    CHECK(alpha.apply(A.element({1, 0})) == A.element({0, 2}));
    CHECK(alpha.apply(A.element({0, 1})) == A.zero());

    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        GroupElement a = random_element(A, rng);
        CHECK(Endo::identity(A).apply(a) == a);
        CHECK(Endo::zero(A).apply(a).is_zero());
    }
}

TEST_CASE("additivity of apply on sampled pairs") {
    Rng rng(29);
    PGroup A = PGroup::parse("2^1+2^2+2^3");
    for (int t = 0; t < 60; ++t) {
        Endo f = random_endo(A, rng);
        GroupElement a = random_element(A, rng), b = random_element(A, rng);
        CHECK(f.apply(a + b) == f.apply(a) + f.apply(b));
    }
}

TEST_CASE("composition") {
    PGroup A = PGroup::parse("2^1+2^2");
    Endo alpha = alpha_mn(A, 0, 1);
    CHECK((alpha * alpha).is_zero()); // image lands in the summand alpha kills
    CHECK(alpha * Endo::identity(A) == alpha);
    CHECK(Endo::identity(A) * alpha == alpha);

    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        Endo f = random_endo(A, rng), g = random_endo(A, rng);
        GroupElement a = random_element(A, rng);
        CHECK((f * g).apply(a) == f.apply(g.apply(a)));
    }
}

TEST_CASE("composition is independent of integer representatives") {
    // Recomputing f*g with arbitrary integer lifts of the entries (entry
    // (i, j) lifted by multiples of its storage modulus p^{k_i}) and reducing
    // at the end gives the canonical composite.
    PGroup A = PGroup::parse("2^1+2^2+2^3");
    const std::size_t r = A.rank();
    Rng rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        Endo f = random_endo(A, rng), g = random_endo(A, rng);
        std::vector<i128> flift(r * r), glift(r * r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                i128 bump_f = static_cast<i128>(rng.below(7)) - 3;
                i128 bump_g = static_cast<i128>(rng.below(7)) - 3;
                flift[i * r + j] = static_cast<i128>(f.entry(i, j)) +
                                   bump_f * static_cast<i128>(A.modulus(i));
                glift[i * r + j] = static_cast<i128>(g.entry(i, j)) +
                                   bump_g * static_cast<i128>(A.modulus(i));
            }
        Endo fg = f * g;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                i128 acc = 0;
                for (std::size_t k = 0; k < r; ++k) acc += flift[i * r + k] * glift[k * r + j];
                CHECK(reduce_i128(acc, A.modulus(i)) == fg.entry(i, j));
            }
    }
}

TEST_CASE("ring axioms on sampled triples") {
    PGroup A = PGroup::parse("2^2+2^2");
    Rng rng(41);
    for (int t = 0; t < 60; ++t) {
        Endo f = random_endo(A, rng), g = random_endo(A, rng), h = random_endo(A, rng);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK((f + g) * h == f * h + g * h);
        CHECK(f + (-f) == Endo::zero(A));
        CHECK(f + Endo::zero(A) == f);
    }
}

TEST_CASE("addition keeps the divisibility invariant; alpha+alpha example") {
    PGroup A = PGroup::parse("2^1+2^2");
    Endo alpha = alpha_mn(A, 0, 1);
    CHECK((alpha + alpha).is_zero()); // 2+2 = 0 mod 4

    // Exhaustive on Z(2)+Z(4): sums, negations and products of valid
    // endomorphisms revalidate cleanly.
    auto all = enumerate_endos(A);
    auto revalidate = [&](const Endo& f) {
        std::vector<std::vector<i64>> m(A.rank(), std::vector<i64>(A.rank()));
        for (std::size_t i = 0; i < A.rank(); ++i)
            for (std::size_t j = 0; j < A.rank(); ++j)
                m[i][j] = static_cast<i64>(f.entry(i, j));
        CHECK_NOTHROW(Endo::from_matrix(A, m));
    };
    for (const auto& f : all)
        for (const auto& g : all) {
            revalidate(f + g);
            revalidate(f * g);
        }
    for (const auto& f : all) revalidate(-f);
}

TEST_CASE("alpha_mn construction and errors") {
    PGroup A = PGroup::parse("2^1+2^2");
    Endo a01 = alpha_mn(A, 0, 1);
    CHECK(a01.entry(1, 0) == 2);
    CHECK(a01.entry(0, 0) == 0);

    PGroup B = PGroup::parse("2^1+2^3");
    CHECK(alpha_mn(B, 0, 1).entry(1, 0) == 4);

    CHECK_THROWS_AS(alpha_mn(A, 1, 0), ExponentOrder);
    CHECK_THROWS_AS(alpha_mn(A, 0, 0), ExponentOrder);
    CHECK_THROWS_AS(alpha_mn(A, 0, 5), IndexOutOfRange);
}

TEST_CASE("projections") {
    PGroup A = PGroup::parse("2^1+2^2+2^3");
    CHECK(projection(A, {0, 1, 2}) == Endo::identity(A));
    CHECK(projection(A, {}).is_zero());
    for (std::size_t i = 0; i < A.rank(); ++i) {
        Endo e = projection(A, {i});
        CHECK(e * e == e);
    }
    CHECK_THROWS_AS(projection(A, {9}), IndexOutOfRange);
}

TEST_CASE("corner embedding psi") {
    PGroup A = PGroup::parse("2^1+2^2+2^3");
    PGroup B = PGroup::parse("2^1+2^2");
    std::vector<std::size_t> pos{0, 1};

    CHECK(psi_embed(Endo::identity(B), A, pos) == projection(A, {0, 1}));
    CHECK(psi_embed(Endo::zero(B), A, pos).is_zero());

    // gamma = psi(alpha over B) equals the ambient alpha_mn.
    CHECK(psi_embed(alpha_mn(B, 0, 1), A, pos) == alpha_mn(A, 0, 1));

    // e psi(f) e = psi(f) for the matching projection.
    Rng rng(43);
    Endo e = projection(A, {0, 1});
    for (int t = 0; t < 40; ++t) {
        Endo f = random_endo(B, rng);
        Endo emb = psi_embed(f, A, pos);
        CHECK(e * emb * e == emb);
    }

    CHECK_THROWS_AS(psi_embed(Endo::identity(B), A, std::initializer_list<std::size_t>{0, 2}),
                    ExponentMismatch);
    CHECK_THROWS_AS(psi_embed(Endo::identity(B), A, std::initializer_list<std::size_t>{1, 1}),
                    ValidationError);
}

TEST_CASE("kernel: examples and the order identity") {
    PGroup A = PGroup::parse("2^1+2^2");
    CHECK(kernel(Endo::identity(A)).is_zero());
    CHECK(kernel(Endo::zero(A)) == Subgroup::full(A));

    // kernel(alpha_{1,2}) = 0 + Z(4), frozen from enumerating 8 elements.
    Subgroup k = kernel(alpha_mn(A, 0, 1));
    CHECK(k.order() == 4);
    CHECK(brute::member_set(k) == brute::kernel_set(alpha_mn(A, 0, 1)));
    CHECK(k.contains(A.element({0, 1})));
    CHECK(!k.contains(A.element({1, 0})));
}

TEST_CASE("kernel and image: |ker| * |im| = |A| exhaustively on small groups") {
    for (const char* lit : {"2^1+2^2", "2^3", "2^1+2^1", "3^1+3^1", "2^2+2^2"}) {
        PGroup A = PGroup::parse(lit);
        for (const auto& f : enumerate_endos(A)) {
            Subgroup ker = kernel(f);
            Subgroup im = image(f);
            CHECK(brute::member_set(ker) == brute::kernel_set(f));
            CHECK(brute::member_set(im) == brute::image_set(f));
            CHECK(*ker.order() * *im.order() == *A.order());
        }
    }
}

TEST_CASE("image examples") {
    PGroup A = PGroup::parse("2^1+2^2");
    CHECK(image(Endo::identity(A)) == Subgroup::full(A));
    Subgroup im = image(alpha_mn(A, 0, 1));
    CHECK(im.order() == 2);
    CHECK(im.contains(A.element({0, 2}))); // p^{n-m} multiples in the target
    CHECK(image(projection(A, {0})) == Subgroup::span(A, {A.generator(0)}));
}

TEST_CASE("invertibility") {
    PGroup A = PGroup::parse("2^1+2^2");
    CHECK(is_invertible(Endo::identity(A)));
    CHECK(!is_invertible(Endo::zero(A)));
    CHECK(is_invertible(Endo::identity(A) + alpha_mn(A, 0, 1))); // 1 + nilpotent

    // kernel-based, determinant-based and exact-inverse answers agree
    // exhaustively.
    for (const char* lit : {"2^1+2^2", "2^2", "3^1+3^1", "2^1+2^1+2^1"}) {
        PGroup B = PGroup::parse(lit);
        for (const auto& f : enumerate_endos(B)) {
            bool inv = is_invertible(f);
            CHECK(inv == is_unit_mod_p(f));
            auto h = inverse(f);
            CHECK(inv == h.has_value());
            if (h) CHECK(*h * f == Endo::identity(B));
        }
    }
}

TEST_CASE("endomorphism ring cardinality and enumeration") {
    CHECK(*endo_ring_order(PGroup::parse("2^1")) == 2);
    CHECK(*endo_ring_order(PGroup::parse("2^1+2^2")) == 32);
    CHECK(*endo_ring_order(PGroup::parse("2^1+2^2+2^3")) == 16384);

    PGroup A = PGroup::parse("2^1+2^2");
    auto all = enumerate_endos(A);
    CHECK(all.size() == 32);
    std::set<std::vector<u64>> distinct;
    for (const auto& f : all) distinct.insert(f.entries());
    CHECK(distinct.size() == 32);
    CHECK(endo_ring_card(A).order == 32);

    CHECK(enumerate_endos(PGroup::parse("2^1")).size() == 2);

    EnumLimits tight;
    tight.max_endos = 16;
    CHECK_THROWS_AS(enumerate_endos(A, tight), GuardExceeded);
}

TEST_CASE("left ideal decay of beta*alpha powers") {
    // (beta alpha)^s = 0 with s = ceil(K / (k_j - k_i)) in general; the
    // classical two-summand bound ceil(k_j / (k_j - k_i)) is its K = k_j case.
    Rng rng(47);
    for (const char* lit : {"2^1+2^2", "2^1+2^3", "2^1+2^2+2^3", "3^1+3^2"}) {
        PGroup A = PGroup::parse(lit);
        unsigned K = A.max_exponent();
        for (std::size_t i = 0; i < A.rank(); ++i)
            for (std::size_t j = 0; j < A.rank(); ++j) {
                if (A.exponent(i) >= A.exponent(j)) continue;
                Endo alpha = alpha_mn(A, i, j);
                unsigned d = A.exponent(j) - A.exponent(i);
                unsigned s = (K + d - 1) / d;
                for (int t = 0; t < 30; ++t) {
                    Endo beta = random_endo(A, rng);
                    CHECK((beta * alpha).pow(s).is_zero());
                }
            }
    }
}
