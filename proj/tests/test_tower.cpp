#include <doctest.h>

#include "brute.hpp"
#include "endoring/topology.hpp"
#include "endoring/tower.hpp"

using namespace endoring;

TEST_CASE("tower construction: rules and explicit lists") {
    TowerSpec rule = make_tower(2, "rule:i+1", 3);
    CHECK(rule.exponents == std::vector<unsigned>{1, 2, 3, 4});
    CHECK(rule.strictly_increasing());

    CHECK(build_stage(rule, 2).literal() == "2^1+2^2+2^3");
    CHECK(build_stage(rule, 0).literal() == "2^1");

    TowerSpec expl = make_tower(2, "1,3,7", 1);
    CHECK(build_stage(expl, 1).literal() == "2^1+2^3");

    TowerSpec flat = make_tower(2, "2,2,2", 2);
    CHECK(!flat.strictly_increasing());

    CHECK_THROWS_AS(build_stage(rule, 9), ValidationError);
    CHECK_THROWS_AS(make_tower(2, "1,2", 5), ValidationError); // list too short
    CHECK_THROWS_AS(make_tower(2, "rule:2i", 3), ParseError);
    CHECK_THROWS_AS(make_tower(2, "a,b", 1), ParseError);
}

TEST_CASE("gamma family") {
    TowerSpec T = make_tower(2, "rule:i+1", 4);
    auto gammas = gamma_family(T, 1);
    REQUIRE(gammas.size() == 1);
    CHECK(gammas[0].entry(1, 0) == 2); // p^{k_1 - k_0}

    auto g3 = gamma_family(T, 3);
    REQUIRE(g3.size() == 3);
    PGroup A = build_stage(T, 3);
    Endo sub = Endo::zero(A);
    for (unsigned i = 0; i < 3; ++i) {
        CHECK((g3[i] * g3[i]).is_zero());
        CHECK(radical_membership(g3[i]));
        // gamma_i is the corner embedding of the adjacent-pair alpha.
        PGroup B(T.p, {T.exponents[i], T.exponents[i + 1]});
        std::vector<std::size_t> pos{i, i + 1};
        CHECK(g3[i] == psi_embed(alpha_mn(B, 0, 1), A, pos));
        sub = sub + g3[i];
    }
    // Summable with the subdiagonal sum.
    auto sr = is_summable(SummableFamily{A, g3});
    CHECK(sr.sum == sub);
    CHECK(sr.sum == partial_sum(T, 3));

    CHECK_THROWS_AS(gamma_family(T, 0), ValidationError);
    TowerSpec flat = make_tower(2, "2,2,2", 2);
    CHECK_THROWS_AS(gamma_family(flat, 2), ValidationError);
}

TEST_CASE("partial sums are nilpotent radical members of exact index N+1") {
    TowerSpec T = make_tower(2, "rule:i+1", 6);
    for (unsigned N = 1; N <= 6; ++N) {
        Endo beta = partial_sum(T, N);
        CHECK(radical_membership(beta));
        CHECK(beta.pow(N + 1).is_zero());
        CHECK(!beta.pow(N).is_zero());
    }
    CHECK((partial_sum(T, 1) * partial_sum(T, 1)).is_zero());
}

TEST_CASE("quasi-inverse trace: the N = 1 worked example") {
    TowerSpec T = make_tower(2, "rule:i+1", 1);
    auto report = quasi_inverse_trace(T, 1);
    CHECK(report.stage == 1);
    CHECK(report.radical_member);
    CHECK(report.nilpotency == 2);
    CHECK(report.support == 1);
    CHECK(report.coordinates == std::vector<u64>{0, 2}); // (0, -2) = (0, 2) in Z(4)
}

TEST_CASE("quasi-inverse trace: coordinates follow (-1)^j p^{k_j - k_0}") {
    TowerSpec T = make_tower(2, "rule:i+1", 5);
    for (unsigned N = 1; N <= 5; ++N) {
        auto report = quasi_inverse_trace(T, N);
        CHECK(report.support == N);
        PGroup A = build_stage(T, N);
        REQUIRE(report.coordinates.size() == N + 1);
        CHECK(report.coordinates[0] == 0);
        for (unsigned j = 1; j <= N; ++j) {
            i64 expected = static_cast<i64>(pow_u64(2, T.exponents[j] - T.exponents[0]));
            if (j % 2 == 1) expected = -expected;
            CHECK(report.coordinates[j] == reduce_signed(expected, A.modulus(j)));
        }
        // The defining equation holds exactly on the embedded generator.
        Endo beta = partial_sum(T, N);
        GroupElement theta_hat = A.generator(0);
        GroupElement x(A, report.coordinates);
        CHECK((beta.apply(theta_hat) + x + beta.apply(x)).is_zero());
    }
}

TEST_CASE("quasi-inverse trace at an odd prime sees genuine sign alternation") {
    TowerSpec T = make_tower(3, "rule:i+1", 3);
    auto report = quasi_inverse_trace(T, 2);
    PGroup A = build_stage(T, 2);
    // x_1 = -3 mod 9 = 6; x_2 = +9 mod 27 = 9. Signs are visible mod 3^k.
    CHECK(report.coordinates == std::vector<u64>{0, 6, 9});
    CHECK(report.support == 2);
    (void)A;
}

TEST_CASE("quasi-inverse trace: stage 0 reports the zero endomorphism") {
    TowerSpec T = make_tower(2, "rule:i+1", 2);
    auto report = quasi_inverse_trace(T, 0);
    CHECK(report.stage == 0);
    CHECK(report.support == 0);
    CHECK(report.coordinates == std::vector<u64>{0});
}

TEST_CASE("stage restriction tables") {
    TowerSpec T = make_tower(2, "rule:i+1", 2);
    PGroup A = build_stage(T, 2); // 2^1+2^2+2^3
    Endo beta = partial_sum(T, 2);

    auto table_id = stage_restriction(Endo::identity(A), 1);
    CHECK(table_id.socle_gens == table_id.images);

    // f in T(A_n) iff the table is zero.
    for (const auto& x : {Endo::zero(A), beta, Endo::identity(A)}) {
        auto table = stage_restriction(x, 1);
        bool all_zero = true;
        for (const auto& img : table.images)
            if (!img.is_zero()) all_zero = false;
        CHECK(all_zero == NeighborhoodIdeal::socle_nbhd(A, 1).contains(x));
    }

    // beta_2 on A[2] sends the socle generators along the subdiagonal:
    // g_0 = theta_0 -> 2 theta_1, g_1 = 2 theta_1 -> 4 theta_2, g_2 -> 0.
    auto table = stage_restriction(beta, 1);
    REQUIRE(table.images.size() == 3);
    CHECK(table.images[0] == A.element({0, 2, 0}));
    CHECK(table.images[1] == A.element({0, 0, 4}));
    CHECK(table.images[2].is_zero());

    // Equal tables <=> difference kills the socle (sampled).
    Rng rng(67);
    for (int t = 0; t < 40; ++t) {
        Endo f = random_endo(A, rng), g = random_endo(A, rng);
        bool same_table = stage_restriction(f, 1) == stage_restriction(g, 1);
        CHECK(same_table == NeighborhoodIdeal::socle_nbhd(A, 1).contains(f - g));
    }
}

TEST_CASE("tower coherence: truncation commutes with socle restriction") {
    TowerSpec T = make_tower(2, "rule:i+1", 4);
    unsigned n = 1; // n <= k_0
    for (unsigned N = 1; N < 4; ++N) {
        PGroup big = build_stage(T, N + 1);
        PGroup small = build_stage(T, N);
        Endo beta_big = partial_sum(T, N + 1);
        Endo beta_small = partial_sum(T, N);
        auto table_big = stage_restriction(beta_big, n);
        auto table_small = stage_restriction(beta_small, n);
        // Project the first N+1 rows of the big table onto the first N+1
        // coordinates; they must agree with the small table.
        for (std::size_t i = 0; i < table_small.images.size(); ++i) {
            std::vector<u64> projected(table_big.images[i].coords().begin(),
                                       table_big.images[i].coords().begin() + small.rank());
            CHECK(GroupElement(small, projected) == table_small.images[i]);
        }
    }
}

TEST_CASE("divergence report") {
    TowerSpec T = make_tower(2, "rule:i+1", 5);
    auto report = divergence_report(T);
    CHECK(!report.bounded_regime);
    CHECK(report.support_law_holds);
    REQUIRE(report.stages.size() == 5);
    for (unsigned N = 1; N <= 5; ++N) {
        CHECK(report.stages[N - 1].stage == N);
        CHECK(report.stages[N - 1].support == N);
        CHECK(report.stages[N - 1].radical_member);
    }

    // Bounded control: constant exponents report the closed-radical regime.
    auto bounded = divergence_report(make_tower(2, "2,2,2,2", 3));
    CHECK(bounded.bounded_regime);
    CHECK(bounded.stages.empty());

    // Minimal run.
    CHECK(divergence_report(make_tower(2, "rule:i+1", 2)).stages.size() == 2);
    CHECK_THROWS_AS(divergence_report(make_tower(2, "rule:i+1", 1)), ValidationError);
}
