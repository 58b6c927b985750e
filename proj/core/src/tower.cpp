#include "endoring/tower.hpp"

#include <charconv>

namespace endoring {

bool TowerSpec::strictly_increasing() const {
    for (std::size_t i = 0; i + 1 < exponents.size(); ++i)
        if (exponents[i] >= exponents[i + 1]) return false;
    return true;
}

TowerSpec make_tower(u64 p, const std::string& ks, unsigned stages) {
    TowerSpec spec;
    spec.p = p;
    spec.stages = stages;
    spec.ks_spec = ks;
    if (ks.rfind("rule:", 0) == 0) {
        std::string body = ks.substr(5);
        // Linear rule k_i = i + b, written "i+b".
        if (body.rfind("i+", 0) != 0)
            throw ParseError("unsupported tower rule '" + ks + "' (expected rule:i+<b>)");
        unsigned b = 0;
        auto r = std::from_chars(body.data() + 2, body.data() + body.size(), b);
        if (r.ec != std::errc{} || r.ptr != body.data() + body.size() || b < 1)
            throw ParseError("cannot parse tower rule offset in '" + ks + "'");
        for (unsigned i = 0; i <= stages; ++i) spec.exponents.push_back(i + b);
    } else {
        std::size_t pos = 0;
        while (pos <= ks.size()) {
            std::size_t next = ks.find(',', pos);
            std::string term = ks.substr(pos, next == std::string::npos ? std::string::npos
                                                                        : next - pos);
            unsigned k = 0;
            auto r = std::from_chars(term.data(), term.data() + term.size(), k);
            if (r.ec != std::errc{} || r.ptr != term.data() + term.size() || k < 1)
                throw ParseError("cannot parse tower exponent '" + term + "'");
            spec.exponents.push_back(k);
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (spec.exponents.size() < static_cast<std::size_t>(stages) + 1)
            throw ValidationError("StageRange: explicit list provides " +
                                  std::to_string(spec.exponents.size()) + " exponents, need " +
                                  std::to_string(stages + 1));
    }
    for (unsigned k : spec.exponents)
        if (!pow_checked(p, k))
            throw ValidationError("ModulusOverflow: p^" + std::to_string(k) +
                                  " does not fit in 64-bit arithmetic");
    return spec;
}

PGroup build_stage(const TowerSpec& T, unsigned N) {
    if (N > T.stages)
        throw ValidationError("StageRange: N = " + std::to_string(N) + " exceeds stages = " +
                              std::to_string(T.stages));
    std::vector<unsigned> exps(T.exponents.begin(), T.exponents.begin() + N + 1);
    return PGroup(T.p, std::move(exps));
}

std::vector<Endo> gamma_family(const TowerSpec& T, unsigned N) {
    if (N < 1) throw ValidationError("StageRange: gamma family needs N >= 1");
    PGroup A = build_stage(T, N);
    std::vector<Endo> gammas;
    for (unsigned i = 0; i < N; ++i) {
        if (T.exponents[i] >= T.exponents[i + 1])
            throw ValidationError("BoundedRegime: exponents are not strictly increasing at pair " +
                                  std::to_string(i));
        gammas.push_back(alpha_mn(A, i, i + 1));
    }
    return gammas;
}

Endo partial_sum(const TowerSpec& T, unsigned N) {
    auto gammas = gamma_family(T, N);
    Endo beta = Endo::zero(build_stage(T, N));
    for (const auto& g : gammas) beta = beta + g;
    return beta;
}

StageReport quasi_inverse_trace(const TowerSpec& T, unsigned N) {
    StageReport report;
    report.stage = N;
    if (N == 0) {
        // beta is undefined at stage 0; report the zero endomorphism.
        PGroup A = build_stage(T, 0);
        report.radical_member = true;
        report.nilpotency = 1;
        report.support = 0;
        report.coordinates = A.zero().coords();
        return report;
    }
    PGroup A = build_stage(T, N);
    Endo beta = partial_sum(T, N);
    report.radical_member = radical_membership(beta);
    Endo power = beta;
    unsigned t = 1;
    while (!power.is_zero()) {
        power = power * beta;
        ++t;
    }
    report.nilpotency = t;
    auto qi = quasi_inverse(beta);
    GroupElement theta_hat = A.generator(0);
    GroupElement traced = qi.witness->apply(theta_hat);
    report.coordinates = traced.coords();
    for (u64 c : report.coordinates)
        if (c != 0) ++report.support;
    return report;
}

RestrictionTable stage_restriction(const Endo& f, unsigned n) {
    RestrictionTable table;
    table.socle_gens = socle_generators(f.parent(), n);
    for (const auto& g : table.socle_gens) table.images.push_back(f.apply(g));
    return table;
}

DivergenceReport divergence_report(const TowerSpec& T) {
    if (T.stages < 2) throw ValidationError("StageRange: divergence report needs stages >= 2");
    DivergenceReport report;
    if (!T.strictly_increasing()) {
        // Bounded control: no strictly increasing pair, the radical-closed
        // regime. There is nothing to diverge.
        report.bounded_regime = true;
        return report;
    }
    for (unsigned N = 1; N <= T.stages; ++N) {
        report.stages.push_back(quasi_inverse_trace(T, N));
        if (report.stages.back().support != N) report.support_law_holds = false;
    }
    return report;
}

} // namespace endoring
