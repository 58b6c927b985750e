// endoring: exact experiments on endomorphism rings of finite abelian
// p-groups. Subcommands: radical, tower, topology, quasiinv, oracle-battery,
// run (execute a serialized config).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "endoring/radical.hpp"
#include "endoring/serialize.hpp"
#include "endoring/topology.hpp"
#include "endoring/tower.hpp"

namespace {

using namespace endoring;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitGuard = 4;

/// Inline JSON, or @path to load from a file.
json load_json_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw IoError("cannot open '" + arg.substr(1) + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON in '" + arg + "'");
    return j;
}

void emit(const ExperimentConfig& cfg, const std::string& content) {
    if (cfg.output_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        write_file_atomic(cfg.output_path, content);
    }
}

json provenance(const std::string& group_literal) {
    return json{{"tool_version", kToolVersion}, {"group", group_literal}};
}

int run_radical(const ExperimentConfig& cfg, const EnumLimits& limits) {
    PGroup A = PGroup::parse(cfg.radical.group);
    json out = provenance(A.literal());

    auto order_end = endo_ring_order(A);
    if (order_end) out["order_end"] = *order_end;
    else out["order_end"] = nullptr;

    auto order_rad = radical_order(A);
    if (order_rad) out["order_radical"] = *order_rad;
    else out["order_radical"] = nullptr;

    if (cfg.radical.oracle) {
        auto members = radical_oracle(A, limits);
        out["order_radical"] = members.size();
        bool agrees = true;
        for (const auto& x : enumerate_endos(A, limits)) {
            bool in_oracle = std::find(members.begin(), members.end(), x) != members.end();
            if (in_oracle != radical_membership(x)) {
                agrees = false;
                break;
            }
        }
        out["criterion_agrees_oracle"] = agrees;
    } else {
        out["criterion_agrees_oracle"] = "skipped";
    }

    if (cfg.radical.index) out["nilpotency_index"] = nilpotency_index(A);
    else out["nilpotency_index"] = nullptr;

    emit(cfg, out.dump(2));
    return kExitOk;
}

std::string tower_csv(const DivergenceReport& report) {
    std::ostringstream csv;
    csv << "stage,radical_member,nilpotency,support,coordinates\n";
    for (const auto& s : report.stages) {
        csv << s.stage << ',' << (s.radical_member ? "true" : "false") << ',' << s.nilpotency
            << ',' << s.support << ',';
        for (std::size_t i = 0; i < s.coordinates.size(); ++i) {
            if (i) csv << ';';
            csv << s.coordinates[i];
        }
        csv << '\n';
    }
    return csv.str();
}

int run_tower(const ExperimentConfig& cfg, const EnumLimits&) {
    TowerSpec spec = make_tower(cfg.tower.p, cfg.tower.ks, cfg.tower.stages);
    DivergenceReport report = divergence_report(spec);
    if (cfg.format == "csv") {
        emit(cfg, tower_csv(report));
        return kExitOk;
    }
    json out = provenance(build_stage(spec, spec.stages).literal());
    out["p"] = spec.p;
    out["ks"] = spec.ks_spec;
    out["stages"] = spec.stages;
    if (report.bounded_regime) {
        out["regime"] = "bounded: radical closed regime";
    } else {
        out["regime"] = "unbounded";
        out["support_law_holds"] = report.support_law_holds;
        json stages = json::array();
        for (const auto& s : report.stages) {
            stages.push_back(json{{"stage", s.stage},
                                  {"radical_member", s.radical_member},
                                  {"nilpotency", s.nilpotency},
                                  {"support", s.support},
                                  {"coordinates", s.coordinates}});
        }
        out["reports"] = std::move(stages);
    }
    emit(cfg, out.dump(2));
    return kExitOk;
}

int run_topology(const ExperimentConfig& cfg, const EnumLimits& limits) {
    PGroup A = PGroup::parse(cfg.topology.group);
    json out = provenance(A.literal());
    out["check"] = cfg.topology.check;

    if (cfg.topology.check == "admissible") {
        // For each cyclic generator set {a}: the socle neighborhood at the
        // least n with p^n a = 0 must sit inside T({a}).
        bool all_contained = true;
        json failures = json::array();
        u64 cases = 0;
        for (const auto& a : A.elements(limits)) {
            std::vector<GroupElement> K{a};
            unsigned n = a.order_exponent();
            auto inner = NeighborhoodIdeal::socle_nbhd(A, n);
            auto outer = NeighborhoodIdeal::finite_set(A, K);
            auto res = decide_containment(inner, outer, limits, cfg.seed);
            ++cases;
            if (res.verdict == ContainmentResult::Verdict::NotContained) {
                all_contained = false;
                failures.push_back(json{{"element", element_to_json(a)},
                                        {"n", n},
                                        {"witness", endo_to_json(*res.witness)}});
            }
        }
        out["cases"] = cases;
        out["all_contained"] = all_contained;
        out["failures"] = std::move(failures);
        emit(cfg, out.dump(2));
        return all_contained ? kExitOk : 1;
    }

    if (cfg.topology.check == "annl") {
        bool all_hold = true;
        u64 checked = 0;
        if (!cfg.topology.endo_json.empty()) {
            Endo e = endo_from_json(load_json_arg(cfg.topology.endo_json));
            if (e.parent() != A) throw ValidationError("GroupMismatch: --e is over another group");
            all_hold = annl_identity_check(A, e, limits);
            checked = 1;
        } else {
            for (const auto& e : enumerate_endos(A, limits)) {
                if (!(e * e == e)) continue;
                ++checked;
                if (!annl_identity_check(A, e, limits)) {
                    all_hold = false;
                    out["failure_idempotent"] = endo_to_json(e);
                    break;
                }
            }
        }
        out["idempotents_checked"] = checked;
        out["holds"] = all_hold;
        emit(cfg, out.dump(2));
        return all_hold ? kExitOk : 1;
    }

    if (cfg.topology.check == "pv-ideal") {
        Subgroup V = cfg.topology.subgroup_json.empty()
                         ? Subgroup::full(A)
                         : subgroup_from_json(load_json_arg(cfg.topology.subgroup_json));
        if (V.parent() != A) throw ValidationError("GroupMismatch: --v is over another group");
        bool closure = pv_right_ideal_check(A, V, cfg.topology.samples, cfg.seed, limits);
        out["closure_and_monotonicity"] = closure;
        auto n = endo_ring_order(A);
        if (n && *n <= limits.max_endos && A.order() && *A.order() <= limits.max_elements) {
            out["hausdorff_intersection"] = hausdorff_pv_intersection(A, limits);
        } else {
            out["hausdorff_intersection"] = "skipped";
        }
        bool ok = closure && (out["hausdorff_intersection"] != json(false));
        emit(cfg, out.dump(2));
        return ok ? kExitOk : 1;
    }

    throw ValidationError("UnknownCheck: --check must be admissible, annl or pv-ideal");
}

int run_quasiinv(const ExperimentConfig& cfg, const EnumLimits&) {
    Endo x = endo_from_json(load_json_arg(cfg.quasiinv.endo_json));
    if (!cfg.quasiinv.group.empty()) {
        PGroup A = PGroup::parse(cfg.quasiinv.group);
        if (x.parent() != A) throw ValidationError("GroupMismatch: --endo is over another group");
    }
    json out = provenance(x.parent().literal());
    auto res = quasi_inverse(x);
    out["exists"] = res.exists;
    if (res.exists) {
        out["witness"] = endo_to_json(*res.witness);
        out["verified"] = (x + *res.witness + x * *res.witness).is_zero();
    } else {
        out["witness"] = nullptr;
        out["verified"] = nullptr;
    }
    emit(cfg, out.dump(2));
    return kExitOk;
}

int run_battery(const ExperimentConfig& cfg, const EnumLimits& limits) {
    std::vector<PGroup> battery;
    if (cfg.battery.use_default) {
        battery = default_oracle_battery();
    } else {
        for (const auto& literal : cfg.battery.groups) battery.push_back(PGroup::parse(literal));
    }
    if (battery.empty()) throw ValidationError("EmptyBattery: no groups to check");

    json rows = json::array();
    bool all_pass = true;
    std::optional<json> first_witness;
    for (const auto& A : battery) {
        auto members = radical_oracle(A, limits);
        std::set<std::vector<u64>> member_set;
        for (const auto& m : members) member_set.insert(m.entries());
        bool agrees = true;
        for (const auto& x : enumerate_endos(A, limits)) {
            bool criterion = radical_membership(x);
            if (cfg.battery.self_test_flip) criterion = !criterion;
            if (criterion != (member_set.count(x.entries()) > 0)) {
                agrees = false;
                if (!first_witness)
                    first_witness = json{{"group", A.literal()}, {"endo", endo_to_json(x)}};
                break;
            }
        }
        auto expected = radical_order(A);
        bool count_law = expected && *expected == members.size();
        rows.push_back(json{{"group", A.literal()},
                            {"order_end", *endo_ring_order(A)},
                            {"order_radical", members.size()},
                            {"criterion_agrees_oracle", agrees},
                            {"count_law_holds", count_law}});
        all_pass = all_pass && agrees && count_law;
    }
    json out{{"tool_version", kToolVersion}, {"battery", std::move(rows)}, {"pass", all_pass}};
    if (first_witness) out["witness"] = *first_witness;
    emit(cfg, out.dump(2));
    return all_pass ? kExitOk : 1;
}

int dispatch(const ExperimentConfig& cfg) {
    EnumLimits limits = EnumLimits::from_env();
    if (cfg.command == "radical") return run_radical(cfg, limits);
    if (cfg.command == "tower") return run_tower(cfg, limits);
    if (cfg.command == "topology") return run_topology(cfg, limits);
    if (cfg.command == "quasiinv") return run_quasiinv(cfg, limits);
    if (cfg.command == "oracle-battery") return run_battery(cfg, limits);
    throw ValidationError("UnknownCommand: " + cfg.command);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations in endomorphism rings of finite abelian p-groups"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", cfg.seed, "seed for randomized searches")->capture_default_str();
        cmd->add_option("--out", cfg.output_path, "output file (default: stdout)");
        cmd->add_option("--format", cfg.format, "json or csv")->capture_default_str();
    };

    auto* radical = app.add_subcommand("radical", "radical order, oracle agreement, nilpotency");
    radical->add_option("--group", cfg.radical.group, "group literal, e.g. 2^1+2^2")->required();
    radical->add_flag("--oracle", cfg.radical.oracle, "run the exhaustive radical oracle");
    radical->add_flag("--index", cfg.radical.index, "compute the nilpotency index");
    add_common(radical);

    auto* tower = app.add_subcommand("tower", "finite-stage divergence experiment");
    tower->add_option("--p", cfg.tower.p, "prime")->capture_default_str();
    tower->add_option("--ks", cfg.tower.ks, "exponent list '1,2,3' or rule:i+1")
        ->capture_default_str();
    tower->add_option("--stages", cfg.tower.stages, "maximum stage N")->capture_default_str();
    std::string csv_path;
    tower->add_option("--csv", csv_path, "write the stage table as CSV to this path");
    add_common(tower);

    auto* topology = app.add_subcommand("topology", "neighborhood-ideal checks");
    topology->add_option("--group", cfg.topology.group, "group literal")->required();
    topology->add_option("--check", cfg.topology.check, "admissible | annl | pv-ideal")
        ->required();
    topology->add_option("--e", cfg.topology.endo_json, "idempotent as endo JSON (or @file)");
    topology->add_option("--v", cfg.topology.subgroup_json, "subgroup JSON (or @file)");
    topology->add_option("--samples", cfg.topology.samples, "sample count for randomized checks")
        ->capture_default_str();
    add_common(topology);

    auto* quasiinv = app.add_subcommand("quasiinv", "quasi-inverse of an endomorphism");
    quasiinv->add_option("--group", cfg.quasiinv.group, "group literal (optional cross-check)");
    quasiinv->add_option("--endo", cfg.quasiinv.endo_json, "endo JSON (or @file)")->required();
    add_common(quasiinv);

    auto* battery = app.add_subcommand("oracle-battery", "criterion-vs-oracle validation battery");
    std::string battery_file;
    battery->add_option("--battery", battery_file, "JSON array of group literals (or @-less path)");
    battery->add_flag("--self-test-flip", cfg.battery.self_test_flip,
                      "harness self-test: flip the criterion and expect failure");
    add_common(battery);

    auto* runcmd = app.add_subcommand("run", "execute a serialized experiment config");
    runcmd->add_option("--config", config_path, "path to an ExperimentConfig JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (runcmd->parsed()) {
            std::ifstream in(config_path);
            if (!in) throw IoError("cannot open '" + config_path + "'");
            json j = json::parse(in, nullptr, false);
            if (j.is_discarded()) throw ParseError("invalid JSON config in '" + config_path + "'");
            return dispatch(config_from_json(j));
        }
        if (radical->parsed()) cfg.command = "radical";
        if (tower->parsed()) {
            cfg.command = "tower";
            if (!csv_path.empty()) {
                cfg.format = "csv";
                cfg.output_path = csv_path;
            }
        }
        if (topology->parsed()) cfg.command = "topology";
        if (quasiinv->parsed()) cfg.command = "quasiinv";
        if (battery->parsed()) {
            cfg.command = "oracle-battery";
            if (!battery_file.empty()) {
                json j = load_json_arg(battery_file[0] == '@' ? battery_file : "@" + battery_file);
                if (!j.is_array()) throw ParseError("battery file must be a JSON array");
                cfg.battery.use_default = false;
                cfg.battery.groups = j.get<std::vector<std::string>>();
            }
        }
        return dispatch(cfg);
    } catch (const GuardExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
