#include "endoring/serialize.hpp"

#include <cstdio>
#include <fstream>

namespace endoring {

namespace {

void require_keys(const json& j, std::initializer_list<const char*> keys,
                  const std::string& what) {
    if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool known = false;
        for (const char* k : keys)
            if (key == k) { known = true; break; }
        if (!known) throw ParseError(what + ": unknown field '" + key + "'");
    }
    for (const char* k : keys)
        if (!j.contains(k)) throw ParseError(what + ": missing field '" + std::string(k) + "'");
}

std::vector<i64> int_row(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": expected an array of integers");
    std::vector<i64> row;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError(what + ": expected an integer");
        row.push_back(v.get<i64>());
    }
    return row;
}

} // namespace

json endo_to_json(const Endo& f) {
    json rows = json::array();
    for (std::size_t i = 0; i < f.rank(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < f.rank(); ++j) row.push_back(f.entry(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"group", f.parent().literal()}, {"matrix", std::move(rows)}};
}

Endo endo_from_json(const json& j) {
    require_keys(j, {"group", "matrix"}, "endo");
    PGroup A = PGroup::parse(j.at("group").get<std::string>());
    std::vector<std::vector<i64>> m;
    for (const auto& row : j.at("matrix")) m.push_back(int_row(row, "endo matrix row"));
    return Endo::from_matrix(A, m);
}

json subgroup_to_json(const Subgroup& S) {
    json gens = json::array();
    for (const auto& g : S.generators()) gens.push_back(element_to_json(g));
    return json{{"group", S.parent().literal()}, {"generators", std::move(gens)}};
}

Subgroup subgroup_from_json(const json& j) {
    require_keys(j, {"group", "generators"}, "subgroup");
    PGroup A = PGroup::parse(j.at("group").get<std::string>());
    std::vector<GroupElement> gens;
    for (const auto& row : j.at("generators")) gens.push_back(element_from_json(A, row));
    return Subgroup::span(A, gens);
}

json element_to_json(const GroupElement& a) {
    json out = json::array();
    for (u64 c : a.coords()) out.push_back(c);
    return out;
}

GroupElement element_from_json(const PGroup& A, const json& j) {
    return A.element(int_row(j, "element"));
}

json config_to_json(const ExperimentConfig& c) {
    json j{{"command", c.command},
           {"seed", c.seed},
           {"output", c.output_path},
           {"format", c.format}};
    if (c.command == "radical") {
        j["radical"] = json{{"group", c.radical.group},
                            {"oracle", c.radical.oracle},
                            {"index", c.radical.index}};
    } else if (c.command == "tower") {
        j["tower"] = json{{"p", c.tower.p}, {"ks", c.tower.ks}, {"stages", c.tower.stages}};
    } else if (c.command == "topology") {
        j["topology"] = json{{"group", c.topology.group},
                             {"check", c.topology.check},
                             {"e", c.topology.endo_json},
                             {"v", c.topology.subgroup_json},
                             {"samples", c.topology.samples}};
    } else if (c.command == "quasiinv") {
        j["quasiinv"] = json{{"group", c.quasiinv.group}, {"endo", c.quasiinv.endo_json}};
    } else if (c.command == "oracle-battery") {
        j["battery"] = json{{"default", c.battery.use_default},
                            {"groups", c.battery.groups},
                            {"self_test_flip", c.battery.self_test_flip}};
    } else {
        throw ParseError("unknown command '" + c.command + "'");
    }
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    if (!j.is_object() || !j.contains("command"))
        throw ParseError("config: missing field 'command'");
    c.command = j.at("command").get<std::string>();
    const char* section = nullptr;
    if (c.command == "radical") section = "radical";
    else if (c.command == "tower") section = "tower";
    else if (c.command == "topology") section = "topology";
    else if (c.command == "quasiinv") section = "quasiinv";
    else if (c.command == "oracle-battery") section = "battery";
    else throw ParseError("config: unknown command '" + c.command + "'");
    require_keys(j, {"command", "seed", "output", "format", section}, "config");
    c.seed = j.at("seed").get<u64>();
    c.output_path = j.at("output").get<std::string>();
    c.format = j.at("format").get<std::string>();
    if (c.format != "json" && c.format != "csv")
        throw ParseError("config: format must be json or csv");
    const json& s = j.at(section);
    if (c.command == "radical") {
        require_keys(s, {"group", "oracle", "index"}, "config.radical");
        c.radical.group = s.at("group").get<std::string>();
        c.radical.oracle = s.at("oracle").get<bool>();
        c.radical.index = s.at("index").get<bool>();
    } else if (c.command == "tower") {
        require_keys(s, {"p", "ks", "stages"}, "config.tower");
        c.tower.p = s.at("p").get<u64>();
        c.tower.ks = s.at("ks").get<std::string>();
        c.tower.stages = s.at("stages").get<unsigned>();
    } else if (c.command == "topology") {
        require_keys(s, {"group", "check", "e", "v", "samples"}, "config.topology");
        c.topology.group = s.at("group").get<std::string>();
        c.topology.check = s.at("check").get<std::string>();
        c.topology.endo_json = s.at("e").get<std::string>();
        c.topology.subgroup_json = s.at("v").get<std::string>();
        c.topology.samples = s.at("samples").get<u64>();
    } else if (c.command == "quasiinv") {
        require_keys(s, {"group", "endo"}, "config.quasiinv");
        c.quasiinv.group = s.at("group").get<std::string>();
        c.quasiinv.endo_json = s.at("endo").get<std::string>();
    } else {
        require_keys(s, {"default", "groups", "self_test_flip"}, "config.battery");
        c.battery.use_default = s.at("default").get<bool>();
        c.battery.groups = s.at("groups").get<std::vector<std::string>>();
        c.battery.self_test_flip = s.at("self_test_flip").get<bool>();
    }
    return c;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.flush()) throw IoError("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

} // namespace endoring
