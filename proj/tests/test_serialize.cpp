#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "endoring/serialize.hpp"

using namespace endoring;

TEST_CASE("endo JSON round-trip and schema strictness") {
    PGroup A = PGroup::parse("2^1+2^2");
    Endo f = alpha_mn(A, 0, 1);
    json j = endo_to_json(f);
    CHECK(j.at("group") == "2^1+2^2");
    CHECK(endo_from_json(j) == f);

    json bad = j;
    bad["extra"] = 1;
    CHECK_THROWS_AS(endo_from_json(bad), ParseError);
    CHECK_THROWS_AS(endo_from_json(json{{"group", "2^1+2^2"}}), ParseError);
    // Constraint violations surface on load.
    json invalid = json{{"group", "2^1+2^2"}, {"matrix", {{0, 0}, {1, 0}}}};
    CHECK_THROWS_AS(endo_from_json(invalid), DivisibilityViolation);
}

TEST_CASE("subgroup JSON round-trip") {
    PGroup A = PGroup::parse("2^2+2^1");
    Subgroup S = Subgroup::span(A, {A.element({2, 1})});
    json j = subgroup_to_json(S);
    CHECK(subgroup_from_json(j) == S);
    CHECK_THROWS_AS(subgroup_from_json(json::object()), ParseError);
}

TEST_CASE("element JSON uses plain integer arrays") {
    PGroup A = PGroup::parse("2^1+2^2");
    GroupElement a = A.element({1, 3});
    json j = element_to_json(a);
    CHECK(j == json::array({1, 3}));
    CHECK(element_from_json(A, j) == a);
    CHECK(element_from_json(A, json::array({-1, -1})) == A.element({1, 3}));
}

TEST_CASE("experiment configs round-trip bit-exactly") {
    ExperimentConfig radical;
    radical.command = "radical";
    radical.radical.group = "2^1+2^2";
    radical.radical.oracle = true;
    CHECK(config_from_json(config_to_json(radical)) == radical);

    ExperimentConfig tower;
    tower.command = "tower";
    tower.seed = 7;
    tower.format = "csv";
    tower.output_path = "out.csv";
    tower.tower = TowerOptions{2, "rule:i+1", 6};
    CHECK(config_from_json(config_to_json(tower)) == tower);

    ExperimentConfig topology;
    topology.command = "topology";
    topology.topology.group = "2^1+2^1+2^1";
    topology.topology.check = "pv-ideal";
    topology.topology.samples = 32;
    CHECK(config_from_json(config_to_json(topology)) == topology);

    ExperimentConfig quasiinv;
    quasiinv.command = "quasiinv";
    quasiinv.quasiinv.group = "2^2";
    quasiinv.quasiinv.endo_json = "{\"group\":\"2^2\",\"matrix\":[[2]]}";
    CHECK(config_from_json(config_to_json(quasiinv)) == quasiinv);

    ExperimentConfig battery;
    battery.command = "oracle-battery";
    battery.battery.use_default = false;
    battery.battery.groups = {"2^1", "2^2"};
    CHECK(config_from_json(config_to_json(battery)) == battery);
}

TEST_CASE("unknown config fields are rejected") {
    ExperimentConfig c;
    c.command = "radical";
    c.radical.group = "2^1";
    json j = config_to_json(c);
    j["surprise"] = true;
    CHECK_THROWS_AS(config_from_json(j), ParseError);

    json j2 = config_to_json(c);
    j2["radical"]["surprise"] = true;
    CHECK_THROWS_AS(config_from_json(j2), ParseError);

    json j3 = config_to_json(c);
    j3["format"] = "xml";
    CHECK_THROWS_AS(config_from_json(j3), ParseError);

    CHECK_THROWS_AS(config_from_json(json{{"command", "unknown"}}), ParseError);
}

TEST_CASE("atomic file writes land complete") {
    std::string path = "serialize_test_output.json";
    write_file_atomic(path, "{}\n");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "{}\n");
    std::remove(path.c_str());
}
