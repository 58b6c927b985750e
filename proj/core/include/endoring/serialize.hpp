#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "endoring/endo.hpp"
#include "endoring/tower.hpp"

namespace endoring {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// {"group": "<literal>", "matrix": [[...], ...]}
json endo_to_json(const Endo& f);
Endo endo_from_json(const json& j);

/// {"group": "<literal>", "generators": [[...], ...]}
json subgroup_to_json(const Subgroup& S);
Subgroup subgroup_from_json(const json& j);

json element_to_json(const GroupElement& a);
GroupElement element_from_json(const PGroup& A, const json& j);

/// One experiment invocation. Serialization is strict: unknown fields are
/// rejected, and a config round-trips bit-exactly through JSON.
struct RadicalOptions {
    std::string group;
    bool oracle = false;
    bool index = false;
    bool operator==(const RadicalOptions&) const = default;
};
struct TowerOptions {
    u64 p = 2;
    std::string ks = "rule:i+1";
    unsigned stages = 5;
    bool operator==(const TowerOptions&) const = default;
};
struct TopologyOptions {
    std::string group;
    std::string check; // admissible | annl | pv-ideal
    std::string endo_json;     // inline JSON for --e, empty when unset
    std::string subgroup_json; // inline JSON for --v, empty when unset
    u64 samples = 64;
    bool operator==(const TopologyOptions&) const = default;
};
struct QuasiInvOptions {
    std::string group;
    std::string endo_json;
    bool operator==(const QuasiInvOptions&) const = default;
};
struct BatteryOptions {
    bool use_default = true;
    std::vector<std::string> groups; // used when use_default is false
    bool self_test_flip = false;
    bool operator==(const BatteryOptions&) const = default;
};

struct ExperimentConfig {
    std::string command; // radical | tower | topology | quasiinv | oracle-battery
    u64 seed = 0;
    std::string output_path; // empty: stdout
    std::string format = "json"; // json | csv

    RadicalOptions radical;
    TowerOptions tower;
    TopologyOptions topology;
    QuasiInvOptions quasiinv;
    BatteryOptions battery;

    bool operator==(const ExperimentConfig&) const = default;
};

json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const json& j);

/// Writes via a temp file plus rename so partial output never lands.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace endoring
