#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fairsched/scenario.hpp"

namespace fairsched {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioValidationError : std::runtime_error {
    ScenarioValidationError(std::string msg, ValidationReport rep)
        : std::runtime_error(std::move(msg)), report(std::move(rep)) {}
    ValidationReport report;
};

inline std::string render(const ValidationReport& report) {
    std::ostringstream os;
    for (const auto& v : report.violations) os << v.code << ": " << v.detail << "\n";
    return os.str();
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario s;
    try {
        for (const auto& name : j.at("resources")) s.resource_names.push_back(name.get<std::string>());
        for (const auto& srv : j.at("servers")) {
            ServerSpec spec;
            spec.id = srv.at("id").get<int>();
            for (const auto& c : srv.at("capacity")) spec.capacity.push_back(c.get<double>());
            s.servers.push_back(std::move(spec));
        }
        for (const auto& fw : j.at("frameworks")) {
            FrameworkSpec spec;
            spec.id = fw.at("id").get<int>();
            for (const auto& d : fw.at("demand")) spec.demand.push_back(d.get<double>());
            if (fw.contains("priority")) spec.priority = fw.at("priority").get<double>();
            if (fw.contains("allowed_servers"))
                for (const auto& id : fw.at("allowed_servers"))
                    spec.allowed_servers.push_back(id.get<int>());
            s.frameworks.push_back(std::move(spec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario parse error: ") + e.what());
    }
    return s;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario parse error: ") + e.what());
    }
    Scenario s = scenario_from_json(j);
    ValidationReport report = validate(s);
    if (!report.ok())
        throw ScenarioValidationError("invalid scenario " + path + ":\n" + render(report),
                                      report);
    return s;
}

inline nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    j["resources"] = s.resource_names;
    j["servers"] = nlohmann::json::array();
    for (const auto& srv : s.servers)
        j["servers"].push_back({{"id", srv.id}, {"capacity", srv.capacity}});
    j["frameworks"] = nlohmann::json::array();
    for (const auto& fw : s.frameworks) {
        nlohmann::json f = {{"id", fw.id}, {"demand", fw.demand}, {"priority", fw.priority}};
        if (!fw.allowed_servers.empty()) f["allowed_servers"] = fw.allowed_servers;
        j["frameworks"].push_back(std::move(f));
    }
    return j;
}

// Shortest round-trip decimal rendering; bit-stable across platforms and
// locale-free.
inline std::string format_double(double v, int significant = -1) {
    char buf[64];
    std::to_chars_result res =
        significant < 0
            ? std::to_chars(buf, buf + sizeof(buf), v)
            : std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                            significant);
    return std::string(buf, res.ptr);
}

}  // namespace fairsched
