#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "holocode/network.hpp"

namespace holocode {

// File-system failures carry their own type so callers can map them to a
// distinct process exit code.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Serialises a code as a JSON bundle. Keys are emitted in insertion order so
// rebuilding the same code yields byte-identical text.
inline nlohmann::ordered_json code_to_json(const HolographicCode& code) {
    nlohmann::ordered_json j;
    j["schlafli"] = {code.p, code.q};
    j["n"] = code.n_layers;
    j["hadamard_edges"] = code.hadamard_edges;
    j["gauge"] = code.gauge;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& row : code.checks.rows) {
        checks.push_back(row.str());
    }
    j["checks"] = std::move(checks);
    nlohmann::ordered_json logicals = nlohmann::ordered_json::array();
    for (const auto& l : code.logicals) {
        nlohmann::ordered_json entry;
        entry["bulk"] = l.bulk_label;
        entry["X"] = l.x_rep.str();
        entry["Z"] = l.z_rep.str();
        logicals.push_back(std::move(entry));
    }
    j["logicals"] = std::move(logicals);
    j["boundary_order"] = code.boundary_labels;
    return j;
}

inline std::string code_to_bundle(const HolographicCode& code) {
    return code_to_json(code).dump(2) + "\n";
}

inline HolographicCode code_from_json(const nlohmann::json& j) {
    HolographicCode code;
    code.p = j.at("schlafli").at(0).get<int>();
    code.q = j.at("schlafli").at(1).get<int>();
    code.n_layers = j.at("n").get<size_t>();
    code.hadamard_edges = j.at("hadamard_edges").get<bool>();
    code.gauge = j.at("gauge").get<std::string>();
    code.boundary_labels = j.at("boundary_order").get<std::vector<std::string>>();
    code.n_boundary = code.boundary_labels.size();
    code.checks = CheckMatrix(code.n_boundary);
    for (const auto& s : j.at("checks")) {
        code.checks.push(PauliString::from_string(s.get<std::string>()));
    }
    for (const auto& entry : j.at("logicals")) {
        LogicalPair pair;
        pair.bulk_label = entry.at("bulk").get<std::string>();
        pair.x_rep = PauliString::from_string(entry.at("X").get<std::string>());
        pair.z_rep = PauliString::from_string(entry.at("Z").get<std::string>());
        code.logicals.push_back(std::move(pair));
        code.bulk_labels.push_back(code.logicals.back().bulk_label);
    }
    code.n_bulk = code.logicals.size();
    return code;
}

inline HolographicCode read_bundle(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open bundle: " + path);
    }
    nlohmann::json j;
    in >> j;
    return code_from_json(j);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write file: " + path);
    }
    out << text;
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace holocode
