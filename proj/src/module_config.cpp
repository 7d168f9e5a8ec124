#include "qpmod/module_config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qpmod {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(2, "module config: " + msg); }

Scalar scalar_of(const json& j, const std::string& where) {
    if (!j.is_string()) bad(where + " must be a string scalar");
    try {
        return Scalar::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        bad(where + ": " + e.what());
    }
}

int int_field(const json& doc, const char* key) {
    if (!doc.contains(key)) bad(std::string("missing key \"") + key + "\"");
    const json& v = doc.at(key);
    if (!v.is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
    return v.get<int>();
}

std::string key_of(int a, int b) { return "E_" + std::to_string(a) + "_" + std::to_string(b); }

}  // namespace

ModuleConfig parse_module_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("top level must be an object");
    int m = int_field(doc, "m");
    int n = int_field(doc, "n");
    int dim = int_field(doc, "dim");
    if (m < 1 || m >= kMaxEven) bad("m must be in 1.." + std::to_string(kMaxEven - 1));
    if (n < 1 || n > kMaxOdd) bad("n must be in 1.." + std::to_string(kMaxOdd));
    if (dim < 0) bad("dim must be non-negative");
    if (!doc.contains("parity") || !doc["parity"].is_array()) bad("missing array \"parity\"");
    if (int(doc["parity"].size()) != dim)
        bad("parity has " + std::to_string(doc["parity"].size()) + " entries, dim is " + std::to_string(dim));
    std::vector<int> par;
    for (const auto& p : doc["parity"]) {
        if (!p.is_number_integer() || (p.get<int>() != 0 && p.get<int>() != 1)) bad("parity entries must be 0 or 1");
        par.push_back(p.get<int>());
    }
    if (!doc.contains("mu") || !doc["mu"].is_array()) bad("missing array \"mu\"");
    MuVector mu;
    for (std::size_t i = 0; i < doc["mu"].size(); ++i) mu.push_back(scalar_of(doc["mu"][i], "mu[" + std::to_string(i) + "]"));
    try {
        check_mu(m, n, mu);
    } catch (const AlgebraError& e) {
        bad(e.what());
    }
    if (!doc.contains("action") || !doc["action"].is_object()) bad("missing object \"action\"");
    const json& action = doc["action"];
    GlModule omega(m, n, par);
    int N = m + n + 1;
    std::vector<std::string> missing;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            if (!action.contains(key_of(a, b))) missing.push_back(key_of(a, b));
    if (!missing.empty()) {
        std::string list;
        for (const auto& k : missing) list += (list.empty() ? "" : ", ") + k;
        bad("missing action keys: " + list);
    }
    for (const auto& [key, val] : action.items()) {
        int a = -1, b = -1;
        char tail = 0;
        if (std::sscanf(key.c_str(), "E_%d_%d%c", &a, &b, &tail) != 2 || a < 0 || b < 0 || a >= N || b >= N ||
            key != key_of(a, b))
            bad("unknown action key \"" + key + "\"");
        if (!val.is_array() || int(val.size()) != dim) bad(key + " must have " + std::to_string(dim) + " rows");
        for (int r = 0; r < dim; ++r) {
            const json& row = val[std::size_t(r)];
            if (!row.is_array() || int(row.size()) != dim)
                bad(key + " row " + std::to_string(r) + " must have " + std::to_string(dim) + " entries");
            for (int c = 0; c < dim; ++c)
                omega.act(a, b).at(r, c) = scalar_of(row[std::size_t(c)], key + "[" + std::to_string(r) + "][" +
                                                                                   std::to_string(c) + "]");
        }
    }
    RepReport rep = rep_check(omega);
    if (!rep.ok()) {
        std::string msg = "rep_check failed: " + rep.violations.front().describe();
        if (rep.violations.size() > 1) msg += " (and " + std::to_string(rep.violations.size() - 1) + " more)";
        throw ConfigError(1, msg);
    }
    return {std::move(omega), std::move(mu)};
}

ModuleConfig load_module_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(2, "cannot open module config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_module_config(ss.str());
}

std::string module_config_json(const GlModule& omega, const MuVector& mu) {
    nlohmann::ordered_json doc;
    doc["m"] = omega.m();
    doc["n"] = omega.n();
    doc["dim"] = omega.dim();
    doc["parity"] = omega.parities();
    nlohmann::ordered_json mus = nlohmann::ordered_json::array();
    for (const auto& s : mu) mus.push_back(s.str());
    doc["mu"] = mus;
    nlohmann::ordered_json action = nlohmann::ordered_json::object();
    for (int a = 0; a < omega.size(); ++a)
        for (int b = 0; b < omega.size(); ++b) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (int r = 0; r < omega.dim(); ++r) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (int c = 0; c < omega.dim(); ++c) row.push_back(omega.act(a, b).at(r, c).str());
                rows.push_back(row);
            }
            action[key_of(a, b)] = rows;
        }
    doc["action"] = action;
    return doc.dump(2) + "\n";
}

MuVector parse_mu_csv(const std::string& csv) {
    MuVector mu;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            mu.push_back(Scalar::parse(item));
        } catch (const std::exception& e) {
            throw ConfigError(2, "--mu entry \"" + item + "\": " + e.what());
        }
    }
    return mu;
}

}  // namespace qpmod
