#include "cellalloc/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "cellalloc/errors.hpp"

namespace cellalloc {

namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

struct SigParams {
    double a;
    double b;
};

// Reference roster, per cell (A, B, C): each sector has three sigmoidal then
// three logarithmic users.
const char kCellLabels[3] = {'A', 'B', 'C'};
const SigParams kSector1Sig[3][3] = {
    {{1, 9.91}, {1, 10.21}, {1, 10.51}},
    {{1, 10.81}, {1, 11.11}, {1, 11.41}},
    {{1, 11.71}, {1, 12.01}, {1, 12.31}},
};
const double kSector1LogK[3][3] = {{1.1, 1.2, 1.3}, {1.4, 1.5, 1.6}, {1.7, 1.8, 1.9}};
const SigParams kSector2Sig[3][3] = {
    {{3, 10}, {2, 11}, {1, 12}},
    {{3, 13}, {2, 14}, {1, 15}},
    {{3, 16}, {2, 17}, {1, 18}},
};
const double kSector2LogK[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
const SigParams kSector3Sig[3][3] = {
    {{1, 13.95}, {1, 14.35}, {2, 16}},
    {{1, 14.75}, {1, 15.15}, {2, 17}},
    {{1, 15.55}, {1, 15.95}, {5, 25.5}},
};
const double kSector3LogK[3][3] = {{10, 11, 12}, {13, 14, 15}, {16, 17, 18}};

UserSpec sig_user(std::string id, int cell, int sector, SigParams p) {
    UserSpec u;
    u.id = std::move(id);
    u.cell = cell;
    u.sector = sector;
    u.kind = UtilityKind::Sigmoidal;
    u.a = p.a;
    u.b = p.b;
    return u;
}

UserSpec log_user(std::string id, int cell, int sector, double k) {
    UserSpec u;
    u.id = std::move(id);
    u.cell = cell;
    u.sector = sector;
    u.kind = UtilityKind::Logarithmic;
    u.k = k;
    return u;
}

double require_number(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) {
        throw ValidationError(path + ": missing required key '" + key + "'");
    }
    if (!obj[key].is_number()) {
        throw ValidationError(path + "." + key + ": expected a number");
    }
    return obj[key].get<double>();
}

int require_int(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) {
        throw ValidationError(path + ": missing required key '" + key + "'");
    }
    if (!obj[key].is_number_integer()) {
        throw ValidationError(path + "." + key + ": expected an integer");
    }
    return obj[key].get<int>();
}

} // namespace

UtilityFunction user_utility(const Scenario& s, const UserSpec& user) {
    if (user.kind == UtilityKind::Sigmoidal) {
        return UtilityFunction::sigmoidal(user.a, user.b);
    }
    return UtilityFunction::logarithmic(user.k, user.r_max.value_or(s.log_r_max));
}

void validate_scenario(const Scenario& s) {
    if (s.cells < 1) {
        throw ValidationError("cells must be >= 1");
    }
    if (s.sectors < 1) {
        throw ValidationError("sectors must be >= 1");
    }
    if (!(s.delta > 0.0)) {
        throw ValidationError("delta must be > 0");
    }
    if (s.max_iterations < 1) {
        throw ValidationError("max_iterations must be >= 1");
    }
    if (!(s.initial_bid > 0.0)) {
        throw ValidationError("initial_bid must be > 0");
    }
    if (!(s.damping > 0.0) || s.damping > 1.0) {
        throw ValidationError("damping must lie in (0, 1]");
    }
    if (!(s.log_r_max > 0.0)) {
        throw ValidationError("log_r_max must be > 0");
    }

    std::set<std::string> seen;
    std::vector<char> covered(static_cast<std::size_t>(s.sectors), 0);
    for (const UserSpec& u : s.users) {
        if (u.id.empty()) {
            throw ValidationError("user with empty id");
        }
        if (!seen.insert(u.id).second) {
            throw ValidationError("duplicate user id '" + u.id + "'");
        }
        if (u.cell < 1 || u.cell > s.cells) {
            throw ValidationError("user '" + u.id + "': cell " + std::to_string(u.cell) +
                                  " out of bounds for " + std::to_string(s.cells) + " cells");
        }
        if (u.sector < 1 || u.sector > s.sectors) {
            throw ValidationError("user '" + u.id + "': sector " + std::to_string(u.sector) +
                                  " out of bounds for " + std::to_string(s.sectors) + " sectors");
        }
        if (u.kind == UtilityKind::Sigmoidal) {
            if (!(u.a > 0.0) || !(u.b > 0.0)) {
                throw ValidationError("user '" + u.id + "': sigmoidal a and b must be > 0");
            }
        } else {
            if (!(u.k > 0.0)) {
                throw ValidationError("user '" + u.id + "': logarithmic k must be > 0");
            }
            if (u.r_max && !(*u.r_max > 0.0)) {
                throw ValidationError("user '" + u.id + "': r_max must be > 0");
            }
        }
        covered[static_cast<std::size_t>(u.sector - 1)] = 1;
    }
    for (int l = 1; l <= s.sectors; ++l) {
        if (!covered[static_cast<std::size_t>(l - 1)]) {
            throw EmptyDirection("direction " + std::to_string(l) +
                                  " has no users in any cell");
        }
    }
}

Scenario builtin_table1() {
    Scenario s;
    s.cells = 3;
    s.sectors = 3;
    for (int c = 0; c < 3; ++c) {
        const int cell = c + 1;
        const std::string prefix(1, kCellLabels[c]);
        auto id = [&](int n) { return prefix + std::to_string(n); };
        for (int j = 0; j < 3; ++j) {
            s.users.push_back(sig_user(id(1 + j), cell, 1, kSector1Sig[c][j]));
        }
        for (int j = 0; j < 3; ++j) {
            s.users.push_back(log_user(id(4 + j), cell, 1, kSector1LogK[c][j]));
        }
        for (int j = 0; j < 3; ++j) {
            s.users.push_back(sig_user(id(7 + j), cell, 2, kSector2Sig[c][j]));
        }
        for (int j = 0; j < 3; ++j) {
            s.users.push_back(log_user(id(10 + j), cell, 2, kSector2LogK[c][j]));
        }
        for (int j = 0; j < 3; ++j) {
            s.users.push_back(sig_user(id(13 + j), cell, 3, kSector3Sig[c][j]));
        }
        for (int j = 0; j < 3; ++j) {
            s.users.push_back(log_user(id(16 + j), cell, 3, kSector3LogK[c][j]));
        }
    }
    return s;
}

Scenario builtin_table1_unbalanced() {
    Scenario s = builtin_table1();
    auto removed = [](const UserSpec& u) {
        return u.sector == 1 && u.kind == UtilityKind::Logarithmic;
    };
    s.users.erase(std::remove_if(s.users.begin(), s.users.end(), removed), s.users.end());
    return s;
}

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("scenario document must be a JSON object");
    }

    Scenario s;
    if (doc.contains("cells")) s.cells = require_int(doc, "cells", "$");
    if (doc.contains("sectors")) s.sectors = require_int(doc, "sectors", "$");
    if (doc.contains("delta")) s.delta = require_number(doc, "delta", "$");
    if (doc.contains("max_iterations")) s.max_iterations = require_int(doc, "max_iterations", "$");
    if (doc.contains("initial_bid")) s.initial_bid = require_number(doc, "initial_bid", "$");
    if (doc.contains("damping")) s.damping = require_number(doc, "damping", "$");
    if (doc.contains("log_r_max")) s.log_r_max = require_number(doc, "log_r_max", "$");

    if (!doc.contains("users") || !doc["users"].is_array()) {
        throw ValidationError("$.users: expected an array of users");
    }
    for (std::size_t i = 0; i < doc["users"].size(); ++i) {
        const json& ju = doc["users"][i];
        const std::string path = "$.users[" + std::to_string(i) + "]";
        if (!ju.is_object()) {
            throw ValidationError(path + ": expected an object");
        }
        UserSpec u;
        if (!ju.contains("id") || !ju["id"].is_string()) {
            throw ValidationError(path + ".id: expected a string");
        }
        u.id = ju["id"].get<std::string>();
        u.cell = require_int(ju, "cell", path);
        u.sector = require_int(ju, "sector", path);
        if (!ju.contains("kind") || !ju["kind"].is_string()) {
            throw ValidationError(path + ".kind: expected a string");
        }
        const std::string kind = ju["kind"].get<std::string>();
        if (kind == "sigmoidal") {
            u.kind = UtilityKind::Sigmoidal;
            if (!ju.contains("a") || !ju.contains("b")) {
                throw ValidationError("user '" + u.id + "': sigmoidal kind requires a and b");
            }
            u.a = require_number(ju, "a", path);
            u.b = require_number(ju, "b", path);
        } else if (kind == "logarithmic") {
            u.kind = UtilityKind::Logarithmic;
            if (!ju.contains("k")) {
                throw ValidationError("user '" + u.id + "': logarithmic kind requires k");
            }
            u.k = require_number(ju, "k", path);
            if (ju.contains("r_max")) {
                u.r_max = require_number(ju, "r_max", path);
            }
        } else {
            throw ValidationError(path + ".kind: unknown kind '" + kind +
                                  "' (expected sigmoidal or logarithmic)");
        }
        s.users.push_back(std::move(u));
    }

    validate_scenario(s);
    return s;
}

std::string write_scenario(const Scenario& s) {
    ojson doc;
    doc["cells"] = s.cells;
    doc["sectors"] = s.sectors;
    doc["delta"] = s.delta;
    doc["max_iterations"] = s.max_iterations;
    doc["initial_bid"] = s.initial_bid;
    doc["damping"] = s.damping;
    doc["log_r_max"] = s.log_r_max;
    doc["users"] = ojson::array();
    for (const UserSpec& u : s.users) {
        ojson ju;
        ju["id"] = u.id;
        ju["cell"] = u.cell;
        ju["sector"] = u.sector;
        if (u.kind == UtilityKind::Sigmoidal) {
            ju["kind"] = "sigmoidal";
            ju["a"] = u.a;
            ju["b"] = u.b;
        } else {
            ju["kind"] = "logarithmic";
            ju["k"] = u.k;
            if (u.r_max) {
                ju["r_max"] = *u.r_max;
            }
        }
        doc["users"].push_back(std::move(ju));
    }
    return doc.dump(2) + "\n";
}

std::string scenario_fingerprint(const Scenario& s) {
    const std::string text = write_scenario(s);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

bool natural_id_less(const std::string& lhs, const std::string& rhs) {
    auto split = [](const std::string& id) -> std::pair<std::string, long long> {
        std::size_t pos = 0;
        while (pos < id.size() && !std::isdigit(static_cast<unsigned char>(id[pos]))) {
            ++pos;
        }
        if (pos == id.size()) {
            return {id, -1};
        }
        for (std::size_t i = pos; i < id.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(id[i]))) {
                return {id, -1};
            }
        }
        if (id.size() - pos > 18) {
            return {id, -1};
        }
        return {id.substr(0, pos), std::stoll(id.substr(pos))};
    };
    const auto [lp, ln] = split(lhs);
    const auto [rp, rn] = split(rhs);
    if (ln >= 0 && rn >= 0) {
        if (lp != rp) return lp < rp;
        if (ln != rn) return ln < rn;
    }
    return lhs < rhs;
}

} // namespace cellalloc
