#include "cellwait/config_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cellwait::io {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& origin, const std::string& key) {
    if (!j.contains(key)) {
        throw ConfigError(origin + ": missing required key '" + key + "'");
    }
    if (!j.at(key).is_number()) {
        throw ConfigError(origin + ": key '" + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

double optional_number(const json& j, const std::string& origin, const std::string& key,
                       double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) {
        throw ConfigError(origin + ": key '" + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

// Linear-or-dBm pair; exactly one of the two spellings may appear.
double power_key(const json& j, const std::string& origin, const std::string& key,
                 bool required, double fallback = 0.0) {
    const std::string dbm_key = key + "_dbm";
    const bool has_lin = j.contains(key);
    const bool has_dbm = j.contains(dbm_key);
    if (has_lin && has_dbm) {
        throw ConfigError(origin + ": give either '" + key + "' or '" + dbm_key +
                          "', not both");
    }
    if (has_dbm) return dbm_to_watt(require_number(j, origin, dbm_key));
    if (has_lin) return require_number(j, origin, key);
    if (required) {
        throw ConfigError(origin + ": missing required key '" + key + "' (or '" +
                          dbm_key + "')");
    }
    return fallback;
}

} // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

LoadedConfig parse_config(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        const std::size_t upto = std::min(e.byte, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') ++line;
        }
        throw ConfigError(origin + ":" + std::to_string(line) +
                          ": JSON parse error at byte " + std::to_string(e.byte) + ": " +
                          e.what());
    }
    if (!j.is_object()) throw ConfigError(origin + ": top-level JSON must be an object");

    LoadedConfig lc{};
    lc.net.rho_f = require_number(j, origin, "rho_f");
    lc.net.p_A = require_number(j, origin, "p_A");
    lc.net.p_I = require_number(j, origin, "p_I");
    lc.net.p_S = require_number(j, origin, "p_S");
    lc.net.mu = require_number(j, origin, "mu");
    lc.net.lambda_S = require_number(j, origin, "lambda_S");
    lc.net.alpha = require_number(j, origin, "alpha");
    lc.net.zeta = optional_number(j, origin, "zeta", 1.0);
    lc.net.p_tx = power_key(j, origin, "p_tx", /*required=*/true);
    lc.net.sigma2 = power_key(j, origin, "sigma2", /*required=*/true);

    lc.scen.r_th = optional_number(j, origin, "r_th", 10.0);
    lc.scen.w = optional_number(j, origin, "w", 10.0);

    lc.power.p_active = optional_number(j, origin, "p_active", 6.8);
    lc.power.p_idle = optional_number(j, origin, "p_idle", 4.3);
    lc.power.p_sleep = optional_number(j, origin, "p_sleep", 1.0);
    lc.power.bandwidth = optional_number(j, origin, "bandwidth", 10e6);

    try {
        lc.net.validate();
        lc.scen.validate();
        lc.power.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return lc;
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

} // namespace cellwait::io
