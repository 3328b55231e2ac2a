#pragma once

#include <string>

#include "cellwait/model.hpp"

namespace cellwait::io {

struct LoadedConfig {
    NetworkConfig net;
    AccessScenario scen;
    PowerModel power;
};

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

// Loads a flat JSON config. Keys mirror the field names:
//   rho_f, p_A, p_I, p_S, mu, lambda_S, alpha, zeta,
//   p_tx [W] or p_tx_dbm, sigma2 [W] or sigma2_dbm,
//   r_th, w, p_active, p_idle, p_sleep, bandwidth.
// dBm values are converted to Watts once at parse time; the in-memory types
// carry linear units only. Scenario and power keys fall back to documented
// defaults when absent. Throws ConfigError with file/key context.
LoadedConfig load_config(const std::string& path);

// Same, from a JSON string (used by tests).
LoadedConfig parse_config(const std::string& text, const std::string& origin = "<string>");

} // namespace cellwait::io
