#include "cellwait/model.hpp"

#include <cmath>
#include <string>

namespace cellwait {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

} // namespace

void NetworkConfig::validate() const {
    require(std::isfinite(rho_f) && rho_f > 0.0, "rho_f must be > 0");
    require(is_probability(p_A), "p_A must lie in [0,1]");
    require(is_probability(p_I), "p_I must lie in [0,1]");
    require(is_probability(p_S), "p_S must lie in [0,1]");
    require(std::fabs(p_A + p_I + p_S - 1.0) <= 1e-12,
            "mode fractions p_A + p_I + p_S must sum to 1 within 1e-12");
    require(std::isfinite(mu) && mu > 0.0, "mu must be > 0");
    require(std::isfinite(lambda_S) && lambda_S > 0.0, "lambda_S must be > 0");
    require(std::isfinite(alpha) && alpha > 2.0, "alpha must be > 2");
    require(std::isfinite(p_tx) && p_tx > 0.0, "p_tx must be > 0");
    require(std::isfinite(sigma2) && sigma2 >= 0.0, "sigma2 must be >= 0");
    require(std::isfinite(zeta) && zeta > 0.0, "zeta must be > 0");
}

void AccessScenario::validate() const {
    require(std::isfinite(r_th) && r_th >= 0.0, "r_th must be >= 0");
    require(std::isfinite(w) && w >= 0.0, "w must be >= 0");
}

void PowerModel::validate() const {
    require(std::isfinite(p_active) && p_active > 0.0, "p_active must be > 0");
    require(std::isfinite(p_idle) && p_idle > 0.0, "p_idle must be > 0");
    require(std::isfinite(p_sleep) && p_sleep > 0.0, "p_sleep must be > 0");
    require(std::isfinite(bandwidth) && bandwidth > 0.0, "bandwidth must be > 0");
    require(p_sleep <= p_idle && p_idle <= p_active,
            "per-mode powers must satisfy p_sleep <= p_idle <= p_active");
}

double PowerModel::mean_power(const NetworkConfig& cfg) const {
    return cfg.p_A * p_active + cfg.p_I * p_idle + cfg.p_S * p_sleep;
}

double beta_w(const NetworkConfig& cfg, double w) {
    // p_I + p_A (1 - e^{-mu w}) + p_S (1 - e^{-lambda_S w}); the expm1 form
    // returns p_I exactly at w = 0 and stays monotone for tiny w.
    return cfg.p_I - cfg.p_A * std::expm1(-cfg.mu * w)
                   - cfg.p_S * std::expm1(-cfg.lambda_S * w);
}

double dimensionless_area(const NetworkConfig& cfg, const AccessScenario& scen) {
    return cfg.rho_f * M_PI * scen.r_th * scen.r_th;
}

} // namespace cellwait
