#pragma once

#include "cellwait/errors.hpp"

namespace cellwait {

// Network-wide parameters. All power quantities are linear Watts; dB(m)
// conversions belong to the I/O layer. Instances are treated as immutable
// after validation and are safe to share across threads.
struct NetworkConfig {
    double rho_f;    // cell density, cells per m^2
    double p_A;      // fraction of active cells
    double p_I;      // fraction of idle cells
    double p_S;      // fraction of sleeping cells
    double mu;       // service completion rate, 1/s (mean service time 1/mu)
    double lambda_S; // wake-up rate, 1/s (mean sleep time 1/lambda_S)
    double alpha;    // path-loss exponent, must exceed 2
    double p_tx;     // transmit power, W
    double sigma2;   // noise power, W
    double zeta = 1.0; // fading rate; channel gains are Exp(zeta), mean 1/zeta

    // Throws ConfigError if any invariant is violated. Mode fractions must
    // sum to 1 within 1e-12.
    void validate() const;
};

// Access-policy knobs for one user: wait up to `w` seconds for a cell
// within `r_th` meters before falling back to a farther one.
struct AccessScenario {
    double r_th; // threshold distance, m
    double w;    // tolerable delay, s

    void validate() const;
};

// Per-mode electrical power draw and allocated bandwidth. The draw values
// are deployment-specific inputs, not derived quantities.
struct PowerModel {
    double p_active;  // W
    double p_idle;    // W
    double p_sleep;   // W
    double bandwidth; // Hz

    void validate() const;

    // Stationary mean power draw of one cell under cfg's mode fractions.
    double mean_power(const NetworkConfig& cfg) const;
};

// Probability that a given cell is available now or becomes available
// within w seconds: beta_w = 1 - p_A e^{-mu w} - p_S e^{-lambda_S w}.
// beta_w(cfg, 0) returns p_I bit-exactly.
double beta_w(const NetworkConfig& cfg, double w);

// Dimensionless cell count scale of the threshold disk: v = rho_f pi r_th^2.
double dimensionless_area(const NetworkConfig& cfg, const AccessScenario& scen);

} // namespace cellwait
