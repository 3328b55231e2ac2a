#pragma once

#include "cellwait/analytic.hpp"
#include "cellwait/model.hpp"

namespace cellwait {

// Coefficients of the quadratic A v^2 + B v + C whose positive roots are the
// candidate optima of the noiseless alpha = 4 coverage after a second-order
// expansion of its derivative. For beta_w > beta_0: A > 0, B < 0, C > 0.
struct QuadraticCoefficients {
    double A;
    double B;
    double C;
};

enum class OptimizeMethod { taylor_quadratic, bisection, grid_oracle };

struct OptimizationReport {
    double r_star;          // meters
    double objective_value; // coverage probability or bits/s/Hz
    OptimizeMethod method;
    int iterations;
};

// Result of the coverage-threshold optimization: the quadratic-root answer
// plus a grid-refined check of the exact objective computed alongside.
struct CoverageOptimum {
    OptimizationReport report;
    double grid_r_star;
    double grid_objective;
    bool degenerate_no_delay;   // beta_w == beta_0: objective is flat in r_th
    bool taylor_out_of_validity; // no positive real root; grid result returned
};

QuadraticCoefficients quadratic_coefficients(double beta0, double betaw, double theta);

// Coverage-optimal threshold distance in the alpha = 4, sigma2 = 0 regime.
// Both quadratic roots are evaluated against the exact coverage expression
// and the maximizer is returned (the smaller root in the typical regime).
CoverageOptimum optimal_threshold_coverage(const NetworkConfig& cfg, double w,
                                           double gamma);

// Exhaustive grid maximization of the exact closed-form coverage over r_th.
// Serves as the optimizer's independent check; refines around the coarse
// grid maximum once.
OptimizationReport grid_search_threshold_coverage(const NetworkConfig& cfg, double w,
                                                  double gamma, int points = 1000);

// Bisection core over [0, r_upper] for a unimodal objective: probe the
// midpoint's epsilon neighborhood, move the bound on the losing side, stop
// once the interval update falls below epsilon. Iteration count is bounded
// by ceil(log2(r_upper / epsilon)) + 1.
OptimizationReport bisect_unimodal_max(const std::function<double(double)>& objective,
                                       double r_upper, double epsilon);

// Rate-optimal threshold distance: the bisection above applied to the
// capacity at delay budget w.
OptimizationReport optimal_threshold_rate(const NetworkConfig& cfg, double w,
                                          double r_upper, double epsilon);

// Upper bound for the rate bisection: the coverage-optimal threshold at a
// vanishing SINR threshold (gamma = 1e-3).
double default_rate_upper_bound(const NetworkConfig& cfg, double w);

// nu = C / (B * mean cell power), bits/s/Hz/Watt.
double energy_efficiency(const NetworkConfig& cfg, const AccessScenario& scen,
                         const PowerModel& pm);

// nu_N = nu(w) / nu(w = 0). Mode fractions (hence mean power) cancel, so
// this is the capacity ratio against the zero-delay baseline; >= 1.
double normalized_energy_efficiency(const NetworkConfig& cfg, const AccessScenario& scen);

} // namespace cellwait
