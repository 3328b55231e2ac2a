#pragma once

#include <functional>

#include "cellwait/model.hpp"
#include "cellwait/numerics.hpp"

namespace cellwait {

// Access event taxonomy: an idle cell is already inside the threshold disk
// (IA), one becomes available there before the delay budget runs out (DA),
// or the user falls back to a cell beyond the threshold (OA).
enum class AccessEvent { IA, DA, OA };

enum class CoverageMethod { closed_form, quadrature, monte_carlo };

struct CoverageResult {
    double value;           // coverage probability, in [0, 1]
    CoverageMethod method;
    double error_estimate;  // absolute; 0 for the exact closed form
};

struct AccessProbabilities {
    double ia;
    double da;
    double oa;
};

// P(IA) = 1 - e^{-p_I v}, P(DA) = e^{-p_I v} - e^{-beta_w v} (stable expm1
// form), and OA takes the complement so the three sum to exactly 1.
AccessProbabilities access_probabilities(const NetworkConfig& cfg,
                                         const AccessScenario& scen);

// Serving-distance density conditioned on the access event:
//   IA: 2 pi p_I rho_f r e^{-p_I rho_f pi r^2} / (1 - e^{-p_I v}),  r in [0, r_th]
//   DA: 2 r / r_th^2,                                               r in [0, r_th]
//   OA: 2 pi p_I rho_f r e^{-p_I rho_f pi (r^2 - r_th^2)},          r in [r_th, inf)
// Throws DomainError outside the event's support and DegenerateSupport when
// the event has probability zero (e.g. r_th = 0 for IA/DA).
double distance_pdf(const NetworkConfig& cfg, const AccessScenario& scen,
                    AccessEvent event, double r);

// Interference factor of the alpha = 4 noiseless regime:
// theta = p_A sqrt(gamma) pi / 2.
double theta_factor(const NetworkConfig& cfg, double gamma);

// P(SINR > gamma | serving distance r) under Rayleigh fading:
//   exp(-zeta gamma r^alpha sigma2 / p_tx) *
//   exp(-p_A pi rho_f r^2 gamma^{2/alpha} C_alpha).
double conditional_coverage(const NetworkConfig& cfg, double r, double gamma);

// Coverage probability by conditioning on the serving distance: the three
// event branches integrated against their distance densities and weighted
// by the event probabilities. Valid for any alpha > 2, sigma2 >= 0.
CoverageResult coverage_quadrature(const NetworkConfig& cfg, const AccessScenario& scen,
                                   double gamma, const QuadratureSpec& spec = {});

// Exact noiseless alpha = 4 coverage:
//   p_c = b0/(theta+b0)
//       + (e^{-b0 v} - e^{-bw v}) [ 1/(theta v) - e^{-theta v} (b0/(theta+b0) + 1/(theta v)) ]
// with b0 = p_I and bw = beta_w. Continuous at v = 0 with value b0/(theta+b0).
// Throws WrongRegime unless alpha == 4 and sigma2 == 0.
CoverageResult coverage_closed_form(const NetworkConfig& cfg, const AccessScenario& scen,
                                    double gamma);

// Closed form when in regime, quadrature otherwise.
CoverageResult coverage(const NetworkConfig& cfg, const AccessScenario& scen,
                        double gamma, const QuadratureSpec& spec = {});

// Ergodic capacity in bits/s/Hz from a coverage curve:
//   C = (1/ln 2) integral_0^inf P(SINR > gamma) / (1 + gamma) dgamma,
// evaluated after the substitution u = 1/(1+gamma), which maps the range to
// (0, 1) and absorbs the 1/(1+gamma) weight.
double capacity_of(const std::function<double(double)>& coverage_fn,
                   const QuadratureSpec& spec = {});

double capacity(const NetworkConfig& cfg, const AccessScenario& scen,
                const QuadratureSpec& spec = {});

} // namespace cellwait
