#include "cellwait/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cellwait {

namespace {

bool noiseless_alpha4(const NetworkConfig& cfg) {
    return cfg.alpha == 4.0 && cfg.sigma2 == 0.0;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

} // namespace

AccessProbabilities access_probabilities(const NetworkConfig& cfg,
                                         const AccessScenario& scen) {
    const double v = dimensionless_area(cfg, scen);
    const double b0 = cfg.p_I;
    const double bw = beta_w(cfg, scen.w);
    const double ia = -std::expm1(-b0 * v);
    // e^{-b0 v} - e^{-bw v} as a product of nonnegatives: stays >= 0 and is
    // exactly 0 when beta_w collapses to beta_0
    double da = std::exp(-b0 * v) * (-std::expm1(-(bw - b0) * v));
    // the complement makes ia + da + oa round to exactly 1
    double oa = 1.0 - (ia + da);
    if (oa < 0.0) {
        oa = 0.0;
        da = 1.0 - ia;
    }
    return {ia, da, oa};
}

double distance_pdf(const NetworkConfig& cfg, const AccessScenario& scen,
                    AccessEvent event, double r) {
    if (!(r >= 0.0)) throw DomainError("distance_pdf: r must be >= 0");
    const double v = dimensionless_area(cfg, scen);
    const double pir2 = cfg.p_I * cfg.rho_f * M_PI;
    switch (event) {
        case AccessEvent::IA: {
            if (scen.r_th == 0.0 || cfg.p_I == 0.0)
                throw DegenerateSupport("distance_pdf: IA has probability zero");
            if (r > scen.r_th) throw DomainError("distance_pdf: IA requires r <= r_th");
            const double norm = -std::expm1(-cfg.p_I * v);
            return 2.0 * pir2 * r * std::exp(-pir2 * r * r) / norm;
        }
        case AccessEvent::DA: {
            if (scen.r_th == 0.0)
                throw DegenerateSupport("distance_pdf: DA has probability zero");
            if (r > scen.r_th) throw DomainError("distance_pdf: DA requires r <= r_th");
            return 2.0 * r / (scen.r_th * scen.r_th);
        }
        case AccessEvent::OA: {
            if (cfg.p_I == 0.0)
                throw DegenerateSupport("distance_pdf: OA needs idle cells");
            if (r < scen.r_th) throw DomainError("distance_pdf: OA requires r >= r_th");
            return 2.0 * pir2 * r * std::exp(-pir2 * (r * r - scen.r_th * scen.r_th));
        }
    }
    throw DomainError("distance_pdf: unknown event");
}

double theta_factor(const NetworkConfig& cfg, double gamma) {
    return cfg.p_A * std::sqrt(gamma) * M_PI / 2.0;
}

double conditional_coverage(const NetworkConfig& cfg, double r, double gamma) {
    if (!(r >= 0.0)) throw DomainError("conditional_coverage: r must be >= 0");
    if (!(gamma > 0.0)) throw DomainError("conditional_coverage: gamma must be > 0");
    if (r == 0.0) return 1.0;
    const double noise_exp =
        cfg.zeta * gamma * std::pow(r, cfg.alpha) * cfg.sigma2 / cfg.p_tx;
    const double interf_exp = cfg.p_A * M_PI * cfg.rho_f * r * r *
                              std::pow(gamma, 2.0 / cfg.alpha) *
                              interference_constant(cfg.alpha);
    return std::exp(-(noise_exp + interf_exp));
}

CoverageResult coverage_quadrature(const NetworkConfig& cfg, const AccessScenario& scen,
                                   double gamma, const QuadratureSpec& spec) {
    if (!(gamma > 0.0)) throw DomainError("coverage_quadrature: gamma must be > 0");
    const AccessProbabilities p = access_probabilities(cfg, scen);

    double value = 0.0;
    double error = 0.0;

    if (p.ia > 0.0) {
        const Integral ia = integrate(
            [&](double r) {
                return conditional_coverage(cfg, r, gamma) *
                       distance_pdf(cfg, scen, AccessEvent::IA, r);
            },
            0.0, scen.r_th, spec);
        value += p.ia * ia.value;
        error += p.ia * ia.error;
    }
    if (p.da > 0.0) {
        const Integral da = integrate(
            [&](double r) {
                return conditional_coverage(cfg, r, gamma) *
                       distance_pdf(cfg, scen, AccessEvent::DA, r);
            },
            0.0, scen.r_th, spec);
        value += p.da * da.value;
        error += p.da * da.error;
    }
    if (p.oa > 0.0 && cfg.p_I > 0.0) {
        const Integral oa = integrate(
            [&](double r) {
                return conditional_coverage(cfg, r, gamma) *
                       distance_pdf(cfg, scen, AccessEvent::OA, r);
            },
            scen.r_th, std::numeric_limits<double>::infinity(), spec);
        value += p.oa * oa.value;
        error += p.oa * oa.error;
    }
    return {clamp01(value), CoverageMethod::quadrature, error};
}

CoverageResult coverage_closed_form(const NetworkConfig& cfg, const AccessScenario& scen,
                                    double gamma) {
    if (!noiseless_alpha4(cfg)) {
        throw WrongRegime("coverage_closed_form: requires alpha = 4 and sigma2 = 0");
    }
    if (!(gamma > 0.0)) throw DomainError("coverage_closed_form: gamma must be > 0");

    const double b0 = cfg.p_I;
    const double bw = beta_w(cfg, scen.w);
    const double theta = theta_factor(cfg, gamma);
    const double v = dimensionless_area(cfg, scen);

    if (theta == 0.0) return {1.0, CoverageMethod::closed_form, 0.0};
    const double baseline = b0 / (b0 + theta);
    if (v == 0.0) return {baseline, CoverageMethod::closed_form, 0.0};

    // (e^{-b0 v} - e^{-bw v}) and (1 - e^{-theta v})/(theta v) through expm1
    // so the small-v limit is reached without cancellation.
    const double gap = -std::exp(-b0 * v) * std::expm1(-(bw - b0) * v);
    const double tv = theta * v;
    const double ratio = -std::expm1(-tv) / tv;
    const double bracket = ratio - std::exp(-tv) * baseline;
    return {clamp01(baseline + gap * bracket), CoverageMethod::closed_form, 0.0};
}

CoverageResult coverage(const NetworkConfig& cfg, const AccessScenario& scen,
                        double gamma, const QuadratureSpec& spec) {
    if (noiseless_alpha4(cfg)) return coverage_closed_form(cfg, scen, gamma);
    return coverage_quadrature(cfg, scen, gamma, spec);
}

double capacity_of(const std::function<double(double)>& coverage_fn,
                   const QuadratureSpec& spec) {
    // u = 1/(1+gamma): C ln2 = integral_0^1 P(SINR > 1/u - 1) / u du.
    const Integral i = integrate(
        [&](double u) { return coverage_fn(1.0 / u - 1.0) / u; }, 0.0, 1.0, spec);
    return i.value / M_LN2;
}

double capacity(const NetworkConfig& cfg, const AccessScenario& scen,
                const QuadratureSpec& spec) {
    if (noiseless_alpha4(cfg)) {
        return capacity_of(
            [&](double g) { return coverage_closed_form(cfg, scen, g).value; }, spec);
    }
    // Nested quadrature: keep the inner coverage integral tighter than the
    // outer capacity tolerance.
    QuadratureSpec inner = spec;
    inner.rel_tol = std::min(spec.rel_tol, 1e-9);
    inner.abs_tol = std::min(spec.abs_tol, 1e-12);
    return capacity_of(
        [&](double g) { return coverage_quadrature(cfg, scen, g, inner).value; }, spec);
}

} // namespace cellwait
