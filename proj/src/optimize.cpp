#include "cellwait/optimize.hpp"

#include <cmath>
#include <vector>

namespace cellwait {

namespace {

double closed_form_pc(const NetworkConfig& cfg, double w, double gamma, double r_th) {
    return coverage_closed_form(cfg, {r_th, w}, gamma).value;
}

double r_from_v(const NetworkConfig& cfg, double v) {
    return std::sqrt(v / (M_PI * cfg.rho_f));
}

} // namespace

QuadraticCoefficients quadratic_coefficients(double beta0, double betaw, double theta) {
    const double s0 = beta0 + theta;
    const double sw = betaw + theta;
    const double A = beta0 * (s0 * s0 / 2.0 + sw * sw * sw / (2.0 * s0));
    const double B = 1.5 * (beta0 - betaw) * (beta0 + betaw + theta)
                     - beta0 * (s0 + sw * sw / s0);
    const double C = 2.0 * (betaw - beta0) + beta0 * (1.0 + sw / s0);
    return {A, B, C};
}

CoverageOptimum optimal_threshold_coverage(const NetworkConfig& cfg, double w,
                                           double gamma) {
    if (!(gamma > 0.0)) throw DomainError("optimal_threshold_coverage: gamma must be > 0");
    const double beta0 = cfg.p_I;
    const double betaw = beta_w(cfg, w);
    const double theta = theta_factor(cfg, gamma);

    CoverageOptimum out{};
    out.degenerate_no_delay = !(betaw > beta0);
    if (out.degenerate_no_delay) {
        // No delay benefit: coverage does not depend on r_th at all.
        out.report = {0.0, closed_form_pc(cfg, w, gamma, 0.0),
                      OptimizeMethod::taylor_quadratic, 0};
        out.grid_r_star = 0.0;
        out.grid_objective = out.report.objective_value;
        return out;
    }

    const QuadraticCoefficients qc = quadratic_coefficients(beta0, betaw, theta);
    std::vector<double> roots;
    try {
        roots = find_root_quadratic(qc.A, qc.B, qc.C);
    } catch (const NoRealRoot&) {
        roots.clear();
    }

    double best_v = -1.0, best_pc = -1.0;
    for (double v : roots) {
        if (v <= 0.0) continue;
        const double pc = closed_form_pc(cfg, w, gamma, r_from_v(cfg, v));
        if (pc > best_pc) {
            best_pc = pc;
            best_v = v;
        }
    }

    const OptimizationReport grid = grid_search_threshold_coverage(cfg, w, gamma);
    out.grid_r_star = grid.r_star;
    out.grid_objective = grid.objective_value;

    if (best_v < 0.0) {
        out.taylor_out_of_validity = true;
        out.report = grid;
        return out;
    }
    out.report = {r_from_v(cfg, best_v), best_pc, OptimizeMethod::taylor_quadratic, 0};
    return out;
}

OptimizationReport grid_search_threshold_coverage(const NetworkConfig& cfg, double w,
                                                  double gamma, int points) {
    if (points < 2) throw DomainError("grid_search_threshold_coverage: points must be >= 2");
    const double beta0 = cfg.p_I;
    const double betaw = beta_w(cfg, w);

    // The delay correction scales with e^{-beta0 v} - e^{-betaw v}, which
    // peaks at ln(bw/b0)/(bw-b0); a generous multiple of that bounds the
    // search range.
    double v_max = 10.0;
    if (betaw > beta0 && beta0 > 0.0) {
        v_max = std::max(v_max, 6.0 * std::log(betaw / beta0) / (betaw - beta0) + 5.0);
    }

    auto sweep = [&](double lo, double hi, int n, double& arg, double& val) {
        arg = lo;
        val = -1.0;
        for (int i = 0; i < n; ++i) {
            const double v = lo + (hi - lo) * i / (n - 1);
            const double pc = closed_form_pc(cfg, w, gamma, r_from_v(cfg, v));
            if (pc > val) {
                val = pc;
                arg = v;
            }
        }
    };

    double v1, p1;
    sweep(0.0, v_max, points, v1, p1);
    // refine once around the coarse maximum
    const double step = v_max / (points - 1);
    double v2, p2;
    sweep(std::max(0.0, v1 - step), v1 + step, points, v2, p2);
    return {r_from_v(cfg, v2), p2, OptimizeMethod::grid_oracle, 2 * points};
}

OptimizationReport bisect_unimodal_max(const std::function<double(double)>& objective,
                                       double r_upper, double epsilon) {
    if (!(epsilon > 0.0) || !(r_upper > epsilon)) {
        throw InvalidBracket("bisect_unimodal_max: requires r_upper > epsilon > 0");
    }
    double lo = 0.0;
    double hi = r_upper;
    double delta = r_upper;
    int iterations = 0;
    while (delta > epsilon) {
        const double mid = 0.5 * (lo + hi);
        if (objective(mid + epsilon) > objective(mid - epsilon)) {
            lo = mid;
        } else {
            hi = mid;
        }
        delta = std::fabs(mid - 0.5 * (lo + hi));
        ++iterations;
    }
    const double r_star = 0.5 * (lo + hi);
    return {r_star, objective(r_star), OptimizeMethod::bisection, iterations};
}

OptimizationReport optimal_threshold_rate(const NetworkConfig& cfg, double w,
                                          double r_upper, double epsilon) {
    // Probe comparisons drive the bracket update, so they need quadrature
    // error well below the capacity differences near the optimum.
    QuadratureSpec probe_spec;
    probe_spec.rel_tol = 1e-10;
    probe_spec.abs_tol = 1e-13;
    return bisect_unimodal_max(
        [&](double r) { return capacity(cfg, {std::max(r, 0.0), w}, probe_spec); },
        r_upper, epsilon);
}

double default_rate_upper_bound(const NetworkConfig& cfg, double w) {
    const CoverageOptimum opt = optimal_threshold_coverage(cfg, w, 1e-3);
    if (opt.degenerate_no_delay) {
        // Flat objective; fall back to a couple of mean nearest-idle spacings.
        return 2.0 / std::sqrt(std::max(cfg.p_I, 1e-6) * cfg.rho_f);
    }
    return opt.report.r_star;
}

double energy_efficiency(const NetworkConfig& cfg, const AccessScenario& scen,
                         const PowerModel& pm) {
    return capacity(cfg, scen) / (pm.bandwidth * pm.mean_power(cfg));
}

double normalized_energy_efficiency(const NetworkConfig& cfg,
                                    const AccessScenario& scen) {
    const AccessScenario baseline{scen.r_th, 0.0};
    return capacity(cfg, scen) / capacity(cfg, baseline);
}

} // namespace cellwait
