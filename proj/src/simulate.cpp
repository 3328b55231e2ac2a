#include "cellwait/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace cellwait {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

double inverse_pathloss(double d, double alpha) {
    if (alpha == 4.0) {
        const double d2 = d * d;
        return 1.0 / (d2 * d2);
    }
    return std::pow(d, -alpha);
}

} // namespace

double default_sim_radius(const NetworkConfig& cfg, const AccessScenario& scen) {
    const double b0 = std::max(cfg.p_I, 1e-12);
    const double serve_scale = std::max(scen.r_th, 0.5 / std::sqrt(b0 * cfg.rho_f));
    double r = std::max(20.0 / std::sqrt(cfg.rho_f * M_PI),
                        std::sqrt(1000.0) * serve_scale);
    // keep the expected cell count per field below ~50k
    const double r_cap = std::sqrt(50000.0 / (cfg.rho_f * M_PI));
    return std::min(r, r_cap);
}

CellField sample_field(const NetworkConfig& cfg, double r_sim, Rng& rng) {
    if (!(r_sim > 0.0)) throw DomainError("sample_field: r_sim must be > 0");
    const long n = rng.poisson(cfg.rho_f * M_PI * r_sim * r_sim);

    CellField field;
    field.r_sim = r_sim;
    field.positions.reserve(n);
    field.modes.reserve(n);
    field.clocks.reserve(n);
    field.distances.reserve(n);

    const double p_ai = cfg.p_A + cfg.p_I;
    for (long i = 0; i < n; ++i) {
        const double r = r_sim * std::sqrt(rng.uniform01());
        const double phi = 2.0 * M_PI * rng.uniform01();
        field.positions.push_back({r * std::cos(phi), r * std::sin(phi)});
        field.distances.push_back(r);

        const double u = rng.uniform01();
        if (u < cfg.p_A) {
            field.modes.push_back(CellMode::active);
            field.clocks.push_back(rng.exponential(cfg.mu));
        } else if (u < p_ai) {
            field.modes.push_back(CellMode::idle);
            field.clocks.push_back(0.0);
        } else {
            field.modes.push_back(CellMode::sleeping);
            field.clocks.push_back(rng.exponential(cfg.lambda_S));
        }
    }
    return field;
}

CellField sample_field(const NetworkConfig& cfg, double r_sim, std::uint64_t seed) {
    Rng rng(seed);
    return sample_field(cfg, r_sim, rng);
}

AccessOutcome resolve_access(const CellField& field, const AccessScenario& scen) {
    int ia_idx = -1, da_idx = -1, oa_idx = -1;
    double ia_d = kInf, da_clock = kInf, oa_d = kInf;

    const std::size_t n = field.distances.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = field.distances[i];
        const bool idle = field.modes[i] == CellMode::idle;
        if (d <= scen.r_th) {
            if (idle) {
                if (d < ia_d) {
                    ia_d = d;
                    ia_idx = static_cast<int>(i);
                }
            } else if (field.clocks[i] <= scen.w && field.clocks[i] < da_clock) {
                da_clock = field.clocks[i];
                da_idx = static_cast<int>(i);
            }
        } else if (idle && d < oa_d) {
            oa_d = d;
            oa_idx = static_cast<int>(i);
        }
    }

    if (ia_idx >= 0) return {AccessEvent::IA, ia_d, 0.0, kNaN, ia_idx};
    if (da_idx >= 0) {
        return {AccessEvent::DA, field.distances[da_idx], da_clock, kNaN, da_idx};
    }
    if (oa_idx >= 0) return {AccessEvent::OA, oa_d, scen.w, kNaN, oa_idx};
    throw NoServer("resolve_access: no available cell in the sampled disk");
}

double sample_sinr(const CellField& field, const AccessOutcome& outcome,
                   const NetworkConfig& cfg, double at_time, Rng& rng) {
    const double h = rng.exponential(cfg.zeta);

    double interference = 0.0;
    if (at_time > 0.0) {
        // Delayed transmission: by time t the mode rotation has reshuffled
        // activity network-wide, so the interference configuration is a
        // fresh stationary snapshot of active cells. Re-marking the sampled
        // field instead would inherit the access conditioning (a UE that
        // waited in vain sits in a thinned neighborhood) which the
        // interference model deliberately excludes.
        const long m =
            rng.poisson(cfg.p_A * cfg.rho_f * M_PI * field.r_sim * field.r_sim);
        for (long k = 0; k < m; ++k) {
            const double d = field.r_sim * std::sqrt(rng.uniform01());
            const double g = rng.exponential(cfg.zeta);
            interference += g * inverse_pathloss(d, cfg.alpha);
        }
    } else {
        // immediate access transmits into the sampled snapshot as-is
        const std::size_t n = field.distances.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (static_cast<int>(i) == outcome.serving_index) continue;
            if (field.modes[i] != CellMode::active) continue;
            const double g = rng.exponential(cfg.zeta);
            interference += g * inverse_pathloss(field.distances[i], cfg.alpha);
        }
    }

    const double denom = cfg.p_tx * interference + cfg.sigma2;
    if (denom == 0.0) return kInf;
    return cfg.p_tx * h * inverse_pathloss(outcome.serving_distance, cfg.alpha) / denom;
}

std::vector<AccessOutcome> run_trials(const NetworkConfig& cfg, const AccessScenario& scen,
                                      long n, std::uint64_t seed,
                                      const TrialOptions& opts) {
    cfg.validate();
    scen.validate();
    if (n < 1) throw DomainError("run_trials: n_trials must be >= 1");
    const double base_r = opts.r_sim > 0.0 ? opts.r_sim : default_sim_radius(cfg, scen);

    std::vector<AccessOutcome> out(static_cast<std::size_t>(n));
    std::atomic<long> failed_trial{-1};

    auto work = [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            if (failed_trial.load(std::memory_order_relaxed) >= 0) return;
            bool done = false;
            for (int attempt = 0; attempt <= opts.max_enlargements; ++attempt) {
                Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i),
                                 static_cast<std::uint64_t>(attempt)));
                const double r_sim = base_r * static_cast<double>(1L << attempt);
                const CellField field = sample_field(cfg, r_sim, rng);
                try {
                    AccessOutcome oc = resolve_access(field, scen);
                    oc.sinr = sample_sinr(field, oc, cfg, oc.wait, rng);
                    out[static_cast<std::size_t>(i)] = oc;
                    done = true;
                    break;
                } catch (const NoServer&) {
                    // enlarge the disk and retry with a fresh substream
                }
            }
            if (!done) {
                failed_trial.store(i, std::memory_order_relaxed);
                return;
            }
        }
    };

    const int workers = std::max(1, opts.workers);
    if (workers == 1) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const long chunk = (n + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            const long lo = t * chunk;
            const long hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    if (failed_trial.load() >= 0) {
        throw NoServer("run_trials: no available cell after " +
                       std::to_string(opts.max_enlargements) + " disk enlargements");
    }
    return out;
}

Estimate coverage_from_trials(const std::vector<AccessOutcome>& trials, double gamma,
                              std::uint64_t seed) {
    const long n = static_cast<long>(trials.size());
    long covered = 0;
    for (const AccessOutcome& t : trials) {
        if (t.sinr > gamma) ++covered;
    }
    const double p = static_cast<double>(covered) / static_cast<double>(n);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return {p, 1.96 * se, n, seed, 0};
}

Estimate rate_from_trials(const std::vector<AccessOutcome>& trials, std::uint64_t seed) {
    // Welford in trial order; infinite-SINR trials are excluded and counted.
    long used = 0, excluded = 0;
    double mean = 0.0, m2 = 0.0;
    for (const AccessOutcome& t : trials) {
        if (std::isinf(t.sinr)) {
            ++excluded;
            continue;
        }
        ++used;
        const double x = std::log2(1.0 + t.sinr);
        const double d = x - mean;
        mean += d / static_cast<double>(used);
        m2 += d * (x - mean);
    }
    double se = 0.0;
    if (used > 1) se = std::sqrt(m2 / static_cast<double>(used - 1) / static_cast<double>(used));
    return {mean, 1.96 * se, static_cast<long>(trials.size()), seed, excluded};
}

Estimate estimate_coverage(const NetworkConfig& cfg, const AccessScenario& scen,
                           double gamma, long n_trials, std::uint64_t seed,
                           const TrialOptions& opts) {
    return coverage_from_trials(run_trials(cfg, scen, n_trials, seed, opts), gamma, seed);
}

std::vector<Estimate> estimate_coverage_multi(const NetworkConfig& cfg,
                                              const AccessScenario& scen,
                                              const std::vector<double>& gammas,
                                              long n_trials, std::uint64_t seed,
                                              const TrialOptions& opts) {
    const std::vector<AccessOutcome> batch = run_trials(cfg, scen, n_trials, seed, opts);
    std::vector<Estimate> out;
    out.reserve(gammas.size());
    for (double g : gammas) out.push_back(coverage_from_trials(batch, g, seed));
    return out;
}

Estimate estimate_rate(const NetworkConfig& cfg, const AccessScenario& scen,
                       long n_trials, std::uint64_t seed, const TrialOptions& opts) {
    return rate_from_trials(run_trials(cfg, scen, n_trials, seed, opts), seed);
}

} // namespace cellwait
