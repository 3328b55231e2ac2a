#pragma once

#include <cstdint>
#include <vector>

#include "cellwait/analytic.hpp"
#include "cellwait/model.hpp"
#include "cellwait/rng.hpp"

namespace cellwait {

struct Vec2 {
    double x;
    double y;
};

enum class CellMode : std::uint8_t { active, idle, sleeping };

// One sampled realization of the cell process inside a disk of radius r_sim
// centered on the user at the origin. Cell count is Poisson with mean
// rho_f pi r_sim^2; positions are uniform in the disk; modes are marked
// independently with (p_A, p_I, p_S). Clocks hold the remaining dwell time:
// Exp(mu) for active, Exp(lambda_S) for sleeping, 0 for idle.
struct CellField {
    std::vector<Vec2> positions;
    std::vector<CellMode> modes;
    std::vector<double> clocks;
    std::vector<double> distances; // cached |position|, same order
    double r_sim = 0.0;
};

struct AccessOutcome {
    AccessEvent event;
    double serving_distance; // m
    double wait;             // s; 0 for IA, the winning clock for DA, w for OA
    double sinr;             // linear; +inf when interference-free and noiseless
    int serving_index;       // into the field that produced this outcome
};

struct Estimate {
    double mean;
    double ci_halfwidth; // 1.96 * standard error
    long n_trials;
    std::uint64_t seed;
    long n_excluded = 0; // infinite-SINR trials excluded from rate means
};

struct TrialOptions {
    double r_sim = 0.0;       // simulation disk radius; 0 selects the default
    int workers = 1;          // result is identical for any worker count
    int max_enlargements = 3; // disk doublings tried on NoServer before giving up
};

// Disk radius at which the uncollected far interference stays below ~0.1%
// of the total at alpha = 4, relative to the serving-distance scale.
double default_sim_radius(const NetworkConfig& cfg, const AccessScenario& scen);

CellField sample_field(const NetworkConfig& cfg, double r_sim, Rng& rng);
CellField sample_field(const NetworkConfig& cfg, double r_sim, std::uint64_t seed);

// Plays out the access protocol on one field:
//   IA: an idle cell inside r_th; serve the nearest one, wait 0.
//   DA: otherwise, non-idle cells inside r_th whose clock expires within w
//       race; the earliest wins, wait = its clock.
//   OA: otherwise connect at wait = w to the nearest idle cell beyond r_th
//       (mode marks are stationary, so the sampled snapshot is that set).
// Throws NoServer when no serving candidate exists in the disk.
// The returned sinr is unset (NaN); see sample_sinr.
AccessOutcome resolve_access(const CellField& field, const AccessScenario& scen);

// Draws fading and interference for a resolved outcome. At time 0 the
// interferers are the field's active cells excluding the server; for
// transmissions at time > 0 the interference field is a fresh stationary
// snapshot of active cells (the mode rotation reshuffles activity
// network-wide while the UE waits). Returns +inf when the denominator is
// exactly zero (no active interferer, sigma2 = 0).
double sample_sinr(const CellField& field, const AccessOutcome& outcome,
                   const NetworkConfig& cfg, double at_time, Rng& rng);

// n independent trials (fresh field + resolve + SINR), deterministic given
// seed for any worker count. Trials hitting NoServer retry on a doubled
// disk up to max_enlargements times before the error propagates.
std::vector<AccessOutcome> run_trials(const NetworkConfig& cfg, const AccessScenario& scen,
                                      long n, std::uint64_t seed,
                                      const TrialOptions& opts = {});

// Estimators over an existing trial batch (fixed reduction order).
Estimate coverage_from_trials(const std::vector<AccessOutcome>& trials, double gamma,
                              std::uint64_t seed);
Estimate rate_from_trials(const std::vector<AccessOutcome>& trials, std::uint64_t seed);

Estimate estimate_coverage(const NetworkConfig& cfg, const AccessScenario& scen,
                           double gamma, long n_trials, std::uint64_t seed,
                           const TrialOptions& opts = {});

// Shares one trial batch across several thresholds: SINR sampling does not
// depend on gamma, so per-threshold estimates reuse the same draws.
std::vector<Estimate> estimate_coverage_multi(const NetworkConfig& cfg,
                                              const AccessScenario& scen,
                                              const std::vector<double>& gammas,
                                              long n_trials, std::uint64_t seed,
                                              const TrialOptions& opts = {});

Estimate estimate_rate(const NetworkConfig& cfg, const AccessScenario& scen,
                       long n_trials, std::uint64_t seed, const TrialOptions& opts = {});

} // namespace cellwait
