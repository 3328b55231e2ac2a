// cellwait — sweeps, optimization and Monte-Carlo validation for the delayed
// access scheme in randomly deployed small-cell networks.
//
// Subcommands:
//   coverage  sweep coverage probability over gamma_db or r_th (CSV/JSON)
//   rate      capacity vs threshold distance for a set of delay budgets,
//             with the bisection optimum flagged per curve
//   ee        normalized energy efficiency vs cell availability for a set
//             of sleep/idle density ratios
//   trials    per-trial Monte-Carlo records
//   validate  cross-check suite (analytic vs quadrature vs Monte-Carlo),
//             JSON report, exit 0 iff no check fails
//
// Exit codes: 0 ok, 1 check failure, 2 invalid input.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cellwait/analytic.hpp"
#include "cellwait/config_io.hpp"
#include "cellwait/model.hpp"
#include "cellwait/optimize.hpp"
#include "cellwait/simulate.hpp"

using namespace cellwait;
using nlohmann::ordered_json;

namespace {

// ---------- small helpers ----------

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct Sweep {
    std::string variable;
    double start;
    double stop;
    int steps;

    double at(int i) const {
        return start + (stop - start) * static_cast<double>(i) /
                           static_cast<double>(steps - 1);
    }
};

Sweep parse_sweep(const std::string& text) {
    Sweep s;
    char var[32];
    if (std::sscanf(text.c_str(), "%31[^:]:%lf:%lf:%d", var, &s.start, &s.stop,
                    &s.steps) != 4) {
        throw ConfigError("--sweep expects VAR:START:STOP:STEPS, got '" + text + "'");
    }
    s.variable = var;
    if (!(s.start < s.stop)) throw ConfigError("--sweep requires start < stop");
    if (s.steps < 2) throw ConfigError("--sweep requires steps >= 2");
    return s;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw ConfigError("expected a comma-separated number list");
    return out;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError(path + ": cannot open for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CELLWAIT_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 1;
}

const char* event_name(AccessEvent e) {
    switch (e) {
        case AccessEvent::IA: return "IA";
        case AccessEvent::DA: return "DA";
        case AccessEvent::OA: return "OA";
    }
    return "?";
}

NetworkConfig noiseless_alpha4_variant(NetworkConfig cfg) {
    cfg.alpha = 4.0;
    cfg.sigma2 = 0.0;
    return cfg;
}

bool in_closed_regime(const NetworkConfig& cfg) {
    return cfg.alpha == 4.0 && cfg.sigma2 == 0.0;
}

// ---------- row emission (CSV or JSON array) ----------

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void emit_csv(std::ostream& os) const {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            os << columns[c] << (c + 1 < columns.size() ? "," : "\n");
        }
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                os << row[c] << (c + 1 < row.size() ? "," : "\n");
            }
        }
    }

    void emit_json(std::ostream& os) const {
        ordered_json arr = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json obj;
            for (std::size_t c = 0; c < columns.size(); ++c) {
                if (row[c].empty()) {
                    obj[columns[c]] = nullptr;
                } else {
                    obj[columns[c]] = row[c];
                }
            }
            arr.push_back(obj);
        }
        os << arr.dump(2) << "\n";
    }

    void emit(std::ostream& os, const std::string& format) const {
        if (format == "json") {
            emit_json(os);
        } else {
            emit_csv(os);
        }
    }
};

// ---------- coverage ----------

int cmd_coverage(const io::LoadedConfig& lc, const Sweep& sweep, const std::string& method,
                 double gamma_db, long trials, std::uint64_t seed, int workers,
                 const std::string& out_path, const std::string& format) {
    const bool want_closed = method == "closed" || method == "all";
    const bool want_quad = method == "quad" || method == "all";
    const bool want_mc = method == "mc" || method == "all";
    const bool closed_ok = in_closed_regime(lc.net);
    if (method == "closed" && !closed_ok) {
        throw ConfigError("method 'closed' requires alpha = 4 and sigma2 = 0");
    }

    Table table;
    table.columns = {"sweep_value", "p_c_closed", "p_c_quadrature", "p_c_mc", "mc_ci"};

    TrialOptions topt;
    topt.workers = workers;

    if (sweep.variable == "gamma_db") {
        // one trial batch serves every threshold
        std::vector<Estimate> mc;
        if (want_mc) {
            std::vector<double> gammas;
            for (int i = 0; i < sweep.steps; ++i) gammas.push_back(db_to_linear(sweep.at(i)));
            mc = estimate_coverage_multi(lc.net, lc.scen, gammas, trials, seed, topt);
        }
        for (int i = 0; i < sweep.steps; ++i) {
            const double gdb = sweep.at(i);
            const double g = db_to_linear(gdb);
            std::vector<std::string> row(5);
            row[0] = fmt(gdb);
            if (want_closed && closed_ok) {
                row[1] = fmt(coverage_closed_form(lc.net, lc.scen, g).value);
            }
            if (want_quad) row[2] = fmt(coverage_quadrature(lc.net, lc.scen, g).value);
            if (want_mc) {
                row[3] = fmt(mc[i].mean);
                row[4] = fmt(mc[i].ci_halfwidth);
            }
            table.rows.push_back(std::move(row));
        }
    } else if (sweep.variable == "r_th") {
        const double gamma = db_to_linear(gamma_db);
        for (int i = 0; i < sweep.steps; ++i) {
            const double r_th = sweep.at(i);
            const AccessScenario scen{r_th, lc.scen.w};
            std::vector<std::string> row(5);
            row[0] = fmt(r_th);
            if (want_closed && closed_ok) {
                row[1] = fmt(coverage_closed_form(lc.net, scen, gamma).value);
            }
            if (want_quad) row[2] = fmt(coverage_quadrature(lc.net, scen, gamma).value);
            if (want_mc) {
                const Estimate e = estimate_coverage(lc.net, scen, gamma, trials,
                                                     mix_seed(seed, i), topt);
                row[3] = fmt(e.mean);
                row[4] = fmt(e.ci_halfwidth);
            }
            table.rows.push_back(std::move(row));
        }
    } else {
        throw ConfigError("coverage sweeps over gamma_db or r_th, got '" + sweep.variable +
                          "'");
    }

    Output out(out_path);
    table.emit(out.stream(), format);
    return 0;
}

// ---------- rate ----------

int cmd_rate(const io::LoadedConfig& lc, const Sweep& sweep, const std::vector<double>& ws,
             double epsilon, const std::string& out_path, const std::string& format) {
    if (sweep.variable != "r_th") {
        throw ConfigError("rate sweeps over r_th, got '" + sweep.variable + "'");
    }

    Table table;
    table.columns = {"w", "r_th", "capacity", "opt_r_th", "is_opt_point"};

    for (double w : ws) {
        const bool flat = !(beta_w(lc.net, w) > lc.net.p_I);
        double opt_r = std::numeric_limits<double>::quiet_NaN();
        if (!flat) {
            const double r_upper = default_rate_upper_bound(lc.net, w);
            opt_r = optimal_threshold_rate(lc.net, w, r_upper, epsilon).r_star;
        }
        // nearest grid point to the optimizer's answer carries the flag
        int flag_idx = -1;
        if (!flat) {
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < sweep.steps; ++i) {
                const double d = std::fabs(sweep.at(i) - opt_r);
                if (d < best) {
                    best = d;
                    flag_idx = i;
                }
            }
        }
        for (int i = 0; i < sweep.steps; ++i) {
            const double r_th = sweep.at(i);
            std::vector<std::string> row(5);
            row[0] = fmt(w);
            row[1] = fmt(r_th);
            row[2] = fmt(capacity(lc.net, {r_th, w}));
            row[3] = flat ? "" : fmt(opt_r);
            row[4] = (i == flag_idx) ? "1" : "0";
            table.rows.push_back(std::move(row));
        }
    }

    Output out(out_path);
    table.emit(out.stream(), format);
    return 0;
}

// ---------- energy efficiency ----------

int cmd_ee(const io::LoadedConfig& lc, const Sweep& sweep,
           const std::vector<double>& theta_ratios, double epsilon,
           const std::string& out_path, const std::string& format) {
    if (sweep.variable != "w") {
        throw ConfigError("ee sweeps over w, got '" + sweep.variable + "'");
    }

    Table table;
    table.columns = {"beta_w", "theta_ratio", "nu_N"};

    for (double ratio : theta_ratios) {
        if (!(ratio > 0.0)) throw ConfigError("theta ratios must be > 0");
        NetworkConfig cfg = lc.net;
        cfg.p_I = (1.0 - cfg.p_A) / (1.0 + ratio);
        cfg.p_S = 1.0 - cfg.p_A - cfg.p_I;
        cfg.validate();

        for (int i = 0; i < sweep.steps; ++i) {
            const double w = sweep.at(i);
            double r_th = lc.scen.r_th;
            if (beta_w(cfg, w) > cfg.p_I) {
                const double r_upper = default_rate_upper_bound(cfg, w);
                r_th = optimal_threshold_rate(cfg, w, r_upper, epsilon).r_star;
            }
            const double nu_n = normalized_energy_efficiency(cfg, {r_th, w});
            table.rows.push_back({fmt(beta_w(cfg, w)), fmt(ratio), fmt(nu_n)});
        }
    }

    Output out(out_path);
    table.emit(out.stream(), format);
    return 0;
}

// ---------- per-trial records ----------

int cmd_trials(const io::LoadedConfig& lc, long trials, std::uint64_t seed, int workers,
               const std::string& out_path) {
    TrialOptions topt;
    topt.workers = workers;
    const std::vector<AccessOutcome> batch =
        run_trials(lc.net, lc.scen, trials, seed, topt);

    Output out(out_path);
    std::ostream& os = out.stream();
    os << "trial,event,distance_m,wait_s,sinr_db\n";
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const AccessOutcome& t = batch[i];
        os << i << ',' << event_name(t.event) << ',' << fmt(t.serving_distance) << ','
           << fmt(t.wait) << ','
           << (std::isinf(t.sinr) ? "inf" : fmt(10.0 * std::log10(t.sinr))) << "\n";
    }
    return 0;
}

// ---------- validate ----------

struct Check {
    std::string name;
    std::string status; // pass | fail | inconclusive | skipped
    ordered_json detail;
};

// Kolmogorov-Smirnov statistic of sorted samples against a CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::fabs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::fabs(static_cast<double>(i) / n - f));
    }
    return d;
}

int cmd_validate(const io::LoadedConfig& lc, const std::string& config_path, long trials,
                 std::uint64_t seed, int workers, const std::string& out_path) {
    std::vector<Check> checks;
    const NetworkConfig noiseless = noiseless_alpha4_variant(lc.net);

    // 1. closed form vs quadrature on a (gamma, r_th, w) grid
    {
        Check c{"closed_form_vs_quadrature", "pass", {}};
        double worst = 0.0;
        for (double gdb : {-10.0, -5.0, 0.0, 5.0, 10.0}) {
            for (double r_th : {2.0, 5.0, 10.0, 15.0, 20.0}) {
                for (double w : {0.0, 5.0, 10.0, 20.0}) {
                    const AccessScenario scen{r_th, w};
                    const double g = db_to_linear(gdb);
                    const double cf = coverage_closed_form(noiseless, scen, g).value;
                    const double qd = coverage_quadrature(noiseless, scen, g).value;
                    worst = std::max(worst, std::fabs(cf - qd) / std::max(cf, 1e-300));
                }
            }
        }
        if (worst > 1e-6) c.status = "fail";
        c.detail["max_rel_diff"] = worst;
        c.detail["tolerance"] = 1e-6;
        checks.push_back(std::move(c));
    }

    // one Monte-Carlo batch shared by checks 2-4
    TrialOptions topt;
    topt.workers = workers;
    const std::vector<AccessOutcome> batch =
        run_trials(noiseless, lc.scen, trials, seed, topt);

    // 2. analytic coverage inside the MC 99% confidence interval
    {
        Check c{"analytic_vs_mc_coverage", "pass", {}};
        ordered_json rows = ordered_json::array();
        for (double gdb : {-10.0, 0.0, 10.0}) {
            const double g = db_to_linear(gdb);
            const Estimate e = coverage_from_trials(batch, g, seed);
            const double ci99 = e.ci_halfwidth / 1.96 * 2.5758293035489004;
            const double analytic = coverage(noiseless, lc.scen, g).value;
            const bool inside = std::fabs(analytic - e.mean) <= ci99;
            if (ci99 > 0.02) {
                c.status = "inconclusive (CI too wide)";
            } else if (!inside && c.status != "fail") {
                c.status = "fail";
            }
            rows.push_back({{"gamma_db", gdb},
                            {"analytic", analytic},
                            {"mc", e.mean},
                            {"ci99", ci99},
                            {"inside", inside}});
        }
        c.detail["per_gamma"] = rows;
        checks.push_back(std::move(c));
    }

    // 3. empirical event probabilities vs the analytic ones (3 sigma)
    {
        Check c{"event_probabilities", "pass", {}};
        const AccessProbabilities p = access_probabilities(noiseless, lc.scen);
        const double sum = p.ia + p.da + p.oa;
        long n_ia = 0, n_da = 0, n_oa = 0;
        for (const AccessOutcome& t : batch) {
            if (t.event == AccessEvent::IA) ++n_ia;
            else if (t.event == AccessEvent::DA) ++n_da;
            else ++n_oa;
        }
        const double n = static_cast<double>(batch.size());
        auto within = [&](double phat, double pref) {
            const double se = std::sqrt(std::max(pref * (1.0 - pref), 1e-12) / n);
            return std::fabs(phat - pref) <= 3.0 * se;
        };
        const bool ok = within(n_ia / n, p.ia) && within(n_da / n, p.da) &&
                        within(n_oa / n, p.oa);
        if (trials < 1000) {
            c.status = "inconclusive (CI too wide)";
        } else if (!ok) {
            c.status = "fail";
        }
        if (sum != 1.0) c.status = "fail";
        c.detail["analytic"] = {p.ia, p.da, p.oa};
        c.detail["empirical"] = {n_ia / n, n_da / n, n_oa / n};
        c.detail["analytic_sum_exactly_one"] = (sum == 1.0);
        checks.push_back(std::move(c));
    }

    // 4. per-event distance laws (Kolmogorov-Smirnov at significance 0.01)
    {
        Check c{"distance_distributions_ks", "pass", {}};
        const double v = dimensionless_area(noiseless, lc.scen);
        const double pir = noiseless.p_I * noiseless.rho_f * M_PI;
        const double r_th = lc.scen.r_th;
        auto cdf_ia = [&](double r) {
            return -std::expm1(-pir * r * r) / -std::expm1(-noiseless.p_I * v);
        };
        auto cdf_da = [&](double r) { return r * r / (r_th * r_th); };
        auto cdf_oa = [&](double r) { return -std::expm1(-pir * (r * r - r_th * r_th)); };

        ordered_json rows = ordered_json::array();
        for (AccessEvent ev : {AccessEvent::IA, AccessEvent::DA, AccessEvent::OA}) {
            std::vector<double> d;
            for (const AccessOutcome& t : batch) {
                if (t.event == ev) d.push_back(t.serving_distance);
            }
            if (d.size() < 100) {
                c.status = "inconclusive (CI too wide)";
                rows.push_back({{"event", event_name(ev)}, {"n", d.size()}});
                continue;
            }
            double ks = 0.0;
            if (ev == AccessEvent::IA) ks = ks_statistic(d, cdf_ia);
            if (ev == AccessEvent::DA) ks = ks_statistic(d, cdf_da);
            if (ev == AccessEvent::OA) ks = ks_statistic(d, cdf_oa);
            const double crit = 1.6276 / std::sqrt(static_cast<double>(d.size()));
            if (ks > crit && c.status == "pass") c.status = "fail";
            rows.push_back({{"event", event_name(ev)},
                            {"n", d.size()},
                            {"ks", ks},
                            {"critical_0p01", crit}});
        }
        c.detail["per_event"] = rows;
        checks.push_back(std::move(c));
    }

    // 5. delay never hurts: p_c(r_th) >= beta0/(beta0+theta) - 1e-12
    {
        Check c{"never_hurts", "pass", {}};
        Rng rng(mix_seed(seed, 0xBEEF));
        double worst_margin = 1e9;
        for (int i = 0; i < 100; ++i) {
            NetworkConfig cfg = noiseless;
            const double a = 0.05 + 0.4 * rng.uniform01();
            const double b = a + (0.99 - a) * rng.uniform01();
            cfg.p_A = a;
            cfg.p_I = b - a;
            cfg.p_S = 1.0 - b;
            cfg.mu = 0.02 + rng.uniform01();
            cfg.lambda_S = 0.02 + rng.uniform01();
            const double w = 0.1 + 30.0 * rng.uniform01();
            const double r_th = 40.0 * rng.uniform01();
            const double gamma = db_to_linear(-10.0 + 20.0 * rng.uniform01());
            const double baseline =
                cfg.p_I / (cfg.p_I + theta_factor(cfg, gamma));
            const double pc = coverage_closed_form(cfg, {r_th, w}, gamma).value;
            worst_margin = std::min(worst_margin, pc - baseline);
        }
        if (worst_margin < -1e-12) c.status = "fail";
        c.detail["min_margin"] = worst_margin;
        checks.push_back(std::move(c));
    }

    // 6. coverage-optimal threshold shrinks as the SINR threshold grows
    {
        Check c{"monotone_optimal_threshold", "pass", {}};
        ordered_json rows = ordered_json::array();
        double prev = std::numeric_limits<double>::infinity();
        for (double gdb : {-6.0, -3.0, 0.0, 3.0, 6.0, 9.0}) {
            const CoverageOptimum opt =
                optimal_threshold_coverage(noiseless, lc.scen.w, db_to_linear(gdb));
            if (opt.report.r_star > prev + 1e-9) c.status = "fail";
            prev = opt.report.r_star;
            rows.push_back({{"gamma_db", gdb}, {"r_star", opt.report.r_star}});
        }
        c.detail["per_gamma"] = rows;
        checks.push_back(std::move(c));
    }

    bool any_fail = false;
    ordered_json report;
    report["command"] = "validate";
    report["config"] = config_path;
    report["seed"] = seed;
    report["trials"] = trials;
    report["note"] = "closed-form checks run on the noiseless alpha=4 variant of the config";
    ordered_json jchecks = ordered_json::array();
    for (const Check& c : checks) {
        any_fail = any_fail || c.status == "fail";
        ordered_json jc;
        jc["name"] = c.name;
        jc["status"] = c.status;
        jc["detail"] = c.detail;
        jchecks.push_back(jc);
    }
    report["checks"] = jchecks;
    report["all_pass"] = !any_fail;

    Output out(out_path);
    out.stream() << report.dump(2) << "\n";

    if (any_fail) {
        for (const Check& c : checks) {
            if (c.status == "fail") {
                std::cerr << "validate: first failing check: " << c.name << "\n";
                break;
            }
        }
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"delayed-access small-cell coverage/capacity/energy toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string sweep_text;
    std::string method = "all";
    std::string out_path;
    std::string format = "csv";
    std::string w_values = "0,5,10,20";
    std::string theta_ratios = "0.01,1,2,4,8";
    long trials = 20000;
    std::optional<std::uint64_t> seed_flag;
    int workers = 1;
    double epsilon = 0.01;

    auto add_common = [&](CLI::App* sub, bool needs_sweep) {
        sub->add_option("--config", config_path, "JSON config path")->required();
        if (needs_sweep) {
            sub->add_option("--sweep", sweep_text, "VAR:START:STOP:STEPS")->required();
        }
        sub->add_option("--trials", trials, "Monte-Carlo trials");
        sub->add_option("--seed", seed_flag, "RNG seed (fallback: CELLWAIT_SEED env, then 1)");
        sub->add_option("--out", out_path, "output path (default: stdout)");
        sub->add_option("--workers", workers, "worker threads (identical output for any count)");
    };

    double gamma_db = 0.0;

    CLI::App* coverage = app.add_subcommand("coverage", "coverage probability sweep");
    add_common(coverage, true);
    coverage->add_option("--method", method, "closed|quad|mc|all")
        ->check(CLI::IsMember({"closed", "quad", "mc", "all"}));
    coverage->add_option("--gamma-db", gamma_db, "SINR threshold for r_th sweeps, dB");
    coverage->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* rate = app.add_subcommand("rate", "capacity vs r_th with optimal markers");
    add_common(rate, true);
    rate->add_option("--w-values", w_values, "comma-separated delay budgets, seconds");
    rate->add_option("--epsilon", epsilon, "bisection precision, meters");
    rate->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    CLI::App* ee = app.add_subcommand("ee", "normalized energy efficiency");
    add_common(ee, true);
    ee->add_option("--theta-ratios", theta_ratios, "comma-separated p_S/p_I ratios");
    ee->add_option("--epsilon", epsilon, "bisection precision, meters");
    ee->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    CLI::App* trials_cmd = app.add_subcommand("trials", "per-trial Monte-Carlo records");
    add_common(trials_cmd, false);

    CLI::App* validate = app.add_subcommand("validate", "cross-check suite, JSON report");
    add_common(validate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        const io::LoadedConfig lc = io::load_config(config_path);
        const std::uint64_t seed = resolve_seed(seed_flag);

        if (coverage->parsed()) {
            return cmd_coverage(lc, parse_sweep(sweep_text), method, gamma_db, trials, seed,
                                workers, out_path, format);
        }
        if (rate->parsed()) {
            return cmd_rate(lc, parse_sweep(sweep_text), parse_list(w_values), epsilon,
                            out_path, format);
        }
        if (ee->parsed()) {
            return cmd_ee(lc, parse_sweep(sweep_text), parse_list(theta_ratios), epsilon,
                          out_path, format);
        }
        if (trials_cmd->parsed()) {
            return cmd_trials(lc, trials, seed, workers, out_path);
        }
        if (validate->parsed()) {
            return cmd_validate(lc, config_path, trials, seed, workers, out_path);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
