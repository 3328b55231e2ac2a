#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cellwait/model.hpp"

using namespace cellwait;

namespace {

NetworkConfig base_config() {
    NetworkConfig cfg{};
    cfg.rho_f = 0.005;
    cfg.p_A = 0.45;
    cfg.p_I = 0.1;
    cfg.p_S = 0.45;
    cfg.mu = 0.1;
    cfg.lambda_S = 0.1;
    cfg.alpha = 4.0;
    cfg.p_tx = 0.2;
    cfg.sigma2 = 0.0;
    cfg.zeta = 1.0;
    return cfg;
}

} // namespace

TEST_CASE("beta_w at w = 0 returns p_I bit-exactly") {
    NetworkConfig cfg = base_config();
    CHECK(beta_w(cfg, 0.0) == cfg.p_I);
    cfg.p_I = 0.123456789;
    cfg.p_A = 0.4;
    cfg.p_S = 1.0 - cfg.p_A - cfg.p_I;
    CHECK(beta_w(cfg, 0.0) == cfg.p_I);
}

TEST_CASE("beta_w limits and pinned value") {
    const NetworkConfig cfg = base_config();
    // w -> infinity: both exponentials vanish
    CHECK(beta_w(cfg, 1e9) == doctest::Approx(1.0).epsilon(1e-12));
    // p_A = p_S = 0.45, mu = lambda_S = 0.1, w = 10: 1 - 0.9 e^{-1}
    // (independently evaluated: 0.6689085029457018)
    CHECK(beta_w(cfg, 10.0) == doctest::Approx(0.6689085029457018).epsilon(1e-14));
}

TEST_CASE("beta_w is monotone nondecreasing in w and bounded by [p_I, 1]") {
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        NetworkConfig cfg = base_config();
        double a = u(gen), b = u(gen);
        if (a > b) std::swap(a, b);
        cfg.p_A = a;
        cfg.p_I = b - a;
        cfg.p_S = 1.0 - b;
        cfg.mu = 0.01 + u(gen);
        cfg.lambda_S = 0.01 + u(gen);
        cfg.validate();

        double prev = beta_w(cfg, 0.0);
        CHECK(prev == cfg.p_I);
        for (double w = 0.25; w <= 64.0; w *= 2.0) {
            const double cur = beta_w(cfg, w);
            CHECK(cur >= prev);
            CHECK(cur <= 1.0 + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("dimensionless_area") {
    const NetworkConfig cfg = base_config();
    CHECK(dimensionless_area(cfg, {0.0, 10.0}) == 0.0);
    // rho_f = 0.005, r_th = 10 -> 0.5 pi
    CHECK(dimensionless_area(cfg, {10.0, 10.0}) ==
          doctest::Approx(1.5707963267948966).epsilon(1e-15));
    NetworkConfig unit = cfg;
    unit.rho_f = 1.0 / M_PI;
    CHECK(dimensionless_area(unit, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("config validation rejects bad values") {
    NetworkConfig cfg = base_config();
    CHECK_NOTHROW(cfg.validate());

    NetworkConfig bad = cfg;
    bad.p_A = 0.5; // fractions now sum to 1.05
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.alpha = 2.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.rho_f = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.sigma2 = -1e-18;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    AccessScenario scen{-1.0, 0.0};
    CHECK_THROWS_AS(scen.validate(), ConfigError);
    CHECK_NOTHROW(AccessScenario{0.0, 0.0}.validate());
}

TEST_CASE("power model ordering and mean power") {
    PowerModel pm{6.8, 4.3, 1.0, 10e6};
    CHECK_NOTHROW(pm.validate());

    PowerModel bad = pm;
    bad.p_sleep = 5.0; // above idle
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    const NetworkConfig cfg = base_config();
    CHECK(pm.mean_power(cfg) ==
          doctest::Approx(0.45 * 6.8 + 0.1 * 4.3 + 0.45 * 1.0).epsilon(1e-15));
}
