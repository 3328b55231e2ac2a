#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "cellwait/numerics.hpp"

using namespace cellwait;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("integrate: pinned integrals") {
    // arctangent: also the alpha = 4 instance of the interference integral
    const Integral a = integrate([](double z) { return 1.0 / (1.0 + z * z); }, 0.0, kInf);
    CHECK(a.value == doctest::Approx(M_PI / 2.0).epsilon(1e-10));
    CHECK(a.error <= 1e-8);

    const Integral b = integrate([](double x) { return x; }, 0.0, 1.0);
    CHECK(b.value == doctest::Approx(0.5).epsilon(1e-14));

    const Integral c = integrate([](double x) { return std::exp(-x); }, 0.0, kInf);
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("integrate: deterministic bit-identical results") {
    auto f = [](double x) { return std::exp(-0.3 * x) * std::sin(3.0 * x); };
    const Integral r1 = integrate(f, 0.0, kInf);
    const Integral r2 = integrate(f, 0.0, kInf);
    CHECK(std::memcmp(&r1.value, &r2.value, sizeof(double)) == 0);
    CHECK(std::memcmp(&r1.error, &r2.error, sizeof(double)) == 0);
    CHECK(r1.subdivisions == r2.subdivisions);
}

TEST_CASE("integrate: exhausted budget raises NonConvergence") {
    QuadratureSpec tight;
    tight.rel_tol = 1e-13;
    tight.abs_tol = 0.0;
    tight.max_subdivisions = 2;
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tight),
                    NonConvergence);
}

TEST_CASE("integrate: argument validation") {
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, -kInf, 1.0), DomainError);

    QuadratureSpec bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 0.0, 1.0, bad), DomainError);
    bad = {};
    bad.max_subdivisions = 0;
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 0.0, 1.0, bad), DomainError);
}

TEST_CASE("interference_constant: special values") {
    CHECK(interference_constant(4.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
    // independently evaluated (2 pi / 3) / sin(2 pi / 3)
    CHECK(interference_constant(3.0) == doctest::Approx(2.41839915231229).epsilon(1e-12));
    // alpha -> infinity: integrand tends to the indicator of z < 1
    CHECK(interference_constant(1e7) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(interference_constant(2.0), DomainError);
    CHECK_THROWS_AS(interference_constant(1.5), DomainError);
}

TEST_CASE("interference_constant agrees with quadrature of its defining integral") {
    for (double alpha : {2.5, 3.0, 3.5, 4.0, 5.0, 6.0}) {
        const Integral num = integrate(
            [alpha](double z) { return 1.0 / (1.0 + std::pow(z, alpha / 2.0)); }, 0.0, kInf);
        CHECK(num.value ==
              doctest::Approx(interference_constant(alpha)).epsilon(1e-8));
    }
}

TEST_CASE("gaussian tail and cdf") {
    CHECK(gaussian_q(0.0) == 0.5);
    CHECK(gaussian_cdf(0.0) == 0.5);
    // standard-normal 2.5% tail, independently evaluated
    CHECK(gaussian_q(1.959964) == doctest::Approx(0.0249999990964).epsilon(1e-9));
    for (double x = -8.0; x <= 8.0; x += 0.25) {
        CHECK(std::fabs(gaussian_q(x) + gaussian_cdf(x) - 1.0) <= 1e-15);
        CHECK(gaussian_cdf(x) >= 0.0);
        CHECK(gaussian_cdf(x) <= 1.0);
    }
    // monotone increasing cdf
    double prev = -1.0;
    for (double x = -8.0; x <= 8.0; x += 0.125) {
        const double p = gaussian_cdf(x);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("find_root_quadratic") {
    const auto two = find_root_quadratic(1.0, -3.0, 2.0);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(two[1] == doctest::Approx(2.0).epsilon(1e-14));

    const auto lin = find_root_quadratic(0.0, 2.0, -4.0);
    REQUIRE(lin.size() == 1);
    CHECK(lin[0] == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS_AS(find_root_quadratic(1.0, 0.0, 1.0), NoRealRoot);
    CHECK(find_root_quadratic(0.0, 0.0, 5.0).empty());
    CHECK_THROWS_AS(find_root_quadratic(0.0, 0.0, 0.0), DomainError);

    const auto repeated = find_root_quadratic(1.0, -2.0, 1.0);
    REQUIRE(repeated.size() == 1);
    CHECK(repeated[0] == doctest::Approx(1.0).epsilon(1e-14));

    // large |B|: the stable pairing must not lose the small root
    const auto stiff = find_root_quadratic(1.0, -1e8, 1.0);
    REQUIRE(stiff.size() == 2);
    CHECK(stiff[0] == doctest::Approx(1e-8).epsilon(1e-10));
}
