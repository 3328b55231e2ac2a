#include "cellwait/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace cellwait {

namespace {

// 15-point Kronrod abscissae/weights on [-1, 1] and the embedded 7-point
// Gauss weights (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.99145537112081263921, 0.94910791234275852453,
    0.86486442335976907279, 0.74153118559939443986,
    0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496, 0.06309209262997855329,
    0.10479001032225018384, 0.14065325971552591874,
    0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
constexpr double kWg[4] = {
    0.12948496616886969327, 0.27970539148927666790,
    0.38183005050511894495, 0.41795918367346938776};

struct Segment {
    double a, b;
    double value;
    double error;
};

struct SegmentWorse {
    bool operator()(const Segment& x, const Segment& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.a < y.a; // deterministic tie break
    }
};

// One K15/G7 evaluation on [a, b]. Error estimate follows QUADPACK's
// rescaled (200 |K-G|)^{3/2} rule so that smooth integrands are not
// flagged with wildly pessimistic errors.
Segment kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    const double fc = f(center);
    fv[14] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        fv[2 * i] = f(center - dx);
        fv[2 * i + 1] = f(center + dx);
    }

    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = std::fabs(resk);
    for (int i = 0; i < 7; ++i) {
        const double fsum = fv[2 * i] + fv[2 * i + 1];
        resk += kWgk[i] * fsum;
        resabs += kWgk[i] * (std::fabs(fv[2 * i]) + std::fabs(fv[2 * i + 1]));
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }

    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int i = 0; i < 7; ++i) {
        resasc += kWgk[i] * (std::fabs(fv[2 * i] - mean) + std::fabs(fv[2 * i + 1] - mean));
    }

    double err = std::fabs((resk - resg) * half);
    resasc *= std::fabs(half);
    resabs *= std::fabs(half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    return {a, b, resk * half, err};
}

Integral integrate_finite(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec) {
    std::priority_queue<Segment, std::vector<Segment>, SegmentWorse> queue;
    queue.push(kronrod15(f, a, b));
    double total = queue.top().value;
    double total_err = queue.top().error;

    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) {
        if (splits >= spec.max_subdivisions) {
            throw NonConvergence("quadrature: subdivision budget (" +
                                 std::to_string(spec.max_subdivisions) +
                                 ") exhausted, error estimate " + std::to_string(total_err));
        }
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // interval no longer splittable in double precision
            queue.push(worst);
            throw NonConvergence("quadrature: interval collapsed before tolerance was met");
        }
        const Segment left = kronrod15(f, worst.a, mid);
        const Segment right = kronrod15(f, mid, worst.b);
        total += (left.value + right.value) - worst.value;
        total_err += (left.error + right.error) - worst.error;
        queue.push(left);
        queue.push(right);
        ++splits;
    }

    // Recompute value and error in a fixed (left-to-right) order so the
    // result does not depend on the heap's internal layout.
    std::vector<Segment> segs;
    segs.reserve(queue.size());
    while (!queue.empty()) {
        segs.push_back(queue.top());
        queue.pop();
    }
    std::sort(segs.begin(), segs.end(),
              [](const Segment& x, const Segment& y) { return x.a < y.a; });
    double value = 0.0, error = 0.0;
    for (const Segment& s : segs) {
        value += s.value;
        error += s.error;
    }
    return {value, error, splits};
}

} // namespace

Integral integrate(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& spec) {
    if (!std::isfinite(a)) throw DomainError("integrate: lower limit must be finite");
    if (spec.rel_tol <= 0.0 || spec.abs_tol < 0.0 || spec.max_subdivisions < 1) {
        throw DomainError("integrate: invalid QuadratureSpec");
    }
    if (std::isinf(b)) {
        // Split at a+1. The far piece maps through t = 1/(x-a), which puts
        // the improper endpoint at t = 0 where the double grid is dense, so
        // power-law tails subdivide down to denormal scales.
        QuadratureSpec half = spec;
        half.abs_tol = spec.abs_tol / 2.0;
        half.max_subdivisions = std::max(1, spec.max_subdivisions / 2);
        const Integral near = integrate_finite(f, a, a + 1.0, half);
        auto tail = [&f, a](double t) {
            const double x = a + 1.0 / t;
            if (std::isinf(x)) return 0.0;
            const double fx = f(x);
            if (fx == 0.0) return 0.0;
            return fx / t / t;
        };
        const Integral far = integrate_finite(tail, 0.0, 1.0, half);
        return {near.value + far.value, near.error + far.error,
                near.subdivisions + far.subdivisions};
    }
    if (!(a < b)) throw DomainError("integrate: requires a < b");
    return integrate_finite(f, a, b, spec);
}

double interference_constant(double alpha) {
    if (!(alpha > 2.0)) {
        throw DomainError("interference_constant: integral diverges for alpha <= 2");
    }
    const double x = 2.0 * M_PI / alpha;
    return x / std::sin(x);
}

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double gaussian_q(double x) { return 0.5 * std::erfc(x * M_SQRT1_2); }

std::vector<double> find_root_quadratic(double A, double B, double C) {
    if (A == 0.0 && B == 0.0 && C == 0.0) {
        throw DomainError("find_root_quadratic: all coefficients are zero");
    }
    if (A == 0.0) {
        if (B == 0.0) return {}; // C != 0: no roots
        return {-C / B};
    }
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) throw NoRealRoot("find_root_quadratic: negative discriminant");
    if (disc == 0.0) return {-B / (2.0 * A)};
    // Citardauq pairing avoids cancellation when |B| ~ sqrt(disc).
    const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B == 0.0 ? 1.0 : B));
    double r1 = q / A;
    double r2 = (q != 0.0) ? C / q : -B / A - r1;
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

} // namespace cellwait
