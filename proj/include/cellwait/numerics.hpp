#pragma once

#include <functional>
#include <vector>

#include "cellwait/errors.hpp"

namespace cellwait {

// Tolerances for adaptive quadrature. The run stops once the accumulated
// error estimate drops below max(abs_tol, rel_tol * |result|).
struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct Integral {
    double value;
    double error;     // accumulated absolute error estimate
    int subdivisions; // interval splits performed
};

// Adaptive Gauss-Kronrod (G7, K15) integration of f over (a, b).
//
// b may be +infinity: the range splits at a+1 and the far piece is mapped
// onto (0, 1] with t = 1/(x - a), dx = -dt/t^2, placing the improper
// endpoint at t = 0. Endpoints are never evaluated (Kronrod abscissae are
// interior), so integrable endpoint singularities are tolerated; f must
// decay to 0 at infinity.
//
// Deterministic: identical inputs produce bit-identical outputs. Throws
// NonConvergence when max_subdivisions is exhausted before tolerance.
Integral integrate(const std::function<double(double)>& f, double a, double b,
                   const QuadratureSpec& spec = {});

// C_alpha = integral_0^inf dz / (1 + z^{alpha/2}) = (2 pi / alpha) / sin(2 pi / alpha).
// Diverges for alpha <= 2 (throws DomainError).
double interference_constant(double alpha);

// Standard normal tail Q(x) = P(Z > x) and CDF Phi(x); |error| <= 1e-12.
double gaussian_q(double x);
double gaussian_cdf(double x);

// Real roots of A v^2 + B v + C, ascending. Handles the linear case A = 0
// (one root, or none when B = 0 and C != 0). Throws NoRealRoot when the
// discriminant is negative and DomainError when all coefficients are zero.
std::vector<double> find_root_quadratic(double A, double B, double C);

} // namespace cellwait
