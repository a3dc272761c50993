#pragma once

#include "befrac/stats.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <vector>

namespace befrac {

using Float50 = boost::multiprecision::cpp_bin_float_50;

// -sum tau_i ln tau_i / ln base, with 0 ln 0 = 0. Requires tau on the simplex
// (|sum - 1| <= 1e-12 for the float variant, exact for the rational one).
double be_dimension(const std::vector<double>& tau, int base);
double be_dimension(const FrequencyVector& tau);
Float50 be_dimension_ext(const std::vector<Float50>& tau, int base);

// The constrained maximization for the mean-a set: with x = nu2 free,
// nu1 = a-2x and nu0 = 1-a+x, maximize y(x) = be_dimension((nu0,nu1,x), 3)
// over x in [max(0,a-1), a/2].
struct DimensionReport {
    double a = 0;
    double t = 0;            // sqrt(1+6a-3a^2)
    double lo = 0, hi = 0;   // feasible interval for x = nu2
    double x1 = 0;           // stationary maximizer (1+3a-t)/6
    double x2 = 0;           // second stationary point (1+3a+t)/6
    bool x2_in_domain = false;
    double nu0 = 0, nu1 = 0, nu2 = 0; // frequency triple at the maximizer
    double closed_form = 0;
    double numeric_max = 0;
    double x_numeric = 0;
    int iterations = 0;
};

DimensionReport ka_dimension_closed_form(double a);
DimensionReport ka_dimension_numeric(double a, double tol = 1e-9);

double ka_objective(double a, double x); // y(x), 0 ln 0 = 0 at the edges

// analytic y'(x) = -(1/ln3) ln( (1-a+x) x / (a-2x)^2 ); interior x only
double derivative_check(double a, double x);

// extended-precision closed form, for cross-checking the double path
Float50 ka_closed_form_ext(double a);

} // namespace befrac
