#include "befrac/dimension.hpp"

#include <cmath>
#include <functional>

namespace befrac {

namespace {

double xlnx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

void check_simplex(const std::vector<double>& tau) {
    double sum = 0;
    for (double t : tau) {
        if (!(t >= 0) || t > 1) throw std::domain_error("be_dimension: frequency outside [0,1]");
        sum += t;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::domain_error("be_dimension: frequencies must sum to 1");
}

// closed-form geometry shared by both dimension routines; uses the
// cancellation-free forms of x1, nu0, nu1 (stable at a -> 0 and a -> 2)
DimensionReport base_report(double a) {
    if (a < 0 || a > 2) throw std::domain_error("dimension: mean parameter outside [0,2]");
    DimensionReport rep;
    rep.a = a;
    rep.t = std::sqrt(1.0 + 6.0 * a - 3.0 * a * a);
    rep.lo = std::max(0.0, a - 1.0);
    rep.hi = a / 2.0;
    rep.x1 = 2.0 * a * a / (1.0 + 3.0 * a + rep.t);          // == (1+3a-t)/6
    rep.x2 = (1.0 + 3.0 * a + rep.t) / 6.0;
    rep.x2_in_domain = rep.x2 >= rep.lo && rep.x2 <= rep.hi; // boundary case a=2 only
    rep.nu2 = rep.x1;
    rep.nu1 = a * (2.0 - a) / (rep.t + 1.0);                 // == (t-1)/3
    rep.nu0 = 2.0 * (a - 2.0) * (a - 2.0) / (7.0 - 3.0 * a + rep.t); // == (7-3a-t)/6
    return rep;
}

constexpr double kInvPhi = 0.6180339887498949;

// derivative-free bracketing maximization; tol is on x
std::pair<double, int> golden_section_max(double lo, double hi, double tol,
                                          const std::function<double(double)>& f) {
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    int iters = 0;
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
        ++iters;
    }
    return {(a + b) / 2.0, iters};
}

} // namespace

double be_dimension(const std::vector<double>& tau, int base) {
    if (base < 2) throw std::domain_error("be_dimension: base must be >= 2");
    check_simplex(tau);
    double s = 0;
    for (double t : tau) s += xlnx(t);
    return -s / std::log(static_cast<double>(base));
}

double be_dimension(const FrequencyVector& tau) {
    Rational sum = 0;
    for (const auto& t : tau.tau) {
        if (t < 0 || t > 1) throw std::domain_error("be_dimension: frequency outside [0,1]");
        sum += t;
    }
    if (sum != 1) throw std::domain_error("be_dimension: frequencies must sum to 1");
    std::vector<double> td;
    td.reserve(tau.tau.size());
    for (const auto& t : tau.tau) td.push_back(t.convert_to<double>());
    double s = 0;
    for (double t : td) s += xlnx(t);
    return -s / std::log(static_cast<double>(tau.base));
}

Float50 be_dimension_ext(const std::vector<Float50>& tau, int base) {
    Float50 s = 0;
    for (const auto& t : tau)
        if (t > 0) s += t * boost::multiprecision::log(t);
    return -s / boost::multiprecision::log(Float50(base));
}

double ka_objective(double a, double x) {
    double nu1 = a - 2.0 * x, nu0 = 1.0 - a + x;
    // clamp sub-epsilon negatives produced by the endpoint arithmetic
    if (nu1 > -1e-15 && nu1 < 0) nu1 = 0;
    if (nu0 > -1e-15 && nu0 < 0) nu0 = 0;
    if (x < 0 || nu1 < 0 || nu0 < 0)
        throw std::domain_error("ka_objective: x outside the feasible interval");
    return -(xlnx(x) + xlnx(nu1) + xlnx(nu0)) / std::log(3.0);
}

DimensionReport ka_dimension_closed_form(double a) {
    DimensionReport rep = base_report(a);
    rep.closed_form = -(xlnx(rep.nu0) + xlnx(rep.nu1) + xlnx(rep.nu2)) / std::log(3.0);
    return rep;
}

DimensionReport ka_dimension_numeric(double a, double tol) {
    if (tol <= 0) throw std::domain_error("ka_dimension_numeric: tolerance must be positive");
    DimensionReport rep = base_report(a);
    if (rep.hi - rep.lo <= tol) { // degenerate interval at a = 0 or a = 2
        rep.x_numeric = (rep.lo + rep.hi) / 2.0;
        rep.numeric_max = ka_objective(a, rep.x_numeric);
        rep.iterations = 0;
        return rep;
    }
    auto [x, iters] =
        golden_section_max(rep.lo, rep.hi, tol, [a](double x) { return ka_objective(a, x); });
    rep.x_numeric = x;
    rep.numeric_max = ka_objective(a, x);
    rep.iterations = iters;
    return rep;
}

double derivative_check(double a, double x) {
    double lo = std::max(0.0, a - 1.0), hi = a / 2.0;
    if (!(x > lo && x < hi))
        throw std::domain_error("derivative_check: x must be strictly interior");
    double nu1 = a - 2.0 * x, nu0 = 1.0 - a + x;
    return -std::log(nu0 * x / (nu1 * nu1)) / std::log(3.0);
}

Float50 ka_closed_form_ext(double a) {
    Float50 A(a);
    Float50 t = boost::multiprecision::sqrt(1 + 6 * A - 3 * A * A);
    Float50 x1 = 2 * A * A / (1 + 3 * A + t);
    Float50 nu1 = A * (2 - A) / (t + 1);
    Float50 nu0 = 2 * (A - 2) * (A - 2) / (7 - 3 * A + t);
    return be_dimension_ext({nu0, nu1, x1}, 3);
}

} // namespace befrac
