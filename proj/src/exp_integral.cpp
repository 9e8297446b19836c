#include "arqkey/exp_integral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace arqkey {

namespace {

const double euler_gamma = 0.57721566490153286060651209008240;

// E1(x) = -gamma - ln x + sum_{n>=1} (-1)^{n+1} x^n / (n * n!)
// Alternating, terms shrink fast for x <= 1; no cancellation trouble there.
double e1_series(double x)
{
    double sum = 0.0;
    double term = 1.0; // x^n / n! carried incrementally
    for (int n = 1; n <= 60; ++n) {
        term *= x / n;
        double contrib = term / n;
        sum += (n & 1) ? contrib : -contrib;
        if (contrib < 1e-18 * std::fabs(sum))
            break;
    }
    return -euler_gamma - std::log(x) + sum;
}

// Continued fraction for exp(x)*E1(x), modified Lentz:
//   exp(x)*E1(x) = 1 / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(x + 7 - ...))))
// i.e. b_n = x + 2n - 1, a_n = -n^2. Converges quickly for x > 1.
double e1_scaled_cf(double x)
{
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int n = 1; n <= 200; ++n) {
        double a = -static_cast<double>(n) * n;
        b += 2.0;
        d = a * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            break;
    }
    return h;
}

} // namespace

double exp_integral_e1(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("exp_integral_e1: requires x > 0");
    if (x <= 1.0)
        return e1_series(x);
    // exp(-x) underflows to 0 beyond ~745; E1 is smaller still
    if (x > 700.0) {
        double v = std::exp(-x) * e1_scaled_cf(x);
        return v; // may be subnormal or 0, both correct to double precision
    }
    return std::exp(-x) * e1_scaled_cf(x);
}

double exp_integral_e1_scaled(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("exp_integral_e1_scaled: requires x > 0");
    if (x <= 1.0)
        return std::exp(x) * e1_series(x);
    return e1_scaled_cf(x);
}

} // namespace arqkey
